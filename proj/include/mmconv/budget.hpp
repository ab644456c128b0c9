#pragma once

// Operating-point economics of the four-wave-mixing converter: pump photon
// number, dissipated power, the linearity constraint on the pump linewidth,
// energy per converted qubit and the electro-optic comparison figure.

#include "mmconv/converter.hpp"
#include "mmconv/synthesis.hpp"

namespace mmconv::budget {

/// n_p = sqrt(kappa_mw kappa_mm) / 2|g0|. Throws ZeroCoupling if g0 == 0.
double pump_photons(double g0, double kappa_mw, double kappa_mm);

struct HeatingPower {
  double total = 0.0;    // watts
  double in_mode = 0.0;  // absorbed in the pump mode
  double in_line = 0.0;  // absorbed in the lossy pump line
};

/// hbar omega_p n_p (kappa_int eta + (delta^2 + kappa_p^2/4)/kappa_ext (1/eta - eta)),
/// kappa_p = kappa_int + kappa_ext.
HeatingPower heating_power(double omega_p, double n_p, double kappa_int, double kappa_ext,
                           double delta, double eta);

/// r = (omega_mm - omega_mw)^2 / (4 omega_mm omega_mw).
double linearity_ratio(double omega_mw, double omega_mm);

/// Smallest kappa_p >= 0 with 4 delta^2 + kappa_p^2 >= F r kappa_mw kappa_mm.
double min_pump_linewidth(double F, double omega_mw, double omega_mm, double kappa_mw,
                          double kappa_mm, double delta);

enum class Regime {
  IntrinsicLimited = 1,  // F r kappa_mw kappa_mm < 4 kappa_int^2: critically coupled pump
  LinearityLimited = 2,  // pump linewidth set by the linearity constraint
};

struct EnergyInputs {
  double omega_p = 0.0;
  double g0 = 0.0;
  double kappa_mw = 0.0;
  double kappa_mm = 0.0;
  double kappa_int = 0.0;  // pump mode intrinsic linewidth
  double eta = 1.0;        // pump line transmittivity
  double F = 100.0;
  double r = 0.0;
};

struct EnergyPerQubit {
  double joules = 0.0;
  Regime regime = Regime::IntrinsicLimited;
};

Regime regime_of(const EnergyInputs& in);

/// Heat per converted temporal mode, P_heating / Delta, at delta = 0 with the
/// optimal external pump coupling.
EnergyPerQubit energy_per_qubit(const EnergyInputs& in);

/// Evaluates one branch regardless of which one applies. Branch 2 throws
/// DenominatorCollapse when sqrt(F r kappa_mw kappa_mm) <= kappa_int.
double energy_branch(const EnergyInputs& in, Regime branch);

/// hbar omega (kappa/g)^2 / (eta^2 (1 - eta^2)); +infinity unless 0 < eta < 1.
double electrooptic_energy(double omega_opt, double kappa_opt, double g0_eo, double eta);

struct OperatingInputs {
  double omega_mw = 0.0;
  double omega_mm = 0.0;
  double kappa_mw = 0.0;  // loaded (external) linewidths
  double kappa_mm = 0.0;
  double F = 100.0;
  double eta = 0.9;
  double q_pump_int = 1000.0;
  double q_mw_int = 1e5;
  double q_mm_int = 1000.0;
  synthesis::CouplingSet couplings;

  /// Throws InvalidArgument / InvalidFrequencies on out-of-range values.
  void validate() const;
};

/// Couplings of the bound-saturating design for the given L and I*.
OperatingInputs saturated_inputs(double omega_mw, double omega_mm, double inductance,
                                 double istar);

struct OperatingPoint {
  OperatingInputs inputs;
  double omega_p = 0.0;
  double r = 0.0;
  double n_p = 0.0;
  double g = 0.0;            // |g0| n_p; the sign of the exchange term is a phase convention
  double kerr_shift = 0.0;   // n_p chi_c
  double kappa_p = 0.0;
  double kappa_int = 0.0;
  double kappa_ext = 0.0;
  double delta = 0.0;
  double bandwidth = 0.0;
  HeatingPower heating;
  EnergyPerQubit energy;
  converter::Efficiency efficiency;
  double dephasing = 0.0;
  double heating_loss = 0.0;
  double heating_occupation = 0.0;
  double kerr_overlap = 0.0;
  bool rwa_violation = false;  // kappa_mm >= omega_mw
  bool overdamped_mw = false;  // Q_mw = omega_mw / kappa_mw <= 1
};

OperatingPoint evaluate_operating_point(const OperatingInputs& in);

}  // namespace mmconv::budget
