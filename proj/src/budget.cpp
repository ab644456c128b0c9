#include "mmconv/budget.hpp"

#include <cmath>
#include <limits>

#include "mmconv/constants.hpp"
#include "mmconv/error.hpp"
#include "mmconv/noise.hpp"

namespace mmconv::budget {

double pump_photons(double g0, double kappa_mw, double kappa_mm) {
  if (g0 == 0.0) throw Error(ErrorCode::ZeroCoupling, "g0 must be non-zero");
  if (!(kappa_mw > 0.0) || !(kappa_mm > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "linewidths must be positive");
  }
  return std::sqrt(kappa_mw * kappa_mm) / (2.0 * std::abs(g0));
}

HeatingPower heating_power(double omega_p, double n_p, double kappa_int, double kappa_ext,
                           double delta, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "eta must lie in (0, 1]");
  if (kappa_int < 0.0 || !(kappa_ext > 0.0) || n_p < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "need kappa_int >= 0, kappa_ext > 0, n_p >= 0");
  }
  const double kappa_p = kappa_int + kappa_ext;
  const double scale = kHbar * omega_p * n_p;
  HeatingPower p;
  p.in_mode = scale * kappa_int * eta;
  p.in_line = scale * (delta * delta + 0.25 * kappa_p * kappa_p) / kappa_ext * (1.0 / eta - eta);
  p.total = p.in_mode + p.in_line;
  return p;
}

double linearity_ratio(double omega_mw, double omega_mm) {
  const double d = omega_mm - omega_mw;
  return d * d / (4.0 * omega_mm * omega_mw);
}

double min_pump_linewidth(double F, double omega_mw, double omega_mm, double kappa_mw,
                          double kappa_mm, double delta) {
  if (!(F > 0.0)) throw Error(ErrorCode::InvalidArgument, "F must be positive");
  const double need = F * linearity_ratio(omega_mw, omega_mm) * kappa_mw * kappa_mm;
  return std::sqrt(std::max(0.0, need - 4.0 * delta * delta));
}

namespace {

double linearity_product(const EnergyInputs& in) { return in.F * in.r * in.kappa_mw * in.kappa_mm; }

}  // namespace

Regime regime_of(const EnergyInputs& in) {
  return linearity_product(in) < 4.0 * in.kappa_int * in.kappa_int ? Regime::IntrinsicLimited
                                                                   : Regime::LinearityLimited;
}

double energy_branch(const EnergyInputs& in, Regime branch) {
  const double n_p = pump_photons(in.g0, in.kappa_mw, in.kappa_mm);
  const double bandwidth = converter::conversion_bandwidth(in.kappa_mw, in.kappa_mm);
  const double scale = kHbar * in.omega_p * n_p / bandwidth;
  if (branch == Regime::IntrinsicLimited) return scale * in.kappa_int / in.eta;
  const double product = linearity_product(in);
  const double root = std::sqrt(product);
  if (!(root > in.kappa_int)) {
    throw Error(ErrorCode::DenominatorCollapse,
                "linearity-limited branch requires sqrt(F r kappa_mw kappa_mm) > kappa_int");
  }
  return scale *
         (in.kappa_int * in.eta + product * (1.0 / in.eta - in.eta) / 4.0 / (root - in.kappa_int));
}

EnergyPerQubit energy_per_qubit(const EnergyInputs& in) {
  if (!(in.eta > 0.0 && in.eta <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "eta must lie in (0, 1]");
  }
  if (!(in.F > 0.0) || in.kappa_int < 0.0 || !(in.omega_p > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "need F > 0, kappa_int >= 0, omega_p > 0");
  }
  EnergyPerQubit e;
  e.regime = regime_of(in);
  e.joules = energy_branch(in, e.regime);
  return e;
}

double electrooptic_energy(double omega_opt, double kappa_opt, double g0_eo, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) return std::numeric_limits<double>::infinity();
  if (g0_eo == 0.0) throw Error(ErrorCode::ZeroCoupling, "electro-optic coupling must be non-zero");
  const double ratio = kappa_opt / g0_eo;
  const double eta2 = eta * eta;
  return kHbar * omega_opt * ratio * ratio / (eta2 * (1.0 - eta2));
}

void OperatingInputs::validate() const {
  if (!(omega_mw > 0.0) || !(omega_mm > omega_mw)) {
    throw Error(ErrorCode::InvalidFrequencies, "need omega_mm > omega_mw > 0");
  }
  if (!(kappa_mw > 0.0) || !(kappa_mm > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "linewidths must be positive");
  }
  if (!(F > 0.0)) throw Error(ErrorCode::InvalidArgument, "F must be positive");
  if (!(eta > 0.0 && eta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "eta must lie in (0, 1]");
  if (!(q_pump_int > 0.0) || !(q_mw_int > 0.0) || !(q_mm_int > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "quality factors must be positive");
  }
  if (couplings.g0 == 0.0) throw Error(ErrorCode::ZeroCoupling, "g0 must be non-zero");
}

OperatingInputs saturated_inputs(double omega_mw, double omega_mm, double inductance,
                                 double istar) {
  OperatingInputs in;
  in.omega_mw = omega_mw;
  in.omega_mm = omega_mm;
  in.couplings = synthesis::saturated_couplings(
      omega_mw, omega_mm, synthesis::optimal_g0(omega_mw, omega_mm, inductance, istar));
  return in;
}

OperatingPoint evaluate_operating_point(const OperatingInputs& in) {
  in.validate();
  OperatingPoint p;
  p.inputs = in;
  const auto& c = in.couplings;
  p.omega_p = 0.5 * (in.omega_mm - in.omega_mw);
  p.r = linearity_ratio(in.omega_mw, in.omega_mm);
  p.n_p = pump_photons(c.g0, in.kappa_mw, in.kappa_mm);
  p.g = std::abs(c.g0) * p.n_p;
  p.kerr_shift = c.chi_c * p.n_p;
  p.kappa_int = p.omega_p / in.q_pump_int;
  p.bandwidth = converter::conversion_bandwidth(in.kappa_mw, in.kappa_mm);

  EnergyInputs e{p.omega_p, c.g0, in.kappa_mw, in.kappa_mm, p.kappa_int, in.eta, in.F, p.r};
  p.energy = energy_per_qubit(e);
  if (p.energy.regime == Regime::IntrinsicLimited) {
    p.kappa_ext = p.kappa_int;
    p.kappa_p = 2.0 * p.kappa_int;
  } else {
    p.kappa_p = min_pump_linewidth(in.F, in.omega_mw, in.omega_mm, in.kappa_mw, in.kappa_mm, 0.0);
    p.kappa_ext = p.kappa_p - p.kappa_int;
  }
  p.heating = heating_power(p.omega_p, p.n_p, p.kappa_int, p.kappa_ext, p.delta, in.eta);

  p.efficiency = converter::conversion_efficiency(in.kappa_mw, in.omega_mw / in.q_mw_int,
                                                  in.kappa_mm, in.omega_mm / in.q_mm_int);
  p.dephasing = noise::dephasing_purity_loss(
      {p.n_p, p.kappa_p, p.delta, c.chi_ac, c.chi_bc, c.g0, in.kappa_mw, in.kappa_mm});
  const auto heat = noise::heating_occupation(in.kappa_mm, in.omega_mw);
  p.heating_loss = heat.purity_loss;
  p.heating_occupation = heat.occupation;
  p.rwa_violation = heat.rwa_violation;
  p.overdamped_mw = in.kappa_mw >= in.omega_mw;
  p.kerr_overlap = noise::kerr_overlap_perturbative(p.n_p, c.chi_c, p.delta, p.kappa_p);
  return p;
}

}  // namespace mmconv::budget
