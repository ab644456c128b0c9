#pragma once

// Decoherence channels of the converter: pump shot-noise dephasing,
// counter-rotating back-action heating and pump-mode Kerr distortion, the
// latter with a brute-force Lindblad steady-state solver as a numeric check.

#include <complex>

#include <Eigen/Dense>

#include "mmconv/converter.hpp"

namespace mmconv::noise {

using cplx = std::complex<double>;

struct PumpMode {
  double kappa_ext = 0.0;  // rad/s
  double kappa_int = 0.0;
  double delta = 0.0;      // pump detuning, rad/s
  double n_p = 0.0;        // mean photon number
  double chi_c = 0.0;      // self-Kerr, rad/s

  double kappa_p() const { return kappa_ext + kappa_int; }
};

struct DephasingInputs {
  double n_p = 0.0;
  double kappa_p = 0.0;
  double delta = 0.0;
  double chi_ac = 0.0;
  double chi_bc = 0.0;
  double g0 = 0.0;
  double kappa_a = 0.0;
  double kappa_b = 0.0;
};

/// Purity loss from pump photon shot noise for a narrow-band photon:
/// 2 n_p kappa_p / (delta^2 + kappa_p^2/4) * (chi_ac^2/kappa_a + (chi_bc^2 + g0^2)/kappa_b).
double dephasing_purity_loss(const DephasingInputs& in);

struct Heating {
  double occupation = 0.0;   // (kappa_mm / 4 omega_mw)^2 / 2
  double purity_loss = 0.0;  // (kappa_mm / 4 omega_mw)^2
  bool rwa_violation = false;  // kappa_mm >= omega_mw
};

Heating heating_occupation(double kappa_mm, double omega_mw);

/// Leading-order maximum coherent-state overlap of the driven Kerr
/// resonator: 1 - 3 n_p^2 chi^2 / (2 (4 delta^2 + kappa^2)).
double kerr_overlap_perturbative(double n_p, double chi_c, double delta, double kappa_p);

struct DensityOperator {
  Eigen::MatrixXcd rho;

  int dimension() const { return static_cast<int>(rho.rows()); }
  cplx trace() const { return rho.trace(); }
  /// <alpha|rho|alpha> for a coherent state truncated to the Fock basis.
  double coherent_overlap(cplx alpha) const;
  cplx mean_field() const;  // Tr(rho c)
  double photon_number() const;
};

struct KerrSteadyState {
  DensityOperator state;
  double max_overlap = 0.0;
  cplx best_alpha;
  cplx linear_amplitude;  // -i drive / (kappa/2 + i delta), the chi = 0 solution
  int truncation = 0;
};

/// Drive amplitude whose linear (chi = 0) response holds n_p photons.
double drive_for_photons(double n_p, double delta, double kappa_p);

inline constexpr double kTopLevelPopulation = 1e-8;
inline constexpr int kDefaultMaxDimension = 200;

/// Steady state of d rho/dt = -i[H, rho] + kappa D[c] rho with
/// H = delta c+c + chi/2 c+c+cc + drive (c + c+). With dim = 0 the truncation
/// starts at ceil(n + 8 sqrt(n) + 10), n being the linear photon number, and
/// grows by 1.5x until the top three levels hold less than
/// kTopLevelPopulation. Throws TruncationTooSmall if max_dim is exceeded and
/// SingularSolve if the linear system cannot be factorized.
KerrSteadyState kerr_steady_state_oracle(double drive, double chi_c, double delta, double kappa_p,
                                         int dim = 0, int max_dim = kDefaultMaxDimension);

struct PurityParameters {
  double n_p = 0.0;
  double kappa_p = 0.0;
  double delta = 0.0;
  double chi_ac = 0.0;
  double chi_bc = 0.0;
  double g0 = 0.0;
};

struct PurityIntegral {
  double purity = 1.0;
  double fluctuation_loss = 0.0;  // 2 q^2 integral of <K+K>
  double mean_loss = 0.0;         // 2 q^2 integral of |<K>|^2
};

/// Final purity 1 - 2 q^2 integral(<K+K> - |<K>|^2) dt along a simulated
/// single-photon trajectory, K = sqrt(n_p)(chi_ac a+a + chi_bc b+b + g0 a+b)
/// and q^2 = kappa_p / (delta^2 + kappa_p^2/4).
PurityIntegral purity_integral(const converter::SimulationResult& trajectory,
                               const PurityParameters& params);
PurityIntegral purity_integral(const converter::TwoModeConverter& conv,
                               const converter::WavePacket& input, const PurityParameters& params);

}  // namespace mmconv::noise
