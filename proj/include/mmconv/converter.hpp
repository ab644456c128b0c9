#pragma once

// Ideal beam-splitter converter between two damped modes a and b in the
// single-photon subspace: frequency-domain scattering, FWHM bandwidth and
// time-domain wave-packet propagation. Frequencies are detunings from the
// mode resonances in the pump-rotating frame; time dependence is exp(-i w t).

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace mmconv::converter {

using cplx = std::complex<double>;

struct TwoModeConverter {
  double g = 0.0;          // beam-splitter coupling, rad/s
  double kappa_a = 0.0;    // external linewidths, rad/s
  double kappa_b = 0.0;
  double kappa_a_int = 0.0;
  double kappa_b_int = 0.0;

  double cooperativity() const { return 4.0 * g * g / (kappa_a * kappa_b); }
  void validate() const;

  /// Converter with 4 g^2 = C kappa_a kappa_b.
  static TwoModeConverter matched(double kappa_a, double kappa_b, double cooperativity = 1.0);
};

/// S(omega) mapping (alpha_in, beta_in) to (alpha_out, beta_out).
Eigen::Matrix2cd transfer_matrix(const TwoModeConverter& conv, double omega);

/// Full width at half maximum of |S_21|^2 at unit cooperativity, rad/s.
double conversion_bandwidth(double kappa_a, double kappa_b);

/// Input/output field amplitudes on a uniform grid, normalized so that
/// sum(|alpha|^2 + |beta|^2) dt = 1.
struct WavePacket {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<cplx> alpha;
  std::vector<cplx> beta;

  std::size_t size() const { return alpha.size(); }
  double time(std::size_t n) const { return t0 + dt * static_cast<double>(n); }
  double energy_a() const;
  double energy_b() const;
  double norm() const { return energy_a() + energy_b(); }
  void normalize();

  enum class Port { A, B };
  enum class Shape { Gaussian, Square };
  /// Single-port pulse sampled at t_start + n dt. A Gaussian has amplitude
  /// exp(-(t - center)^2 / 4 width^2), so `width` is the standard deviation
  /// of the photon arrival time; a square pulse is flat over
  /// [center - width/2, center + width/2]. The result is normalized.
  static WavePacket make_pulse(Shape shape, Port port, double center, double width,
                               double t_start, double dt, std::size_t samples);
};

struct SimulationResult {
  WavePacket output;
  std::vector<cplx> u_a;
  std::vector<cplx> u_b;
  double lost = 0.0;           // norm absorbed by intrinsic losses
  double final_mode_norm = 0.0;
  double norm_residual = 0.0;  // |out + modes + lost - in|
};

/// Largest admissible step: 20 samples per 1/kappa and per 1/|g|.
double max_time_step(const TwoModeConverter& conv);

/// Fixed-step RK4 integration of the coupled mode equations driven by the
/// input packet, followed by the input-output relations. Input samples are
/// interpolated with cubic Hermite splines at RK4 half steps.
/// Throws GridTooCoarse when input.dt exceeds max_time_step.
SimulationResult simulate_single_photon(const TwoModeConverter& conv, const WavePacket& input);

struct Efficiency {
  double max_rule = 0.0;  // 1 - max(ratio_a, ratio_b)
  double sum_rule = 0.0;  // 1 - ratio_a - ratio_b
};

Efficiency conversion_efficiency(double kappa_ext_a, double kappa_int_a, double kappa_ext_b,
                                 double kappa_int_b);

}  // namespace mmconv::converter
