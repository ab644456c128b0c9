#include "mmconv/noise.hpp"

#include <cmath>

#include "mmconv/error.hpp"

namespace mmconv::noise {

double dephasing_purity_loss(const DephasingInputs& in) {
  if (!(in.kappa_a > 0.0) || !(in.kappa_b > 0.0) || !(in.kappa_p > 0.0) || in.n_p < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "dephasing needs positive linewidths and n_p >= 0");
  }
  const double lorentz = in.kappa_p / (in.delta * in.delta + 0.25 * in.kappa_p * in.kappa_p);
  return 2.0 * in.n_p * lorentz *
         (in.chi_ac * in.chi_ac / in.kappa_a + (in.chi_bc * in.chi_bc + in.g0 * in.g0) / in.kappa_b);
}

Heating heating_occupation(double kappa_mm, double omega_mw) {
  if (kappa_mm < 0.0 || !(omega_mw > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "heating needs kappa_mm >= 0 and omega_mw > 0");
  }
  const double x = kappa_mm / (4.0 * omega_mw);
  Heating h;
  h.purity_loss = x * x;
  h.occupation = 0.5 * x * x;
  h.rwa_violation = kappa_mm >= omega_mw;
  return h;
}

double kerr_overlap_perturbative(double n_p, double chi_c, double delta, double kappa_p) {
  const double denom = 4.0 * delta * delta + kappa_p * kappa_p;
  if (!(denom > 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa_p and delta both vanish");
  return 1.0 - 3.0 * n_p * n_p * chi_c * chi_c / (2.0 * denom);
}

namespace {

double trapezoid(const std::vector<double>& f, double dt) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * dt;
}

}  // namespace

PurityIntegral purity_integral(const converter::SimulationResult& trajectory,
                               const PurityParameters& p) {
  if (!(p.kappa_p > 0.0) || p.n_p < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "purity integral needs kappa_p > 0 and n_p >= 0");
  }
  const std::size_t n = trajectory.u_a.size();
  std::vector<double> second(n), mean(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx ua = trajectory.u_a[i];
    const cplx ub = trajectory.u_b[i];
    const double pa = std::norm(ua);
    const double pb = std::norm(ub);
    const cplx coherence = std::conj(ua) * ub;
    second[i] = p.n_p * (p.chi_ac * p.chi_ac * pa + (p.chi_bc * p.chi_bc + p.g0 * p.g0) * pb +
                         2.0 * p.g0 * p.chi_ac * coherence.real());
    mean[i] = p.n_p * std::norm(p.chi_ac * pa + p.chi_bc * pb + p.g0 * coherence);
  }
  const double q2 = p.kappa_p / (p.delta * p.delta + 0.25 * p.kappa_p * p.kappa_p);
  const double dt = trajectory.output.dt;
  PurityIntegral r;
  r.fluctuation_loss = 2.0 * q2 * trapezoid(second, dt);
  r.mean_loss = 2.0 * q2 * trapezoid(mean, dt);
  r.purity = 1.0 - r.fluctuation_loss + r.mean_loss;
  return r;
}

PurityIntegral purity_integral(const converter::TwoModeConverter& conv,
                               const converter::WavePacket& input, const PurityParameters& params) {
  return purity_integral(converter::simulate_single_photon(conv, input), params);
}

}  // namespace mmconv::noise
