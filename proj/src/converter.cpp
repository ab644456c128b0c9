#include "mmconv/converter.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "mmconv/error.hpp"

namespace mmconv::converter {
namespace {

constexpr cplx kI{0.0, 1.0};

double energy(const std::vector<cplx>& samples, double dt) {
  double sum = 0.0;
  for (const auto& v : samples) sum += std::norm(v);
  return sum * dt;
}

cplx sample(const std::vector<cplx>& v, long n) {
  if (n < 0 || n >= static_cast<long>(v.size())) return 0.0;
  return v[static_cast<std::size_t>(n)];
}

// Catmull-Rom value halfway between samples n and n + 1.
cplx midpoint(const std::vector<cplx>& v, long n) {
  return (-sample(v, n - 1) + 9.0 * sample(v, n) + 9.0 * sample(v, n + 1) - sample(v, n + 2)) /
         16.0;
}

struct State {
  cplx ua;
  cplx ub;
  double lost;
};

State operator+(const State& x, const State& y) { return {x.ua + y.ua, x.ub + y.ub, x.lost + y.lost}; }
State operator*(double s, const State& x) { return {s * x.ua, s * x.ub, s * x.lost}; }

}  // namespace

void TwoModeConverter::validate() const {
  if (!(kappa_a > 0.0) || !(kappa_b > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "external linewidths must be positive");
  }
  if (kappa_a_int < 0.0 || kappa_b_int < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "intrinsic linewidths must be non-negative");
  }
  if (!std::isfinite(g)) throw Error(ErrorCode::InvalidArgument, "coupling must be finite");
}

TwoModeConverter TwoModeConverter::matched(double kappa_a, double kappa_b, double cooperativity) {
  TwoModeConverter c;
  c.kappa_a = kappa_a;
  c.kappa_b = kappa_b;
  c.g = 0.5 * std::sqrt(cooperativity * kappa_a * kappa_b);
  return c;
}

Eigen::Matrix2cd transfer_matrix(const TwoModeConverter& conv, double omega) {
  conv.validate();
  const double ka = conv.kappa_a;
  const double kb = conv.kappa_b;
  const cplx pa = omega + kI * (0.5 * (ka + conv.kappa_a_int));
  const cplx pb = omega + kI * (0.5 * (kb + conv.kappa_b_int));
  const cplx det = pa * pb - conv.g * conv.g;
  const cplx cross = -kI * conv.g * std::sqrt(ka * kb) / det;

  Eigen::Matrix2cd s;
  s(0, 0) = 1.0 - kI * ka * pb / det;
  s(0, 1) = cross;
  s(1, 0) = cross;
  s(1, 1) = 1.0 - kI * kb * pa / det;
  return s;
}

double conversion_bandwidth(double kappa_a, double kappa_b) {
  if (!(kappa_a > 0.0) || !(kappa_b > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "linewidths must be positive");
  }
  const double half_diff = 0.5 * (kappa_a - kappa_b);
  const double d2 = half_diff * half_diff;
  const double p = kappa_a * kappa_b;
  // sqrt(p^2 + d2^2) - d2 rewritten to avoid cancellation when d2 >> p.
  const double gap = p * p / (std::hypot(p, d2) + d2);
  return std::sqrt(2.0 * gap);
}

double WavePacket::energy_a() const { return energy(alpha, dt); }
double WavePacket::energy_b() const { return energy(beta, dt); }

void WavePacket::normalize() {
  const double n = norm();
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "cannot normalize an empty wave packet");
  const double scale = 1.0 / std::sqrt(n);
  for (auto& v : alpha) v *= scale;
  for (auto& v : beta) v *= scale;
}

WavePacket WavePacket::make_pulse(Shape shape, Port port, double center, double width,
                                  double t_start, double dt, std::size_t samples) {
  if (!(width > 0.0) || !(dt > 0.0) || samples < 2) {
    throw Error(ErrorCode::InvalidArgument, "pulse needs positive width, step and >= 2 samples");
  }
  WavePacket p;
  p.t0 = t_start;
  p.dt = dt;
  p.alpha.assign(samples, 0.0);
  p.beta.assign(samples, 0.0);
  auto& target = port == Port::A ? p.alpha : p.beta;
  for (std::size_t n = 0; n < samples; ++n) {
    const double x = p.time(n) - center;
    if (shape == Shape::Gaussian) {
      target[n] = std::exp(-x * x / (4.0 * width * width));
    } else {
      target[n] = std::abs(x) <= 0.5 * width ? 1.0 : 0.0;
    }
  }
  p.normalize();
  return p;
}

double max_time_step(const TwoModeConverter& conv) {
  const double rate = std::max({conv.kappa_a + conv.kappa_a_int, conv.kappa_b + conv.kappa_b_int,
                                std::abs(conv.g)});
  return 1.0 / (20.0 * rate);
}

SimulationResult simulate_single_photon(const TwoModeConverter& conv, const WavePacket& input) {
  conv.validate();
  if (input.alpha.size() != input.beta.size() || input.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "wave packet ports must share a grid of >= 2 samples");
  }
  if (input.dt > max_time_step(conv) * (1.0 + 1e-12)) {
    throw Error(ErrorCode::GridTooCoarse, "time step does not resolve the converter dynamics");
  }

  const double sa = std::sqrt(conv.kappa_a);
  const double sb = std::sqrt(conv.kappa_b);
  const double decay_a = 0.5 * (conv.kappa_a + conv.kappa_a_int);
  const double decay_b = 0.5 * (conv.kappa_b + conv.kappa_b_int);
  auto rhs = [&](const State& y, cplx a_in, cplx b_in) {
    State d;
    d.ua = -kI * conv.g * y.ub - decay_a * y.ua - kI * sa * a_in;
    d.ub = -kI * conv.g * y.ua - decay_b * y.ub - kI * sb * b_in;
    d.lost = conv.kappa_a_int * std::norm(y.ua) + conv.kappa_b_int * std::norm(y.ub);
    return d;
  };

  const std::size_t n = input.size();
  const double h = input.dt;
  SimulationResult out;
  out.u_a.resize(n);
  out.u_b.resize(n);
  State y{0.0, 0.0, 0.0};
  for (std::size_t step = 0; step < n; ++step) {
    out.u_a[step] = y.ua;
    out.u_b[step] = y.ub;
    if (step + 1 == n) break;
    const long s = static_cast<long>(step);
    const cplx a0 = input.alpha[step], b0 = input.beta[step];
    const cplx am = midpoint(input.alpha, s), bm = midpoint(input.beta, s);
    const cplx a1 = input.alpha[step + 1], b1 = input.beta[step + 1];
    const State k1 = rhs(y, a0, b0);
    const State k2 = rhs(y + (0.5 * h) * k1, am, bm);
    const State k3 = rhs(y + (0.5 * h) * k2, am, bm);
    const State k4 = rhs(y + h * k3, a1, b1);
    y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  out.output.t0 = input.t0;
  out.output.dt = h;
  out.output.alpha.resize(n);
  out.output.beta.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.output.alpha[i] = input.alpha[i] - kI * sa * out.u_a[i];
    out.output.beta[i] = input.beta[i] - kI * sb * out.u_b[i];
  }
  out.lost = y.lost;
  out.final_mode_norm = std::norm(y.ua) + std::norm(y.ub);
  out.norm_residual =
      std::abs(out.output.norm() + out.final_mode_norm + out.lost - input.norm());
  return out;
}

Efficiency conversion_efficiency(double kappa_ext_a, double kappa_int_a, double kappa_ext_b,
                                 double kappa_int_b) {
  if (!(kappa_ext_a > 0.0) || !(kappa_ext_b > 0.0) || kappa_int_a < 0.0 || kappa_int_b < 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "external linewidths must be positive, intrinsic non-negative");
  }
  const double ra = kappa_int_a / kappa_ext_a;
  const double rb = kappa_int_b / kappa_ext_b;
  return {1.0 - std::max(ra, rb), 1.0 - ra - rb};
}

}  // namespace mmconv::converter
