#include "mmconv/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "mmconv/constants.hpp"
#include "mmconv/error.hpp"

namespace mmconv::budget {
namespace {

double log_point(double lo, double hi, int n, int i) {
  if (n == 1) return lo;
  const double t = static_cast<double>(i) / (n - 1);
  return std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
}

Regime regime_at(const OperatingInputs& base, double kappa_mw, double kappa_mm) {
  OperatingInputs in = base;
  in.kappa_mw = kappa_mw;
  in.kappa_mm = kappa_mm;
  const double omega_p = 0.5 * (in.omega_mm - in.omega_mw);
  EnergyInputs e{omega_p,  in.couplings.g0, kappa_mw, kappa_mm, omega_p / in.q_pump_int,
                 in.eta,   in.F,            linearity_ratio(in.omega_mw, in.omega_mm)};
  return regime_of(e);
}

}  // namespace

SweepGrid SweepGrid::standard() {
  SweepGrid g;
  g.kappa_mw_min = angular(0.1e6);
  g.kappa_mw_max = angular(10e9);
  g.kappa_mm_min = angular(1e6);
  g.kappa_mm_max = angular(300e9);
  return g;
}

void SweepGrid::validate() const {
  if (!(kappa_mw_min > 0.0) || !(kappa_mw_max >= kappa_mw_min) || !(kappa_mm_min > 0.0) ||
      !(kappa_mm_max >= kappa_mm_min) || kappa_mw_points < 1 || kappa_mm_points < 1) {
    throw Error(ErrorCode::InvalidArgument, "sweep grid needs positive ordered ranges and >= 1 point");
  }
}

double SweepGrid::kappa_mw(int i) const {
  return log_point(kappa_mw_min, kappa_mw_max, kappa_mw_points, i);
}

double SweepGrid::kappa_mm(int j) const {
  return log_point(kappa_mm_min, kappa_mm_max, kappa_mm_points, j);
}

std::vector<SweepRecord> sweep_operating_space(const OperatingInputs& base, const SweepGrid& grid,
                                               int jobs) {
  grid.validate();
  const std::size_t total =
      static_cast<std::size_t>(grid.kappa_mw_points) * static_cast<std::size_t>(grid.kappa_mm_points);
  std::vector<SweepRecord> records(total);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const int i = static_cast<int>(idx / grid.kappa_mm_points);
      const int j = static_cast<int>(idx % grid.kappa_mm_points);
      OperatingInputs in = base;
      in.kappa_mw = grid.kappa_mw(i);
      in.kappa_mm = grid.kappa_mm(j);
      const OperatingPoint p = evaluate_operating_point(in);
      SweepRecord& r = records[idx];
      r.kappa_mw = in.kappa_mw;
      r.kappa_mm = in.kappa_mm;
      r.energy = p.energy.joules;
      r.regime = p.energy.regime;
      r.t_max = p.efficiency.max_rule;
      r.t_sum = p.efficiency.sum_rule;
      r.dephasing = p.dephasing;
      r.heating = p.heating_loss;
      r.rwa_violation = p.rwa_violation;
      r.overdamped_mw = p.overdamped_mw;
    }
  };

  const std::size_t threads =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, total);
  if (threads == 1) {
    work(0, total);
    return records;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> failures(threads);
  const std::size_t chunk = (total + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(total, begin + chunk);
    pool.emplace_back([&, t, begin, end] {
      try {
        work(begin, end);
      } catch (...) {
        failures[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
  return records;
}

std::vector<BoundaryPoint> regime_boundary(const OperatingInputs& base, const SweepGrid& grid) {
  grid.validate();
  std::vector<BoundaryPoint> locus;
  for (int i = 0; i < grid.kappa_mw_points; ++i) {
    const double kmw = grid.kappa_mw(i);
    double lo = std::log(grid.kappa_mm_min);
    double hi = std::log(grid.kappa_mm_max);
    const Regime r_lo = regime_at(base, kmw, std::exp(lo));
    if (r_lo == regime_at(base, kmw, std::exp(hi))) continue;
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
      const double mid = 0.5 * (lo + hi);
      (regime_at(base, kmw, std::exp(mid)) == r_lo ? lo : hi) = mid;
    }
    locus.push_back({kmw, std::exp(0.5 * (lo + hi))});
  }
  return locus;
}

}  // namespace mmconv::budget
