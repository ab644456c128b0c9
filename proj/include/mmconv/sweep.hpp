#pragma once

// Log-spaced sweep of the operating point over the two signal-mode
// linewidths, and the locus of the regime boundary.

#include <vector>

#include "mmconv/budget.hpp"

namespace mmconv::budget {

struct SweepGrid {
  double kappa_mw_min = 0.0;  // rad/s
  double kappa_mw_max = 0.0;
  int kappa_mw_points = 60;
  double kappa_mm_min = 0.0;
  double kappa_mm_max = 0.0;
  int kappa_mm_points = 60;

  /// 60 x 60, kappa_mw/2pi in [0.1 MHz, 10 GHz], kappa_mm/2pi in [1 MHz, 300 GHz].
  static SweepGrid standard();
  void validate() const;
  double kappa_mw(int i) const;
  double kappa_mm(int j) const;
};

struct SweepRecord {
  double kappa_mw = 0.0;
  double kappa_mm = 0.0;
  double energy = 0.0;
  Regime regime = Regime::IntrinsicLimited;
  double t_max = 0.0;
  double t_sum = 0.0;
  double dephasing = 0.0;
  double heating = 0.0;
  bool rwa_violation = false;
  bool overdamped_mw = false;
};

/// Records in row-major grid order (kappa_mw outer, kappa_mm inner), computed
/// on up to `jobs` threads. The result does not depend on `jobs`.
std::vector<SweepRecord> sweep_operating_space(const OperatingInputs& base, const SweepGrid& grid,
                                               int jobs = 1);

struct BoundaryPoint {
  double kappa_mw = 0.0;
  double kappa_mm = 0.0;
};

/// For each kappa_mw of the grid, the kappa_mm at which the regime changes,
/// located by bisection in log kappa_mm. Columns where the boundary lies
/// outside the kappa_mm range are skipped.
std::vector<BoundaryPoint> regime_boundary(const OperatingInputs& base, const SweepGrid& grid);

}  // namespace mmconv::budget
