#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "mmconv/error.hpp"
#include "mmconv/noise.hpp"

namespace mmconv::noise {
namespace {

constexpr cplx kI{0.0, 1.0};

Eigen::VectorXcd coherent_vector(cplx alpha, int dim) {
  Eigen::VectorXcd v(dim);
  cplx term = std::exp(-0.5 * std::norm(alpha));
  for (int m = 0; m < dim; ++m) {
    v[m] = term;
    term *= alpha / std::sqrt(static_cast<double>(m + 1));
  }
  return v;
}

Eigen::MatrixXcd solve_steady_state(double drive, double chi, double delta, double kappa, int dim) {
  const int n = dim * dim;
  auto idx = [dim](int m, int k) { return m * dim + k; };
  auto energy = [&](int m) { return delta * m + 0.5 * chi * m * (m - 1); };

  std::vector<Eigen::Triplet<cplx>> entries;
  entries.reserve(static_cast<std::size_t>(n) * 7);
  for (int m = 0; m < dim; ++m) {
    for (int k = 0; k < dim; ++k) {
      const int row = idx(m, k);
      if (row == 0) continue;  // replaced by the trace constraint
      entries.emplace_back(row, row,
                           -kI * (energy(m) - energy(k)) - 0.5 * kappa * static_cast<double>(m + k));
      // -i drive (c + c+) rho
      if (m + 1 < dim) entries.emplace_back(row, idx(m + 1, k), -kI * drive * std::sqrt(m + 1.0));
      if (m > 0) entries.emplace_back(row, idx(m - 1, k), -kI * drive * std::sqrt(double(m)));
      // +i drive rho (c + c+)
      if (k + 1 < dim) entries.emplace_back(row, idx(m, k + 1), kI * drive * std::sqrt(k + 1.0));
      if (k > 0) entries.emplace_back(row, idx(m, k - 1), kI * drive * std::sqrt(double(k)));
      if (m + 1 < dim && k + 1 < dim) {
        entries.emplace_back(row, idx(m + 1, k + 1), kappa * std::sqrt((m + 1.0) * (k + 1.0)));
      }
    }
  }
  for (int m = 0; m < dim; ++m) entries.emplace_back(0, idx(m, m), 1.0);

  Eigen::SparseMatrix<cplx> a(n, n);
  a.setFromTriplets(entries.begin(), entries.end());
  a.makeCompressed();
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs[0] = 1.0;

  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularSolve, "Lindblad steady-state factorization failed");
  }
  const Eigen::VectorXcd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite()) {
    throw Error(ErrorCode::SingularSolve, "Lindblad steady-state solve failed");
  }
  Eigen::MatrixXcd rho(dim, dim);
  for (int m = 0; m < dim; ++m)
    for (int k = 0; k < dim; ++k) rho(m, k) = x[idx(m, k)];
  return 0.5 * (rho + rho.adjoint());
}

double top_population(const Eigen::MatrixXcd& rho) {
  const int dim = static_cast<int>(rho.rows());
  double p = 0.0;
  for (int m = std::max(0, dim - 3); m < dim; ++m) p += std::abs(rho(m, m).real());
  return p;
}

}  // namespace

double DensityOperator::coherent_overlap(cplx alpha) const {
  const Eigen::VectorXcd v = coherent_vector(alpha, dimension());
  return (v.adjoint() * rho * v)(0, 0).real();
}

cplx DensityOperator::mean_field() const {
  cplx s = 0.0;
  for (int m = 0; m + 1 < dimension(); ++m) s += rho(m + 1, m) * std::sqrt(m + 1.0);
  return s;
}

double DensityOperator::photon_number() const {
  double s = 0.0;
  for (int m = 0; m < dimension(); ++m) s += m * rho(m, m).real();
  return s;
}

double drive_for_photons(double n_p, double delta, double kappa_p) {
  if (n_p < 0.0) throw Error(ErrorCode::InvalidArgument, "photon number must be non-negative");
  return std::sqrt(n_p) * std::abs(cplx(0.5 * kappa_p, delta));
}

KerrSteadyState kerr_steady_state_oracle(double drive, double chi_c, double delta, double kappa_p,
                                         int dim, int max_dim) {
  if (!(kappa_p > 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa_p must be positive");
  if (!std::isfinite(drive) || !std::isfinite(chi_c) || !std::isfinite(delta)) {
    throw Error(ErrorCode::InvalidArgument, "oracle parameters must be finite");
  }
  KerrSteadyState out;
  out.linear_amplitude = -kI * drive / cplx(0.5 * kappa_p, delta);
  const double n_lin = std::norm(out.linear_amplitude);
  if (dim <= 0) dim = static_cast<int>(std::ceil(n_lin + 8.0 * std::sqrt(n_lin) + 10.0));
  dim = std::max(dim, 4);

  for (;;) {
    if (dim > max_dim) {
      throw Error(ErrorCode::TruncationTooSmall,
                  "Fock truncation exceeds the maximum dimension " + std::to_string(max_dim));
    }
    Eigen::MatrixXcd rho = solve_steady_state(drive, chi_c, delta, kappa_p, dim);
    if (top_population(rho) < kTopLevelPopulation) {
      out.state.rho = std::move(rho);
      break;
    }
    dim = static_cast<int>(std::ceil(1.5 * dim));
  }
  out.truncation = dim;

  // Coordinate descent on (Re alpha, Im alpha) with step halving.
  cplx alpha = out.state.mean_field();
  double best = out.state.coherent_overlap(alpha);
  double step = 0.1 * std::max(1.0, std::abs(alpha));
  const cplx directions[] = {1.0, -1.0, kI, -kI};
  while (step > 1e-10) {
    bool improved = false;
    for (const cplx d : directions) {
      const cplx trial = alpha + step * d;
      const double value = out.state.coherent_overlap(trial);
      if (value > best) {
        best = value;
        alpha = trial;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  out.best_alpha = alpha;
  out.max_overlap = best;
  return out;
}

}  // namespace mmconv::noise
