#pragma once

// Independent reference computations used by the tests. None of these call
// into the spectral machinery they are used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mmconv/circuit.hpp"

namespace oracle {

/// Random LC network on `nodes` non-ground nodes: every node has a capacitor
/// to ground plus random coupling capacitors; the inductor graph contains a
/// random spanning tree rooted at ground plus extra random edges.
inline mmconv::circuit::Netlist random_circuit(std::mt19937_64& rng, int nodes) {
  std::uniform_real_distribution<double> logu(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto cap = [&] { return 1e-12 * std::pow(10.0, logu(rng)); };
  auto ind = [&] { return 1e-9 * std::pow(10.0, logu(rng)); };

  mmconv::circuit::Netlist net;
  net.node_count = nodes + 1;
  for (int n = 1; n <= nodes; ++n) net.capacitors.push_back({n, 0, cap()});
  for (int a = 1; a <= nodes; ++a)
    for (int b = a + 1; b <= nodes; ++b)
      if (unit(rng) < 0.4) net.capacitors.push_back({a, b, cap()});
  for (int n = 1; n <= nodes; ++n) {
    std::uniform_int_distribution<int> parent(0, n - 1);
    net.inductors.push_back({n, parent(rng), ind()});
  }
  for (int a = 0; a <= nodes; ++a)
    for (int b = a + 1; b <= nodes; ++b)
      if (unit(rng) < 0.25) net.inductors.push_back({a, b, ind()});
  return net;
}

/// Dense nodal matrices stamped independently of build_circuit.
inline void stamp(const mmconv::circuit::Netlist& net, Eigen::MatrixXd& c, Eigen::MatrixXd& linv) {
  const int n = net.node_count - 1;
  c = Eigen::MatrixXd::Zero(n, n);
  linv = Eigen::MatrixXd::Zero(n, n);
  auto add = [](Eigen::MatrixXd& m, int a, int b, double v) {
    if (a > 0) m(a - 1, a - 1) += v;
    if (b > 0) m(b - 1, b - 1) += v;
    if (a > 0 && b > 0) {
      m(a - 1, b - 1) -= v;
      m(b - 1, a - 1) -= v;
    }
  };
  for (const auto& e : net.capacitors) add(c, e.a, e.b, e.farads);
  for (const auto& e : net.inductors) add(linv, e.a, e.b, 1.0 / e.henries);
  if (net.nonlinear && !net.nonlinear->embedded) {
    add(linv, net.nonlinear->a, net.nonlinear->b, 1.0 / net.nonlinear->henries);
  }
}

/// Z(omega) = (i omega C + Linv / (i omega))^-1 by dense LU.
inline Eigen::MatrixXcd dense_impedance(const Eigen::MatrixXd& c, const Eigen::MatrixXd& linv,
                                        double omega) {
  const std::complex<double> iw(0.0, omega);
  Eigen::MatrixXcd y = iw * c.cast<std::complex<double>>() + linv.cast<std::complex<double>>() / iw;
  return y.partialPivLu().inverse();
}

/// Resonances as roots of det(Linv - omega^2 C) on a log grid in omega^2,
/// refined by bisection on the sign of the determinant.
inline std::vector<double> determinant_roots(const Eigen::MatrixXd& c, const Eigen::MatrixXd& linv,
                                             double lambda_min, double lambda_max, int grid) {
  auto f = [&](double lambda) { return (linv - lambda * c).determinant(); };
  std::vector<double> roots;
  double prev_l = lambda_min;
  double prev_f = f(prev_l);
  for (int k = 1; k <= grid; ++k) {
    const double l = lambda_min * std::pow(lambda_max / lambda_min, double(k) / grid);
    const double v = f(l);
    if ((v < 0) != (prev_f < 0)) {
      double lo = prev_l, hi = l, flo = prev_f;
      for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
        if (hi / lo - 1.0 < 1e-15) break;
      }
      roots.push_back(std::sqrt(std::sqrt(lo * hi)));
    }
    prev_l = l;
    prev_f = v;
  }
  return roots;
}

/// Two-terminal inductance by Kron reduction of the inductor Laplacian with
/// node j (or ground) as reference; +inf when i is isolated from j.
inline double kron_inductance(const mmconv::circuit::Netlist& net, int i, int j) {
  const int n = net.node_count;
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  auto add = [&](int a, int b, double y) {
    lap(a, a) += y;
    lap(b, b) += y;
    lap(a, b) -= y;
    lap(b, a) -= y;
  };
  for (const auto& e : net.inductors) add(e.a, e.b, 1.0 / e.henries);
  if (net.nonlinear && !net.nonlinear->embedded) {
    add(net.nonlinear->a, net.nonlinear->b, 1.0 / net.nonlinear->henries);
  }
  // Pseudo-inverse of the Laplacian: (e_i - e_j)^T L+ (e_i - e_j).
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
  d[i] += 1.0;
  d[j] -= 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
  const double tol = 1e-12 * es.eigenvalues().cwiseAbs().maxCoeff();
  double value = 0.0;
  for (int k = 0; k < n; ++k) {
    const double proj = es.eigenvectors().col(k).dot(d);
    if (es.eigenvalues()[k] > tol) {
      value += proj * proj / es.eigenvalues()[k];
    } else if (std::abs(proj) > 1e-9) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return value;
}

}  // namespace oracle
