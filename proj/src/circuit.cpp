#include "mmconv/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mmconv/constants.hpp"
#include "mmconv/error.hpp"

namespace mmconv::circuit {
namespace {

void check_edge(int a, int b, int node_count, const std::string& what) {
  if (a < 0 || b < 0 || a >= node_count || b >= node_count) {
    throw Error(ErrorCode::InvalidNode, what + ": node index out of range [0, " +
                                            std::to_string(node_count) + ")");
  }
  if (a == b) throw Error(ErrorCode::InvalidNode, what + ": self-loop on node " + std::to_string(a));
}

void check_positive(double v, const std::string& what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, what + ": value must be positive and finite");
  }
}

// Adds a two-terminal admittance-like element to a grounded Laplacian.
void stamp(Eigen::MatrixXd& m, int a, int b, double value) {
  const int ra = a - 1;
  const int rb = b - 1;
  if (ra >= 0) m(ra, ra) += value;
  if (rb >= 0) m(rb, rb) += value;
  if (ra >= 0 && rb >= 0) {
    m(ra, rb) -= value;
    m(rb, ra) -= value;
  }
}

void check_node(const NormalModeSet& modes, int node) {
  if (node < 0 || node > modes.zpf.rows()) {
    throw Error(ErrorCode::InvalidNode, "node " + std::to_string(node) + " out of range");
  }
}

double column_entry(const Eigen::MatrixXd& m, int node, int k) {
  return node == 0 ? 0.0 : m(node - 1, k);
}

// Union-find over nodes including ground.
struct Components {
  explicit Components(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  std::vector<int> parent;
};

}  // namespace

void Netlist::validate() const {
  if (node_count < 2) {
    throw Error(ErrorCode::InvalidArgument, "netlist needs at least one non-ground node");
  }
  for (std::size_t n = 0; n < capacitors.size(); ++n) {
    const auto& c = capacitors[n];
    const std::string what = "capacitors[" + std::to_string(n) + "]";
    check_edge(c.a, c.b, node_count, what);
    check_positive(c.farads, what);
  }
  for (std::size_t n = 0; n < inductors.size(); ++n) {
    const auto& l = inductors[n];
    const std::string what = "inductors[" + std::to_string(n) + "]";
    check_edge(l.a, l.b, node_count, what);
    check_positive(l.henries, what);
  }
  if (nonlinear) {
    check_edge(nonlinear->a, nonlinear->b, node_count, "nonlinear");
    check_positive(nonlinear->henries, "nonlinear.L");
    check_positive(nonlinear->istar, "nonlinear.Istar");
  }
}

LinearCircuit build_circuit(const Netlist& netlist) {
  netlist.validate();
  LinearCircuit circuit;
  circuit.node_count = netlist.node_count;
  const int n = circuit.dimension();
  circuit.capacitance = Eigen::MatrixXd::Zero(n, n);
  circuit.inverse_inductance = Eigen::MatrixXd::Zero(n, n);

  for (const auto& c : netlist.capacitors) stamp(circuit.capacitance, c.a, c.b, c.farads);
  for (const auto& l : netlist.inductors) {
    stamp(circuit.inverse_inductance, l.a, l.b, 1.0 / l.henries);
    circuit.inductor_graph.push_back(l);
  }
  if (netlist.nonlinear && !netlist.nonlinear->embedded) {
    const auto& nl = *netlist.nonlinear;
    stamp(circuit.inverse_inductance, nl.a, nl.b, 1.0 / nl.henries);
    circuit.inductor_graph.push_back({nl.a, nl.b, nl.henries});
  }

  // Every node needs a capacitive path to ground; check structurally and
  // then numerically.
  Components cap_graph(netlist.node_count);
  for (const auto& c : netlist.capacitors) cap_graph.unite(c.a, c.b);
  for (int node = 1; node < netlist.node_count; ++node) {
    if (cap_graph.find(node) != cap_graph.find(0)) {
      throw Error(ErrorCode::SingularCapacitance,
                  "node " + std::to_string(node) + " has no capacitive path to ground");
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(circuit.capacitance);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularCapacitance, "capacitance matrix is not positive-definite");
  }
  return circuit;
}

double NormalModeSet::flux(int node, int k) const {
  check_node(*this, node);
  return column_entry(zpf, node, k);
}

double NormalModeSet::flux_difference(int i, int j, int k) const {
  return flux(i, k) - flux(j, k);
}

void NormalModeSet::require_finite_mode(int k) const {
  if (k < 0 || k >= mode_count()) {
    throw Error(ErrorCode::InvalidArgument, "mode index " + std::to_string(k) + " out of range");
  }
  if (free_mode[static_cast<std::size_t>(k)]) {
    throw Error(ErrorCode::ZeroFrequencyMode, "mode " + std::to_string(k) + " has zero frequency");
  }
}

NormalModeSet normal_modes(const LinearCircuit& circuit) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> cap_eig(circuit.capacitance);
  if (cap_eig.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "eigensolver failed on the capacitance matrix");
  }
  if (cap_eig.eigenvalues().minCoeff() <= 0.0) {
    throw Error(ErrorCode::SingularCapacitance, "capacitance matrix is not positive-definite");
  }
  const Eigen::MatrixXd c_inv_sqrt = cap_eig.eigenvectors() *
                                     cap_eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                     cap_eig.eigenvectors().transpose();

  Eigen::MatrixXd dynamical = c_inv_sqrt * circuit.inverse_inductance * c_inv_sqrt;
  dynamical = 0.5 * (dynamical + dynamical.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dynamical);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "eigensolver did not converge");
  }

  NormalModeSet modes;
  const Eigen::Index n = dynamical.rows();
  modes.orthogonal = eig.eigenvectors();
  modes.modal_matrix = c_inv_sqrt * modes.orthogonal;
  modes.frequencies = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  modes.zpf = Eigen::MatrixXd::Zero(n, n);
  modes.free_mode.assign(static_cast<std::size_t>(n), false);

  const double omega_max = n > 0 ? modes.frequencies.maxCoeff() : 0.0;
  const double floor = std::max(kFreeModeFloor, kFreeModeRelative * omega_max);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (modes.frequencies(k) < floor) {
      modes.frequencies(k) = 0.0;
      modes.free_mode[static_cast<std::size_t>(k)] = true;
      continue;
    }
    modes.zpf.col(k) = modes.modal_matrix.col(k) * std::sqrt(kHbar / (2.0 * modes.frequencies(k)));
  }
  return modes;
}

Eigen::MatrixXcd impedance(const NormalModeSet& modes, double omega, double pole_guard) {
  using cd = std::complex<double>;
  const Eigen::Index n = modes.modal_matrix.rows();
  Eigen::VectorXcd weights(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double wk = modes.frequencies(k);
    if (wk > 0.0 && std::abs(omega - wk) / wk < pole_guard) {
      throw Error(ErrorCode::NearPole, "omega within pole guard of mode " + std::to_string(k));
    }
    if (wk == 0.0 && omega == 0.0) {
      throw Error(ErrorCode::NearPole, "omega = 0 coincides with a free mode");
    }
    weights(k) = cd(0.0, omega) / (wk * wk - omega * omega);
  }
  const Eigen::MatrixXcd m = modes.modal_matrix.cast<cd>();
  return m * weights.asDiagonal() * m.transpose();
}

Eigen::MatrixXcd impedance(const LinearCircuit& circuit, double omega, double pole_guard) {
  return impedance(normal_modes(circuit), omega, pole_guard);
}

std::complex<double> impedance_between(const Eigen::MatrixXcd& z, int i, int j) {
  auto entry = [&](int a, int b) -> std::complex<double> {
    if (a == 0 || b == 0) return 0.0;
    return z(a - 1, b - 1);
  };
  const int n = static_cast<int>(z.rows());
  if (i < 0 || j < 0 || i > n || j > n) throw Error(ErrorCode::InvalidNode, "node out of range");
  return entry(i, i) + entry(j, j) - entry(i, j) - entry(j, i);
}

std::complex<double> impedance_residue(const NormalModeSet& modes, int k, int i, int j) {
  modes.require_finite_mode(k);
  const double wk = modes.frequencies(k);
  return std::complex<double>(0.0, -wk / kHbar) * modes.flux(i, k) * modes.flux(j, k);
}

std::complex<double> effective_impedance_residue(const NormalModeSet& modes, int k, int i,
                                                 int j) {
  modes.require_finite_mode(k);
  const double wk = modes.frequencies(k);
  const double d = modes.flux_difference(i, j, k);
  return std::complex<double>(0.0, -wk / kHbar) * d * d;
}

double effective_inductance(const LinearCircuit& circuit, int i, int j) {
  const int nodes = circuit.node_count;
  if (i < 0 || j < 0 || i >= nodes || j >= nodes || i == j) {
    throw Error(ErrorCode::InvalidNode, "effective_inductance needs two distinct in-range nodes");
  }
  Components graph(nodes);
  for (const auto& l : circuit.inductor_graph) graph.unite(l.a, l.b);
  if (graph.find(i) != graph.find(j)) return std::numeric_limits<double>::infinity();

  // Grounded Laplacian of the component, referenced to ground if the component
  // contains it and to node j otherwise.
  const int root = graph.find(i);
  const int reference = graph.find(0) == root ? 0 : j;
  std::vector<int> index(static_cast<std::size_t>(nodes), -1);
  int count = 0;
  for (int v = 0; v < nodes; ++v) {
    if (v != reference && graph.find(v) == root) index[static_cast<std::size_t>(v)] = count++;
  }
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(count, count);
  for (const auto& l : circuit.inductor_graph) {
    if (graph.find(l.a) != root) continue;
    const double y = 1.0 / l.henries;
    const int ra = index[static_cast<std::size_t>(l.a)];
    const int rb = index[static_cast<std::size_t>(l.b)];
    if (ra >= 0) lap(ra, ra) += y;
    if (rb >= 0) lap(rb, rb) += y;
    if (ra >= 0 && rb >= 0) {
      lap(ra, rb) -= y;
      lap(rb, ra) -= y;
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(count);
  if (index[static_cast<std::size_t>(i)] >= 0) rhs(index[static_cast<std::size_t>(i)]) += 1.0;
  if (index[static_cast<std::size_t>(j)] >= 0) rhs(index[static_cast<std::size_t>(j)]) -= 1.0;
  Eigen::LLT<Eigen::MatrixXd> llt(lap);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalBreakdown, "inductor Laplacian factorization failed");
  }
  return rhs.dot(llt.solve(rhs));
}

double sum_rule_residual(const LinearCircuit& circuit, const NormalModeSet& modes, int i, int j) {
  for (int k = 0; k < modes.mode_count(); ++k) {
    if (!modes.free_mode[static_cast<std::size_t>(k)]) continue;
    const double d = column_entry(modes.modal_matrix, i, k) - column_entry(modes.modal_matrix, j, k);
    const double scale = modes.modal_matrix.col(k).cwiseAbs().maxCoeff();
    if (std::abs(d) > 1e-8 * scale) {
      throw Error(ErrorCode::ZeroFrequencyMode,
                  "a zero-frequency mode carries flux across the probed pair");
    }
  }
  const double l_eff = effective_inductance(circuit, i, j);
  if (!std::isfinite(l_eff)) {
    throw Error(ErrorCode::InvalidArgument, "no inductive path between the probed nodes");
  }
  double sum = 0.0;
  for (int k = 0; k < modes.mode_count(); ++k) {
    if (modes.free_mode[static_cast<std::size_t>(k)]) continue;
    const double d = modes.flux_difference(i, j, k);
    sum += d * d / (kHbar * modes.frequencies(k));
  }
  return std::abs(sum - 0.5 * l_eff) / (0.5 * l_eff);
}

double sum_rule_residual(const LinearCircuit& circuit, int i, int j) {
  return sum_rule_residual(circuit, normal_modes(circuit), i, j);
}

}  // namespace mmconv::circuit
