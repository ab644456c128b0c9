#pragma once

// Lossless lumped LC networks: nodal stamping, quantization into normal
// modes, impedance residues and the inductive sum rule.
//
// Node 0 is ground. A netlist with `node_count` nodes produces matrices of
// dimension node_count - 1; matrix row r corresponds to node r + 1.

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace mmconv::circuit {

struct Capacitor {
  int a = 0;
  int b = 0;
  double farads = 0.0;
};

struct Inductor {
  int a = 0;
  int b = 0;
  double henries = 0.0;
};

/// The kinetic inductor. Unless `embedded` is set, its linear inductance is
/// stamped into the network like any other inductor. An embedded element
/// designates a port whose linear inductance is already represented by the
/// surrounding elements (a port-equivalent model such as a Foster chain).
struct NonlinearInductor {
  int a = 0;
  int b = 0;
  double henries = 0.0;
  double istar = 0.0;  // cross-over current, amperes
  bool embedded = false;
};

struct NodePair {
  int i = 0;
  int j = 0;
};

struct Netlist {
  int node_count = 1;  // including ground
  std::vector<Capacitor> capacitors;
  std::vector<Inductor> inductors;
  std::optional<NonlinearInductor> nonlinear;

  /// Throws Error(InvalidNode / InvalidArgument) when an invariant is broken.
  void validate() const;
};

struct LinearCircuit {
  int node_count = 1;
  Eigen::MatrixXd capacitance;         // farads, symmetric positive-definite
  Eigen::MatrixXd inverse_inductance;  // 1/henries, symmetric positive-semidefinite
  std::vector<Inductor> inductor_graph;

  int dimension() const { return node_count - 1; }
};

/// Nodal stamping of the capacitance and inverse-inductance matrices.
/// Throws SingularCapacitance when some node has no capacitive path to ground.
LinearCircuit build_circuit(const Netlist& netlist);

/// Zero-frequency threshold: a mode is treated as a free particle when
/// omega < max(kFreeModeFloor, kFreeModeRelative * omega_max).
inline constexpr double kFreeModeFloor = 1.0;  // rad/s
inline constexpr double kFreeModeRelative = 1e-6;

struct NormalModeSet {
  Eigen::VectorXd frequencies;  // rad/s, ascending; exactly 0 for free modes
  Eigen::MatrixXd orthogonal;   // U, eigenvectors of C^-1/2 Linv C^-1/2
  Eigen::MatrixXd modal_matrix; // C^-1/2 U
  Eigen::MatrixXd zpf;          // webers; column k is zero for free modes
  std::vector<bool> free_mode;

  int mode_count() const { return static_cast<int>(frequencies.size()); }
  /// Zero-point flux amplitude of `node` (netlist numbering) in mode k.
  double flux(int node, int k) const;
  /// phi_i^(k) - phi_j^(k).
  double flux_difference(int i, int j, int k) const;
  /// Throws ZeroFrequencyMode if k is a free mode, InvalidNode if out of range.
  void require_finite_mode(int k) const;
};

NormalModeSet normal_modes(const LinearCircuit& circuit);

inline constexpr double kDefaultPoleGuard = 1e-6;

/// Z(omega) over the non-ground nodes, evaluated in spectral form.
/// Throws NearPole if |omega - omega_k| / omega_k < pole_guard for some mode.
Eigen::MatrixXcd impedance(const LinearCircuit& circuit, double omega,
                           double pole_guard = kDefaultPoleGuard);
Eigen::MatrixXcd impedance(const NormalModeSet& modes, double omega,
                           double pole_guard = kDefaultPoleGuard);

/// Two-terminal impedance between nodes i and j (either may be ground).
std::complex<double> impedance_between(const Eigen::MatrixXcd& z, int i, int j);

/// Residue of Z_ij at omega_k: -(i omega_k / hbar) phi_i phi_j.
std::complex<double> impedance_residue(const NormalModeSet& modes, int k, int i, int j);

/// Residue of the two-terminal impedance across (i, j):
/// -(i omega_k / hbar) (phi_i - phi_j)^2.
std::complex<double> effective_impedance_residue(const NormalModeSet& modes, int k, int i,
                                                 int j);

/// Inductance seen between i and j with every capacitor removed.
/// Returns +infinity when no inductive path joins the two nodes.
double effective_inductance(const LinearCircuit& circuit, int i, int j);

/// |sum_k (dphi_ij^(k))^2 / hbar omega_k - L_eff / 2| / (L_eff / 2).
/// Throws ZeroFrequencyMode if a free mode carries flux across the pair.
double sum_rule_residual(const LinearCircuit& circuit, int i, int j);
double sum_rule_residual(const LinearCircuit& circuit, const NormalModeSet& modes, int i, int j);

}  // namespace mmconv::circuit
