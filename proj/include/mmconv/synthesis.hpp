#pragma once

// Construction of lossless networks whose flux fluctuations across a
// designated inductor saturate the inductive sum-rule bound, and the
// four-wave-mixing coupling constants of a kinetic inductor embedded in a
// quantized circuit.

#include <complex>
#include <string>
#include <vector>

#include "mmconv/circuit.hpp"

namespace mmconv::synthesis {

struct ModeWeight {
  double omega = 0.0;  // rad/s
  int weight = 1;      // exponent m_k in the amplitude product
};

struct ResidueTarget {
  std::vector<ModeWeight> modes;
  double inductance = 0.0;  // henries

  int total_weight() const;
  /// Throws InvalidFrequencies / InvalidArgument.
  void validate() const;
};

/// Upper bound on prod_k |dphi_k|^m_k over all circuits in which the
/// designated inductor has inductance L:
/// (L / 2M)^(M/2) prod_k (hbar omega_k m_k)^(m_k / 2). In Wb^M.
double bound_product(const ResidueTarget& target);

/// Residues of the two-terminal impedance that saturate the bound:
/// -i omega_k^2 m_k L / 2M.
std::vector<std::complex<double>> target_residues(const ResidueTarget& target);

enum class Topology { Foster, Cauer };

Topology parse_topology(const std::string& name);
std::string to_string(Topology topology);

struct Realization {
  circuit::Netlist netlist;
  circuit::NodePair port;  // node pair spanned by the kinetic inductor
  Topology topology = Topology::Foster;
  std::vector<std::string> warnings;
};

/// Series chain of parallel LC tanks, one per target mode, with
/// L_k = m_k L / M and C_k = M / (omega_k^2 m_k L). The chain is a port
/// equivalent of the saturating circuit, so the kinetic inductor is recorded
/// as an embedded element across the chain ends.
Realization synthesize_foster(const ResidueTarget& target, double istar);

/// Ladder obtained by removing the pole at s = 0 of the port admittance (the
/// kinetic inductor itself, placed across the port) and expanding the
/// remainder about s = infinity into alternating shunt capacitors and series
/// inductors. Falls back to the Foster chain, with a warning, if any element
/// value drops below kMinElement or loses positivity.
Realization synthesize_cauer(const ResidueTarget& target, double istar);

inline constexpr double kMinElement = 1e-21;  // henries or farads

Realization synthesize(const ResidueTarget& target, double istar, Topology topology);

/// Mode indices (into a NormalModeSet) playing the microwave (a), mm-wave (b)
/// and pump (c) roles.
struct ModeRoles {
  int a = 0;
  int b = 0;
  int c = 0;
};

/// Four-wave-mixing Hamiltonian coefficients in rad/s. Amplitudes are the
/// magnitudes |dphi| across the kinetic inductor, which fixes the mode phase
/// convention so that every coefficient carries the negative sign of the
/// quartic term.
struct CouplingSet {
  double g0 = 0.0;
  double chi_a = 0.0;
  double chi_b = 0.0;
  double chi_c = 0.0;
  double chi_ab = 0.0;
  double chi_ac = 0.0;
  double chi_bc = 0.0;
  double phi_a = 0.0;  // webers
  double phi_b = 0.0;
  double phi_c = 0.0;
};

CouplingSet coupling_constants(const circuit::NormalModeSet& modes,
                               const circuit::NonlinearInductor& element, const ModeRoles& roles);

/// Index of the finite mode nearest to omega.
int nearest_mode(const circuit::NormalModeSet& modes, double omega);

/// Closed-form maximum exchange coupling for a bound-saturating circuit:
/// -3 hbar (omega_mm - omega_mw) sqrt(omega_mw omega_mm) / (64 L I*^2).
double optimal_g0(double omega_mw, double omega_mm, double inductance, double istar);

/// Kerr coefficients implied by g0 in a bound-saturating circuit.
CouplingSet saturated_couplings(double omega_mw, double omega_mm, double g0);

struct ConverterDesign {
  double omega_mw = 0.0;
  double omega_mm = 0.0;
  double omega_pump = 0.0;  // (omega_mm - omega_mw) / 2
  double inductance = 0.0;
  double istar = 0.0;
  CouplingSet couplings;
  Realization realization;
  circuit::LinearCircuit circuit;
  circuit::NormalModeSet modes;
  ModeRoles roles;

  ResidueTarget target() const;
};

ConverterDesign optimal_converter(double omega_mw, double omega_mm, double inductance,
                                  double istar, Topology topology);

}  // namespace mmconv::synthesis
