#include "mmconv/synthesis.hpp"

#include <algorithm>
#include <cmath>

#include "mmconv/constants.hpp"
#include "mmconv/error.hpp"

namespace mmconv::synthesis {
namespace {

// Dense real polynomial, coefficient i multiplies s^i.
using Poly = std::vector<double>;

Poly multiply(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0.0) p.pop_back();
}

double max_abs(const Poly& p) {
  double m = 0.0;
  for (double c : p) m = std::max(m, std::abs(c));
  return m;
}

// Continued-fraction expansion about s = infinity of num/den, where
// deg(num) = deg(den) + 1 and both have alternating parity. Returns the
// quotient coefficients in order of removal.
std::vector<double> cauer_expand(Poly num, Poly den, int terms) {
  std::vector<double> out;
  const double scale = std::max(max_abs(num), max_abs(den));
  for (int t = 0; t < terms; ++t) {
    trim(num);
    trim(den);
    if (den.empty() || num.size() != den.size() + 1) {
      throw Error(ErrorCode::NumericalBreakdown, "continued fraction lost its degree structure");
    }
    const double q = num.back() / den.back();
    out.push_back(q);
    // num - q s den; the leading term cancels exactly and parity keeps the
    // next-lower coefficient at zero.
    for (std::size_t i = 0; i < den.size(); ++i) num[i + 1] -= q * den[i];
    num.back() = 0.0;
    num[num.size() - 2] = 0.0;
    trim(num);
    // Drop round-off residue of exact cancellations.
    for (double& c : num)
      if (std::abs(c) < 1e-13 * scale) c = 0.0;
    trim(num);
    std::swap(num, den);
  }
  if (!den.empty()) {
    throw Error(ErrorCode::NumericalBreakdown, "continued fraction did not terminate");
  }
  return out;
}

circuit::NonlinearInductor kinetic(int a, int b, double inductance, double istar, bool embedded) {
  return {a, b, inductance, istar, embedded};
}

}  // namespace

int ResidueTarget::total_weight() const {
  int m = 0;
  for (const auto& mode : modes) m += mode.weight;
  return m;
}

void ResidueTarget::validate() const {
  if (modes.empty()) throw Error(ErrorCode::InvalidArgument, "residue target has no modes");
  if (!(inductance > 0.0) || !std::isfinite(inductance)) {
    throw Error(ErrorCode::InvalidArgument, "target inductance must be positive");
  }
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (!(modes[k].omega > 0.0) || !std::isfinite(modes[k].omega)) {
      throw Error(ErrorCode::InvalidFrequencies, "target frequencies must be positive");
    }
    if (modes[k].weight < 1) throw Error(ErrorCode::InvalidArgument, "mode weights must be >= 1");
    for (std::size_t j = 0; j < k; ++j) {
      if (std::abs(modes[k].omega - modes[j].omega) <= 1e-9 * modes[k].omega) {
        throw Error(ErrorCode::InvalidFrequencies, "target frequencies must be distinct");
      }
    }
  }
}

double bound_product(const ResidueTarget& target) {
  target.validate();
  const double m_total = target.total_weight();
  double log_bound = 0.5 * m_total * std::log(target.inductance / (2.0 * m_total));
  for (const auto& mode : target.modes) {
    log_bound += 0.5 * mode.weight * std::log(kHbar * mode.omega * mode.weight);
  }
  return std::exp(log_bound);
}

std::vector<std::complex<double>> target_residues(const ResidueTarget& target) {
  target.validate();
  const double m_total = target.total_weight();
  std::vector<std::complex<double>> out;
  for (const auto& mode : target.modes) {
    out.emplace_back(0.0, -mode.omega * mode.omega * mode.weight * target.inductance /
                              (2.0 * m_total));
  }
  return out;
}

Topology parse_topology(const std::string& name) {
  if (name == "foster") return Topology::Foster;
  if (name == "cauer") return Topology::Cauer;
  throw Error(ErrorCode::InvalidArgument, "unknown topology '" + name + "' (expected foster|cauer)");
}

std::string to_string(Topology topology) {
  return topology == Topology::Foster ? "foster" : "cauer";
}

Realization synthesize_foster(const ResidueTarget& target, double istar) {
  target.validate();
  const double m_total = target.total_weight();
  const int tanks = static_cast<int>(target.modes.size());

  Realization r;
  r.topology = Topology::Foster;
  r.netlist.node_count = tanks + 1;
  for (int k = 0; k < tanks; ++k) {
    const auto& mode = target.modes[static_cast<std::size_t>(k)];
    const double lk = mode.weight * target.inductance / m_total;
    const double ck = 1.0 / (mode.omega * mode.omega * lk);
    r.netlist.inductors.push_back({k, k + 1, lk});
    r.netlist.capacitors.push_back({k, k + 1, ck});
  }
  r.port = {tanks, 0};
  r.netlist.nonlinear = kinetic(tanks, 0, target.inductance, istar, /*embedded=*/true);
  return r;
}

Realization synthesize_cauer(const ResidueTarget& target, double istar) {
  target.validate();
  const int n = static_cast<int>(target.modes.size());
  const double m_total = target.total_weight();

  // Normalize: frequencies to their geometric mean, inductances to L.
  double log_mean = 0.0;
  for (const auto& mode : target.modes) log_mean += std::log(mode.omega);
  const double omega0 = std::exp(log_mean / n);

  // Port impedance Z(s) = sum_k l_k s / (1 + s^2 / w_k^2) = s R(s) / Q(s).
  Poly q{1.0};
  Poly r_poly{0.0};
  for (int k = 0; k < n; ++k) {
    const auto& mode = target.modes[static_cast<std::size_t>(k)];
    const double w = mode.omega / omega0;
    const Poly factor{1.0, 0.0, 1.0 / (w * w)};
    Poly term{mode.weight / m_total};
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      const double wj = target.modes[static_cast<std::size_t>(j)].omega / omega0;
      term = multiply(term, Poly{1.0, 0.0, 1.0 / (wj * wj)});
    }
    if (r_poly.size() < term.size()) r_poly.resize(term.size(), 0.0);
    for (std::size_t i = 0; i < term.size(); ++i) r_poly[i] += term[i];
    q = multiply(q, factor);
  }

  // Y(s) = Q / (s R) = 1/(s l) + Y_rest with l = 1 (normalized), and
  // Y_rest = s T / R where Q - R = s^2 T.
  Poly t(q.size() - 2, 0.0);
  for (std::size_t i = 2; i < q.size(); ++i) {
    t[i - 2] = q[i] - (i < r_poly.size() ? r_poly[i] : 0.0);
  }
  Poly num(t.size() + 1, 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) num[i + 1] = t[i];

  std::vector<double> coefficients;
  try {
    coefficients = cauer_expand(num, r_poly, 2 * n - 1);
  } catch (const Error& e) {
    Realization fallback = synthesize_foster(target, istar);
    fallback.warnings.push_back(std::string("Cauer expansion failed (") + e.what() +
                                "); returned Foster realization");
    return fallback;
  }

  Realization r;
  r.topology = Topology::Cauer;
  r.netlist.node_count = n + 1;
  int node = 1;
  for (std::size_t e = 0; e < coefficients.size(); ++e) {
    const bool shunt_capacitor = (e % 2 == 0);
    const double value = shunt_capacitor ? coefficients[e] / (omega0 * omega0 * target.inductance)
                                         : coefficients[e] * target.inductance;
    if (!(value >= kMinElement) || !std::isfinite(value)) {
      Realization fallback = synthesize_foster(target, istar);
      fallback.warnings.push_back("Cauer element " + std::to_string(e) +
                                  " underflowed; returned Foster realization");
      return fallback;
    }
    if (shunt_capacitor) {
      r.netlist.capacitors.push_back({node, 0, value});
    } else {
      r.netlist.inductors.push_back({node, node + 1, value});
      ++node;
    }
  }
  r.port = {1, 0};
  r.netlist.nonlinear = kinetic(1, 0, target.inductance, istar, /*embedded=*/false);
  return r;
}

Realization synthesize(const ResidueTarget& target, double istar, Topology topology) {
  return topology == Topology::Foster ? synthesize_foster(target, istar)
                                      : synthesize_cauer(target, istar);
}

int nearest_mode(const circuit::NormalModeSet& modes, double omega) {
  int best = -1;
  double best_gap = 0.0;
  for (int k = 0; k < modes.mode_count(); ++k) {
    if (modes.free_mode[static_cast<std::size_t>(k)]) continue;
    const double gap = std::abs(modes.frequencies(k) - omega);
    if (best < 0 || gap < best_gap) {
      best = k;
      best_gap = gap;
    }
  }
  if (best < 0) throw Error(ErrorCode::ZeroFrequencyMode, "circuit has no finite-frequency modes");
  return best;
}

CouplingSet coupling_constants(const circuit::NormalModeSet& modes,
                               const circuit::NonlinearInductor& element, const ModeRoles& roles) {
  for (int k : {roles.a, roles.b, roles.c}) modes.require_finite_mode(k);
  if (!(element.henries > 0.0) || !(element.istar > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "kinetic inductor needs positive L and I*");
  }
  CouplingSet s;
  s.phi_a = std::abs(modes.flux_difference(element.a, element.b, roles.a));
  s.phi_b = std::abs(modes.flux_difference(element.a, element.b, roles.b));
  s.phi_c = std::abs(modes.flux_difference(element.a, element.b, roles.c));

  // Quartic energy scale divided by hbar, so every coefficient is in rad/s.
  const double l = element.henries;
  const double scale = 1.0 / (kHbar * l * l * l * element.istar * element.istar);
  const double a2 = s.phi_a * s.phi_a;
  const double b2 = s.phi_b * s.phi_b;
  const double c2 = s.phi_c * s.phi_c;
  s.g0 = -3.0 * s.phi_a * s.phi_b * c2 * scale;
  s.chi_a = -3.0 * a2 * a2 * scale;
  s.chi_b = -3.0 * b2 * b2 * scale;
  s.chi_c = -3.0 * c2 * c2 * scale;
  s.chi_ab = -6.0 * a2 * b2 * scale;
  s.chi_ac = -6.0 * a2 * c2 * scale;
  s.chi_bc = -6.0 * b2 * c2 * scale;
  return s;
}

double optimal_g0(double omega_mw, double omega_mm, double inductance, double istar) {
  return -3.0 * kHbar * (omega_mm - omega_mw) * std::sqrt(omega_mw * omega_mm) /
         (64.0 * inductance * istar * istar);
}

CouplingSet saturated_couplings(double omega_mw, double omega_mm, double g0) {
  CouplingSet s;
  s.g0 = g0;
  s.chi_c = g0 * (omega_mm - omega_mw) / std::sqrt(omega_mm * omega_mw);
  s.chi_ac = 2.0 * g0 * std::sqrt(omega_mw / omega_mm);
  s.chi_bc = 2.0 * g0 * std::sqrt(omega_mm / omega_mw);
  // With phi_a^2 : phi_b^2 : phi_c^2 = omega_a : omega_b : 2 omega_c.
  const double omega_c = 0.5 * (omega_mm - omega_mw);
  s.chi_a = s.chi_c * (omega_mw / (2.0 * omega_c)) * (omega_mw / (2.0 * omega_c));
  s.chi_b = s.chi_c * (omega_mm / (2.0 * omega_c)) * (omega_mm / (2.0 * omega_c));
  s.chi_ab = -2.0 * std::sqrt(s.chi_a * s.chi_b);
  return s;
}

ResidueTarget ConverterDesign::target() const {
  return ResidueTarget{{{omega_mw, 1}, {omega_mm, 1}, {omega_pump, 2}}, inductance};
}

ConverterDesign optimal_converter(double omega_mw, double omega_mm, double inductance,
                                  double istar, Topology topology) {
  if (!(omega_mw > 0.0) || !(omega_mm > omega_mw)) {
    throw Error(ErrorCode::InvalidFrequencies, "need omega_mm > omega_mw > 0");
  }
  if (!(inductance > 0.0) || !(istar > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "L and I* must be positive");
  }
  ConverterDesign d;
  d.omega_mw = omega_mw;
  d.omega_mm = omega_mm;
  d.omega_pump = 0.5 * (omega_mm - omega_mw);
  d.inductance = inductance;
  d.istar = istar;

  const ResidueTarget target = d.target();
  target.validate();  // rejects omega_pump coinciding with a signal mode
  d.realization = synthesize(target, istar, topology);
  d.circuit = circuit::build_circuit(d.realization.netlist);
  d.modes = circuit::normal_modes(d.circuit);
  d.roles = {nearest_mode(d.modes, omega_mw), nearest_mode(d.modes, omega_mm),
             nearest_mode(d.modes, d.omega_pump)};
  d.couplings = coupling_constants(d.modes, *d.realization.netlist.nonlinear, d.roles);
  return d;
}

}  // namespace mmconv::synthesis
