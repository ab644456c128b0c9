// Acceptance suite: one pass/fail line per criterion. With an argument N only
// criterion N runs. Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "mmconv/budget.hpp"
#include "mmconv/circuit.hpp"
#include "mmconv/config.hpp"
#include "mmconv/constants.hpp"
#include "mmconv/converter.hpp"
#include "mmconv/link.hpp"
#include "mmconv/noise.hpp"
#include "mmconv/sweep.hpp"
#include "mmconv/synthesis.hpp"
#include "oracles.hpp"

using namespace mmconv;

namespace {

const double kWa = angular(7e9);
const double kWb = angular(300e9);

struct Result {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED(" << what << ")";
    }
  }
  // |value / reference - 1| <= tol.
  void near(double value, double reference, double tol, const std::string& what) {
    const double err = std::abs(value / reference - 1.0);
    detail << " " << what << "=" << value;
    require(err <= tol, what + " off by " + std::to_string(err * 100) + "%");
  }
};

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;
  std::function<void(Result&)> body;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

budget::OperatingInputs table_inputs() {
  auto in = budget::saturated_inputs(kWa, kWb, 1e-9, 5e-5);
  in.kappa_mw = angular(10e6);
  in.kappa_mm = angular(2e9);
  return in;
}

// 200 random networks with 3 to 8 nodes counting ground.
std::vector<circuit::Netlist> random_networks() {
  std::mt19937_64 rng(20240601);
  std::vector<circuit::Netlist> nets;
  for (int t = 0; t < 200; ++t) nets.push_back(oracle::random_circuit(rng, 2 + t % 6));
  return nets;
}

void couplings(Result& r) {
  const auto d = synthesis::optimal_converter(kWa, kWb, 1e-9, 0.05e-3, synthesis::Topology::Cauer);
  const auto& c = d.couplings;
  r.near(hertz(c.g0), -170e3, 0.05, "g0/2pi");
  r.near(hertz(c.chi_c), -1.1e6, 0.05, "chi_c/2pi");
  r.near(hertz(c.chi_ac), -51e3, 0.05, "chi_ac/2pi");
  r.near(hertz(c.chi_bc), -2.2e6, 0.05, "chi_bc/2pi");
}

void table1(Result& r) {
  const auto p = budget::evaluate_operating_point(table_inputs());
  r.near(hertz(p.bandwidth), 20e6, 0.1, "Delta/2pi");
  r.near(hertz(p.kappa_p), 4.5e9, 0.1, "kappa_p/2pi");
  r.near(p.n_p, 420, 0.1, "n_p");
  r.near(hertz(p.g), 70e6, 0.1, "g0n_p/2pi");
  r.near(hertz(p.kerr_shift), -450e6, 0.1, "n_pchi_c/2pi");
  r.near(p.heating.total, 100e-12, 0.1, "P");
  r.near(p.heating.in_mode, 37e-12, 0.15, "P_mode");
  r.near(p.heating.in_line, 63e-12, 0.15, "P_line");
  r.near(p.energy.joules, 0.8e-18, 0.1, "E");
  r.near(p.dephasing, 0.0020, 0.1, "dephasing");
  r.near(p.heating_loss, 0.0051, 0.1, "heating");
  const auto& t = p.efficiency;
  r.detail << " T_max=" << t.max_rule << " T_sum=" << t.sum_rule;
  r.require(rel(t.max_rule, 0.85) <= 0.01 || rel(t.max_rule, 0.843) <= 0.01, "T_max");
  r.require(rel(t.sum_rule, 0.85) <= 0.01 || rel(t.sum_rule, 0.843) <= 0.01, "T_sum");
}

void table2(Result& r) {
  config::Parameters params;
  std::vector<config::Diagnostic> diags;
  config::load_parameters(config::default_config_path(), params, diags);
  r.require(diags.empty(), "configuration");
  const auto rows = config::load_link_table(std::filesystem::path(MMCONV_DATA_DIR) / params.link_table);
  std::map<std::string, link::LinkModel> cell;
  for (const auto& row : rows) cell[row.name] = row.model;
  r.require(cell.size() == 12, "12 cells");
  if (cell.size() != 12) return;

  const std::pair<const char*, double> nbar[] = {{"mw_4K", 11},   {"mw_70K", 210},
                                                 {"mw_300K", 890}, {"mm_4K", 0.03},
                                                 {"mm_70K", 4.4},  {"mm_300K", 20}};
  for (const auto& [name, ref] : nbar) {
    const auto& m = cell.at(name);
    r.near(link::thermal_occupation(m.omega, m.temperature), ref, 0.05,
           std::string("nbar[") + name + "]");
  }
  const double inf = std::numeric_limits<double>::infinity();
  struct Length {
    const char* name;
    double l001, l01;
  };
  const Length lengths[] = {{"mw_20mK", inf, inf},  {"mw_4K", 0.04, 0.4},
                            {"mm_20mK", inf, inf},  {"mm_4K", 22, inf},
                            {"mm_70K", 0.07, 0.7},  {"mm_300K", 0.0006, 0.006},
                            {"opt_20mK", inf, inf}, {"opt_4K", inf, inf},
                            {"opt_70K", inf, inf},  {"opt_300K", inf, inf}};
  for (const auto& l : lengths) {
    const auto& m = cell.at(l.name);
    for (auto [n_max, ref] : {std::pair{0.01, l.l001}, std::pair{0.1, l.l01}}) {
      const double got = link::threshold_length(m, n_max);
      const std::string what = std::string("l") + (n_max < 0.05 ? "001" : "01") + "[" + l.name + "]";
      if (std::isinf(ref)) {
        r.require(std::isinf(got), what + " not infinite");
      } else {
        r.near(got, ref, 0.1, what);
      }
    }
  }
}

void sum_rule(Result& r) {
  double worst = 0.0;
  int edges = 0;
  for (const auto& net : random_networks()) {
    const auto lc = circuit::build_circuit(net);
    const auto modes = circuit::normal_modes(lc);
    for (const auto& e : net.inductors) {
      worst = std::max(worst, circuit::sum_rule_residual(lc, modes, e.a, e.b));
      ++edges;
    }
  }
  r.detail << " edges=" << edges << " worst_residual=" << worst;
  r.require(worst < 1e-8, "residual");
}

void bound(Result& r) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> weight(1, 3);
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& net : random_networks()) {
    const auto lc = circuit::build_circuit(net);
    const auto modes = circuit::normal_modes(lc);
    for (const auto& e : net.inductors) {
      std::vector<int> ks(static_cast<std::size_t>(modes.mode_count()));
      std::iota(ks.begin(), ks.end(), 0);
      std::shuffle(ks.begin(), ks.end(), rng);
      ks.resize(std::min<std::size_t>(ks.size(), 3));
      synthesis::ResidueTarget target;
      target.inductance = e.henries;
      double log_product = 0.0;
      for (int k : ks) {
        const int m = weight(rng);
        target.modes.push_back({modes.frequencies[k], m});
        log_product += m * std::log(std::abs(modes.flux_difference(e.a, e.b, k)));
      }
      worst = std::max(worst, log_product - std::log(synthesis::bound_product(target)));
    }
  }
  r.detail << " max_log_ratio=" << worst;
  r.require(worst <= 1e-9, "bound violated");

  const auto f = synthesis::optimal_converter(kWa, kWb, 1e-9, 5e-5, synthesis::Topology::Foster);
  const auto c = synthesis::optimal_converter(kWa, kWb, 1e-9, 5e-5, synthesis::Topology::Cauer);
  for (const auto* d : {&f, &c}) {
    const auto& k = d->couplings;
    const double ratio = k.phi_a * k.phi_b * k.phi_c * k.phi_c / synthesis::bound_product(d->target());
    r.detail << " saturation[" << synthesis::to_string(d->realization.topology) << "]=" << ratio;
    r.require(std::abs(ratio - 1.0) < 1e-6, "saturation");
  }
  const auto& a = f.couplings;
  const auto& b = c.couplings;
  const double diffs[] = {rel(a.g0, b.g0),         rel(a.chi_a, b.chi_a),   rel(a.chi_b, b.chi_b),
                          rel(a.chi_c, b.chi_c),   rel(a.chi_ab, b.chi_ab), rel(a.chi_ac, b.chi_ac),
                          rel(a.chi_bc, b.chi_bc)};
  const double worst_diff = *std::max_element(std::begin(diffs), std::end(diffs));
  r.detail << " foster_vs_cauer=" << worst_diff;
  r.require(worst_diff < 1e-6, "Foster/Cauer couplings");
}

void scattering(Result& r) {
  using namespace converter;
  const auto unit = TwoModeConverter::matched(angular(10e6), angular(2e9));
  const double s21 = std::abs(transfer_matrix(unit, 0.0)(1, 0));
  r.detail << " |S21(0)|-1=" << s21 - 1.0;
  r.require(std::abs(s21 - 1.0) < 1e-10, "|S21(0)|");

  double worst_bw = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 5; ++j) {
      const double ka = angular(1e5) * std::pow(10.0, i * 1.3);
      const double kb = angular(1e6) * std::pow(10.0, j * 1.1);
      const auto c = TwoModeConverter::matched(ka, kb);
      auto t = [&](double w) { return std::norm(transfer_matrix(c, w)(1, 0)); };
      double lo = 0.0, hi = 10.0 * std::max(ka, kb);
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (t(mid) > 0.5 ? lo : hi) = mid;
      }
      worst_bw = std::max(worst_bw, rel(lo + hi, conversion_bandwidth(ka, kb)));
    }
  r.detail << " bandwidth_rel_err=" << worst_bw;
  r.require(worst_bw < 1e-6, "bandwidth");

  double worst_l2 = 0.0;
  Eigen::FFT<double> fft;
  for (double coop : {1.0, 0.5, 2.0})
    for (auto shape : {WavePacket::Shape::Gaussian, WavePacket::Shape::Square}) {
      const auto c = TwoModeConverter::matched(angular(10e6), angular(200e6), coop);
      const double dt = max_time_step(c);
      const std::size_t n = 32768;
      const double span = dt * static_cast<double>(n);
      const double width = shape == WavePacket::Shape::Gaussian ? 0.02 * span : 0.1 * span;
      auto in = WavePacket::make_pulse(shape, WavePacket::Port::A, 0.3 * span, width, 0.0, dt, n);
      if (shape == WavePacket::Shape::Square) {
        // Band-limit the edges: smooth with a Gaussian kernel in frequency.
        std::vector<cplx> spec;
        fft.fwd(spec, in.alpha);
        for (std::size_t k = 0; k < n; ++k) {
          const double ks = k <= n / 2 ? double(k) : double(k) - double(n);
          const double w = kTwoPi * ks / span;
          spec[k] *= std::exp(-0.5 * std::pow(w / (0.3 * c.kappa_a), 2));
        }
        fft.inv(in.alpha, spec);
        in.normalize();
      }
      const auto sim = simulate_single_photon(c, in);
      std::vector<cplx> a, b;
      fft.fwd(a, in.alpha);
      fft.fwd(b, in.beta);
      for (std::size_t k = 0; k < n; ++k) {
        const double ks = k <= n / 2 ? double(k) : double(k) - double(n);
        const auto s = transfer_matrix(c, -kTwoPi * ks / span);
        const cplx ak = a[k], bk = b[k];
        a[k] = s(0, 0) * ak + s(0, 1) * bk;
        b[k] = s(1, 0) * ak + s(1, 1) * bk;
      }
      std::vector<cplx> ao, bo;
      fft.inv(ao, a);
      fft.inv(bo, b);
      double num = 0.0, den = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        num += std::norm(sim.output.alpha[k] - ao[k]) + std::norm(sim.output.beta[k] - bo[k]);
        den += std::norm(ao[k]) + std::norm(bo[k]);
      }
      worst_l2 = std::max(worst_l2, std::sqrt(num / den));
    }
  r.detail << " time_domain_L2=" << worst_l2;
  r.require(worst_l2 < 1e-3, "time domain");
}

double kerr_deficit(double n_p, double ratio, int& max_dim) {
  const double kappa = 1.0;
  const double chi = std::sqrt(ratio) * kappa / n_p;
  const auto s = noise::kerr_steady_state_oracle(noise::drive_for_photons(n_p, 0.0, kappa), chi,
                                                 0.0, kappa, 0, 80);
  max_dim = std::max(max_dim, s.truncation);
  return 1.0 - s.max_overlap;
}

void kerr_oracle(Result& r) {
  int max_dim = 0;
  double worst = 0.0;
  for (double n_p : {2.0, 4.0, 8.0})
    for (double ratio : {1e-4, 1e-3}) {
      const double d = kerr_deficit(n_p, ratio, max_dim);
      worst = std::max(worst, rel(d, 1.5 * ratio));
    }
  r.detail << " worst_rel_dev=" << worst;
  r.require(worst <= 0.2, "deficit vs formula");

  for (double n_p : {2.0, 4.0, 8.0}) {
    std::vector<double> x, y;
    for (int k = 0; k < 5; ++k) {
      const double ratio = 1e-4 * std::pow(10.0, k / 4.0);
      x.push_back(0.5 * std::log(ratio));
      y.push_back(std::log(kerr_deficit(n_p, ratio, max_dim)));
    }
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / 5;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / 5;
    double sxy = 0, sxx = 0;
    for (int k = 0; k < 5; ++k) {
      sxy += (x[k] - mx) * (y[k] - my);
      sxx += (x[k] - mx) * (x[k] - mx);
    }
    const double slope = sxy / sxx;
    r.detail << " slope[n_p=" << n_p << "]=" << slope;
    r.require(std::abs(slope - 2.0) <= 0.05, "slope");
  }
  r.detail << " max_truncation=" << max_dim;
  r.require(max_dim <= 80, "truncation");
}

void regime_structure(Result& r) {
  const auto base = table_inputs();
  const auto grid = budget::SweepGrid::standard();
  const auto t0 = std::chrono::steady_clock::now();
  const auto records = budget::sweep_operating_space(base, grid, 1);
  const double sweep_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.detail << " sweep_s=" << sweep_s << " records=" << records.size();
  r.require(records.size() == 3600, "grid size");

  const auto boundary = budget::regime_boundary(base, grid);
  const auto probe = budget::evaluate_operating_point(base);
  const double omega_p = probe.omega_p;
  const double kappa_int = probe.kappa_int;
  double worst_locus = 0.0, worst_jump = 0.0;
  for (const auto& b : boundary) {
    worst_locus = std::max(
        worst_locus, rel(base.F * probe.r * b.kappa_mw * b.kappa_mm, 4 * kappa_int * kappa_int));
    const budget::EnergyInputs e{omega_p,    base.couplings.g0, b.kappa_mw, b.kappa_mm,
                                 kappa_int, base.eta,          base.F,     probe.r};
    auto below = e, above = e;
    below.kappa_mm *= 1 - 1e-9;
    above.kappa_mm *= 1 + 1e-9;
    worst_jump = std::max(worst_jump, rel(budget::energy_per_qubit(above).joules,
                                          budget::energy_per_qubit(below).joules));
  }
  r.detail << " boundary_points=" << boundary.size() << " locus_rel_err=" << worst_locus
           << " energy_jump=" << worst_jump;
  r.require(!boundary.empty(), "boundary found");
  r.require(worst_locus < 0.01, "locus");
  r.require(worst_jump < 1e-6, "continuity");

  // Branch 1 along kappa_mw kappa_mm = const, well inside the intrinsic regime.
  const double product = angular(1e6) * angular(1e6);
  double best = std::numeric_limits<double>::infinity(), best_ratio = 0.0;
  bool all_branch1 = true;
  for (int k = -40; k <= 40; ++k) {
    const double ratio = std::pow(10.0, k / 20.0);
    const budget::EnergyInputs e{omega_p,   base.couplings.g0, std::sqrt(product * ratio),
                                 std::sqrt(product / ratio), kappa_int, base.eta, base.F, probe.r};
    const auto q = budget::energy_per_qubit(e);
    all_branch1 = all_branch1 && q.regime == budget::Regime::IntrinsicLimited;
    if (q.joules < best) {
      best = q.joules;
      best_ratio = ratio;
    }
  }
  r.detail << " argmin_kmw/kmm=" << best_ratio;
  r.require(all_branch1, "branch 1 throughout");
  r.require(std::abs(best_ratio - 1.0) < 1e-12, "minimum at equal linewidths");
  r.require(sweep_s < 60.0, "sweep runtime");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "coupling constants of the optimal 7/300 GHz converter", 1.0, couplings},
      {2, "operating-point table", 1.0, table1},
      {3, "link noise table", 1.0, table2},
      {4, "sum rule on 200 random circuits", 30.0, sum_rule},
      {5, "flux bound, saturation and Foster/Cauer agreement", 10.0, bound},
      {6, "conversion scattering and time-domain agreement", 60.0, scattering},
      {7, "Kerr steady-state oracle", 300.0, kerr_oracle},
      {8, "regime boundary and energy landscape", 60.0, regime_structure},
  };
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  bool all_pass = true;
  bool ran = false;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ran = true;
    Result r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(r);
    } catch (const std::exception& e) {
      r.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.detail << " runtime=" << secs << "s";
    r.require(secs < c.time_limit_s, "runtime limit " + std::to_string(c.time_limit_s) + "s");
    std::printf("[%s] %d %s:%s\n", r.pass ? "PASS" : "FAIL", c.id, c.title, r.detail.str().c_str());
    all_pass = all_pass && r.pass;
  }
  if (!ran) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return all_pass ? 0 : 1;
}
