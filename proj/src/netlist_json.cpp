#include "mmconv/netlist_json.hpp"

#include <string>

#include "mmconv/constants.hpp"
#include "mmconv/error.hpp"
#include "mmconv/units.hpp"

namespace mmconv::io {
namespace {

using nlohmann::json;

struct Reader {
  std::vector<config::Diagnostic>& out;

  void report(const std::string& where, const std::string& message) {
    out.push_back({where, message});
  }

  bool quantity(const json& v, const char* unit, const std::string& where, double& value) {
    try {
      if (v.is_number()) {
        value = v.get<double>();
      } else if (v.is_string()) {
        value = units::parse_quantity(v.get<std::string>(), unit);
      } else {
        report(where, std::string("expected a quantity in ") + unit);
        return false;
      }
    } catch (const Error& e) {
      report(where, e.what());
      return false;
    }
    if (!(value > 0.0)) {
      report(where, "value must be positive, got " + units::format_double(value));
      return false;
    }
    return true;
  }

  bool node(const json& v, int node_count, const std::string& where, int& value) {
    if (!v.is_number_integer()) {
      report(where, "node index must be an integer");
      return false;
    }
    value = v.get<int>();
    if (value < 0 || value >= node_count) {
      report(where, "node " + std::to_string(value) + " out of range [0, " +
                        std::to_string(node_count) + ")");
      return false;
    }
    return true;
  }

  template <typename Element>
  void elements(const json& doc, const char* key, const char* unit, int node_count,
                std::vector<Element>& dest) {
    if (!doc.contains(key)) return;
    const json& list = doc.at(key);
    if (!list.is_array()) {
      report(key, "must be an array");
      return;
    }
    for (std::size_t n = 0; n < list.size(); ++n) {
      const std::string where = std::string(key) + "[" + std::to_string(n) + "]";
      const json& e = list[n];
      if (!e.is_array() || e.size() != 3) {
        report(where, "expected [node_i, node_j, value]");
        continue;
      }
      Element el;
      double value = 0.0;
      bool ok = node(e[0], node_count, where, el.a);
      ok = node(e[1], node_count, where, el.b) && ok;
      ok = quantity(e[2], unit, where, value) && ok;
      if (ok && el.a == el.b) {
        report(where, "self-loop on node " + std::to_string(el.a));
        ok = false;
      }
      if constexpr (std::is_same_v<Element, circuit::Capacitor>) {
        el.farads = value;
      } else {
        el.henries = value;
      }
      if (ok) dest.push_back(el);
    }
  }
};

std::string quantity_string(double value, const char* unit) {
  return units::format_double(value) + unit;
}

}  // namespace

circuit::Netlist parse_netlist(const json& doc, std::vector<config::Diagnostic>& diagnostics) {
  Reader r{diagnostics};
  circuit::Netlist net;
  if (!doc.is_object()) {
    r.report("netlist", "top level must be an object");
    return net;
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "nodes" && key != "capacitors" && key != "inductors" && key != "nonlinear") {
      r.report(key, "unknown key; valid keys: nodes, capacitors, inductors, nonlinear");
    }
  }
  if (!doc.contains("nodes") || !doc.at("nodes").is_number_integer() ||
      doc.at("nodes").get<int>() < 2) {
    r.report("nodes", "must be an integer >= 2 (ground counts as node 0)");
    return net;
  }
  net.node_count = doc.at("nodes").get<int>();
  r.elements(doc, "capacitors", "F", net.node_count, net.capacitors);
  r.elements(doc, "inductors", "H", net.node_count, net.inductors);

  if (doc.contains("nonlinear") && !doc.at("nonlinear").is_null()) {
    const json& nl = doc.at("nonlinear");
    if (!nl.is_object()) {
      r.report("nonlinear", "must be an object");
    } else {
      circuit::NonlinearInductor el;
      bool ok = true;
      for (const char* key : {"i", "j", "L", "Istar"}) {
        if (!nl.contains(key)) {
          r.report(std::string("nonlinear.") + key, "missing");
          ok = false;
        }
      }
      if (ok) {
        ok = r.node(nl.at("i"), net.node_count, "nonlinear.i", el.a) && ok;
        ok = r.node(nl.at("j"), net.node_count, "nonlinear.j", el.b) && ok;
        ok = r.quantity(nl.at("L"), "H", "nonlinear.L", el.henries) && ok;
        ok = r.quantity(nl.at("Istar"), "A", "nonlinear.Istar", el.istar) && ok;
        if (ok && el.a == el.b) {
          r.report("nonlinear", "self-loop on node " + std::to_string(el.a));
          ok = false;
        }
        if (nl.contains("embedded")) {
          if (nl.at("embedded").is_boolean()) {
            el.embedded = nl.at("embedded").get<bool>();
          } else {
            r.report("nonlinear.embedded", "must be a boolean");
            ok = false;
          }
        }
      }
      if (ok) net.nonlinear = el;
    }
  }
  return net;
}

json netlist_to_json(const circuit::Netlist& netlist) {
  json doc;
  doc["nodes"] = netlist.node_count;
  doc["capacitors"] = json::array();
  for (const auto& c : netlist.capacitors) {
    doc["capacitors"].push_back({c.a, c.b, quantity_string(c.farads, "F")});
  }
  doc["inductors"] = json::array();
  for (const auto& l : netlist.inductors) {
    doc["inductors"].push_back({l.a, l.b, quantity_string(l.henries, "H")});
  }
  if (netlist.nonlinear) {
    const auto& nl = *netlist.nonlinear;
    doc["nonlinear"] = {{"i", nl.a},
                        {"j", nl.b},
                        {"L", quantity_string(nl.henries, "H")},
                        {"Istar", quantity_string(nl.istar, "A")},
                        {"embedded", nl.embedded}};
  }
  return doc;
}

json modes_to_json(const circuit::NormalModeSet& modes) {
  json doc;
  doc["frequencies_Hz"] = json::array();
  doc["free_mode"] = json::array();
  for (int k = 0; k < modes.mode_count(); ++k) {
    doc["frequencies_Hz"].push_back(hertz(modes.frequencies[k]));
    doc["free_mode"].push_back(static_cast<bool>(modes.free_mode[static_cast<std::size_t>(k)]));
  }
  json table = json::array();
  for (int node = 1; node <= modes.zpf.rows(); ++node) {
    json row = json::array();
    for (int k = 0; k < modes.mode_count(); ++k) row.push_back(modes.flux(node, k));
    table.push_back({{"node", node}, {"zpf_Wb", row}});
  }
  doc["zpf"] = table;
  return doc;
}

json couplings_to_json(const synthesis::CouplingSet& c) {
  const std::pair<const char*, double> rates[] = {
      {"g0", c.g0},         {"chi_a", c.chi_a},   {"chi_b", c.chi_b},  {"chi_c", c.chi_c},
      {"chi_ab", c.chi_ab}, {"chi_ac", c.chi_ac}, {"chi_bc", c.chi_bc}};
  json rad = json::object();
  json hz = json::object();
  for (const auto& [name, value] : rates) {
    rad[name] = value;
    hz[name] = hertz(value);
  }
  return {{"rad_per_s", rad},
          {"Hz", hz},
          {"zpf_Wb", {{"a", c.phi_a}, {"b", c.phi_b}, {"c", c.phi_c}}}};
}

json design_to_json(const synthesis::ConverterDesign& d) {
  json doc;
  doc["inputs"] = {{"f_mw_Hz", hertz(d.omega_mw)},
                   {"f_mm_Hz", hertz(d.omega_mm)},
                   {"f_pump_Hz", hertz(d.omega_pump)},
                   {"L_H", d.inductance},
                   {"Istar_A", d.istar},
                   {"topology", synthesis::to_string(d.realization.topology)}};
  doc["netlist"] = netlist_to_json(d.realization.netlist);
  doc["port"] = {d.realization.port.i, d.realization.port.j};
  doc["warnings"] = d.realization.warnings;

  json modes = json::array();
  for (int k = 0; k < d.modes.mode_count(); ++k) modes.push_back(hertz(d.modes.frequencies[k]));
  doc["mode_frequencies_Hz"] = modes;
  doc["roles"] = {{"a", d.roles.a}, {"b", d.roles.b}, {"c", d.roles.c}};
  doc["couplings"] = couplings_to_json(d.couplings);
  const double closed = synthesis::optimal_g0(d.omega_mw, d.omega_mm, d.inductance, d.istar);
  doc["closed_form_g0"] = {{"rad_per_s", closed}, {"Hz", hertz(closed)}};

  const auto& nl = *d.realization.netlist.nonlinear;
  const double product = std::abs(d.couplings.phi_a * d.couplings.phi_b) *
                         d.couplings.phi_c * d.couplings.phi_c;
  doc["saturation_ratio"] = product / synthesis::bound_product(d.target());
  doc["effective_inductance_H"] = circuit::effective_inductance(d.circuit, nl.a, nl.b);
  return doc;
}

}  // namespace mmconv::io
