#pragma once

// JSON forms of netlists, quantized mode sets and converter designs.
//
// Netlist schema:
//   {"nodes": N,
//    "capacitors": [[i, j, "1pF"], ...],
//    "inductors":  [[i, j, "1nH"], ...],
//    "nonlinear":  {"i": .., "j": .., "L": "1nH", "Istar": "0.05mA", "embedded": false}}
// Quantities are strings with an optional SI prefix, or plain SI numbers.

#include <vector>

#include <json.hpp>

#include "mmconv/circuit.hpp"
#include "mmconv/config.hpp"
#include "mmconv/synthesis.hpp"

namespace mmconv::io {

/// Parses and validates a netlist. Every problem is appended to
/// `diagnostics`, naming the offending element; the returned netlist is only
/// meaningful when no diagnostic was added.
circuit::Netlist parse_netlist(const nlohmann::json& doc,
                               std::vector<config::Diagnostic>& diagnostics);

nlohmann::json netlist_to_json(const circuit::Netlist& netlist);

/// Frequencies in Hz and the zero-point flux table (webers, one row per
/// non-ground node).
nlohmann::json modes_to_json(const circuit::NormalModeSet& modes);

nlohmann::json couplings_to_json(const synthesis::CouplingSet& couplings);

nlohmann::json design_to_json(const synthesis::ConverterDesign& design);

}  // namespace mmconv::io
