#pragma once

#include <string>
#include <string_view>

namespace mmconv::units {

/// Parses a quantity such as "1pF", "0.05mA", "7 GHz" or "2.5e-12" into SI.
///
/// `unit` is the base unit symbol expected after the optional SI prefix
/// ("F", "H", "A", "Hz", "K", "m", "dB/m"). A bare number is taken as already
/// being in SI. Throws Error(ParseError) on malformed input or a unit mismatch.
double parse_quantity(std::string_view text, std::string_view unit);

/// Formats `value` with 17 significant digits, the precision used for every
/// numeric artifact so that downstream processing is lossless.
std::string format_double(double value);

}  // namespace mmconv::units
