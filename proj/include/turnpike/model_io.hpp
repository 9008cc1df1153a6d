#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "turnpike/model.hpp"

namespace turnpike {

/// Flat "key = value" text; '#' starts a comment, list values are comma separated.
using KeyValues = std::map<std::string, std::string>;

[[nodiscard]] KeyValues parse_key_values(std::istream& in);
[[nodiscard]] std::vector<double> parse_list(const std::string& text);

/// Recognized keys:
///   n, lambda (2n values), delta, I, I_in, I_out (two values each),
///   zeta = ddr-beta | constant-minus-one | poly, zeta.beta, zeta.coeffs,
///   g = constant | ddr, g.value, name.
/// Unknown keys and missing required keys are PreconditionErrors.
[[nodiscard]] SlowFastModel model_from_key_values(const KeyValues& kv);
[[nodiscard]] SlowFastModel load_model(const std::string& path);

}  // namespace turnpike
