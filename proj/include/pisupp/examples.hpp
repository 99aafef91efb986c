#pragma once

// Named example modules.

#include <optional>
#include <string>
#include <vector>

#include "pisupp/groupalg.hpp"

namespace pisupp {

/// Klein four-group algebra F_2[x, y]/(x^2, y^2), group flavor.
AlgebraSpec klein_spec();

/// The truncation of dimension 2n with basis u_0..u_{n-1}, v_0..v_{n-1} (in that order) and
/// x u_i = v_i, y u_i = v_{i-1}, v_{-1} = 0; x and y kill every v_i.
ModuleRep klein_truncation(unsigned n);

/// Resolves "trivial", "free:g", "jordan:u" (over `spec`) and "klein-M<n>" or "klein-Mn:<n>"
/// (always over klein_spec()). std::nullopt when the name is not an example name.
/// Errors: InvalidArgument for malformed parameters, BlockTooBig.
std::optional<ModuleRep> make_example(const std::string& name, const AlgebraSpec& spec);

/// Names accepted by make_example, as patterns.
std::vector<std::string> example_patterns();

}  // namespace pisupp
