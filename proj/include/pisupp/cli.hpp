#pragma once

// Command-line frontend. run_command takes the arguments after the program name.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 input error. Errors are printed
// on `err` as "error: <Category>: <message>".

#include <ostream>
#include <string>
#include <vector>

#include "pisupp/groupalg.hpp"

namespace pisupp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "a1,a2,...,ar" into coordinates over the smallest field containing the module's base,
/// the degree-`extension_degree` extension (whose generator is written w) and any other
/// identifiers as adjoined transcendentals. Each coordinate is an expression with integers,
/// identifiers, + - * / ^ and parentheses. Errors: SyntaxError, InvalidArgument.
std::vector<FieldElement> parse_point_literal(const std::string& text, const Field& base, unsigned extension_degree = 1);

/// A module file path, or an example name resolved over `spec`. Errors: InvalidArgument when
/// neither, plus module file errors.
ModuleRep load_module(const std::string& file_or_example, const AlgebraSpec& spec);

}  // namespace pisupp
