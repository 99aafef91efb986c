#pragma once

// JSON module files: {"format", "version", "algebra": {...}, "module": {...}}.
// Emission is canonical: sorted keys, two-space indent, LF line endings, trailing newline.

#include <string>

#include "json.hpp"
#include "pisupp/groupalg.hpp"

namespace pisupp {

inline constexpr int kModuleFormatVersion = 1;
inline constexpr const char* kModuleFormatName = "pisupp-module";

nlohmann::json field_to_json(const Field& field);
/// Errors: SyntaxError, plus the field construction errors.
Field field_from_json(const nlohmann::json& j);

nlohmann::json algebra_to_json(const AlgebraSpec& spec);
/// Errors: SyntaxError, ValidationError, field errors.
AlgebraSpec algebra_from_json(const nlohmann::json& j);

nlohmann::json module_to_json(const ModuleRep& m);
/// Errors: SyntaxError (with a JSON-pointer style path), ValidationError, field errors.
ModuleRep module_from_json(const nlohmann::json& j);

std::string emit_module_file(const ModuleRep& m);
/// Errors: SyntaxError with line and column for malformed JSON, otherwise as module_from_json.
ModuleRep parse_module_file(const std::string& text);

}  // namespace pisupp
