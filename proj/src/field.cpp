#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

#include "pisupp/exactfield.hpp"

namespace pisupp {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::CompositeCharacteristic: return "CompositeCharacteristic";
    case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::DuplicateVariable: return "DuplicateVariable";
    case ErrorKind::ExtensionTooLarge: return "ExtensionTooLarge";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotARefinement: return "NotARefinement";
    case ErrorKind::NonPolynomialEntry: return "NonPolynomialEntry";
    case ErrorKind::NotPNilpotent: return "NotPNilpotent";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BlockTooBig: return "BlockTooBig";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::InfiniteExtension: return "InfiniteExtension";
    case ErrorKind::AllCoefficientsZero: return "AllCoefficientsZero";
    case ErrorKind::FlatnessFailure: return "FlatnessFailure";
    case ErrorKind::NotFlat: return "NotFlat";
    case ErrorKind::ZeroLinearPart: return "ZeroLinearPart";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Field FieldDescriptor::make(std::uint32_t p, std::optional<std::vector<std::uint32_t>> extension,
                            std::vector<std::string> variables) {
  if (!is_prime(p)) {
    throw Error(ErrorKind::CompositeCharacteristic, "characteristic " + std::to_string(p) + " is not prime");
  }
  std::vector<std::uint32_t> modulus;
  if (extension) {
    modulus = *extension;
    for (auto& c : modulus) c %= p;
    while (!modulus.empty() && modulus.back() == 0) modulus.pop_back();
    if (modulus.size() < 2) throw Error(ErrorKind::InvalidArgument, "extension polynomial must have degree >= 1");
    if (modulus.back() != 1) throw Error(ErrorKind::InvalidArgument, "extension polynomial must be monic");
    if (modulus.size() - 1 > kMaxExtensionDegree) {
      throw Error(ErrorKind::ExtensionTooLarge,
                  "extension degree " + std::to_string(modulus.size() - 1) + " exceeds the cap of 8");
    }
    if (!is_irreducible(p, modulus)) {
      throw Error(ErrorKind::ReduciblePolynomial, "extension polynomial is reducible over F_" + std::to_string(p));
    }
    if (modulus.size() == 2) modulus.clear();  // degree one: the prime field itself
  }
  {
    std::set<std::string> seen;
    for (const auto& v : variables) {
      if (v.empty()) throw Error(ErrorKind::InvalidArgument, "empty variable name");
      if (!seen.insert(v).second) throw Error(ErrorKind::DuplicateVariable, "variable '" + v + "' appears twice");
    }
  }

  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::vector<std::uint32_t>, std::vector<std::string>>, Field> registry;
  auto finite = FiniteField::get(p, modulus);
  std::lock_guard lock(mu);
  auto key = std::make_tuple(p, modulus, variables);
  if (auto it = registry.find(key); it != registry.end()) return it->second;
  Field f(new FieldDescriptor(std::move(finite), std::move(variables)));
  registry.emplace(std::move(key), f);
  return f;
}

Field FieldDescriptor::finite_part() const {
  return make(characteristic(), modulus().empty() ? std::nullopt : std::optional(modulus()));
}

Field FieldDescriptor::adjoin(const std::vector<std::string>& names) const {
  auto vars = variables_;
  vars.insert(vars.end(), names.begin(), names.end());
  return make(characteristic(), modulus().empty() ? std::nullopt : std::optional(modulus()), std::move(vars));
}

Field FieldDescriptor::finite_extension(unsigned degree) const {
  if (degree == 0) throw Error(ErrorKind::InvalidArgument, "extension degree must be positive");
  if (degree == 1) return make(characteristic(), modulus().empty() ? std::nullopt : std::optional(modulus()), variables_);
  const unsigned total = extension_degree() * degree;
  if (total > kMaxExtensionDegree) {
    throw Error(ErrorKind::ExtensionTooLarge, "extension degree " + std::to_string(total) + " exceeds the cap of 8");
  }
  return make(characteristic(), default_modulus(characteristic(), total), variables_);
}

bool FieldDescriptor::refines(const FieldDescriptor& coarser) const {
  if (characteristic() != coarser.characteristic()) return false;
  if (extension_degree() % coarser.extension_degree() != 0) return false;
  return std::all_of(coarser.variables_.begin(), coarser.variables_.end(),
                     [&](const std::string& v) { return variable_index(v).has_value(); });
}

std::optional<std::size_t> FieldDescriptor::variable_index(const std::string& name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables_.begin());
}

std::string FieldDescriptor::name() const {
  std::string out = "F_" + std::to_string(characteristic());
  if (extension_degree() > 1) out += "^" + std::to_string(extension_degree());
  if (!variables_.empty()) {
    out += "(";
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (i) out += ",";
      out += variables_[i];
    }
    out += ")";
  }
  return out;
}

}  // namespace pisupp
