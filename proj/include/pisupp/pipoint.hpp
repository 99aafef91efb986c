#pragma once

// Flat algebra maps K[t]/(t^p) -> A_K, given by the image f(z_1..z_r) of t.

#include <map>
#include <string>
#include <vector>

#include "pisupp/groupalg.hpp"

namespace pisupp {

/// One monomial of an image expression; exponents has length r.
struct ImageTerm {
  std::vector<unsigned> exponents;
  FieldElement coeff;
};

class PiPoint {
 public:
  /// t -> sum a_i z_i. Errors: NotARefinement, FieldMismatch, InvalidArgument (wrong length),
  /// AllCoefficientsZero, FlatnessFailure.
  static PiPoint make_linear(const AlgebraSpec& spec, const Field& field, std::vector<FieldElement> coeffs);
  /// Arbitrary image without constant term; monomials with some exponent >= p vanish in A and
  /// are dropped. Errors: NotARefinement, FieldMismatch, InvalidArgument, NotFlat.
  static PiPoint make_general(const AlgebraSpec& spec, const Field& field, const std::vector<ImageTerm>& image);

  const AlgebraSpec& spec() const noexcept { return spec_; }
  const Field& field() const noexcept { return field_; }
  const std::vector<FieldElement>& linear() const noexcept { return linear_; }
  /// Terms of total degree >= 2, keyed by exponent vector.
  const std::map<std::vector<unsigned>, FieldElement>& higher() const noexcept { return higher_; }
  bool has_linear_part() const;
  bool is_linear() const noexcept { return higher_.empty(); }

  /// f(Z_1..Z_r) for the given action matrices (over field()).
  Matrix evaluate(const std::vector<Matrix>& actions) const;

  std::string to_string() const;

 private:
  PiPoint(AlgebraSpec spec, Field field, std::vector<FieldElement> linear,
          std::map<std::vector<unsigned>, FieldElement> higher);

  AlgebraSpec spec_;
  Field field_;
  std::vector<FieldElement> linear_;
  std::map<std::vector<unsigned>, FieldElement> higher_;
};

enum class Equivalence { Equivalent, NotEquivalent };

/// The image of t acting on M; M must live over the point's field. Errors: FieldMismatch, SpecMismatch.
Matrix restrict(const PiPoint& alpha, const ModuleRep& m);
/// Jordan type of the regular module restricted along alpha is [p, ..., p].
bool is_flat(const PiPoint& alpha);
/// Errors: ZeroLinearPart.
PiPoint linear_part(const PiPoint& alpha);
/// Projective proportionality of the linear parts. Errors: FieldMismatch, SpecMismatch, ZeroLinearPart.
Equivalence equivalent(const PiPoint& alpha, const PiPoint& beta);
/// Errors: NotARefinement.
PiPoint base_extend(const PiPoint& alpha, const Field& field);

/// Names of the generic coordinates s2..sr.
std::vector<std::string> generic_variable_names(unsigned r);
/// t -> z_1 + s_2 z_2 + ... + s_r z_r over the base with s_2..s_r adjoined
/// (the base itself when r = 1).
PiPoint generic_point(const AlgebraSpec& spec);

}  // namespace pisupp
