#pragma once

// Exact arithmetic in field towers F_p ⊂ F_{p^n} ⊂ F_{p^n}(s_1, ..., s_m).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "pisupp/error.hpp"

namespace pisupp {

bool is_prime(std::uint64_t n) noexcept;

/// GF(p^n) with elements encoded as integers sum_i c_i p^i (c_i least nonnegative residues).
/// Instances are shared and interned per (p, modulus).
class FiniteField {
 public:
  using Elem = std::uint32_t;

  /// `modulus` is empty for the prime field, otherwise a monic irreducible polynomial
  /// (low-order coefficient first) of degree >= 2.
  static std::shared_ptr<const FiniteField> get(std::uint32_t p, const std::vector<std::uint32_t>& modulus);

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  bool is_prime_field() const noexcept { return n_ == 1; }

  Elem from_int(std::int64_t v) const noexcept {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }
  Elem from_coefficients(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coefficients(Elem a) const;
  /// The class of the adjoined root w (the element with coefficient vector [0, 1]).
  Elem generator() const noexcept { return n_ == 1 ? 0 : p_; }

  Elem add(Elem a, Elem b) const noexcept {
    if (n_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    return add_digits(a, b);
  }
  Elem neg(Elem a) const noexcept {
    if (n_ == 1) return a == 0 ? 0 : p_ - a;
    if (p_ == 2) return a;
    return neg_digits(a);
  }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (n_ == 1) return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
    if (!log_.empty()) {
      std::uint32_t e = log_[a] + log_[b];
      return exp_[e];
    }
    return mul_slow(a, b);
  }
  /// Throws Error(DivisionByZero) on zero.
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const noexcept;

 private:
  FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus);

  Elem add_digits(Elem a, Elem b) const noexcept;
  Elem neg_digits(Elem a) const noexcept;
  Elem mul_slow(Elem a, Elem b) const noexcept;
  void build_tables();

  std::uint32_t p_;
  unsigned n_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint16_t> add_table_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
};

/// Monic irreducibility test over F_p by exhaustive trial division (degree <= 8).
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& monic);

/// The first monic irreducible polynomial of the given degree over F_p, ordering candidates
/// by their lower coefficients read as a base-p integer. Empty for degree 1.
std::vector<std::uint32_t> default_modulus(std::uint32_t p, unsigned degree);

/// Canonical inclusion GF(p^a) -> GF(p^b), a | b, sending the generator of the smaller
/// field to the least (by encoding) root of its modulus in the larger one.
class FieldEmbedding {
 public:
  FieldEmbedding(std::shared_ptr<const FiniteField> from, std::shared_ptr<const FiniteField> to);

  FiniteField::Elem operator()(FiniteField::Elem a) const;
  /// Inverse image, if `b` lies in the image.
  std::optional<FiniteField::Elem> preimage(FiniteField::Elem b) const;

  const FiniteField& source() const noexcept { return *from_; }
  const FiniteField& target() const noexcept { return *to_; }
  bool is_identity() const noexcept { return identity_; }

 private:
  std::shared_ptr<const FiniteField> from_;
  std::shared_ptr<const FiniteField> to_;
  bool identity_ = false;
  std::vector<FiniteField::Elem> table_;
  FiniteField::Elem root_ = 0;
};

class FieldDescriptor;
using Field = std::shared_ptr<const FieldDescriptor>;

/// A member of the tower F_p ⊂ F_{p^n} ⊂ F_{p^n}(s_1..s_m). Descriptors are interned:
/// two descriptors describe the same field iff the pointers are equal.
class FieldDescriptor {
 public:
  static constexpr unsigned kMaxExtensionDegree = 8;

  /// Errors: CompositeCharacteristic, ReduciblePolynomial, DuplicateVariable, ExtensionTooLarge.
  static Field make(std::uint32_t p, std::optional<std::vector<std::uint32_t>> extension = std::nullopt,
                    std::vector<std::string> variables = {});
  static Field prime(std::uint32_t p) { return make(p); }

  std::uint32_t characteristic() const noexcept { return finite_->characteristic(); }
  unsigned extension_degree() const noexcept { return finite_->degree(); }
  const std::vector<std::uint32_t>& modulus() const noexcept { return finite_->modulus(); }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::size_t num_variables() const noexcept { return variables_.size(); }
  bool has_transcendentals() const noexcept { return !variables_.empty(); }

  const FiniteField& finite() const noexcept { return *finite_; }
  const std::shared_ptr<const FiniteField>& finite_ptr() const noexcept { return finite_; }

  /// Same finite part without transcendentals.
  Field finite_part() const;
  /// Adjoins further transcendentals (appended after the existing ones).
  Field adjoin(const std::vector<std::string>& names) const;
  /// Degree-`degree` extension of the finite part (default modulus), keeping the variables.
  Field finite_extension(unsigned degree) const;

  /// True when `coarser` embeds canonically into this field: same characteristic, extension
  /// degree divisible, and every variable of `coarser` present here.
  bool refines(const FieldDescriptor& coarser) const;
  std::optional<std::size_t> variable_index(const std::string& name) const;

  /// Human-readable name such as "F_2", "F_4", "F_2(s)", "F_3^2(s2,s3)".
  std::string name() const;

 private:
  FieldDescriptor(std::shared_ptr<const FiniteField> finite, std::vector<std::string> variables)
      : finite_(std::move(finite)), variables_(std::move(variables)) {}

  std::shared_ptr<const FiniteField> finite_;
  std::vector<std::string> variables_;
};

using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic comparison: total degree first, then lexicographic.
int grlex_compare(const Exponents& a, const Exponents& b) noexcept;

/// Sparse multivariate polynomial in the variables of a field, coefficients in its finite part.
/// Terms are kept sorted by decreasing graded-lex order with no zero coefficients.
class Polynomial {
 public:
  using Elem = FiniteField::Elem;
  struct Term {
    Exponents exps;
    Elem coeff;
    bool operator==(const Term&) const = default;
  };

  explicit Polynomial(Field field);
  static Polynomial constant(Field field, Elem c);
  static Polynomial variable(Field field, std::size_t index);
  static Polynomial from_terms(Field field, std::vector<Term> terms);

  const Field& field() const noexcept { return field_; }
  std::size_t num_variables() const noexcept { return field_->num_variables(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const noexcept;
  /// Value of a constant polynomial (0 for the zero polynomial).
  Elem constant_value() const;
  unsigned total_degree() const noexcept;
  bool is_homogeneous() const noexcept;
  const Term& leading_term() const;
  Elem leading_coefficient() const { return leading_term().coeff; }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(Elem c) const;
  /// Quotient when `divisor` divides exactly, std::nullopt otherwise.
  std::optional<Polynomial> exact_divide(const Polynomial& divisor) const;
  /// Scaled so the leading coefficient is 1 (zero stays zero).
  Polynomial monic() const;
  /// Divides out the largest monomial dividing every term; returns that monomial's exponents.
  Exponents monomial_content() const;
  Polynomial divide_monomial(const Exponents& m) const;

  /// Evaluates at `point` (one value per variable, in `embedding.target()`).
  Elem evaluate(const FieldEmbedding& embedding, std::span<const Elem> point) const;

  /// Univariate helpers (exactly one variable).
  static Polynomial univariate_gcd(const Polynomial& a, const Polynomial& b);

  bool operator==(const Polynomial& o) const { return field_ == o.field_ && terms_ == o.terms_; }

  std::string to_string() const;

 private:
  Polynomial(Field field, std::vector<Term> sorted_terms) : field_(std::move(field)), terms_(std::move(sorted_terms)) {}
  void check_same_field(const Polynomial& o) const;

  Field field_;
  std::vector<Term> terms_;
};

/// Element of a FieldDescriptor in canonical numerator/denominator form.
///
/// Canonical form: without transcendentals the denominator is 1. With one transcendental the
/// pair is reduced by the univariate gcd and the denominator is monic. With two or more, the
/// common monomial factor is removed, an exact quotient is taken when one side divides the
/// other, and the denominator's graded-lex leading coefficient is 1. Equality is tested by
/// cross-multiplication, so the missing multivariate gcd never affects comparisons.
class FieldElement {
 public:
  using Elem = FiniteField::Elem;

  explicit FieldElement(Field field);
  static FieldElement zero(Field field) { return FieldElement(std::move(field)); }
  static FieldElement one(Field field);
  static FieldElement from_int(Field field, std::int64_t v);
  static FieldElement from_finite(Field field, Elem c);
  static FieldElement from_coefficients(Field field, std::span<const std::uint32_t> coeffs);
  static FieldElement variable(Field field, const std::string& name);
  static FieldElement variable(Field field, std::size_t index);
  /// Errors: DivisionByZero for a zero denominator, FieldMismatch.
  static FieldElement fraction(Polynomial num, Polynomial den);
  static FieldElement from_polynomial(Polynomial num);

  const Field& field() const noexcept { return field_; }
  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept;
  /// Denominator is the constant 1.
  bool is_polynomial() const noexcept { return den_.is_one(); }
  bool is_constant() const noexcept { return is_polynomial() && num_.is_constant(); }
  /// The finite-part value of a constant element. Errors: InvalidArgument if not constant.
  Elem finite_value() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  /// Errors: DivisionByZero.
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  bool operator==(const FieldElement& o) const;

  /// Image under the canonical inclusion into `target`. Errors: NotARefinement.
  FieldElement embed(const Field& target) const;
  FieldElement canonicalized() const;

  std::string to_string() const;

 private:
  FieldElement(Field field, Polynomial num, Polynomial den)
      : field_(std::move(field)), num_(std::move(num)), den_(std::move(den)) {}
  void canonicalize();
  void check_same_field(const FieldElement& o) const;

  Field field_;
  Polynomial num_;
  Polynomial den_;
};

/// Transports a polynomial into a refining field (coefficients embedded, variables matched
/// by name). Errors: NotARefinement.
Polynomial embed_polynomial(const Polynomial& poly, const Field& target);

// Literal serialization: prime-field scalars as decimal integers, extension elements as
// coefficient arrays [c0, c1, ...], and non-constant rational functions as
// {"num": [terms], "den": [terms]} with each term {"coeff": c, "exps": [e1, ..., em]}.
nlohmann::json to_json(const FieldElement& x);
/// Errors: SyntaxError for malformed literals.
FieldElement field_element_from_json(const Field& field, const nlohmann::json& j);

}  // namespace pisupp
