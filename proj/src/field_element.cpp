#include <algorithm>

#include "pisupp/exactfield.hpp"

namespace pisupp {

FieldElement::FieldElement(Field field)
    : field_(field), num_(field), den_(Polynomial::constant(field, 1)) {}

FieldElement FieldElement::one(Field field) { return from_finite(std::move(field), 1); }

FieldElement FieldElement::from_int(Field field, std::int64_t v) {
  const auto c = field->finite().from_int(v);
  return from_finite(std::move(field), c);
}

FieldElement FieldElement::from_finite(Field field, Elem c) {
  if (c >= field->finite().size()) throw Error(ErrorKind::InvalidArgument, "finite-field code out of range");
  auto num = Polynomial::constant(field, c);
  auto den = Polynomial::constant(field, 1);
  return FieldElement(std::move(field), std::move(num), std::move(den));
}

FieldElement FieldElement::from_coefficients(Field field, std::span<const std::uint32_t> coeffs) {
  const auto c = field->finite().from_coefficients(coeffs);
  return from_finite(std::move(field), c);
}

FieldElement FieldElement::variable(Field field, const std::string& name) {
  auto idx = field->variable_index(name);
  if (!idx) throw Error(ErrorKind::InvalidArgument, "no variable '" + name + "' in " + field->name());
  return variable(std::move(field), *idx);
}

FieldElement FieldElement::variable(Field field, std::size_t index) {
  auto num = Polynomial::variable(field, index);
  auto den = Polynomial::constant(field, 1);
  return FieldElement(std::move(field), std::move(num), std::move(den));
}

FieldElement FieldElement::fraction(Polynomial num, Polynomial den) {
  if (num.field() != den.field()) throw Error(ErrorKind::FieldMismatch, "numerator and denominator fields differ");
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  auto field = num.field();
  FieldElement x(std::move(field), std::move(num), std::move(den));
  x.canonicalize();
  return x;
}

FieldElement FieldElement::from_polynomial(Polynomial num) {
  auto field = num.field();
  auto den = Polynomial::constant(field, 1);
  return FieldElement(std::move(field), std::move(num), std::move(den));
}

void FieldElement::canonicalize() {
  const auto& ff = field_->finite();
  if (num_.is_zero()) {
    den_ = Polynomial::constant(field_, 1);
    return;
  }
  if (den_.is_one()) return;
  const auto m = field_->num_variables();
  if (m == 1) {
    auto g = Polynomial::univariate_gcd(num_, den_);
    if (!g.is_one()) {
      num_ = *num_.exact_divide(g);
      den_ = *den_.exact_divide(g);
    }
  } else if (m >= 2) {
    auto cn = num_.monomial_content();
    const auto cd = den_.monomial_content();
    for (std::size_t k = 0; k < cn.size(); ++k) cn[k] = std::min(cn[k], cd[k]);
    if (std::any_of(cn.begin(), cn.end(), [](auto e) { return e != 0; })) {
      num_ = num_.divide_monomial(cn);
      den_ = den_.divide_monomial(cn);
    }
    if (!den_.is_constant()) {
      if (auto q = num_.exact_divide(den_)) {
        num_ = std::move(*q);
        den_ = Polynomial::constant(field_, 1);
      } else if (auto r = den_.exact_divide(num_)) {
        den_ = std::move(*r);
        num_ = Polynomial::constant(field_, 1);
      }
    }
  }
  const auto inv_lead = ff.inv(den_.leading_coefficient());
  if (inv_lead != 1) {
    num_ = num_.scaled(inv_lead);
    den_ = den_.scaled(inv_lead);
  }
}

FieldElement FieldElement::canonicalized() const {
  FieldElement x = *this;
  x.canonicalize();
  return x;
}

void FieldElement::check_same_field(const FieldElement& o) const {
  if (field_ != o.field_) {
    throw Error(ErrorKind::FieldMismatch, "elements of " + field_->name() + " and " + o.field_->name());
  }
}

bool FieldElement::is_one() const noexcept { return is_polynomial() && num_.is_one(); }

FieldElement::Elem FieldElement::finite_value() const {
  if (!is_constant()) throw Error(ErrorKind::InvalidArgument, "element " + to_string() + " is not a constant");
  return num_.constant_value();
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same_field(o);
  if (is_polynomial() && o.is_polynomial()) return FieldElement(field_, num_ + o.num_, den_);
  if (den_ == o.den_) return fraction(num_ + o.num_, den_);
  return fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

FieldElement FieldElement::operator-() const { return FieldElement(field_, -num_, den_); }

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same_field(o);
  if (is_polynomial() && o.is_polynomial()) {
    auto prod = num_ * o.num_;
    return FieldElement(field_, std::move(prod), den_);
  }
  return fraction(num_ * o.num_, den_ * o.den_);
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return fraction(den_, num_);
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same_field(o);
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  if (o.is_constant()) {
    const auto inv = field_->finite().inv(o.finite_value());
    return FieldElement(field_, num_.scaled(inv), den_);
  }
  return fraction(num_ * o.den_, den_ * o.num_);
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (field_ != o.field_) return false;
  if (is_polynomial() && o.is_polynomial()) return num_ == o.num_;
  return num_ * o.den_ == o.num_ * den_;
}

FieldElement FieldElement::embed(const Field& target) const {
  if (target == field_) return *this;
  FieldElement x(target, embed_polynomial(num_, target), embed_polynomial(den_, target));
  x.canonicalize();
  return x;
}

std::string FieldElement::to_string() const {
  if (is_polynomial()) {
    if (is_constant() && !field_->finite().is_prime_field()) {
      const auto cs = field_->finite().coefficients(finite_value());
      std::string s = "[";
      for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? "," : "") + std::to_string(cs[i]);
      return s + "]";
    }
    return num_.to_string();
  }
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// --- literal serialization ---

namespace {

nlohmann::json coeff_json(const FiniteField& ff, FiniteField::Elem c) {
  if (ff.is_prime_field()) return c;
  return ff.coefficients(c);
}

FiniteField::Elem coeff_from_json(const FiniteField& ff, const nlohmann::json& j) {
  if (j.is_number_integer()) return ff.from_int(j.get<std::int64_t>());
  if (j.is_array()) {
    std::vector<std::uint32_t> cs;
    for (const auto& c : j) {
      if (!c.is_number_integer()) throw Error(ErrorKind::SyntaxError, "coefficient arrays must hold integers");
      cs.push_back(ff.from_int(c.get<std::int64_t>()));
    }
    return ff.from_coefficients(cs);
  }
  throw Error(ErrorKind::SyntaxError, "expected an integer or coefficient array, got " + j.dump());
}

nlohmann::json terms_json(const Polynomial& poly) {
  auto arr = nlohmann::json::array();
  for (const auto& t : poly.terms()) {
    arr.push_back({{"coeff", coeff_json(poly.field()->finite(), t.coeff)}, {"exps", t.exps}});
  }
  return arr;
}

Polynomial terms_from_json(const Field& field, const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::SyntaxError, "term list must be an array");
  std::vector<Polynomial::Term> terms;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("exps") || !t.at("exps").is_array()) {
      throw Error(ErrorKind::SyntaxError, "term must be {\"coeff\": c, \"exps\": [...]}");
    }
    Exponents e;
    for (const auto& x : t.at("exps")) {
      if (!x.is_number_unsigned()) throw Error(ErrorKind::SyntaxError, "exponents must be nonnegative integers");
      e.push_back(x.get<std::uint32_t>());
    }
    if (e.size() != field->num_variables()) {
      throw Error(ErrorKind::SyntaxError, "exponent vector length does not match " + field->name());
    }
    terms.push_back({std::move(e), coeff_from_json(field->finite(), t.at("coeff"))});
  }
  return Polynomial::from_terms(field, std::move(terms));
}

}  // namespace

nlohmann::json to_json(const FieldElement& x) {
  const auto& ff = x.field()->finite();
  if (x.is_constant()) return coeff_json(ff, x.finite_value());
  return {{"num", terms_json(x.numerator())}, {"den", terms_json(x.denominator())}};
}

FieldElement field_element_from_json(const Field& field, const nlohmann::json& j) {
  if (j.is_number_integer() || j.is_array()) return FieldElement::from_finite(field, coeff_from_json(field->finite(), j));
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (!field->variable_index(name)) throw Error(ErrorKind::SyntaxError, "unknown variable '" + name + "'");
    return FieldElement::variable(field, name);
  }
  if (j.is_object() && j.contains("num")) {
    auto num = terms_from_json(field, j.at("num"));
    auto den = j.contains("den") ? terms_from_json(field, j.at("den")) : Polynomial::constant(field, 1);
    if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator in literal");
    return FieldElement::fraction(std::move(num), std::move(den));
  }
  throw Error(ErrorKind::SyntaxError, "not a field literal: " + j.dump());
}

}  // namespace pisupp
