#include <algorithm>
#include <numeric>
#include <sstream>

#include "pisupp/exactfield.hpp"

namespace pisupp {

int grlex_compare(const Exponents& a, const Exponents& b) noexcept {
  const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

namespace {

using Term = Polynomial::Term;

bool term_before(const Term& a, const Term& b) { return grlex_compare(a.exps, b.exps) > 0; }

// Sorts, merges equal monomials and drops zeros.
std::vector<Term> normalize(const FiniteField& ff, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_before);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exps == t.exps) {
      out.back().coeff = ff.add(out.back().coeff, t.coeff);
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  return out;
}

std::string coeff_string(const FiniteField& ff, FiniteField::Elem c) {
  if (ff.is_prime_field()) return std::to_string(c);
  const auto cs = ff.coefficients(c);
  std::string s = "[";
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(cs[i]);
  }
  return s + "]";
}

using Dense = std::vector<FiniteField::Elem>;

void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Dense to_dense(const Polynomial& p) {
  Dense d;
  for (const auto& t : p.terms()) {
    if (d.size() <= t.exps[0]) d.resize(t.exps[0] + 1, 0);
    d[t.exps[0]] = t.coeff;
  }
  return d;
}

Polynomial from_dense(const Field& field, const Dense& d) {
  std::vector<Term> terms;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] != 0) terms.push_back({{static_cast<std::uint32_t>(i)}, d[i]});
  }
  return Polynomial::from_terms(field, std::move(terms));
}

// a mod b over the field, b nonzero.
Dense dense_mod(const FiniteField& ff, Dense a, const Dense& b) {
  const auto inv_lead = ff.inv(b.back());
  while (a.size() >= b.size()) {
    const auto factor = ff.mul(a.back(), inv_lead);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ff.sub(a[shift + i], ff.mul(factor, b[i]));
    trim(a);
    if (a.size() < b.size()) break;
  }
  trim(a);
  return a;
}

}  // namespace

Polynomial::Polynomial(Field field) : field_(std::move(field)) {}

Polynomial Polynomial::constant(Field field, Elem c) {
  if (c == 0) return Polynomial(std::move(field));
  const auto n = field->num_variables();
  return Polynomial(std::move(field), std::vector<Term>{{Exponents(n, 0), c}});
}

Polynomial Polynomial::variable(Field field, std::size_t index) {
  const auto n = field->num_variables();
  if (index >= n) throw Error(ErrorKind::InvalidArgument, "variable index out of range");
  Exponents e(n, 0);
  e[index] = 1;
  return Polynomial(std::move(field), std::vector<Term>{{std::move(e), 1}});
}

Polynomial Polynomial::from_terms(Field field, std::vector<Term> terms) {
  const auto n = field->num_variables();
  for (auto& t : terms) {
    if (t.exps.size() != n) throw Error(ErrorKind::InvalidArgument, "exponent vector length does not match the field");
    if (t.coeff >= field->finite().size()) throw Error(ErrorKind::InvalidArgument, "coefficient out of range");
  }
  auto sorted = normalize(field->finite(), std::move(terms));
  return Polynomial(std::move(field), std::move(sorted));
}

void Polynomial::check_same_field(const Polynomial& o) const {
  if (field_ != o.field_) {
    throw Error(ErrorKind::FieldMismatch, "polynomials over " + field_->name() + " and " + o.field_->name());
  }
}

bool Polynomial::is_constant() const noexcept {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  return std::all_of(terms_[0].exps.begin(), terms_[0].exps.end(), [](auto e) { return e == 0; });
}

bool Polynomial::is_one() const noexcept { return is_constant() && !terms_.empty() && terms_[0].coeff == 1; }

Polynomial::Elem Polynomial::constant_value() const {
  if (!is_constant()) throw Error(ErrorKind::InvalidArgument, "polynomial is not constant");
  return terms_.empty() ? 0 : terms_[0].coeff;
}

unsigned Polynomial::total_degree() const noexcept {
  if (terms_.empty()) return 0;
  // Graded order: the leading term has the largest total degree.
  return std::accumulate(terms_[0].exps.begin(), terms_[0].exps.end(), 0u);
}

bool Polynomial::is_homogeneous() const noexcept {
  const auto d = total_degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) {
    return std::accumulate(t.exps.begin(), t.exps.end(), 0u) == d;
  });
}

const Polynomial::Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw Error(ErrorKind::InvalidArgument, "zero polynomial has no leading term");
  return terms_.front();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_same_field(o);
  const auto& ff = field_->finite();
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && term_before(terms_[i], o.terms_[j]))) {
      out.push_back(terms_[i++]);
    } else if (i == terms_.size() || term_before(o.terms_[j], terms_[i])) {
      out.push_back(o.terms_[j++]);
    } else {
      const auto c = ff.add(terms_[i].coeff, o.terms_[j].coeff);
      if (c != 0) out.push_back({terms_[i].exps, c});
      ++i;
      ++j;
    }
  }
  return Polynomial(field_, std::move(out));
}

Polynomial Polynomial::operator-() const {
  const auto& ff = field_->finite();
  auto out = terms_;
  for (auto& t : out) t.coeff = ff.neg(t.coeff);
  return Polynomial(field_, std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same_field(o);
  if (is_zero() || o.is_zero()) return Polynomial(field_);
  const auto& ff = field_->finite();
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      Exponents e(a.exps.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = a.exps[k] + b.exps[k];
      prod.push_back({std::move(e), ff.mul(a.coeff, b.coeff)});
    }
  }
  return Polynomial(field_, normalize(ff, std::move(prod)));
}

Polynomial Polynomial::scaled(Elem c) const {
  if (c == 0) return Polynomial(field_);
  const auto& ff = field_->finite();
  auto out = terms_;
  for (auto& t : out) t.coeff = ff.mul(t.coeff, c);
  return Polynomial(field_, std::move(out));
}

std::optional<Polynomial> Polynomial::exact_divide(const Polynomial& divisor) const {
  check_same_field(divisor);
  if (divisor.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (is_zero()) return Polynomial(field_);
  const auto& ff = field_->finite();
  const auto& lead = divisor.leading_term();
  const auto inv_lead = ff.inv(lead.coeff);
  Polynomial rem = *this;
  std::vector<Term> quotient;
  while (!rem.is_zero()) {
    const auto& lt = rem.leading_term();
    Exponents e(lt.exps.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (lt.exps[k] < lead.exps[k]) return std::nullopt;
      e[k] = lt.exps[k] - lead.exps[k];
    }
    Term t{std::move(e), ff.mul(lt.coeff, inv_lead)};
    rem = rem - Polynomial(field_, std::vector<Term>{t}) * divisor;
    quotient.push_back(std::move(t));
  }
  return Polynomial(field_, normalize(ff, std::move(quotient)));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(field_->finite().inv(leading_coefficient()));
}

Exponents Polynomial::monomial_content() const {
  Exponents m(num_variables(), 0);
  if (terms_.empty()) return m;
  m = terms_[0].exps;
  for (const auto& t : terms_) {
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::min(m[k], t.exps[k]);
  }
  return m;
}

Polynomial Polynomial::divide_monomial(const Exponents& m) const {
  auto out = terms_;
  for (auto& t : out) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (t.exps[k] < m[k]) throw Error(ErrorKind::InvalidArgument, "monomial does not divide polynomial");
      t.exps[k] -= m[k];
    }
  }
  // Dividing every term by the same monomial preserves the graded-lex order.
  return Polynomial(field_, std::move(out));
}

Polynomial::Elem Polynomial::evaluate(const FieldEmbedding& embedding, std::span<const Elem> point) const {
  if (point.size() != num_variables()) throw Error(ErrorKind::InvalidArgument, "evaluation point has wrong length");
  const auto& tf = embedding.target();
  Elem acc = 0;
  for (const auto& t : terms_) {
    Elem v = embedding(t.coeff);
    for (std::size_t k = 0; k < point.size() && v != 0; ++k) {
      if (t.exps[k]) v = tf.mul(v, tf.pow(point[k], t.exps[k]));
    }
    acc = tf.add(acc, v);
  }
  return acc;
}

Polynomial Polynomial::univariate_gcd(const Polynomial& a, const Polynomial& b) {
  a.check_same_field(b);
  if (a.num_variables() != 1) throw Error(ErrorKind::InvalidArgument, "univariate gcd needs exactly one variable");
  const auto& ff = a.field()->finite();
  Dense x = to_dense(a), y = to_dense(b);
  trim(x);
  trim(y);
  while (!y.empty()) {
    Dense r = dense_mod(ff, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return from_dense(a.field(), x).monic();
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  const auto& ff = field_->finite();
  const auto& names = field_->variables();
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    const bool is_const = std::all_of(t.exps.begin(), t.exps.end(), [](auto e) { return e == 0; });
    if (t.coeff != 1 || is_const) {
      os << coeff_string(ff, t.coeff);
      if (!is_const) os << "*";
    }
    bool first_var = true;
    for (std::size_t k = 0; k < t.exps.size(); ++k) {
      if (t.exps[k] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << names[k];
      if (t.exps[k] > 1) os << "^" << t.exps[k];
    }
  }
  return os.str();
}

Polynomial embed_polynomial(const Polynomial& poly, const Field& target) {
  const auto& src = poly.field();
  if (src == target) return poly;
  if (!target->refines(*src)) {
    throw Error(ErrorKind::NotARefinement, target->name() + " does not refine " + src->name());
  }
  FieldEmbedding emb(src->finite_ptr(), target->finite_ptr());
  std::vector<std::size_t> where(src->num_variables());
  for (std::size_t k = 0; k < where.size(); ++k) where[k] = *target->variable_index(src->variables()[k]);
  std::vector<Polynomial::Term> terms;
  terms.reserve(poly.terms().size());
  for (const auto& t : poly.terms()) {
    Exponents e(target->num_variables(), 0);
    for (std::size_t k = 0; k < where.size(); ++k) e[where[k]] = t.exps[k];
    terms.push_back({std::move(e), emb(t.coeff)});
  }
  return Polynomial::from_terms(target, std::move(terms));
}

}  // namespace pisupp
