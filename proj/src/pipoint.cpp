#include <sstream>

#include "pisupp/pipoint.hpp"

namespace pisupp {

namespace {

void require_refines(const Field& field, const AlgebraSpec& spec) {
  if (!field->refines(*spec.base)) {
    throw Error(ErrorKind::NotARefinement, field->name() + " does not refine " + spec.base->name());
  }
}

void require_field(const FieldElement& x, const Field& field) {
  if (x.field() != field) {
    throw Error(ErrorKind::FieldMismatch, "coefficient over " + x.field()->name() + ", expected " + field->name());
  }
}

bool flat_on_regular_module(const AlgebraSpec& spec, const Field& field, const PiPoint& alpha) {
  const auto regular = free_module(spec.over(field), 1);
  return is_full(alpha.evaluate(regular.actions()), spec.p);
}

std::string coefficient_string(const FieldElement& c) {
  auto s = c.to_string();
  if (s.find_first_of("+-/ ") != std::string::npos) s = "(" + s + ")";
  return s;
}

}  // namespace

PiPoint::PiPoint(AlgebraSpec spec, Field field, std::vector<FieldElement> linear,
                 std::map<std::vector<unsigned>, FieldElement> higher)
    : spec_(std::move(spec)), field_(std::move(field)), linear_(std::move(linear)), higher_(std::move(higher)) {}

PiPoint PiPoint::make_linear(const AlgebraSpec& spec, const Field& field, std::vector<FieldElement> coeffs) {
  require_refines(field, spec);
  if (coeffs.size() != spec.r) {
    throw Error(ErrorKind::InvalidArgument,
                "expected " + std::to_string(spec.r) + " coordinates, got " + std::to_string(coeffs.size()));
  }
  for (const auto& c : coeffs) require_field(c, field);
  PiPoint alpha(spec, field, std::move(coeffs), {});
  if (!alpha.has_linear_part()) throw Error(ErrorKind::AllCoefficientsZero, "all linear coefficients are zero");
  if (!flat_on_regular_module(spec, field, alpha)) {
    throw Error(ErrorKind::FlatnessFailure, "internal error: linear point " + alpha.to_string() + " is not flat");
  }
  return alpha;
}

PiPoint PiPoint::make_general(const AlgebraSpec& spec, const Field& field, const std::vector<ImageTerm>& image) {
  require_refines(field, spec);
  std::vector<FieldElement> linear(spec.r, FieldElement::zero(field));
  std::map<std::vector<unsigned>, FieldElement> higher;
  for (const auto& term : image) {
    if (term.exponents.size() != spec.r) {
      throw Error(ErrorKind::InvalidArgument, "exponent vector length differs from r = " + std::to_string(spec.r));
    }
    require_field(term.coeff, field);
    unsigned degree = 0;
    bool vanishes = false;
    for (auto e : term.exponents) {
      degree += e;
      vanishes = vanishes || e >= spec.p;
    }
    if (degree == 0) {
      if (!term.coeff.is_zero()) throw Error(ErrorKind::InvalidArgument, "image must have zero constant term");
      continue;
    }
    if (vanishes || term.coeff.is_zero()) continue;
    if (degree == 1) {
      for (unsigned i = 0; i < spec.r; ++i)
        if (term.exponents[i] == 1) linear[i] += term.coeff;
      continue;
    }
    auto [it, inserted] = higher.emplace(term.exponents, term.coeff);
    if (!inserted) {
      it->second += term.coeff;
      if (it->second.is_zero()) higher.erase(it);
    }
  }
  PiPoint alpha(spec, field, std::move(linear), std::move(higher));
  if (!flat_on_regular_module(spec, field, alpha)) {
    throw Error(ErrorKind::NotFlat, "t -> " + alpha.to_string() + " is not flat");
  }
  return alpha;
}

bool PiPoint::has_linear_part() const {
  for (const auto& c : linear_)
    if (!c.is_zero()) return true;
  return false;
}

Matrix PiPoint::evaluate(const std::vector<Matrix>& actions) const {
  if (actions.size() != spec_.r) throw Error(ErrorKind::DimensionMismatch, "wrong number of action matrices");
  const std::size_t n = actions.empty() ? 0 : actions[0].rows();
  Matrix out(field_, n, n);
  for (unsigned i = 0; i < spec_.r; ++i) {
    if (!linear_[i].is_zero()) out = out + actions[i].scaled(linear_[i]);
  }
  for (const auto& [exps, coeff] : higher_) {
    Matrix mono = Matrix::identity(field_, n);
    for (unsigned i = 0; i < spec_.r; ++i)
      if (exps[i] > 0) mono = mono * actions[i].power(exps[i]);
    out = out + mono.scaled(coeff);
  }
  return out;
}

std::string PiPoint::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const FieldElement& c, const std::string& mono) {
    if (c.is_zero()) return;
    os << (first ? "" : " + ");
    first = false;
    if (!c.is_one()) os << coefficient_string(c) << "*";
    os << mono;
  };
  for (unsigned i = 0; i < spec_.r; ++i) emit(linear_[i], "z" + std::to_string(i + 1));
  for (const auto& [exps, coeff] : higher_) {
    std::string mono;
    for (unsigned i = 0; i < spec_.r; ++i) {
      if (exps[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "z" + std::to_string(i + 1);
      if (exps[i] > 1) mono += "^" + std::to_string(exps[i]);
    }
    emit(coeff, mono);
  }
  if (first) os << "0";
  return os.str();
}

Matrix restrict(const PiPoint& alpha, const ModuleRep& m) {
  if (m.field() != alpha.field()) {
    throw Error(ErrorKind::FieldMismatch,
                "module over " + m.field()->name() + " but point over " + alpha.field()->name());
  }
  if (!m.spec().same_shape(alpha.spec())) {
    throw Error(ErrorKind::SpecMismatch, "module and point are over different algebras");
  }
  return alpha.evaluate(m.actions());
}

bool is_flat(const PiPoint& alpha) { return flat_on_regular_module(alpha.spec(), alpha.field(), alpha); }

PiPoint linear_part(const PiPoint& alpha) {
  if (!alpha.has_linear_part()) throw Error(ErrorKind::ZeroLinearPart, "point has zero linear part");
  return PiPoint::make_linear(alpha.spec(), alpha.field(), alpha.linear());
}

Equivalence equivalent(const PiPoint& alpha, const PiPoint& beta) {
  if (alpha.field() != beta.field()) {
    throw Error(ErrorKind::FieldMismatch,
                "points over " + alpha.field()->name() + " and " + beta.field()->name() + " are not comparable");
  }
  if (!alpha.spec().same_shape(beta.spec())) throw Error(ErrorKind::SpecMismatch, "points over different algebras");
  if (!alpha.has_linear_part() || !beta.has_linear_part()) {
    throw Error(ErrorKind::ZeroLinearPart, "equivalence needs nonzero linear parts");
  }
  const auto& a = alpha.linear();
  const auto& b = beta.linear();
  // [a] = [b] in projective space iff a_i b_j = a_j b_i for all i, j.
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!(a[i] * b[j] == a[j] * b[i])) return Equivalence::NotEquivalent;
  return Equivalence::Equivalent;
}

PiPoint base_extend(const PiPoint& alpha, const Field& field) {
  if (field == alpha.field()) return alpha;
  if (!field->refines(*alpha.field())) {
    throw Error(ErrorKind::NotARefinement, field->name() + " does not refine " + alpha.field()->name());
  }
  std::vector<ImageTerm> image;
  for (unsigned i = 0; i < alpha.spec().r; ++i) {
    std::vector<unsigned> e(alpha.spec().r, 0);
    e[i] = 1;
    image.push_back({e, alpha.linear()[i].embed(field)});
  }
  for (const auto& [exps, coeff] : alpha.higher()) image.push_back({exps, coeff.embed(field)});
  return PiPoint::make_general(alpha.spec(), field, image);
}

std::vector<std::string> generic_variable_names(unsigned r) {
  std::vector<std::string> names;
  for (unsigned i = 2; i <= r; ++i) names.push_back("s" + std::to_string(i));
  return names;
}

PiPoint generic_point(const AlgebraSpec& spec) {
  const auto field = spec.r > 1 ? spec.base->adjoin(generic_variable_names(spec.r)) : spec.base;
  std::vector<FieldElement> coeffs{FieldElement::one(field)};
  for (unsigned i = 2; i <= spec.r; ++i) coeffs.push_back(FieldElement::variable(field, "s" + std::to_string(i)));
  return PiPoint::make_linear(spec, field, std::move(coeffs));
}

}  // namespace pisupp
