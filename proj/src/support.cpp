#include <algorithm>
#include <map>
#include <sstream>

#include "pisupp/support.hpp"

namespace pisupp {

namespace {

// c0 + c1 w + ... rendered highest power first, e.g. "w^2+2w+1".
std::string finite_label(const FiniteField& ff, FiniteField::Elem c) {
  if (ff.is_prime_field()) return std::to_string(c);
  const auto cs = ff.coefficients(c);
  std::string s;
  for (std::size_t k = cs.size(); k-- > 0;) {
    if (cs[k] == 0) continue;
    if (!s.empty()) s += "+";
    if (k == 0) {
      s += std::to_string(cs[k]);
    } else {
      if (cs[k] != 1) s += std::to_string(cs[k]);
      s += "w";
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return s.empty() ? "0" : s;
}

std::string element_label(const FieldElement& x) {
  if (x.is_constant()) return finite_label(x.field()->finite(), x.finite_value());
  auto s = x.to_string();
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

// Restriction along t -> sum a_i z_i is not free. A linear combination of commuting
// p-nilpotent operators is p-nilpotent in characteristic p, so no nilpotency check is needed.
bool linear_not_full(const std::vector<Matrix>& z, const std::vector<FieldElement>& coords, unsigned p) {
  const std::size_t n = z.empty() ? 0 : z[0].rows();
  if (n % p != 0) return true;
  Matrix t(coords[0].field(), n, n);
  for (std::size_t i = 0; i < z.size(); ++i)
    if (!coords[i].is_zero()) t = t + z[i].scaled(coords[i]);
  if (!t.is_finite()) return !is_full(t, p);
  return rank(t.power(p - 1)) != n / p;
}

std::uint64_t checked_pow(std::uint64_t b, std::uint64_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  while (e--) {
    if (r > cap / b) return cap + 1;
    r *= b;
  }
  return r;
}

// Per-degree cache of a module moved to the sample fields.
class SampleModules {
 public:
  enum class Mode { BaseChange, Coinduce };
  SampleModules(const ModuleRep& m, Mode mode) : m_(m), mode_(mode) {}

  const ModuleRep& at(unsigned e) {
    auto it = cache_.find(e);
    if (it != cache_.end()) return it->second;
    const auto field = sample_field(m_.field(), e);
    auto moved = mode_ == Mode::BaseChange ? base_change(m_, field) : coinduced(m_, field);
    return cache_.emplace(e, std::move(moved)).first->second;
  }

 private:
  const ModuleRep& m_;
  Mode mode_;
  std::map<unsigned, ModuleRep> cache_;
};

std::vector<bool> verdicts_on(const ModuleRep& m, const std::vector<SamplePoint>& pts, SampleModules::Mode mode) {
  SampleModules mods(m, mode);
  std::vector<bool> out;
  out.reserve(pts.size());
  for (const auto& sp : pts) out.push_back(linear_not_full(mods.at(sp.degree).actions(), sp.point.coords(), m.spec().p));
  return out;
}

SupportDescription describe(const ModuleRep& m, unsigned e_max) {
  SupportDescription d;
  d.module_name = m.name();
  d.dim = m.dim();
  d.spec = m.spec();
  d.e_max = e_max;
  return d;
}

// Graded-lex descending on leading terms, then on the remaining terms.
bool generator_less(const Polynomial& a, const Polynomial& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  for (std::size_t k = 0; k < std::min(ta.size(), tb.size()); ++k) {
    const int c = grlex_compare(ta[k].exps, tb[k].exps);
    if (c != 0) return c > 0;
    if (ta[k].coeff != tb[k].coeff) return ta[k].coeff < tb[k].coeff;
  }
  return ta.size() < tb.size();
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

// --- ProjPoint ---

ProjPoint ProjPoint::make(std::vector<FieldElement> coords) {
  if (coords.empty()) throw Error(ErrorKind::InvalidArgument, "a point needs at least one coordinate");
  const auto field = coords[0].field();
  for (const auto& c : coords)
    if (c.field() != field) throw Error(ErrorKind::FieldMismatch, "coordinates over different fields");
  auto lead = std::find_if(coords.begin(), coords.end(), [](const auto& c) { return !c.is_zero(); });
  if (lead == coords.end()) throw Error(ErrorKind::AllCoefficientsZero, "all coordinates are zero");
  const auto scale = lead->inverse();
  for (auto& c : coords) c = c * scale;
  ProjPoint pt;
  pt.field_ = field;
  pt.coords_ = std::move(coords);
  return pt;
}

PiPoint ProjPoint::pi_point(const AlgebraSpec& spec) const { return PiPoint::make_linear(spec, field_, coords_); }

std::string ProjPoint::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? ":" : "") + element_label(coords_[i]);
  return s + "]";
}

bool ProjPoint::operator==(const ProjPoint& o) const { return field_ == o.field_ && coords_ == o.coords_; }

// --- descriptions ---

std::vector<ProjPoint> SupportDescription::support_points() const {
  std::vector<ProjPoint> out;
  for (const auto& v : sampled)
    if (v.in_support) out.push_back(v.point);
  return out;
}

bool SupportDescription::sample_empty() const {
  return std::none_of(sampled.begin(), sampled.end(), [](const auto& v) { return v.in_support; });
}

std::string SupportDescription::report() const {
  std::ostringstream os;
  os << "module: " << (module_name.empty() ? "(unnamed)" : module_name) << ", dim " << dim << "\n";
  os << "algebra: " << spec.to_string() << "\n";
  if (e_max > 0) {
    os << "sample: points of P^" << spec.r - 1 << " over extensions of degree <= " << e_max << ", " << sampled.size()
       << " points (Galois conjugates listed separately)\n";
    for (const auto& v : sampled) {
      os << "  " << v.point.to_string() << " over " << v.point.field()->name() << ": "
         << (v.in_support ? "in" : "not in") << "\n";
    }
    os << "closed points in: {";
    bool first = true;
    for (const auto& v : sampled) {
      if (!v.in_support) continue;
      os << (first ? "" : ", ") << v.point.to_string();
      first = false;
    }
    os << "}\n";
  }
  if (generic_in_support) os << "generic point: " << (*generic_in_support ? "in" : "not in") << "\n";
  switch (ideal) {
    case Ideal::NotComputed:
      break;
    case Ideal::Everything:
      os << "ideal: everything (p does not divide dim)\n";
      break;
    case Ideal::Generators:
      os << "ideal: " << generators.size() << " generator" << (generators.size() == 1 ? "" : "s") << "\n";
      for (const auto& g : generators) os << "  " << g.to_string() << "\n";
      break;
  }
  return os.str();
}

// --- verdicts ---

bool in_support(const ModuleRep& m, const PiPoint& alpha) {
  if (!m.spec().same_shape(alpha.spec())) throw Error(ErrorKind::SpecMismatch, "module and point over different algebras");
  const auto mk = base_change(m, alpha.field());
  return !is_full(restrict(alpha, mk), m.spec().p);
}

CosupportVerdict in_cosupport(const ModuleRep& m, const PiPoint& alpha) {
  if (!m.spec().same_shape(alpha.spec())) throw Error(ErrorKind::SpecMismatch, "module and point over different algebras");
  CosupportVerdict v;
  const auto& k = alpha.field();
  if (k == m.field() || (!k->has_transcendentals() && k->refines(*m.field()))) {
    const auto mk = coinduced(m, k);
    v.in_cosupport = !is_full(restrict(alpha, mk), m.spec().p);
    v.route = CosupportRoute::Coinduced;
    v.note = "computed on Hom(" + k->name() + ", M)";
    return v;
  }
  v.in_cosupport = in_support(m, alpha);
  v.route = CosupportRoute::FiniteDimensionalFallback;
  v.note = "point over " + k->name() + " has transcendentals; support verdict used (M finite-dimensional)";
  return v;
}

Field sample_field(const Field& base, unsigned e) {
  if (e == 0) throw Error(ErrorKind::InvalidArgument, "sample degree must be at least 1");
  if (base->extension_degree() * e > FieldDescriptor::kMaxExtensionDegree) {
    throw Error(ErrorKind::BudgetExceeded, "sample degree " + std::to_string(e) + " over " + base->name() +
                                               " exceeds the extension degree cap");
  }
  return base->finite_extension(e);
}

std::vector<SamplePoint> sample_points(const AlgebraSpec& spec, unsigned e_max, std::uint64_t budget) {
  if (e_max == 0) throw Error(ErrorKind::InvalidArgument, "sample degree must be at least 1");
  const std::uint64_t q = spec.base->finite().size();
  const auto total = checked_pow(q, static_cast<std::uint64_t>(e_max) * spec.r, budget);
  if (total > budget || spec.r * total > budget) {
    throw Error(ErrorKind::BudgetExceeded, "sampling P^" + std::to_string(spec.r - 1) + " up to degree " +
                                               std::to_string(e_max) + " exceeds the budget of " +
                                               std::to_string(budget));
  }
  std::vector<SamplePoint> out;
  for (unsigned e = 1; e <= e_max; ++e) {
    const auto field = sample_field(spec.base, e);
    const auto& ff = field->finite();
    const std::uint64_t qe = ff.size();
    // proper divisors d of e: points with every coordinate fixed by x -> x^(q^d) were listed already
    std::vector<std::uint64_t> sub_powers;
    for (unsigned d = 1; d < e; ++d)
      if (e % d == 0) sub_powers.push_back(checked_pow(q, d, ~0ull));
    auto in_subfield = [&](const std::vector<FiniteField::Elem>& cs) {
      for (auto qd : sub_powers) {
        if (std::all_of(cs.begin(), cs.end(), [&](auto c) { return ff.pow(c, qd) == c; })) return true;
      }
      return false;
    };
    for (unsigned lead = 0; lead < spec.r; ++lead) {
      const unsigned free_coords = spec.r - 1 - lead;
      const auto count = checked_pow(qe, free_coords, ~0ull);
      std::vector<FiniteField::Elem> cs(spec.r, 0);
      cs[lead] = 1;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        // coordinate lead+1 is the most significant digit
        std::uint64_t rest = idx;
        for (unsigned k = spec.r; k-- > lead + 1;) {
          cs[k] = static_cast<FiniteField::Elem>(rest % qe);
          rest /= qe;
        }
        if (in_subfield(cs)) continue;
        std::vector<FieldElement> coords;
        for (auto c : cs) coords.push_back(FieldElement::from_finite(field, c));
        out.push_back({ProjPoint::make(std::move(coords)), e});
      }
    }
  }
  return out;
}

SupportDescription support_sample(const ModuleRep& m, unsigned e_max, std::uint64_t budget) {
  auto d = describe(m, e_max);
  const auto pts = sample_points(m.spec(), e_max, budget);
  const auto v = verdicts_on(m, pts, SampleModules::Mode::BaseChange);
  for (std::size_t i = 0; i < pts.size(); ++i) d.sampled.push_back({pts[i].point, pts[i].degree, v[i]});
  d.generic_in_support = in_support(m, generic_point(m.spec()));
  return d;
}

SupportDescription cosupport_sample(const ModuleRep& m, unsigned e_max, std::uint64_t budget) {
  auto d = describe(m, e_max);
  const auto pts = sample_points(m.spec(), e_max, budget);
  const auto mode = m.field()->has_transcendentals() ? SampleModules::Mode::BaseChange : SampleModules::Mode::Coinduce;
  const auto v = verdicts_on(m, pts, mode);
  for (std::size_t i = 0; i < pts.size(); ++i) d.sampled.push_back({pts[i].point, pts[i].degree, v[i]});
  d.generic_in_support = in_cosupport(m, generic_point(m.spec())).in_cosupport;
  return d;
}

SupportDescription support_ideal(const ModuleRep& m, std::size_t max_dim) {
  auto d = describe(m, 0);
  const unsigned p = m.spec().p;
  const std::size_t n = m.dim();
  if (n % p != 0) {
    d.ideal = SupportDescription::Ideal::Everything;
    return d;
  }
  if (n > max_dim) {
    throw Error(ErrorKind::DimensionTooLarge,
                "ideal mode supports dim <= " + std::to_string(max_dim) + ", module has dim " + std::to_string(n));
  }
  std::vector<std::string> names;
  for (unsigned i = 1; i <= m.spec().r; ++i) names.push_back("s" + std::to_string(i));
  const auto field = m.field()->adjoin(names);
  Matrix big(field, n, n);
  for (unsigned i = 0; i < m.spec().r; ++i) {
    big = big + m.action(i).embed(field).scaled(FieldElement::variable(field, names[i]));
  }
  d.ideal_field = field;
  d.ideal = SupportDescription::Ideal::Generators;
  if (n == 0) return d;
  const Matrix top = big.power(p - 1);
  MinorIterator it(top, n / p);
  while (auto minor = it.next()) {
    if (minor->is_zero()) continue;
    auto g = minor->monic();
    if (std::find(d.generators.begin(), d.generators.end(), g) == d.generators.end()) d.generators.push_back(g);
  }
  std::sort(d.generators.begin(), d.generators.end(), generator_less);
  return d;
}

bool ideal_vanishes_at(const SupportDescription& ideal, const ProjPoint& point) {
  if (ideal.ideal == SupportDescription::Ideal::Everything) return true;
  if (ideal.ideal != SupportDescription::Ideal::Generators) {
    throw Error(ErrorKind::InvalidArgument, "support ideal was not computed");
  }
  if (point.field()->has_transcendentals() || ideal.ideal_field->num_variables() != point.coords().size()) {
    throw Error(ErrorKind::InvalidArgument, "ideal evaluation needs a finite point over a base without transcendentals");
  }
  std::vector<FiniteField::Elem> values;
  for (const auto& c : point.coords()) values.push_back(c.finite_value());
  const FieldEmbedding emb(ideal.ideal_field->finite_ptr(), point.field()->finite_ptr());
  return std::all_of(ideal.generators.begin(), ideal.generators.end(),
                     [&](const Polynomial& g) { return g.evaluate(emb, values) == 0; });
}

bool is_projective(const ModuleRep& m) { return is_free(m); }

std::string DadeReport::to_string() const {
  std::ostringstream os;
  os << "free: " << yes_no(is_free) << ", sampled support empty: " << yes_no(sample_empty) << " (" << points
     << " points), generic point in support: " << yes_no(generic_in_support) << ", agree: " << yes_no(agree);
  return os.str();
}

DadeReport verify_dade(const ModuleRep& m, unsigned e_max, std::uint64_t budget) {
  const auto d = support_sample(m, e_max, budget);
  DadeReport r;
  r.is_free = is_free(m);
  r.sample_empty = d.sample_empty();
  r.generic_in_support = d.generic_in_support.value_or(true);
  r.points = d.sampled.size();
  r.agree = r.is_free == (r.sample_empty && !r.generic_in_support);
  return r;
}

bool FormulaReport::holds() const { return mismatches() == 0; }

std::size_t FormulaReport::mismatches() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& c) { return c.lhs != c.rhs; }));
}

std::string FormulaReport::to_string() const {
  std::ostringstream os;
  os << formula << ": " << (holds() ? "holds" : "FAILS") << " at " << rows.size() - mismatches() << "/" << rows.size()
     << " points\n";
  for (const auto& c : rows) {
    os << "  " << c.point << ": lhs " << (c.lhs ? "in" : "out") << ", rhs " << (c.rhs ? "in" : "out")
       << (c.lhs == c.rhs ? "" : "  <-- mismatch") << "\n";
  }
  return os.str();
}

FormulaReport verify_tensor_formula(const ModuleRep& m, const ModuleRep& n, unsigned e_max, std::uint64_t budget) {
  const auto mn = tensor(m, n);
  const auto pts = sample_points(m.spec(), e_max, budget);
  const auto vm = verdicts_on(m, pts, SampleModules::Mode::BaseChange);
  const auto vn = verdicts_on(n, pts, SampleModules::Mode::BaseChange);
  const auto vmn = verdicts_on(mn, pts, SampleModules::Mode::BaseChange);
  FormulaReport r;
  r.formula = "supp(M (x) N) = supp(M) & supp(N)";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    r.rows.push_back({pts[i].point.to_string() + " over " + pts[i].point.field()->name(), vmn[i], vm[i] && vn[i]});
  }
  const auto g = generic_point(m.spec());
  r.rows.push_back({"generic", in_support(mn, g), in_support(m, g) && in_support(n, g)});
  return r;
}

FormulaReport verify_hom_formula(const ModuleRep& m, const ModuleRep& n, unsigned e_max, std::uint64_t budget) {
  const auto h = hom(m, n);
  const auto pts = sample_points(m.spec(), e_max, budget);
  const bool finite_base = !m.field()->has_transcendentals();
  const auto co = finite_base ? SampleModules::Mode::Coinduce : SampleModules::Mode::BaseChange;
  const auto vm = verdicts_on(m, pts, SampleModules::Mode::BaseChange);
  const auto cn = verdicts_on(n, pts, co);
  const auto ch = verdicts_on(h, pts, co);
  FormulaReport r;
  r.formula = "cosupp(Hom(M, N)) = supp(M) & cosupp(N)";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    r.rows.push_back({pts[i].point.to_string() + " over " + pts[i].point.field()->name(), ch[i], vm[i] && cn[i]});
  }
  const auto g = generic_point(m.spec());
  r.rows.push_back({"generic", in_cosupport(h, g).in_cosupport, in_support(m, g) && in_cosupport(n, g).in_cosupport});
  return r;
}

bool JordanHomTable::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.ok; });
}

std::string JordanHomTable::to_string() const {
  std::ostringstream os;
  os << "Hom(J_u, J_v) over k[t]/(t^" << p << "):\n";
  for (const auto& e : entries) {
    os << "  u=" << e.u << " v=" << e.v << ": dim " << e.dim << ", free " << yes_no(e.is_free)
       << (e.ok ? "" : "  <-- unexpected") << "\n";
  }
  return os.str();
}

JordanHomTable verify_jordan_hom_table(unsigned p) {
  const auto spec = AlgebraSpec::uniform(p, 1, Flavor::Primitive);
  JordanHomTable t;
  t.p = p;
  for (unsigned u = 1; u <= p; ++u) {
    const auto ju = jordan_block_module(spec, u);
    for (unsigned v = 1; v <= p; ++v) {
      const auto h = hom(ju, jordan_block_module(spec, v));
      JordanHomEntry e{u, v, h.dim(), is_free(h), false};
      e.ok = e.dim == static_cast<std::size_t>(u) * v && e.is_free == (u == p || v == p);
      t.entries.push_back(e);
    }
  }
  return t;
}

}  // namespace pisupp
