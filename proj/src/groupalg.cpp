#include <sstream>

#include "pisupp/groupalg.hpp"

namespace pisupp {

namespace {

std::size_t ipow(std::size_t b, unsigned e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

void require_same_spec(const ModuleRep& m, const ModuleRep& n, const char* op) {
  if (!(m.spec() == n.spec())) {
    throw Error(ErrorKind::SpecMismatch,
                std::string(op) + ": modules over " + m.spec().to_string() + " and " + n.spec().to_string());
  }
}

std::string derived_name(const char* op, const ModuleRep& m, const ModuleRep* n = nullptr) {
  if (m.name().empty() || (n && n->name().empty())) return {};
  return std::string(op) + "(" + m.name() + (n ? "," + n->name() : "") + ")";
}

}  // namespace

const char* to_string(Flavor f) noexcept { return f == Flavor::Group ? "group" : "primitive"; }

Flavor flavor_from_string(const std::string& s) {
  if (s == "group") return Flavor::Group;
  if (s == "primitive") return Flavor::Primitive;
  throw Error(ErrorKind::InvalidArgument, "unknown flavor '" + s + "' (expected group or primitive)");
}

AlgebraSpec AlgebraSpec::uniform(unsigned p, unsigned r, Flavor flavor, Field base) {
  if (!base) base = FieldDescriptor::prime(p);
  if (r == 0) throw Error(ErrorKind::InvalidArgument, "an algebra needs at least one generator");
  if (base->characteristic() != p) throw Error(ErrorKind::InvalidArgument, "base field characteristic differs from p");
  return AlgebraSpec{p, r, std::vector<Flavor>(r, flavor), std::move(base)};
}

AlgebraSpec AlgebraSpec::over(Field field) const {
  AlgebraSpec s = *this;
  s.base = std::move(field);
  return s;
}

std::string AlgebraSpec::to_string() const {
  std::ostringstream os;
  os << "A(p=" << p << ", r=" << r << ", flavors=";
  for (std::size_t i = 0; i < flavors.size(); ++i) os << (i ? "," : "") << pisupp::to_string(flavors[i]);
  os << ", base=" << (base ? base->name() : "?") << ")";
  return os.str();
}

ValidationReport validate(const AlgebraSpec& spec, const std::vector<Matrix>& actions) {
  ValidationReport rep;
  auto fail = [&](ValidationReport::Kind k, std::size_t i, std::size_t j, std::string msg) {
    rep.kind = k;
    rep.first = i;
    rep.second = j;
    rep.message = std::move(msg);
    return rep;
  };
  if (spec.flavors.size() != spec.r || actions.size() != spec.r) {
    return fail(ValidationReport::Kind::Shape, 0, 0,
                "expected " + std::to_string(spec.r) + " generator matrices, got " + std::to_string(actions.size()));
  }
  if (!spec.base || spec.base->characteristic() != spec.p) {
    return fail(ValidationReport::Kind::Shape, 0, 0, "base field characteristic differs from p");
  }
  const std::size_t n = actions.empty() ? 0 : actions[0].rows();
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i].rows() != n || actions[i].cols() != n || actions[i].field() != spec.base) {
      return fail(ValidationReport::Kind::Shape, i, i,
                  "generator " + std::to_string(i + 1) + " is not an n x n matrix over " + spec.base->name());
    }
  }
  for (std::size_t i = 0; i < actions.size(); ++i) {
    for (std::size_t j = i + 1; j < actions.size(); ++j) {
      if (!(actions[i] * actions[j] == actions[j] * actions[i])) {
        return fail(ValidationReport::Kind::Commutativity, i, j,
                    "commutativity fails for pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    }
  }
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (!actions[i].power(spec.p).is_zero()) {
      return fail(ValidationReport::Kind::Nilpotence, i, i,
                  "nilpotence fails: z" + std::to_string(i + 1) + "^" + std::to_string(spec.p) + " != 0");
    }
  }
  return rep;
}

ModuleRep::ModuleRep(AlgebraSpec spec, std::vector<Matrix> actions, std::string name)
    : spec_(std::move(spec)), dim_(actions.empty() ? 0 : actions[0].rows()), actions_(std::move(actions)), name_(std::move(name)) {
  const auto rep = validate(spec_, actions_);
  if (!rep.ok()) throw Error(ErrorKind::ValidationError, rep.message);
}

ModuleRep::ModuleRep(Trusted, AlgebraSpec spec, std::vector<Matrix> actions, std::string name)
    : spec_(std::move(spec)), dim_(actions.empty() ? 0 : actions[0].rows()), actions_(std::move(actions)), name_(std::move(name)) {
  bool shapes = actions_.size() == spec_.r;
  for (const auto& z : actions_) shapes = shapes && z.rows() == dim_ && z.cols() == dim_ && z.field() == spec_.base;
  if (!shapes) throw Error(ErrorKind::ValidationError, "generator matrices do not match the algebra");
}

ModuleRep ModuleRep::constructed(AlgebraSpec spec, std::vector<Matrix> actions, std::string name) {
  return ModuleRep(Trusted{}, std::move(spec), std::move(actions), std::move(name));
}

ModuleRep ModuleRep::renamed(std::string name) const {
  ModuleRep m = *this;
  m.name_ = std::move(name);
  return m;
}

ModuleRep free_module(const AlgebraSpec& spec, std::size_t g) {
  const std::size_t block = ipow(spec.p, spec.r);
  const std::size_t n = g * block;
  const auto one = FieldElement::one(spec.base);
  std::vector<Matrix> z;
  for (unsigned i = 0; i < spec.r; ++i) {
    Matrix m(spec.base, n, n);
    const std::size_t stride = ipow(spec.p, spec.r - 1 - i);  // weight of e_i
    for (std::size_t copy = 0; copy < g; ++copy) {
      for (std::size_t idx = 0; idx < block; ++idx) {
        if ((idx / stride) % spec.p + 1 == spec.p) continue;
        const std::size_t col = copy * block + idx;
        if (m.is_finite()) {
          m.set_code(col + stride, col, 1);
        } else {
          m.set(col + stride, col, one);
        }
      }
    }
    z.push_back(std::move(m));
  }
  return ModuleRep::constructed(spec, std::move(z), "free:" + std::to_string(g));
}

ModuleRep trivial_module(const AlgebraSpec& spec) {
  return ModuleRep(spec, std::vector<Matrix>(spec.r, Matrix(spec.base, 1, 1)), "trivial");
}

ModuleRep jordan_block_module(const AlgebraSpec& spec, unsigned u) {
  if (spec.r != 1) throw Error(ErrorKind::InvalidArgument, "Jordan block modules need r = 1");
  if (u == 0) throw Error(ErrorKind::InvalidArgument, "Jordan block size must be positive");
  if (u > spec.p) {
    throw Error(ErrorKind::BlockTooBig, "block size " + std::to_string(u) + " exceeds p = " + std::to_string(spec.p));
  }
  Matrix t(spec.base, u, u);
  for (unsigned j = 0; j + 1 < u; ++j) t.set(j + 1, j, FieldElement::one(spec.base));
  return ModuleRep(spec, {std::move(t)}, "jordan:" + std::to_string(u));
}

ModuleRep direct_sum(const ModuleRep& m, const ModuleRep& n) {
  require_same_spec(m, n, "direct_sum");
  std::vector<Matrix> z;
  for (unsigned i = 0; i < m.spec().r; ++i) z.push_back(block_diagonal(m.action(i), n.action(i)));
  std::string name = m.name().empty() || n.name().empty() ? "" : m.name() + "+" + n.name();
  return ModuleRep::constructed(m.spec(), std::move(z), std::move(name));
}

ModuleRep tensor(const ModuleRep& m, const ModuleRep& n) {
  require_same_spec(m, n, "tensor");
  const auto& f = m.field();
  const Matrix im = Matrix::identity(f, m.dim());
  const Matrix in = Matrix::identity(f, n.dim());
  std::vector<Matrix> z;
  for (unsigned i = 0; i < m.spec().r; ++i) {
    const auto& zm = m.action(i);
    const auto& zn = n.action(i);
    Matrix a = kron(zm, in) + kron(im, zn);
    if (m.spec().flavors[i] == Flavor::Group) a = a + kron(zm, zn);
    z.push_back(std::move(a));
  }
  return ModuleRep::constructed(m.spec(), std::move(z), derived_name("tensor", m, &n));
}

ModuleRep hom(const ModuleRep& m, const ModuleRep& n) {
  require_same_spec(m, n, "hom");
  const auto& f = m.field();
  const unsigned p = m.spec().p;
  const Matrix im = Matrix::identity(f, m.dim());
  const Matrix in = Matrix::identity(f, n.dim());
  const Matrix ihom = Matrix::identity(f, m.dim() * n.dim());
  // vec(A f B) = (A ⊗ B^T) vec(f) for row-major vec.
  std::vector<Matrix> z;
  for (unsigned i = 0; i < m.spec().r; ++i) {
    const auto& zm = m.action(i);
    const auto& zn = n.action(i);
    if (m.spec().flavors[i] == Flavor::Primitive) {
      z.push_back(kron(zn, im) - kron(in, zm.transpose()));
    } else {
      // f -> (1+z) f (1+z)^{p-1} - f, the antipode being (1+z)^{p-1} - 1
      const Matrix right = (im + zm).power(p - 1);
      z.push_back(kron(in + zn, right.transpose()) - ihom);
    }
  }
  return ModuleRep::constructed(m.spec(), std::move(z), derived_name("hom", m, &n));
}

ModuleRep dual(const ModuleRep& m) {
  auto d = hom(m, trivial_module(m.spec()));
  return d.renamed(m.name().empty() ? "" : "dual(" + m.name() + ")");
}

ModuleRep base_change(const ModuleRep& m, const Field& field) {
  if (field == m.field()) return m;
  if (!field->refines(*m.field())) {
    throw Error(ErrorKind::NotARefinement, field->name() + " does not refine " + m.field()->name());
  }
  std::vector<Matrix> z;
  for (const auto& a : m.actions()) z.push_back(a.embed(field));
  return ModuleRep::constructed(m.spec().over(field), std::move(z), m.name());
}

ModuleRep coinduced(const ModuleRep& m, const Field& field) {
  const auto& base = m.field();
  if (field == base) return m;
  if (field->num_variables() != base->num_variables() || !field->refines(*base)) {
    if (field->refines(*base)) {
      throw Error(ErrorKind::InfiniteExtension, field->name() + " is not a finite extension of " + base->name());
    }
    throw Error(ErrorKind::NotARefinement, field->name() + " does not refine " + base->name());
  }
  if (base->has_transcendentals()) {
    throw Error(ErrorKind::InfiniteExtension, "coinduction is implemented for finite base fields only");
  }
  const auto& kf = base->finite();
  const auto& bigf = field->finite();
  const FieldEmbedding emb(base->finite_ptr(), field->finite_ptr());
  const unsigned d = field->extension_degree() / base->extension_degree();
  const std::uint64_t q = kf.size();

  // Powers of the generator w of K form a basis of K over the base.
  std::vector<FiniteField::Elem> wpow(2 * d, 1);
  for (unsigned a = 1; a < 2 * d; ++a) wpow[a] = bigf.mul(wpow[a - 1], bigf.generator());
  auto trace = [&](FiniteField::Elem x) {
    FiniteField::Elem acc = 0, y = x;
    for (unsigned i = 0; i < d; ++i) {
      acc = bigf.add(acc, y);
      y = bigf.pow(y, q);
    }
    auto pre = emb.preimage(acc);
    if (!pre) throw std::logic_error("trace left the base field");
    return *pre;
  };

  // Gram matrix of the trace form; nondegenerate because the extension is separable.
  Matrix gram(base, d, d);
  Matrix tr(base, d, 1);
  for (unsigned a = 0; a < d; ++a) {
    tr.set_code(a, 0, trace(wpow[a]));
    for (unsigned b = 0; b < d; ++b) gram.set_code(a, b, trace(wpow[a + b]));
  }
  const Matrix gram_inv = inverse(gram);

  // With psi_j(x) = Tr(x) m_j, z_i psi_j = sum_l Z_{lj} Tr(x) m_l. The K-coordinate c_l of
  // psi_l solves Tr(c_l w^a) = Z_{lj} Tr(w^a) for all a, i.e. c_l = sum_b gamma_b w^b with
  // Gram * gamma = Z_{lj} * tr.
  const Matrix unit_coords = gram_inv * tr;
  const std::size_t n = m.dim();
  std::vector<Matrix> z;
  for (const auto& zi : m.actions()) {
    Matrix out(field, n, n);
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto scalar = zi.code(l, j);
        if (scalar == 0) continue;
        FiniteField::Elem c = 0;
        for (unsigned b = 0; b < d; ++b) {
          const auto gamma = kf.mul(scalar, unit_coords.code(b, 0));
          c = bigf.add(c, bigf.mul(emb(gamma), wpow[b]));
        }
        out.set_code(l, j, c);
      }
    }
    z.push_back(std::move(out));
  }
  return ModuleRep(m.spec().over(field), std::move(z), m.name().empty() ? "" : "coind(" + m.name() + ")");
}

InvariantsInfo invariants(const ModuleRep& m) {
  InvariantsInfo info;
  info.basis = kernel_basis(vstack(m.actions()));
  info.dimension = info.basis.size();
  return info;
}

std::size_t radical_quotient_dim(const ModuleRep& m) {
  if (m.dim() == 0) return 0;
  return m.dim() - rank(hstack(m.actions()));
}

bool is_free(const ModuleRep& m) {
  return m.dim() == ipow(m.spec().p, m.spec().r) * radical_quotient_dim(m);
}

}  // namespace pisupp
