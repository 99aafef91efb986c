#include <limits>

#include "pisupp/random_module.hpp"

namespace pisupp {

namespace {

std::size_t ipow(std::size_t b, unsigned e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

bool in_span(const std::vector<Matrix>& basis, const Matrix& v) {
  if (v.is_zero()) return true;
  if (basis.empty()) return false;
  auto cols = basis;
  cols.push_back(v);
  return rank(hstack(cols)) == basis.size();
}

}  // namespace

std::uint64_t RandomModules::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound);
  std::uint64_t x;
  do {
    x = rng_();
  } while (x >= limit);
  return x % bound;
}

Matrix RandomModules::invertible(const Field& field, std::size_t n) {
  const auto& ff = field->finite();
  for (;;) {
    Matrix s(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s.set_code(i, j, element(ff));
    if (rank(s) == n) return s;
  }
}

std::vector<Flavor> RandomModules::flavors(unsigned r) {
  std::vector<Flavor> out;
  for (unsigned i = 0; i < r; ++i) out.push_back(coin() ? Flavor::Group : Flavor::Primitive);
  return out;
}

ModuleRep RandomModules::conjugated(const ModuleRep& m) {
  if (m.dim() == 0) return m;
  const auto s = invertible(m.field(), m.dim());
  const auto si = inverse(s);
  std::vector<Matrix> z;
  for (const auto& a : m.actions()) z.push_back(s * a * si);
  return ModuleRep(m.spec(), std::move(z), m.name());
}

ModuleRep RandomModules::polynomial_family(const AlgebraSpec& spec, std::size_t n) {
  const auto& f = spec.base;
  Matrix j(f, n, n);
  for (std::size_t pos = 0; pos < n;) {
    const std::size_t u = std::min<std::size_t>(n - pos, 1 + below(spec.p));
    for (std::size_t k = 0; k + 1 < u; ++k) j.set_code(pos + k + 1, pos + k, 1);
    pos += u;
  }
  const Matrix t = conjugated(ModuleRep(AlgebraSpec::uniform(spec.p, 1, Flavor::Group, f), {j})).action(0);
  std::vector<Matrix> z;
  for (unsigned i = 0; i < spec.r; ++i) {
    Matrix acc(f, n, n);
    Matrix pw = t;
    for (unsigned d = 1; d < spec.p; ++d) {
      acc = acc + pw.scaled(FieldElement::from_finite(f, element(f->finite())));
      pw = pw * t;
    }
    z.push_back(std::move(acc));
  }
  return ModuleRep(spec, std::move(z), "random-polynomial");
}

ModuleRep RandomModules::quotient_family(const AlgebraSpec& spec, std::size_t max_dim) {
  const auto regular = free_module(spec, 1);
  const auto& f = spec.base;
  const std::size_t n = regular.dim();
  Matrix one(f, n, 1);
  one.set_code(0, 0, 1);
  std::vector<Matrix> gens;
  const std::size_t count = 1 + below(2);
  for (std::size_t g = 0; g < count; ++g) {
    Matrix ell(f, n, n);
    bool nonzero = false;
    for (unsigned i = 0; i < spec.r; ++i) {
      const auto c = element(f->finite());
      nonzero = nonzero || c != 0;
      ell = ell + regular.action(i).scaled(FieldElement::from_finite(f, c));
    }
    if (!nonzero) ell = regular.action(0);
    gens.push_back(ell.power(1 + static_cast<unsigned>(below(spec.p - 1))) * one);
  }
  auto q = quotient_module(regular, gens);
  if (q.dim() == 0 || q.dim() > max_dim) return polynomial_family(spec, 1 + below(max_dim));
  return conjugated(q).renamed("random-quotient");
}

ModuleRep RandomModules::projective(const AlgebraSpec& spec, std::size_t max_dim) {
  const std::size_t block = ipow(spec.p, spec.r);
  const std::size_t g = 1 + below(std::max<std::size_t>(1, max_dim / block));
  return conjugated(free_module(spec, g)).renamed("random-free");
}

ModuleRep RandomModules::module(const AlgebraSpec& spec, std::size_t max_dim) {
  if (max_dim == 0) throw Error(ErrorKind::InvalidArgument, "max_dim must be positive");
  const std::size_t block = ipow(spec.p, spec.r);
  const auto pick = below(100);
  if (pick < 30 || max_dim < 2) return polynomial_family(spec, 1 + below(max_dim));
  if (pick < 55) return quotient_family(spec, max_dim);
  if (pick < 75) {
    if (block <= max_dim) return projective(spec, max_dim);
    return polynomial_family(spec, 1 + below(max_dim));
  }
  if (pick < 88 && block < max_dim) {
    auto x = module(spec, max_dim - block);
    const std::size_t room = (max_dim - x.dim()) / block;
    auto sum = direct_sum(x, free_module(spec, 1 + below(std::max<std::size_t>(1, room))));
    if (sum.dim() > max_dim) return x;
    return conjugated(sum).renamed("random-plus-free");
  }
  const std::size_t left = 1 + below(max_dim - 1);
  auto a = module(spec, left);
  auto b = module(spec, max_dim - a.dim());
  return conjugated(direct_sum(a, b)).renamed("random-sum");
}

ModuleRep quotient_module(const ModuleRep& m, const std::vector<Matrix>& generators) {
  const auto& f = m.field();
  const std::size_t n = m.dim();
  std::vector<Matrix> basis;
  std::vector<Matrix> queue = generators;
  while (!queue.empty()) {
    auto v = std::move(queue.back());
    queue.pop_back();
    if (in_span(basis, v)) continue;
    basis.push_back(v);
    for (const auto& z : m.actions()) queue.push_back(z * v);
  }
  const std::size_t k = basis.size();
  std::vector<Matrix> cols = basis;
  for (std::size_t j = 0; j < n && cols.size() < n; ++j) {
    Matrix e(f, n, 1);
    e.set(j, 0, FieldElement::one(f));
    if (!in_span(cols, e)) cols.push_back(std::move(e));
  }
  const Matrix b = hstack(cols);
  const Matrix bi = inverse(b);
  std::vector<std::size_t> rest;
  for (std::size_t j = k; j < n; ++j) rest.push_back(j);
  std::vector<Matrix> z;
  for (const auto& a : m.actions()) z.push_back((bi * a * b).submatrix(rest, rest));
  return ModuleRep(m.spec(), std::move(z), m.name().empty() ? "" : m.name() + "/sub");
}

}  // namespace pisupp
