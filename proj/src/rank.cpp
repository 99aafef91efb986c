#include <algorithm>
#include <stdexcept>

#include "pisupp/linalg.hpp"
#include "specialize.hpp"

namespace pisupp {

namespace {

struct FiniteOps {
  using T = FiniteField::Elem;
  const FiniteField& f;
  bool is_zero(T a) const { return a == 0; }
  T zero() const { return 0; }
  T one() const { return 1; }
  T sub(T a, T b) const { return f.sub(a, b); }
  T mul(T a, T b) const { return f.mul(a, b); }
  T neg(T a) const { return f.neg(a); }
  T inv(T a) const { return f.inv(a); }
};

struct GenericOps {
  using T = FieldElement;
  Field field;
  bool is_zero(const T& a) const { return a.is_zero(); }
  T zero() const { return FieldElement::zero(field); }
  T one() const { return FieldElement::one(field); }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  T inv(const T& a) const { return a.inverse(); }
};

// Row echelon form in place; with `reduced`, pivots are scaled to one and cleared above too.
// Pivot choice is the first nonzero entry at or below the current row. Returns pivot columns.
template <class Ops>
std::vector<std::size_t> row_reduce(const Ops& ops, std::vector<typename Ops::T>& a, std::size_t rows, std::size_t cols,
                                    bool reduced) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (!ops.is_zero(a[i * cols + c])) {
        piv = i;
        break;
      }
    }
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    }
    const auto inv = ops.inv(a[r * cols + c]);
    if (reduced) {
      for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = ops.mul(a[r * cols + j], inv);
    }
    for (std::size_t i = reduced ? 0 : r + 1; i < rows; ++i) {
      if (i == r || ops.is_zero(a[i * cols + c])) continue;
      const auto factor = reduced ? a[i * cols + c] : ops.mul(a[i * cols + c], inv);
      for (std::size_t j = c; j < cols; ++j) {
        if (!ops.is_zero(a[r * cols + j])) a[i * cols + j] = ops.sub(a[i * cols + j], ops.mul(factor, a[r * cols + j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<FiniteField::Elem> finite_entries(const Matrix& a) {
  std::vector<FiniteField::Elem> out(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i * a.cols() + j] = a.code(i, j);
  return out;
}

std::vector<FieldElement> generic_entries(const Matrix& a) {
  std::vector<FieldElement> out;
  out.reserve(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.push_back(a.at(i, j));
  return out;
}

Polynomial exact(const Polynomial& num, const Polynomial& den) {
  auto q = num.exact_divide(den);
  if (!q) throw std::logic_error("fraction-free elimination produced an inexact division");
  return std::move(*q);
}

// Fraction-free rank of a polynomial matrix (row-major).
std::size_t bareiss_rank(std::vector<Polynomial> a, std::size_t rows, std::size_t cols, const Field& field) {
  Polynomial prev = Polynomial::constant(field, 1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (!a[i * cols + c].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    }
    const Polynomial& p = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Polynomial lead = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        auto v = p * a[i * cols + j] - lead * a[r * cols + j];
        a[i * cols + j] = prev.is_one() ? std::move(v) : exact(v, prev);
      }
      a[i * cols + c] = Polynomial(field);
    }
    prev = p;
    ++r;
  }
  return r;
}

std::vector<Polynomial> numerators(const Matrix& a) {
  std::vector<Polynomial> out;
  out.reserve(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.push_back(a.at(i, j).numerator());
  return out;
}

}  // namespace

namespace detail {

Matrix clear_row_denominators(const Matrix& a) {
  if (a.is_polynomial()) return a;
  Matrix out(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<Polynomial> dens;
    Polynomial prod = Polynomial::constant(a.field(), 1);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Polynomial d = a.at(i, j).denominator();
      if (d.is_one() || std::find(dens.begin(), dens.end(), d) != dens.end()) continue;
      dens.push_back(d);
      prod = prod * d;
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto x = a.at(i, j);
      out.set(i, j, FieldElement::from_polynomial(x.numerator() * exact(prod, x.denominator())));
    }
  }
  return out;
}

Matrix clear_denominators(const Matrix& a) {
  if (a.is_polynomial()) return a;
  std::vector<Polynomial> dens;
  Polynomial prod = Polynomial::constant(a.field(), 1);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Polynomial d = a.at(i, j).denominator();
      if (d.is_one() || std::find(dens.begin(), dens.end(), d) != dens.end()) continue;
      dens.push_back(d);
      prod = prod * d;
    }
  return a.scaled(FieldElement::from_polynomial(prod));
}

unsigned max_entry_degree(const Matrix& a) {
  if (a.is_finite()) return 0;
  unsigned d = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, a.at(i, j).numerator().total_degree());
  return d;
}

Specializer::Specializer(const Matrix& m, unsigned degree_bound) : rows_(m.rows()), cols_(m.cols()) {
  if (!m.is_polynomial()) throw Error(ErrorKind::NonPolynomialEntry, "specialization needs polynomial entries");
  const auto& base = m.field();
  const std::uint64_t need = static_cast<std::uint64_t>(degree_bound) + 1;
  const std::uint64_t q = base->finite().size();
  unsigned e = 1;
  std::uint64_t size = q;
  while (size < need) {
    ++e;
    size *= q;
    if (base->extension_degree() * e > FieldDescriptor::kMaxExtensionDegree) return;
  }
  target_ = base->finite_part()->finite_extension(e);
  embedding_.emplace(base->finite_ptr(), target_->finite_ptr());
  grid_ = static_cast<std::size_t>(need);
  const auto nvars = base->num_variables();
  std::uint64_t pts = 1;
  for (std::size_t k = 0; k < nvars; ++k) {
    pts *= grid_;
    if (pts > kMaxPoints) return;
  }
  points_ = static_cast<std::size_t>(pts);
  entries_ = numerators(m);
  feasible_ = true;
}

Matrix Specializer::at(std::size_t index) const {
  const auto nvars = entries_.empty() ? 0 : entries_[0].num_variables();
  std::vector<FiniteField::Elem> point(nvars);
  for (std::size_t k = 0; k < nvars; ++k) {
    point[k] = static_cast<FiniteField::Elem>(index % grid_);
    index /= grid_;
  }
  Matrix out(target_, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.set_code(i, j, entries_[i * cols_ + j].evaluate(*embedding_, point));
  return out;
}

}  // namespace detail

std::size_t rank(const Matrix& a) {
  if (a.is_finite()) {
    auto e = finite_entries(a);
    return row_reduce(FiniteOps{a.field()->finite()}, e, a.rows(), a.cols(), false).size();
  }
  const auto cleared = detail::clear_row_denominators(a);
  return bareiss_rank(numerators(cleared), a.rows(), a.cols(), a.field());
}

std::size_t rank_fraction_based(const Matrix& a) {
  if (a.is_finite()) return rank(a);
  auto e = generic_entries(a);
  return row_reduce(GenericOps{a.field()}, e, a.rows(), a.cols(), false).size();
}

bool rank_at_least(const Matrix& a, std::size_t target) {
  if (target == 0) return true;
  if (target > std::min(a.rows(), a.cols())) return false;
  if (a.is_finite()) return rank(a) >= target;
  const auto cleared = detail::clear_row_denominators(a);
  const unsigned bound = static_cast<unsigned>(target) * detail::max_entry_degree(cleared);
  detail::Specializer grid(cleared, bound);
  if (!grid.feasible()) return rank(a) >= target;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (rank(grid.at(k)) >= target) return true;
  }
  return false;
}

std::vector<Matrix> kernel_basis(const Matrix& a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<Matrix> out;
  auto build = [&](const auto& ops, auto entries) {
    const auto pivots = row_reduce(ops, entries, rows, cols, true);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t f = 0; f < cols; ++f) {
      if (is_pivot[f]) continue;
      std::vector<typename std::decay_t<decltype(ops)>::T> v(cols, ops.zero());
      v[f] = ops.one();
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = ops.neg(entries[r * cols + f]);
      Matrix col(a.field(), cols, 1);
      for (std::size_t i = 0; i < cols; ++i) {
        if constexpr (std::is_same_v<std::decay_t<decltype(ops)>, FiniteOps>) {
          col.set_code(i, 0, v[i]);
        } else {
          col.set(i, 0, v[i]);
        }
      }
      out.push_back(std::move(col));
    }
  };
  if (a.is_finite()) {
    build(FiniteOps{a.field()->finite()}, finite_entries(a));
  } else {
    build(GenericOps{a.field()}, generic_entries(a));
  }
  return out;
}

Matrix inverse(const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  const Matrix aug = hstack({a, Matrix::identity(a.field(), n)});
  Matrix out(a.field(), n, n);
  auto solve = [&](const auto& ops, auto entries) {
    const auto pivots = row_reduce(ops, entries, n, 2 * n, true);
    if (pivots.size() < n || pivots[n - 1] >= n) throw Error(ErrorKind::DivisionByZero, "matrix is singular");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if constexpr (std::is_same_v<std::decay_t<decltype(ops)>, FiniteOps>) {
          out.set_code(i, j, entries[i * 2 * n + n + j]);
        } else {
          out.set(i, j, entries[i * 2 * n + n + j]);
        }
      }
  };
  if (a.is_finite()) {
    solve(FiniteOps{a.field()->finite()}, finite_entries(aug));
  } else {
    solve(GenericOps{a.field()}, generic_entries(aug));
  }
  return out;
}

Polynomial determinant_fraction_free(std::vector<Polynomial> a, std::size_t n) {
  if (a.size() != n * n) throw Error(ErrorKind::DimensionMismatch, "determinant needs n*n entries");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "determinant of an empty matrix");
  const Field field = a[0].field();
  Polynomial prev = Polynomial::constant(field, 1);
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i) {
      if (!a[i * n + k].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv == n) return Polynomial(field);
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[k * n + j]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        auto v = a[k * n + k] * a[i * n + j] - a[i * n + k] * a[k * n + j];
        a[i * n + j] = prev.is_one() ? std::move(v) : exact(v, prev);
      }
    }
    prev = a[k * n + k];
  }
  return negate ? -a[n * n - 1] : a[n * n - 1];
}

}  // namespace pisupp
