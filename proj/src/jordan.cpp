#include <algorithm>
#include <sstream>

#include "pisupp/linalg.hpp"
#include "specialize.hpp"

namespace pisupp {

namespace {

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  return c;
}

void require_square(const Matrix& t) {
  if (!t.is_square()) throw Error(ErrorKind::DimensionMismatch, "operator matrix must be square");
}

[[noreturn]] void not_nilpotent(unsigned p) {
  throw Error(ErrorKind::NotPNilpotent, "operator does not satisfy T^" + std::to_string(p) + " = 0");
}

// Upper bound for rank(T^j) when T^p = 0 on an n-dimensional space.
std::size_t power_rank_bound(std::size_t n, unsigned p, unsigned j) { return n * (p - j) / p; }

JordanType partition_from_ranks(const std::vector<std::size_t>& ranks, unsigned p) {
  // ranks[j] = rank(T^j), j = 0..p; #parts >= j equals ranks[j-1] - ranks[j].
  JordanType jt;
  jt.cap = p;
  for (unsigned size = p; size >= 1; --size) {
    const std::size_t at_least = ranks[size - 1] - ranks[size];
    const std::size_t at_least_next = size < p ? ranks[size] - ranks[size + 1] : 0;
    for (std::size_t k = 0; k < at_least - at_least_next; ++k) jt.parts.push_back(size);
  }
  return jt;
}

// Transcendental case: everything is decided on specializations of the cleared matrix.
void check_nilpotent_generic(const Matrix& cleared, unsigned p) {
  const unsigned d = detail::max_entry_degree(cleared);
  detail::Specializer grid(cleared, p * d);
  if (!grid.feasible()) {
    if (!cleared.power(p).is_zero()) not_nilpotent(p);
    return;
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!grid.at(k).power(p).is_zero()) not_nilpotent(p);
  }
}

}  // namespace

MinorIterator::MinorIterator(const Matrix& a, std::size_t size) : nrows_(a.rows()), ncols_(a.cols()), size_(size) {
  if (size == 0) throw Error(ErrorKind::InvalidArgument, "minor size must be positive");
  if (size > std::min(nrows_, ncols_)) throw Error(ErrorKind::InvalidArgument, "minor size exceeds matrix dimensions");
  entries_.reserve(nrows_ * ncols_);
  for (std::size_t i = 0; i < nrows_; ++i) {
    for (std::size_t j = 0; j < ncols_; ++j) {
      auto x = a.at(i, j);
      if (!x.is_polynomial()) {
        throw Error(ErrorKind::NonPolynomialEntry, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                       ") = " + x.to_string() + " is not a polynomial");
      }
      entries_.push_back(x.numerator());
    }
  }
}

std::optional<Polynomial> MinorIterator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    rows_ = first_combination(size_);
    cols_ = first_combination(size_);
  } else if (!next_combination(cols_, ncols_)) {
    if (!next_combination(rows_, nrows_)) {
      done_ = true;
      return std::nullopt;
    }
    cols_ = first_combination(size_);
  }
  std::vector<Polynomial> sub;
  sub.reserve(size_ * size_);
  for (auto i : rows_)
    for (auto j : cols_) sub.push_back(entries_[i * ncols_ + j]);
  return determinant_fraction_free(std::move(sub), size_);
}

unsigned JordanType::dimension() const {
  unsigned d = 0;
  for (auto x : parts) d += x;
  return d;
}

bool JordanType::is_full() const {
  return std::all_of(parts.begin(), parts.end(), [this](unsigned x) { return x == cap; });
}

std::string JordanType::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
  os << "]";
  return os.str();
}

JordanType jordan_type(const Matrix& t, unsigned p) {
  require_square(t);
  if (p < 2) throw Error(ErrorKind::InvalidArgument, "nilpotency index must be at least 2");
  const std::size_t n = t.rows();
  std::vector<std::size_t> ranks(p + 1, 0);
  ranks[0] = n;
  if (t.is_finite()) {
    Matrix pw = t;
    for (unsigned j = 1; j <= p; ++j) {
      ranks[j] = rank(pw);
      if (j < p) pw = pw * t;
    }
    if (ranks[p] != 0) not_nilpotent(p);
    return partition_from_ranks(ranks, p);
  }

  const Matrix cleared = detail::clear_denominators(t);
  check_nilpotent_generic(cleared, p);
  const unsigned d = detail::max_entry_degree(cleared);
  std::size_t bound = 0;
  for (unsigned j = 1; j < p; ++j) bound = std::max(bound, power_rank_bound(n, p, j) * j * d);
  detail::Specializer grid(cleared, static_cast<unsigned>(bound));
  if (!grid.feasible()) {
    Matrix pw = cleared;
    for (unsigned j = 1; j < p; ++j) {
      ranks[j] = rank(pw);
      pw = pw * cleared;
    }
    return partition_from_ranks(ranks, p);
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Matrix s = grid.at(k);
    Matrix pw = s;
    bool saturated = true;
    for (unsigned j = 1; j < p; ++j) {
      ranks[j] = std::max(ranks[j], rank(pw));
      saturated = saturated && ranks[j] == power_rank_bound(n, p, j);
      pw = pw * s;
    }
    if (saturated) break;
  }
  return partition_from_ranks(ranks, p);
}

bool is_full(const Matrix& t, unsigned p) {
  require_square(t);
  if (p < 2) throw Error(ErrorKind::InvalidArgument, "nilpotency index must be at least 2");
  const std::size_t n = t.rows();
  if (t.is_finite()) {
    const Matrix top = t.power(p - 1);
    if (!(top * t).is_zero()) not_nilpotent(p);
    return n % p == 0 && rank(top) == n / p;
  }
  const Matrix cleared = detail::clear_denominators(t);
  check_nilpotent_generic(cleared, p);
  if (n % p != 0) return false;
  const unsigned bound = static_cast<unsigned>(n / p) * (p - 1) * detail::max_entry_degree(cleared);
  detail::Specializer grid(cleared, bound);
  if (!grid.feasible()) return rank_at_least(cleared.power(p - 1), n / p);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (rank(grid.at(k).power(p - 1)) == n / p) return true;
  }
  return false;
}

}  // namespace pisupp
