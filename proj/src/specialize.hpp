#pragma once

// Specialization of polynomial matrices at grid points (library-internal).

#include <cstddef>
#include <optional>
#include <vector>

#include "pisupp/linalg.hpp"

namespace pisupp::detail {

/// Multiplies each row by the product of its distinct denominators. Rank-preserving.
Matrix clear_row_denominators(const Matrix& a);
/// Multiplies the whole matrix by one common nonzero polynomial. Preserves rank of every power.
Matrix clear_denominators(const Matrix& a);
/// Largest total degree among the (polynomial) entries.
unsigned max_entry_degree(const Matrix& a);

/// Evaluates a polynomial matrix at the points of S^m, where S is a set of at least
/// degree_bound + 1 elements of a finite extension of the coefficient field. A nonzero
/// polynomial of total degree <= degree_bound cannot vanish on all of S^m.
class Specializer {
 public:
  static constexpr std::size_t kMaxPoints = 200000;

  Specializer(const Matrix& polynomial_matrix, unsigned degree_bound);

  /// False when no extension of degree <= 8 is large enough or the grid exceeds kMaxPoints.
  bool feasible() const noexcept { return feasible_; }
  std::size_t size() const noexcept { return points_; }
  const Field& target() const noexcept { return target_; }
  Matrix at(std::size_t index) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field target_;
  std::optional<FieldEmbedding> embedding_;
  std::size_t grid_ = 0;
  std::size_t points_ = 0;
  bool feasible_ = false;
  std::vector<Polynomial> entries_;
};

}  // namespace pisupp::detail
