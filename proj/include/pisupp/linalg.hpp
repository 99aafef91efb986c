#pragma once

// Exact dense linear algebra over any FieldDescriptor.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pisupp/exactfield.hpp"

namespace pisupp {

/// Dense row-major matrix over a field of the tower. Matrices over finite fields store raw
/// encoded elements; matrices over fields with transcendentals store FieldElements.
class Matrix {
 public:
  using Elem = FiniteField::Elem;

  Matrix(Field field, std::size_t rows, std::size_t cols);
  static Matrix identity(Field field, std::size_t n);
  static Matrix from_ints(Field field, const std::vector<std::vector<std::int64_t>>& rows);
  static Matrix from_rows(Field field, const std::vector<std::vector<FieldElement>>& rows);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  /// True when the entries are stored as raw finite-field codes.
  bool is_finite() const noexcept { return !field_->has_transcendentals(); }

  FieldElement at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const FieldElement& x);
  /// Raw access for matrices over finite fields.
  Elem code(std::size_t i, std::size_t j) const { return fin_[i * cols_ + j]; }
  void set_code(std::size_t i, std::size_t j, Elem c) { fin_[i * cols_ + j] = c; }

  bool is_zero() const;
  /// Every entry has denominator 1.
  bool is_polynomial() const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator-() const;
  Matrix scaled(const FieldElement& c) const;
  Matrix transpose() const;
  Matrix power(unsigned k) const;
  Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  /// Entries transported along the canonical inclusion. Errors: NotARefinement.
  Matrix embed(const Field& target) const;

  bool operator==(const Matrix& o) const;

  std::string to_string() const;

 private:
  void check_compatible(const Matrix& o, const char* what) const;

  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> fin_;
  std::vector<FieldElement> gen_;

  friend Matrix kron(const Matrix& a, const Matrix& b);
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const Matrix& a, const Matrix& b);
Matrix hstack(const std::vector<Matrix>& blocks);
Matrix vstack(const std::vector<Matrix>& blocks);

/// Exact rank. Gaussian elimination over finite fields; fraction-free (Bareiss) elimination on
/// the denominator-cleared polynomial matrix when transcendentals are present.
std::size_t rank(const Matrix& a);
/// Gaussian elimination with field division in every case (rational-function arithmetic when
/// transcendentals are present). Independent route used to cross-check `rank`.
std::size_t rank_fraction_based(const Matrix& a);
/// Decides rank(a) >= target. With transcendentals this specializes the variables at the
/// points of a grid S^m inside a finite extension, |S| exceeding the degree of every
/// target-sized minor, so the answer is exact.
bool rank_at_least(const Matrix& a, std::size_t target);

/// Basis of the right null space, one n x 1 column per vector.
std::vector<Matrix> kernel_basis(const Matrix& a);

/// Inverse of a square matrix. Errors: DivisionByZero when singular.
Matrix inverse(const Matrix& a);

/// Determinant of a square polynomial matrix by fraction-free elimination.
Polynomial determinant_fraction_free(std::vector<Polynomial> entries, std::size_t n);

/// Lazily enumerates the size x size minors of a polynomial matrix, ordered
/// lexicographically by (row set, column set). Single consumer.
class MinorIterator {
 public:
  /// Errors: NonPolynomialEntry, InvalidArgument (size too large).
  MinorIterator(const Matrix& a, std::size_t size);

  /// Next minor, or std::nullopt when exhausted.
  std::optional<Polynomial> next();
  const std::vector<std::size_t>& current_rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& current_cols() const noexcept { return cols_; }

 private:
  std::vector<Polynomial> entries_;
  std::size_t nrows_;
  std::size_t ncols_;
  std::size_t size_;
  std::vector<std::size_t> rows_;
  std::vector<std::size_t> cols_;
  bool started_ = false;
  bool done_ = false;
};

inline MinorIterator minors(const Matrix& a, std::size_t size) { return MinorIterator(a, size); }

/// Partition of a dimension into Jordan block sizes, each at most `cap`.
struct JordanType {
  std::vector<unsigned> parts;  // weakly decreasing
  unsigned cap = 0;

  unsigned dimension() const;
  /// Every part equals the cap (a free k[t]/(t^cap)-module).
  bool is_full() const;
  std::string to_string() const;
  bool operator==(const JordanType&) const = default;
};

/// Jordan type of a p-nilpotent operator from the rank chain of its powers.
/// Errors: DimensionMismatch (not square), NotPNilpotent.
JordanType jordan_type(const Matrix& t, unsigned p);
/// True iff p divides n and rank(T^{p-1}) = n/p. Errors as jordan_type.
bool is_full(const Matrix& t, unsigned p);

}  // namespace pisupp
