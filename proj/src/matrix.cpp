#include <sstream>

#include "pisupp/linalg.hpp"

namespace pisupp {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols) : field_(std::move(field)), rows_(rows), cols_(cols) {
  if (is_finite()) {
    fin_.assign(rows * cols, 0);
  } else {
    gen_.assign(rows * cols, FieldElement::zero(field_));
  }
}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m.is_finite()) {
      m.fin_[i * n + i] = 1;
    } else {
      m.gen_[i * n + i] = FieldElement::one(m.field_);
    }
  }
  return m;
}

Matrix Matrix::from_ints(Field field, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  Matrix m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, FieldElement::from_int(field, rows[i][j]));
  }
  return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<std::vector<FieldElement>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  Matrix m(std::move(field), r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

FieldElement Matrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw Error(ErrorKind::InvalidArgument, "matrix index out of range");
  if (is_finite()) return FieldElement::from_finite(field_, fin_[i * cols_ + j]);
  return gen_[i * cols_ + j];
}

void Matrix::set(std::size_t i, std::size_t j, const FieldElement& x) {
  if (i >= rows_ || j >= cols_) throw Error(ErrorKind::InvalidArgument, "matrix index out of range");
  if (x.field() != field_) {
    throw Error(ErrorKind::FieldMismatch, "entry over " + x.field()->name() + " in a matrix over " + field_->name());
  }
  if (is_finite()) {
    fin_[i * cols_ + j] = x.finite_value();
  } else {
    gen_[i * cols_ + j] = x;
  }
}

bool Matrix::is_zero() const {
  if (is_finite()) {
    for (auto c : fin_)
      if (c) return false;
    return true;
  }
  for (const auto& x : gen_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_polynomial() const {
  if (is_finite()) return true;
  for (const auto& x : gen_)
    if (!x.is_polynomial()) return false;
  return true;
}

void Matrix::check_compatible(const Matrix& o, const char* what) const {
  if (field_ != o.field_) {
    throw Error(ErrorKind::FieldMismatch, std::string(what) + ": matrices over " + field_->name() + " and " + o.field_->name());
  }
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_compatible(o, "addition");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "addition of differently sized matrices");
  Matrix out(field_, rows_, cols_);
  if (is_finite()) {
    const auto& ff = field_->finite();
    for (std::size_t k = 0; k < fin_.size(); ++k) out.fin_[k] = ff.add(fin_[k], o.fin_[k]);
  } else {
    for (std::size_t k = 0; k < gen_.size(); ++k) out.gen_[k] = gen_[k] + o.gen_[k];
  }
  return out;
}

Matrix Matrix::operator-() const {
  Matrix out(field_, rows_, cols_);
  if (is_finite()) {
    const auto& ff = field_->finite();
    for (std::size_t k = 0; k < fin_.size(); ++k) out.fin_[k] = ff.neg(fin_[k]);
  } else {
    for (std::size_t k = 0; k < gen_.size(); ++k) out.gen_[k] = -gen_[k];
  }
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::operator*(const Matrix& o) const {
  check_compatible(o, "multiplication");
  if (cols_ != o.rows_) throw Error(ErrorKind::DimensionMismatch, "inner dimensions differ in product");
  Matrix out(field_, rows_, o.cols_);
  if (is_finite()) {
    const auto& ff = field_->finite();
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const auto a = fin_[i * cols_ + k];
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const auto b = o.fin_[k * o.cols_ + j];
          if (b) out.fin_[i * o.cols_ + j] = ff.add(out.fin_[i * o.cols_ + j], ff.mul(a, b));
        }
      }
    }
  } else {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const auto& a = gen_[i * cols_ + k];
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const auto& b = o.gen_[k * o.cols_ + j];
          if (!b.is_zero()) out.gen_[i * o.cols_ + j] += a * b;
        }
      }
    }
  }
  return out;
}

Matrix Matrix::scaled(const FieldElement& c) const {
  if (c.field() != field_) throw Error(ErrorKind::FieldMismatch, "scalar from another field");
  Matrix out(field_, rows_, cols_);
  if (is_finite()) {
    const auto& ff = field_->finite();
    const auto v = c.finite_value();
    for (std::size_t k = 0; k < fin_.size(); ++k) out.fin_[k] = ff.mul(fin_[k], v);
  } else {
    for (std::size_t k = 0; k < gen_.size(); ++k) out.gen_[k] = gen_[k] * c;
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (is_finite()) {
        out.fin_[j * rows_ + i] = fin_[i * cols_ + j];
      } else {
        out.gen_[j * rows_ + i] = gen_[i * cols_ + j];
      }
    }
  }
  return out;
}

Matrix Matrix::power(unsigned k) const {
  if (!is_square()) throw Error(ErrorKind::DimensionMismatch, "power of a non-square matrix");
  Matrix out = identity(field_, rows_);
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  Matrix out(field_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (is_finite()) {
        out.fin_[i * cols.size() + j] = fin_[rows[i] * cols_ + cols[j]];
      } else {
        out.gen_[i * cols.size() + j] = gen_[rows[i] * cols_ + cols[j]];
      }
    }
  }
  return out;
}

Matrix Matrix::embed(const Field& target) const {
  if (target == field_) return *this;
  if (!target->refines(*field_)) {
    throw Error(ErrorKind::NotARefinement, target->name() + " does not refine " + field_->name());
  }
  Matrix out(target, rows_, cols_);
  if (is_finite() && out.is_finite()) {
    FieldEmbedding emb(field_->finite_ptr(), target->finite_ptr());
    for (std::size_t k = 0; k < fin_.size(); ++k) out.fin_[k] = emb(fin_[k]);
    return out;
  }
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.set(i, j, at(i, j).embed(target));
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  if (field_ != o.field_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
  if (is_finite()) return fin_ == o.fin_;
  for (std::size_t k = 0; k < gen_.size(); ++k)
    if (!(gen_[k] == o.gen_[k])) return false;
  return true;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << at(i, j).to_string();
    }
  }
  os << "]";
  return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  a.check_compatible(b, "kron");
  const std::size_t r = a.rows_ * b.rows_;
  const std::size_t c = a.cols_ * b.cols_;
  Matrix out(a.field_, r, c);
  const auto& ff = a.field_->finite();
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) {
      for (std::size_t k = 0; k < b.rows_; ++k) {
        for (std::size_t l = 0; l < b.cols_; ++l) {
          const std::size_t idx = (i * b.rows_ + k) * c + (j * b.cols_ + l);
          if (a.is_finite()) {
            out.fin_[idx] = ff.mul(a.fin_[i * a.cols_ + j], b.fin_[k * b.cols_ + l]);
          } else {
            out.gen_[idx] = a.gen_[i * a.cols_ + j] * b.gen_[k * b.cols_ + l];
          }
        }
      }
    }
  }
  return out;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) throw Error(ErrorKind::FieldMismatch, "block_diagonal over different fields");
  Matrix out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a.at(i, j));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out.set(a.rows() + i, a.cols() + j, b.at(i, j));
  return out;
}

Matrix hstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw Error(ErrorKind::InvalidArgument, "hstack of nothing");
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != blocks[0].rows()) throw Error(ErrorKind::DimensionMismatch, "hstack row counts differ");
    if (b.field() != blocks[0].field()) throw Error(ErrorKind::FieldMismatch, "hstack over different fields");
    cols += b.cols();
  }
  Matrix out(blocks[0].field(), blocks[0].rows(), cols);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b.is_finite()) {
          out.set_code(i, off + j, b.code(i, j));
        } else {
          out.set(i, off + j, b.at(i, j));
        }
      }
    off += b.cols();
  }
  return out;
}

Matrix vstack(const std::vector<Matrix>& blocks) {
  std::vector<Matrix> t;
  t.reserve(blocks.size());
  for (const auto& b : blocks) t.push_back(b.transpose());
  return hstack(t).transpose();
}

}  // namespace pisupp
