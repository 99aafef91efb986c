#pragma once

// Small oracles shared by the unit tests. They work on plain integer matrices over a prime
// field and never call into the library's linear algebra.

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <vector>

#include "pisupp/error.hpp"
#include "pisupp/groupalg.hpp"

namespace testutil {

using IntMat = std::vector<std::vector<long>>;

inline pisupp::ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const pisupp::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return pisupp::ErrorKind::InvalidArgument;
}

inline long mod(long a, long p) { return ((a % p) + p) % p; }

inline long inv_mod(long a, long p) {
  long r = 1, b = mod(a, p), e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

/// Gaussian elimination mod p on a copy.
inline std::size_t rank_mod(IntMat a, long p) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && mod(a[piv][c], p) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const long iv = inv_mod(a[rank][c], p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || mod(a[r][c], p) == 0) continue;
      const long f = mod(a[r][c], p) * iv % p;
      for (std::size_t k = c; k < cols; ++k) a[r][k] = mod(a[r][k] - f * a[rank][k], p);
    }
    ++rank;
  }
  return rank;
}

inline IntMat mul_mod(const IntMat& a, const IntMat& b, long p) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  IntMat c(n, std::vector<long>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t)
      if (a[i][t])
        for (std::size_t j = 0; j < m; ++j) c[i][j] = (c[i][j] + a[i][t] * b[t][j]) % p;
  return c;
}

/// Jordan type of a nilpotent matrix from dim ker T^j (number of blocks of size >= j is
/// rank T^{j-1} - rank T^j).
inline std::vector<unsigned> jordan_oracle(const IntMat& t, long p) {
  const std::size_t n = t.size();
  std::vector<std::size_t> ranks{n};
  IntMat pw = t;
  while (ranks.back() > 0) {
    ranks.push_back(rank_mod(pw, p));
    pw = mul_mod(pw, t, p);
  }
  std::vector<unsigned> parts;
  for (std::size_t j = ranks.size() - 1; j >= 1; --j) {
    const std::size_t at_least_j = ranks[j - 1] - ranks[j];
    const std::size_t at_least_j1 = j + 1 < ranks.size() ? ranks[j] - ranks[j + 1] : 0;
    for (std::size_t c = 0; c < at_least_j - at_least_j1; ++c) parts.push_back(static_cast<unsigned>(j));
  }
  return parts;
}

/// Entries of a matrix over a prime field as integers.
inline IntMat to_int(const pisupp::Matrix& m) {
  IntMat out(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = static_cast<long>(m.code(i, j));
  return out;
}

/// Multiplication by sum_e c_e z^e on k[z_1..z_r]/(z_i^p) in the monomial basis, computed by
/// multiplying monomials directly. `terms` maps exponent vectors to coefficients mod p.
inline IntMat regular_multiplication(unsigned p, unsigned r, const std::map<std::vector<unsigned>, long>& terms) {
  std::size_t n = 1;
  for (unsigned i = 0; i < r; ++i) n *= p;
  auto index = [&](const std::vector<unsigned>& e) {
    std::size_t idx = 0;
    for (unsigned i = 0; i < r; ++i) idx = idx * p + e[i];
    return idx;
  };
  IntMat m(n, std::vector<long>(n, 0));
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<unsigned> e(r);
    std::size_t rest = col;
    for (unsigned i = r; i-- > 0;) {
      e[i] = static_cast<unsigned>(rest % p);
      rest /= p;
    }
    for (const auto& [te, c] : terms) {
      std::vector<unsigned> prod(r);
      bool vanishes = false;
      for (unsigned i = 0; i < r; ++i) {
        prod[i] = e[i] + te[i];
        vanishes = vanishes || prod[i] >= p;
      }
      if (!vanishes) m[index(prod)][col] = mod(m[index(prod)][col] + c, p);
    }
  }
  return m;
}

/// Truncated Klein module over F_2 as integer matrices: x u_i = v_i, y u_i = v_{i-1}.
inline std::pair<IntMat, IntMat> klein_oracle(unsigned n) {
  IntMat x(2 * n, std::vector<long>(2 * n, 0)), y = x;
  for (unsigned i = 0; i < n; ++i) {
    x[n + i][i] = 1;
    if (i > 0) y[n + i - 1][i] = 1;
  }
  return {x, y};
}

}  // namespace testutil
