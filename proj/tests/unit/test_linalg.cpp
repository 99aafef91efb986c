#include <gtest/gtest.h>

#include <random>

#include "pisupp/error.hpp"
#include "pisupp/linalg.hpp"

using namespace pisupp;

namespace {

Matrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng, double density = 0.6) {
  Matrix m(f, rows, cols);
  std::uniform_real_distribution<double> coin(0, 1);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (coin(rng) > density) continue;
      if (!f->has_transcendentals()) {
        m.set_code(i, j, static_cast<Matrix::Elem>(rng() % f->finite().size()));
      } else {
        auto x = FieldElement::from_int(f, static_cast<std::int64_t>(rng() % 3));
        for (std::size_t v = 0; v < f->num_variables(); ++v)
          if (rng() % 2) x = x * FieldElement::variable(f, v) + FieldElement::from_int(f, static_cast<std::int64_t>(rng() % 2));
        m.set(i, j, x);
      }
    }
  return m;
}

// Random low-rank matrix: product of rows x k and k x cols factors.
Matrix random_low_rank(const Field& f, std::size_t rows, std::size_t cols, std::size_t k, std::mt19937_64& rng) {
  return random_matrix(f, rows, k, rng) * random_matrix(f, k, cols, rng);
}

// Jordan type from the kernel chain: dim ker T^j counts boxes in the first j columns.
JordanType jordan_by_kernels(const Matrix& t, unsigned p) {
  std::vector<std::size_t> ker(p + 1, 0);
  Matrix pw = Matrix::identity(t.field(), t.rows());
  for (unsigned j = 1; j <= p; ++j) {
    pw = pw * t;
    ker[j] = kernel_basis(pw).size();
  }
  JordanType jt;
  jt.cap = p;
  // number of blocks of size exactly s = 2 ker[s] - ker[s-1] - ker[s+1]
  for (unsigned s = p; s >= 1; --s) {
    const std::size_t next = s < p ? ker[s + 1] : ker[p];
    const auto count = static_cast<long>(2 * ker[s]) - static_cast<long>(ker[s - 1]) - static_cast<long>(next);
    for (long c = 0; c < count; ++c) jt.parts.push_back(s);
  }
  return jt;
}

Matrix jordan_block(const Field& f, std::size_t u) {
  Matrix m(f, u, u);
  for (std::size_t i = 0; i + 1 < u; ++i) m.set(i + 1, i, FieldElement::one(f));
  return m;
}

// Random p-nilpotent matrix: conjugate of a block-diagonal Jordan matrix.
Matrix random_nilpotent(const Field& f, unsigned p, std::size_t n, std::mt19937_64& rng) {
  Matrix j(f, 0, 0);
  std::size_t left = n;
  while (left > 0) {
    const std::size_t u = std::min<std::size_t>(left, 1 + rng() % p);
    j = block_diagonal(j, jordan_block(f, u));
    left -= u;
  }
  for (;;) {
    auto s = random_matrix(f, n, n, rng, 0.8);
    if (rank(s) == n) return s * j * inverse(s);
  }
}

}  // namespace

TEST(Rank, Examples) {
  auto f2 = FieldDescriptor::prime(2);
  EXPECT_EQ(rank(Matrix(f2, 3, 3)), 0u);
  EXPECT_EQ(rank(Matrix::identity(FieldDescriptor::prime(3), 4)), 4u);
  auto f = f2->adjoin({"s"});
  auto s = FieldElement::variable(f, "s");
  auto one = FieldElement::one(f);
  auto m = Matrix::from_rows(f, {{one, s}, {s, s * s}});
  EXPECT_EQ(rank(m), 1u);
  EXPECT_EQ(rank_fraction_based(m), 1u);
}

TEST(Rank, FractionFreeMatchesFractionBased) {
  std::mt19937_64 rng(21);
  const std::vector<Field> fields = {
      FieldDescriptor::prime(2)->adjoin({"s"}),
      FieldDescriptor::prime(3)->adjoin({"s"}),
      FieldDescriptor::prime(2)->finite_extension(2)->adjoin({"s"}),
      FieldDescriptor::prime(5),
      FieldDescriptor::prime(2)->adjoin({"s", "u"}),
  };
  for (const auto& f : fields) {
    for (int t = 0; t < 25; ++t) {
      const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
      auto a = t % 2 ? random_matrix(f, r, c, rng) : random_low_rank(f, r, c, 1 + rng() % 3, rng);
      EXPECT_EQ(rank(a), rank_fraction_based(a)) << f->name() << "\n" << a.to_string();
    }
  }
}

TEST(Rank, RankAtLeastAgreesWithRank) {
  std::mt19937_64 rng(22);
  auto f = FieldDescriptor::prime(2)->adjoin({"s", "u"});
  for (int t = 0; t < 20; ++t) {
    auto a = random_low_rank(f, 4, 4, 1 + rng() % 3, rng);
    const auto rk = rank(a);
    EXPECT_TRUE(rank_at_least(a, rk));
    EXPECT_FALSE(rank_at_least(a, rk + 1));
  }
}

TEST(Kernel, Examples) {
  auto f2 = FieldDescriptor::prime(2);
  auto k = kernel_basis(Matrix(f2, 2, 2));
  ASSERT_EQ(k.size(), 2u);
  EXPECT_EQ(k[0], Matrix::from_ints(f2, {{1}, {0}}));
  EXPECT_EQ(k[1], Matrix::from_ints(f2, {{0}, {1}}));
  EXPECT_TRUE(kernel_basis(Matrix::identity(f2, 2)).empty());
  auto k2 = kernel_basis(Matrix::from_ints(f2, {{1, 1}, {1, 1}}));
  ASSERT_EQ(k2.size(), 1u);
  EXPECT_EQ(k2[0], Matrix::from_ints(f2, {{1}, {1}}));
}

TEST(Kernel, RandomProperties) {
  std::mt19937_64 rng(23);
  for (const auto& f : {FieldDescriptor::prime(3), FieldDescriptor::prime(2)->adjoin({"s"})}) {
    for (int t = 0; t < 20; ++t) {
      auto a = random_low_rank(f, 4, 5, 1 + rng() % 3, rng);
      auto ker = kernel_basis(a);
      EXPECT_EQ(ker.size(), a.cols() - rank(a));
      for (const auto& v : ker) EXPECT_TRUE((a * v).is_zero());
      if (!ker.empty()) EXPECT_EQ(rank(hstack(ker)), ker.size());
    }
  }
}

TEST(Inverse, RoundTrip) {
  std::mt19937_64 rng(24);
  auto f = FieldDescriptor::prime(3)->finite_extension(2);
  for (int t = 0; t < 20; ++t) {
    auto a = random_matrix(f, 4, 4, rng, 0.9);
    if (rank(a) < 4) {
      EXPECT_THROW(inverse(a), Error);
      continue;
    }
    EXPECT_EQ(a * inverse(a), Matrix::identity(f, 4));
  }
}

TEST(Minors, Examples) {
  auto f = FieldDescriptor::prime(2)->adjoin({"s1", "s2"});
  auto s1 = FieldElement::variable(f, "s1"), s2 = FieldElement::variable(f, "s2");
  auto zero = FieldElement::zero(f);
  auto m = Matrix::from_rows(f, {{s1, s2}, {zero, s1}});
  std::vector<Polynomial> ones;
  auto it = minors(m, 1);
  while (auto x = it.next()) ones.push_back(*x);
  ASSERT_EQ(ones.size(), 4u);
  EXPECT_EQ(ones[0], s1.numerator());
  EXPECT_EQ(ones[1], s2.numerator());
  EXPECT_TRUE(ones[2].is_zero());
  EXPECT_EQ(ones[3], s1.numerator());

  auto it2 = minors(m, 2);
  auto d = it2.next();
  ASSERT_TRUE(d);
  EXPECT_EQ(*d, (s1 * s1).numerator());
  EXPECT_FALSE(it2.next());

  auto it3 = minors(Matrix::identity(f, 2), 2);
  EXPECT_TRUE(it3.next()->is_one());
}

TEST(Minors, Errors) {
  auto f = FieldDescriptor::prime(2)->adjoin({"s"});
  auto s = FieldElement::variable(f, "s");
  auto m = Matrix::from_rows(f, {{FieldElement::one(f) / s}});
  try {
    MinorIterator it(m, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPolynomialEntry);
  }
  EXPECT_THROW(MinorIterator(Matrix::identity(f, 2), 3), Error);
}

TEST(Minors, FractionFreeDeterminantMatchesExpansion) {
  // 3x3 determinant by the Leibniz formula.
  std::mt19937_64 rng(25);
  auto f = FieldDescriptor::prime(3)->adjoin({"a", "b"});
  for (int t = 0; t < 20; ++t) {
    auto a = random_matrix(f, 3, 3, rng, 0.8);
    auto e = [&](int i, int j) { return a.at(i, j); };
    auto det = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
               e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
    auto it = minors(a, 3);
    EXPECT_EQ(*it.next(), det.numerator());
  }
}

TEST(Jordan, Examples) {
  auto f2 = FieldDescriptor::prime(2);
  EXPECT_EQ(jordan_type(Matrix(f2, 3, 3), 2).parts, (std::vector<unsigned>{1, 1, 1}));
  // multiplication by x on k[x,y]/(x^2,y^2) in basis 1, y, x, xy
  auto x = Matrix::from_ints(f2, {{0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}});
  EXPECT_EQ(jordan_type(x, 2).parts, (std::vector<unsigned>{2, 2}));
  EXPECT_TRUE(is_full(x, 2));
  auto f3 = FieldDescriptor::prime(3);
  EXPECT_EQ(jordan_type(jordan_block(f3, 3), 3).parts, (std::vector<unsigned>{3}));
  EXPECT_FALSE(is_full(Matrix(f2, 2, 2), 2));
  EXPECT_FALSE(is_full(jordan_block(f3, 2), 3));
}

TEST(Jordan, NotNilpotent) {
  auto f2 = FieldDescriptor::prime(2);
  try {
    jordan_type(Matrix::identity(f2, 2), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPNilpotent);
  }
  EXPECT_THROW(is_full(jordan_block(FieldDescriptor::prime(3), 3), 2), Error);
  auto f = f2->adjoin({"s"});
  auto s = FieldElement::variable(f, "s");
  EXPECT_THROW(jordan_type(Matrix::from_rows(f, {{s}}), 2), Error);
}

TEST(Jordan, MatchesKernelChainOracle) {
  std::mt19937_64 rng(26);
  for (unsigned p : {2u, 3u, 5u}) {
    auto f = FieldDescriptor::prime(p);
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = 1 + rng() % 9;
      auto m = random_nilpotent(f, p, n, rng);
      auto jt = jordan_type(m, p);
      EXPECT_EQ(jt, jordan_by_kernels(m, p));
      EXPECT_EQ(jt.dimension(), n);
      EXPECT_TRUE(std::is_sorted(jt.parts.rbegin(), jt.parts.rend()));
      EXPECT_EQ(is_full(m, p), jt.is_full());
    }
  }
}

TEST(Jordan, GenericOperator) {
  // x + s y on k[x,y]/(x^2,y^2): free at the generic point.
  auto f = FieldDescriptor::prime(2)->adjoin({"s"});
  auto x = Matrix::from_ints(f, {{0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}});
  auto y = Matrix::from_ints(f, {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}});
  auto t = x + y.scaled(FieldElement::variable(f, "s"));
  EXPECT_EQ(jordan_type(t, 2).parts, (std::vector<unsigned>{2, 2}));
  EXPECT_TRUE(is_full(t, 2));
  // s x has the same Jordan type; (x + s y)/(s + 1) as well.
  auto scale = FieldElement::one(f) / (FieldElement::variable(f, "s") + FieldElement::one(f));
  EXPECT_TRUE(is_full(t.scaled(scale), 2));
}

TEST(Jordan, GenericAgreesWithFractionRank) {
  // Random nilpotents conjugated over F_p then perturbed by a scalar transcendental factor.
  std::mt19937_64 rng(27);
  for (unsigned p : {2u, 3u}) {
    auto base = FieldDescriptor::prime(p);
    auto f = base->adjoin({"s"});
    for (int t = 0; t < 10; ++t) {
      const std::size_t n = 2 + rng() % 5;
      auto a = random_nilpotent(base, p, n, rng).embed(f);
      auto b = a.power(2);  // commutes with a
      auto m = a + b.scaled(FieldElement::variable(f, "s"));
      std::vector<std::size_t> ranks{n};
      Matrix pw = Matrix::identity(f, n);
      for (unsigned j = 1; j <= p; ++j) {
        pw = pw * m;
        ranks.push_back(rank_fraction_based(pw));
      }
      JordanType expected;
      expected.cap = p;
      for (unsigned s = p; s >= 1; --s) {
        const auto ge = ranks[s - 1] - ranks[s];
        const auto ge_next = s < p ? ranks[s] - ranks[s + 1] : 0;
        for (std::size_t k = 0; k < ge - ge_next; ++k) expected.parts.push_back(s);
      }
      EXPECT_EQ(jordan_type(m, p), expected);
    }
  }
}
