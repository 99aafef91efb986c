#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pisupp/error.hpp"
#include "pisupp/exactfield.hpp"

using namespace pisupp;

namespace {

// Schoolbook multiplication of coefficient vectors modulo a monic polynomial over F_p.
std::vector<std::uint32_t> slow_mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                    const std::vector<std::uint32_t>& modulus, std::uint32_t p) {
  const std::size_t n = modulus.size() - 1;
  std::vector<std::uint64_t> prod(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (std::size_t k = 2 * n - 1; k >= n; --k) {
    const auto c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::size_t i = 0; i < n; ++i) prod[k - n + i] = (prod[k - n + i] + (p - c) * modulus[i]) % p;
  }
  return {prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(n)};
}

FieldElement random_element(const Field& f, std::mt19937_64& rng, bool allow_fraction) {
  auto rand_poly = [&] {
    std::vector<Polynomial::Term> terms;
    const int count = static_cast<int>(rng() % 3) + 1;
    for (int t = 0; t < count; ++t) {
      Exponents e(f->num_variables());
      for (auto& x : e) x = static_cast<std::uint32_t>(rng() % 3);
      terms.push_back({e, static_cast<FiniteField::Elem>(rng() % f->finite().size())});
    }
    return Polynomial::from_terms(f, terms);
  };
  auto num = rand_poly();
  if (!allow_fraction || f->num_variables() == 0) return FieldElement::from_polynomial(num);
  auto den = rand_poly();
  while (den.is_zero()) den = rand_poly();
  return FieldElement::fraction(num, den);
}

}  // namespace

TEST(MakeField, PrimeAndExtensions) {
  auto f2 = FieldDescriptor::prime(2);
  EXPECT_EQ(f2->name(), "F_2");
  EXPECT_EQ(f2->finite().size(), 2u);

  auto f4 = FieldDescriptor::make(2, std::vector<std::uint32_t>{1, 1, 1});
  EXPECT_EQ(f4->extension_degree(), 2u);
  EXPECT_EQ(f4->finite().size(), 4u);

  auto f2s = FieldDescriptor::make(2, std::nullopt, {"s"});
  EXPECT_EQ(f2s->name(), "F_2(s)");
  EXPECT_TRUE(f2s->refines(*f2));
  EXPECT_FALSE(f2->refines(*f2s));
}

TEST(MakeField, Interned) {
  EXPECT_EQ(FieldDescriptor::prime(5), FieldDescriptor::prime(5));
  EXPECT_EQ(FieldDescriptor::make(3, std::nullopt, {"a", "b"}), FieldDescriptor::prime(3)->adjoin({"a", "b"}));
}

TEST(MakeField, Errors) {
  auto expect_kind = [](auto fn, ErrorKind k) {
    try {
      fn();
      FAIL() << "no error";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), k) << e.what();
    }
  };
  expect_kind([] { FieldDescriptor::prime(4); }, ErrorKind::CompositeCharacteristic);
  expect_kind([] { FieldDescriptor::prime(1); }, ErrorKind::CompositeCharacteristic);
  // w^2 + 1 = (w + 1)^2 over F_2
  expect_kind([] { FieldDescriptor::make(2, std::vector<std::uint32_t>{1, 0, 1}); }, ErrorKind::ReduciblePolynomial);
  expect_kind([] { FieldDescriptor::make(2, std::nullopt, {"s", "s"}); }, ErrorKind::DuplicateVariable);
  // degree 9
  expect_kind([] { FieldDescriptor::make(2, std::vector<std::uint32_t>{1, 1, 0, 0, 0, 0, 0, 0, 0, 1}); },
              ErrorKind::ExtensionTooLarge);
}

TEST(Irreducibility, MatchesRootFreeQuadraticsAndCubics) {
  // A polynomial of degree <= 3 is irreducible iff it has no root.
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (unsigned deg : {2u, 3u}) {
      std::vector<std::uint32_t> poly(deg + 1, 0);
      poly[deg] = 1;
      std::size_t count = 1;
      for (unsigned i = 0; i < deg; ++i) count *= p;
      for (std::size_t code = 0; code < count; ++code) {
        std::size_t c = code;
        for (unsigned i = 0; i < deg; ++i, c /= p) poly[i] = static_cast<std::uint32_t>(c % p);
        bool has_root = false;
        for (std::uint32_t x = 0; x < p; ++x) {
          std::uint64_t v = 0;
          for (unsigned i = deg + 1; i-- > 0;) v = (v * x + poly[i]) % p;
          has_root = has_root || v == 0;
        }
        EXPECT_EQ(is_irreducible(p, poly), !has_root) << "p=" << p << " code=" << code;
      }
    }
  }
}

TEST(Arith, InverseInF5) {
  auto f5 = FieldDescriptor::prime(5);
  EXPECT_EQ(FieldElement::from_int(f5, 2).inverse(), FieldElement::from_int(f5, 3));
  EXPECT_THROW(FieldElement::zero(f5).inverse(), Error);
}

TEST(Arith, F4MultiplicationTable) {
  const std::vector<std::uint32_t> modulus{1, 1, 1};
  auto f4 = FieldDescriptor::make(2, modulus);
  const auto& ff = f4->finite();
  for (FiniteField::Elem a = 0; a < 4; ++a) {
    for (FiniteField::Elem b = 0; b < 4; ++b) {
      const auto expected = slow_mul(ff.coefficients(a), ff.coefficients(b), modulus, 2);
      EXPECT_EQ(ff.coefficients(ff.mul(a, b)), expected) << a << "*" << b;
    }
  }
  // w * (w + 1) = w^2 + w = 1
  const std::uint32_t w[] = {0, 1}, w1[] = {1, 1};
  EXPECT_TRUE((FieldElement::from_coefficients(f4, w) * FieldElement::from_coefficients(f4, w1)).is_one());
}

TEST(Arith, ExtensionMultiplicationAgainstSchoolbook) {
  std::mt19937_64 rng(7);
  for (auto [p, deg] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 3}, {3, 2}, {3, 3}, {5, 2}, {2, 8}, {7, 3}}) {
    const auto modulus = default_modulus(p, deg);
    ASSERT_TRUE(is_irreducible(p, modulus));
    const auto ff = FiniteField::get(p, modulus);
    for (int t = 0; t < 200; ++t) {
      const auto a = static_cast<FiniteField::Elem>(rng() % ff->size());
      const auto b = static_cast<FiniteField::Elem>(rng() % ff->size());
      EXPECT_EQ(ff->coefficients(ff->mul(a, b)), slow_mul(ff->coefficients(a), ff->coefficients(b), modulus, p));
      if (a != 0) EXPECT_EQ(ff->mul(a, ff->inv(a)), 1u);
    }
  }
}

TEST(Arith, RationalFunctionSum) {
  auto f = FieldDescriptor::make(2, std::nullopt, {"s"});
  auto s = FieldElement::variable(f, "s");
  auto one = FieldElement::one(f);
  auto lhs = one / s + one / (s + one);
  auto expected = one / (s * s + s);
  EXPECT_EQ(lhs, expected);
  // canonical form: numerator 1, denominator s^2 + s
  EXPECT_TRUE(lhs.numerator().is_one());
  EXPECT_EQ(lhs.denominator(), (s * s + s).numerator());
}

TEST(Arith, FieldMismatch) {
  auto a = FieldElement::one(FieldDescriptor::prime(2));
  auto b = FieldElement::one(FieldDescriptor::prime(3));
  try {
    (void)(a + b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FieldMismatch);
  }
}

TEST(Embed, Examples) {
  auto f5 = FieldDescriptor::prime(5);
  auto f5s = f5->adjoin({"s"});
  EXPECT_EQ(FieldElement::from_int(f5, 3).embed(f5s), FieldElement::from_int(f5s, 3));

  auto f2 = FieldDescriptor::prime(2);
  auto f4 = f2->finite_extension(2);
  EXPECT_TRUE(FieldElement::one(f2).embed(f4).is_one());

  auto f2s = f2->adjoin({"s"});
  auto f2su = f2s->adjoin({"u"});
  EXPECT_EQ(FieldElement::variable(f2s, "s").embed(f2su), FieldElement::variable(f2su, "s"));

  try {
    (void)FieldElement::variable(f2su, "u").embed(f2s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotARefinement);
  }
}

TEST(Embed, SubfieldImageIsClosedUnderFrobenius) {
  // F_4 inside F_16: the image is exactly the fixed points of x -> x^4.
  auto f4 = FieldDescriptor::prime(2)->finite_extension(2);
  auto f16 = FieldDescriptor::prime(2)->finite_extension(4);
  const FieldEmbedding emb(f4->finite_ptr(), f16->finite_ptr());
  std::set<FiniteField::Elem> image;
  for (FiniteField::Elem a = 0; a < 4; ++a) image.insert(emb(a));
  for (FiniteField::Elem x = 0; x < 16; ++x) {
    EXPECT_EQ(f16->finite().pow(x, 4) == x, image.count(x) == 1) << x;
    if (image.count(x)) EXPECT_EQ(emb(*emb.preimage(x)), x);
  }
}

struct Tower {
  const char* label;
  Field field;
  bool fractions;
};

class FieldAxioms : public ::testing::TestWithParam<int> {};

std::vector<Tower> towers() {
  auto f2 = FieldDescriptor::prime(2);
  auto f3 = FieldDescriptor::prime(3);
  return {
      {"F_5", FieldDescriptor::prime(5), false},
      {"F_8", f2->finite_extension(3), false},
      {"F_9", f3->finite_extension(2), false},
      {"F_2(s)", f2->adjoin({"s"}), true},
      {"F_4(s)", f2->finite_extension(2)->adjoin({"s"}), true},
      {"F_3(s,u)", f3->adjoin({"s", "u"}), true},
      {"F_2(a,b,c)", f2->adjoin({"a", "b", "c"}), true},
  };
}

TEST_P(FieldAxioms, RandomTriples) {
  const auto tower = towers()[static_cast<std::size_t>(GetParam())];
  SCOPED_TRACE(tower.label);
  std::mt19937_64 rng(1000 + GetParam());
  const auto& f = tower.field;
  for (int t = 0; t < 40; ++t) {
    auto a = random_element(f, rng, tower.fractions);
    auto b = random_element(f, rng, tower.fractions);
    auto c = random_element(f, rng, tower.fractions);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
    if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
    EXPECT_EQ(a.canonicalized(), a);
    const auto ca = a.canonicalized();
    EXPECT_EQ(ca.canonicalized().numerator(), ca.numerator());
    EXPECT_EQ(ca.canonicalized().denominator(), ca.denominator());
  }
}

INSTANTIATE_TEST_SUITE_P(Towers, FieldAxioms, ::testing::Range(0, 7));

TEST(Canonical, UnivariateGcdIsOne) {
  auto f = FieldDescriptor::prime(3)->adjoin({"s"});
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    auto x = random_element(f, rng, true);
    if (x.is_zero()) continue;
    const auto g = Polynomial::univariate_gcd(x.numerator(), x.denominator());
    EXPECT_TRUE(g.is_one()) << x.to_string();
    EXPECT_EQ(x.denominator().leading_coefficient(), 1u);
  }
}

TEST(Canonical, MultivariateDenominatorLeadingCoefficientIsOne) {
  auto f = FieldDescriptor::prime(5)->adjoin({"s", "u"});
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    auto x = random_element(f, rng, true);
    EXPECT_EQ(x.denominator().leading_coefficient(), 1u);
  }
}

TEST(Embed, IsRingHomomorphism) {
  std::mt19937_64 rng(11);
  auto f2 = FieldDescriptor::prime(2);
  const std::vector<std::pair<Field, Field>> pairs = {
      {f2, f2->finite_extension(4)},
      {f2->finite_extension(2), f2->finite_extension(4)},
      {f2->adjoin({"s"}), f2->finite_extension(2)->adjoin({"s", "u"})},
      {FieldDescriptor::prime(3)->finite_extension(2), FieldDescriptor::prime(3)->finite_extension(4)},
  };
  for (const auto& [small, big] : pairs) {
    for (int t = 0; t < 50; ++t) {
      auto a = random_element(small, rng, small->has_transcendentals());
      auto b = random_element(small, rng, small->has_transcendentals());
      EXPECT_EQ((a + b).embed(big), a.embed(big) + b.embed(big));
      EXPECT_EQ((a * b).embed(big), a.embed(big) * b.embed(big));
    }
  }
}

TEST(Serialization, RoundTrip) {
  std::mt19937_64 rng(5);
  for (const auto& tower : towers()) {
    for (int t = 0; t < 30; ++t) {
      auto x = random_element(tower.field, rng, tower.fractions);
      const auto j = to_json(x);
      EXPECT_EQ(field_element_from_json(tower.field, j), x) << j.dump();
    }
  }
  auto f5 = FieldDescriptor::prime(5);
  EXPECT_EQ(to_json(FieldElement::from_int(f5, 3)).dump(), "3");
  auto f4 = FieldDescriptor::prime(2)->finite_extension(2);
  const std::uint32_t w[] = {0, 1};
  EXPECT_EQ(to_json(FieldElement::from_coefficients(f4, w)).dump(), "[0,1]");
}

TEST(Serialization, MalformedLiteral) {
  auto f5 = FieldDescriptor::prime(5);
  EXPECT_THROW(field_element_from_json(f5, nlohmann::json("nope")), Error);
  EXPECT_THROW(field_element_from_json(f5, nlohmann::json::object()), Error);
}
