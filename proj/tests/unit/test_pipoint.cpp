#include <random>

#include "pisupp/examples.hpp"
#include "pisupp/pipoint.hpp"
#include "pisupp/random_module.hpp"
#include "test_util.hpp"

using namespace pisupp;
using testutil::kind_of;

namespace {

AlgebraSpec klein() { return klein_spec(); }

FieldElement c(const Field& f, std::int64_t v) { return FieldElement::from_int(f, v); }

std::vector<unsigned> exps(std::initializer_list<unsigned> e) { return e; }

std::vector<unsigned> jordan_of(const PiPoint& a, const ModuleRep& m) {
  return jordan_type(restrict(a, base_change(m, a.field())), m.spec().p).parts;
}

}  // namespace

TEST(MakeLinear, Examples) {
  const auto spec = klein();
  const auto f2 = spec.base;
  const auto x = PiPoint::make_linear(spec, f2, {c(f2, 1), c(f2, 0)});
  EXPECT_TRUE(x.is_linear());
  EXPECT_EQ(x.to_string(), "z1");
  EXPECT_TRUE(is_flat(x));

  const auto f2s = f2->adjoin({"s"});
  const auto g = PiPoint::make_linear(spec, f2s, {FieldElement::one(f2s), FieldElement::variable(f2s, "s")});
  EXPECT_EQ(g.to_string(), "z1 + s*z2");
  EXPECT_TRUE(is_flat(g));

  const auto spec3 = AlgebraSpec::uniform(3, 3, Flavor::Group);
  const auto f3 = spec3.base;
  EXPECT_TRUE(is_flat(PiPoint::make_linear(spec3, f3, {c(f3, 1), c(f3, 1), c(f3, 2)})));
}

TEST(MakeLinear, Errors) {
  const auto spec = klein();
  const auto f2 = spec.base;
  EXPECT_EQ(kind_of([&] { PiPoint::make_linear(spec, f2, {c(f2, 0), c(f2, 0)}); }), ErrorKind::AllCoefficientsZero);
  EXPECT_EQ(kind_of([&] { PiPoint::make_linear(spec, f2, {c(f2, 1)}); }), ErrorKind::InvalidArgument);
  const auto f3 = FieldDescriptor::prime(3);
  EXPECT_EQ(kind_of([&] { PiPoint::make_linear(spec, f3, {c(f3, 1), c(f3, 0)}); }), ErrorKind::NotARefinement);
}

TEST(MakeGeneral, Examples) {
  const auto spec = klein();
  const auto f2 = spec.base;
  const auto one = FieldElement::one(f2);
  EXPECT_EQ(kind_of([&] { PiPoint::make_general(spec, f2, {{exps({1, 1}), one}}); }), ErrorKind::NotFlat);
  EXPECT_EQ(kind_of([&] { PiPoint::make_general(spec, f2, {}); }), ErrorKind::NotFlat);
  const auto a = PiPoint::make_general(spec, f2, {{exps({1, 0}), one}, {exps({1, 1}), one}});
  EXPECT_FALSE(a.is_linear());
  EXPECT_EQ(a.to_string(), "z1 + z1*z2");
  const auto b = PiPoint::make_general(spec, f2, {{exps({1, 0}), one}, {exps({0, 1}), one}, {exps({1, 1}), one}});
  EXPECT_TRUE(is_flat(b));
  // z1^2 vanishes in A and is dropped
  const auto d = PiPoint::make_general(spec, f2, {{exps({0, 1}), one}, {exps({2, 0}), one}});
  EXPECT_TRUE(d.is_linear());
  EXPECT_EQ(kind_of([&] { PiPoint::make_general(spec, f2, {{exps({0, 0}), one}, {exps({1, 0}), one}}); }),
            ErrorKind::InvalidArgument);
}

TEST(Flatness, MatchesRegularMultiplicationOracle) {
  // Flat iff multiplication by f on the regular module has p^{r-1} blocks of size p.
  std::mt19937_64 rng(11);
  for (unsigned p : {2u, 3u}) {
    for (unsigned r : {1u, 2u, 3u}) {
      const auto spec = AlgebraSpec::uniform(p, r, Flavor::Group);
      const auto f = spec.base;
      for (int trial = 0; trial < 25; ++trial) {
        std::map<std::vector<unsigned>, long> terms;
        std::vector<ImageTerm> image;
        const int count = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < count; ++k) {
          std::vector<unsigned> e(r);
          unsigned deg = 0;
          for (auto& x : e) deg += (x = static_cast<unsigned>(rng() % p));
          if (deg == 0) continue;
          const long cf = static_cast<long>(rng() % p);
          terms[e] = testutil::mod(terms[e] + cf, p);
          image.push_back({e, c(f, cf)});
        }
        const auto parts = testutil::jordan_oracle(testutil::regular_multiplication(p, r, terms), p);
        const bool oracle_flat = std::all_of(parts.begin(), parts.end(), [&](unsigned x) { return x == p; });
        bool constructed = true;
        try {
          EXPECT_TRUE(is_flat(PiPoint::make_general(spec, f, image)));
        } catch (const Error& e) {
          EXPECT_EQ(e.kind(), ErrorKind::NotFlat);
          constructed = false;
        }
        EXPECT_EQ(constructed, oracle_flat) << "p=" << p << " r=" << r << " trial " << trial;
        // a nonzero linear part always gives a flat point
        bool linear_nonzero = false;
        for (const auto& [e, v] : terms) {
          unsigned deg = 0;
          for (auto x : e) deg += x;
          linear_nonzero = linear_nonzero || (deg == 1 && v != 0);
        }
        if (linear_nonzero) EXPECT_TRUE(oracle_flat);
      }
    }
  }
}

TEST(Restrict, Examples) {
  const auto spec = klein();
  const auto f2 = spec.base;
  const auto x = PiPoint::make_linear(spec, f2, {c(f2, 1), c(f2, 0)});
  const auto y = PiPoint::make_linear(spec, f2, {c(f2, 0), c(f2, 1)});
  EXPECT_EQ(jordan_of(x, free_module(spec, 1)), (std::vector<unsigned>{2, 2}));
  EXPECT_EQ(jordan_of(y, klein_truncation(2)), (std::vector<unsigned>{2, 1, 1}));
  EXPECT_EQ(restrict(x, trivial_module(spec)), Matrix(f2, 1, 1));

  const auto f4 = f2->finite_extension(2);
  EXPECT_EQ(kind_of([&] { restrict(PiPoint::make_linear(spec, f4, {c(f4, 1), c(f4, 1)}), klein_truncation(2)); }),
            ErrorKind::FieldMismatch);
}

TEST(Restrict, AdditiveOnDirectSums) {
  RandomModules gen(3);
  const auto spec = AlgebraSpec::uniform(3, 2, Flavor::Group);
  const auto f = spec.base;
  const auto a = PiPoint::make_general(spec, f, {{exps({1, 0}), c(f, 2)}, {exps({0, 1}), c(f, 1)}, {exps({1, 2}), c(f, 1)}});
  for (int t = 0; t < 10; ++t) {
    const auto m = gen.module(spec, 5);
    const auto n = gen.module(spec, 5);
    EXPECT_EQ(restrict(a, direct_sum(m, n)), block_diagonal(restrict(a, m), restrict(a, n)));
  }
}

TEST(Restrict, JordanTypeMatchesOracleOnKleinTruncations) {
  const auto spec = klein();
  const auto f2 = spec.base;
  const auto y = PiPoint::make_linear(spec, f2, {c(f2, 0), c(f2, 1)});
  const auto xy = PiPoint::make_linear(spec, f2, {c(f2, 1), c(f2, 1)});
  for (unsigned n = 1; n <= 6; ++n) {
    const auto [ox, oy] = testutil::klein_oracle(n);
    testutil::IntMat sum = ox;
    for (std::size_t i = 0; i < sum.size(); ++i)
      for (std::size_t j = 0; j < sum.size(); ++j) sum[i][j] = (ox[i][j] + oy[i][j]) % 2;
    EXPECT_EQ(jordan_of(y, klein_truncation(n)), testutil::jordan_oracle(oy, 2));
    EXPECT_EQ(jordan_of(xy, klein_truncation(n)), testutil::jordan_oracle(sum, 2));
  }
}

TEST(LinearPart, Examples) {
  const auto spec = klein();
  const auto f2 = spec.base;
  const auto one = FieldElement::one(f2);
  const auto a = PiPoint::make_general(spec, f2, {{exps({1, 0}), one}, {exps({1, 1}), one}});
  const auto l = linear_part(a);
  EXPECT_TRUE(l.is_linear());
  EXPECT_EQ(l.to_string(), "z1");
  const auto g = generic_point(spec);
  EXPECT_EQ(linear_part(g).to_string(), g.to_string());
}

TEST(LinearPart, ZeroLinearPartRejected) {
  // p = 3, r = 1: t -> z^2 is not flat, so zero linear parts never reach linear_part here;
  // make_general rejects them.
  const auto spec = AlgebraSpec::uniform(3, 1, Flavor::Primitive);
  const auto f = spec.base;
  EXPECT_EQ(kind_of([&] { PiPoint::make_general(spec, f, {{exps({2}), c(f, 1)}}); }), ErrorKind::NotFlat);
}

TEST(LinearPart, PerturbationInvarianceProperty) {
  RandomModules gen(17);
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned p = 2 + static_cast<unsigned>(gen.below(2));
    const unsigned r = 2 + static_cast<unsigned>(gen.below(2));
    auto spec = AlgebraSpec::uniform(p, r, Flavor::Group);
    spec.flavors = gen.flavors(r);
    const auto f = spec.base;
    std::vector<ImageTerm> image;
    bool nonzero = false;
    for (unsigned i = 0; i < r; ++i) {
      std::vector<unsigned> e(r, 0);
      e[i] = 1;
      const auto cf = static_cast<std::int64_t>(gen.below(p));
      nonzero = nonzero || cf != 0;
      image.push_back({e, c(f, cf)});
    }
    if (!nonzero) image[0].coeff = FieldElement::one(f);
    std::vector<unsigned> e(r, 1);
    image.push_back({e, c(f, 1 + static_cast<std::int64_t>(gen.below(p - 1)))});
    const auto a = PiPoint::make_general(spec, f, image);
    const auto l = linear_part(a);
    const auto m = gen.module(spec, 12);
    EXPECT_EQ(is_full(restrict(a, m), p), is_full(restrict(l, m), p)) << "trial " << trial;
  }
}

TEST(Equivalent, Examples) {
  const auto spec = klein();
  const auto f2 = spec.base;
  const auto a = PiPoint::make_linear(spec, f2, {c(f2, 1), c(f2, 1)});
  EXPECT_EQ(equivalent(a, a), Equivalence::Equivalent);

  const auto spec3 = AlgebraSpec::uniform(3, 2, Flavor::Group);
  const auto f3 = spec3.base;
  EXPECT_EQ(equivalent(PiPoint::make_linear(spec3, f3, {c(f3, 1), c(f3, 1)}),
                       PiPoint::make_linear(spec3, f3, {c(f3, 2), c(f3, 2)})),
            Equivalence::Equivalent);

  const auto f2s = f2->adjoin({"s"});
  const auto g = PiPoint::make_linear(spec, f2s, {FieldElement::one(f2s), FieldElement::variable(f2s, "s")});
  const auto y = PiPoint::make_linear(spec, f2s, {FieldElement::zero(f2s), FieldElement::one(f2s)});
  EXPECT_EQ(equivalent(g, y), Equivalence::NotEquivalent);
  // corroborated by M2: free at the generic point, not free at [0:1]
  const auto m2 = base_change(klein_truncation(2), f2s);
  EXPECT_NE(is_full(restrict(g, m2), 2), is_full(restrict(y, m2), 2));

  EXPECT_EQ(kind_of([&] { equivalent(a, g); }), ErrorKind::FieldMismatch);
}

TEST(Equivalent, EquivalenceRelationOnPanel) {
  const auto spec = AlgebraSpec::uniform(3, 2, Flavor::Group);
  const auto f = spec.base;
  std::vector<PiPoint> pts;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a || b) pts.push_back(PiPoint::make_linear(spec, f, {c(f, a), c(f, b)}));
  RandomModules gen(5);
  std::vector<ModuleRep> panel;
  for (int i = 0; i < 6; ++i) panel.push_back(gen.module(spec, 9));
  panel.push_back(trivial_module(spec));
  auto eq = [&](std::size_t i, std::size_t j) { return equivalent(pts[i], pts[j]) == Equivalence::Equivalent; };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_TRUE(eq(i, i));
    for (std::size_t j = 0; j < pts.size(); ++j) {
      EXPECT_EQ(eq(i, j), eq(j, i));
      for (std::size_t k = 0; k < pts.size(); ++k)
        if (eq(i, j) && eq(j, k)) EXPECT_TRUE(eq(i, k));
      if (eq(i, j)) {
        for (const auto& m : panel) EXPECT_EQ(is_full(restrict(pts[i], m), 3), is_full(restrict(pts[j], m), 3));
      }
    }
  }
  // 8 nonzero vectors in F_3^2 fall into 4 classes
  std::size_t classes = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool first = true;
    for (std::size_t j = 0; j < i; ++j) first = first && !eq(i, j);
    classes += first;
  }
  EXPECT_EQ(classes, 4u);
}

TEST(BaseExtend, Examples) {
  const auto spec = klein();
  const auto f2 = spec.base;
  const auto x = PiPoint::make_linear(spec, f2, {c(f2, 1), c(f2, 0)});
  const auto f4 = f2->finite_extension(2);
  const auto x4 = base_extend(x, f4);
  EXPECT_EQ(x4.field(), f4);
  EXPECT_EQ(x4.to_string(), "z1");

  const auto f2s = f2->adjoin({"s"});
  const auto f2su = f2s->adjoin({"u"});
  const auto g = PiPoint::make_linear(spec, f2s, {FieldElement::one(f2s), FieldElement::variable(f2s, "s")});
  EXPECT_EQ(base_extend(g, f2su).to_string(), "z1 + s*z2");
  EXPECT_EQ(kind_of([&] { base_extend(g, f4); }), ErrorKind::NotARefinement);
}

TEST(BaseExtend, VerdictsUnchanged) {
  RandomModules gen(23);
  const auto spec = klein();
  const auto f2 = spec.base;
  const auto f8 = f2->finite_extension(3);
  for (int t = 0; t < 30; ++t) {
    const auto m = gen.module(spec, 8);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        if (!a && !b) continue;
        const auto pt = PiPoint::make_linear(spec, f2, {c(f2, a), c(f2, b)});
        const auto ext = base_extend(pt, f8);
        EXPECT_EQ(is_full(restrict(pt, m), 2), is_full(restrict(ext, base_change(m, f8)), 2));
      }
  }
}

TEST(GenericPoint, Shape) {
  EXPECT_EQ(generic_variable_names(3), (std::vector<std::string>{"s2", "s3"}));
  const auto g = generic_point(AlgebraSpec::uniform(3, 3, Flavor::Primitive));
  EXPECT_EQ(g.to_string(), "z1 + s2*z2 + s3*z3");
  EXPECT_EQ(g.field()->name(), "F_3(s2,s3)");
  EXPECT_TRUE(is_flat(g));
  const auto g1 = generic_point(AlgebraSpec::uniform(2, 1, Flavor::Group));
  EXPECT_EQ(g1.to_string(), "z1");
  EXPECT_FALSE(g1.field()->has_transcendentals());
}
