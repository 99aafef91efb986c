#include "pisupp/examples.hpp"
#include "pisupp/module_file.hpp"
#include "pisupp/verify.hpp"
#include "test_util.hpp"

using namespace pisupp;
using testutil::kind_of;

TEST(Verify, AllSuitesPassAndAreDeterministic) {
  VerifyOptions o;
  o.trials = 8;
  o.ps = {2, 3};
  o.rs = {2, 3};
  const auto a = run_verify(o);
  const auto b = run_verify(o);
  EXPECT_TRUE(a.ok()) << a.to_string();
  EXPECT_EQ(a.to_string(), b.to_string());
  ASSERT_EQ(a.suites.size(), suite_names().size());
  for (const auto& s : a.suites) EXPECT_EQ(s.passed, 8u);
}

TEST(Verify, SeedChangesInputsNotOutcome) {
  VerifyOptions o;
  o.suite = "tensor";
  o.trials = 50;
  const auto r = run_verify(o);
  EXPECT_EQ(r.to_string(), "suite tensor: 50 trials, 50 passed, 0 failed\ntotal: 50 trials, 50 passed, 0 failed\n");
  o.seed = 2;
  EXPECT_TRUE(run_verify(o).ok());
}

TEST(Verify, Errors) {
  VerifyOptions o;
  o.suite = "nope";
  EXPECT_EQ(kind_of([&] { run_verify(o); }), ErrorKind::InvalidArgument);
  o.suite = "all";
  o.ps = {4};
  EXPECT_EQ(kind_of([&] { run_verify(o); }), ErrorKind::CompositeCharacteristic);
  o.ps = {};
  EXPECT_EQ(kind_of([&] { run_verify(o); }), ErrorKind::InvalidArgument);
}

TEST(Verify, IndividualChecks) {
  const auto spec = klein_spec();
  const auto m2 = klein_truncation(2);
  EXPECT_FALSE(check_dade(m2, 2));
  EXPECT_FALSE(check_tensor(m2, m2, 2));
  EXPECT_FALSE(check_hom(m2, m2, 2));
  EXPECT_FALSE(check_hom_projective(free_module(spec, 1), m2));
  EXPECT_TRUE(check_hom_projective(m2, m2).has_value());  // input is not projective
  EXPECT_FALSE(check_endo(m2));
  EXPECT_FALSE(check_nonflat_rejected(spec));
  const auto f = spec.base;
  const auto one = FieldElement::one(f);
  EXPECT_FALSE(check_flat(spec, f, {{{1, 0}, one}, {{1, 1}, one}}));
  EXPECT_FALSE(check_perturb(spec, f, {{{0, 1}, one}}, {{{1, 1}, one}}, {m2, trivial_module(spec)}));
  // a non-flat image is reported, not thrown
  const auto bad = check_flat(spec, f, {{{1, 1}, one}});
  ASSERT_TRUE(bad.has_value());
  EXPECT_NE(bad->find("NotFlat"), std::string::npos);
}

TEST(Replay, BundlesRoundTrip) {
  const auto spec = klein_spec();
  const auto m2 = klein_truncation(2);
  nlohmann::json b{{"format", "pisupp-counterexample"}, {"version", 1}, {"check", "tensor"}, {"e_max", 2}};
  b["modules"] = {module_to_json(m2), module_to_json(free_module(spec, 1))};
  auto r = replay_bundle(b);
  EXPECT_EQ(r.check, "tensor");
  EXPECT_FALSE(r.failed);

  nlohmann::json flat{{"format", "pisupp-counterexample"}, {"version", 1}, {"check", "flat"}};
  flat["algebra"] = algebra_to_json(spec);
  flat["field"] = field_to_json(spec.base);
  flat["image"] = {{{"exps", {1, 1}}, {"coeff", 1}}};
  r = replay_bundle(flat);
  EXPECT_TRUE(r.failed);
  EXPECT_NE(r.detail.find("NotFlat"), std::string::npos);

  flat["image"] = {{{"exps", {0, 1}}, {"coeff", 1}}};
  EXPECT_FALSE(replay_bundle(flat).failed);

  EXPECT_EQ(kind_of([] { replay_bundle(nlohmann::json{{"format", "other"}}); }), ErrorKind::SyntaxError);
  nlohmann::json few{{"format", "pisupp-counterexample"}, {"check", "hom"}, {"modules", nlohmann::json::array()}};
  EXPECT_EQ(kind_of([&] { replay_bundle(few); }), ErrorKind::SyntaxError);
}
