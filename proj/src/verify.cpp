#include <functional>
#include <sstream>

#include "pisupp/module_file.hpp"
#include "pisupp/random_module.hpp"
#include "pisupp/support.hpp"
#include "pisupp/verify.hpp"

namespace pisupp {

namespace {

using nlohmann::json;

constexpr const char* kBundleFormat = "pisupp-counterexample";
constexpr std::size_t kDadeMaxDim = 36;
constexpr std::size_t kPairMaxDim = 6;
constexpr std::size_t kEndoMaxDim = 6;
constexpr std::size_t kPanelMaxDim = 12;
constexpr std::size_t kPanelSize = 10;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t suite, std::size_t trial) {
  return splitmix(splitmix(seed) ^ splitmix((static_cast<std::uint64_t>(suite) << 32) + trial));
}

std::string verdict(bool in) { return in ? "in" : "out"; }

json image_to_json(const std::vector<ImageTerm>& image) {
  json out = json::array();
  for (const auto& t : image) out.push_back({{"exps", t.exponents}, {"coeff", to_json(t.coeff)}});
  return out;
}

std::vector<ImageTerm> image_from_json(const Field& field, const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::SyntaxError, "image must be an array of terms");
  std::vector<ImageTerm> out;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("exps") || !t.contains("coeff") || !t["exps"].is_array()) {
      throw Error(ErrorKind::SyntaxError, "image terms need \"exps\" and \"coeff\"");
    }
    out.push_back({t["exps"].get<std::vector<unsigned>>(), field_element_from_json(field, t["coeff"])});
  }
  return out;
}

std::vector<ImageTerm> linear_image(const std::vector<FieldElement>& coeffs) {
  std::vector<ImageTerm> out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    std::vector<unsigned> e(coeffs.size(), 0);
    e[i] = 1;
    out.push_back({e, coeffs[i]});
  }
  return out;
}

std::vector<FieldElement> random_nonzero_vector(RandomModules& gen, const Field& k, unsigned r) {
  for (;;) {
    std::vector<FieldElement> v;
    bool nonzero = false;
    for (unsigned i = 0; i < r; ++i) {
      const auto c = gen.element(k->finite());
      nonzero = nonzero || c != 0;
      v.push_back(FieldElement::from_finite(k, c));
    }
    if (nonzero) return v;
  }
}

// Random terms of total degree >= 2 with exponents <= p - 1 and nonzero coefficients.
std::vector<ImageTerm> random_higher_terms(RandomModules& gen, const AlgebraSpec& spec, const Field& k) {
  std::vector<ImageTerm> out;
  if (spec.r == 1 && spec.p == 2) return out;  // no such monomials
  const std::size_t count = 1 + gen.below(3);
  while (out.size() < count) {
    std::vector<unsigned> e(spec.r);
    unsigned deg = 0;
    for (auto& x : e) {
      x = static_cast<unsigned>(gen.below(spec.p));
      deg += x;
    }
    if (deg < 2) continue;
    auto c = gen.element(k->finite());
    if (c == 0) c = 1;
    out.push_back({e, FieldElement::from_finite(k, c)});
  }
  return out;
}

json bundle_base(const char* check, const std::string& suite, const VerifyOptions& o, std::size_t trial,
                 const std::string& detail) {
  return {{"format", kBundleFormat}, {"version", 1}, {"check", check}, {"suite", suite},   {"seed", o.seed},
          {"trial", trial},         {"e_max", o.e_max}, {"detail", detail}};
}

json modules_json(std::initializer_list<const ModuleRep*> ms) {
  json out = json::array();
  for (const auto* m : ms) out.push_back(module_to_json(*m));
  return out;
}

class Runner {
 public:
  explicit Runner(const VerifyOptions& o) : o_(o) {}

  SuiteResult run(const std::string& suite, std::size_t suite_index) {
    SuiteResult res;
    res.suite = suite;
    for (std::size_t t = 0; t < o_.trials; ++t) {
      RandomModules gen(trial_seed(o_.seed, suite_index, t));
      const auto spec = draw_spec(gen);
      std::optional<TrialFailure> failure;
      if (suite == "dade") failure = dade(gen, spec, t);
      if (suite == "tensor") failure = tensor_trial(gen, spec, t);
      if (suite == "hom") failure = hom_trial(gen, spec, t);
      if (suite == "endo") failure = endo(gen, spec, t);
      if (suite == "flat") failure = flat(gen, spec, t);
      if (suite == "perturb") failure = perturb(gen, spec, t);
      if (failure) {
        ++res.failed;
        res.failures.push_back(std::move(*failure));
      } else {
        ++res.passed;
      }
    }
    return res;
  }

 private:
  AlgebraSpec draw_spec(RandomModules& gen) {
    const unsigned p = o_.ps[gen.below(o_.ps.size())];
    const unsigned r = o_.rs[gen.below(o_.rs.size())];
    auto spec = AlgebraSpec::uniform(p, r, Flavor::Group);
    if (o_.mixed_flavors) spec.flavors = gen.flavors(r);
    return spec;
  }

  std::optional<TrialFailure> dade(RandomModules& gen, const AlgebraSpec& spec, std::size_t t) {
    const auto m = gen.module(spec, kDadeMaxDim);
    if (auto f = check_dade(m, o_.e_max)) {
      auto b = bundle_base("dade", "dade", o_, t, *f);
      b["modules"] = modules_json({&m});
      return TrialFailure{t, *f, b};
    }
    return std::nullopt;
  }

  std::optional<TrialFailure> tensor_trial(RandomModules& gen, const AlgebraSpec& spec, std::size_t t) {
    const auto m = gen.module(spec, kPairMaxDim);
    const auto n = gen.module(spec, kPairMaxDim);
    if (auto f = check_tensor(m, n, o_.e_max)) {
      auto b = bundle_base("tensor", "tensor", o_, t, *f);
      b["modules"] = modules_json({&m, &n});
      return TrialFailure{t, *f, b};
    }
    return std::nullopt;
  }

  std::optional<TrialFailure> hom_trial(RandomModules& gen, const AlgebraSpec& spec, std::size_t t) {
    const auto m = gen.module(spec, kPairMaxDim);
    const auto n = gen.module(spec, kPairMaxDim);
    if (auto f = check_hom(m, n, o_.e_max)) {
      auto b = bundle_base("hom", "hom", o_, t, *f);
      b["modules"] = modules_json({&m, &n});
      return TrialFailure{t, *f, b};
    }
    return std::nullopt;
  }

  std::optional<TrialFailure> endo(RandomModules& gen, const AlgebraSpec& spec, std::size_t t) {
    std::size_t block = 1;
    for (unsigned i = 0; i < spec.r; ++i) block *= spec.p;
    const auto proj = gen.projective(spec, block);
    const auto n = gen.module(spec, kEndoMaxDim);
    if (auto f = check_hom_projective(proj, n)) {
      auto b = bundle_base("hom_projective", "endo", o_, t, *f);
      b["modules"] = modules_json({&proj, &n});
      return TrialFailure{t, *f, b};
    }
    const auto m = gen.coin() ? gen.module(spec, kEndoMaxDim) : direct_sum(gen.module(spec, 2), proj);
    if (auto f = check_endo(m)) {
      auto b = bundle_base("endo", "endo", o_, t, *f);
      b["modules"] = modules_json({&m});
      return TrialFailure{t, *f, b};
    }
    return std::nullopt;
  }

  std::optional<TrialFailure> flat(RandomModules& gen, const AlgebraSpec& spec, std::size_t t) {
    const auto k = sample_field(spec.base, 1 + static_cast<unsigned>(gen.below(o_.e_max)));
    auto image = linear_image(random_nonzero_vector(gen, k, spec.r));
    if (gen.coin()) {
      for (auto& term : random_higher_terms(gen, spec, k)) image.push_back(std::move(term));
    }
    auto f = check_flat(spec, k, image);
    const char* check = "flat";
    if (!f) {
      f = check_nonflat_rejected(spec);
      check = "nonflat";
    }
    if (f) {
      auto b = bundle_base(check, "flat", o_, t, *f);
      b["algebra"] = algebra_to_json(spec);
      b["field"] = field_to_json(k);
      b["image"] = image_to_json(image);
      return TrialFailure{t, *f, b};
    }
    return std::nullopt;
  }

  std::optional<TrialFailure> perturb(RandomModules& gen, const AlgebraSpec& spec, std::size_t t) {
    const auto k = sample_field(spec.base, 1 + static_cast<unsigned>(gen.below(o_.e_max)));
    const auto linear = linear_image(random_nonzero_vector(gen, k, spec.r));
    const auto higher = random_higher_terms(gen, spec, k);
    std::vector<ModuleRep> panel;
    for (std::size_t i = 0; i < kPanelSize; ++i) panel.push_back(gen.module(spec, kPanelMaxDim));
    if (auto f = check_perturb(spec, k, linear, higher, panel)) {
      auto b = bundle_base("perturb", "perturb", o_, t, *f);
      b["algebra"] = algebra_to_json(spec);
      b["field"] = field_to_json(k);
      b["image"] = image_to_json(linear);
      b["perturbation"] = image_to_json(higher);
      b["modules"] = json::array();
      for (const auto& m : panel) b["modules"].push_back(module_to_json(m));
      return TrialFailure{t, *f, b};
    }
    return std::nullopt;
  }

  const VerifyOptions& o_;
};

std::optional<std::string> first_mismatch(const FormulaReport& r) {
  if (r.holds()) return std::nullopt;
  for (const auto& row : r.rows) {
    if (row.lhs != row.rhs) {
      return r.formula + " fails at " + row.point + ": lhs " + verdict(row.lhs) + ", rhs " + verdict(row.rhs);
    }
  }
  return r.formula + " fails";
}

std::optional<std::string> guarded(const std::function<std::optional<std::string>()>& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return std::string("unexpected error: ") + e.category() + ": " + e.what();
  }
}

}  // namespace

bool VerifyReport::ok() const {
  for (const auto& s : suites)
    if (s.failed) return false;
  return true;
}

std::string VerifyReport::to_string() const {
  std::ostringstream os;
  std::size_t passed = 0, failed = 0;
  for (const auto& s : suites) {
    os << "suite " << s.suite << ": " << s.passed + s.failed << " trials, " << s.passed << " passed, " << s.failed
       << " failed\n";
    for (const auto& f : s.failures) os << "  trial " << f.trial << ": " << f.detail << "\n";
    passed += s.passed;
    failed += s.failed;
  }
  os << "total: " << passed + failed << " trials, " << passed << " passed, " << failed << " failed\n";
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"dade", "tensor", "hom", "endo", "flat", "perturb"};
  return names;
}

VerifyReport run_verify(const VerifyOptions& options) {
  if (options.ps.empty() || options.rs.empty()) throw Error(ErrorKind::InvalidArgument, "p and r lists must be nonempty");
  for (auto p : options.ps)
    if (!is_prime(p)) throw Error(ErrorKind::CompositeCharacteristic, std::to_string(p) + " is not prime");
  for (auto r : options.rs)
    if (r == 0) throw Error(ErrorKind::InvalidArgument, "r must be positive");
  if (options.e_max == 0) throw Error(ErrorKind::InvalidArgument, "sample degree must be positive");
  const auto& names = suite_names();
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (options.suite == "all" || options.suite == names[i]) chosen.push_back(i);
  if (chosen.empty()) throw Error(ErrorKind::InvalidArgument, "unknown suite '" + options.suite + "'");
  VerifyReport report;
  Runner runner(options);
  for (auto i : chosen) report.suites.push_back(runner.run(names[i], i));
  return report;
}

std::optional<std::string> check_dade(const ModuleRep& m, unsigned e_max) {
  return guarded([&]() -> std::optional<std::string> {
    const auto r = verify_dade(m, e_max);
    if (r.agree) return std::nullopt;
    return "freeness and support disagree: " + r.to_string();
  });
}

std::optional<std::string> check_tensor(const ModuleRep& m, const ModuleRep& n, unsigned e_max) {
  return guarded([&]() -> std::optional<std::string> {
    const auto mn = tensor(m, n);
    const auto v = validate(mn.spec(), mn.actions());
    if (!v.ok()) return "tensor product is not a module: " + v.message;
    return first_mismatch(verify_tensor_formula(m, n, e_max));
  });
}

std::optional<std::string> check_hom(const ModuleRep& m, const ModuleRep& n, unsigned e_max) {
  return guarded([&]() -> std::optional<std::string> {
    const auto h = hom(m, n);
    const auto v = validate(h.spec(), h.actions());
    if (!v.ok()) return "Hom is not a module: " + v.message;
    return first_mismatch(verify_hom_formula(m, n, e_max));
  });
}

std::optional<std::string> check_hom_projective(const ModuleRep& projective, const ModuleRep& n) {
  return guarded([&]() -> std::optional<std::string> {
    if (!is_free(projective)) return std::string("input module is not projective");
    if (!is_free(hom(projective, n))) return std::string("Hom(P, N) is not projective");
    if (!is_free(hom(n, projective))) return std::string("Hom(N, P) is not projective");
    return std::nullopt;
  });
}

std::optional<std::string> check_endo(const ModuleRep& m) {
  return guarded([&]() -> std::optional<std::string> {
    const bool fm = is_free(m);
    const bool fe = is_free(hom(m, m));
    if (fm == fe) return std::nullopt;
    return std::string("M projective: ") + (fm ? "yes" : "no") + ", End(M) projective: " + (fe ? "yes" : "no");
  });
}

std::optional<std::string> check_flat(const AlgebraSpec& spec, const Field& field, const std::vector<ImageTerm>& image) {
  return guarded([&]() -> std::optional<std::string> {
    const auto alpha = PiPoint::make_general(spec, field, image);
    if (!is_flat(alpha)) return "constructed point " + alpha.to_string() + " reports not flat";
    if (!is_flat(linear_part(alpha))) return "linear part of " + alpha.to_string() + " is not flat";
    return std::nullopt;
  });
}

std::optional<std::string> check_nonflat_rejected(const AlgebraSpec& spec) {
  auto rejected = [&](const std::vector<ImageTerm>& image) {
    try {
      PiPoint::make_general(spec, spec.base, image);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::NotFlat;
    }
    return false;
  };
  if (!rejected({})) return std::string("image 0 was accepted");
  if (spec.r >= 2) {
    std::vector<unsigned> e(spec.r, 0);
    e[0] = e[1] = 1;
    if (!rejected({{e, FieldElement::one(spec.base)}})) return std::string("image z1*z2 was accepted");
  }
  return std::nullopt;
}

std::optional<std::string> check_perturb(const AlgebraSpec& spec, const Field& field, const std::vector<ImageTerm>& linear,
                                         const std::vector<ImageTerm>& perturbation,
                                         const std::vector<ModuleRep>& panel) {
  return guarded([&]() -> std::optional<std::string> {
    const auto alpha = PiPoint::make_general(spec, field, linear);
    auto full_image = linear;
    full_image.insert(full_image.end(), perturbation.begin(), perturbation.end());
    const auto beta = PiPoint::make_general(spec, field, full_image);
    for (std::size_t i = 0; i < panel.size(); ++i) {
      const auto mk = base_change(panel[i], field);
      const bool a = is_full(restrict(alpha, mk), spec.p);
      const bool b = is_full(restrict(beta, mk), spec.p);
      if (a != b) {
        return "panel module " + std::to_string(i) + ": " + alpha.to_string() + " gives " + (a ? "free" : "not free") +
               ", " + beta.to_string() + " gives " + (b ? "free" : "not free");
      }
    }
    return std::nullopt;
  });
}

ReplayResult replay_bundle(const json& b) {
  if (!b.is_object() || b.value("format", "") != kBundleFormat || !b.contains("check")) {
    throw Error(ErrorKind::SyntaxError, "not a counterexample bundle");
  }
  ReplayResult res;
  res.check = b["check"].get<std::string>();
  const unsigned e_max = b.value("e_max", 2u);
  std::vector<ModuleRep> ms;
  if (b.contains("modules")) {
    for (const auto& mj : b["modules"]) ms.push_back(module_from_json(mj));
  }
  auto need = [&](std::size_t k) {
    if (ms.size() < k) throw Error(ErrorKind::SyntaxError, "bundle holds too few modules for " + res.check);
  };
  std::optional<std::string> f;
  if (res.check == "dade") {
    need(1);
    f = check_dade(ms[0], e_max);
  } else if (res.check == "tensor") {
    need(2);
    f = check_tensor(ms[0], ms[1], e_max);
  } else if (res.check == "hom") {
    need(2);
    f = check_hom(ms[0], ms[1], e_max);
  } else if (res.check == "hom_projective") {
    need(2);
    f = check_hom_projective(ms[0], ms[1]);
  } else if (res.check == "endo") {
    need(1);
    f = check_endo(ms[0]);
  } else if (res.check == "flat" || res.check == "nonflat" || res.check == "perturb") {
    const auto spec = algebra_from_json(b.at("algebra"));
    const auto field = field_from_json(b.at("field"));
    const auto image = image_from_json(field, b.at("image"));
    if (res.check == "flat") f = check_flat(spec, field, image);
    if (res.check == "nonflat") f = check_nonflat_rejected(spec);
    if (res.check == "perturb") f = check_perturb(spec, field, image, image_from_json(field, b.at("perturbation")), ms);
  } else {
    throw Error(ErrorKind::SyntaxError, "unknown check '" + res.check + "'");
  }
  res.failed = f.has_value();
  res.detail = f.value_or("check passes");
  return res;
}

}  // namespace pisupp
