#pragma once

// Seeded verification suites. Each trial draws its inputs from a generator seeded by
// (seed, suite, trial), so any single trial can be reproduced on its own. A failing trial is
// captured as a JSON bundle holding the exact inputs; replay_bundle reruns that check.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pisupp/groupalg.hpp"
#include "pisupp/pipoint.hpp"

namespace pisupp {

struct VerifyOptions {
  std::string suite = "all";  // dade | tensor | hom | endo | flat | perturb | all
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  std::vector<unsigned> ps{2};
  std::vector<unsigned> rs{2};
  unsigned e_max = 2;
  bool mixed_flavors = true;  // otherwise every generator has the group flavor
};

struct TrialFailure {
  std::size_t trial = 0;
  std::string detail;
  nlohmann::json bundle;
};

struct SuiteResult {
  std::string suite;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<TrialFailure> failures;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool ok() const;
  /// Deterministic summary, one line per suite plus failure details.
  std::string to_string() const;
};

const std::vector<std::string>& suite_names();

/// Errors: InvalidArgument for an unknown suite or empty p/r lists, CompositeCharacteristic.
VerifyReport run_verify(const VerifyOptions& options);

/// The individual checks; each returns a failure description or std::nullopt.
std::optional<std::string> check_dade(const ModuleRep& m, unsigned e_max);
std::optional<std::string> check_tensor(const ModuleRep& m, const ModuleRep& n, unsigned e_max);
std::optional<std::string> check_hom(const ModuleRep& m, const ModuleRep& n, unsigned e_max);
/// Hom with a projective factor is projective, both ways round.
std::optional<std::string> check_hom_projective(const ModuleRep& projective, const ModuleRep& n);
/// M is projective iff End(M) is.
std::optional<std::string> check_endo(const ModuleRep& m);
/// The image (with nonzero linear part) defines a flat point, and so does its linear part.
std::optional<std::string> check_flat(const AlgebraSpec& spec, const Field& field, const std::vector<ImageTerm>& image);
/// Images 0 and (for r >= 2) z1*z2 are rejected as not flat.
std::optional<std::string> check_nonflat_rejected(const AlgebraSpec& spec);
/// alpha and alpha + higher-order terms give the same projectivity verdicts on the panel.
std::optional<std::string> check_perturb(const AlgebraSpec& spec, const Field& field, const std::vector<ImageTerm>& linear,
                                         const std::vector<ImageTerm>& perturbation, const std::vector<ModuleRep>& panel);

struct ReplayResult {
  std::string check;
  bool failed = false;  // the recorded failure reproduced
  std::string detail;
};

/// Errors: SyntaxError for malformed bundles, plus module file errors.
ReplayResult replay_bundle(const nlohmann::json& bundle);

}  // namespace pisupp
