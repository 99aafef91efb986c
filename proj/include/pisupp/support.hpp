#pragma once

// π-support and π-cosupport of finite-dimensional modules, and the checks built on them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pisupp/groupalg.hpp"
#include "pisupp/pipoint.hpp"

namespace pisupp {

/// Homogeneous coordinates [a_1 : ... : a_r], first nonzero coordinate 1.
class ProjPoint {
 public:
  /// Errors: AllCoefficientsZero, FieldMismatch.
  static ProjPoint make(std::vector<FieldElement> coords);

  const Field& field() const noexcept { return field_; }
  const std::vector<FieldElement>& coords() const noexcept { return coords_; }
  /// The linear π-point t -> sum a_i z_i.
  PiPoint pi_point(const AlgebraSpec& spec) const;
  /// "[1:0]", "[1:w+1]" (w the generator of the extension), "[1:s2]".
  std::string to_string() const;
  bool operator==(const ProjPoint& o) const;

 private:
  Field field_;
  std::vector<FieldElement> coords_;
};

struct SamplePoint {
  ProjPoint point;
  unsigned degree = 1;  // smallest e with the point rational over the degree-e sample field
};

struct PointVerdict {
  ProjPoint point;
  unsigned degree = 1;
  bool in_support = false;  // or in the cosupport, for cosupport samples
};

struct SupportDescription {
  enum class Ideal { NotComputed, Everything, Generators };

  std::string module_name;
  std::size_t dim = 0;
  AlgebraSpec spec;
  unsigned e_max = 0;
  std::vector<PointVerdict> sampled;  // canonical enumeration order
  std::optional<bool> generic_in_support;
  Ideal ideal = Ideal::NotComputed;
  Field ideal_field;                  // base with s1..sr adjoined
  std::vector<Polynomial> generators; // monic, deduplicated, graded-lex descending

  std::vector<ProjPoint> support_points() const;
  bool sample_empty() const;
  /// Deterministic text: sampled verdicts in canonical order, generic verdict, ideal generators.
  std::string report() const;
};

enum class CosupportRoute { Coinduced, FiniteDimensionalFallback };

struct CosupportVerdict {
  bool in_cosupport = false;
  CosupportRoute route = CosupportRoute::Coinduced;
  std::string note;
};

/// Not full restriction of M_K along alpha. Errors: NotARefinement, SpecMismatch.
bool in_support(const ModuleRep& m, const PiPoint& alpha);
/// Over a finite extension K of the base: computed on coinduced(M, K). When alpha's field has
/// transcendentals beyond the base, the support verdict is returned with route
/// FiniteDimensionalFallback (the two agree for finite-dimensional M).
CosupportVerdict in_cosupport(const ModuleRep& m, const PiPoint& alpha);

/// Default cap on r * q^(e_max * r), q the size of the base's finite part.
inline constexpr std::uint64_t kDefaultSampleBudget = 1u << 20;

/// The degree-e extension of the base over which degree-e sample points live.
/// Errors: BudgetExceeded when it would pass the extension degree cap.
Field sample_field(const Field& base, unsigned e);

/// One canonical representative of every point of P^{r-1}(F_{q^e}), e <= e_max, points over
/// proper subfields listed once at their smallest degree. Errors: BudgetExceeded, InvalidArgument.
std::vector<SamplePoint> sample_points(const AlgebraSpec& spec, unsigned e_max,
                                        std::uint64_t budget = kDefaultSampleBudget);

/// Sampled verdicts plus the generic verdict at t -> z1 + s2 z2 + ... + sr zr.
SupportDescription support_sample(const ModuleRep& m, unsigned e_max, std::uint64_t budget = kDefaultSampleBudget);
/// Same sample, cosupport verdicts (route per point as in in_cosupport).
SupportDescription cosupport_sample(const ModuleRep& m, unsigned e_max, std::uint64_t budget = kDefaultSampleBudget);

inline constexpr std::size_t kDefaultIdealDimensionCap = 12;

/// Nonzero (n/p)-minors of N(s)^{p-1}, N(s) = sum s_i Z_i; Everything when p does not divide n.
/// Errors: DimensionTooLarge.
SupportDescription support_ideal(const ModuleRep& m, std::size_t max_dim = kDefaultIdealDimensionCap);
/// Every generator vanishes at the point (always true for Everything).
bool ideal_vanishes_at(const SupportDescription& ideal, const ProjPoint& point);

bool is_projective(const ModuleRep& m);

struct DadeReport {
  bool is_free = false;
  bool sample_empty = false;
  bool generic_in_support = false;
  std::size_t points = 0;
  bool agree = false;  // is_free == (sample empty and generic point outside the support)
  std::string to_string() const;
};

DadeReport verify_dade(const ModuleRep& m, unsigned e_max, std::uint64_t budget = kDefaultSampleBudget);

struct FormulaComparison {
  std::string point;  // rendered point, "generic" for the generic point
  bool lhs = false;
  bool rhs = false;
};

struct FormulaReport {
  std::string formula;
  std::vector<FormulaComparison> rows;  // sampled points in canonical order, then the generic point
  bool holds() const;
  std::size_t mismatches() const;
  std::string to_string() const;
};

/// supp(M ⊗ N) = supp(M) ∩ supp(N), pointwise on the sample and at the generic point.
FormulaReport verify_tensor_formula(const ModuleRep& m, const ModuleRep& n, unsigned e_max,
                                    std::uint64_t budget = kDefaultSampleBudget);
/// cosupp(Hom(M, N)) = supp(M) ∩ cosupp(N); the left side is computed on the Hom module itself.
FormulaReport verify_hom_formula(const ModuleRep& m, const ModuleRep& n, unsigned e_max,
                                 std::uint64_t budget = kDefaultSampleBudget);

struct JordanHomEntry {
  unsigned u = 0, v = 0;
  std::size_t dim = 0;
  bool is_free = false;
  bool ok = false;  // dim = uv and (free iff u = p or v = p)
};

struct JordanHomTable {
  unsigned p = 0;
  std::vector<JordanHomEntry> entries;
  bool ok() const;
  std::string to_string() const;
};

/// Hom(J_u, J_v) over k[t]/(t^p) with primitive t, for all 1 <= u, v <= p.
JordanHomTable verify_jordan_hom_table(unsigned p);

}  // namespace pisupp
