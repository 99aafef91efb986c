#pragma once

// Seeded random modules whose commuting and nilpotency invariants hold by construction.
//
// Families, picked uniformly:
//  - polynomial: Z_i = sum_j c_ij T^j for one p-nilpotent T = S J S^{-1} (J a random Jordan matrix);
//  - quotient:   A / (A l^u) for a random nonzero linear form l and 1 <= u < p;
//  - free:       a smaller random module plus free summands;
//  - sum:        the direct sum of two smaller random modules.
// Every result is conjugated by a random invertible matrix. Draws use a rejection-sampled
// bounded integer on top of std::mt19937_64, so streams are identical across platforms.

#include <cstdint>
#include <random>

#include "pisupp/groupalg.hpp"

namespace pisupp {

class RandomModules {
 public:
  explicit RandomModules(std::uint64_t seed) : rng_(seed) {}

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  bool coin() { return below(2) == 1; }

  FiniteField::Elem element(const FiniteField& ff) { return static_cast<FiniteField::Elem>(below(ff.size())); }
  Matrix invertible(const Field& field, std::size_t n);

  /// A random module of dimension between 1 and max_dim (max_dim >= 1), over a finite base.
  ModuleRep module(const AlgebraSpec& spec, std::size_t max_dim);
  /// free(g) in a random basis, g >= 1, dimension at most max_dim when possible.
  ModuleRep projective(const AlgebraSpec& spec, std::size_t max_dim);
  /// Random flavors, one per generator.
  std::vector<Flavor> flavors(unsigned r);

 private:
  ModuleRep polynomial_family(const AlgebraSpec& spec, std::size_t n);
  ModuleRep quotient_family(const AlgebraSpec& spec, std::size_t max_dim);
  ModuleRep conjugated(const ModuleRep& m);

  std::mt19937_64 rng_;
};

/// Quotient of M by the submodule generated by the given column vectors.
ModuleRep quotient_module(const ModuleRep& m, const std::vector<Matrix>& generators);

}  // namespace pisupp
