#pragma once

// Modules over A = K[z_1..z_r]/(z_1^p..z_r^p) with a Hopf flavor per generator, and the
// Hopf-algebraic constructions on them.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pisupp/exactfield.hpp"
#include "pisupp/linalg.hpp"

namespace pisupp {

/// Comultiplication/antipode shape of a generator.
///  group:     z -> z⊗1 + z⊗z + 1⊗z,   antipode z -> (z+1)^{p-1} - 1
///  primitive: z -> z⊗1 + 1⊗z,         antipode z -> -z
enum class Flavor { Group, Primitive };

const char* to_string(Flavor f) noexcept;
Flavor flavor_from_string(const std::string& s);

struct AlgebraSpec {
  unsigned p = 2;
  unsigned r = 1;
  std::vector<Flavor> flavors;
  Field base;

  /// All generators share one flavor. Errors: InvalidArgument, CompositeCharacteristic.
  static AlgebraSpec uniform(unsigned p, unsigned r, Flavor flavor, Field base = nullptr);
  /// The same algebra over a different field.
  AlgebraSpec over(Field field) const;
  /// Same p, r and flavors (the base may differ).
  bool same_shape(const AlgebraSpec& o) const { return p == o.p && r == o.r && flavors == o.flavors; }
  bool operator==(const AlgebraSpec& o) const { return same_shape(o) && base == o.base; }
  std::string to_string() const;
};

struct ValidationReport {
  enum class Kind { Ok, Shape, Commutativity, Nilpotence };
  Kind kind = Kind::Ok;
  std::size_t first = 0;   // generator index (0-based)
  std::size_t second = 0;  // second generator of a non-commuting pair
  std::string message;

  bool ok() const { return kind == Kind::Ok; }
};

/// Checks Z_i Z_j = Z_j Z_i and Z_i^p = 0 (and matrix shapes) without throwing.
ValidationReport validate(const AlgebraSpec& spec, const std::vector<Matrix>& actions);

class ModuleRep {
 public:
  /// Errors: ValidationError naming the violated invariant.
  ModuleRep(AlgebraSpec spec, std::vector<Matrix> actions, std::string name = {});
  /// For actions that satisfy the relations by construction (sums, tensor products, Hom,
  /// base change of valid modules): only shapes are checked. Call validate() to recheck.
  static ModuleRep constructed(AlgebraSpec spec, std::vector<Matrix> actions, std::string name = {});

  const AlgebraSpec& spec() const noexcept { return spec_; }
  const Field& field() const noexcept { return spec_.base; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Matrix>& actions() const noexcept { return actions_; }
  const Matrix& action(std::size_t i) const { return actions_.at(i); }
  const std::string& name() const noexcept { return name_; }
  ModuleRep renamed(std::string name) const;

  bool operator==(const ModuleRep& o) const { return spec_ == o.spec_ && actions_ == o.actions_ && dim_ == o.dim_; }

 private:
  struct Trusted {};
  ModuleRep(Trusted, AlgebraSpec spec, std::vector<Matrix> actions, std::string name);

  AlgebraSpec spec_;
  std::size_t dim_;
  std::vector<Matrix> actions_;
  std::string name_;
};

struct InvariantsInfo {
  std::size_t dimension = 0;
  std::vector<Matrix> basis;  // columns killed by every generator
};

/// Regular representation A^g; basis (copy, e) with e in [0,p-1]^r, e_1 most significant.
ModuleRep free_module(const AlgebraSpec& spec, std::size_t rank);
ModuleRep trivial_module(const AlgebraSpec& spec);
/// K[t]/(t^u) for r = 1. Errors: BlockTooBig, InvalidArgument.
ModuleRep jordan_block_module(const AlgebraSpec& spec, unsigned u);

/// Errors: SpecMismatch for the binary constructions.
ModuleRep direct_sum(const ModuleRep& m, const ModuleRep& n);
/// Basis (i, j) -> i*dim(N) + j.
ModuleRep tensor(const ModuleRep& m, const ModuleRep& n);
/// Linear maps M -> N; basis E_{qr} (target q, source r) at q*dim(M) + r.
ModuleRep hom(const ModuleRep& m, const ModuleRep& n);
ModuleRep dual(const ModuleRep& m);
/// Errors: NotARefinement.
ModuleRep base_change(const ModuleRep& m, const Field& field);
/// Hom_base(K, M) as a K-module for a finite extension K, written in the K-basis
/// {x -> Tr(x) m_j} given by the trace pairing. Errors: InfiniteExtension, NotARefinement.
ModuleRep coinduced(const ModuleRep& m, const Field& field);

InvariantsInfo invariants(const ModuleRep& m);
/// n - dim(sum of the images of the z_i): the minimal number of generators.
std::size_t radical_quotient_dim(const ModuleRep& m);
/// Free (equivalently projective, A being local) iff n = p^r * radical_quotient_dim(M).
bool is_free(const ModuleRep& m);

}  // namespace pisupp
