#pragma once

// Finite-dimensional quiver representations over F_p: a finite-length abelian
// category with brute-force subobject enumeration, used as the generic
// backend for the filtration engines.

#include "stability/cat_api.hpp"
#include "stability/charge.hpp"
#include "stability/fp_linalg.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace stab::quiver {

struct Arrow {
  int source = 0;
  int target = 0;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

class Quiver {
 public:
  Quiver(int vertices, std::vector<Arrow> arrows);

  int vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  bool acyclic() const { return acyclic_; }

  friend bool operator==(const Quiver& x, const Quiver& y) {
    return x.vertices_ == y.vertices_ && x.arrows_ == y.arrows_;
  }

 private:
  int vertices_;
  std::vector<Arrow> arrows_;
  bool acyclic_;
};

/// 1 -> 2.
std::shared_ptr<const Quiver> a2_quiver();
/// Two vertices, two parallel arrows 1 => 2.
std::shared_ptr<const Quiver> kronecker_quiver();

class Rep {
 public:
  /// maps[i] is dims[target] x dims[source] for arrow i.
  Rep(std::shared_ptr<const Quiver> quiver, int p, std::vector<int> dims,
      std::vector<fp::Matrix> maps);

  static Rep zero(std::shared_ptr<const Quiver> quiver, int p);

  const Quiver& quiver() const { return *quiver_; }
  const std::shared_ptr<const Quiver>& quiver_ptr() const { return quiver_; }
  int p() const { return p_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim(int v) const { return dims_[static_cast<std::size_t>(v)]; }
  const std::vector<fp::Matrix>& maps() const { return maps_; }
  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }

  /// Stable content hash (FNV-1a over p, dims and matrix entries).
  std::uint64_t fingerprint() const;

  friend bool operator==(const Rep& x, const Rep& y) {
    return x.p_ == y.p_ && x.dims_ == y.dims_ && x.maps_ == y.maps_ && *x.quiver_ == *y.quiver_;
  }

 private:
  std::shared_ptr<const Quiver> quiver_;
  int p_;
  std::vector<int> dims_;
  std::vector<fp::Matrix> maps_;
};

/// Direct sum with block-diagonal arrow matrices.
Rep direct_sum(const Rep& x, const Rep& y);

/// One arrow-closed subspace per vertex inside `parent`.
struct Subrep {
  std::shared_ptr<const Rep> parent;
  std::vector<fp::Subspace> spaces;

  std::vector<int> dims() const;
  bool is_zero() const;
  bool is_whole() const;

  friend bool operator==(const Subrep& x, const Subrep& y) {
    return x.spaces == y.spaces && *x.parent == *y.parent;
  }
};

struct Morphism {
  Rep source;
  Rep target;
  std::vector<fp::Matrix> components;  // per vertex, dims_target(v) x dims_source(v)
};

bool is_morphism(const Morphism& f);
Morphism identity_morphism(const Rep& e);
Morphism zero_morphism(const Rep& e, const Rep& f);
Morphism compose(const Morphism& g, const Morphism& f);  // g o f
/// Linear combination sum_i coeffs[i] * basis[i] of parallel morphisms.
Morphism combine(const std::vector<Morphism>& basis, const std::vector<int>& coeffs);

/// Per-vertex linear functionals giving charge(E) with a_k = alpha_k . d(E)
/// and b_k = beta_k . d(E).
struct ChargePreset {
  std::string name;
  int r = 0;
  std::vector<std::vector<Rational>> alpha;  // [k][vertex]
  std::vector<std::vector<Rational>> beta;   // [k][vertex]
  bool validated = false;

  int vertex_count() const;
  ChargePolynomial charge(const std::vector<int>& dims) const;
  void check_shape() const;
};

struct PresetAudit {
  struct Failure {
    std::vector<int> dims;
    PositivityVerdict verdict;
  };
  std::size_t checked = 0;
  std::vector<Failure> failures;
  bool pass() const { return failures.empty(); }
};

/// Positivity cascade on every standard basis vector and on `samples`
/// dimension vectors with entries in 0..3 drawn from `seed`.
PresetAudit audit_preset(const ChargePreset& preset, std::uint64_t seed = 0, int samples = 64);

/// Audits and sets `validated` accordingly.
ChargePreset validated(ChargePreset preset, std::uint64_t seed = 0, int samples = 64);

/// Built-in presets on two-vertex quivers (vertex 0 is the source).
ChargePreset preset_a2_0();
ChargePreset preset_a2_1();
/// r = 1; the simple at the target vertex has zero level-1 charge.
ChargePreset preset_mixed();
/// r = 1; the simple at the source vertex has zero level-1 charge.
ChargePreset preset_mixed_dual();
/// r = 1; on the A2 fixture the simple sub destabilizes exactly when t_1 > 1.
ChargePreset preset_wall();
/// CP-A2-1 with a negative entry in beta_1; fails validation.
ChargePreset preset_flipped();

std::vector<ChargePreset> builtin_presets();
std::optional<ChargePreset> find_builtin_preset(const std::string& name);

/// Deterministic in seed; dims uniform in 0..bound[v], entries uniform in F_p.
Rep random_rep(std::shared_ptr<const Quiver> quiver, const std::vector<int>& dim_bound,
               std::uint64_t seed, int p = 2);

class RepCategory {
 public:
  using Object = Rep;
  using Subobject = Subrep;
  using Morphism = quiver::Morphism;

  struct Options {
    int dimension_bound = 8;
    /// When set, subobject lists come back in a seeded pseudo-random order.
    std::optional<std::uint64_t> shuffle_seed;
    bool force_unvalidated = false;
  };

  explicit RepCategory(ChargePreset preset);
  RepCategory(ChargePreset preset, Options options);

  static constexpr cat::BackendCapabilities capabilities() {
    return {.supports_subobject_enumeration = true,
            .supports_hom_basis = true,
            .supports_closed_form_hn = false};
  }
  static constexpr const char* backend_name() { return "quiver"; }

  const ChargePreset& preset() const { return preset_; }
  const Options& options() const { return options_; }

  ChargePolynomial charge(const Rep& e) const { return preset_.charge(e.dims()); }
  bool is_zero(const Rep& e) const { return e.is_zero(); }

  /// Every subrepresentation, including 0 and E.
  std::vector<Subrep> subobjects(const Rep& e) const;

  Subrep zero_subobject(const Rep& e) const;
  Subrep whole(const Rep& e) const;

  /// The subobject as a representation in its RREF bases.
  Rep child(const Subrep& s) const;
  Rep quotient(const Subrep& s) const;
  Morphism projection(const Subrep& s) const;
  Morphism inclusion(const Subrep& s) const;

  /// `inner` is a subobject of child(outer); returns it as a subobject of outer's parent.
  Subrep embed(const Subrep& inner, const Subrep& outer) const;

  Subrep sum(const Subrep& x, const Subrep& y) const;
  Subrep intersect(const Subrep& x, const Subrep& y) const;

  Subrep kernel(const Morphism& f) const;
  Subrep image(const Morphism& f) const;
  Rep cokernel(const Morphism& f) const;
  bool is_surjective(const Morphism& f) const;

  /// f^{-1}(q) for a surjection f : E -> Q and q a subobject of Q.
  Subrep pullback(const Subrep& q, const Morphism& f) const;

  std::vector<Morphism> hom_basis(const Rep& e, const Rep& f) const;

 private:
  ChargePreset preset_;
  Options options_;
};

static_assert(cat::EnumerableCategory<RepCategory>);

}  // namespace stab::quiver
