#pragma once

// Split coherent sheaves on the projective line: direct sums of line
// bundles O(a) and torsion sheaves at labelled points. Filtrations are
// closed form, so this backend serves as an oracle for the generic engines.

#include "stability/cat_api.hpp"
#include "stability/charge.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stab::p1 {

struct TorsionPoint {
  std::string pt;
  int len = 1;
  friend bool operator==(const TorsionPoint&, const TorsionPoint&) = default;
  friend auto operator<=>(const TorsionPoint&, const TorsionPoint&) = default;
};

class SplitSheaf {
 public:
  SplitSheaf() = default;
  /// Sorts summands into canonical order; throws on a torsion length < 1.
  SplitSheaf(std::vector<int> line_degrees, std::vector<TorsionPoint> torsion);

  static SplitSheaf line(int a) { return SplitSheaf({a}, {}); }
  static SplitSheaf skyscraper(std::string pt, int len) { return SplitSheaf({}, {{std::move(pt), len}}); }

  const std::vector<int>& line_degrees() const { return line_degrees_; }  // decreasing
  const std::vector<TorsionPoint>& torsion() const { return torsion_; }   // sorted

  int rank() const { return static_cast<int>(line_degrees_.size()); }
  int degree() const;
  int torsion_length() const;
  bool is_zero() const { return line_degrees_.empty() && torsion_.empty(); }
  bool is_torsion() const { return line_degrees_.empty(); }

  /// Compact text such as "O(1)+O(-1)+T(p,2)", or "0".
  std::string str() const;

  friend SplitSheaf operator+(const SplitSheaf& x, const SplitSheaf& y);  // direct sum
  friend bool operator==(const SplitSheaf&, const SplitSheaf&) = default;

 private:
  std::vector<int> line_degrees_;
  std::vector<TorsionPoint> torsion_;
};

/// z with Im z > 0, or Im z = 0 and Re z < 0.
void check_z(const GaussianRational& z);
GaussianRational default_z();  // -1 + i

/// z * Hilb_E(n) with Hilb_E(n) = rk n + rk + deg + len and r = 1.
ChargePolynomial sheaf_charge_poly(const SplitSheaf& e, const GaussianRational& z = default_z());

/// Indecomposable summands: each O(a) and each torsion point separately.
std::vector<SplitSheaf> summands(const SplitSheaf& e);

/// Phase vector of an indecomposable summand for levels 1..t.size(),
/// computed from the nested charges of its charge polynomial.
PhaseVector summand_vector(const SplitSheaf& s, std::span<const Rational> t,
                           const GaussianRational& z = default_z());

struct SheafFiltration {
  std::vector<SplitSheaf> chain;  // 0, E_1, ..., E
  std::vector<SplitSheaf> factors;
  std::vector<PhaseVector> vectors;

  std::size_t size() const { return factors.size(); }
};

/// Summands grouped by phase vector in strictly decreasing lex order; the
/// number of levels is t.size() (1 or 2).
SheafFiltration closed_form_lex_filtration(const SplitSheaf& e, std::span<const Rational> t,
                                           const GaussianRational& z = default_z());

/// Torsion, or torsion free with all line degrees equal.
bool is_slope_semistable(const SplitSheaf& e);
/// On the projective line this is the same condition.
bool is_gieseker_semistable(const SplitSheaf& e);

struct LevelVerdict {
  bool semistable = false;
  PhaseVector vector;
};

/// l-th level semistability from the nested charges alone: every summand
/// has the same phase vector. l = t.size().
LevelVerdict level_semistable(const SplitSheaf& e, std::span<const Rational> t,
                              const GaussianRational& z = default_z());

/// E_0 = torsion part, E_1 = E.
std::vector<SplitSheaf> degree_filtration(const SplitSheaf& e);

/// dim Hom(E, F) for split sheaves.
long long hom_dimension(const SplitSheaf& e, const SplitSheaf& f);

struct SheafTorsionSplit {
  SplitSheaf t;
  SplitSheaf f;
  PhaseVector cutoff;
  SheafFiltration lex;
  bool hom_vanishes = true;
};

/// Cutoff coordinates must be finite and cutoff.size() == t.size().
SheafTorsionSplit torsion_split(const SplitSheaf& e, const PhaseVector& cutoff,
                                std::span<const Rational> t, const GaussianRational& z = default_z());

constexpr cat::BackendCapabilities capabilities() {
  return {.supports_subobject_enumeration = false,
          .supports_hom_basis = false,
          .supports_closed_form_hn = true};
}

/// Up to four summands with degrees in -3..3 and torsion lengths 1..3 at
/// points p, q, r. Deterministic in seed.
SplitSheaf random_sheaf(std::uint64_t seed);
/// Random admissible z with small integer parts and Im z > 0.
GaussianRational random_z(std::uint64_t seed);

}  // namespace stab::p1
