#pragma once

// Brute-force reference for lexicographic filtrations on quiver
// representations with an r = 1 preset. It works directly on the lattice of
// subrepresentations of E: a subquotient is an interval [G, H], its charge
// comes from the dimension vector difference, and the level charges are
// spelled out explicitly for j = 1. No engine code is used.

#include "stability/charge.hpp"
#include "stability/fp_linalg.hpp"
#include "stability/quiver.hpp"

#include <vector>

namespace oracle {

struct Filtration {
  std::vector<std::vector<stab::fp::Subspace>> chain;  // 0, ..., E
  std::vector<stab::PhaseVector> vectors;
};

/// l in {1, 2}; t has l entries.
Filtration lex_filtration(const stab::quiver::Rep& e, const stab::quiver::ChargePreset& preset, int level,
                          const std::vector<stab::Rational>& t);

}  // namespace oracle
