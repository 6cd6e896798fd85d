#pragma once

// Seeded generators shared by the property suite and the tests.

#include "stability/p1.hpp"
#include "stability/quiver.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace stab::instances {

/// splitmix64 of seed combined with an index; stable across platforms.
std::uint64_t mix(std::uint64_t seed, std::uint64_t index);

struct QuiverInstance {
  quiver::ChargePreset preset;
  quiver::Rep rep;
  std::vector<Rational> t;  // r + 1 parameters
  std::string label;
};

/// A2 with dims <= (3,3) or Kronecker with dims <= (2,3) over F_2, a
/// validated preset (r = 1 only when `r1_only`), and t drawn from
/// {1/2, 1, 3/2, 2, 3}.
QuiverInstance random_quiver_instance(std::uint64_t seed, bool r1_only);

/// Every representation with dims <= bound over F_p.
std::vector<quiver::Rep> all_reps(const std::shared_ptr<const quiver::Quiver>& q,
                                  const std::vector<int>& bound, int p = 2);

Rational random_t(std::mt19937_64& rng);

/// Validated presets with vertex count 2.
std::vector<quiver::ChargePreset> validated_presets(bool r1_only);

}  // namespace stab::instances
