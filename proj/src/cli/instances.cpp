#include "stability/instances.hpp"

namespace stab::instances {

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Rational random_t(std::mt19937_64& rng) {
  static const Rational choices[] = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(3)};
  return choices[rng() % 5];
}

std::vector<quiver::ChargePreset> validated_presets(bool r1_only) {
  std::vector<quiver::ChargePreset> out;
  for (auto& p : quiver::builtin_presets()) {
    if (!p.validated || (r1_only && p.r != 1)) continue;
    out.push_back(std::move(p));
  }
  return out;
}

QuiverInstance random_quiver_instance(std::uint64_t seed, bool r1_only) {
  std::mt19937_64 rng(seed);
  const auto presets = validated_presets(r1_only);
  auto preset = presets[rng() % presets.size()];
  const bool kronecker = rng() % 2 == 1;
  auto q = kronecker ? quiver::kronecker_quiver() : quiver::a2_quiver();
  const std::vector<int> bound = kronecker ? std::vector<int>{2, 3} : std::vector<int>{3, 3};
  auto rep = quiver::random_rep(q, bound, rng());
  std::vector<Rational> t;
  for (int k = 0; k <= preset.r; ++k) t.push_back(random_t(rng));
  std::string label = (kronecker ? "K2" : "A2") + std::string(" ") + preset.name + " seed=" + std::to_string(seed);
  return {std::move(preset), std::move(rep), std::move(t), std::move(label)};
}

std::vector<quiver::Rep> all_reps(const std::shared_ptr<const quiver::Quiver>& q,
                                  const std::vector<int>& bound, int p) {
  std::vector<quiver::Rep> out;
  std::vector<int> dims(bound.size(), 0);
  auto next_dims = [&] {
    for (std::size_t v = 0; v < dims.size(); ++v) {
      if (dims[v] < bound[v]) {
        ++dims[v];
        return true;
      }
      dims[v] = 0;
    }
    return false;
  };
  do {
    std::size_t entries = 0;
    for (const auto& a : q->arrows()) {
      entries += static_cast<std::size_t>(dims[static_cast<std::size_t>(a.source)] *
                                          dims[static_cast<std::size_t>(a.target)]);
    }
    std::vector<int> digits(entries, 0);
    while (true) {
      std::vector<fp::Matrix> mats;
      std::size_t pos = 0;
      for (const auto& a : q->arrows()) {
        const int rows = dims[static_cast<std::size_t>(a.target)];
        const int cols = dims[static_cast<std::size_t>(a.source)];
        std::vector<int> m(digits.begin() + static_cast<std::ptrdiff_t>(pos),
                           digits.begin() + static_cast<std::ptrdiff_t>(pos + static_cast<std::size_t>(rows * cols)));
        pos += static_cast<std::size_t>(rows * cols);
        mats.emplace_back(p, rows, cols, std::move(m));
      }
      out.emplace_back(q, p, dims, std::move(mats));
      std::size_t i = 0;
      while (i < digits.size() && digits[i] == p - 1) digits[i++] = 0;
      if (i == digits.size()) break;
      ++digits[i];
    }
  } while (next_dims());
  return out;
}

}  // namespace stab::instances
