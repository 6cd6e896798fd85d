#include "stability/cli.hpp"
#include "stability/hn_engine.hpp"
#include "stability/instances.hpp"
#include "stability/lex_engine.hpp"
#include "stability/p1.hpp"
#include "stability/parallel.hpp"
#include "stability/quiver.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>

namespace stab::cli {

namespace {

using quiver::Rep;
using quiver::RepCategory;
using Failure = std::optional<std::string>;

std::string show(const std::vector<int>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

hn::ChargePlane level_one_plane(const instances::QuiverInstance& inst) {
  return hn::ChargePlane::nested(level_spec(inst.preset.r, inst.t, {}));
}

std::vector<GaussianRational> as_set(std::vector<GaussianRational> v) {
  auto less = [](const GaussianRational& x, const GaussianRational& y) {
    return x.re != y.re ? x.re < y.re : x.im < y.im;
  };
  std::sort(v.begin(), v.end(), less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Failure hn_uniqueness(std::uint64_t seed, const SuiteOptions& opt) {
  const auto inst = instances::random_quiver_instance(seed, false);
  const RepCategory cat(inst.preset);
  const RepCategory shuffled(inst.preset, {.shuffle_seed = seed});
  const auto plane = level_one_plane(inst);
  const hn::HnOptions hopt{opt.inject_fault};
  const auto f = hn::hn_filtration(cat, inst.rep, plane, {}, hopt);
  const auto g = hn::hn_filtration(shuffled, inst.rep, plane, {}, hopt);
  if (f.chain != g.chain) return inst.label + ": chain depends on enumeration order";
  ChargePolynomial total(inst.preset.r);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& s = f.steps[i];
    if (!hn::is_semistable(cat, s.factor, plane).semistable) return inst.label + ": factor not semistable";
    if (i > 0 && !(f.steps[i - 1].slope > s.slope)) return inst.label + ": slopes not strictly decreasing";
    total += cat.charge(s.factor);
  }
  if (!(total == cat.charge(inst.rep))) return inst.label + ": factor charges do not add up";
  return std::nullopt;
}

Failure hull_correspondence(std::uint64_t seed, const SuiteOptions& opt) {
  const auto inst = instances::random_quiver_instance(seed, false);
  const RepCategory cat(inst.preset);
  const auto plane = level_one_plane(inst);
  const auto f = hn::hn_filtration(cat, inst.rep, plane, {}, {opt.inject_fault});
  if (as_set(hn::partial_sums(f)) != as_set(hn::hull_vertices(cat, inst.rep, plane))) {
    return inst.label + ": partial sums differ from hull vertices";
  }
  return std::nullopt;
}

Failure lex_refinement(std::uint64_t seed, const SuiteOptions& opt) {
  const auto inst = instances::random_quiver_instance(seed, true);
  const RepCategory cat(inst.preset);
  const RepCategory shuffled(inst.preset, {.shuffle_seed = seed});
  const lex::LexOptions lopt{{opt.inject_fault}, 1};
  const lex::LexContext two{1, 2, inst.t};
  const lex::LexContext one{1, 1, {inst.t[0]}};
  const auto l2 = lex::lex_filtration(cat, inst.rep, two, lopt);
  const auto l1 = lex::lex_filtration(cat, inst.rep, one, lopt);
  if (lex::lex_filtration(shuffled, inst.rep, two, lopt).chain != l2.chain) {
    return inst.label + ": lex chain depends on enumeration order";
  }
  if (!lex::strictly_decreasing(l2.vectors)) return inst.label + ": vectors not strictly decreasing";
  for (const auto& v : l2.vectors)
    if (!lex::infinity_propagates(v)) return inst.label + ": INFINITY after a finite coordinate";
  // Collapsing equal first coordinates must give back the level-1 filtration.
  std::vector<quiver::Subrep> collapsed{l2.chain.front()};
  std::vector<ExtendedSlope> heads;
  for (std::size_t i = 0; i < l2.size(); ++i) {
    const auto& head = l2.vectors[i].slopes.front();
    if (i + 1 == l2.size() || !(l2.vectors[i + 1].slopes.front() == head)) {
      collapsed.push_back(l2.chain[i + 1]);
      heads.push_back(head);
    }
  }
  if (collapsed != l1.chain) return inst.label + ": level-2 chain does not refine level 1";
  for (std::size_t i = 0; i < heads.size(); ++i)
    if (!(heads[i] == l1.vectors[i].slopes.front())) return inst.label + ": level-1 slopes disagree";
  const auto h = hn::hn_filtration(cat, inst.rep, one.plane({}), {}, lopt.hn);
  if (h.chain != l1.chain) return inst.label + ": level-1 lex differs from HN";
  return std::nullopt;
}

Failure torsion_pair(std::uint64_t seed, const SuiteOptions& opt) {
  const auto inst = instances::random_quiver_instance(seed, false);
  const RepCategory cat(inst.preset);
  const lex::LexContext ctx{inst.preset.r, inst.preset.r + 1, inst.t};
  const lex::LexOptions lopt{{opt.inject_fault}, 1};
  PhaseVector cutoff;
  cutoff.slopes.assign(inst.t.size(), ExtendedSlope(Rational(0)));
  const auto split = lex::torsion_split(cat, inst.rep, cutoff, ctx, lopt);
  if (!split.hom_vanishes.value_or(false)) return inst.label + ": Hom(T,F) is nonzero";
  if (!(cat.charge(split.t) + cat.charge(split.f) == cat.charge(inst.rep))) {
    return inst.label + ": charges of T and F do not add up";
  }
  for (const auto& v : lex::lex_filtration(cat, split.t, ctx, lopt).vectors)
    if (lex_compare(v, cutoff) != std::strong_ordering::greater) return inst.label + ": T has a factor below the cutoff";
  for (const auto& v : lex::lex_filtration(cat, split.f, ctx, lopt).vectors)
    if (lex_compare(v, cutoff) == std::strong_ordering::greater) return inst.label + ": F has a factor above the cutoff";
  const auto audit = lex::tilted_positivity_audit(lex::virtual_class(cat.charge(split.t), cat.charge(split.f)), inst.t);
  if (!audit.pass) return inst.label + ": tilted positivity fails at level " + std::to_string(audit.failed_level);
  return std::nullopt;
}

/// X semistable (first level-1 HN factor of a random rep) plus a zero-charge
/// summand N.
struct ClosurePair {
  quiver::ChargePreset preset;
  Rep x;
  Rep y;
  std::vector<Rational> t;
};

ClosurePair closure_pair(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const bool dual = rng() % 2 == 1;
  auto preset = dual ? quiver::preset_mixed_dual() : quiver::preset_mixed();
  const bool kronecker = rng() % 2 == 1;
  auto q = kronecker ? quiver::kronecker_quiver() : quiver::a2_quiver();
  auto rep = quiver::random_rep(q, {2, 2}, rng());
  std::vector<Rational> t{instances::random_t(rng), instances::random_t(rng)};
  const RepCategory cat(preset);
  const auto plane = hn::ChargePlane::nested(level_spec(1, t, {}));
  Rep x = rep;
  if (!rep.is_zero()) x = hn::hn_filtration(cat, rep, plane).steps.front().factor;
  const int k = static_cast<int>(rng() % 3);
  const std::vector<int> nd = dual ? std::vector<int>{k, 0} : std::vector<int>{0, k};
  const Rep n(q, 2, nd, std::vector<fp::Matrix>(q->arrows().size(), fp::Matrix(2, nd[1], nd[0])));
  auto y = quiver::direct_sum(x, n);
  return {std::move(preset), std::move(x), std::move(y), std::move(t)};
}

Failure abelianizer_closure(std::uint64_t seed, const SuiteOptions&) {
  const auto pair = closure_pair(seed);
  const RepCategory cat(pair.preset);
  const auto plane = hn::ChargePlane::nested(level_spec(1, pair.t, {}));
  std::mt19937_64 rng(instances::mix(seed, 7));
  for (const auto& [src, dst] : {std::pair{&pair.y, &pair.y}, std::pair{&pair.x, &pair.y}}) {
    const auto basis = cat.hom_basis(*src, *dst);
    if (basis.empty()) continue;
    std::vector<int> coeffs;
    for (std::size_t i = 0; i < basis.size(); ++i) coeffs.push_back(static_cast<int>(rng() % 2));
    const auto f = quiver::combine(basis, coeffs);
    const auto verdict = hn::phase_closure_check(cat, f, *src, *dst, plane);
    if (!verdict.pass) return pair.preset.name + ": " + verdict.failing + " leaves the phase slice";
  }
  return std::nullopt;
}

Failure switching(std::uint64_t seed, const SuiteOptions&) {
  const auto pair = closure_pair(seed);
  if (pair.x.is_zero()) return std::nullopt;
  const RepCategory cat(pair.preset);
  const auto plane = hn::ChargePlane::nested(level_spec(1, pair.t, {}));
  int found = 0;
  for (const auto& k : cat.subobjects(pair.y)) {
    const auto kc = cat.child(k);
    if (kc.is_zero() || !hn::is_semistable(cat, kc, plane).semistable) continue;
    if (!hn::charge_of(cat, plane, cat.quotient(k)).is_zero()) continue;
    ++found;
    const auto sw = hn::switch_decomposition(cat, pair.y, k, plane);
    if (!hn::charge_of(cat, plane, cat.child(sw.zero_part)).is_zero()) return pair.preset.name + ": Q' has nonzero charge";
    if (!sw.slope.is_infinite()) {
      const auto again = hn::quasi_semistable_decompose(cat, sw.semistable_part, plane);
      if (!again || !cat.child(again->zero_part).is_zero()) return pair.preset.name + ": switching is not idempotent";
    }
  }
  if (found == 0) return pair.preset.name + ": no hypothesis-satisfying sequence in X+N";
  return std::nullopt;
}

Failure p1_oracle(std::uint64_t seed, const SuiteOptions&) {
  std::mt19937_64 rng(seed);
  const auto e = p1::random_sheaf(rng());
  const auto z = p1::random_z(rng());
  const std::vector<Rational> t{instances::random_t(rng), instances::random_t(rng)};
  const std::string label = e.str() + " z=" + format_gaussian(z);
  const auto poly = p1::sheaf_charge_poly(e, z);
  if (!positivity_audit(poly, !e.is_zero()).pass()) return label + ": positivity cascade fails";
  if (!lex::quadratic_value(poly).is_zero()) return label + ": quadratic value is nonzero";
  if (!e.is_zero()) {
    if (p1::level_semistable(e, std::span(t).first(1), z).semistable != p1::is_slope_semistable(e)) {
      return label + ": level 1 disagrees with slope semistability";
    }
    if (p1::level_semistable(e, t, z).semistable != p1::is_gieseker_semistable(e)) {
      return label + ": level 2 disagrees with Gieseker semistability";
    }
  }
  PhaseVector zero;
  zero.slopes.assign(2, ExtendedSlope(Rational(0)));
  const auto split = p1::torsion_split(e, zero, t, z);
  if (!split.hom_vanishes) return label + ": Hom(T,F) is nonzero";
  const auto v = lex::virtual_class(p1::sheaf_charge_poly(split.t, z), p1::sheaf_charge_poly(split.f, z));
  if (!lex::tilted_positivity_audit(v, t).pass) return label + ": tilted positivity fails";
  const bool nonzero = !e.is_zero();
  if (!lex::tilted_charge_contract(lex::tilted_charge(v, Rational(1), t[0]), nonzero)) {
    return label + ": tilted charge leaves the upper half plane";
  }
  return std::nullopt;
}

Failure positivity(std::uint64_t seed, const SuiteOptions&) {
  const auto inst = instances::random_quiver_instance(seed, false);
  const RepCategory cat(inst.preset);
  for (const auto& s : cat.subobjects(inst.rep)) {
    for (const auto& x : {cat.child(s), cat.quotient(s)}) {
      if (!positivity_audit(cat.charge(x), !x.is_zero()).pass()) {
        return inst.label + ": cascade fails on dims " + show(x.dims());
      }
    }
  }
  return std::nullopt;
}

struct Property {
  const char* name;
  Failure (*check)(std::uint64_t, const SuiteOptions&);
};

constexpr Property kProperties[] = {
    {"hn_uniqueness", hn_uniqueness},     {"hull_correspondence", hull_correspondence},
    {"lex_refinement", lex_refinement},   {"torsion_pair", torsion_pair},
    {"abelianizer_closure", abelianizer_closure}, {"switching", switching},
    {"p1_oracle", p1_oracle},             {"positivity", positivity},
};

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.failures == 0; });
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json props = nlohmann::json::object();
  for (const auto& p : properties) {
    nlohmann::json entry = {{"instances", p.instances}, {"failures", p.failures}};
    if (p.failures > 0) entry["first_failure"] = p.first_failure;
    props[p.name] = entry;
  }
  return {{"command", "suite"},
          {"seed", options.seed},
          {"count", options.count},
          {"inject_fault", options.inject_fault},
          {"properties", props},
          {"verdict", pass() ? "PASS" : "FAIL"}};
}

SuiteReport run_suite(const SuiteOptions& options) {
  SuiteReport report{options, {}};
  const auto count = static_cast<std::size_t>(std::max(0, options.count));
  std::uint64_t index = 0;
  for (const auto& prop : kProperties) {
    std::vector<Failure> results(count);
    const std::uint64_t base = index++;
    parallel_for(count, options.threads, [&](std::size_t i) {
      const auto seed = instances::mix(options.seed, base * 1000003ull + i);
      try {
        results[i] = prop.check(seed, options);
      } catch (const std::exception& e) {
        results[i] = std::string("exception: ") + e.what();
      }
    });
    PropertyResult r{prop.name, static_cast<int>(count), 0, ""};
    for (const auto& f : results) {
      if (!f) continue;
      if (r.failures++ == 0) r.first_failure = *f;
    }
    report.properties.push_back(std::move(r));
  }
  return report;
}

}  // namespace stab::cli
