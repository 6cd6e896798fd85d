// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic
// throughout. Exit status is nonzero iff some criterion fails.

#include "lex_oracle.hpp"

#include "stability/cli.hpp"
#include "stability/hn_engine.hpp"
#include "stability/instances.hpp"
#include "stability/lex_engine.hpp"
#include "stability/p1.hpp"
#include "stability/quiver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

namespace {

using namespace stab;
using quiver::Rep;
using quiver::RepCategory;

const std::string kFixtures = FIXTURE_DIR;

struct Tally {
  long checked = 0;
  long failed = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    if (failed++ == 0) first = what;
  }
};

// Objects seen in criteria 1-4 feed the positivity check of criterion 5.
Tally g_positivity;

void audit(const ChargePolynomial& p, bool nonzero, const std::string& label) {
  g_positivity.expect(positivity_audit(p, nonzero).pass(), label + ": positivity cascade fails");
}

std::string dims_str(const std::vector<int>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

std::vector<GaussianRational> as_set(std::vector<GaussianRational> v) {
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.re != y.re ? x.re < y.re : x.im < y.im; });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

hn::ChargePlane level_one(int r, const std::vector<Rational>& t) {
  return hn::ChargePlane::nested(level_spec(r, t, {}));
}

Tally criterion1() {
  Tally out;
  const std::vector<std::string> names{"CP-A2-0", "CP-A2-1", "CP-MIX"};
  const std::vector<std::vector<Rational>> ts{{Rational(1, 2), Rational(1)}, {Rational(2), Rational(3, 2)}};
  for (const auto& q : {quiver::a2_quiver(), quiver::kronecker_quiver()}) {
    const auto reps = instances::all_reps(q, {2, 2});
    for (const auto& name : names) {
      const auto preset = *quiver::find_builtin_preset(name);
      out.expect(preset.validated, name + " is not validated");
      const RepCategory cat(preset);
      std::uint64_t salt = 0;
      for (const auto& e : reps) {
        const RepCategory shuffled(preset, {.shuffle_seed = instances::mix(17, salt++)});
        for (const auto& t : ts) {
          const auto label = name + " dims " + dims_str(e.dims()) + " fp " + std::to_string(e.fingerprint());
          const auto plane = level_one(preset.r, t);
          const auto f = hn::hn_filtration(cat, e, plane);
          const auto g = hn::hn_filtration(shuffled, e, plane);
          out.expect(f.chain == g.chain, label + ": chain depends on enumeration order");
          ChargePolynomial total(preset.r);
          for (std::size_t i = 0; i < f.size(); ++i) {
            const auto& s = f.steps[i];
            out.expect(hn::is_semistable(cat, s.factor, plane).semistable, label + ": factor not semistable");
            if (i > 0) out.expect(f.steps[i - 1].slope > s.slope, label + ": slopes not strictly decreasing");
            total += cat.charge(s.factor);
            audit(cat.charge(s.factor), true, label);
          }
          out.expect(total == cat.charge(e), label + ": charges do not add up");
        }
        audit(cat.charge(e), !e.is_zero(), name);
        for (const auto& s : cat.subobjects(e)) {
          audit(cat.charge(cat.child(s)), !s.is_zero(), name);
          audit(cat.charge(cat.quotient(s)), !s.is_whole(), name);
        }
      }
    }
  }
  return out;
}

Tally criterion2() {
  Tally out;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto inst = instances::random_quiver_instance(instances::mix(2, i), false);
    const RepCategory cat(inst.preset);
    const auto plane = level_one(inst.preset.r, inst.t);
    const auto f = hn::hn_filtration(cat, inst.rep, plane);
    out.expect(as_set(hn::partial_sums(f)) == as_set(hn::hull_vertices(cat, inst.rep, plane)),
               inst.label + ": partial sums differ from hull vertices");
    audit(cat.charge(inst.rep), !inst.rep.is_zero(), inst.label);
    for (const auto& s : f.steps) audit(cat.charge(s.factor), true, inst.label);
  }
  return out;
}

Tally criterion3() {
  Tally out;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto inst = instances::random_quiver_instance(instances::mix(3, i), true);
    const RepCategory cat(inst.preset);
    const lex::LexContext two{1, 2, inst.t};
    const lex::LexContext one{1, 1, {inst.t[0]}};
    const auto engine = lex::lex_filtration(cat, inst.rep, two);
    const auto reference = oracle::lex_filtration(inst.rep, inst.preset, 2, inst.t);
    std::vector<std::vector<fp::Subspace>> chain;
    for (const auto& s : engine.chain) chain.push_back(s.spaces);
    out.expect(chain == reference.chain, inst.label + ": chain differs from the brute-force oracle");
    out.expect(engine.vectors == reference.vectors, inst.label + ": vectors differ from the brute-force oracle");
    out.expect(lex::strictly_decreasing(engine.vectors), inst.label + ": vectors not strictly decreasing");
    const auto l1 = lex::lex_filtration(cat, inst.rep, one);
    out.expect(std::all_of(l1.chain.begin(), l1.chain.end(),
                           [&](const auto& s) {
                             return std::find(engine.chain.begin(), engine.chain.end(), s) != engine.chain.end();
                           }),
               inst.label + ": level-1 chain is not refined by level 2");
    for (const auto& x : engine.factors) audit(cat.charge(x), true, inst.label);
  }
  return out;
}

std::string vectors_str(const std::vector<PhaseVector>& vs) {
  std::string s;
  for (const auto& v : vs) s += (s.empty() ? "" : " > ") + v.str();
  return s;
}

Tally criterion4(std::string& note) {
  Tally out;
  for (std::uint64_t i = 0; i < 500; ++i) {
    std::mt19937_64 rng(instances::mix(4, i));
    const auto e = p1::random_sheaf(rng());
    const auto z = p1::random_z(rng());
    const std::vector<Rational> t{instances::random_t(rng), instances::random_t(rng)};
    const auto label = e.str() + " z=" + format_gaussian(z);
    audit(p1::sheaf_charge_poly(e, z), !e.is_zero(), label);
    if (e.is_zero()) continue;
    out.expect(p1::level_semistable(e, std::span(t).first(1), z).semistable == p1::is_slope_semistable(e),
               label + ": level 1 disagrees with slope semistability");
    out.expect(p1::level_semistable(e, t, z).semistable == p1::is_gieseker_semistable(e),
               label + ": level 2 disagrees with Gieseker semistability");
  }

  const p1::SplitSheaf t2 = p1::SplitSheaf::skyscraper("p", 2);
  const p1::SplitSheaf fix = p1::SplitSheaf::line(1) + p1::SplitSheaf::line(-1) + t2;
  const std::vector<Rational> ones{Rational(1), Rational(1)};
  const auto f = p1::closed_form_lex_filtration(fix, ones);
  const std::vector<p1::SplitSheaf> chain{p1::SplitSheaf(), t2, t2 + p1::SplitSheaf::line(1), fix};
  out.expect(f.chain == chain, "FIX-P1 chain differs from 0 < T2 < T2+O(1) < E");
  // The torsion factor has Z_2 = a_0 t_2 + i(b_0 - a_1 t_1) = -2 + 2i, so its
  // second coordinate is 1 rather than infinite.
  const std::vector<PhaseVector> expected{
      {{ExtendedSlope::infinity(), ExtendedSlope(Rational(1))}},
      {{ExtendedSlope(Rational(3)), ExtendedSlope(Rational(2))}},
      {{ExtendedSlope(Rational(1)), ExtendedSlope(Rational(0))}}};
  out.expect(f.vectors == expected, "FIX-P1 vectors are " + vectors_str(f.vectors));
  note = "FIX-P1 " + vectors_str(f.vectors);
  return out;
}

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

Tally criterion5() {
  Tally out = g_positivity;
  out.expect(run_cli({"validate", kFixtures + "/preset_cp_a2_1_flip.json"}) == 1,
             "sign-flipped preset is not rejected with exit 1");
  out.expect(run_cli({"validate", kFixtures + "/preset_cp_a2_1.json"}) == 0, "CP-A2-1 preset does not validate");
  return out;
}

Tally criterion6() {
  Tally out;
  const std::vector<Rational> cut_values{Rational(-1), Rational(0), Rational(1, 2), Rational(1), Rational(2)};
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto inst = instances::random_quiver_instance(instances::mix(6, i), false);
    std::mt19937_64 rng(instances::mix(60, i));
    const RepCategory cat(inst.preset);
    const lex::LexContext ctx{inst.preset.r, inst.preset.r + 1, inst.t};
    PhaseVector cutoff;
    for (std::size_t k = 0; k < inst.t.size(); ++k) cutoff.slopes.emplace_back(cut_values[rng() % cut_values.size()]);
    const auto split = lex::torsion_split(cat, inst.rep, cutoff, ctx);
    const auto label = inst.label + " cutoff " + cutoff.str();
    // Genuine short exact sequence 0 -> T -> E -> F -> 0.
    out.expect(cat.child(split.torsion) == split.t, label + ": T is not the torsion subobject");
    out.expect(cat.is_surjective(split.projection), label + ": E -> F is not surjective");
    out.expect(cat.kernel(split.projection) == split.torsion, label + ": kernel of E -> F is not T");
    out.expect(cat.charge(split.t) + cat.charge(split.f) == cat.charge(inst.rep), label + ": charges do not add up");
    out.expect(cat.hom_basis(split.t, split.f).empty(), label + ": Hom(T,F) is nonzero");
    // Membership by factor vectors.
    for (std::size_t k = 0; k < split.lex.size(); ++k) {
      const bool above = lex_compare(split.lex.vectors[k], cutoff) == std::strong_ordering::greater;
      out.expect(above == (k < split.torsion_factors), label + ": factor placed on the wrong side");
    }
    for (const auto& v : lex::lex_filtration(cat, split.t, ctx).vectors)
      out.expect(lex_compare(v, cutoff) == std::strong_ordering::greater, label + ": T has a factor below the cutoff");
    for (const auto& v : lex::lex_filtration(cat, split.f, ctx).vectors)
      out.expect(lex_compare(v, cutoff) != std::strong_ordering::greater, label + ": F has a factor above the cutoff");
  }
  return out;
}

// X is a nonzero level-1 semistable; the Ns carry zero charge.
struct ClosureSetup {
  quiver::ChargePreset preset;
  std::vector<Rational> t;
  Rep x, y1, y2;
};

std::optional<ClosureSetup> closure_setup(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const bool dual = rng() % 2 == 1;
  auto preset = dual ? quiver::preset_mixed_dual() : quiver::preset_mixed();
  auto q = rng() % 2 == 1 ? quiver::kronecker_quiver() : quiver::a2_quiver();
  const auto rep = quiver::random_rep(q, {2, 2}, rng());
  std::vector<Rational> t{instances::random_t(rng), instances::random_t(rng)};
  if (rep.is_zero()) return std::nullopt;
  const RepCategory cat(preset);
  const auto x = hn::hn_filtration(cat, rep, level_one(1, t)).steps.front().factor;
  auto zero_summand = [&](int k) {
    const std::vector<int> nd = dual ? std::vector<int>{k, 0} : std::vector<int>{0, k};
    return Rep(q, 2, nd, std::vector<fp::Matrix>(q->arrows().size(), fp::Matrix(2, nd[1], nd[0])));
  };
  const int k1 = static_cast<int>(rng() % 3), k2 = static_cast<int>(rng() % 3);
  return ClosureSetup{preset, t, x, quiver::direct_sum(x, zero_summand(k1)), quiver::direct_sum(x, zero_summand(k2))};
}

Tally criterion7() {
  Tally out;
  int morphisms = 0, switches = 0;
  for (std::uint64_t i = 0; (morphisms < 100 || switches < 100) && i < 100000; ++i) {
    const auto setup = closure_setup(instances::mix(7, i));
    if (!setup) continue;
    const RepCategory cat(setup->preset);
    const auto plane = level_one(1, setup->t);
    const auto label = setup->preset.name + " X=" + dims_str(setup->x.dims()) + " Y=" + dims_str(setup->y2.dims());
    if (morphisms < 100) {
      const auto basis = cat.hom_basis(setup->y1, setup->y2);
      if (!basis.empty()) {
        std::mt19937_64 rng(instances::mix(70, i));
        std::vector<int> coeffs;
        for (std::size_t b = 0; b < basis.size(); ++b) coeffs.push_back(static_cast<int>(rng() % 2));
        const auto f = quiver::combine(basis, coeffs);
        const auto v = hn::phase_closure_check(cat, f, setup->y1, setup->y2, plane);
        out.expect(v.pass, label + ": " + v.failing + " leaves the phase slice");
        ++morphisms;
      }
    }
    if (switches < 100) {
      for (const auto& k : cat.subobjects(setup->y2)) {
        const auto kc = cat.child(k);
        if (kc.is_zero() || !hn::is_semistable(cat, kc, plane).semistable) continue;
        if (!hn::charge_of(cat, plane, cat.quotient(k)).is_zero()) continue;
        try {
          const auto sw = hn::switch_decomposition(cat, setup->y2, k, plane);
          const auto ks = hn::is_semistable(cat, kc, plane).slope;
          out.expect(hn::charge_of(cat, plane, cat.child(sw.zero_part)).is_zero(), label + ": Q' has nonzero charge");
          out.expect(sw.slope == ks, label + ": K' has a different phase");
          if (!cat.is_zero(sw.semistable_part)) {
            const auto ss = hn::is_semistable(cat, sw.semistable_part, plane);
            out.expect(ss.semistable && ss.slope == ks, label + ": K' is not semistable of the phase of K");
          }
        } catch (const Error& e) {
          out.expect(false, label + ": switching failed: " + e.what());
        }
        if (++switches == 100) break;
      }
    }
  }
  out.expect(morphisms == 100 && switches == 100, "could not build 100 morphisms and 100 sequences");
  return out;
}

Tally criterion8() {
  Tally out;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto inst = instances::random_quiver_instance(instances::mix(8, i), false);
    const RepCategory cat(inst.preset);
    const lex::LexContext ctx{inst.preset.r, inst.preset.r + 1, inst.t};
    PhaseVector zero;
    zero.slopes.assign(inst.t.size(), ExtendedSlope(Rational(0)));
    const auto split = lex::torsion_split(cat, inst.rep, zero, ctx);
    const auto v = lex::tilted_positivity_audit(lex::virtual_class(cat.charge(split.t), cat.charge(split.f)), inst.t);
    out.expect(v.pass, inst.label + ": tilted positivity fails at level " + std::to_string(v.failed_level));
  }
  for (std::uint64_t i = 0; i < 500; ++i) {
    std::mt19937_64 rng(instances::mix(80, i));
    const auto e = p1::random_sheaf(rng());
    const auto z = p1::random_z(rng());
    const std::vector<Rational> t{instances::random_t(rng), instances::random_t(rng)};
    const auto label = e.str() + " z=" + format_gaussian(z);
    out.expect(lex::quadratic_value(p1::sheaf_charge_poly(e, z)).is_zero(), label + ": b1 a0 - b0 a1 is nonzero");
    PhaseVector zero;
    zero.slopes.assign(2, ExtendedSlope(Rational(0)));
    const auto split = p1::torsion_split(e, zero, t, z);
    const auto v =
        lex::tilted_positivity_audit(lex::virtual_class(p1::sheaf_charge_poly(split.t, z), p1::sheaf_charge_poly(split.f, z)), t);
    out.expect(v.pass, label + ": tilted positivity fails at level " + std::to_string(v.failed_level));
  }
  return out;
}

Tally criterion9() {
  Tally out;
  const std::vector<std::vector<std::string>> commands{
      {"lex", kFixtures + "/fix_k2.json", "--level", "2", "--t", "1,2"},
      {"lex", kFixtures + "/fix_p1.json", "--level", "2", "--t", "1,1"},
      {"scan", kFixtures + "/fix_a2_wall.json", "--grid", "t1=1/2,1,3/2,2;t2=1,2", "--level", "2"},
      {"scan", kFixtures + "/fix_p1.json", "--grid", "t1=1/2,1,2;t2=1", "--level", "2"},
  };
  for (const auto& cmd : commands) {
    std::string label;
    for (const auto& a : cmd) label += a + " ";
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "1", "8", "8"}) {
      auto args = cmd;
      args.insert(args.end(), {"--threads", threads});
      std::string text;
      out.expect(run_cli(args, &text) == 0, label + "exits nonzero");
      outputs.push_back(text);
    }
    out.expect(!outputs.front().empty(), label + "printed nothing");
    for (const auto& o : outputs) out.expect(o == outputs.front(), label + "output is not byte-identical");
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* what;
    std::function<Tally(std::string&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "HN by exhaustion, dims <= (2,2) over F_2", [](std::string&) { return criterion1(); }},
      {2, "hull vertices equal HN partial sums (200)", [](std::string&) { return criterion2(); }},
      {3, "level-2 lex filtration equals brute-force oracle (200)", [](std::string&) { return criterion3(); }},
      {4, "slope/Gieseker equivalence (500) and FIX-P1 chain", [](std::string& n) { return criterion4(n); }},
      {5, "positivity cascade on criteria 1-4; flipped preset exits 1", [](std::string&) { return criterion5(); }},
      {6, "torsion split SES, Hom(T,F) = 0, membership (200)", [](std::string&) { return criterion6(); }},
      {7, "phase closure (100 morphisms) and switching (100 sequences)", [](std::string&) { return criterion7(); }},
      {8, "tilted positivity on both backends; P1 quadratic value 0 (500)", [](std::string&) { return criterion8(); }},
      {9, "lex/scan output byte-identical across runs and threads 1/8", [](std::string&) { return criterion9(); }},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string note;
    Tally t;
    try {
      t = c.run(note);
    } catch (const std::exception& e) {
      t.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = t.failed == 0 && t.checked > 0;
    all = all && pass;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.what << "  [" << t.checked
              << " checks, " << t.failed << " failed, " << timing << "]";
    if (!note.empty()) std::cout << "  " << note;
    std::cout << "\n";
    if (!pass && !t.first.empty()) std::cout << "  first failure: " << t.first << "\n";
    std::cout.flush();
  }
  return all ? 0 : 1;
}
