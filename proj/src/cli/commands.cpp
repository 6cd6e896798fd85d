#include "stability/cli.hpp"
#include "stability/error.hpp"
#include "stability/hn_engine.hpp"
#include "stability/io.hpp"
#include "stability/lex_engine.hpp"
#include "stability/p1.hpp"
#include "stability/parallel.hpp"
#include "stability/quiver.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace stab::cli {

namespace {

using json = nlohmann::json;
using quiver::RepCategory;

struct ObjectArgs {
  std::string file;
  std::string backend;
  std::string preset;
  bool force_unvalidated = false;
  std::string out;
  unsigned threads = 1;
};

struct Loaded {
  io::Backend backend = io::Backend::kQuiver;
  std::optional<quiver::Rep> rep;
  std::optional<quiver::ChargePreset> preset;
  std::optional<p1::SplitSheaf> sheaf;
  GaussianRational z = p1::default_z();
};

quiver::ChargePreset preset_by_name_or_file(const std::string& ref) {
  if (auto p = quiver::find_builtin_preset(ref)) return *p;
  if (!std::filesystem::exists(ref)) throw Error(Errc::kParseError, "unknown preset '" + ref + "'");
  return io::preset_from_json(io::load_json_file(ref));
}

quiver::ChargePreset resolve_preset(const std::string& flag, const json& obj) {
  if (!flag.empty()) return preset_by_name_or_file(flag);
  if (obj.contains("preset")) {
    const auto& p = obj.at("preset");
    if (p.is_string()) {
      if (auto b = quiver::find_builtin_preset(p.get<std::string>())) return *b;
      throw Error(Errc::kParseError, "unknown preset '" + p.get<std::string>() + "'");
    }
    return io::preset_from_json(p);
  }
  throw Error(Errc::kInvalidArgument, "quiver objects need a preset (embedded or --preset)");
}

Loaded load_object(const ObjectArgs& args) {
  const auto j = io::load_json_file(args.file);
  const auto inferred = io::infer_backend(j);
  Loaded out;
  if (!args.backend.empty()) {
    out.backend = io::parse_backend(args.backend);
    if (inferred && *inferred != out.backend) {
      throw Error(Errc::kBackendMismatch, "file holds a " + io::backend_name(*inferred) + " object");
    }
  } else if (inferred) {
    out.backend = *inferred;
  } else {
    throw Error(Errc::kParseError, "cannot tell the backend from the file shape");
  }
  if (out.backend == io::Backend::kQuiver) {
    out.rep = io::rep_from_json(j);
    out.preset = resolve_preset(args.preset, j);
  } else {
    out.sheaf = io::sheaf_from_json(j);
    out.z = io::sheaf_z_from_json(j);
  }
  return out;
}

RepCategory make_category(const Loaded& obj, bool force) {
  return RepCategory(*obj.preset, {.force_unvalidated = force});
}

json t_json(const std::vector<Rational>& t) {
  json out = json::array();
  for (const auto& x : t) out.push_back(io::to_json(x));
  return out;
}

json header(const std::string& command, const Loaded& obj) {
  json h = {{"command", command}, {"backend", io::backend_name(obj.backend)}};
  if (obj.rep) {
    h["object"] = io::to_json(*obj.rep);
    h["preset"] = io::to_json(*obj.preset);
  } else {
    h["object"] = io::to_json(*obj.sheaf, obj.z);
  }
  return h;
}

json quiver_piece(const RepCategory& cat, const quiver::Rep& x) {
  return {{"dims", x.dims()}, {"charge", io::to_json(cat.charge(x))}};
}

json sheaf_piece(const p1::SplitSheaf& x, const GaussianRational& z) {
  return {{"sheaf", x.str()}, {"charge", io::to_json(p1::sheaf_charge_poly(x, z))}};
}

std::string describe_piece(const json& piece) {
  if (piece.contains("sheaf")) return piece.at("sheaf").get<std::string>();
  std::string s = "d=(";
  bool first = true;
  for (const auto& d : piece.at("dims")) {
    s += (first ? "" : ",") + std::to_string(d.get<int>());
    first = false;
  }
  return s + ")";
}

std::string render_vector(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get<std::string>();
  return s + ")";
}

/// Human-readable rendering of a filtration report.
void render_table(const json& report, std::ostream& out) {
  out << report.at("command").get<std::string>() << " [" << report.at("backend").get<std::string>() << "]\n";
  if (!report.contains("factors")) return;
  int i = 1;
  for (const auto& f : report.at("factors")) {
    out << "  " << i++ << "  " << describe_piece(f) << "  "
        << render_vector(f.contains("vector") ? f.at("vector") : f.at("slope")) << "\n";
  }
  if (report.at("factors").empty()) out << "  (zero object)\n";
}

void emit(const json& report, const std::string& path, std::ostream& out) {
  const auto text = report.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::kInvalidArgument, "cannot write " + path);
  f << text;
  render_table(report, out);
}

std::vector<Rational> t_or_ones(const std::string& text, int level) {
  if (!text.empty()) return io::parse_rational_list(text);
  return std::vector<Rational>(static_cast<std::size_t>(std::max(level, 1)), Rational(1));
}

void check_p1_t(const std::vector<Rational>& t, int level) {
  if (level < 1 || level > 2) {
    throw Error(Errc::kLevelOutOfRange, "level " + std::to_string(level) + " outside 1..2");
  }
  if (static_cast<int>(t.size()) != level) {
    throw Error(Errc::kInvalidArgument, "need exactly " + std::to_string(level) + " t-parameters");
  }
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& ref, std::uint64_t seed, int samples, std::ostream& out) {
  quiver::ChargePreset preset;
  if (std::filesystem::exists(ref)) {
    const auto j = io::load_json_file(ref);
    preset = io::infer_backend(j) == io::Backend::kQuiver ? resolve_preset("", j) : io::preset_from_json(j);
  } else {
    preset = preset_by_name_or_file(ref);
  }
  const auto audit = quiver::audit_preset(preset, seed, samples);
  json failures = json::array();
  for (const auto& f : audit.failures) {
    failures.push_back({{"dims", f.dims}, {"clause", f.verdict.describe()}});
  }
  json report = {{"command", "validate"},
                 {"preset", io::to_json(preset)},
                 {"seed", seed},
                 {"checked", audit.checked},
                 {"failures", failures},
                 {"verdict", audit.pass() ? "PASS" : "FAIL"}};
  report["preset"]["validated"] = audit.pass();
  out << report.dump(2) << "\n";
  return audit.pass() ? kOk : kDomainFailure;
}

int cmd_hn(const ObjectArgs& args, const std::string& t_text, std::ostream& out) {
  const auto obj = load_object(args);
  const auto t = t_or_ones(t_text, 1);
  if (t.size() != 1) throw Error(Errc::kInvalidArgument, "hn takes a single t");
  json report = header("hn", obj);
  report["t"] = t_json(t);
  json factors = json::array();
  json chain = json::array();
  if (obj.rep) {
    const auto cat = make_category(obj, args.force_unvalidated);
    const auto plane = hn::ChargePlane::nested(level_spec(obj.preset->r, t, {}));
    const auto f = hn::hn_filtration(cat, *obj.rep, plane);
    for (const auto& s : f.steps) {
      auto piece = quiver_piece(cat, s.factor);
      piece["z"] = io::to_json(s.charge);
      piece["slope"] = io::to_json(s.slope);
      factors.push_back(piece);
    }
    for (const auto& s : f.chain) chain.push_back(s.dims());
  } else {
    const auto f = p1::closed_form_lex_filtration(*obj.sheaf, t, obj.z);
    for (std::size_t i = 0; i < f.size(); ++i) {
      auto piece = sheaf_piece(f.factors[i], obj.z);
      piece["slope"] = io::to_json(f.vectors[i].slopes.front());
      factors.push_back(piece);
    }
    for (const auto& s : f.chain) chain.push_back(s.str());
  }
  report["factors"] = factors;
  report["chain"] = chain;
  emit(report, args.out, out);
  return kOk;
}

json lex_report(const Loaded& obj, int level, const std::vector<Rational>& t, bool force, unsigned threads) {
  json report = header("lex", obj);
  report["level"] = level;
  report["t"] = t_json(t);
  json factors = json::array();
  json chain = json::array();
  if (obj.rep) {
    const auto cat = make_category(obj, force);
    const lex::LexContext ctx{obj.preset->r, level, t};
    const auto f = lex::lex_filtration(cat, *obj.rep, ctx, {{}, threads});
    for (std::size_t i = 0; i < f.size(); ++i) {
      auto piece = quiver_piece(cat, f.factors[i]);
      piece["vector"] = io::to_json(f.vectors[i]);
      factors.push_back(piece);
    }
    for (const auto& s : f.chain) chain.push_back(s.dims());
  } else {
    check_p1_t(t, level);
    const auto f = p1::closed_form_lex_filtration(*obj.sheaf, t, obj.z);
    for (std::size_t i = 0; i < f.size(); ++i) {
      auto piece = sheaf_piece(f.factors[i], obj.z);
      piece["vector"] = io::to_json(f.vectors[i]);
      factors.push_back(piece);
    }
    for (const auto& s : f.chain) chain.push_back(s.str());
  }
  report["factors"] = factors;
  report["chain"] = chain;
  return report;
}

int cmd_lex(const ObjectArgs& args, int level, const std::string& t_text, std::ostream& out) {
  const auto obj = load_object(args);
  emit(lex_report(obj, level, t_or_ones(t_text, level), args.force_unvalidated, args.threads), args.out, out);
  return kOk;
}

int cmd_split(const ObjectArgs& args, const std::string& cutoff_text, const std::string& t_text,
              const std::string& s_text, std::ostream& out) {
  const auto obj = load_object(args);
  const auto cutoff = io::parse_phase_vector(cutoff_text);
  const int level = static_cast<int>(cutoff.size());
  const auto t = t_or_ones(t_text, level);
  const Rational s = parse_rational(s_text);
  json report = header("split", obj);
  report["level"] = level;
  report["t"] = t_json(t);
  report["cutoff"] = io::to_json(cutoff);
  report["s"] = io::to_json(s);

  ChargePolynomial tc;
  ChargePolynomial fc;
  bool hom_vanishes = true;
  int r = 1;
  if (obj.rep) {
    const auto cat = make_category(obj, args.force_unvalidated);
    r = obj.preset->r;
    const lex::LexContext ctx{r, level, t};
    const auto split = lex::torsion_split(cat, *obj.rep, cutoff, ctx, {{}, args.threads});
    report["T"] = quiver_piece(cat, split.t);
    report["F"] = quiver_piece(cat, split.f);
    report["torsion_factors"] = split.torsion_factors;
    hom_vanishes = split.hom_vanishes.value_or(true);
    tc = cat.charge(split.t);
    fc = cat.charge(split.f);
  } else {
    check_p1_t(t, level);
    const auto split = p1::torsion_split(*obj.sheaf, cutoff, t, obj.z);
    report["T"] = sheaf_piece(split.t, obj.z);
    report["F"] = sheaf_piece(split.f, obj.z);
    hom_vanishes = split.hom_vanishes;
    tc = p1::sheaf_charge_poly(split.t, obj.z);
    fc = p1::sheaf_charge_poly(split.f, obj.z);
  }
  report["hom_vanishes"] = hom_vanishes;
  const auto v = lex::virtual_class(tc, fc);
  report["virtual_class"] = io::to_json(v.charge);
  bool ok = hom_vanishes;
  if (static_cast<int>(t.size()) >= r + 1) {
    const auto audit = lex::tilted_positivity_audit(v, t);
    json values = json::array();
    for (const auto& q : audit.values) values.push_back(io::to_json(q));
    report["tilted_audit"] = {{"verdict", audit.pass ? "PASS" : "FAIL"}, {"values", values},
                              {"failed_level", audit.failed_level}};
    ok = ok && audit.pass;
  }
  if (r <= 1) {
    const auto z = lex::tilted_charge(v, s, t.front());
    report["tilted_charge"] = {{"z", io::to_json(z)},
                               {"contract", lex::tilted_charge_contract(z, !v.charge.is_zero())}};
  }
  emit(report, args.out, out);
  return ok ? kOk : kDomainFailure;
}

struct Grid {
  std::vector<std::vector<Rational>> axes;  // axis i holds the values of t_{i+1}
  std::vector<std::vector<std::size_t>> cells;
};

Grid parse_grid(const std::string& text, int level) {
  Grid g;
  if (text.empty()) return g;
  std::map<int, std::vector<Rational>> given;
  std::istringstream in(text);
  for (std::string part; std::getline(in, part, ';');) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos || part.size() < 2 || part[0] != 't') {
      throw Error(Errc::kParseError, "grid entries look like t1=1/2,1,2");
    }
    int axis = 0;
    try {
      axis = std::stoi(part.substr(1, eq - 1));
    } catch (const std::exception&) {
      throw Error(Errc::kParseError, "bad grid axis '" + part.substr(0, eq) + "'");
    }
    if (axis < 1 || axis > level) throw Error(Errc::kInvalidArgument, "grid axis t" + std::to_string(axis) + " out of range");
    const auto values = part.substr(eq + 1);
    given[axis] = values.empty() ? std::vector<Rational>{} : io::parse_rational_list(values);
  }
  for (int a = 1; a <= level; ++a) {
    auto it = given.find(a);
    g.axes.push_back(it == given.end() ? std::vector<Rational>{Rational(1)} : it->second);
  }
  std::vector<std::size_t> idx(g.axes.size(), 0);
  for (const auto& axis : g.axes)
    if (axis.empty()) return g;
  if (idx.empty()) return g;
  while (true) {
    g.cells.push_back(idx);
    auto k = static_cast<std::ptrdiff_t>(idx.size()) - 1;
    for (; k >= 0; --k) {
      const auto u = static_cast<std::size_t>(k);
      if (++idx[u] < g.axes[u].size()) break;
      idx[u] = 0;
    }
    if (k < 0) return g;
  }
}

/// Factor descriptors plus, for each consecutive pair of vectors, the first
/// level at which they differ.
std::string signature(const json& report) {
  std::string sig;
  const auto& factors = report.at("factors");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) sig += " > ";
    sig += describe_piece(factors[i]);
  }
  sig += " |";
  for (std::size_t i = 1; i < factors.size(); ++i) {
    const auto& u = factors[i - 1].at("vector");
    const auto& v = factors[i].at("vector");
    std::size_t k = 0;
    while (k < u.size() && u[k] == v[k]) ++k;
    sig += " " + std::to_string(k + 1);
  }
  return sig;
}

int cmd_scan(const ObjectArgs& args, const std::string& grid_text, int level, std::ostream& out) {
  const auto obj = load_object(args);
  const auto grid = parse_grid(grid_text, level);
  std::vector<json> reports(grid.cells.size());
  parallel_for(grid.cells.size(), args.threads, [&](std::size_t i) {
    std::vector<Rational> t;
    for (std::size_t a = 0; a < grid.axes.size(); ++a) t.push_back(grid.axes[a][grid.cells[i][a]]);
    reports[i] = lex_report(obj, level, t, args.force_unvalidated, 1);
  });
  json cells = json::array();
  std::vector<std::string> sigs;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    sigs.push_back(signature(reports[i]));
    json vectors = json::array();
    for (const auto& f : reports[i].at("factors")) vectors.push_back(f.at("vector"));
    cells.push_back({{"index", i}, {"t", reports[i].at("t")}, {"signature", sigs.back()}, {"vectors", vectors}});
  }
  json walls = json::array();
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    for (std::size_t a = 0; a < grid.axes.size(); ++a) {
      auto next = grid.cells[i];
      if (++next[a] >= grid.axes[a].size()) continue;
      const auto j = static_cast<std::size_t>(
          std::find(grid.cells.begin(), grid.cells.end(), next) - grid.cells.begin());
      if (sigs[i] != sigs[j]) walls.push_back({{"between", {i, j}}, {"axis", "t" + std::to_string(a + 1)}});
    }
  }
  json report = header("scan", obj);
  report["level"] = level;
  report["grid"] = grid_text;
  report["cells"] = cells;
  report["walls"] = walls;
  const auto text = report.dump(2) + "\n";
  if (args.out.empty()) {
    out << text;
  } else {
    std::ofstream f(args.out, std::ios::binary);
    if (!f) throw Error(Errc::kInvalidArgument, "cannot write " + args.out);
    f << text;
    out << "scan: " << cells.size() << " cells, " << walls.size() << " walls\n";
  }
  return kOk;
}

int cmd_suite(const SuiteOptions& options, const std::string& path, std::ostream& out) {
  const auto report = run_suite(options);
  const auto j = report.to_json();
  if (path.empty()) {
    out << j.dump(2) << "\n";
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::kInvalidArgument, "cannot write " + path);
    f << j.dump(2) << "\n";
    for (const auto& p : report.properties) {
      out << (p.failures == 0 ? "PASS " : "FAIL ") << p.name << " (" << p.instances - p.failures << "/"
          << p.instances << ")\n";
    }
  }
  return report.pass() ? kOk : kDomainFailure;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::kParseError:
    case Errc::kInvalidArgument:
    case Errc::kLengthMismatch:
    case Errc::kBackendMismatch:
      return kInputError;
    default:
      return kDomainFailure;
  }
}

void add_object_options(CLI::App* sub, ObjectArgs& a) {
  sub->add_option("object", a.file, "Object file (quiver representation or split sheaf)")->required();
  sub->add_option("--backend", a.backend, "quiver or p1; inferred from the file when omitted");
  sub->add_option("--preset", a.preset, "Preset name or file for quiver objects");
  sub->add_flag("--force-unvalidated", a.force_unvalidated, "Use a preset that failed validation");
  sub->add_option("--out", a.out, "Write the JSON report here");
  sub->add_option("--threads", a.threads, "Worker threads")->check(CLI::Range(1u, 256u));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact stability filtrations for quiver representations and split sheaves", "stability"};
  app.require_subcommand(1);

  std::string validate_ref;
  std::uint64_t validate_seed = 0;
  int validate_samples = 64;
  auto* validate = app.add_subcommand("validate", "Audit a charge preset");
  validate->add_option("preset", validate_ref, "Preset file or built-in name")->required();
  validate->add_option("--seed", validate_seed, "Sampling seed");
  validate->add_option("--samples", validate_samples, "Sampled dimension vectors");

  ObjectArgs hn_args;
  std::string hn_t;
  auto* hn_cmd = app.add_subcommand("hn", "Harder-Narasimhan filtration for the level-1 charge");
  add_object_options(hn_cmd, hn_args);
  hn_cmd->add_option("--t", hn_t, "t_1 (default 1)");

  ObjectArgs lex_args;
  int lex_level = 1;
  std::string lex_t;
  auto* lex_cmd = app.add_subcommand("lex", "Lexicographic-order filtration");
  add_object_options(lex_cmd, lex_args);
  lex_cmd->add_option("--level", lex_level, "Number of levels l");
  lex_cmd->add_option("--t", lex_t, "t_1,...,t_l (default all 1)");

  ObjectArgs split_args;
  std::string split_cutoff;
  std::string split_t;
  std::string split_s = "1";
  auto* split_cmd = app.add_subcommand("split", "Torsion pair cut at a phase vector");
  add_object_options(split_cmd, split_args);
  split_cmd->add_option("--cutoff", split_cutoff, "Finite slope cutoff, e.g. 0,0")->required();
  split_cmd->add_option("--t", split_t, "t-parameters (default all 1)");
  split_cmd->add_option("--s", split_s, "s for the tilted charge (default 1)");

  ObjectArgs scan_args;
  std::string scan_grid;
  int scan_level = 1;
  auto* scan_cmd = app.add_subcommand("scan", "Lex filtrations over a grid of t-vectors");
  add_object_options(scan_cmd, scan_args);
  scan_cmd->add_option("--grid", scan_grid, "e.g. \"t1=1/2,1,2;t2=1\"");
  scan_cmd->add_option("--level", scan_level, "Number of levels l");

  SuiteOptions suite_opts;
  std::string suite_out;
  auto* suite_cmd = app.add_subcommand("suite", "Run the property suites");
  suite_cmd->add_option("--seed", suite_opts.seed, "Seed");
  suite_cmd->add_option("--count", suite_opts.count, "Instances per property")->check(CLI::NonNegativeNumber);
  suite_cmd->add_option("--threads", suite_opts.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  suite_cmd->add_option("--out", suite_out, "Write the JSON report here");
  suite_cmd->add_flag("--inject-fault", suite_opts.inject_fault)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*validate) return cmd_validate(validate_ref, validate_seed, validate_samples, out);
    if (*hn_cmd) return cmd_hn(hn_args, hn_t, out);
    if (*lex_cmd) return cmd_lex(lex_args, lex_level, lex_t, out);
    if (*split_cmd) return cmd_split(split_args, split_cutoff, split_t, split_s, out);
    if (*scan_cmd) return cmd_scan(scan_args, scan_grid, scan_level, out);
    if (*suite_cmd) return cmd_suite(suite_opts, suite_out, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace stab::cli
