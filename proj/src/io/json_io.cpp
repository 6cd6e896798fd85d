#include "stability/io.hpp"

#include "stability/error.hpp"

#include <fstream>
#include <sstream>

namespace stab::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::kParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const json& j) {
  if (!j.is_number_integer()) bad("expected an integer, got " + j.dump());
  return j.get<int>();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string backend_name(Backend b) { return b == Backend::kQuiver ? "quiver" : "p1"; }

Backend parse_backend(const std::string& name) {
  if (name == "quiver") return Backend::kQuiver;
  if (name == "p1") return Backend::kP1;
  throw Error(Errc::kInvalidArgument, "unknown backend '" + name + "'");
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  bad("expected a rational, got " + j.dump());
}

json to_json(const Rational& x) { return format_rational(x); }

json to_json(const GaussianRational& z) { return {{"re", to_json(z.re)}, {"im", to_json(z.im)}}; }

GaussianRational gaussian_from_json(const json& j) {
  return {rational_from_json(field(j, "re")), rational_from_json(field(j, "im"))};
}

json to_json(const ChargePolynomial& p) {
  json a = json::array();
  json b = json::array();
  for (const auto& x : p.a_coeffs()) a.push_back(to_json(x));
  for (const auto& x : p.b_coeffs()) b.push_back(to_json(x));
  return {{"r", p.r()}, {"a", a}, {"b", b}};
}

ChargePolynomial charge_from_json(const json& j) {
  const int r = int_field(field(j, "r"));
  const auto& a = field(j, "a");
  const auto& b = field(j, "b");
  if (r < 0 || !a.is_array() || !b.is_array() || a.size() != static_cast<std::size_t>(r) + 1 ||
      b.size() != a.size()) {
    bad("charge polynomial needs r+1 entries in both a and b");
  }
  std::vector<Rational> av;
  std::vector<Rational> bv;
  for (const auto& x : a) av.push_back(rational_from_json(x));
  for (const auto& x : b) bv.push_back(rational_from_json(x));
  return ChargePolynomial(std::move(av), std::move(bv));
}

json to_json(const ExtendedSlope& s) { return s.str(); }

json to_json(const PhaseVector& v) {
  json out = json::array();
  for (const auto& s : v.slopes) out.push_back(to_json(s));
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_rational(trim(item)));
  return out;
}

PhaseVector parse_phase_vector(const std::string& text) {
  PhaseVector v;
  for (const auto& item : split(text, ',')) v.slopes.push_back(ExtendedSlope::parse(trim(item)));
  return v;
}

json to_json(const quiver::Rep& e) {
  json arrows = json::array();
  for (const auto& a : e.quiver().arrows()) arrows.push_back({a.source, a.target});
  json mats = json::array();
  for (const auto& m : e.maps()) mats.push_back(m.data());
  return {{"vertices", e.quiver().vertices()}, {"arrows", arrows}, {"p", e.p()}, {"dims", e.dims()},
          {"mats", mats}};
}

quiver::Rep rep_from_json(const json& j) {
  try {
    const int n = int_field(field(j, "vertices"));
    std::vector<quiver::Arrow> arrows;
    for (const auto& a : field(j, "arrows")) {
      if (!a.is_array() || a.size() != 2) bad("arrow must be [source, target]");
      arrows.push_back({int_field(a[0]), int_field(a[1])});
    }
    const int p = j.contains("p") ? int_field(j.at("p")) : 2;
    std::vector<int> dims;
    for (const auto& d : field(j, "dims")) dims.push_back(int_field(d));
    const auto& mats_json = field(j, "mats");
    if (!mats_json.is_array() || mats_json.size() != arrows.size()) bad("need one matrix per arrow");
    if (dims.size() != static_cast<std::size_t>(n)) bad("dims length differs from vertex count");
    std::vector<fp::Matrix> mats;
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      const auto& a = arrows[i];
      if (a.source < 0 || a.source >= n || a.target < 0 || a.target >= n) bad("arrow references a missing vertex");
      const int rows = dims[static_cast<std::size_t>(a.target)];
      const int cols = dims[static_cast<std::size_t>(a.source)];
      std::vector<int> entries;
      for (const auto& x : mats_json[i]) entries.push_back(((int_field(x) % p) + p) % p);
      if (entries.size() != static_cast<std::size_t>(rows * cols)) {
        bad("matrix " + std::to_string(i) + " needs " + std::to_string(rows * cols) + " entries");
      }
      mats.emplace_back(p, rows, cols, std::move(entries));
    }
    auto q = std::make_shared<const quiver::Quiver>(n, std::move(arrows));
    return quiver::Rep(std::move(q), p, std::move(dims), std::move(mats));
  } catch (const Error& e) {
    if (e.code() == Errc::kParseError) throw;
    bad(e.what());
  }
}

json to_json(const quiver::ChargePreset& p) {
  auto functionals = [](const std::vector<std::vector<Rational>>& f) {
    json out = json::array();
    for (const auto& row : f) {
      json r = json::array();
      for (const auto& x : row) r.push_back(to_json(x));
      out.push_back(r);
    }
    return out;
  };
  return {{"name", p.name}, {"r", p.r}, {"a", functionals(p.alpha)}, {"b", functionals(p.beta)},
          {"validated", p.validated}};
}

quiver::ChargePreset preset_from_json(const json& j) {
  quiver::ChargePreset p;
  p.name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "unnamed";
  p.r = int_field(field(j, "r"));
  auto functionals = [](const json& f) {
    if (!f.is_array()) bad("preset functionals must be arrays");
    std::vector<std::vector<Rational>> out;
    for (const auto& row : f) {
      if (!row.is_array()) bad("preset functional must be an array");
      std::vector<Rational> r;
      for (const auto& x : row) r.push_back(rational_from_json(x));
      out.push_back(std::move(r));
    }
    return out;
  };
  p.alpha = functionals(field(j, "a"));
  p.beta = functionals(field(j, "b"));
  try {
    p.check_shape();
  } catch (const Error& e) {
    bad(e.what());
  }
  return quiver::validated(std::move(p));
}

json to_json(const p1::SplitSheaf& e, const GaussianRational& z) {
  json torsion = json::array();
  for (const auto& tp : e.torsion()) torsion.push_back({{"pt", tp.pt}, {"len", tp.len}});
  return {{"line_degrees", e.line_degrees()}, {"torsion", torsion}, {"z", to_json(z)}};
}

p1::SplitSheaf sheaf_from_json(const json& j) {
  std::vector<int> degrees;
  for (const auto& d : field(j, "line_degrees")) degrees.push_back(int_field(d));
  std::vector<p1::TorsionPoint> torsion;
  if (j.contains("torsion")) {
    for (const auto& t : j.at("torsion")) {
      const auto& pt = field(t, "pt");
      if (!pt.is_string()) bad("torsion point label must be a string");
      torsion.push_back({pt.get<std::string>(), int_field(field(t, "len"))});
    }
  }
  try {
    return p1::SplitSheaf(std::move(degrees), std::move(torsion));
  } catch (const Error& e) {
    bad(e.what());
  }
}

GaussianRational sheaf_z_from_json(const json& j) {
  if (!j.contains("z")) return p1::default_z();
  auto z = gaussian_from_json(j.at("z"));
  try {
    p1::check_z(z);
  } catch (const Error& e) {
    bad(e.what());
  }
  return z;
}

std::optional<Backend> infer_backend(const json& j) {
  if (!j.is_object()) return std::nullopt;
  if (j.contains("line_degrees")) return Backend::kP1;
  if (j.contains("vertices") && j.contains("dims")) return Backend::kQuiver;
  return std::nullopt;
}

}  // namespace stab::io
