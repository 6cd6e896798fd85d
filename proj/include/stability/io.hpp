#pragma once

// JSON encodings of charges, slopes, quiver representations, presets and
// split sheaves. Rationals are strings "p" or "p/q"; integers are accepted
// on input.

#include "stability/charge.hpp"
#include "stability/p1.hpp"
#include "stability/quiver.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace stab::io {

using json = nlohmann::json;

enum class Backend { kQuiver, kP1 };

std::string backend_name(Backend b);
Backend parse_backend(const std::string& name);

/// Throws kParseError when the file is missing or not JSON.
json load_json_file(const std::filesystem::path& path);

Rational rational_from_json(const json& j);
json to_json(const Rational& x);
json to_json(const GaussianRational& z);
GaussianRational gaussian_from_json(const json& j);

json to_json(const ChargePolynomial& p);
ChargePolynomial charge_from_json(const json& j);

json to_json(const ExtendedSlope& s);
json to_json(const PhaseVector& v);

/// Comma-separated rationals, e.g. "1,1/2".
std::vector<Rational> parse_rational_list(const std::string& text);
/// Comma-separated slopes; "inf" allowed.
PhaseVector parse_phase_vector(const std::string& text);

json to_json(const quiver::Rep& e);
quiver::Rep rep_from_json(const json& j);

/// Audits the preset; any "validated" field in the input is ignored.
json to_json(const quiver::ChargePreset& p);
quiver::ChargePreset preset_from_json(const json& j);

json to_json(const p1::SplitSheaf& e, const GaussianRational& z);
p1::SplitSheaf sheaf_from_json(const json& j);
/// The "z" field, defaulting to -1+i.
GaussianRational sheaf_z_from_json(const json& j);

/// Backend from the keys present; nullopt when neither shape matches.
std::optional<Backend> infer_backend(const json& j);

}  // namespace stab::io
