#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "latbound/error.hpp"
#include "latbound/format.hpp"
#include "latbound/spectrum.hpp"

namespace latbound {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json parse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, what + ": " + e.what());
  }
}

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw Error(ErrorCode::Schema, std::string("missing numeric field '") + key + "'");
  }
  const double v = j[key].get<double>();
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::Schema, std::string("field '") + key + "' is not finite");
  }
  return v;
}

}  // namespace

std::string spectrum_to_json(const DistanceSpectrum& s) {
  validate(s);
  json j;
  j["name"] = s.name;
  j["n"] = s.n;
  j["log_det"] = s.log_det();
  j["complete_radius"] = s.complete_radius;
  j["entries"] = json::array();
  for (const auto& e : s.entries) {
    j["entries"].push_back({{"norm_sq", e.norm_sq}, {"count", e.count}});
  }
  return j.dump(2) + "\n";
}

DistanceSpectrum spectrum_from_json(const std::string& text) {
  const json j = parse(text, "spectrum file");
  if (!j.is_object()) throw Error(ErrorCode::Schema, "spectrum must be a JSON object");
  DistanceSpectrum s;
  if (!j.contains("name") || !j["name"].is_string()) {
    throw Error(ErrorCode::Schema, "missing string field 'name'");
  }
  s.name = j["name"].get<std::string>();
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw Error(ErrorCode::Schema, "missing integer field 'n'");
  }
  s.n = j["n"].get<int>();
  if (s.n < 1) throw Error(ErrorCode::Schema, "'n' must be >= 1");
  s.log_density = 0.0 - require_number(j, "log_det") / s.n;  // never -0
  s.complete_radius = require_number(j, "complete_radius");
  if (!j.contains("entries") || !j["entries"].is_array()) {
    throw Error(ErrorCode::Schema, "missing array field 'entries'");
  }
  for (const auto& e : j["entries"]) {
    if (!e.is_object()) throw Error(ErrorCode::Schema, "entry must be an object");
    SpectrumEntry entry;
    entry.norm_sq = require_number(e, "norm_sq");
    if (!e.contains("count") || !e["count"].is_number_integer()) {
      throw Error(ErrorCode::Schema, "entry 'count' must be an integer");
    }
    if (e["count"].is_number_unsigned()) {
      entry.count = e["count"].get<std::uint64_t>();
    } else if (e["count"].get<std::int64_t>() > 0) {
      entry.count = static_cast<std::uint64_t>(e["count"].get<std::int64_t>());
    } else {
      throw Error(ErrorCode::Schema, "entry 'count' must be positive");
    }
    s.entries.push_back(entry);
  }
  validate(s);
  return s;
}

DistanceSpectrum load_spectrum(const std::string& path) {
  return spectrum_from_json(read_file(path));
}

void save_spectrum(const DistanceSpectrum& s, const std::string& path) {
  const std::string text = spectrum_to_json(s);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

std::string spectrum_to_csv(const DistanceSpectrum& s) {
  std::string out = "norm_sq,count\n";
  for (const auto& e : s.entries) {
    out += format_double(e.norm_sq) + "," + std::to_string(e.count) + "\n";
  }
  return out;
}

LatticeBasis load_basis(const std::string& path) {
  const json j = parse(read_file(path), "basis file");
  if (!j.is_object() || !j.contains("basis") || !j["basis"].is_array()) {
    throw Error(ErrorCode::Schema, "basis file needs an array field 'basis'");
  }
  const auto& rows = j["basis"];
  const int n = static_cast<int>(rows.size());
  if (n < 1) throw Error(ErrorCode::Schema, "'basis' must not be empty");
  LatticeBasis basis;
  basis.name = j.value("name", std::string("custom"));
  basis.n = n;
  basis.generator.resize(n, n);
  for (int col = 0; col < n; ++col) {
    const auto& v = rows[col];
    if (!v.is_array() || static_cast<int>(v.size()) != n) {
      throw Error(ErrorCode::Schema, "each basis vector must have n coordinates");
    }
    for (int row = 0; row < n; ++row) {
      if (!v[row].is_number()) throw Error(ErrorCode::Schema, "non-numeric coordinate");
      basis.generator(row, col) = v[row].get<double>();
    }
  }
  const double det = basis.generator.fullPivLu().determinant();
  if (!(std::abs(det) > 0.0)) {
    throw Error(ErrorCode::SingularBasis, "basis in '" + path + "' is singular");
  }
  basis.log_det = std::log(std::abs(det));
  return basis;
}

}  // namespace latbound
