#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "capmotion/capacity.hpp"
#include "capmotion/experiments.hpp"
#include "capmotion/geometry.hpp"
#include "capmotion/version.hpp"
#include "capmotion/welding.hpp"

namespace capmotion {

using json = nlohmann::json;

// All numeric output goes through one shortest-round-trip formatter so that
// identical runs produce identical bytes.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// FNV-1a, the stable 64-bit hash used for config fingerprints.
inline std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- point clouds ----------------------------------------------------------

inline std::string cloud_to_csv(const PointCloud& cloud, const std::string& config_hash = "") {
  std::ostringstream out;
  if (!config_hash.empty()) out << "# config_hash=" << config_hash << "\n";
  out << "re,im\n";
  for (Complex p : cloud.points)
    out << format_double(p.real()) << "," << format_double(p.imag()) << "\n";
  return out.str();
}

inline PointCloud cloud_from_csv(const std::string& text, const std::string& label = "csv") {
  PointCloud cloud;
  cloud.label = label;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // "re,im"
      continue;
    }
    std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("cloud CSV: malformed row: " + line);
    cloud.points.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  cloud.validate();
  return cloud;
}

inline json cloud_to_json(const PointCloud& cloud) {
  json j;
  j["label"] = cloud.label;
  j["points"] = json::array();
  for (Complex p : cloud.points) j["points"].push_back({p.real(), p.imag()});
  j["generator_params"] = cloud.generator_params;
  return j;
}

inline PointCloud cloud_from_json(const json& j) {
  PointCloud cloud;
  cloud.label = j.at("label").get<std::string>();
  for (const auto& p : j.at("points")) cloud.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  if (j.contains("generator_params"))
    for (auto it = j.at("generator_params").begin(); it != j.at("generator_params").end(); ++it)
      cloud.generator_params[it.key()] = it.value().get<std::string>();
  cloud.validate();
  return cloud;
}

// ---- reports ---------------------------------------------------------------

inline json capacity_report_to_json(const CapacityReport& rep) {
  json j;
  j["diameters"] = json::array();
  for (const auto& [n, d] : rep.diameters) j["diameters"].push_back({n, d});
  j["raw"] = rep.raw_estimate;
  j["extrapolated"] = rep.extrapolated;
  j["method"] = rep.method;
  j["stats"] = {{"passes", rep.optimizer_passes},
                {"exchanges", rep.optimizer_exchanges},
                {"monotone", rep.monotone},
                {"worst_increase", rep.worst_increase}};
  return j;
}

inline json check_report_to_json(const CheckReport& rep) {
  return json{{"check", rep.name},
              {"samples_tested", rep.samples_tested},
              {"samples_skipped", rep.samples_skipped},
              {"worst_violation", rep.worst_violation},
              {"tolerance", rep.tolerance},
              {"pass", rep.pass}};
}

// ---- tables ----------------------------------------------------------------

inline std::string sweep_to_csv(const SweepTable& t) {
  std::ostringstream out;
  if (!t.config_hash.empty()) out << "# config_hash=" << t.config_hash << "\n";
  out << "# motion=" << t.motion_id << " set=" << t.set_id << "\n";
  out << "lambda_re,lambda_im,capacity,cap_err,area,boxdim\n";
  for (const SweepRow& r : t.rows) {
    out << format_double(r.lambda.real()) << "," << format_double(r.lambda.imag()) << ",";
    if (r.failed) {
      out << ",,,\n";
      continue;
    }
    out << format_double(r.capacity) << "," << format_double(r.capacity_err) << ",";
    if (r.area) out << format_double(*r.area);
    out << ",";
    if (r.boxdim) out << format_double(*r.boxdim);
    out << "\n";
  }
  return out.str();
}

inline SweepTable sweep_from_csv(const std::string& text) {
  SweepTable t;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto pos = line.find("config_hash=");
      if (pos != std::string::npos) t.config_hash = line.substr(pos + 12);
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() < 4) throw std::invalid_argument("sweep CSV: malformed row: " + line);
    SweepRow r;
    r.lambda = Complex(std::stod(fields[0]), std::stod(fields[1]));
    if (fields[2].empty()) {
      r.failed = true;
    } else {
      r.capacity = std::stod(fields[2]);
      r.capacity_err = std::stod(fields[3]);
      if (fields.size() > 4 && !fields[4].empty()) r.area = std::stod(fields[4]);
      if (fields.size() > 5 && !fields[5].empty()) r.boxdim = std::stod(fields[5]);
    }
    t.rows.push_back(r);
  }
  if (t.rows.empty()) throw std::invalid_argument("sweep CSV: no rows");
  return t;
}

inline std::string welding_to_csv(const WeldingTable& t, const std::string& config_hash = "") {
  std::ostringstream out;
  if (!config_hash.empty()) out << "# config_hash=" << config_hash << "\n";
  out << "# c=" << format_double(t.c.real()) << "+" << format_double(t.c.imag()) << "i"
      << " walks=" << t.n_walks << " lost=" << t.lost_walks
      << " epsilon=" << format_double(t.epsilon) << "\n";
  out << "theta,phi,delta,mc_error\n";
  for (std::size_t k = 0; k < t.size(); ++k) {
    out << format_double(t.external_angles[k]) << "," << format_double(t.internal_angles[k])
        << "," << format_double(t.increments[k]) << "," << format_double(t.mc_error[k]) << "\n";
  }
  return out.str();
}

inline std::string dimension_table_to_csv(const std::vector<DimensionRow>& rows,
                                          const std::string& config_hash = "") {
  std::ostringstream out;
  if (!config_hash.empty()) out << "# config_hash=" << config_hash << "\n";
  out << "c,boxdim,boxdim_err,capacity,samples\n";
  for (const DimensionRow& r : rows) {
    out << format_double(r.c) << "," << format_double(r.boxdim) << ","
        << format_double(r.boxdim_err) << "," << format_double(r.capacity) << "," << r.samples
        << "\n";
  }
  return out.str();
}

// Run manifest: written next to every CLI output. Wall time is the one field
// allowed to differ between reruns, and lives only here.
inline json make_manifest(const std::string& config_hash, std::uint64_t seed,
                          double wall_seconds) {
  return json{{"config_hash", config_hash},
              {"seed", seed},
              {"version", kVersion},
              {"wall_seconds", wall_seconds}};
}

}  // namespace capmotion
