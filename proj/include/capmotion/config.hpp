#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "capmotion/geometry.hpp"
#include "capmotion/io.hpp"
#include "capmotion/julia.hpp"
#include "capmotion/motion.hpp"

namespace capmotion {

// Flat key-value run configuration. Everything a run needs (subcommand,
// specs, seed, tolerances, paths) lives here, so one canonical string both
// round-trips the config and produces its fingerprint.
struct RunConfig {
  std::map<std::string, std::string> entries;

  bool has(const std::string& key) const { return entries.count(key) != 0; }

  void set(const std::string& key, const std::string& value) { entries[key] = value; }
  void set_double(const std::string& key, double v) { entries[key] = format_double(v); }
  void set_int(const std::string& key, long long v) { entries[key] = std::to_string(v); }

  std::string get(const std::string& key, const std::string& fallback = "") const {
    auto it = entries.find(key);
    return it == entries.end() ? fallback : it->second;
  }
  double get_double(const std::string& key, double fallback) const {
    auto it = entries.find(key);
    return it == entries.end() ? fallback : std::stod(it->second);
  }
  long long get_int(const std::string& key, long long fallback) const {
    auto it = entries.find(key);
    return it == entries.end() ? fallback : std::stoll(it->second);
  }
  std::uint64_t seed() const { return static_cast<std::uint64_t>(get_int("seed", 0)); }

  // Sorted key=value lines; the map already iterates in key order.
  std::string canonical_string() const {
    std::ostringstream out;
    for (const auto& [k, v] : entries) out << k << "=" << v << "\n";
    return out.str();
  }
  std::string config_hash() const { return hash_hex(fnv1a(canonical_string())); }
};

// Minimal key = value config file grammar: one assignment per line, optional
// double quotes around values, '#' starts a comment. Unknown keys are kept
// verbatim so specs stay forward-compatible.
inline RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    cfg.set(key, value);
  }
  return cfg;
}

inline std::string config_to_text(const RunConfig& cfg) { return cfg.canonical_string(); }

// Complex literals: "1", "-0.5", "2i", "1+0.5i", "0.25-1i".
inline Complex parse_complex_literal(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() == 'i') {
    // Split at the sign that separates real and imaginary parts, if any.
    for (std::size_t k = s.size() - 1; k > 0; --k) {
      if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
        std::string re = s.substr(0, k);
        std::string im = s.substr(k, s.size() - 1 - k);
        if (im == "+" || im == "-") im += "1";
        return Complex(std::stod(re), std::stod(im));
      }
    }
    std::string im = s.substr(0, s.size() - 1);
    if (im.empty() || im == "+" || im == "-") im += "1";
    return Complex(0.0, std::stod(im));
  }
  return Complex(std::stod(s), 0.0);
}

namespace detail {

inline std::map<std::string, std::string> parse_kv_list(const std::string& text) {
  std::map<std::string, std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) {
      std::size_t eq = item.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("expected key=value in spec: " + item);
      out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

// Motion specs: "translation:a=1", "scaling:beta=0.5", "stretch",
// "bottcher:depth=24,escape=10000,allow_large_c=1".
inline Motion parse_motion_spec(const std::string& spec) {
  std::size_t colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  auto kv = colon == std::string::npos ? std::map<std::string, std::string>{}
                                       : detail::parse_kv_list(spec.substr(colon + 1));
  if (kind == "translation") {
    Complex a = kv.count("a") ? parse_complex_literal(kv["a"]) : Complex(1.0, 0.0);
    return motion_translation(a);
  }
  if (kind == "scaling") {
    Complex beta = kv.count("beta") ? parse_complex_literal(kv["beta"]) : Complex(0.5, 0.0);
    return motion_scaling(beta);
  }
  if (kind == "stretch") return motion_affine_stretch();
  if (kind == "bottcher") {
    BottcherParams p;
    if (kv.count("depth")) p.depth = static_cast<std::size_t>(std::stoull(kv["depth"]));
    if (kv.count("escape")) p.escape_radius = std::stod(kv["escape"]);
    if (kv.count("tolerance")) p.tolerance = std::stod(kv["tolerance"]);
    if (kv.count("allow_large_c")) p.allow_outside_test_region = kv["allow_large_c"] == "1";
    return motion_bottcher(p);
  }
  throw std::invalid_argument("unknown motion kind: " + kind);
}

// Set specs: "circle", "circle:n=2048,r=1,cx=0,cy=0", "segment:n=8192,a=-2,b=2",
// "cantor:level=6,pps=4", or a CSV file path.
inline PointCloud parse_set_spec(const std::string& spec) {
  std::size_t colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  if (kind == "circle" || kind == "segment" || kind == "cantor") {
    auto kv = colon == std::string::npos ? std::map<std::string, std::string>{}
                                         : detail::parse_kv_list(spec.substr(colon + 1));
    if (kind == "circle") {
      std::size_t n = kv.count("n") ? std::stoull(kv["n"]) : 2048;
      double r = kv.count("r") ? std::stod(kv["r"]) : 1.0;
      Complex center(kv.count("cx") ? std::stod(kv["cx"]) : 0.0,
                     kv.count("cy") ? std::stod(kv["cy"]) : 0.0);
      return gen_circle(n, r, center);
    }
    if (kind == "segment") {
      std::size_t n = kv.count("n") ? std::stoull(kv["n"]) : 4096;
      Complex a = kv.count("a") ? parse_complex_literal(kv["a"]) : Complex(-2.0, 0.0);
      Complex b = kv.count("b") ? parse_complex_literal(kv["b"]) : Complex(2.0, 0.0);
      return gen_segment(n, a, b);
    }
    std::size_t level = kv.count("level") ? std::stoull(kv["level"]) : 4;
    std::size_t pps = kv.count("pps") ? std::stoull(kv["pps"]) : 4;
    return gen_cantor_quarter_square(level, pps);
  }
  // Anything else is a CSV path.
  return cloud_from_csv(read_text_file(spec), spec);
}

// Grid specs: "real:a:b:count" or "polar:r1,r2,...:points_per_ring".
inline LambdaGrid parse_grid_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon == std::string::npos ? std::string::npos : colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.empty()) throw std::invalid_argument("empty grid spec");
  if (parts[0] == "real") {
    if (parts.size() != 4) throw std::invalid_argument("grid spec: real:a:b:count");
    return lambda_grid_real(std::stod(parts[1]), std::stod(parts[2]), std::stoull(parts[3]));
  }
  if (parts[0] == "polar") {
    if (parts.size() != 3) throw std::invalid_argument("grid spec: polar:r1,r2,...:points_per_ring");
    std::vector<double> radii;
    std::size_t p = 0;
    const std::string& rs = parts[1];
    while (p < rs.size()) {
      std::size_t comma = rs.find(',', p);
      radii.push_back(std::stod(rs.substr(p, comma == std::string::npos ? std::string::npos : comma - p)));
      if (comma == std::string::npos) break;
      p = comma + 1;
    }
    return lambda_grid_polar(radii, std::stoull(parts[2]));
  }
  throw std::invalid_argument("unknown grid kind: " + parts[0]);
}

}  // namespace capmotion
