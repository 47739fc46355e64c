#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gridnav/common.hpp"

namespace gridnav {

// Structured-text configuration: one `key value` pair per line, '#'
// comments, later keys override earlier ones. Every key read through a
// getter lands in the effective map (with its final value, default or
// not), so echo_effective() reproduces the exact run configuration.
class Config {
 public:
  Config() = default;

  static Config from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Err::BadConfig, "cannot open config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
  }

  static Config from_string(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string key;
      if (!(ls >> key)) continue;
      std::string value;
      std::getline(ls, value);
      auto b = value.find_first_not_of(" \t");
      value = (b == std::string::npos) ? "" : value.substr(b);
      auto e = value.find_last_not_of(" \t\r");
      if (e != std::string::npos) value.erase(e + 1);
      if (value.empty()) fail(Err::BadConfig, "config line " + std::to_string(lineno) + ": key without value");
      c.raw_[key] = value;
    }
    return c;
  }

  // key=value override, e.g. from a CLI --set flag.
  void set(const std::string& key, const std::string& value) { raw_[key] = value; }

  bool has(const std::string& key) const { return raw_.count(key) > 0; }

  std::string get_str(const std::string& key, const std::string& def) {
    auto it = raw_.find(key);
    std::string v = it == raw_.end() ? def : it->second;
    effective_[key] = v;
    return v;
  }

  std::string require_str(const std::string& key) {
    auto it = raw_.find(key);
    if (it == raw_.end()) fail(Err::BadConfig, "missing required config key: " + key);
    effective_[key] = it->second;
    return it->second;
  }

  long long get_int(const std::string& key, long long def) {
    auto it = raw_.find(key);
    if (it == raw_.end()) {
      effective_[key] = std::to_string(def);
      return def;
    }
    try {
      long long v = std::stoll(it->second);
      effective_[key] = it->second;
      return v;
    } catch (const std::exception&) {
      fail(Err::BadConfig, "config key " + key + ": expected integer, got '" + it->second + "'");
    }
  }

  double get_double(const std::string& key, double def) {
    auto it = raw_.find(key);
    if (it == raw_.end()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", def);
      effective_[key] = buf;
      return def;
    }
    try {
      double v = std::stod(it->second);
      effective_[key] = it->second;
      return v;
    } catch (const std::exception&) {
      fail(Err::BadConfig, "config key " + key + ": expected number, got '" + it->second + "'");
    }
  }

  bool get_bool(const std::string& key, bool def) {
    auto it = raw_.find(key);
    if (it == raw_.end()) {
      effective_[key] = def ? "true" : "false";
      return def;
    }
    const std::string& v = it->second;
    effective_[key] = v;
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(Err::BadConfig, "config key " + key + ": expected bool, got '" + v + "'");
  }

  std::uint64_t get_seed(const std::string& key, std::uint64_t def) {
    return std::uint64_t(get_int(key, (long long)def));
  }

  // Rejects keys outside the declared schema; every command calls this
  // after reading its options.
  void require_known(const std::set<std::string>& known) const {
    for (const auto& [k, v] : raw_)
      if (!known.count(k)) fail(Err::BadConfig, "unknown config key: " + k);
  }

  // Sorted `key value` lines of everything that was read. Feeding the
  // echo back through from_string() reproduces the run byte-exactly.
  std::string echo_effective() const {
    std::string out;
    for (const auto& [k, v] : effective_) out += k + " " + v + "\n";
    return out;
  }

  const std::map<std::string, std::string>& raw() const { return raw_; }

 private:
  std::map<std::string, std::string> raw_;
  std::map<std::string, std::string> effective_;
};

}  // namespace gridnav
