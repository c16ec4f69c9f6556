#pragma once

// Parsing of "name:key=value,key=value" strings shared by the policy, prior and
// reward-model factories.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>

#include "infarm/errors.hpp"

namespace infarm::detail {

struct SpecString {
  std::string text;
  std::string head;
  std::map<std::string, std::string> params;
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline SpecString parse_spec_string(const std::string& text) {
  SpecString out;
  out.text = text;
  const auto colon = text.find(':');
  out.head = trim(text.substr(0, colon));
  if (out.head.empty()) throw ConfigError("empty specification string");
  if (colon == std::string::npos) return out;
  std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto comma = rest.find(',', pos);
    const std::string item = trim(rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("expected key=value in '" + text + "', got '" + item + "'");
      const std::string key = trim(item.substr(0, eq));
      if (out.params.count(key)) throw ConfigError("duplicate key '" + key + "' in '" + text + "'");
      out.params[key] = trim(item.substr(eq + 1));
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline double to_number(const std::string& value, const std::string& context) {
  double x = 0.0;
  const char* first = value.data();
  const char* last = first + value.size();
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last) throw ConfigError("'" + value + "' is not a number in " + context);
  return x;
}

inline bool has(const SpecString& s, const std::string& key) { return s.params.count(key) > 0; }

inline std::string get_string(const SpecString& s, const std::string& key, const std::string& fallback) {
  auto it = s.params.find(key);
  return it == s.params.end() ? fallback : it->second;
}

inline double get_number(const SpecString& s, const std::string& key, double fallback) {
  auto it = s.params.find(key);
  return it == s.params.end() ? fallback : to_number(it->second, "'" + s.text + "'");
}

inline std::int64_t get_integer(const SpecString& s, const std::string& key, std::int64_t fallback) {
  auto it = s.params.find(key);
  if (it == s.params.end()) return fallback;
  std::int64_t x = 0;
  const auto& v = it->second;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("'" + v + "' is not an integer in '" + s.text + "'");
  }
  return x;
}

/// Rejects parameters outside `allowed`.
template <class... Keys>
void expect_keys(const SpecString& s, Keys... allowed) {
  for (const auto& [key, value] : s.params) {
    if (!((key == allowed) || ...)) throw ConfigError("unknown parameter '" + key + "' in '" + s.text + "'");
  }
}

/// Shortest round-trip decimal representation.
inline std::string format_number(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace infarm::detail
