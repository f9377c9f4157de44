// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TORUSFLOW_MANIFEST_HPP
#define TORUSFLOW_MANIFEST_HPP

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "torusflow/common.hpp"

namespace torusflow {

inline constexpr const char* tool_version = "torusflow 0.1.0";

/// Reproducibility record written alongside every CLI output: the
/// subcommand, all resolved parameters, the seed, tool version and wall
/// time. Serialized as ordered `key value` lines; round-trips exactly.
class RunManifest {
 public:
  void set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_)
      if (k == key) {
        v = value;
        return;
      }
    entries_.emplace_back(key, value);
  }
  template <class T>
  void set(const std::string& key, const T& value) {
    std::ostringstream s;
    s.precision(17);
    s << value;
    set(key, s.str());
  }

  const std::string* get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
      if (k == key) return &v;
    return nullptr;
  }

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  std::string to_string() const {
    std::ostringstream out;
    for (const auto& [k, v] : entries_) out << k << " " << v << "\n";
    return out.str();
  }

  static RunManifest parse(const std::string& text) {
    RunManifest m;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto pos = line.find(' ');
      if (pos == std::string::npos)
        throw ParseError("manifest: malformed line '" + line + "'");
      m.entries_.emplace_back(line.substr(0, pos), line.substr(pos + 1));
    }
    return m;
  }

  friend bool operator==(const RunManifest&, const RunManifest&) = default;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace torusflow

#endif
