// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TORUSFLOW_FIELD_IO_HPP
#define TORUSFLOW_FIELD_IO_HPP

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "torusflow/common.hpp"
#include "torusflow/group_word.hpp"
#include "torusflow/trig_poly.hpp"

namespace torusflow {

/// Field/forcing file format, line oriented:
///   constant <real>
///   harm <k> <a_k> <b_k>     (one line per harmonic)
/// Parsed leniently on whitespace; written canonically sorted by k.
inline TrigPoly parse_field(std::istream& in, const std::string& origin) {
  TrigPoly p;
  std::string line;
  int lineno = 0;
  bool saw_constant = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    auto bad = [&](const std::string& what) {
      return ParseError(origin + ":" + std::to_string(lineno) + ": " + what);
    };
    if (key == "constant") {
      double c;
      if (!(ls >> c)) throw bad("expected 'constant <real>'");
      p.add_constant(c);
      saw_constant = true;
    } else if (key == "harm") {
      int k;
      double a, b;
      if (!(ls >> k >> a >> b)) throw bad("expected 'harm <k> <a> <b>'");
      if (k < 1) throw bad("harmonic degree must be >= 1");
      p.add_harmonic(k, a, b);
    } else {
      throw bad("unknown keyword '" + key + "'");
    }
  }
  if (!saw_constant && p.harmonics().empty())
    throw ParseError(origin + ": empty field file");
  return p;
}

inline TrigPoly load_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open field file: " + path.string());
  return parse_field(in, path.string());
}

inline std::string format_field(const TrigPoly& p) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "constant " << p.constant_term() << "\n";
  for (const Harmonic& h : p.harmonics())
    out << "harm " << h.degree << " " << h.cos_coeff << " " << h.sin_coeff
        << "\n";
  return out.str();
}

/// Word file format: `k <int>` then k lines `t_j tau_j`.
inline GroupWord parse_word(std::istream& in, const std::string& origin) {
  std::string key;
  int k = 0;
  if (!(in >> key >> k) || key != "k" || k < 1)
    throw ParseError(origin + ": expected header 'k <positive int>'");
  std::vector<double> t(k), tau(k);
  for (int j = 0; j < k; ++j)
    if (!(in >> t[j] >> tau[j]))
      throw ParseError(origin + ": expected " + std::to_string(k) +
                       " lines of 't_j tau_j'");
  return GroupWord(std::move(t), std::move(tau));
}

inline GroupWord load_word(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open word file: " + path.string());
  return parse_word(in, path.string());
}

inline std::string format_word(const GroupWord& w) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "k " << w.length() << "\n";
  for (int j = 0; j < w.length(); ++j)
    out << w.shift_times[j] << " " << w.field_times[j] << "\n";
  return out.str();
}

/// Write through a temp file plus rename so readers never see a torso.
inline void atomic_write(const std::filesystem::path& path,
                         const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ParseError("cannot write file: " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace torusflow

#endif
