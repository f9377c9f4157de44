// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TORUSFLOW_REPORT_IO_HPP
#define TORUSFLOW_REPORT_IO_HPP

#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "torusflow/common.hpp"
#include "torusflow/lifted_map.hpp"
#include "torusflow/synthesis.hpp"
#include "torusflow/tongues.hpp"

namespace torusflow {

/// CSV rows `p,q,B,A_left,A_right,width,multiplier,status`, header first.
inline std::string format_csv(const TongueDiagram& diagram) {
  std::ostringstream out;
  out << std::setprecision(12);
  out << "p,q,B,A_left,A_right,width,multiplier,status\n";
  for (const TongueSlice& s : diagram.slices) {
    out << s.rho.p << "," << s.rho.q << "," << s.B << "," << s.A_left << ","
        << s.A_right << "," << s.width() << ",";
    if (s.witness)
      out << s.witness->multiplier;
    else
      out << "nan";
    out << "," << s.status << "\n";
  }
  return out.str();
}

/// Debug CSV of a lifted map: rows `x,H(x)` over the grid.
inline std::string format_map_csv(const LiftedMap& g) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "x,H\n";
  for (int i = 0; i < g.grid_size(); ++i)
    out << g.node(i) << "," << g.grid_values()[i] << "\n";
  return out.str();
}

/// Tongue diagram as SVG: A horizontal, B vertical, one horizontal segment
/// per slice colored by q. The viewBox mapping is declared in the header
/// comment so diagrams are comparable across runs.
inline std::string format_svg(const TongueDiagram& diagram) {
  double A_min = -1, A_max = 1, B_min = 0, B_max = 1;
  bool first = true;
  for (const TongueSlice& s : diagram.slices) {
    if (first) {
      A_min = s.A_left;
      A_max = s.A_right;
      B_min = B_max = s.B;
      first = false;
    }
    A_min = std::min(A_min, s.A_left);
    A_max = std::max(A_max, s.A_right);
    B_min = std::min(B_min, s.B);
    B_max = std::max(B_max, s.B);
  }
  const double pad_A = 0.05 * std::max(A_max - A_min, 1e-3);
  const double pad_B = 0.05 * std::max(B_max - B_min, 1e-3);
  A_min -= pad_A;
  A_max += pad_A;
  B_min -= pad_B;
  B_max += pad_B;
  const int W = 800, H = 500;
  auto sx = [&](double A) { return W * (A - A_min) / (A_max - A_min); };
  auto sy = [&](double B) { return H * (B_max - B) / (B_max - B_min); };
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  std::ostringstream out;
  out << std::setprecision(8);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W
      << " " << H << "\">\n";
  out << "<!-- axes: A in [" << A_min << ", " << A_max << "] maps to x in "
      << "[0, " << W << "]; B in [" << B_min << ", " << B_max
      << "] maps to y in [" << H << ", 0] -->\n";
  out << "<rect width=\"" << W << "\" height=\"" << H
      << "\" fill=\"white\"/>\n";
  if (A_min < 0 && A_max > 0)
    out << "<line x1=\"" << sx(0) << "\" y1=\"0\" x2=\"" << sx(0)
        << "\" y2=\"" << H << "\" stroke=\"#cccccc\"/>\n";
  for (const TongueSlice& s : diagram.slices) {
    const char* color = palette[(s.rho.q - 1) % 8];
    out << "<line x1=\"" << sx(s.A_left) << "\" y1=\"" << sy(s.B)
        << "\" x2=\"" << sx(s.A_right) << "\" y2=\"" << sy(s.B)
        << "\" stroke=\"" << color << "\" stroke-width=\"4\">"
        << "<title>rho=" << s.rho.p << "/" << s.rho.q << " B=" << s.B
        << "</title></line>\n";
  }
  out << "</svg>\n";
  return out.str();
}

/// Sidecar synthesis report, text key-value.
inline std::string format_synthesis_report(const SynthesisReport& r) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "stage " << r.stage << "\n";
  out << "success " << (r.success ? 1 : 0) << "\n";
  out << "p " << r.p << "\n";
  out << "q " << r.q << "\n";
  out << "quotient_m " << r.quotient_m << "\n";
  out << "lifted_p " << r.lifted_p << "\n";
  out << "lifted_q " << r.lifted_q << "\n";
  out << "word_multiplier " << r.word_multiplier << "\n";
  out << "margin " << r.margin << "\n";
  out << "delta " << r.delta << "\n";
  out << "sigma " << r.sigma << "\n";
  out << "degree " << r.degree << "\n";
  out << "multiplier " << r.multiplier << "\n";
  out << "witness_x0 " << r.witness_x0 << "\n";
  if (!r.diagnostics.empty()) out << "diagnostics " << r.diagnostics << "\n";
  return out.str();
}

}  // namespace torusflow

#endif
