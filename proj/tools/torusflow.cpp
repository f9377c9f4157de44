// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: rotation numbers, tongue scans, quantization
// checks, group-word evaluation/search, and forcing synthesis.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torusflow/torusflow.hpp"

namespace tf = torusflow;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_numerics = 3;
constexpr int exit_not_found = 4;

tf::Rational parse_rho(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return tf::reduced(std::stol(s), 1);
    return tf::reduced(std::stol(s.substr(0, slash)),
                       std::stol(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw tf::ParseError("invalid rational '" + s + "', expected p/q");
  }
}

struct ManifestWriter {
  tf::RunManifest m;
  std::string path;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  explicit ManifestWriter(const std::string& subcommand) {
    m.set("tool", tf::tool_version);
    m.set("subcommand", subcommand);
  }
  void finish() {
    if (path.empty()) return;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    m.set("wall_time_s", secs);
    tf::atomic_write(path, m.to_string());
  }
};

struct ScanParams {
  double A_min = -3, A_max = 3;
  std::vector<double> B_values;
  int qmax = 5;
  double tol_A = 1e-6;
  int grid = 1024;
  double flow_tol = 1e-9;
  bool keep_points = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--A-min", A_min, "left end of the A sweep");
    cmd->add_option("--A-max", A_max, "right end of the A sweep");
    cmd->add_option("--B", B_values, "B values to scan")->expected(-1);
    cmd->add_option("--qmax", qmax, "largest denominator");
    cmd->add_option("--tol-A", tol_A, "boundary bisection tolerance");
    cmd->add_option("--grid", grid, "flow-map grid size");
    cmd->add_option("--flow-tol", flow_tol, "integrator tolerance");
    cmd->add_flag("--points", keep_points, "record zero-width slices too");
  }
  tf::ScanOptions options() const {
    tf::ScanOptions o;
    o.tol_A = tol_A;
    o.grid = grid;
    o.flow_tol = flow_tol;
    o.keep_points = keep_points;
    return o;
  }
  void record(tf::RunManifest& m) const {
    m.set("A_min", A_min);
    m.set("A_max", A_max);
    std::string bs;
    for (double b : B_values) bs += (bs.empty() ? "" : ",") + std::to_string(b);
    m.set("B", bs);
    m.set("qmax", qmax);
    m.set("tol_A", tol_A);
    m.set("grid", grid);
    m.set("flow_tol", flow_tol);
    m.set("points", keep_points ? 1 : 0);
  }
};

int run(int argc, char** argv) {
  CLI::App app{"rotation numbers, phase-lock areas and forcing synthesis "
               "for torus flows dx/dt = v(x) + A + B f(t)"};
  app.require_subcommand(1);

  // ---- rotnum ----
  auto* rotnum = app.add_subcommand(
      "rotnum", "rotation number of one family member");
  std::string rn_field, rn_forcing;
  double rn_A = 0, rn_B = 0, rn_tol = 1e-10;
  int rn_periods = 512, rn_qmax = 32;
  std::string rn_manifest;
  rotnum->add_option("field", rn_field, "field file (v)")->required();
  rotnum->add_option("forcing", rn_forcing, "forcing file (f)")->required();
  rotnum->add_option("-A", rn_A, "parameter A")->required();
  rotnum->add_option("-B", rn_B, "parameter B")->required();
  rotnum->add_option("--periods", rn_periods, "periods to integrate");
  rotnum->add_option("--tol", rn_tol, "integrator tolerance");
  rotnum->add_option("--qmax", rn_qmax, "rational detection denominator cap");
  rotnum->add_option("--manifest", rn_manifest, "manifest output path");

  // ---- scan ----
  auto* scan = app.add_subcommand("scan", "phase-lock slice scan over (A,B)");
  std::string sc_field, sc_forcing, sc_out, sc_svg;
  ScanParams sc;
  scan->add_option("field", sc_field)->required();
  scan->add_option("forcing", sc_forcing)->required();
  sc.attach(scan);
  scan->add_option("--out", sc_out, "CSV output path")->required();
  scan->add_option("--svg", sc_svg, "SVG output path");

  // ---- quantize-check ----
  auto* quant = app.add_subcommand(
      "quantize-check", "verify the special-form quantization effect");
  std::string qc_field, qc_forcing, qc_out;
  ScanParams qc;
  double qc_floor = 1e-3;
  quant->add_option("field", qc_field)->required();
  quant->add_option("forcing", qc_forcing)->required();
  qc.attach(quant);
  quant->add_option("--width-floor", qc_floor, "width above which a slice "
                    "must obey quantization");
  quant->add_option("--out", qc_out, "optional CSV of the underlying scan");

  // ---- synth ----
  auto* synth = app.add_subcommand(
      "synth", "synthesize a trig-poly forcing locking at a target rational");
  std::string sy_field, sy_rho, sy_out;
  tf::SynthesisOptions sy_opts;
  synth->add_option("field", sy_field)->required();
  synth->add_option("--rho", sy_rho, "target rotation number p/q")->required();
  synth->add_option("--seed", sy_opts.seed, "search seed");
  synth->add_option("--budget", sy_opts.search_restarts, "search restarts");
  synth->add_option("--word-length", sy_opts.word_length, "word length k");
  synth->add_option("--tol", sy_opts.tol, "integrator tolerance");
  synth->add_option("--grid", sy_opts.grid, "flow-map grid size");
  synth->add_option("--sigma-max", sy_opts.sigma_max,
                    "cap on the rotation correction");
  synth->add_option("--out", sy_out, "output prefix (.forcing, .report)")
      ->required();

  // ---- word-eval ----
  auto* weval = app.add_subcommand("word-eval",
                                   "evaluate a group word's circle map");
  std::string we_word, we_field, we_csv, we_manifest;
  int we_grid = 1024, we_nmax = 2048, we_qmax = 32;
  double we_tol = 1e-10;
  weval->add_option("word", we_word, "word file")->required();
  weval->add_option("field", we_field, "field file (v)")->required();
  weval->add_option("--grid", we_grid, "map grid size");
  weval->add_option("--tol", we_tol, "integrator tolerance");
  weval->add_option("--nmax", we_nmax, "rotation iteration cap");
  weval->add_option("--qmax", we_qmax, "rational detection denominator cap");
  weval->add_option("--csv", we_csv, "dump the lifted map as CSV");
  weval->add_option("--manifest", we_manifest, "manifest output path");

  // ---- word-search ----
  auto* wsearch = app.add_subcommand(
      "word-search", "search for a hyperbolic positive-class word");
  std::string ws_field, ws_rho, ws_out;
  tf::WordSearchOptions ws_opts;
  wsearch->add_option("field", ws_field)->required();
  wsearch->add_option("--rho", ws_rho, "target rotation number p/q")
      ->required();
  wsearch->add_option("--seed", ws_opts.seed, "search seed");
  wsearch->add_option("--budget", ws_opts.restarts, "search restarts");
  wsearch->add_option("--word-length", ws_opts.word_length, "word length k");
  wsearch->add_option("--out", ws_out, "word output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;  // 0 is --help
  }

  if (rotnum->parsed()) {
    ManifestWriter mw("rotnum");
    mw.path = rn_manifest;
    const tf::TrigPoly v = tf::load_field(rn_field);
    const tf::TrigPoly f = tf::load_field(rn_forcing);
    mw.m.set("field", rn_field);
    mw.m.set("forcing", rn_forcing);
    mw.m.set("A", rn_A);
    mw.m.set("B", rn_B);
    mw.m.set("periods", rn_periods);
    mw.m.set("tol", rn_tol);
    mw.m.set("qmax", rn_qmax);
    const auto est = tf::rotation_number_ode(tf::TorusODE{v, rn_A, rn_B, f},
                                             rn_periods, rn_tol);
    std::printf("rho %.12g +- %.3g (%d periods)\n", est.value,
                est.error_bound, est.iterations);
    if (auto r = tf::detect_rational(est, rn_qmax))
      std::printf("rational %ld/%ld\n", r->first, r->second);
    mw.finish();
    return exit_ok;
  }

  if (scan->parsed()) {
    ManifestWriter mw("scan");
    mw.path = sc_out + ".manifest";
    const tf::TrigPoly v = tf::load_field(sc_field);
    const tf::TrigPoly f = tf::load_field(sc_forcing);
    mw.m.set("field", sc_field);
    mw.m.set("forcing", sc_forcing);
    sc.record(mw.m);
    mw.m.set("out", sc_out);
    auto diagram = tf::scan_diagram(v, f, {sc.A_min, sc.A_max}, sc.B_values,
                                    sc.qmax, sc.options());
    tf::atomic_write(sc_out, tf::format_csv(diagram));
    if (!sc_svg.empty()) tf::atomic_write(sc_svg, tf::format_svg(diagram));
    std::printf("wrote %zu slices to %s\n", diagram.slices.size(),
                sc_out.c_str());
    mw.finish();
    return exit_ok;
  }

  if (quant->parsed()) {
    ManifestWriter mw("quantize-check");
    if (!qc_out.empty()) mw.path = qc_out + ".manifest";
    const tf::TrigPoly v = tf::load_field(qc_field);
    const tf::TrigPoly f = tf::load_field(qc_forcing);
    mw.m.set("field", qc_field);
    mw.m.set("forcing", qc_forcing);
    qc.record(mw.m);
    mw.m.set("width_floor", qc_floor);
    auto report = tf::quantization_check(v, f, {qc.A_min, qc.A_max},
                                         qc.B_values, qc.qmax, qc.options(),
                                         qc_floor);
    if (!qc_out.empty())
      tf::atomic_write(qc_out, tf::format_csv(report.diagram));
    if (!report.applicable) {
      std::printf("N/A: field is not of special form; check is vacuous\n");
      mw.finish();
      return exit_ok;
    }
    const std::string m_str =
        report.m ? std::to_string(*report.m) : std::string("-");
    if (report.pass) {
      std::printf("PASS m=%s: every slice wider than %g locks at a multiple "
                  "of 1/m\n", m_str.c_str(), qc_floor);
      mw.finish();
      return exit_ok;
    }
    std::printf("FAIL m=%s: %zu violating slice(s)\n", m_str.c_str(),
                report.violations.size());
    for (const auto& s : report.violations)
      std::printf("  rho=%ld/%ld B=%g width=%g\n", s.rho.p, s.rho.q, s.B,
                  s.width());
    mw.finish();
    return 1;
  }

  if (synth->parsed()) {
    ManifestWriter mw("synth");
    mw.path = sy_out + ".manifest";
    const tf::TrigPoly v = tf::load_field(sy_field);
    const tf::Rational rho = parse_rho(sy_rho);
    mw.m.set("field", sy_field);
    mw.m.set("rho", sy_rho);
    mw.m.set("seed", sy_opts.seed);
    mw.m.set("budget", sy_opts.search_restarts);
    mw.m.set("word_length", sy_opts.word_length);
    mw.m.set("tol", sy_opts.tol);
    mw.m.set("grid", sy_opts.grid);
    mw.m.set("out", sy_out);
    auto [f, report] = tf::synthesize_forcing(v, rho.p, rho.q, sy_opts);
    tf::atomic_write(sy_out + ".report", tf::format_synthesis_report(report));
    if (f) tf::atomic_write(sy_out + ".forcing", tf::format_field(*f));
    mw.finish();
    if (!report.success) {
      std::printf("synthesis failed at stage '%s': %s\n",
                  report.stage.c_str(), report.diagnostics.c_str());
      return exit_not_found;
    }
    std::printf("synthesized degree-%d forcing for rho=%ld/%ld "
                "(multiplier %.6g at x0=%.6g); wrote %s.forcing\n",
                report.degree, report.p, report.q, report.multiplier,
                report.witness_x0, sy_out.c_str());
    return exit_ok;
  }

  if (weval->parsed()) {
    ManifestWriter mw("word-eval");
    mw.path = we_manifest;
    const tf::GroupWord w = tf::load_word(we_word);
    const tf::TrigPoly v = tf::load_field(we_field);
    mw.m.set("word", we_word);
    mw.m.set("field", we_field);
    mw.m.set("grid", we_grid);
    mw.m.set("tol", we_tol);
    mw.m.set("nmax", we_nmax);
    const tf::LiftedMap g = tf::eval_word(w, v, we_grid, we_tol);
    if (!we_csv.empty()) tf::atomic_write(we_csv, tf::format_map_csv(g));
    const auto est = tf::rotation_number_map(g, we_nmax);
    std::printf("rho %.12g +- %.3g (%d iterations)\n", est.value,
                est.error_bound, est.iterations);
    if (auto r = tf::detect_rational(est, we_qmax))
      std::printf("rational %ld/%ld\n", r->first, r->second);
    auto level = w.level(1e-9);
    std::printf("level %s, positive-class %s\n",
                level ? std::to_string(*level).c_str() : "none",
                w.in_positive_class(1e-9) ? "yes" : "no");
    mw.finish();
    return exit_ok;
  }

  if (wsearch->parsed()) {
    ManifestWriter mw("word-search");
    mw.path = ws_out + ".manifest";
    const tf::TrigPoly v = tf::load_field(ws_field);
    const tf::Rational rho = parse_rho(ws_rho);
    mw.m.set("field", ws_field);
    mw.m.set("rho", ws_rho);
    mw.m.set("seed", ws_opts.seed);
    mw.m.set("budget", ws_opts.restarts);
    mw.m.set("word_length", ws_opts.word_length);
    mw.m.set("out", ws_out);
    auto result = tf::search_hyperbolic_word(v, rho.p, rho.q, ws_opts);
    mw.finish();
    if (!result.word) {
      std::printf("not found within %d restarts\n", result.restarts_used);
      return exit_not_found;
    }
    tf::atomic_write(ws_out, tf::format_word(*result.word));
    std::printf("found word (k=%d) after %d restart(s): multiplier %.6g at "
                "x0=%.6g; wrote %s\n", result.word->length(),
                result.restarts_used, result.orbit->multiplier,
                result.orbit->x0, ws_out.c_str());
    return exit_ok;
  }

  return exit_usage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const tf::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_usage;
  } catch (const tf::PreconditionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_usage;
  } catch (const tf::NumericsError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return exit_numerics;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_numerics;
  }
}
