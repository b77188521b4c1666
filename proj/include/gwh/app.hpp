// Copyright 2026 The gwh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

///
/// \file app.hpp
///
/// The command layer behind the `gwh` binary: configuration parsing and the
/// analyze / sweep / dual / verify-dual / sis-check commands. Commands return
/// documents and strings; the binary only does file I/O and exit codes.
///
#pragma once

#include <atomic>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gwh/gabor.hpp"
#include "gwh/io.hpp"
#include "gwh/sis.hpp"
#include "gwh/torus.hpp"

namespace gwh::app {

enum ExitCode : int {
  exit_ok = 0,
  exit_check_failed = 1,
  exit_validation = 2,
  exit_internal = 3,
  exit_not_a_frame = 4,
};

inline const std::set<std::string>& known_analyses() {
  static const std::set<std::string> names{"bounds", "th4", "classify", "dual",
                                           "sis-fibers", "commutation", "wh-identity"};
  return names;
}

struct GroupModeSpec {
  FiniteLcaGroup group;
  std::vector<GroupElement> k1;
  std::vector<GroupElement> k2;
  WindowSpec window;
};

struct AnalysisConfig {
  std::optional<GroupModeSpec> group_mode;
  std::optional<TorusSpec> torus;
  std::set<std::string> analyses{"bounds", "th4", "classify"};
  double tolerance = default_tolerance;
  unsigned jobs = 1;
};

inline AnalysisConfig parse_analysis_config(const json& j) {
  if (!j.is_object()) throw ValidationError("configuration must be a JSON object", "config");
  AnalysisConfig c;
  const bool has_group = j.contains("group");
  const bool has_torus = j.contains("torus");
  if (has_group == has_torus)
    throw ValidationError("configuration needs exactly one of 'group' or 'torus'", "group");
  if (has_torus) {
    json t = j.at("torus");
    if (!t.contains("window") && j.contains("window")) t["window"] = j.at("window");
    c.torus = torus_spec_from_json(t);
    validate_torus_spec(*c.torus);
  } else {
    GroupModeSpec g;
    g.group = group_from_json(j.at("group"));
    if (!j.contains("k1")) throw ValidationError("missing field 'k1'", "k1");
    if (!j.contains("k2")) throw ValidationError("missing field 'k2'", "k2");
    g.k1 = elements_from_json(j.at("k1"), "k1");
    g.k2 = elements_from_json(j.at("k2"), "k2");
    if (!j.contains("window")) throw ValidationError("missing field 'window'", "window");
    g.window = window_spec_from_json(j.at("window"));
    c.group_mode = std::move(g);
  }
  if (j.contains("analyses")) {
    const auto list = gwh::detail::get_field<std::vector<std::string>>(j, "analyses", "analyses");
    if (list.empty()) throw ValidationError("field 'analyses' must not be empty", "analyses");
    c.analyses.clear();
    for (const auto& a : list) {
      if (!known_analyses().count(a)) throw ValidationError("unknown analysis '" + a + "'", "analyses");
      c.analyses.insert(a);
    }
  }
  if (j.contains("tolerance")) c.tolerance = gwh::detail::get_field<double>(j, "tolerance", "tolerance");
  if (!(c.tolerance > 0)) throw ValidationError("tolerance must be positive", "tolerance");
  return c;
}

inline GaborSystem build_system(const AnalysisConfig& c) {
  if (c.torus) return build_torus_gabor(*c.torus);
  const auto& g = *c.group_mode;
  const Lattice k1 = subgroup_closure(g.group, std::span<const GroupElement>(g.k1));
  const Lattice k2 = subgroup_closure(g.group, std::span<const GroupElement>(g.k2));
  return build_gabor_system(k1, k2, make_window(g.window, g.group));
}

inline json fibers_to_json(const SISystem& s) {
  json out = json::array();
  for (Index xi : s.dual_coset_reps)
    out.push_back({{"xi", s.group.residues_of(xi)}, {"singularValues", fiber_singular_values(s, xi)}});
  return out;
}

inline json cmd_analyze(const AnalysisConfig& c) {
  const GaborSystem sys = build_system(c);
  const FrameReport r = classify(sys, c.tolerance, c.jobs);
  json out{{"schema", schema_version},
           {"mode", c.torus ? "torus" : "group"},
           {"group", group_to_json(sys.group)},
           {"k1", lattice_to_json(sys.k1)},
           {"k2", lattice_to_json(sys.k2)},
           {"annK2", lattice_to_json(sys.ann_k2)},
           {"vectorCount", sys.size()},
           {"densityRatio", {{"num", r.density_ratio.num}, {"den", r.density_ratio.den}}},
           {"densityVerdict", to_string(r.verdict())},
           {"frameReport", report_to_json(r)},
           {"th4", {{"lower", r.th4_lower}, {"upper", r.th4_upper}}}};
  if (c.torus) {
    out["torus"] = torus_spec_to_json(*c.torus);
    out["th5Verdict"] = to_string(th5_density_verdict(c.torus->N, c.torus->M));
  }
  if (c.analyses.count("dual")) {
    if (r.is_frame) out["dualWindow"] = signal_to_json(canonical_dual_window(sys, c.tolerance));
    else out["dualError"] = density_diagnosis(sys, r);
  }
  if (c.analyses.count("sis-fibers")) {
    const SISystem s = gabor_as_sis(sys);
    const auto fb = fiber_frame_bounds(s, c.jobs);
    out["sisFibers"] = {{"lower", fb.lower}, {"upper", fb.upper}, {"fibers", fibers_to_json(s)}};
  }
  if (c.analyses.count("commutation")) out["commutationResidual"] = frame_op_commutation_residual(sys);
  if (c.analyses.count("wh-identity")) {
    std::mt19937_64 rng(0x5eedu);
    const Signal f = random_signal(sys.group, rng);
    out["whIdentityResidual"] = wh_identity_residual(sys, f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepPoint {
  std::vector<std::int64_t> N, M, L;
  std::optional<double> gaussian_width;
};

inline constexpr std::size_t default_sweep_cap = 10000;

inline const char* sweep_header =
    "N,M,L,window,densityRatio,verdict,status,exactLower,exactUpper,th4Lower,th4Upper,"
    "isFrame,isTight,isRiesz";

namespace detail {

inline std::string join_ints(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

inline std::vector<std::vector<std::int64_t>> expand_ranges(const json& ranges, const char* key,
                                                            const std::vector<std::int64_t>& base) {
  std::vector<std::pair<std::int64_t, std::int64_t>> iv;
  if (ranges.contains(key)) {
    const auto r = gwh::detail::get_field<std::vector<std::vector<std::int64_t>>>(ranges, key, std::string("ranges.") + key);
    if (r.size() != base.size())
      throw ValidationError(std::string("ranges.") + key + " needs one [lo, hi] per dimension",
                            std::string("ranges.") + key);
    for (const auto& p : r) {
      if (p.size() != 2) throw ValidationError("ranges are [lo, hi]", std::string("ranges.") + key);
      iv.emplace_back(p[0], p[1]);
    }
  } else {
    for (auto b : base) iv.emplace_back(b, b);
  }
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& [lo, hi] : iv)
    if (lo > hi) return out;  // empty range
  std::vector<std::int64_t> cur;
  for (const auto& p : iv) cur.push_back(p.first);
  while (true) {
    out.push_back(cur);
    std::size_t j = iv.size();
    while (j > 0) {
      --j;
      if (++cur[j] <= iv[j].second) break;
      cur[j] = iv[j].first;
      if (j == 0) return out;
    }
  }
}

inline std::string sweep_row(const TorusSpec& base, const SweepPoint& p, double tol) {
  TorusSpec s = base;
  s.N = p.N;
  s.M = p.M;
  s.L = p.L;
  std::string window = to_string(s.window.kind);
  if (p.gaussian_width) {
    s.window.kind = WindowSpec::Kind::gaussian;
    s.window.width.assign(s.L.size(), *p.gaussian_width);
    window = "gaussian(w=" + format_double(*p.gaussian_width) + ")";
  }
  std::ostringstream row;
  row << join_ints(p.N) << ',' << join_ints(p.M) << ',' << join_ints(p.L) << ',' << window << ',';
  std::int64_t pn = 1, pm = 1;
  for (auto v : p.N) pn *= v;
  for (auto v : p.M) pm *= v;
  const Ratio ratio = Ratio::of(pm, pn);
  row << ratio.num << '/' << ratio.den << ',' << to_string(th5_density_verdict(p.N, p.M)) << ',';
  if (!is_commensurate(s)) {
    row << "incommensurate,,,,,,,";
    return row.str();
  }
  GaborSystem sys;
  try {
    sys = build_torus_gabor(s);
  } catch (const ValidationError&) {
    row << "invalid-window,,,,,,,";
    return row.str();
  }
  const FrameReport r = classify(sys, tol);
  if (!(r.density_ratio == ratio))
    throw TheoremViolation("grid density ratio differs from prod M / prod N");
  row << "ok," << format_double(r.exact_lower) << ',' << format_double(r.exact_upper) << ','
      << format_double(r.th4_lower) << ',' << format_double(r.th4_upper) << ','
      << (r.is_frame ? "true" : "false") << ',' << (r.is_tight ? "true" : "false") << ','
      << (r.is_riesz ? "true" : "false");
  return row.str();
}

}  // namespace detail

/// One CSV row per point of the range grid, in lexicographic order over
/// (N, M, L, gaussian width). Rows are computed by `jobs` workers and emitted
/// in grid order, so output does not depend on the worker count.
inline std::string cmd_sweep(const json& config, unsigned jobs, double tol,
                             std::size_t cap = default_sweep_cap) {
  if (!config.is_object() || !config.contains("torus"))
    throw ValidationError("sweep needs a 'torus' base configuration", "torus");
  json t = config.at("torus");
  if (!t.contains("window") && config.contains("window")) t["window"] = config.at("window");
  const TorusSpec base = torus_spec_from_json(t);
  if (base.N.size() != base.L.size() || base.M.size() != base.L.size())
    throw ValidationError("N, M and L must have equal length", "torus");
  const json ranges = config.value("ranges", json::object());
  if (config.contains("maxPoints")) cap = gwh::detail::get_field<std::size_t>(config, "maxPoints", "maxPoints");

  const auto ns = detail::expand_ranges(ranges, "N", base.N);
  const auto ms = detail::expand_ranges(ranges, "M", base.M);
  const auto ls = detail::expand_ranges(ranges, "L", base.L);
  std::vector<std::optional<double>> widths{std::nullopt};
  if (ranges.contains("gaussianWidth")) {
    widths.clear();
    for (double w : gwh::detail::get_field<std::vector<double>>(ranges, "gaussianWidth", "ranges.gaussianWidth"))
      widths.emplace_back(w);
  }
  const std::size_t total = ns.size() * ms.size() * ls.size() * widths.size();
  if (total > cap)
    throw ValidationError("sweep has " + std::to_string(total) + " points, cap is " + std::to_string(cap),
                          "ranges");
  std::vector<SweepPoint> points;
  points.reserve(total);
  for (const auto& n : ns)
    for (const auto& m : ms)
      for (const auto& l : ls)
        for (const auto& w : widths) points.push_back({n, m, l, w});

  std::vector<std::string> rows(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        rows[i] = detail::sweep_row(base, points[i], tol);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::string out = std::string(sweep_header) + "\n";
  for (const auto& r : rows) out += r + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Duals

/// Canonical dual window document. Throws NotAFrame with a density diagnosis.
inline json cmd_dual(const AnalysisConfig& c) {
  const GaborSystem sys = build_system(c);
  const Signal dual = canonical_dual_window(sys, c.tolerance);
  return {{"schema", schema_version}, {"group", group_to_json(sys.group)}, {"window", signal_to_json(dual)}};
}

inline json cmd_verify_dual(const AnalysisConfig& c, const json& dual_doc) {
  const GaborSystem sys = build_system(c);
  if (!dual_doc.contains("window")) throw ValidationError("dual file lacks 'window'", "window");
  const Signal dual = signal_from_json(sys.group, dual_doc.at("window"), "window");
  const GaborSystem dsys = build_gabor_system(sys.k1, sys.k2, dual);
  const DualityResult r = duality_check(gabor_as_sis(sys), gabor_as_sis(dsys), c.tolerance);
  return {{"schema", schema_version},
          {"dual", r.dual},
          {"conditionResidual", r.condition_residual},
          {"reconstructionResidual", r.reconstruction_residual}};
}

// ---------------------------------------------------------------------------
// Shift-invariant systems

struct SisConfig {
  SISystem system;
  std::optional<SISystem> dual;
  double tolerance = default_tolerance;
};

inline SisConfig parse_sis_config(const json& j) {
  SisConfig out;
  if (j.contains("tolerance")) out.tolerance = gwh::detail::get_field<double>(j, "tolerance", "tolerance");
  if (j.contains("generators")) {
    const FiniteLcaGroup g = group_from_json(j.contains("group") ? j.at("group") : json::object());
    if (!j.contains("k1")) throw ValidationError("missing field 'k1'", "k1");
    const Lattice k1 = lattice_from_json(g, j.at("k1"), "k1");
    auto read = [&](const char* key) {
      const json& list = j.at(key);
      if (!list.is_array() || list.empty())
        throw ValidationError(std::string("field '") + key + "' must be a nonempty list", key);
      std::vector<Signal> gens;
      for (std::size_t i = 0; i < list.size(); ++i)
        gens.push_back(make_window(window_spec_from_json(list[i], std::string(key) + "[" + std::to_string(i) + "]"), g));
      return gens;
    };
    out.system = build_sis(k1, read("generators"));
    if (j.contains("dualGenerators")) out.dual = build_sis(k1, read("dualGenerators"));
  } else {
    json copy = j;
    if (!copy.contains("analyses")) copy["analyses"] = {"bounds"};
    const AnalysisConfig c = parse_analysis_config(copy);
    out.tolerance = c.tolerance;
    out.system = gabor_as_sis(build_system(c));
  }
  return out;
}

inline json cmd_sis_check(const SisConfig& c, unsigned jobs = 1) {
  const SISystem& s = c.system;
  const auto fb = fiber_frame_bounds(s, jobs);
  json out{{"schema", schema_version},
           {"group", group_to_json(s.group)},
           {"k1", lattice_to_json(s.k1)},
           {"generatorCount", s.generators.size()},
           {"vectorCount", s.size()},
           {"fiberLower", fb.lower},
           {"fiberUpper", fb.upper},
           {"isFrame", fb.lower > c.tolerance * fb.upper}};
  if (s.group.order() <= dense_limit) {
    const auto ev = hermitian_eigenvalues(sis_frame_operator(s));
    const double lo = std::max(ev(0), 0.0), hi = ev(ev.size() - 1);
    out["exactLower"] = lo;
    out["exactUpper"] = hi;
    const double scale = std::max(hi, 1e-300);
    if (std::abs(lo - fb.lower) > 1e-8 * scale || std::abs(hi - fb.upper) > 1e-8 * scale)
      throw TheoremViolation("fiber bounds disagree with the frame operator spectrum");
  }
  const auto c_tight = tight_check(s, c.tolerance);
  out["tightConstant"] = c_tight ? json(*c_tight) : json(nullptr);
  if (c.dual) {
    const auto r = duality_check(s, *c.dual, c.tolerance);
    out["duality"] = {{"dual", r.dual},
                      {"conditionResidual", r.condition_residual},
                      {"reconstructionResidual", r.reconstruction_residual}};
  }
  out["fibers"] = fibers_to_json(s);
  return out;
}

/// Per-fiber singular values as CSV rows "xi,index,singularValue".
inline std::string sis_fibers_csv(const SISystem& s) {
  std::string out = "xi,index,singularValue\n";
  for (Index xi : s.dual_coset_reps) {
    const auto sv = fiber_singular_values(s, xi);
    for (std::size_t i = 0; i < sv.size(); ++i)
      out += detail::join_ints(s.group.residues_of(xi)) + "," + std::to_string(i) + "," +
             format_double(sv[i]) + "\n";
  }
  return out;
}

}  // namespace gwh::app
