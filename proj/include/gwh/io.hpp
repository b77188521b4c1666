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
/// \file io.hpp
///
/// JSON and CSV encodings.
///
///   group    {"moduli": [n_1, ..., n_d]}
///   lattice  [[r_1, ..., r_d], ...]            generator residues
///   signal   [[re, im], ...]                   enumeration order
///   window   {"kind": "box", "support": [[b, e], ...]}
///            {"kind": "gaussian", "width": [w, ...]}
///            {"kind": "samples", "values": <signal>}
///   torus    {"N": [...], "M": [...], "L": [...], "window": <window>}
///
/// Doubles in JSON use the shortest representation that round-trips; CSV
/// fields use 17 significant digits.
///
#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "gwh/gabor.hpp"
#include "gwh/heisenberg.hpp"
#include "gwh/torus.hpp"

namespace gwh {

using json = nlohmann::json;

inline constexpr const char* schema_version = "1";

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

template <class T>
T get_field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError("missing field '" + path + "'", path);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError("field '" + path + "' has the wrong type: " + e.what(), path);
  }
}

}  // namespace detail

inline json group_to_json(const FiniteLcaGroup& g) { return {{"moduli", g.moduli()}}; }

inline FiniteLcaGroup group_from_json(const json& j, const std::string& path = "group") {
  return make_group(detail::get_field<std::vector<std::int64_t>>(j, "moduli", path + ".moduli"));
}

inline json lattice_to_json(const Lattice& k) { return k.generator_residues(); }

inline std::vector<GroupElement> elements_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError("field '" + path + "' must be a list of elements", path);
  std::vector<GroupElement> out;
  try {
    for (const auto& e : j) out.push_back({e.get<std::vector<std::int64_t>>()});
  } catch (const json::exception&) {
    throw ValidationError("field '" + path + "' must contain integer residue lists", path);
  }
  return out;
}

inline Lattice lattice_from_json(const FiniteLcaGroup& g, const json& j, const std::string& path) {
  const auto gens = elements_from_json(j, path);
  try {
    return subgroup_closure(g, std::span<const GroupElement>(gens));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(e.what()) + " in '" + path + "'", path);
  }
}

inline json signal_values_to_json(const std::vector<cplx>& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back({c.real(), c.imag()});
  return a;
}

inline json signal_to_json(const Signal& s) { return signal_values_to_json(s.values); }

inline std::vector<cplx> values_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError("field '" + path + "' must be an array", path);
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (e.is_number()) {
      out.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      out.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      throw ValidationError("field '" + path + "' entries must be numbers or [re, im] pairs", path);
    }
  }
  return out;
}

inline Signal signal_from_json(const FiniteLcaGroup& g, const json& j, const std::string& path) {
  auto v = values_from_json(j, path);
  if (v.size() != g.order())
    throw ValidationError("field '" + path + "' has " + std::to_string(v.size()) +
                              " samples, expected |G| = " + std::to_string(g.order()), path);
  return Signal(g, std::move(v));
}

inline json window_spec_to_json(const WindowSpec& w) {
  json j{{"kind", to_string(w.kind)}};
  switch (w.kind) {
    case WindowSpec::Kind::box: {
      json s = json::array();
      for (auto [b, e] : w.support) s.push_back({b, e});
      j["support"] = s;
      break;
    }
    case WindowSpec::Kind::gaussian: j["width"] = w.width; break;
    case WindowSpec::Kind::samples: j["values"] = signal_values_to_json(w.samples); break;
  }
  return j;
}

inline WindowSpec window_spec_from_json(const json& j, const std::string& path = "window") {
  if (!j.is_object()) throw ValidationError("field '" + path + "' must be an object", path);
  const auto kind = detail::get_field<std::string>(j, "kind", path + ".kind");
  WindowSpec w;
  if (kind == "box") {
    w.kind = WindowSpec::Kind::box;
    const auto sup = detail::get_field<std::vector<std::vector<std::int64_t>>>(j, "support", path + ".support");
    for (const auto& iv : sup) {
      if (iv.size() != 2) throw ValidationError("support intervals are [begin, end)", path + ".support");
      w.support.emplace_back(iv[0], iv[1]);
    }
  } else if (kind == "gaussian") {
    w.kind = WindowSpec::Kind::gaussian;
    w.width = detail::get_field<std::vector<double>>(j, "width", path + ".width");
  } else if (kind == "samples") {
    w.kind = WindowSpec::Kind::samples;
    if (!j.contains("values")) throw ValidationError("missing field '" + path + ".values'", path + ".values");
    w.samples = values_from_json(j.at("values"), path + ".values");
  } else {
    throw ValidationError("unknown window kind '" + kind + "'", path + ".kind");
  }
  return w;
}

inline json torus_spec_to_json(const TorusSpec& t) {
  return {{"N", t.N}, {"M", t.M}, {"L", t.L}, {"window", window_spec_to_json(t.window)}};
}

inline TorusSpec torus_spec_from_json(const json& j, const std::string& path = "torus") {
  TorusSpec t;
  t.N = detail::get_field<std::vector<std::int64_t>>(j, "N", path + ".N");
  t.M = detail::get_field<std::vector<std::int64_t>>(j, "M", path + ".M");
  t.L = detail::get_field<std::vector<std::int64_t>>(j, "L", path + ".L");
  if (!j.contains("window")) throw ValidationError("missing field 'window'", "window");
  t.window = window_spec_from_json(j.at("window"), "window");
  return t;
}

inline json phase_to_json(const Phase& p) {
  if (auto t = p.turns()) return {{"turns", {t->first, t->second}}};
  return {{"re", p.value().real()}, {"im", p.value().imag()}};
}

inline json heisenberg_to_json(const HeisenbergElement& h) {
  return {{"x", h.group.residues_of(h.x)},
          {"gamma", h.group.residues_of(h.gamma)},
          {"z", phase_to_json(h.z)}};
}

inline HeisenbergElement heisenberg_from_json(const FiniteLcaGroup& g, const json& j) {
  HeisenbergElement h{g, g.index_of(detail::get_field<std::vector<std::int64_t>>(j, "x", "x")),
                      g.index_of(detail::get_field<std::vector<std::int64_t>>(j, "gamma", "gamma")),
                      Phase{}};
  const json& z = j.at("z");
  if (z.contains("turns")) {
    const auto t = z.at("turns").get<std::vector<std::int64_t>>();
    h.z = Phase::from_turns(t.at(0), t.at(1));
  } else {
    h.z = Phase::from_complex({z.at("re").get<double>(), z.at("im").get<double>()});
  }
  return h;
}

inline json report_to_json(const FrameReport& r) {
  return {{"exactLower", r.exact_lower},
          {"exactUpper", r.exact_upper},
          {"th4Lower", r.th4_lower},
          {"th4Upper", r.th4_upper},
          {"isFrame", r.is_frame},
          {"isTight", r.is_tight},
          {"isRiesz", r.is_riesz},
          {"isComplete", r.is_complete},
          {"densityRatio", {{"num", r.density_ratio.num}, {"den", r.density_ratio.den}}},
          {"densityVerdict", to_string(r.verdict())},
          {"vectorCount", r.vector_count},
          {"groupOrder", r.group_order},
          {"tolerance", r.tolerance}};
}

inline FrameReport report_from_json(const json& j) {
  FrameReport r;
  const std::string p = "frameReport";
  r.exact_lower = detail::get_field<double>(j, "exactLower", p + ".exactLower");
  r.exact_upper = detail::get_field<double>(j, "exactUpper", p + ".exactUpper");
  r.th4_lower = detail::get_field<double>(j, "th4Lower", p + ".th4Lower");
  r.th4_upper = detail::get_field<double>(j, "th4Upper", p + ".th4Upper");
  r.is_frame = detail::get_field<bool>(j, "isFrame", p + ".isFrame");
  r.is_tight = detail::get_field<bool>(j, "isTight", p + ".isTight");
  r.is_riesz = detail::get_field<bool>(j, "isRiesz", p + ".isRiesz");
  r.is_complete = detail::get_field<bool>(j, "isComplete", p + ".isComplete");
  const json& d = j.at("densityRatio");
  r.density_ratio = {d.at("num").get<std::int64_t>(), d.at("den").get<std::int64_t>()};
  r.vector_count = detail::get_field<std::size_t>(j, "vectorCount", p + ".vectorCount");
  r.group_order = detail::get_field<std::size_t>(j, "groupOrder", p + ".groupOrder");
  r.tolerance = detail::get_field<double>(j, "tolerance", p + ".tolerance");
  return r;
}

/// Recomputes the classification flags of a (possibly re-ingested) report from
/// its bounds, counts and tolerance alone.
inline FrameReport reclassify(FrameReport r) {
  r.is_frame = r.exact_lower > r.tolerance * r.exact_upper;
  r.is_complete = r.is_frame;
  r.is_tight = r.is_frame && (r.exact_upper - r.exact_lower) <= r.tolerance * r.exact_upper;
  r.is_riesz = r.is_frame && r.vector_count == r.group_order;
  return r;
}

}  // namespace gwh
