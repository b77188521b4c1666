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

// gwh: analyze generalized Gabor and shift-invariant systems on finite
// abelian groups.
//
//   gwh analyze     --config cfg.json [--out report.json]
//   gwh sweep       --config sweep.json [--jobs 8] [--format csv|json]
//   gwh dual        --config cfg.json --out dual.json
//   gwh verify-dual --config cfg.json --dual dual.json
//   gwh sis-check   --config sis.json [--format json|csv]
//
// Exit codes: 0 ok, 1 negative check result, 2 invalid input,
// 3 internal consistency violation, 4 not a frame.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "gwh/app.hpp"

namespace {

using gwh::json;
using namespace gwh::app;

struct Options {
  std::string config;
  std::string out;
  std::string format;
  std::string dual;
  unsigned jobs = 1;
  double tolerance = gwh::default_tolerance;
  bool tolerance_set = false;
};

json read_json_file(const std::string& path, const char* field) {
  std::ifstream in(path);
  if (!in) throw gwh::ValidationError("cannot open '" + path + "'", field);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw gwh::ValidationError("'" + path + "' is not valid JSON: " + e.what(), field);
  }
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw gwh::ValidationError("cannot write '" + o.out + "'", "out");
  f << text;
}

AnalysisConfig load_analysis(const Options& o) {
  json j = read_json_file(o.config, "config");
  if (o.tolerance_set) j["tolerance"] = o.tolerance;
  AnalysisConfig c = parse_analysis_config(j);
  c.jobs = o.jobs;
  return c;
}

std::string csv_from_rows(const std::string& csv) { return csv; }

json csv_to_json(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    for (std::string cell; std::getline(h, cell, ',');) header.push_back(cell);
  }
  json rows = json::array();
  while (std::getline(in, line)) {
    json row = json::object();
    std::istringstream r(line);
    std::size_t i = 0;
    for (std::string cell; i < header.size(); ++i) {
      if (!std::getline(r, cell, ',')) cell.clear();
      row[header[i]] = cell;
    }
    rows.push_back(row);
  }
  return {{"schema", gwh::schema_version}, {"rows", rows}};
}

int run(const std::string& cmd, const Options& o) {
  if (cmd == "analyze") {
    emit(o, cmd_analyze(load_analysis(o)).dump(2) + "\n");
    return exit_ok;
  }
  if (cmd == "sweep") {
    const json j = read_json_file(o.config, "config");
    const double tol = o.tolerance_set ? o.tolerance : j.value("tolerance", gwh::default_tolerance);
    const std::string csv = cmd_sweep(j, o.jobs, tol);
    emit(o, o.format == "json" ? csv_to_json(csv).dump(2) + "\n" : csv_from_rows(csv));
    return exit_ok;
  }
  if (cmd == "dual") {
    emit(o, cmd_dual(load_analysis(o)).dump(2) + "\n");
    return exit_ok;
  }
  if (cmd == "verify-dual") {
    if (o.dual.empty()) throw gwh::ValidationError("verify-dual needs --dual PATH", "dual");
    const json r = cmd_verify_dual(load_analysis(o), read_json_file(o.dual, "dual"));
    emit(o, r.dump(2) + "\n");
    return r.at("dual").get<bool>() ? exit_ok : exit_check_failed;
  }
  if (cmd == "sis-check") {
    json j = read_json_file(o.config, "config");
    if (o.tolerance_set) j["tolerance"] = o.tolerance;
    const SisConfig c = parse_sis_config(j);
    if (o.format == "csv") {
      emit(o, sis_fibers_csv(c.system));
      return exit_ok;
    }
    const json r = cmd_sis_check(c, o.jobs);
    emit(o, r.dump(2) + "\n");
    if (r.contains("duality") && !r["duality"]["dual"].get<bool>()) return exit_check_failed;
    return exit_ok;
  }
  throw gwh::ValidationError("unknown command '" + cmd + "'", "command");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Generalized Gabor frames on finite abelian groups"};
  cli.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "configuration file (JSON)")->required();
    sub->add_option("--out", o.out, "output path (default: stdout)");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_option_function<double>(
        "--tolerance", [&](double t) { o.tolerance = t; o.tolerance_set = true; },
        "relative tolerance for frame decisions (default 1e-9)");
  };
  const std::pair<const char*, const char*> subcommands[] = {
      {"analyze", "frame bounds, classification and optional extra analyses"},
      {"sweep", "CSV or JSON table over a grid of torus parameters"},
      {"dual", "canonical dual window"},
      {"verify-dual", "check a dual window file against a configuration"},
      {"sis-check", "fiber bounds, tightness and duality of a shift-invariant system"},
  };
  for (const auto& [name, help] : subcommands) {
    auto* sub = cli.add_subcommand(name, help);
    add_common(sub);
    if (std::string(name) == "verify-dual") sub->add_option("--dual", o.dual, "dual window file")->required();
  }

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : exit_validation;
  }

  const std::string cmd = cli.get_subcommands().front()->get_name();
  try {
    return run(cmd, o);
  } catch (const gwh::ValidationError& e) {
    std::cerr << "gwh: invalid input";
    if (!e.field().empty()) std::cerr << " [" << e.field() << "]";
    std::cerr << ": " << e.what() << "\n";
    return exit_validation;
  } catch (const gwh::NotAFrame& e) {
    std::cerr << "gwh: " << e.what() << "\n";
    return exit_not_a_frame;
  } catch (const gwh::Error& e) {
    std::cerr << "gwh: internal consistency violation: " << e.what() << "\n";
    return exit_internal;
  } catch (const std::exception& e) {
    std::cerr << "gwh: " << e.what() << "\n";
    return exit_internal;
  }
}
