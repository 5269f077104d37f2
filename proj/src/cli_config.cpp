// Copyright 2026 The LPP Authors.
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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "lpp/cli.hpp"
#include "lpp/continuum.hpp"
#include "lpp/errors.hpp"
#include "lpp/experiments.hpp"
#include "lpp/passage.hpp"
#include "lpp/renewal.hpp"

namespace lpp::cli {
namespace {

enum class Kind { kString, kNumber, kInteger, kBool, kC, kGrid };

struct Key {
  const char* name;  // config-file key; the flag is --name with '_' -> '-'
  Kind kind;
  const char* help;
};

constexpr Key kKeys[] = {
    {"dist", Kind::kString, "weight law, e.g. pareto:s=1.5, exp:rate=1, table:path=f.csv"},
    {"p", Kind::kNumber, "constant edge probability in (0,1]"},
    {"p_table", Kind::kString, "file with per-length probabilities p_1 p_2 ..."},
    {"n", Kind::kInteger, "window size"},
    {"ngrid", Kind::kGrid, "n grid, start:stop:xFACTOR or a comma list"},
    {"trials", Kind::kInteger, "trials per grid point"},
    {"seed", Kind::kInteger, "master seed"},
    {"c", Kind::kC, "renewal threshold, a number or auto"},
    {"horizon", Kind::kInteger, "truncation horizon H (default n/20)"},
    {"k", Kind::kInteger, "continuum truncation level"},
    {"s", Kind::kNumber, "tail index for compare/continuum"},
    {"reference_count", Kind::kInteger, "continuum reference sample size (default trials)"},
    {"i", Kind::kInteger, "passage source"},
    {"j", Kind::kInteger, "passage target"},
    {"input", Kind::kString, "instance JSON to load"},
    {"output", Kind::kString, "artifact path (default stdout)"},
    {"format", Kind::kString, "json or csv"},
    {"workers", Kind::kInteger, "worker threads (LPP_WORKERS overrides)"},
    {"override_gate", Kind::kBool, "run despite a failed moment gate"},
    {"l1_plus", Kind::kBool, "average max(w,0), counting unreachable trials as 0"},
    {"materialize", Kind::kBool, "gen: write the explicit edge list"},
    {"check", Kind::kBool, "renewals: also verify the path decomposition"},
};

constexpr const char* kCommands[] = {"gen",     "passage", "renewals", "slln",
                                     "clt",     "scaling", "compare",  "continuum"};

const Key* find_key(const std::string& name) {
  for (const Key& k : kKeys) {
    if (name == k.name) return &k;
  }
  return nullptr;
}

std::string flag_name(const char* key) {
  std::string f = key;
  std::replace(f.begin(), f.end(), '_', '-');
  return "--" + f;
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw ConfigError("'" + key + "': " + why);
}

double to_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    bad(key, "expected a number, got '" + text + "'");
  }
  if (used != text.size()) bad(key, "expected a number, got '" + text + "'");
  return v;
}

std::int64_t to_integer(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    bad(key, "expected an integer, got '" + text + "'");
  }
  if (used != text.size()) bad(key, "expected an integer, got '" + text + "'");
  return v;
}

// Normalizes a flag or config value to the JSON type the key expects.
Json normalize(const Key& key, const Json& raw) {
  const std::string name = key.name;
  switch (key.kind) {
    case Kind::kString:
      if (!raw.is_string()) bad(name, "expected a string");
      return raw;
    case Kind::kNumber:
      if (raw.is_number()) return raw.get<double>();
      if (raw.is_string()) return to_number(name, raw.get<std::string>());
      bad(name, "expected a number");
    case Kind::kInteger:
      if (raw.is_number_integer()) return raw;
      if (raw.is_string()) return to_integer(name, raw.get<std::string>());
      bad(name, "expected an integer");
    case Kind::kBool:
      if (raw.is_boolean()) return raw;
      bad(name, "expected true or false");
    case Kind::kC:
      if (raw.is_number()) return raw.get<double>();
      if (raw.is_string()) {
        const auto text = raw.get<std::string>();
        if (text == "auto") return text;
        return to_number(name, text);
      }
      bad(name, "expected a number or \"auto\"");
    case Kind::kGrid:
      if (raw.is_string()) return raw;
      if (raw.is_array()) {
        std::string joined;
        for (const auto& v : raw) {
          if (!v.is_number_integer()) bad(name, "grid entries must be integers");
          if (!joined.empty()) joined += ',';
          joined += std::to_string(v.get<std::int64_t>());
        }
        return joined;
      }
      bad(name, "expected a grid string or an integer array");
  }
  bad(name, "unsupported value");
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<double> read_p_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open p table '" + path + "'");
  std::vector<double> out;
  std::string tok;
  std::stringstream all;
  all << in.rdbuf();
  std::string text = all.str();
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream ss(text);
  while (ss >> tok) out.push_back(to_number("p_table", tok));
  if (out.empty()) throw ConfigError("'p_table': file '" + path + "' holds no values");
  return out;
}

PModel make_pmodel(const RunConfig& cfg) {
  if (cfg.p_table) return PModel::per_length(read_p_table(*cfg.p_table));
  return PModel::constant(cfg.p.value_or(1.0));
}

void require(bool ok, const std::string& key, const std::string& command) {
  if (!ok) throw ConfigError("'" + key + "': required by the " + command + " command");
}

void write_artifact(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (!cfg.output) {
    out << text;
    return;
  }
  std::ofstream f(*cfg.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + *cfg.output + "'");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + *cfg.output + "'");
}

Json artifact(const Json& config, Json result) {
  return {{"tool", kToolVersion}, {"config", config}, {"result", std::move(result)}};
}

GraphWindow window_for(const RunConfig& cfg) {
  if (cfg.input) {
    std::ifstream in(*cfg.input);
    if (!in) throw std::runtime_error("cannot open instance '" + *cfg.input + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw std::runtime_error("instance '" + *cfg.input + "' is not valid JSON");
    }
    // Accept a bare instance or a gen artifact.
    if (j.contains("result") && j.contains("tool")) j = j.at("result");
    return window_from_json(j);
  }
  return GraphWindow::generate(*cfg.n, make_pmodel(cfg), WeightDistribution::parse(*cfg.dist_spec),
                               cfg.seed);
}

std::string render_report(const RunConfig& cfg, const ExperimentReport& rep) {
  if (cfg.format == "csv") return to_csv(rep);
  Json config = cfg.to_json();
  if (rep.config.contains("c")) config["c_resolved"] = rep.config.at("c");
  return canonical_dump(artifact(config, to_json(rep)));
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const RunOptions opts{cfg.workers, cfg.override_gate, cfg.l1_plus};
  const std::string& cmd = cfg.command;
  if (cmd == "gen") {
    const GraphWindow w = window_for(cfg);
    write_artifact(cfg, canonical_dump(artifact(cfg.to_json(), window_to_json(w, cfg.materialize))),
                   out);
    err << "lpp gen: n=" << w.n() << (cfg.materialize ? " materialized" : " lazy") << '\n';
    return kOk;
  }
  if (cmd == "passage") {
    const GraphWindow w = window_for(cfg);
    const Vertex i = cfg.i.value_or(0);
    const Vertex j = cfg.j.value_or(w.n());
    const GeodesicReport r = geodesic(w, i, j);
    write_artifact(cfg, canonical_dump(artifact(cfg.to_json(), to_json(r))), out);
    err << "lpp passage: w_{" << i << ',' << j << "} = "
        << (r.value ? std::to_string(*r.value) : std::string("unreachable")) << '\n';
    return kOk;
  }
  if (cmd == "renewals") {
    const GraphWindow w = window_for(cfg);
    const Vertex horizon = cfg.horizon.value_or(std::max<Vertex>(1, w.n() / 20));
    const CRange range = c_range(w);
    const double c = cfg.c.value_or(range.midpoint());
    Json config = cfg.to_json();
    config["c_resolved"] = c;
    config["horizon_resolved"] = horizon;
    const RenewalAnalysis a = detect_renewals(w, c, horizon);
    Json result = {{"analysis", to_json(a)},
                   {"c_range", {{"low", range.low}, {"high", range.high},
                                {"gamma_hat", range.gamma_hat}, {"mode", "basic"}}},
                   {"lambda_hat", renewal_density(a)}};
    if (range.empty()) result["warnings"] = Json::array({"empty c-range (degenerate weight law)"});
    if (a.gamma.size() >= 2) {
      const CycleEstimates e = cycle_estimators(a);
      result["estimators"] = {{"lambda_hat", e.lambda_hat},
                              {"C_cycle", e.C_cycle},
                              {"sigma2_hat", e.sigma2_hat},
                              {"cycles", e.cycles}};
    }
    const MuNuDiagnostics d = mu_nu_diagnostics(w, c, horizon);
    result["mu_nu"] = {{"nu_samples", d.nu_samples.size()},
                       {"nu_censored", d.nu_censored},
                       {"nu_log_survival_slope", d.nu_log_survival_slope},
                       {"nu_log_survival_stderr", d.nu_log_survival_stderr},
                       {"mu_finite", d.mu_samples_finite.size()},
                       {"mu_infinite_fraction", d.mu_infinite_fraction}};
    if (cfg.check) {
      const DecompositionCheck dc = check_decomposition(w, a);
      result["decomposition"] = {{"ok", dc.ok}, {"checked", dc.checked},
                                 {"counterexamples", dc.counterexamples.size()}};
    }
    write_artifact(cfg, canonical_dump(artifact(config, result)), out);
    err << "lpp renewals: c=" << c << " H=" << horizon << " |gamma|=" << a.gamma.size()
        << " |rho|=" << a.rho.size() << " |tau|=" << a.tau.size() << '\n';
    return kOk;
  }
  if (cmd == "continuum") {
    const double s = *cfg.s;
    const ContinuumInstance inst = generate_continuum(s, cfg.k, cfg.seed);
    Json result = {{"instance", to_json(inst)},
                   {"wk", wk(inst, cfg.k)},
                   {"independence_number", independence_number(inst, cfg.k)}};
    if (cfg.k >= 2) result["wk_half"] = wk(inst, cfg.k / 2);
    write_artifact(cfg, canonical_dump(artifact(cfg.to_json(), result)), out);
    err << "lpp continuum: s=" << s << " k=" << cfg.k << " w^k=" << result["wk"].get<double>()
        << '\n';
    return kOk;
  }

  const WeightDistribution dist =
      cfg.dist_spec ? WeightDistribution::parse(*cfg.dist_spec) : WeightDistribution::constant(1.0);
  ExperimentReport rep;
  if (cmd == "slln") {
    rep = run_slln(dist, make_pmodel(cfg), cfg.n_grid, cfg.trials, cfg.seed, opts);
  } else if (cmd == "clt") {
    CltParams params;
    params.n = cfg.n.value_or(params.n);
    params.trials = cfg.trials;
    params.c = cfg.c;
    params.horizon = cfg.horizon;
    rep = run_clt_shape(dist, make_pmodel(cfg), params, cfg.seed, opts);
  } else if (cmd == "scaling") {
    rep = run_scaling(dist, make_pmodel(cfg), cfg.n_grid, cfg.trials, cfg.seed, opts);
  } else {
    const double s = cfg.s ? *cfg.s : dist.tail_index().value_or(0.0);
    rep = run_compare_continuum(s, cfg.p.value_or(1.0), cfg.n_grid, cfg.trials, cfg.k, cfg.seed,
                                opts, cfg.reference_count);
  }
  write_artifact(cfg, render_report(cfg, rep), out);
  std::size_t passed = 0;
  for (const Check& c : rep.checks) passed += c.passed ? 1 : 0;
  err << "lpp " << cmd << ": " << rep.summaries.size() << " summaries, " << passed << '/'
      << rep.checks.size() << " checks passed\n";
  return kOk;
}

}  // namespace

Json RunConfig::to_json() const {
  auto opt = [](const auto& v) { return v ? Json(*v) : Json(nullptr); };
  return {{"command", command},
          {"dist", opt(dist_spec)},
          {"p", opt(p)},
          {"p_table", opt(p_table)},
          {"n", opt(n)},
          {"ngrid", opt(ngrid)},
          {"n_grid", n_grid},
          {"trials", trials},
          {"seed", seed},
          {"c", c ? Json(*c) : Json("auto")},
          {"horizon", opt(horizon)},
          {"k", k},
          {"s", opt(s)},
          {"reference_count", reference_count},
          {"i", opt(i)},
          {"j", opt(j)},
          {"input", opt(input)},
          {"format", format},
          {"override_gate", override_gate},
          {"l1_plus", l1_plus},
          {"materialize", materialize},
          {"check", check}};
}

std::vector<Vertex> parse_ngrid(const std::string& text) {
  std::vector<Vertex> grid;
  if (text.find(':') == std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(to_integer("ngrid", item));
  } else {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3 || parts[2].empty() || parts[2][0] != 'x') {
      bad("ngrid", "expected start:stop:xFACTOR, got '" + text + "'");
    }
    const Vertex start = to_integer("ngrid", parts[0]);
    const Vertex stop = to_integer("ngrid", parts[1]);
    const double factor = to_number("ngrid", parts[2].substr(1));
    if (start < 1 || stop < start) bad("ngrid", "need 1 <= start <= stop");
    if (!(factor > 1.0)) bad("ngrid", "factor must exceed 1");
    for (int m = 0;; ++m) {
      const double raw = static_cast<double>(start) * std::pow(factor, m);
      if (raw > static_cast<double>(stop) * (1.0 + 1e-9)) break;
      const auto v = static_cast<Vertex>(std::llround(raw));
      if (grid.empty() || v != grid.back()) grid.push_back(v);
    }
  }
  if (grid.empty()) bad("ngrid", "empty grid");
  for (Vertex v : grid) {
    if (v < 1) bad("ngrid", "grid values must be >= 1");
  }
  return grid;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Directed last-passage percolation simulator", "lpp"};
  app.set_help_flag("-h,--help", "print this help");
  std::string command;
  std::string config_path;
  app.add_option("command", command, "gen | passage | renewals | slln | clt | scaling | compare | continuum");
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  std::map<std::string, std::string> text_values;
  std::map<std::string, bool> bool_values;
  std::map<std::string, CLI::Option*> options;
  for (const Key& k : kKeys) {
    if (k.kind == Kind::kBool) {
      options[k.name] = app.add_flag(flag_name(k.name), bool_values[k.name], k.help);
    } else {
      options[k.name] = app.add_option(flag_name(k.name), text_values[k.name], k.help);
    }
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  Json merged = Json::object();
  if (!config_path.empty()) {
    const Json file = load_json_file(config_path);
    if (!file.is_object()) throw ConfigError("config file must hold a JSON object");
    for (const auto& [key, value] : file.items()) {
      if (key == "command") {
        if (!value.is_string()) bad(key, "expected a string");
        merged[key] = value;
        continue;
      }
      const Key* k = find_key(key);
      if (k == nullptr) bad(key, "unknown configuration key");
      merged[key] = normalize(*k, value);
    }
  }
  for (const Key& k : kKeys) {
    if (options[k.name]->count() == 0) continue;
    merged[k.name] = k.kind == Kind::kBool ? normalize(k, Json(bool_values[k.name]))
                                           : normalize(k, Json(text_values[k.name]));
  }
  if (!command.empty()) merged["command"] = command;

  RunConfig cfg;
  if (!merged.contains("command")) throw ConfigError("'command': missing");
  cfg.command = merged["command"].get<std::string>();
  if (std::find(std::begin(kCommands), std::end(kCommands), cfg.command) == std::end(kCommands)) {
    bad("command", "unknown command '" + cfg.command + "'");
  }
  auto get_int = [&](const char* key, std::int64_t min) -> std::optional<std::int64_t> {
    if (!merged.contains(key)) return std::nullopt;
    const auto v = merged[key].get<std::int64_t>();
    if (v < min) bad(key, "must be >= " + std::to_string(min));
    return v;
  };
  if (merged.contains("dist")) cfg.dist_spec = merged["dist"].get<std::string>();
  if (merged.contains("p")) cfg.p = merged["p"].get<double>();
  if (merged.contains("p_table")) cfg.p_table = merged["p_table"].get<std::string>();
  if (auto v = get_int("n", 1)) cfg.n = *v;
  if (merged.contains("ngrid")) {
    cfg.ngrid = merged["ngrid"].get<std::string>();
    cfg.n_grid = parse_ngrid(*cfg.ngrid);
  }
  if (auto v = get_int("trials", 1)) cfg.trials = static_cast<std::size_t>(*v);
  if (merged.contains("seed")) {
    const Json& sj = merged["seed"];
    cfg.seed = sj.is_number_unsigned() ? sj.get<std::uint64_t>()
                                       : static_cast<std::uint64_t>(sj.get<std::int64_t>());
  }
  if (merged.contains("c") && merged["c"].is_number()) {
    cfg.c = merged["c"].get<double>();
    if (!(*cfg.c > 0.0)) bad("c", "must be > 0");
  }
  if (auto v = get_int("horizon", 1)) cfg.horizon = *v;
  if (auto v = get_int("k", 1)) cfg.k = static_cast<std::size_t>(*v);
  if (merged.contains("s")) cfg.s = merged["s"].get<double>();
  if (auto v = get_int("reference_count", 0)) cfg.reference_count = static_cast<std::size_t>(*v);
  if (auto v = get_int("i", 0)) cfg.i = *v;
  if (auto v = get_int("j", 0)) cfg.j = *v;
  if (merged.contains("input")) cfg.input = merged["input"].get<std::string>();
  if (merged.contains("output")) cfg.output = merged["output"].get<std::string>();
  if (merged.contains("format")) cfg.format = merged["format"].get<std::string>();
  if (auto v = get_int("workers", 0)) cfg.workers = static_cast<unsigned>(*v);
  cfg.override_gate = merged.value("override_gate", false);
  cfg.l1_plus = merged.value("l1_plus", false);
  cfg.materialize = merged.value("materialize", false);
  cfg.check = merged.value("check", false);

  const std::string& cmd = cfg.command;
  if (cfg.format != "json" && cfg.format != "csv") bad("format", "must be json or csv");
  const bool experiment = cmd == "slln" || cmd == "clt" || cmd == "scaling" || cmd == "compare";
  if (cfg.format == "csv" && !experiment) bad("format", "csv is only available for experiments");
  if (cfg.p && cfg.p_table) bad("p_table", "contradicts 'p'; give one of them");
  if (cfg.n && cfg.ngrid && experiment && cmd != "clt") {
    bad("ngrid", "contradicts 'n'; give one of them");
  }

  if (cmd == "gen" || cmd == "passage" || cmd == "renewals") {
    if (!cfg.input) {
      require(cfg.n.has_value(), "n", cmd);
      require(cfg.dist_spec.has_value(), "dist", cmd);
    } else if (cmd == "gen") {
      bad("input", "not accepted by gen");
    }
  } else if (cmd == "continuum") {
    require(cfg.s.has_value(), "s", cmd);
  } else if (cmd == "compare") {
    if (!cfg.s && cfg.dist_spec) {
      const auto d = WeightDistribution::parse(*cfg.dist_spec);
      if (d.kind() != DistKind::kPareto) bad("dist", "compare needs a pareto law");
      cfg.s = d.tail_index();
    }
    require(cfg.s.has_value(), "s", cmd);
    if (cfg.p_table) bad("p_table", "compare takes a constant p");
  } else {
    require(cfg.dist_spec.has_value(), "dist", cmd);
  }
  if (experiment && cmd != "clt" && cfg.n_grid.empty()) {
    if (cfg.n) {
      cfg.n_grid = {*cfg.n};
    } else {
      require(false, "ngrid", cmd);
    }
  }
  if ((cmd == "slln" || cmd == "clt") && !cfg.override_gate) {
    const DistStats st = dist_stats(WeightDistribution::parse(*cfg.dist_spec));
    if (cmd == "slln" && !st.has_moment[1]) {
      throw GateRefusal("slln: " + *cfg.dist_spec +
                        " fails the second-moment gate (E[v^2] = inf); run scaling instead");
    }
    if (cmd == "clt" && !st.has_moment[2]) {
      throw GateRefusal("clt: " + *cfg.dist_spec +
                        " fails the third-moment gate (E[v^3] = inf); use --override-gate to "
                        "explore, or run scaling");
    }
  }
  return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return execute(config, out, err);
  } catch (const GateRefusal& e) {
    err << "lpp " << config.command << ": refused: " << e.what() << '\n';
    return kGateRefusal;
  } catch (const ConfigError& e) {
    err << "lpp " << config.command << ": usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "lpp " << config.command << ": usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedDistribution& e) {
    err << "lpp " << config.command << ": usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "lpp " << config.command << ": error: " << e.what() << '\n';
    return kRuntime;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig cfg;
  try {
    cfg = parse_config(args);
  } catch (const HelpRequested& h) {
    std::cout << h.what();
    return kOk;
  } catch (const GateRefusal& e) {
    std::cerr << "lpp: refused: " << e.what() << '\n';
    return kGateRefusal;
  } catch (const std::exception& e) {
    std::cerr << "lpp: usage error: " << e.what() << '\n';
    return kUsage;
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace lpp::cli
