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

#include "lpp/serialize.hpp"

#include <cmath>
#include <sstream>

#include "lpp/errors.hpp"

namespace lpp {
namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json bootstrap_json(const stats::BootstrapCI& ci) {
  return {{"estimate", number_or_null(ci.estimate)},
          {"lo", number_or_null(ci.lo)},
          {"hi", number_or_null(ci.hi)},
          {"resamples", ci.resamples},
          {"method", "bootstrap-percentile-95"}};
}

template <class T>
T require(const Json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  return j.at(key).get<T>();
}

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Json to_json(const PModel& p) {
  if (p.is_constant()) return Json(p.p());
  return Json(p.table());
}

PModel pmodel_from_json(const Json& j) {
  if (j.is_number()) return PModel::constant(j.get<double>());
  if (j.is_array()) return PModel::per_length(j.get<std::vector<double>>());
  throw ConfigError("p_model must be a number or an array of per-length probabilities");
}

Json to_json(const GeodesicReport& r) {
  Json path = Json::array();
  for (const auto& [a, b] : r.path) path.push_back({a, b});
  Json out;
  out["value"] = r.value ? Json(*r.value) : Json("unreachable");
  out["path"] = std::move(path);
  out["ell"] = r.ell;
  out["h"] = r.value ? Json(r.h) : Json(nullptr);
  return out;
}

Json to_json(const RenewalAnalysis& a) {
  Json cycles = Json::array();
  for (const Cycle& c : a.cycles) cycles.push_back({{"length", c.length}, {"weight", c.weight}});
  return {{"c", a.c},          {"horizon", a.horizon}, {"n", a.n},
          {"tau", a.tau},      {"rho", a.rho},         {"gamma", a.gamma},
          {"cycles", cycles}};
}

Json to_json(const ContinuumInstance& inst) {
  Json y = Json::array();
  for (const Interval& iv : inst.Y) y.push_back({iv.left, iv.right});
  return {{"s", inst.s}, {"seed", inst.seed}, {"M", inst.M}, {"Y", y}};
}

ContinuumInstance continuum_from_json(const Json& j) {
  std::vector<Interval> y;
  for (const auto& pair : require<Json>(j, "Y")) {
    y.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
  }
  ContinuumInstance inst = continuum_from_parts(require<double>(j, "s"),
                                                require<std::vector<double>>(j, "M"), y);
  inst.seed = j.value("seed", std::uint64_t{0});
  return inst;
}

Json window_to_json(const GraphWindow& w, bool materialize) {
  if (materialize || w.is_materialized()) {
    Json edges = Json::array();
    for (const Edge& e : w.present_edges()) {
      edges.push_back({{"i", e.i}, {"j", e.j}, {"weight", e.weight}});
    }
    return {{"n", w.n()}, {"edges", std::move(edges)}};
  }
  return {{"n", w.n()},
          {"p_model", to_json(w.p_model())},
          {"dist_spec", w.dist().spec()},
          {"seed", w.seed()}};
}

GraphWindow window_from_json(const Json& j) {
  const auto n = require<Vertex>(j, "n");
  if (j.contains("edges")) {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      edges.push_back({require<Vertex>(e, "i"), require<Vertex>(e, "j"), require<double>(e, "weight")});
    }
    return GraphWindow::materialized(n, edges);
  }
  return GraphWindow::generate(n, pmodel_from_json(require<Json>(j, "p_model")),
                               WeightDistribution::parse(require<std::string>(j, "dist_spec")),
                               require<std::uint64_t>(j, "seed"));
}

Json to_json(const ExperimentReport& r) {
  Json summaries = Json::array();
  for (const Summary& s : r.summaries) {
    Json q = Json::object();
    for (const auto& [p, v] : s.quantiles) {
      std::ostringstream key;
      key << p;
      q[key.str()] = number_or_null(v);
    }
    Json js = {{"n", s.n},
               {"stat", s.stat},
               {"count", s.count},
               {"unreachable", s.unreachable},
               {"mean", number_or_null(s.mean)},
               {"variance", number_or_null(s.variance)},
               {"ci_lo", number_or_null(s.ci_lo)},
               {"ci_hi", number_or_null(s.ci_hi)},
               {"ci_method", s.ci_method},
               {"quantiles", q}};
    if (s.median) js["median"] = bootstrap_json(*s.median);
    summaries.push_back(std::move(js));
  }
  Json fits = Json::array();
  for (const FitReport& f : r.fits) {
    fits.push_back({{"name", f.name},
                    {"slope", number_or_null(f.fit.slope)},
                    {"intercept", number_or_null(f.fit.intercept)},
                    {"stderr", number_or_null(f.fit.stderr_slope)},
                    {"points", f.fit.points},
                    {"target", f.target ? Json(*f.target) : Json(nullptr)}});
  }
  Json comparisons = Json::array();
  for (const Comparison& c : r.comparisons) {
    comparisons.push_back({{"name", c.name},
                           {"n", c.n},
                           {"ks", c.ks},
                           {"size_a", c.size_a},
                           {"size_b", c.size_b}});
  }
  Json checks = Json::array();
  for (const Check& c : r.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return {{"experiment", r.experiment},
          {"master_seed", r.master_seed},
          {"config", r.config},
          {"summaries", summaries},
          {"fits", fits},
          {"comparisons", comparisons},
          {"checks", checks},
          {"notes", r.notes},
          {"extra", r.extra}};
}

std::string to_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << "n,stat,mean,lo,hi,median,median_lo,median_hi,count,unreachable\n";
  for (const Summary& s : r.summaries) {
    os << s.n << ',' << s.stat << ',' << csv_number(s.mean) << ',' << csv_number(s.ci_lo) << ','
       << csv_number(s.ci_hi) << ',';
    if (s.median) {
      os << csv_number(s.median->estimate) << ',' << csv_number(s.median->lo) << ','
         << csv_number(s.median->hi);
    } else {
      os << ",,";
    }
    os << ',' << s.count << ',' << s.unreachable << '\n';
  }
  return os.str();
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace lpp
