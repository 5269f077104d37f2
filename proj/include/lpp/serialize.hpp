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

#pragma once

#include <string>

#include <json.hpp>

#include "lpp/continuum.hpp"
#include "lpp/experiments.hpp"
#include "lpp/graph.hpp"
#include "lpp/passage.hpp"
#include "lpp/renewal.hpp"

namespace lpp {

using Json = nlohmann::json;

// Version string embedded in every artifact.
inline constexpr const char* kToolVersion = "lpp 0.1.0";

Json to_json(const PModel& p);
PModel pmodel_from_json(const Json& j);

// {value | "unreachable", path: [[i,j]...], ell, h}
Json to_json(const GeodesicReport& r);
// {c, horizon, tau, rho, gamma, cycles: [{length, weight}...]}
Json to_json(const RenewalAnalysis& a);
// {s, seed, M, Y: [[l,r]...]}
Json to_json(const ContinuumInstance& inst);
ContinuumInstance continuum_from_json(const Json& j);

// Lazy: {n, p_model, dist_spec, seed}. Materialized: {n, edges: [{i,j,weight}...]}.
Json window_to_json(const GraphWindow& w, bool materialize);
GraphWindow window_from_json(const Json& j);

Json to_json(const ExperimentReport& r);
// Columns: n, stat, mean, lo, hi, median, median_lo, median_hi, count, unreachable.
std::string to_csv(const ExperimentReport& r);

// Canonical text form: two-space indent, sorted keys, trailing newline.
std::string canonical_dump(const Json& j);

}  // namespace lpp
