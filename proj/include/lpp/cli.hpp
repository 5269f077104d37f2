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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpp/graph.hpp"
#include "lpp/serialize.hpp"

namespace lpp::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kGateRefusal = 3, kRuntime = 4 };

struct RunConfig {
  std::string command;
  std::optional<std::string> dist_spec;
  std::optional<double> p;
  std::optional<std::string> p_table;  // whitespace/comma separated p_1, p_2, ...
  std::optional<Vertex> n;
  std::optional<std::string> ngrid;
  std::vector<Vertex> n_grid;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::optional<double> c;  // nullopt means "auto"
  std::optional<Vertex> horizon;
  std::size_t k = 10000;
  std::optional<double> s;
  std::size_t reference_count = 0;
  std::optional<Vertex> i;
  std::optional<Vertex> j;
  std::optional<std::string> input;
  std::optional<std::string> output;
  std::string format = "json";
  unsigned workers = 0;
  bool override_gate = false;
  bool l1_plus = false;
  bool materialize = false;
  bool check = false;

  Json to_json() const;
};

// --help was requested; what() holds the help text.
struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "100:10000:x2" (geometric, stop inclusive) or "100,400,1600".
std::vector<Vertex> parse_ngrid(const std::string& text);

// args excludes the program name. Config-file values (--config) are applied
// first, explicit flags override them. Throws ConfigError naming the key.
RunConfig parse_config(const std::vector<std::string>& args);

// Executes the command, writes the artifact to config.output (stdout when
// unset) and a one-line summary to err. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace lpp::cli
