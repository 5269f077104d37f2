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

#include "lpp/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "lpp/detail/fastmath.hpp"
#include "lpp/errors.hpp"

namespace lpp {
namespace {

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::optional<double> parse_number(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

double require_number(const std::map<std::string, std::string, std::less<>>& params,
                      std::string_view key, std::string_view spec) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw ConfigError("distribution spec '" + std::string(spec) + "' is missing '" +
                      std::string(key) + "'");
  }
  auto value = parse_number(it->second);
  if (!value) {
    throw ConfigError("distribution spec '" + std::string(spec) + "': '" + std::string(key) +
                      "' is not a number");
  }
  return *value;
}

}  // namespace

WeightDistribution WeightDistribution::constant(double v0) {
  if (!(v0 > 0.0) || !std::isfinite(v0)) throw ConfigError("constant weight must be positive");
  WeightDistribution d;
  d.kind_ = DistKind::kConstant;
  d.a_ = v0;
  d.essinf_ = v0;
  d.mean_ = v0;
  d.spec_ = "const:v=" + format_double(v0);
  return d;
}

WeightDistribution WeightDistribution::uniform(double a, double b) {
  if (!(a >= 0.0) || !(b > a) || !std::isfinite(b)) {
    throw ConfigError("uniform weights need 0 <= a < b");
  }
  WeightDistribution d;
  d.kind_ = DistKind::kUniform;
  d.a_ = a;
  d.b_ = b - a;
  d.essinf_ = a;
  d.mean_ = 0.5 * (a + b);
  d.spec_ = "uniform:a=" + format_double(a) + ",b=" + format_double(b);
  return d;
}

WeightDistribution WeightDistribution::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw ConfigError("exponential rate must be positive");
  WeightDistribution d;
  d.kind_ = DistKind::kExponential;
  d.a_ = -1.0 / rate;
  d.essinf_ = 0.0;
  d.mean_ = 1.0 / rate;
  d.spec_ = "exp:rate=" + format_double(rate);
  return d;
}

WeightDistribution WeightDistribution::pareto(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw ConfigError("pareto tail index must be positive");
  WeightDistribution d;
  d.kind_ = DistKind::kPareto;
  d.a_ = -1.0 / s;
  d.essinf_ = 1.0;
  d.mean_ = s > 1.0 ? s / (s - 1.0) : std::numeric_limits<double>::infinity();
  d.tail_index_ = s;
  d.spec_ = "pareto:s=" + format_double(s);
  return d;
}

WeightDistribution WeightDistribution::tabulated(std::vector<Knot> knots, double essinf,
                                                 std::optional<double> tail_index) {
  if (knots.size() < 2) throw ConfigError("tabulated law needs at least two knots");
  for (std::size_t k = 0; k < knots.size(); ++k) {
    const Knot& kn = knots[k];
    if (!(kn.u >= 0.0 && kn.u <= 1.0) || !std::isfinite(kn.value) || kn.value < 0.0) {
      throw ConfigError("tabulated knot " + std::to_string(k) + " out of range");
    }
    if (k > 0 && !(kn.u > knots[k - 1].u)) {
      throw ConfigError("tabulated knots must have strictly increasing u");
    }
    if (k > 0 && kn.value < knots[k - 1].value) {
      throw ConfigError("tabulated inverse CDF must be nondecreasing");
    }
  }
  if (!(essinf >= 0.0) || essinf > knots.front().value) {
    throw ConfigError("declared essinf must lie in [0, first knot value]");
  }
  if (tail_index && !(*tail_index > 0.0)) throw ConfigError("tail index must be positive");

  WeightDistribution d;
  d.kind_ = DistKind::kTabulated;
  d.essinf_ = essinf;
  d.tail_index_ = tail_index;
  // Exact integral of the clamped piecewise-linear interpolant over (0,1).
  double mean = knots.front().value * knots.front().u + knots.back().value * (1.0 - knots.back().u);
  for (std::size_t k = 1; k < knots.size(); ++k) {
    mean += 0.5 * (knots[k].value + knots[k - 1].value) * (knots[k].u - knots[k - 1].u);
  }
  d.mean_ = mean;
  d.knots_ = std::make_shared<const std::vector<Knot>>(std::move(knots));
  d.spec_ = "table";
  return d;
}

WeightDistribution WeightDistribution::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  std::map<std::string, std::string, std::less<>> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("malformed distribution parameter '" + std::string(item) + "' in '" +
                          std::string(spec) + "'");
      }
      params.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  auto check_keys = [&](std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : params) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ConfigError("unknown parameter '" + key + "' in distribution spec '" +
                          std::string(spec) + "'");
      }
    }
  };

  WeightDistribution d;
  if (kind == "pareto") {
    check_keys({"s"});
    d = pareto(require_number(params, "s", spec));
  } else if (kind == "exp") {
    check_keys({"rate"});
    d = exponential(require_number(params, "rate", spec));
  } else if (kind == "const") {
    check_keys({"v"});
    d = constant(require_number(params, "v", spec));
  } else if (kind == "uniform") {
    check_keys({"a", "b"});
    d = uniform(require_number(params, "a", spec), require_number(params, "b", spec));
  } else if (kind == "table") {
    check_keys({"path", "essinf", "s"});
    auto path = params.find("path");
    if (path == params.end()) throw ConfigError("table spec needs path=<file>");
    std::optional<double> tail;
    if (params.count("s")) tail = require_number(params, "s", spec);
    const double essinf = params.count("essinf") ? require_number(params, "essinf", spec) : 0.0;
    d = tabulated(read_knots_csv(path->second), essinf, tail);
  } else {
    throw ConfigError("unknown distribution kind '" + std::string(kind) + "'");
  }
  d.spec_ = std::string(spec);
  return d;
}

double WeightDistribution::table_lookup(double u) const {
  const auto& k = *knots_;
  if (u <= k.front().u) return k.front().value;
  if (u >= k.back().u) return k.back().value;
  auto hi = std::upper_bound(k.begin(), k.end(), u, [](double x, const Knot& kn) { return x < kn.u; });
  auto lo = hi - 1;
  const double t = (u - lo->u) / (hi->u - lo->u);
  return lo->value + t * (hi->value - lo->value);
}

double WeightDistribution::transform(double u) const {
  switch (kind_) {
    case DistKind::kConstant:
      return a_;
    case DistKind::kUniform:
      return a_ + b_ * u;
    case DistKind::kExponential:
      return detail::log_ref(1.0 - u) * a_;
    case DistKind::kPareto:
      return detail::exp_ref(detail::log_ref(1.0 - u) * a_);
    case DistKind::kTabulated:
      return table_lookup(u);
  }
  return a_;
}

double WeightDistribution::sample(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("sample: u must lie in (0,1)");
  return transform(u);
}

double WeightDistribution::inverse_cdf(double u) const {
  if (!(u >= 0.0 && u < 1.0)) throw DomainError("inverse_cdf: u must lie in [0,1)");
  if (u == 0.0) return kind_ == DistKind::kTabulated ? table_lookup(0.0) : essinf_;
  return transform(u);
}

double WeightDistribution::upper_quantile(double q) const {
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("upper_quantile: q must lie in (0,1]");
  switch (kind_) {
    case DistKind::kConstant:
      return a_;
    case DistKind::kUniform:
      return a_ + b_ * (1.0 - q);
    case DistKind::kExponential:
      return std::log(q) * a_;
    case DistKind::kPareto:
      return std::pow(q, a_);
    case DistKind::kTabulated:
      return table_lookup(1.0 - q);
  }
  return a_;
}

bool WeightDistribution::has_moment(int k) const {
  if (tail_index_) return static_cast<double>(k) < *tail_index_;
  return true;
}

bool WeightDistribution::is_degenerate() const {
  if (kind_ == DistKind::kConstant) return true;
  if (kind_ == DistKind::kTabulated) return knots_->front().value == knots_->back().value;
  return false;
}

const std::vector<Knot>& WeightDistribution::knots() const {
  static const std::vector<Knot> kEmpty;
  return knots_ ? *knots_ : kEmpty;
}

DistStats dist_stats(const WeightDistribution& dist) {
  return {dist.mean(),
          dist.essinf(),
          {dist.has_moment(1), dist.has_moment(2), dist.has_moment(3)},
          dist.is_degenerate()};
}

double b_n(const WeightDistribution& dist, std::int64_t n) {
  if (!dist.tail_index()) {
    throw UnsupportedDistribution("b_n needs a heavy-tailed law with a declared tail index; '" +
                                  dist.spec() + "' is light-tailed");
  }
  if (n < 1) throw DomainError("b_n: n must be positive");
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n + 1);
  if (pairs == 1.0) return dist.inverse_cdf(0.0);
  return dist.upper_quantile(1.0 / pairs);
}

std::vector<Knot> read_knots_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open knot table '" + path + "'");
  std::vector<Knot> knots;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (view.empty() || view.front() == '#') continue;
    const auto comma = view.find(',');
    if (comma == std::string_view::npos) {
      if (parse_number(view)) throw ConfigError(path + ":" + std::to_string(line_no) + ": need two columns");
      continue;
    }
    auto u = parse_number(view.substr(0, comma));
    auto v = parse_number(view.substr(comma + 1));
    if (!u || !v) {
      if (knots.empty()) continue;  // header row
      throw ConfigError(path + ":" + std::to_string(line_no) + ": not a numeric knot");
    }
    knots.push_back({*u, *v});
  }
  return knots;
}

}  // namespace lpp
