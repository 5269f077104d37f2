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

#include "lpp/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lpp/errors.hpp"
#include "lpp/kernels.hpp"
#include "lpp/passage.hpp"
#include "lpp/stats.hpp"

namespace lpp {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxWitnesses = 16;

// Edge weights v_{y, y+1 .. y+width} for every y, -inf where absent.
class Band {
 public:
  Band(const GraphWindow& w, Vertex width) : n_(w.n()), width_(std::min(width, w.n())) {
    data_.assign(static_cast<std::size_t>(n_ * width_), kNegInf);
    for (Vertex y = 0; y < n_; ++y) {
      const Vertex count = std::min(width_, n_ - y);
      w.fill_row(y, y + 1, std::span<double>(row_mut(y), static_cast<std::size_t>(count)));
    }
  }
  const double* row(Vertex y) const { return data_.data() + y * width_; }
  double at(Vertex i, Vertex j) const { return row(i)[j - i - 1]; }

 private:
  double* row_mut(Vertex y) { return data_.data() + y * width_; }
  Vertex n_;
  Vertex width_;
  std::vector<double> data_;
};

// Largest d <= dmax such that w_{x-l,x} >= c l for every l <= d.
Vertex backward_run(const Band& band, Vertex x, Vertex dmax, double c, std::vector<double>& v) {
  const auto& k = kernels::active();
  v.assign(static_cast<std::size_t>(dmax + 1), kNegInf);
  const Vertex base = x - dmax;
  v[static_cast<std::size_t>(dmax)] = 0.0;
  for (Vertex t = 1; t <= dmax; ++t) {
    const Vertex y = x - t;
    const double val =
        k.max_plus(band.row(y), v.data() + (y + 1 - base), static_cast<std::size_t>(t));
    v[static_cast<std::size_t>(y - base)] = val;
    if (!(val >= c * static_cast<double>(t))) return t - 1;
  }
  return dmax;
}

// Largest d <= dmax such that w_{x,x+l} >= c l for every l <= d.
Vertex forward_run(const Band& band, Vertex x, Vertex dmax, double c, std::vector<double>& v,
                   std::vector<std::int32_t>& scratch) {
  const auto& k = kernels::active();
  v.assign(static_cast<std::size_t>(dmax + 1), kNegInf);
  scratch.resize(static_cast<std::size_t>(dmax + 1));
  v[0] = 0.0;
  for (Vertex t = 0; t <= dmax; ++t) {
    const double val = v[static_cast<std::size_t>(t)];
    if (t > 0 && !(val >= c * static_cast<double>(t))) return t - 1;
    if (t == dmax) break;
    k.relax_push(v.data() + t + 1, scratch.data(), val, band.row(x + t),
                 static_cast<std::size_t>(dmax - t), 0);
  }
  return dmax;
}

// Every edge (x-j, x+l), 1 <= j <= jmax, 1 <= l <= lmax, has v < c (j+l).
bool crossing_ok(const Band& band, Vertex x, Vertex jmax, Vertex lmax, double c) {
  for (Vertex j = 1; j <= jmax; ++j) {
    const double* row = band.row(x - j);
    for (Vertex l = 1; l <= lmax; ++l) {
      if (row[j + l - 1] >= c * static_cast<double>(j + l)) return false;
    }
  }
  return true;
}

// Smallest d <= H at which the crossing or forward part fails at x, if any.
std::optional<Vertex> mu_at(const Band& band, Vertex x, Vertex horizon, double c,
                            std::vector<double>& v, std::vector<std::int32_t>& scratch) {
  const Vertex fwd = forward_run(band, x, horizon, c, v, scratch);
  for (Vertex d = 1; d <= horizon; ++d) {
    if (d > fwd) return d;
    for (Vertex j = 1; j <= horizon; ++j) {
      if (band.at(x - j, x + d) >= c * static_cast<double>(d + j)) return d;
    }
  }
  return std::nullopt;
}

bool present(const GraphWindow& w, Vertex i, Vertex j) { return w.edge_weight(i, j).has_value(); }

void check_args(double c, Vertex horizon, const char* op) {
  if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError(std::string(op) + ": c must be > 0");
  if (horizon < 1) throw ConfigError(std::string(op) + ": horizon must be >= 1");
}

}  // namespace

std::vector<Vertex> strongly_connected_points(const GraphWindow& w) {
  const Vertex n = w.n();
  std::vector<Vertex> out;
  if (w.all_present()) {
    out.resize(static_cast<std::size_t>(n + 1));
    std::iota(out.begin(), out.end(), Vertex{0});
    return out;
  }
  // Paths between a and b stay inside [a, b], so each point only needs to be
  // checked against the nearest qualifying point on the relevant side.
  std::vector<std::uint8_t> reaches_right(static_cast<std::size_t>(n + 1), 0);
  std::vector<std::uint8_t> reached_left(static_cast<std::size_t>(n + 1), 0);
  std::vector<std::uint8_t> mark;
  reaches_right[static_cast<std::size_t>(n)] = 1;
  Vertex anchor = n;
  for (Vertex x = n - 1; x >= 0; --x) {
    mark.assign(static_cast<std::size_t>(anchor - x + 1), 0);
    mark[0] = 1;
    for (Vertex u = x; u < anchor; ++u) {
      if (!mark[static_cast<std::size_t>(u - x)]) continue;
      for (Vertex t = u + 1; t <= anchor; ++t) {
        auto& m = mark[static_cast<std::size_t>(t - x)];
        if (!m && present(w, u, t)) m = 1;
      }
    }
    if (std::all_of(mark.begin(), mark.end(), [](std::uint8_t m) { return m != 0; })) {
      reaches_right[static_cast<std::size_t>(x)] = 1;
      anchor = x;
    }
  }
  reached_left[0] = 1;
  anchor = 0;
  for (Vertex x = 1; x <= n; ++x) {
    mark.assign(static_cast<std::size_t>(x - anchor + 1), 0);
    mark[static_cast<std::size_t>(x - anchor)] = 1;
    for (Vertex u = x - 1; u >= anchor; --u) {
      auto& m = mark[static_cast<std::size_t>(u - anchor)];
      for (Vertex t = u + 1; t <= x && !m; ++t) {
        if (mark[static_cast<std::size_t>(t - anchor)] && present(w, u, t)) m = 1;
      }
    }
    if (std::all_of(mark.begin(), mark.end(), [](std::uint8_t m) { return m != 0; })) {
      reached_left[static_cast<std::size_t>(x)] = 1;
      anchor = x;
    }
  }
  for (Vertex x = 0; x <= n; ++x) {
    if (reaches_right[static_cast<std::size_t>(x)] && reached_left[static_cast<std::size_t>(x)]) {
      out.push_back(x);
    }
  }
  return out;
}

RenewalAnalysis detect_renewals(const GraphWindow& w, double c, Vertex horizon) {
  check_args(c, horizon, "detect_renewals");
  RenewalAnalysis r;
  r.c = c;
  r.horizon = horizon;
  r.n = w.n();
  r.tau = strongly_connected_points(w);
  if (r.candidate_span() == 0) return r;

  std::vector<std::uint8_t> in_tau(static_cast<std::size_t>(r.n + 1), 0);
  for (Vertex x : r.tau) in_tau[static_cast<std::size_t>(x)] = 1;

  const Band band(w, 2 * horizon);
  std::vector<double> v;
  std::vector<std::int32_t> scratch;
  for (Vertex x = horizon; x <= r.n - horizon; ++x) {
    if (!in_tau[static_cast<std::size_t>(x)]) continue;
    if (backward_run(band, x, horizon, c, v) < horizon) continue;
    r.rho.push_back(x);
    if (forward_run(band, x, horizon, c, v, scratch) < horizon) continue;
    if (!crossing_ok(band, x, horizon, horizon, c)) continue;
    r.gamma.push_back(x);
  }
  for (std::size_t k = 1; k < r.gamma.size(); ++k) {
    const Vertex a = r.gamma[k - 1];
    const Vertex b = r.gamma[k];
    const PassageTable t = forward_table(w, a, b);
    r.cycles.push_back({b - a, t.value.back()});
  }
  return r;
}

ConditionFlags renewal_conditions(const GraphWindow& w, double c, Vertex horizon) {
  check_args(c, horizon, "renewal_conditions");
  ConditionFlags f;
  f.first = horizon;
  const Vertex n = w.n();
  if (n < 2 * horizon) return f;
  const Band band(w, 2 * horizon);
  std::vector<double> v;
  std::vector<std::int32_t> scratch;
  for (Vertex x = horizon; x <= n - horizon; ++x) {
    f.forward.push_back(forward_run(band, x, horizon, c, v, scratch) == horizon);
    f.backward.push_back(backward_run(band, x, horizon, c, v) == horizon);
    f.crossing.push_back(crossing_ok(band, x, horizon, horizon, c));
  }
  return f;
}

DecompositionCheck check_decomposition(const GraphWindow& w, const RenewalAnalysis& analysis) {
  DecompositionCheck out;
  const Vertex lo = analysis.horizon;
  const Vertex hi = analysis.n - analysis.horizon;
  if (analysis.gamma.empty() || hi - lo < 2) return out;
  const PassageOracle oracle(w, lo, hi);
  for (Vertex x : analysis.gamma) {
    if (x <= lo || x >= hi) continue;
    for (Vertex a = lo; a < x; ++a) {
      const double left = oracle.raw(a, x);
      for (Vertex b = x + 1; b <= hi; ++b) {
        const double whole = oracle.raw(a, b);
        const double split = left + oracle.raw(x, b);
        ++out.checked;
        bool same = whole == split;
        if (!same && std::isfinite(whole) && std::isfinite(split)) {
          same = std::abs(whole - split) <= 1e-12 * std::max(1.0, std::abs(whole));
        }
        if (same) continue;
        out.ok = false;
        if (out.counterexamples.size() < kMaxWitnesses) {
          DecompositionWitness wit{a, x, b, std::nullopt, std::nullopt};
          if (whole != kNegInf) wit.whole = whole;
          if (split != kNegInf) wit.split = split;
          out.counterexamples.push_back(wit);
        }
      }
    }
  }
  return out;
}

CRange c_range(const DistStats& stats, double gamma) {
  CRange r;
  r.gamma_hat = gamma;
  r.low = gamma * stats.essinf;
  r.high = gamma * stats.mean;
  return r;
}

CRange c_range(const GraphWindow& w, CRangeMode mode, std::uint64_t bootstrap_seed) {
  const std::vector<Vertex> tau = strongly_connected_points(w);
  const double gamma = static_cast<double>(tau.size()) / static_cast<double>(w.n() + 1);
  CRange r;
  r.mode = mode;
  r.gamma_hat = gamma;
  double essinf = 0.0;
  double mean = 0.0;
  if (w.has_dist()) {
    essinf = w.dist().essinf();
    mean = w.dist().mean();
  } else {
    const std::vector<Edge> edges = w.present_edges();
    if (edges.empty()) throw InsufficientData("c_range: window has no edges");
    essinf = std::numeric_limits<double>::infinity();
    for (const Edge& e : edges) {
      essinf = std::min(essinf, e.weight);
      mean += e.weight;
    }
    mean /= static_cast<double>(edges.size());
  }
  r.low = gamma * essinf;
  r.high = gamma * mean;
  if (mode == CRangeMode::kBasic) {
    r.high_ci_lo = r.high_ci_hi = r.high;
    return r;
  }
  std::vector<double> mins;
  for (std::size_t k = 1; k < tau.size(); ++k) {
    double m = std::numeric_limits<double>::infinity();
    for (Vertex i = tau[k - 1]; i < tau[k]; ++i) {
      for (Vertex j = i + 1; j <= tau[k]; ++j) {
        if (auto v = w.edge_weight(i, j)) m = std::min(m, *v);
      }
    }
    if (std::isfinite(m)) mins.push_back(m);
  }
  if (mins.empty()) throw InsufficientData("c_range: fewer than two strongly connected points");
  r.intervals = mins.size();
  auto mean_of = [](std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  };
  const stats::BootstrapCI ci = stats::bootstrap_ci(mins, mean_of, bootstrap_seed);
  r.high = gamma * ci.estimate;
  r.high_ci_lo = gamma * ci.lo;
  r.high_ci_hi = gamma * ci.hi;
  return r;
}

CycleEstimates cycle_estimators(const RenewalAnalysis& analysis, double C_hat) {
  if (analysis.gamma.size() < 2) {
    throw InsufficientData("cycle_estimators: need at least 2 renewal points, found " +
                           std::to_string(analysis.gamma.size()));
  }
  CycleEstimates e;
  e.lambda_hat = renewal_density(analysis);
  e.cycles = analysis.cycles.size();
  double total_w = 0.0;
  double total_len = 0.0;
  for (const Cycle& cy : analysis.cycles) {
    total_w += cy.weight;
    total_len += static_cast<double>(cy.length);
  }
  e.C_cycle = total_w / total_len;
  std::vector<double> dev;
  dev.reserve(analysis.cycles.size());
  for (const Cycle& cy : analysis.cycles) {
    dev.push_back(cy.weight - C_hat * static_cast<double>(cy.length));
  }
  const double m = std::accumulate(dev.begin(), dev.end(), 0.0) / static_cast<double>(dev.size());
  double ss = 0.0;
  for (double d : dev) ss += (d - m) * (d - m);
  e.sigma2_hat = ss / static_cast<double>(std::max<std::size_t>(1, dev.size() - 1));
  return e;
}

CycleEstimates cycle_estimators(const RenewalAnalysis& analysis) {
  if (analysis.gamma.size() < 2) return cycle_estimators(analysis, 0.0);
  double total_w = 0.0;
  double total_len = 0.0;
  for (const Cycle& cy : analysis.cycles) {
    total_w += cy.weight;
    total_len += static_cast<double>(cy.length);
  }
  return cycle_estimators(analysis, total_w / total_len);
}

double renewal_density(const RenewalAnalysis& analysis) {
  const Vertex span = analysis.candidate_span();
  if (span == 0) return 0.0;
  return static_cast<double>(analysis.gamma.size()) / static_cast<double>(span);
}

MuNuDiagnostics mu_nu_diagnostics(const GraphWindow& w, double c, Vertex horizon) {
  check_args(c, horizon, "mu_nu_diagnostics");
  MuNuDiagnostics d;
  const Vertex n = w.n();
  const Band band(w, 2 * horizon);
  std::vector<double> v;
  std::vector<std::int32_t> scratch;

  std::vector<Vertex> ok_left(static_cast<std::size_t>(n + 1), 0);
  for (Vertex x = 1; x <= n; ++x) {
    ok_left[static_cast<std::size_t>(x)] = backward_run(band, x, std::min(horizon, x), c, v);
  }
  for (Vertex s = 0; s + horizon <= n; ++s) {
    bool found = false;
    for (Vertex x = s + 1; x <= s + horizon; ++x) {
      if (ok_left[static_cast<std::size_t>(x)] >= x - s) {
        d.nu_samples.push_back(x - s);
        found = true;
        break;
      }
    }
    if (!found) ++d.nu_censored;
  }

  if (n >= 2 * horizon) {
    const std::vector<Vertex> tau = strongly_connected_points(w);
    std::vector<std::uint8_t> in_tau(static_cast<std::size_t>(n + 1), 0);
    for (Vertex x : tau) in_tau[static_cast<std::size_t>(x)] = 1;
    std::size_t silver = 0;
    for (Vertex x = horizon; x <= n - horizon; ++x) {
      if (!in_tau[static_cast<std::size_t>(x)] || ok_left[static_cast<std::size_t>(x)] < horizon) {
        continue;
      }
      ++silver;
      if (auto mu = mu_at(band, x, horizon, c, v, scratch)) {
        d.mu_samples_finite.push_back(*mu);
      } else {
        ++d.mu_infinite;
      }
    }
    if (silver > 0) {
      d.mu_infinite_fraction = static_cast<double>(d.mu_infinite) / static_cast<double>(silver);
    }
  }

  const std::size_t total = d.nu_samples.size() + d.nu_censored;
  if (total > 0) {
    std::vector<std::size_t> exceed(static_cast<std::size_t>(horizon + 1), 0);
    for (Vertex g : d.nu_samples) {
      for (Vertex k = 0; k < g; ++k) ++exceed[static_cast<std::size_t>(k)];
    }
    std::vector<double> ks;
    std::vector<double> logs;
    for (Vertex k = 1; k < horizon; ++k) {
      const std::size_t cnt = exceed[static_cast<std::size_t>(k)] + d.nu_censored;
      if (cnt < 5) break;
      ks.push_back(static_cast<double>(k));
      logs.push_back(std::log(static_cast<double>(cnt) / static_cast<double>(total)));
    }
    d.nu_survival_points = ks.size();
    if (ks.size() >= 2) {
      const stats::LinearFit f = stats::fit_linear(ks, logs);
      d.nu_log_survival_slope = f.slope;
      d.nu_log_survival_stderr = f.stderr_slope;
    }
  }
  return d;
}

}  // namespace lpp
