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

#include "lpp/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>

#include "lpp/continuum.hpp"
#include "lpp/detail/parallel.hpp"
#include "lpp/errors.hpp"
#include "lpp/passage.hpp"
#include "lpp/philox.hpp"
#include "lpp/renewal.hpp"
#include "lpp/serialize.hpp"

namespace lpp {
namespace {

constexpr std::array<double, 5> kQuantiles{0.05, 0.25, 0.5, 0.75, 0.95};
constexpr std::uint64_t kBootstrapTag = 0x626f6f7473747261ull;
constexpr std::uint64_t kContinuumTag = 0x636f6e74696e7575ull;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double median_of(std::vector<double>& xs) {
  std::sort(xs.begin(), xs.end());
  return stats::quantile_sorted(xs, 0.5);
}

double variance_of(std::vector<double>& xs) { return stats::mean_ci(xs).variance; }

Summary summarize(Vertex n, std::string stat, const std::vector<double>& xs,
                  std::size_t unreachable, std::optional<std::uint64_t> median_seed) {
  Summary s;
  s.n = n;
  s.stat = std::move(stat);
  s.count = xs.size();
  s.unreachable = unreachable;
  if (xs.empty()) {
    s.mean = s.variance = s.ci_lo = s.ci_hi = kNaN;
    return s;
  }
  const stats::MeanCI ci = stats::mean_ci(xs);
  s.mean = ci.mean;
  s.variance = ci.variance;
  s.ci_lo = ci.lo;
  s.ci_hi = ci.hi;
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  for (double q : kQuantiles) s.quantiles.emplace_back(q, stats::quantile_sorted(sorted, q));
  if (median_seed) s.median = stats::bootstrap_ci(xs, median_of, *median_seed);
  return s;
}

Json base_config(const std::string& name, const WeightDistribution& dist, const PModel& p_model,
                 std::uint64_t seed) {
  return {{"experiment", name},
          {"dist", dist.spec()},
          {"p_model", to_json(p_model)},
          {"seed", seed}};
}

void check_grid(const std::vector<Vertex>& grid, std::size_t min_points, const char* op) {
  if (grid.size() < min_points) {
    throw ConfigError(std::string(op) + ": n grid needs at least " + std::to_string(min_points) +
                      " points");
  }
  for (Vertex n : grid) {
    if (n < 1) throw ConfigError(std::string(op) + ": grid values must be >= 1");
  }
}

void check_trials(std::size_t trials, const char* op) {
  if (trials < 1) throw ConfigError(std::string(op) + ": trials must be >= 1");
}

double total_passage(const GraphWindow& w) { return forward_table(w, 0, w.n()).value.back(); }

std::uint64_t bootstrap_seed(std::uint64_t master, std::uint64_t slot) {
  return mix_seed(mix_seed(master, kBootstrapTag), slot);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct ReferenceSample {
  std::vector<double> wk;
  std::vector<double> increment;
  std::vector<double> tail_bound;
};

ReferenceSample reference_sample(double s, std::size_t k, std::size_t count, std::uint64_t master,
                                 unsigned workers) {
  struct One {
    double wk = 0.0;
    double inc = 0.0;
    double tail = 0.0;
  };
  const std::uint64_t stream = mix_seed(master, kContinuumTag);
  auto rows = detail::parallel_map<One>(count, workers, [&](std::size_t i) {
    const ContinuumInstance inst = generate_continuum(s, 2 * k, mix_seed(stream, i));
    One o;
    o.wk = wk(inst, k);
    o.inc = o.wk - wk(inst, k / 2);
    o.tail = tail_bound_Uk(inst, k, 2 * k - 1).total();
    return o;
  });
  ReferenceSample r;
  for (const One& o : rows) {
    r.wk.push_back(o.wk);
    r.increment.push_back(o.inc);
    r.tail_bound.push_back(o.tail);
  }
  return r;
}

}  // namespace

unsigned resolve_workers(unsigned requested) {
  if (const char* env = std::getenv("LPP_WORKERS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw ConfigError("LPP_WORKERS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial_index) {
  return mix_seed(master, trial_index);
}

const Summary* ExperimentReport::find(const std::string& stat, Vertex n) const {
  for (const Summary& s : summaries) {
    if (s.stat == stat && s.n == n) return &s;
  }
  return nullptr;
}

const FitReport* ExperimentReport::find_fit(const std::string& name) const {
  for (const FitReport& f : fits) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const Check* ExperimentReport::find_check(const std::string& name) const {
  for (const Check& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ExperimentReport run_slln(const WeightDistribution& dist, const PModel& p_model,
                          const std::vector<Vertex>& n_grid, std::size_t trials,
                          std::uint64_t seed, const RunOptions& opts) {
  check_grid(n_grid, 1, "slln");
  check_trials(trials, "slln");
  if (!dist.has_moment(2) && !opts.override_gate) {
    throw GateRefusal("slln: " + dist.spec() +
                      " has no finite second moment; use the scaling experiment instead");
  }
  const unsigned workers = resolve_workers(opts.workers);
  ExperimentReport rep;
  rep.experiment = "slln";
  rep.master_seed = seed;
  rep.config = base_config("slln", dist, p_model, seed);
  rep.config["n_grid"] = n_grid;
  rep.config["trials"] = trials;
  rep.config["l1_plus"] = opts.l1_plus;
  if (!dist.has_moment(2)) rep.notes.push_back("moment gate overridden: E[v^2] is infinite");

  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    const Vertex n = n_grid[g];
    const auto values = detail::parallel_map<double>(trials, workers, [&](std::size_t t) {
      const auto w = GraphWindow::generate(n, p_model, dist, trial_seed(seed, g * trials + t));
      return total_passage(w);
    });
    std::vector<double> xs;
    std::size_t unreachable = 0;
    for (double v : values) {
      if (v == kNegInf) {
        ++unreachable;
        if (opts.l1_plus) xs.push_back(0.0);
        continue;
      }
      xs.push_back((opts.l1_plus ? std::max(v, 0.0) : v) / static_cast<double>(n));
    }
    rep.summaries.push_back(summarize(n, "w/n", xs, unreachable, std::nullopt));
  }

  bool overlap = true;
  for (std::size_t a = 0; a < rep.summaries.size(); ++a) {
    for (std::size_t b = a + 1; b < rep.summaries.size(); ++b) {
      const Summary& x = rep.summaries[a];
      const Summary& y = rep.summaries[b];
      overlap = overlap && stats::overlaps(x.ci_lo, x.ci_hi, y.ci_lo, y.ci_hi);
    }
  }
  rep.checks.push_back({"means_pairwise_ci_overlap", overlap, "95% normal intervals of w/n"});
  bool shrink = true;
  for (std::size_t a = 1; a < rep.summaries.size(); ++a) {
    const double prev = rep.summaries[a - 1].ci_hi - rep.summaries[a - 1].ci_lo;
    const double cur = rep.summaries[a].ci_hi - rep.summaries[a].ci_lo;
    shrink = shrink && cur <= prev;
  }
  rep.checks.push_back({"ci_width_nonincreasing", shrink, "along the n grid"});
  return rep;
}

ExperimentReport run_clt_shape(const WeightDistribution& dist, const PModel& p_model,
                               const CltParams& params, std::uint64_t seed,
                               const RunOptions& opts) {
  check_trials(params.trials, "clt");
  if (params.n < 2) throw ConfigError("clt: n must be >= 2");
  const bool third = dist.has_moment(3);
  if (!third && !opts.override_gate) {
    throw GateRefusal("clt: " + dist.spec() +
                      " has no finite third moment (E[v^3] = inf); the CLT-shape experiment "
                      "requires it. Use --override-gate to explore anyway, or run scaling");
  }
  const unsigned workers = resolve_workers(opts.workers);
  const Vertex n = params.n;
  const Vertex horizon = params.horizon.value_or(std::max<Vertex>(1, n / 20));

  ExperimentReport rep;
  rep.experiment = "clt";
  rep.master_seed = seed;
  rep.config = base_config("clt", dist, p_model, seed);

  double c = 0.0;
  if (params.c) {
    c = *params.c;
    rep.config["c_source"] = "user";
  } else {
    const auto pilot = GraphWindow::generate(n, p_model, dist, trial_seed(seed, 0));
    const CRange range = c_range(pilot);
    c = range.midpoint();
    rep.config["c_source"] = "auto";
    rep.config["c_range"] = {range.low, range.high};
    if (range.empty()) rep.notes.push_back("c-range is empty (degenerate weight law)");
  }
  rep.config["c"] = c;
  rep.config["horizon"] = horizon;
  rep.config["n"] = n;
  rep.config["trials"] = params.trials;
  rep.config["t_grid"] = params.t_grid;
  if (!third) {
    rep.notes.push_back(
        "moment gate overridden: E[v^3] is infinite; for 2 < s < 3 no central limit theorem "
        "is expected, not even for single values of n");
  }

  std::vector<Vertex> marks;
  for (double t : params.t_grid) {
    if (!(t > 0.0 && t <= 1.0)) throw ConfigError("clt: t grid values must lie in (0, 1]");
    marks.push_back(static_cast<Vertex>(std::llround(t * static_cast<double>(n))));
  }

  struct Trial {
    std::vector<double> at;
    std::size_t points = 0;
    Vertex span = 0;
    std::vector<Cycle> cycles;
  };
  const auto trials = detail::parallel_map<Trial>(params.trials, workers, [&](std::size_t t) {
    const auto w = GraphWindow::generate(n, p_model, dist, trial_seed(seed, t));
    const PassageTable table = forward_table(w, 0, n);
    Trial out;
    for (Vertex m : marks) out.at.push_back(table.value[static_cast<std::size_t>(m)]);
    const RenewalAnalysis a = detect_renewals(w, c, horizon);
    out.points = a.gamma.size();
    out.span = a.candidate_span();
    out.cycles = a.cycles;
    return out;
  });

  double sum_w = 0.0;
  double sum_len = 0.0;
  std::size_t points = 0;
  Vertex span = 0;
  std::vector<Cycle> pooled;
  for (const Trial& t : trials) {
    points += t.points;
    span += t.span;
    for (const Cycle& cy : t.cycles) {
      pooled.push_back(cy);
      sum_w += cy.weight;
      sum_len += static_cast<double>(cy.length);
    }
  }
  if (pooled.size() < 2) {
    throw InsufficientData("clt: only " + std::to_string(pooled.size()) +
                           " renewal cycles detected; use a larger n or a different c");
  }
  const double C_hat = sum_w / sum_len;
  const double lambda_hat = static_cast<double>(points) / static_cast<double>(span);
  double dev_mean = 0.0;
  for (const Cycle& cy : pooled) dev_mean += cy.weight - C_hat * static_cast<double>(cy.length);
  dev_mean /= static_cast<double>(pooled.size());
  double ss = 0.0;
  for (const Cycle& cy : pooled) {
    const double d = cy.weight - C_hat * static_cast<double>(cy.length) - dev_mean;
    ss += d * d;
  }
  const double sigma2_hat = ss / static_cast<double>(pooled.size() - 1);
  rep.extra["estimators"] = {{"C_hat", C_hat},
                             {"lambda_hat", lambda_hat},
                             {"sigma2_hat", sigma2_hat},
                             {"cycles", pooled.size()}};

  if (!(sigma2_hat > 0.0)) {
    rep.extra["degenerate"] = true;
    rep.notes.push_back("sigma2_hat = 0: the weight law is degenerate, standardization skipped");
    rep.checks.push_back({"degenerate", true, "zero cycle variance"});
    return rep;
  }
  rep.extra["degenerate"] = false;

  const double scale = std::sqrt(lambda_hat * sigma2_hat * static_cast<double>(n));
  const std::size_t last = marks.size() - 1;
  std::vector<double> z;
  std::vector<std::vector<double>> paths(marks.size());
  std::size_t unreachable = 0;
  for (const Trial& t : trials) {
    if (std::any_of(t.at.begin(), t.at.end(), [](double v) { return v == kNegInf; })) {
      ++unreachable;
      continue;
    }
    for (std::size_t m = 0; m < marks.size(); ++m) {
      paths[m].push_back((t.at[m] - C_hat * static_cast<double>(marks[m])) / scale);
    }
  }
  z = paths[last];
  rep.summaries.push_back(summarize(n, "z", z, unreachable, bootstrap_seed(seed, 0)));
  if (z.size() < 4) throw InsufficientData("clt: fewer than 4 reachable trials");

  auto skew = [](std::vector<double>& xs) { return stats::skewness(xs); };
  auto kurt = [](std::vector<double>& xs) { return stats::kurtosis(xs); };
  const auto var_ci = stats::bootstrap_ci(z, variance_of, bootstrap_seed(seed, 1));
  const auto skew_ci = stats::bootstrap_ci(z, skew, bootstrap_seed(seed, 2));
  const auto kurt_ci = stats::bootstrap_ci(z, kurt, bootstrap_seed(seed, 3));
  auto ci = [](const stats::BootstrapCI& b) {
    return Json{{"estimate", b.estimate}, {"lo", b.lo}, {"hi", b.hi},
                {"method", "bootstrap-percentile-95"}, {"resamples", b.resamples}};
  };
  rep.extra["shape"] = {{"variance", ci(var_ci)},
                        {"skewness", ci(skew_ci)},
                        {"kurtosis", ci(kurt_ci)}};

  Json cov = Json::array();
  Json target = Json::array();
  const double m = static_cast<double>(paths[0].size());
  std::vector<double> means;
  for (const auto& p : paths) means.push_back(std::accumulate(p.begin(), p.end(), 0.0) / m);
  for (std::size_t a = 0; a < marks.size(); ++a) {
    Json row = Json::array();
    Json trow = Json::array();
    for (std::size_t b = 0; b < marks.size(); ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < paths[a].size(); ++i) {
        s += (paths[a][i] - means[a]) * (paths[b][i] - means[b]);
      }
      row.push_back(s / (m - 1.0));
      trow.push_back(std::min(params.t_grid[a], params.t_grid[b]));
    }
    cov.push_back(row);
    target.push_back(trow);
  }
  rep.extra["covariance"] = {{"t", params.t_grid}, {"estimate", cov}, {"target", target}};

  const Summary& zs = rep.summaries.back();
  rep.checks.push_back({"mean_ci_covers_0", zs.ci_lo <= 0.0 && 0.0 <= zs.ci_hi,
                        "normal 95% interval of the standardized mean"});
  rep.checks.push_back({"variance_in_0.8_1.25", var_ci.estimate >= 0.8 && var_ci.estimate <= 1.25,
                        "standardized variance " + fmt(var_ci.estimate)});
  rep.checks.push_back({"skewness_ci_covers_0", skew_ci.lo <= 0.0 && 0.0 <= skew_ci.hi,
                        "bootstrap 95% interval"});
  rep.checks.push_back({"kurtosis_ci_covers_3", kurt_ci.lo <= 3.0 && 3.0 <= kurt_ci.hi,
                        "bootstrap 95% interval"});
  return rep;
}

ExperimentReport run_scaling(const WeightDistribution& dist, const PModel& p_model,
                             const std::vector<Vertex>& n_grid, std::size_t trials,
                             std::uint64_t seed, const RunOptions& opts) {
  check_grid(n_grid, 3, "scaling");
  check_trials(trials, "scaling");
  const unsigned workers = resolve_workers(opts.workers);
  ExperimentReport rep;
  rep.experiment = "scaling";
  rep.master_seed = seed;
  rep.config = base_config("scaling", dist, p_model, seed);
  rep.config["n_grid"] = n_grid;
  rep.config["trials"] = trials;

  const std::optional<double> s = dist.tail_index();
  const bool heavy = s && *s < 2.0;
  double p_factor = 1.0;
  if (heavy && p_model.is_constant()) p_factor = std::pow(p_model.p(), -1.0 / *s);

  struct Trial {
    double value = kNegInf;
    Vertex ell = 0;
    double h = 0.0;
  };
  std::vector<std::pair<double, double>> ell_pts;
  std::vector<std::pair<double, double>> h_pts;
  std::vector<std::pair<double, double>> w_pts;
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    const Vertex n = n_grid[g];
    const auto rows = detail::parallel_map<Trial>(trials, workers, [&](std::size_t t) {
      const auto w = GraphWindow::generate(n, p_model, dist, trial_seed(seed, g * trials + t));
      const GeodesicReport r = geodesic(w, 0, n);
      Trial out;
      if (r.value) {
        out.value = *r.value;
        out.ell = r.ell;
        out.h = r.h;
      }
      return out;
    });
    std::vector<double> ell;
    std::vector<double> ell_frac;
    std::vector<double> h;
    std::vector<double> wv;
    std::vector<double> scaled;
    std::size_t unreachable = 0;
    const double bn = heavy ? b_n(dist, n) : 1.0;
    for (const Trial& t : rows) {
      if (t.value == kNegInf) {
        ++unreachable;
        continue;
      }
      ell.push_back(static_cast<double>(t.ell));
      ell_frac.push_back(static_cast<double>(t.ell) / static_cast<double>(n));
      h.push_back(t.h);
      wv.push_back(t.value);
      if (heavy) scaled.push_back(p_factor * t.value / bn);
    }
    const auto nd = static_cast<double>(n);
    rep.summaries.push_back(summarize(n, "ell", ell, unreachable, bootstrap_seed(seed, 4 * g)));
    rep.summaries.push_back(summarize(n, "h", h, unreachable, bootstrap_seed(seed, 4 * g + 1)));
    rep.summaries.push_back(summarize(n, "w", wv, unreachable, bootstrap_seed(seed, 4 * g + 2)));
    rep.summaries.push_back(
        summarize(n, "ell/n", ell_frac, unreachable, bootstrap_seed(seed, 4 * g + 3)));
    if (heavy) rep.summaries.push_back(summarize(n, "w/b_n", scaled, unreachable, std::nullopt));
    if (!ell.empty()) {
      ell_pts.emplace_back(nd, rep.find("ell", n)->median->estimate);
      h_pts.emplace_back(nd, rep.find("h", n)->median->estimate);
      w_pts.emplace_back(nd, rep.find("w", n)->mean);
    }
  }

  std::optional<double> edge_target;
  if (s && *s > 2.0) edge_target = 1.0 / (*s - 1.0);
  std::optional<double> w_target;
  if (heavy) w_target = 2.0 / *s;
  auto add_fit = [&](const char* name, const std::vector<std::pair<double, double>>& pts,
                     std::optional<double> target) {
    if (pts.size() < 2) return;
    try {
      rep.fits.push_back({name, stats::fit_loglog(pts), target});
    } catch (const DomainError&) {
      rep.notes.push_back(std::string(name) + ": skipped, non-positive values");
    }
  };
  add_fit("log_median_ell_vs_log_n", ell_pts, edge_target);
  add_fit("log_median_h_vs_log_n", h_pts, edge_target);
  add_fit("log_mean_w_vs_log_n", w_pts, w_target);
  if (heavy && p_model.is_constant() && p_model.p() < 1.0) {
    rep.notes.push_back("w/b_n scaled by p^{-1/s} = " + fmt(p_factor));
  }
  return rep;
}

std::vector<double> continuum_reference(double s, std::size_t k, std::size_t count,
                                        std::uint64_t master_seed, unsigned workers) {
  return reference_sample(s, k, count, master_seed, resolve_workers(workers)).wk;
}

ExperimentReport run_compare_continuum(double s, double p, const std::vector<Vertex>& n_grid,
                                       std::size_t trials, std::size_t k, std::uint64_t seed,
                                       const RunOptions& opts, std::size_t reference_count) {
  if (!(s > 0.0 && s < 2.0)) throw ConfigError("compare: s must lie in (0, 2)");
  if (!(p > 0.0 && p <= 1.0)) throw ConfigError("compare: p must lie in (0, 1]");
  if (k < 2) throw ConfigError("compare: k must be >= 2");
  check_grid(n_grid, 1, "compare");
  check_trials(trials, "compare");
  const unsigned workers = resolve_workers(opts.workers);
  const std::size_t refs = reference_count == 0 ? trials : reference_count;
  const WeightDistribution dist = WeightDistribution::pareto(s);
  const PModel p_model = PModel::constant(p);

  ExperimentReport rep;
  rep.experiment = "compare";
  rep.master_seed = seed;
  rep.config = base_config("compare", dist, p_model, seed);
  rep.config["s"] = s;
  rep.config["n_grid"] = n_grid;
  rep.config["trials"] = trials;
  rep.config["k"] = k;
  rep.config["reference_count"] = refs;

  const ReferenceSample ref = reference_sample(s, k, refs, seed, workers);
  rep.summaries.push_back(summarize(0, "w^k", ref.wk, 0, bootstrap_seed(seed, 0)));
  rep.summaries.push_back(summarize(0, "w^k-w^(k/2)", ref.increment, 0, std::nullopt));
  rep.summaries.push_back(summarize(0, "U_k", ref.tail_bound, 0, std::nullopt));

  const double factor = std::pow(p, -1.0 / s);
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    const Vertex n = n_grid[g];
    const double bn = b_n(dist, n);
    const auto values = detail::parallel_map<double>(trials, workers, [&](std::size_t t) {
      const auto w = GraphWindow::generate(n, p_model, dist, trial_seed(seed, g * trials + t));
      return total_passage(w);
    });
    std::vector<double> scaled;
    std::size_t unreachable = 0;
    for (double v : values) {
      if (v == kNegInf) {
        ++unreachable;
      } else {
        scaled.push_back(factor * v / bn);
      }
    }
    rep.summaries.push_back(
        summarize(n, "scaled_w", scaled, unreachable, bootstrap_seed(seed, g + 1)));
    if (!scaled.empty()) {
      rep.comparisons.push_back(
          {"ks_vs_continuum", n, stats::ks_statistic(scaled, ref.wk), scaled.size(), ref.wk.size()});
    }
  }
  if (rep.comparisons.size() >= 2) {
    const double first = rep.comparisons.front().ks;
    const double last = rep.comparisons.back().ks;
    rep.checks.push_back({"ks_decreases", last < first,
                          "KS first " + fmt(first) + ", last " + fmt(last)});
  }
  return rep;
}

}  // namespace lpp
