// Copyright 2026 The bqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bqec/errors.hpp"
#include "bqec/ft/exrec_sim.hpp"

namespace bqec::ft {

struct SweepPoint {
  double p_gate = 0;
  double p_mem = 0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;

  double rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(trials);
  }
};

struct SweepResult {
  std::vector<SweepPoint> points;
  double p_mem = 0;
  std::uint64_t seed = 0;
};

/// Sweep settings. Unset preparation/measurement rates follow p_gate.
struct SweepConfig {
  double p_start = 1e-4;
  std::size_t points = 15;
  std::size_t per_decade = 20;
  double p_mem = 1e-5;
  std::optional<double> p_prep;
  std::optional<double> p_meas;
  double p_ebit = 0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

inline std::vector<double> sweep_grid(double p_start, std::size_t points, std::size_t per_decade) {
  std::vector<double> g;
  for (std::size_t k = 0; k < points; ++k) {
    g.push_back(p_start * std::pow(10.0, static_cast<double>(k) / static_cast<double>(per_decade)));
  }
  return g;
}

inline NoiseModel sweep_noise(const SweepConfig &cfg, double p_gate) {
  NoiseModel m;
  m.p_gate = p_gate;
  m.p_mem = cfg.p_mem;
  m.p_prep = cfg.p_prep.value_or(p_gate);
  m.p_meas = cfg.p_meas.value_or(p_gate);
  m.p_ebit = cfg.p_ebit;
  return m;
}

inline SweepResult run_sweep(const ExRec &ex, const SweepConfig &cfg) {
  if (cfg.points == 0 || cfg.trials == 0) {
    throw ValidationError("sweep needs at least one point and one trial");
  }
  SweepResult out;
  out.p_mem = cfg.p_mem;
  out.seed = cfg.seed;
  const auto grid = sweep_grid(cfg.p_start, cfg.points, cfg.per_decade);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const TrialCounts tc = run_exrec_trials(ex, sweep_noise(cfg, grid[k]), cfg.trials, cfg.seed, k, cfg.threads);
    out.points.push_back(SweepPoint{grid[k], cfg.p_mem, tc.trials, tc.failures});
  }
  return out;
}

/// Wilson score interval for a binomial proportion.
inline std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials, double z = 1.96) {
  if (trials == 0) {
    return {0.0, 1.0};
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline constexpr const char *kSweepCsvHeader = "p_gate,p_mem,trials,failures,fail_rate,ci_low,ci_high";

inline std::string sweep_to_csv(const SweepResult &s) {
  std::string out = std::string(kSweepCsvHeader) + "\n";
  for (const auto &p : s.points) {
    const auto [lo, hi] = wilson_interval(p.failures, p.trials);
    out += format_double(p.p_gate) + "," + format_double(p.p_mem) + "," + std::to_string(p.trials) + "," +
           std::to_string(p.failures) + "," + format_double(p.rate()) + "," + format_double(lo) + "," +
           format_double(hi) + "\n";
  }
  return out;
}

/// Reads the CSV written by sweep_to_csv. Rate and interval columns are
/// recomputed from the counts, not trusted.
inline SweepResult sweep_from_csv(std::string_view text) {
  SweepResult s;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line[0] == '#') {
      continue;
    }
    if (!header) {
      if (line != kSweepCsvHeader) {
        throw ParseError("expected header '" + std::string(kSweepCsvHeader) + "'", line_no, 1);
      }
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) {
      cells.push_back(cell);
    }
    if (cells.size() != 7) {
      throw ParseError("expected 7 columns, got " + std::to_string(cells.size()), line_no, 1);
    }
    SweepPoint p;
    try {
      std::size_t used = 0;
      p.p_gate = std::stod(cells[0], &used);
      p.p_mem = std::stod(cells[1]);
      p.trials = std::stoull(cells[2]);
      p.failures = std::stoull(cells[3]);
    } catch (const std::exception &) {
      throw ParseError("malformed number", line_no, 1);
    }
    if (p.failures > p.trials) {
      throw ParseError("failures exceed trials", line_no, 1);
    }
    s.points.push_back(p);
  }
  if (!header) {
    throw ParseError("empty sweep file", line_no, 1);
  }
  if (!s.points.empty()) {
    s.p_mem = s.points.front().p_mem;
  }
  return s;
}

struct FitResult {
  double pseudothreshold = 0;
  double ci_low = 0;
  double ci_high = 0;
  double fit_a = 0;
  double fit_b = 0;
  std::size_t points_used = 0;
};

inline nlohmann::ordered_json fit_to_json(const FitResult &f) {
  nlohmann::ordered_json j;
  j["pseudothreshold"] = f.pseudothreshold;
  j["ci_low"] = f.ci_low;
  j["ci_high"] = f.ci_high;
  j["fit_a"] = f.fit_a;
  j["fit_b"] = f.fit_b;
  j["points_used"] = f.points_used;
  return j;
}

namespace detail {

struct Coeffs {
  double a = 0;
  double b = 0;
};

// Weighted least squares of f = a p^2 + b p, weights refined from the model
// variance f (1 - f) / N with a floor of 1 / N^2.
inline Coeffs wls_quadratic(const std::vector<double> &p, const std::vector<double> &f,
                            const std::vector<double> &n) {
  std::vector<double> var(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    var[i] = std::max(f[i] * (1 - f[i]), 1.0 / n[i]) / n[i];
  }
  Coeffs c;
  for (int iter = 0; iter < 8; ++iter) {
    double s44 = 0, s33 = 0, s22 = 0, s2f = 0, s1f = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double w = 1.0 / var[i];
      const double p2 = p[i] * p[i];
      s44 += w * p2 * p2;
      s33 += w * p2 * p[i];
      s22 += w * p2;
      s2f += w * p2 * f[i];
      s1f += w * p[i] * f[i];
    }
    const double det = s44 * s22 - s33 * s33;
    if (!(std::abs(det) > 0)) {
      throw DegenerateFitError("singular normal equations");
    }
    c.a = (s2f * s22 - s1f * s33) / det;
    c.b = (s44 * s1f - s33 * s2f) / det;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double m = std::clamp(c.a * p[i] * p[i] + c.b * p[i], 0.0, 1.0);
      var[i] = std::max(m * (1 - m), 1.0 / n[i]) / n[i];
    }
  }
  return c;
}

inline std::optional<double> crossing(const Coeffs &c) {
  if (!(c.a > 0) || !(c.b < 1 - 1e-9)) {
    return std::nullopt;
  }
  return (1 - c.b) / c.a;
}

}  // namespace detail

/// Fits f(p) = a p^2 + b p to the sweep and returns the crossing with f = p,
/// with a percentile interval from a parametric binomial bootstrap.
inline FitResult fit_pseudothreshold(const SweepResult &s, std::size_t bootstrap = 1000, std::uint64_t seed = 1) {
  std::size_t nonzero = 0;
  std::vector<double> p, f, n;
  for (const auto &pt : s.points) {
    if (pt.trials == 0) {
      continue;
    }
    nonzero += pt.failures > 0;
    p.push_back(pt.p_gate);
    f.push_back(pt.rate());
    n.push_back(static_cast<double>(pt.trials));
  }
  if (nonzero < 5) {
    throw InsufficientDataError("need at least 5 sweep points with failures, got " + std::to_string(nonzero));
  }
  const detail::Coeffs c = detail::wls_quadratic(p, f, n);
  const auto root = detail::crossing(c);
  if (!root) {
    throw DegenerateFitError("fitted curve does not cross f(p) = p (a = " + format_double(c.a) +
                             ", b = " + format_double(c.b) + ")");
  }
  FitResult out;
  out.pseudothreshold = *root;
  out.fit_a = c.a;
  out.fit_b = c.b;
  out.points_used = p.size();

  std::mt19937_64 rng(seed);
  std::vector<double> boot;
  std::vector<double> fb(p.size());
  for (std::size_t r = 0; r < bootstrap; ++r) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double m = std::clamp(c.a * p[i] * p[i] + c.b * p[i], 0.0, 1.0);
      std::binomial_distribution<std::uint64_t> bin(static_cast<std::uint64_t>(n[i]), m);
      fb[i] = static_cast<double>(bin(rng)) / n[i];
    }
    try {
      if (auto rb = detail::crossing(detail::wls_quadratic(p, fb, n))) {
        boot.push_back(*rb);
      }
    } catch (const DegenerateFitError &) {
    }
  }
  if (boot.empty()) {
    out.ci_low = out.ci_high = out.pseudothreshold;
    return out;
  }
  std::sort(boot.begin(), boot.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(boot.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, boot.size() - 1);
    return boot[lo] + (pos - static_cast<double>(lo)) * (boot[hi] - boot[lo]);
  };
  out.ci_low = quantile(0.025);
  out.ci_high = quantile(0.975);
  return out;
}

}  // namespace bqec::ft
