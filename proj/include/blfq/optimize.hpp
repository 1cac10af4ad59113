// Copyright 2026 The blfq-vqe Authors
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
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "blfq/errors.hpp"

namespace blfq::opt {

enum class Method { Simplex, LinearTrustRegion };

inline std::string to_string(Method m) { return m == Method::Simplex ? "simplex" : "linear-trust-region"; }

inline Method method_from_string(const std::string& s) {
  if (s == "simplex" || s == "nelder-mead") return Method::Simplex;
  if (s == "linear-trust-region" || s == "cobyla") return Method::LinearTrustRegion;
  throw ConfigError("unknown optimizer '" + s + "' (expected simplex or linear-trust-region)");
}

struct OptimizerConfig {
  Method method = Method::Simplex;
  int max_iterations = 200;
  /// Absolute tolerance on the spread of function values.
  double ftol = 1.0;
  /// Tolerance on the simplex diameter or the final trust radius.
  double xtol = 1e-3;
  double initial_step = 0.5;
  int restarts = 0;

  void validate() const {
    if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
    if (!(ftol > 0.0)) throw ConfigError("function tolerance must be positive");
    if (!(xtol > 0.0)) throw ConfigError("parameter tolerance must be positive");
    if (!(initial_step > 0.0)) throw ConfigError("initial step must be positive");
    if (restarts < 0) throw ConfigError("restart count must be nonnegative");
  }
};

struct TracePoint {
  int iteration;
  double best_value;
};

struct OptimizeResult {
  Eigen::VectorXd x;
  double value = std::numeric_limits<double>::infinity();
  std::vector<TracePoint> trace;  // best-so-far, one entry per iteration
  bool converged = false;
  int iterations = 0;
  int evaluations = 0;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

namespace detail {

struct Counted {
  const Objective& f;
  int evaluations = 0;
  double operator()(const Eigen::VectorXd& x) {
    ++evaluations;
    const double v = f(x);
    if (!std::isfinite(v)) throw NumericalError("objective returned a non-finite value");
    return v;
  }
};

inline void record(OptimizeResult& r, int iteration, double best) {
  const double prev = r.trace.empty() ? best : r.trace.back().best_value;
  r.trace.push_back({iteration, std::min(prev, best)});
}

// Nelder-Mead with dimension-adaptive coefficients (Gao and Han).
inline OptimizeResult simplex(const Objective& f, const Eigen::VectorXd& x0, const OptimizerConfig& cfg,
                              int iteration_offset) {
  const Eigen::Index n = x0.size();
  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 1.0 / (2.0 * dn);
  const double delta = 1.0 - 1.0 / dn;

  Counted eval{f};
  std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> vals(static_cast<std::size_t>(n + 1));
  for (Eigen::Index i = 0; i < n; ++i) pts[static_cast<std::size_t>(i + 1)](i) += cfg.initial_step;
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = eval(pts[i]);

  OptimizeResult r;
  std::vector<std::size_t> order(pts.size());
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];

    double diameter = 0.0;
    for (const auto& p : pts) diameter = std::max(diameter, (p - pts[best]).cwiseAbs().maxCoeff());
    if (vals[worst] - vals[best] <= cfg.ftol && diameter <= cfg.xtol) {
      r.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= dn;

    const Eigen::VectorXd xr = centroid + alpha * (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const Eigen::VectorXd xe = centroid + beta * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
    } else {
      const bool outside = fr < vals[worst];
      const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + gamma * (xr - centroid))
                                         : Eigen::VectorXd(centroid - gamma * (centroid - pts[worst]));
      const double fc = eval(xc);
      if (fc < (outside ? fr : vals[worst])) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        for (std::size_t i = 0; i < pts.size(); ++i) {
          if (i == best) continue;
          pts[i] = pts[best] + delta * (pts[i] - pts[best]);
          vals[i] = eval(pts[i]);
        }
      }
    }
    r.iterations = it;
    record(r, iteration_offset + it, *std::min_element(vals.begin(), vals.end()));
  }
  const auto bi = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  r.x = pts[bi];
  r.value = vals[bi];
  r.evaluations = eval.evaluations;
  return r;
}

// Derivative-free trust region on a linear model interpolating n + 1 points.
inline OptimizeResult linear_trust_region(const Objective& f, const Eigen::VectorXd& x0, const OptimizerConfig& cfg,
                                          int iteration_offset) {
  const Eigen::Index n = x0.size();
  Counted eval{f};
  double rho = cfg.initial_step;
  Eigen::VectorXd best = x0;
  double fbest = eval(best);
  std::vector<Eigen::VectorXd> pts;
  std::vector<double> vals;
  auto rebuild = [&]() {
    pts.assign(static_cast<std::size_t>(n), best);
    vals.assign(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      pts[static_cast<std::size_t>(i)](i) += rho;
      vals[static_cast<std::size_t>(i)] = eval(pts[static_cast<std::size_t>(i)]);
    }
  };
  rebuild();

  OptimizeResult r;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    Eigen::MatrixXd d(n, n);
    Eigen::VectorXd df(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      d.row(i) = (pts[static_cast<std::size_t>(i)] - best).transpose();
      df(i) = vals[static_cast<std::size_t>(i)] - fbest;
    }
    const Eigen::VectorXd g = d.colPivHouseholderQr().solve(df);
    double spread = 0.0;
    for (double v : vals) spread = std::max(spread, std::abs(v - fbest));

    bool improved = false;
    if (g.allFinite() && g.norm() > 0.0) {
      const Eigen::VectorXd trial = best - rho * g / g.norm();
      const double ft = eval(trial);
      if (ft < fbest) {
        // Replace the interpolation point farthest from the new centre.
        std::size_t far = 0;
        double dist = -1.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
          const double di = (pts[i] - trial).norm();
          if (di > dist) dist = di, far = i;
        }
        pts[far] = best;
        vals[far] = fbest;
        best = trial;
        fbest = ft;
        improved = true;
      }
    }
    r.iterations = it;
    record(r, iteration_offset + it, fbest);
    if (!improved) {
      if (rho <= cfg.xtol && spread <= cfg.ftol) {
        r.converged = true;
        break;
      }
      rho = std::max(0.5 * rho, 0.5 * cfg.xtol);
      rebuild();
    }
  }
  r.x = best;
  r.value = fbest;
  r.evaluations = eval.evaluations;
  return r;
}

}  // namespace detail

/// Derivative-free minimization from x0. With restarts > 0 the search is
/// restarted from the best point with a fresh simplex or trust region.
inline OptimizeResult minimize(const Objective& f, const Eigen::VectorXd& x0, const OptimizerConfig& cfg) {
  cfg.validate();
  if (x0.size() < 1) throw DimensionError("starting point must be nonempty");
  OptimizeResult total;
  Eigen::VectorXd start = x0;
  for (int round = 0; round <= cfg.restarts; ++round) {
    const int offset = total.iterations;
    OptimizeResult r = cfg.method == Method::Simplex ? detail::simplex(f, start, cfg, offset)
                                                     : detail::linear_trust_region(f, start, cfg, offset);
    total.iterations += r.iterations;
    total.evaluations += r.evaluations;
    for (const auto& t : r.trace) detail::record(total, t.iteration, t.best_value);
    if (r.value < total.value) {
      total.x = r.x;
      total.value = r.value;
    }
    total.converged = r.converged;
    start = total.x;
  }
  return total;
}

}  // namespace blfq::opt
