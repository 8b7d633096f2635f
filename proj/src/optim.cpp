// Copyright 2026 The miagen Authors
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

#include "mia/optim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "mia/io_util.hpp"

namespace mia {

void LbfgsConfig::validate() const {
  require(max_iters >= 1, ErrorCode::invalid_argument, "lbfgs: max_iters >= 1");
  require(memory >= 1, ErrorCode::invalid_argument, "lbfgs: memory >= 1");
  require(0.0 < wolfe_c1 && wolfe_c1 < wolfe_c2 && wolfe_c2 < 1.0,
          ErrorCode::invalid_argument, "lbfgs: need 0 < c1 < c2 < 1");
}

const char* termination_reason_name(TerminationReason r) {
  switch (r) {
    case TerminationReason::grad_tol: return "grad_tol";
    case TerminationReason::max_iters: return "max_iters";
    case TerminationReason::line_search_failure: return "line_search_failure";
    case TerminationReason::no_improvement: return "no_improvement";
  }
  return "unknown";
}

namespace {

struct Counted1d {
  const Objective* f;
  const Vec* origin;
  const Vec* direction;
  long* evals;
  mutable Vec scratch;

  double operator()(double alpha) const {
    scratch = *origin;
    axpy(alpha, *direction, scratch);
    ++*evals;
    return (*f)(scratch);
  }
};

struct Bracket {
  double a, b, c;
  double fa, fb, fc;
  bool ok = false;
};

constexpr double kGolden = 1.618033988749895;
constexpr double kBracketLimit = 100.0;

// Expand downhill from (0, step) until the middle point is a strict minimum.
Bracket bracket_minimum(const Counted1d& f1d, double f0, double step) {
  Bracket br;
  double a = 0.0, fa = f0;
  double b = step, fb = f1d(b);
  if (fb > fa) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = b + kGolden * (b - a);
  double fc = f1d(c);
  int guard = 0;
  while (fb >= fc && guard++ < 60) {
    if (!std::isfinite(fc)) return br;
    double d = c + kGolden * (c - b);
    if (std::abs(d) > kBracketLimit * std::max(1.0, std::abs(step))) {
      return br;
    }
    a = b; fa = fb;
    b = c; fb = fc;
    c = d;
    fc = f1d(c);
  }
  if (!(fb <= fa && fb <= fc)) return br;
  br = {a, b, c, fa, fb, fc, true};
  return br;
}

struct LineMinResult {
  double alpha = 0.0;
  double value = 0.0;
  bool ok = false;
};

// Brent refinement (parabolic interpolation with golden-section fallback)
// inside an existing bracket.
LineMinResult brent_refine(const Counted1d& f1d, const Bracket& br, double tol) {
  const double cgold = 0.3819660112501051;
  const double zeps = 1e-18;
  double a = std::min(br.a, br.c);
  double b = std::max(br.a, br.c);
  double x = br.b, w = br.b, v = br.b;
  double fx = br.fb, fw = br.fb, fv = br.fb;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = tol * std::abs(x) + zeps;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) {
      return {x, fx, true};
    }
    bool take_golden = true;
    if (std::abs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double etemp = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2)
          d = std::copysign(tol1, xm - x);
        take_golden = false;
      }
    }
    if (take_golden) {
      e = (x >= xm) ? a - x : b - x;
      d = cgold * e;
    }
    const double u = (std::abs(d) >= tol1) ? x + d : x + std::copysign(tol1, d);
    const double fu = f1d(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx, true};
}

LineMinResult line_minimize(const Counted1d& f1d, double f0, double tol) {
  Bracket br = bracket_minimum(f1d, f0, 1.0);
  if (!br.ok) return {};
  LineMinResult res = brent_refine(f1d, br, tol);
  if (!res.ok || !std::isfinite(res.value)) return {};
  if (res.value > f0) return {0.0, f0, true};
  return res;
}

}  // namespace

OptimizationTrace powell_minimize(const Objective& objective, Vec z0,
                                  const PowellConfig& cfg) {
  require(cfg.max_iters >= 1, ErrorCode::invalid_argument,
          "powell: max_iters >= 1");
  const std::size_t n = z0.size();
  require(n >= 1, ErrorCode::invalid_argument, "powell: empty start point");

  OptimizationTrace trace;
  Vec x = std::move(z0);
  double fx = objective(x);
  ++trace.function_evals;
  check_finite(fx, "powell objective at z0");
  trace.iterates.emplace_back(0, fx);
  trace.points.push_back(x);

  std::vector<Vec> dirs(n, Vec(n, 0.0));
  auto reset_dirs = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(dirs[i].begin(), dirs[i].end(), 0.0);
      dirs[i][i] = 1.0;
    }
  };
  reset_dirs();
  const int reset_period =
      cfg.direction_reset_period > 0 ? cfg.direction_reset_period
                                     : static_cast<int>(n);

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    if (iter > 1 && (iter - 1) % reset_period == 0) reset_dirs();

    const Vec x_start = x;
    const double f_start = fx;
    double biggest_drop = 0.0;
    std::size_t biggest_idx = 0;
    bool any_search_ok = false;

    for (std::size_t i = 0; i < n; ++i) {
      Counted1d f1d{&objective, &x, &dirs[i], &trace.function_evals, {}};
      LineMinResult lm = line_minimize(f1d, fx, cfg.line_search_tol);
      if (!lm.ok) continue;
      any_search_ok = true;
      const double drop = fx - lm.value;
      if (drop > biggest_drop) {
        biggest_drop = drop;
        biggest_idx = i;
      }
      axpy(lm.alpha, dirs[i], x);
      fx = lm.value;
    }

    Vec net_dir = sub(x, x_start);
    if (norm(net_dir) > 0.0) {
      Counted1d f1d{&objective, &x, &net_dir, &trace.function_evals, {}};
      LineMinResult lm = line_minimize(f1d, fx, cfg.line_search_tol);
      if (lm.ok) {
        any_search_ok = true;
        axpy(lm.alpha, net_dir, x);
        fx = lm.value;
        dirs[biggest_idx] = net_dir;
      }
    }

    trace.iterates.emplace_back(iter, fx);
    trace.points.push_back(x);

    if (!any_search_ok) {
      trace.converged = false;
      trace.reason = TerminationReason::line_search_failure;
      break;
    }
    if (2.0 * (f_start - fx) <=
        cfg.line_search_tol * (std::abs(f_start) + std::abs(fx)) + 1e-20) {
      trace.converged = true;
      trace.reason = TerminationReason::no_improvement;
      break;
    }
    if (iter == cfg.max_iters) {
      trace.converged = false;
      trace.reason = TerminationReason::max_iters;
    }
  }

  trace.final_point = std::move(x);
  trace.final_value = fx;
  return trace;
}

Vec lbfgs_two_loop(const std::vector<std::pair<Vec, Vec>>& history,
                   const Vec& grad, double h0_scale) {
  Vec q = grad;
  const std::size_t m = history.size();
  std::vector<double> alpha(m, 0.0), rho(m, 0.0);
  for (std::size_t i = m; i-- > 0;) {
    const Vec& s = history[i].first;
    const Vec& y = history[i].second;
    rho[i] = 1.0 / dot(y, s);
    alpha[i] = rho[i] * dot(s, q);
    axpy(-alpha[i], y, q);
  }
  scale(q, h0_scale);
  for (std::size_t i = 0; i < m; ++i) {
    const Vec& s = history[i].first;
    const Vec& y = history[i].second;
    const double beta = rho[i] * dot(y, q);
    axpy(alpha[i] - beta, s, q);
  }
  return q;
}

namespace {

struct WolfeResult {
  double alpha = 0.0;
  double f = 0.0;
  Vec grad;
  bool ok = false;
};

// Strong Wolfe line search: expansion phase then bisection zoom
// (Nocedal-Wright style, interpolation replaced by bounded bisection).
WolfeResult wolfe_line_search(const Objective& objective,
                              const GradientFn& gradient, const Vec& x,
                              const Vec& d, double f0, double dphi0,
                              const LbfgsConfig& cfg, OptimizationTrace& trace) {
  WolfeResult out;
  if (dphi0 >= 0.0) return out;

  auto phi = [&](double a, Vec& point) {
    point = x;
    axpy(a, d, point);
    ++trace.function_evals;
    return objective(point);
  };
  auto dphi = [&](const Vec& point, Vec& g_out) {
    ++trace.gradient_evals;
    g_out = gradient(point);
    return dot(g_out, d);
  };

  const double c1 = cfg.wolfe_c1, c2 = cfg.wolfe_c2;
  Vec pt, g;

  double alpha_prev = 0.0, f_prev = f0;
  double alpha = 1.0;
  double alpha_lo = 0.0, alpha_hi = 0.0;
  double f_lo = f0;
  bool bracketed = false;

  for (int i = 0; i < 30 && !bracketed; ++i) {
    const double fa = phi(alpha, pt);
    if (!std::isfinite(fa) || fa > f0 + c1 * alpha * dphi0 ||
        (i > 0 && fa >= f_prev)) {
      alpha_lo = alpha_prev; f_lo = f_prev;
      alpha_hi = alpha;
      bracketed = true;
      break;
    }
    const double da = dphi(pt, g);
    if (std::abs(da) <= -c2 * dphi0) {
      out = {alpha, fa, std::move(g), true};
      return out;
    }
    if (da >= 0.0) {
      alpha_lo = alpha; f_lo = fa;
      alpha_hi = alpha_prev;
      bracketed = true;
      break;
    }
    alpha_prev = alpha; f_prev = fa;
    alpha *= 2.0;
    if (alpha > 1e12) return out;
  }
  if (!bracketed) return out;

  for (int j = 0; j < 60; ++j) {
    alpha = 0.5 * (alpha_lo + alpha_hi);
    const double fa = phi(alpha, pt);
    if (!std::isfinite(fa) || fa > f0 + c1 * alpha * dphi0 || fa >= f_lo) {
      alpha_hi = alpha;
    } else {
      const double da = dphi(pt, g);
      if (std::abs(da) <= -c2 * dphi0) {
        out = {alpha, fa, std::move(g), true};
        return out;
      }
      if (da * (alpha_hi - alpha_lo) >= 0.0) alpha_hi = alpha_lo;
      alpha_lo = alpha; f_lo = fa;
    }
    if (std::abs(alpha_hi - alpha_lo) <= 1e-16 * std::max(1.0, std::abs(alpha_lo)))
      break;
  }
  return out;
}

}  // namespace

OptimizationTrace lbfgs_minimize(const Objective& objective,
                                 const GradientFn& gradient, Vec z0,
                                 const LbfgsConfig& cfg) {
  cfg.validate();
  require(!z0.empty(), ErrorCode::invalid_argument, "lbfgs: empty start point");

  OptimizationTrace trace;
  Vec x = std::move(z0);
  double fx = objective(x);
  ++trace.function_evals;
  check_finite(fx, "lbfgs objective at z0");
  Vec g = gradient(x);
  ++trace.gradient_evals;
  check_finite(g, "lbfgs gradient at z0");
  trace.iterates.emplace_back(0, fx);
  trace.points.push_back(x);

  std::vector<std::pair<Vec, Vec>> history;
  double h0 = 1.0;

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    if (norm(g) <= cfg.grad_tol) {
      trace.converged = true;
      trace.reason = TerminationReason::grad_tol;
      break;
    }

    Vec d = lbfgs_two_loop(history, g, h0);
    scale(d, -1.0);
    double dphi0 = dot(g, d);
    if (!(dphi0 < 0.0)) {
      // Curvature information unusable; restart from steepest descent.
      history.clear();
      d = g;
      scale(d, -1.0);
      dphi0 = dot(g, d);
    }

    WolfeResult ls =
        wolfe_line_search(objective, gradient, x, d, fx, dphi0, cfg, trace);
    if (!ls.ok && !history.empty()) {
      // One steepest-descent retry before giving up.
      history.clear();
      d = g;
      scale(d, -1.0);
      dphi0 = dot(g, d);
      ls = wolfe_line_search(objective, gradient, x, d, fx, dphi0, cfg, trace);
    }
    if (!ls.ok) {
      trace.converged = norm(g) <= cfg.grad_tol;
      trace.reason = TerminationReason::line_search_failure;
      break;
    }

    Vec x_new = x;
    axpy(ls.alpha, d, x_new);
    Vec s = sub(x_new, x);
    Vec y = sub(ls.grad, g);
    const double sy = dot(s, y);
    if (sy > 1e-12 * norm(s) * norm(y)) {
      history.emplace_back(std::move(s), std::move(y));
      if (static_cast<int>(history.size()) > cfg.memory)
        history.erase(history.begin());
      const auto& last = history.back();
      h0 = dot(last.first, last.second) / dot(last.second, last.second);
    }

    x = std::move(x_new);
    fx = ls.f;
    g = std::move(ls.grad);
    trace.iterates.emplace_back(iter, fx);
    trace.points.push_back(x);

    if (iter == cfg.max_iters) {
      trace.converged = norm(g) <= cfg.grad_tol;
      trace.reason = trace.converged ? TerminationReason::grad_tol
                                     : TerminationReason::max_iters;
    }
  }
  if (trace.iterates.size() == 1 && norm(g) <= cfg.grad_tol) {
    trace.converged = true;
    trace.reason = TerminationReason::grad_tol;
  }

  trace.final_point = std::move(x);
  trace.final_value = fx;
  return trace;
}

void adam_step(Vec& params, const Vec& grads, AdamState& state, double lr,
               double beta1, double beta2, double eps) {
  require(params.size() == grads.size(), ErrorCode::dimension,
          "adam_step: size mismatch");
  if (state.m.empty()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
  }
  require(state.m.size() == params.size(), ErrorCode::dimension,
          "adam_step: state size mismatch");
  state.t += 1;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * grads[i];
    state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * grads[i] * grads[i];
    const double m_hat = state.m[i] / bc1;
    const double v_hat = state.v[i] / bc2;
    params[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
  }
}

void rmsprop_step(Vec& params, const Vec& grads, RmspropState& state,
                  double lr, double decay, double eps) {
  require(params.size() == grads.size(), ErrorCode::dimension,
          "rmsprop_step: size mismatch");
  if (state.v.empty()) state.v.assign(params.size(), 0.0);
  require(state.v.size() == params.size(), ErrorCode::dimension,
          "rmsprop_step: state size mismatch");
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.v[i] = decay * state.v[i] + (1.0 - decay) * grads[i] * grads[i];
    params[i] -= lr * grads[i] / (std::sqrt(state.v[i]) + eps);
  }
}

std::string trace_to_csv(const OptimizationTrace& trace) {
  std::string out = "iteration,objective\n";
  for (const auto& [iter, value] : trace.iterates) {
    out += std::to_string(iter);
    out += ',';
    out += format_double(value);
    out += '\n';
  }
  return out;
}

void trace_save_csv(const OptimizationTrace& trace, const std::string& path) {
  write_file(path, trace_to_csv(trace));
}

}  // namespace mia
