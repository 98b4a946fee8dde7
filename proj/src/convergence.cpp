#include "levyh/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "levyh/errors.hpp"
#include "levyh/quadrature.hpp"

namespace levyh {

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = std::min(x.size(), y.size());
  if (n < 2) return 0.0;
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double num = 0, den = 0;
  for (size_t i = 0; i < n; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return den > 0 ? num / den : 0.0;
}

ConvergenceReport integrate_improper(const std::function<double(double)>& f,
                                     double lo, const ImproperOptions& opt) {
  auto segment = [&](double a, double b) {
    QuadResult q = integrate_adaptive(f, a, b, opt.tol, a == lo);
    return std::make_tuple(q.value, q.err, q.converged);
  };
  return integrate_improper_segments(segment, f, lo, opt);
}

ConvergenceReport integrate_improper_segments(
    const std::function<std::tuple<double, double, bool>(double, double)>&
        segment,
    const std::function<double(double)>& f, double lo,
    const ImproperOptions& opt) {
  ConvergenceReport rep;
  if (opt.limits.size() < 2)
    throw Error(ErrorCode::EvaluationFailure, "need at least two tail limits");

  double partial = 0.0;
  double quad_err = 0.0;
  double prev = lo;
  bool quad_ok = true;
  for (double up : opt.limits) {
    auto [v, e, ok] = segment(prev, up);
    quad_ok = quad_ok && ok;
    partial += v;
    quad_err += e;
    rep.samples.emplace_back(up, partial);
    prev = up;
  }
  if (!quad_ok) {
    rep.verdict = ConvergenceReport::Verdict::Inconclusive;
    return rep;
  }

  // Tail exponent from per-decade means over the last decades (means are
  // insensitive to oscillatory factors in f).
  const size_t ndec = std::min<size_t>(4, opt.limits.size() - 1);
  const int m = 32;
  std::vector<double> lx, ly;
  for (size_t d = 0; d < ndec; ++d) {
    double hi = opt.limits[opt.limits.size() - 1 - d];
    double dlo = opt.limits[opt.limits.size() - 2 - d];
    double mean = 0.0;
    for (int i = 0; i < m; ++i) {
      double t = (i + 0.5) / m;
      double zv = dlo * std::pow(hi / dlo, t);
      double fv = f(zv);
      if (!std::isfinite(fv)) {
        rep.verdict = ConvergenceReport::Verdict::Inconclusive;
        return rep;
      }
      mean += std::max(fv, 0.0);
    }
    mean /= m;
    if (mean > 1e-300) {
      lx.push_back(std::log(std::sqrt(dlo * hi)));
      ly.push_back(std::log(mean));
    }
  }

  if (lx.empty()) {
    // Integrand vanished on the tail: the partials are the full integral.
    rep.verdict = ConvergenceReport::Verdict::Converges;
    rep.value = partial;
    rep.err = quad_err + 1e-300;
    rep.tail_exponent = -std::numeric_limits<double>::infinity();
    return rep;
  }

  double p = ls_slope(lx, ly);
  rep.tail_exponent = p;

  if (p >= -1.0 + opt.margin) {
    rep.verdict = ConvergenceReport::Verdict::Diverges;
    return rep;
  }
  if (p < -1.0 - opt.margin && lx.size() >= 2) {
    // Fitted power envelope f_hat(u) = C u^p. A decade mean of C z^p over a
    // ratio-10 window centered at c equals C c^p k2(p); divide the fitted
    // line by k2 to anchor pointwise values.
    double mx = 0, my = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= lx.size();
    my /= ly.size();
    double intercept = my - p * mx;
    double k2 = 0.0;
    for (int i = 0; i < m; ++i)
      k2 += std::pow(10.0, p * ((i + 0.5) / m - 0.5));
    k2 /= m;
    auto f_hat = [&](double u) {
      return std::exp(intercept + p * std::log(u)) / k2;
    };
    // Tail-corrected partials must be Cauchy.
    auto corrected = [&](size_t idx) {
      double u = opt.limits[idx];
      return rep.samples[idx].second + f_hat(u) * u / (-p - 1.0);
    };
    size_t K = opt.limits.size() - 1;
    double pK = corrected(K), pK1 = corrected(K - 1);
    double cauchy = std::abs(pK - pK1);
    double tailK = pK - rep.samples[K].second;
    if (cauchy <= opt.cauchy_rel * std::max(1e-300, std::abs(pK))) {
      rep.verdict = ConvergenceReport::Verdict::Converges;
      rep.value = pK;
      rep.err = cauchy + 0.5 * std::abs(tailK) + quad_err;
      return rep;
    }
  }
  rep.verdict = ConvergenceReport::Verdict::Inconclusive;
  return rep;
}

LiminfReport liminf_ratio(const std::function<double(double)>& g,
                          const LiminfOptions& opt) {
  LiminfReport rep;
  if (opt.j_hi <= opt.j_lo)
    throw Error(ErrorCode::EvaluationFailure, "empty liminf grid");
  for (int j = opt.j_lo; j <= opt.j_hi; ++j) {
    double eps = std::ldexp(1.0, -j);
    double r = g(eps);
    if (!std::isfinite(r))
      throw Error(ErrorCode::EvaluationFailure,
                  "ratio not finite at eps = 2^-" + std::to_string(j));
    rep.grid.emplace_back(eps, r);
  }
  int w = std::min<int>(opt.window, static_cast<int>(rep.grid.size()));
  double est = std::numeric_limits<double>::infinity();
  std::vector<double> lx, ly;
  for (size_t i = rep.grid.size() - w; i < rep.grid.size(); ++i) {
    est = std::min(est, rep.grid[i].second);
    lx.push_back(-std::log(rep.grid[i].first));  // log(1/eps)
    ly.push_back(std::log(std::max(rep.grid[i].second, 1e-300)));
  }
  rep.estimate = est;
  rep.trend_slope = ls_slope(lx, ly);
  return rep;
}

LimitReport limit_lambda(const std::function<double(double)>& h,
                         const LimitOptions& opt) {
  LimitReport rep;
  if (opt.lambda_grid.size() < 3)
    throw Error(ErrorCode::EvaluationFailure, "lambda grid too short");
  for (double lam : opt.lambda_grid) {
    double v = h(lam);
    if (!std::isfinite(v))
      throw Error(ErrorCode::EvaluationFailure, "h(lambda) not finite");
    rep.values.emplace_back(lam, v);
  }
  size_t n = rep.values.size();
  double v1 = rep.values[n - 3].second;
  double v2 = rep.values[n - 2].second;
  double v3 = rep.values[n - 1].second;
  bool nonincreasing = v2 <= v1 + 1e-12 && v3 <= v2 + 1e-12;
  if (nonincreasing && v3 < opt.tol) {
    rep.verdict = LimitReport::Verdict::TendsToZero;
    return rep;
  }
  double hi = std::max({v1, v2, v3});
  double lo = std::min({v1, v2, v3});
  if (lo > 10.0 * opt.tol && hi <= 1.25 * lo) {
    rep.verdict = LimitReport::Verdict::Positive;
    rep.floor = lo;
    return rep;
  }
  rep.verdict = LimitReport::Verdict::Inconclusive;
  return rep;
}

}  // namespace levyh
