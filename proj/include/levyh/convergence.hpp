#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <tuple>
#include <vector>

namespace levyh {

/// Outcome of an improper-integral estimate: geometric partials plus a
/// log-log tail-exponent fit.
struct ConvergenceReport {
  enum class Verdict { Converges, Diverges, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  double value = 0.0;  // tail-corrected estimate (Converges)
  double err = 0.0;
  double tail_exponent = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::pair<double, double>> samples;  // (upper limit, partial)

  bool converges() const { return verdict == Verdict::Converges; }
  bool diverges() const { return verdict == Verdict::Diverges; }
};

struct ImproperOptions {
  std::vector<double> limits = {1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
  double tol = 1e-9;          // per-segment quadrature tolerance
  double margin = 0.05;       // tail-exponent dead band around -1
  double cauchy_rel = 1e-4;   // relative Cauchy tolerance on corrected partials
};

/// integral of f over (lo, inf): partial integrals at geometric upper limits,
/// tail exponent from a log-log fit of per-decade means of f (robust to
/// oscillatory integrands). Converges iff the exponent is below -1 - margin
/// and the tail-corrected partials are Cauchy.
ConvergenceReport integrate_improper(const std::function<double(double)>& f,
                                     double lo,
                                     const ImproperOptions& opt = {});

/// Same verdict machinery with a caller-supplied segment integrator
/// (value, err, ok); `fsample` provides pointwise values for the tail fit.
ConvergenceReport integrate_improper_segments(
    const std::function<std::tuple<double, double, bool>(double, double)>&
        segment,
    const std::function<double(double)>& fsample, double lo,
    const ImproperOptions& opt = {});

/// liminf estimation of g(eps) on the dyadic grid eps = 2^{-j}.
struct LiminfReport {
  double estimate = 0.0;     // min of the ratio over the tail window
  double trend_slope = 0.0;  // fitted d log(ratio) / d log(1/eps) on the window
  std::vector<std::pair<double, double>> grid;  // (eps, ratio)
};

struct LiminfOptions {
  int j_lo = 4;
  int j_hi = 40;
  int window = 8;
};

LiminfReport liminf_ratio(const std::function<double(double)>& g,
                          const LiminfOptions& opt = {});

/// Verdict for h(lambda) as lambda -> inf on a geometric grid.
struct LimitReport {
  enum class Verdict { TendsToZero, Positive, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  double floor = 0.0;  // Positive only
  std::vector<std::pair<double, double>> values;
};

struct LimitOptions {
  std::vector<double> lambda_grid = {1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
  double tol = 1e-4;
};

LimitReport limit_lambda(const std::function<double(double)>& h,
                         const LimitOptions& opt = {});

/// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace levyh
