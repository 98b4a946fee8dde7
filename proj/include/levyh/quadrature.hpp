#pragma once

#include <functional>
#include <vector>

namespace levyh {

struct QuadResult {
  double value = 0.0;
  double err = 0.0;
  bool converged = true;

  QuadResult& operator+=(const QuadResult& o) {
    value += o.value;
    err += o.err;
    converged = converged && o.converged;
    return *this;
  }
};

/// Adaptive quadrature of f over (lo, hi). Declared endpoint singularities
/// switch to a double-exponential rule that never evaluates the endpoints.
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double lo, double hi, double tol = 1e-10,
                              bool singular_lo = false,
                              bool singular_hi = false);

/// Wynn epsilon extrapolation of a partial-sum sequence.
double wynn_epsilon(const std::vector<double>& partial_sums, double* err_est);

enum class Trig { Cos, Sin };

/// integral of g(x) * trig(z x) over (x0, x1) for smooth, eventually
/// decreasing g >= 0. Uses half-period panels with epsilon acceleration when
/// the interval spans many oscillations; g must be evaluable on [x0, inf)
/// (infinite-tail differences are taken analytically).
QuadResult oscillatory_integral(const std::function<double(double)>& g,
                                double z, Trig trig, double x0, double x1,
                                double tol = 1e-10);

}  // namespace levyh
