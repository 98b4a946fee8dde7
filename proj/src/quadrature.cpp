#include "levyh/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

namespace levyh {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
using G15 = boost::math::quadrature::gauss<double, 15>;

constexpr double kPi = 3.14159265358979323846;

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double lo, double hi, double tol,
                              bool singular_lo, bool singular_hi) {
  QuadResult r;
  if (hi <= lo) return r;
  try {
    if (singular_lo || singular_hi) {
      boost::math::quadrature::tanh_sinh<double> ts;
      double err = 0.0, l1 = 0.0;
      r.value = ts.integrate(f, lo, hi, std::sqrt(tol), &err, &l1);
      r.err = err * std::max(1.0, l1);
      r.converged = std::isfinite(r.value);
      return r;
    }
    double err = 0.0;
    r.value = GK::integrate(f, lo, hi, 14, tol, &err);
    r.err = err;
    r.converged = std::isfinite(r.value) &&
                  err <= 100.0 * tol * std::max(1.0, std::abs(r.value));
    return r;
  } catch (const std::exception&) {
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.err = std::numeric_limits<double>::infinity();
    r.converged = false;
    return r;
  }
}

double wynn_epsilon(const std::vector<double>& s, double* err_est) {
  const size_t n = s.size();
  if (n == 0) {
    if (err_est) *err_est = 0.0;
    return 0.0;
  }
  if (n == 1) {
    if (err_est) *err_est = std::abs(s[0]);
    return s[0];
  }
  std::vector<double> prev(n, 0.0);  // eps_{-1}
  std::vector<double> cur(s);        // eps_0
  double best = s.back();
  double best_err = std::abs(n >= 2 ? s[n - 1] - s[n - 2] : s[0]);
  for (size_t k = 1; k < n; ++k) {
    std::vector<double> next(n - k, 0.0);
    for (size_t i = 0; i + k < n; ++i) {
      double d = cur[i + 1] - cur[i];
      if (std::abs(d) < 1e-300) {
        // Converged exactly; the current entry is the answer.
        if (err_est) *err_est = 0.0;
        return cur[i + 1];
      }
      next[i] = prev[i + 1] + 1.0 / d;
    }
    prev.swap(cur);
    cur.swap(next);
    if (k % 2 == 0 && cur.size() >= 2) {
      double cand = cur.back();
      double e = std::abs(cur[cur.size() - 1] - cur[cur.size() - 2]);
      if (std::isfinite(cand) && e < best_err) {
        best = cand;
        best_err = e;
      }
    }
  }
  if (err_est) *err_est = best_err;
  return best;
}

namespace {

// Infinite alternating tail: integral of g(x) trig(z x) over (start, inf),
// summed over half-periods between consecutive zeros of the trig factor.
QuadResult osc_tail_to_inf(const std::function<double(double)>& g, double z,
                           Trig trig, double start, double tol) {
  QuadResult r;
  auto w = [&](double x) {
    return trig == Trig::Cos ? std::cos(z * x) : std::sin(z * x);
  };
  auto f = [&](double x) { return g(x) * w(x); };
  // First zero of the trig factor at or beyond `start`.
  const double phase0 = trig == Trig::Cos ? 0.5 * kPi : kPi;
  double k = std::ceil((start * z - phase0) / kPi + 1e-12);
  if (k < 0) k = 0;
  double x_zero = (phase0 + k * kPi) / z;
  double head = 0.0;
  if (x_zero > start) head = G15::integrate(f, start, x_zero);

  const int max_panels = 96;
  std::vector<double> partials;
  partials.reserve(max_panels);
  double sum = 0.0;
  double a = x_zero;
  double last_term = std::numeric_limits<double>::infinity();
  for (int i = 0; i < max_panels; ++i) {
    double b = a + kPi / z;
    double term = G15::integrate(f, a, b);
    sum += term;
    partials.push_back(sum);
    a = b;
    last_term = std::abs(term);
    if (last_term < 1e-3 * tol && i >= 3) break;
  }
  double acc_err = 0.0;
  double tail = wynn_epsilon(partials, &acc_err);
  r.value = head + tail;
  r.err = acc_err + 1e-3 * tol;
  r.converged = std::isfinite(r.value) &&
                (acc_err <= tol || last_term <= tol);
  return r;
}

}  // namespace

QuadResult oscillatory_integral(const std::function<double(double)>& g,
                                double z, Trig trig, double x0, double x1,
                                double tol) {
  QuadResult r;
  if (x1 <= x0) return r;
  auto f = [&](double x) {
    return g(x) * (trig == Trig::Cos ? std::cos(z * x) : std::sin(z * x));
  };
  if (z <= 0.0 || (x1 - x0) * z <= 24.0 * kPi) {
    return integrate_adaptive(f, x0, x1, tol);
  }
  QuadResult from_x0 = osc_tail_to_inf(g, z, trig, x0, tol);
  QuadResult from_x1 =
      std::isfinite(x1) ? osc_tail_to_inf(g, z, trig, x1, tol) : QuadResult{};
  r.value = from_x0.value - from_x1.value;
  r.err = from_x0.err + from_x1.err;
  r.converged = from_x0.converged && from_x1.converged;
  return r;
}

}  // namespace levyh
