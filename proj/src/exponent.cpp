#include "levyh/exponent.hpp"

#include <bit>
#include <cmath>
#include <mutex>

#include "levyh/quadrature.hpp"

namespace levyh {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kAsym = 48.0;  // switch point to endpoint asymptotics

double one_minus_cos(double u) {
  double s = std::sin(0.5 * u);
  return 2.0 * s * s;
}

double u_minus_sin(double u) {
  if (std::abs(u) < 0.02) {
    double u2 = u * u;
    // u^3/6 (1 - u^2/20 (1 - u^2/42))
    return u * u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0));
  }
  return u - std::sin(u);
}

double cos_endpoint_tail(double s, double v, int depth);

// integral over (v, inf) of sin(u) u^{-s} du by repeated integration by parts.
double sin_endpoint_tail(double s, double v, int depth) {
  if (depth <= 0) return 0.0;
  return std::cos(v) * std::pow(v, -s) - s * cos_endpoint_tail(s + 1.0, v, depth - 1);
}

double cos_endpoint_tail(double s, double v, int depth) {
  if (depth <= 0) return 0.0;
  return -std::sin(v) * std::pow(v, -s) + s * sin_endpoint_tail(s + 1.0, v, depth - 1);
}

// integral over (a, b) of u^{-q} du.
double power_primitive(double q, double a, double b) {
  if (std::abs(q - 1.0) < 1e-14) return std::log(b / a);
  return (std::pow(b, 1.0 - q) - std::pow(a, 1.0 - q)) / (1.0 - q);
}

// integral over (a, b) of (1 - cos u) u^{-1-alpha} du, 0 <= a < b.
double stable_cos_integral(double alpha, double a, double b,
                           const double* f48 = nullptr) {
  if (b <= a) return 0.0;
  auto series = [alpha](double v) {
    if (v <= 0.0) return 0.0;
    return std::pow(v, 2.0 - alpha) / (2.0 * (2.0 - alpha)) -
           std::pow(v, 4.0 - alpha) / (24.0 * (4.0 - alpha)) +
           std::pow(v, 6.0 - alpha) / (720.0 * (6.0 - alpha));
  };
  if (b <= 1e-3) return series(b) - series(a);
  auto f = [alpha](double u) {
    return one_minus_cos(u) * std::pow(u, -1.0 - alpha);
  };
  if (b <= kAsym) {
    double v = 0.0;
    double mid = std::min(b, 2.0);
    if (a < mid) {
      if (a <= 1e-3) {
        double a2 = std::min(mid, 1e-3);
        v += series(a2) - series(a);
        if (mid > a2) v += integrate_adaptive(f, a2, mid, 1e-11, true).value;
      } else {
        v += integrate_adaptive(f, a, mid, 1e-11, a < 0.1).value;
      }
    }
    if (b > mid) v += integrate_adaptive(f, std::max(a, mid), b, 1e-11).value;
    return v;
  }
  double head;
  if (a <= 0.0 && f48) {
    head = *f48;
  } else {
    head = a >= kAsym ? 0.0 : stable_cos_integral(alpha, a, kAsym, f48);
  }
  double lo = std::max(a, kAsym);
  double mass = power_primitive(1.0 + alpha, lo, b);
  double osc = cos_endpoint_tail(1.0 + alpha, lo, 12) -
               cos_endpoint_tail(1.0 + alpha, b, 12);
  return head + mass - osc;
}

// integral over (a, b) of (u - sin u) u^{-1-alpha} du.
double stable_comp_sin_integral(double alpha, double a, double b,
                                const double* cs48 = nullptr) {
  if (b <= a) return 0.0;
  auto series = [alpha](double v) {
    if (v <= 0.0) return 0.0;
    return std::pow(v, 3.0 - alpha) / (6.0 * (3.0 - alpha)) -
           std::pow(v, 5.0 - alpha) / (120.0 * (5.0 - alpha)) +
           std::pow(v, 7.0 - alpha) / (5040.0 * (7.0 - alpha));
  };
  if (b <= 1e-3) return series(b) - series(a);
  auto f = [alpha](double u) {
    return u_minus_sin(u) * std::pow(u, -1.0 - alpha);
  };
  if (b <= kAsym) {
    double v = 0.0;
    double mid = std::min(b, 2.0);
    if (a < mid) {
      if (a <= 1e-3) {
        double a2 = std::min(mid, 1e-3);
        v += series(a2) - series(a);
        if (mid > a2) v += integrate_adaptive(f, a2, mid, 1e-11, true).value;
      } else {
        v += integrate_adaptive(f, a, mid, 1e-11, a < 0.1).value;
      }
    }
    if (b > mid) v += integrate_adaptive(f, std::max(a, mid), b, 1e-11).value;
    return v;
  }
  double head;
  if (a <= 0.0 && cs48) {
    head = *cs48;
  } else {
    head = a >= kAsym ? 0.0 : stable_comp_sin_integral(alpha, a, kAsym, cs48);
  }
  double lo = std::max(a, kAsym);
  double mass = power_primitive(alpha, lo, b);  // the u * u^{-1-alpha} part
  double osc = sin_endpoint_tail(1.0 + alpha, lo, 12) -
               sin_endpoint_tail(1.0 + alpha, b, 12);
  return head + mass - osc;
}

// integral over (a, b) of sin(u) u^{-1-alpha} du, a > 0.
double stable_sin_integral(double alpha, double a, double b) {
  if (b <= a) return 0.0;
  auto f = [alpha](double u) {
    return std::sin(u) * std::pow(u, -1.0 - alpha);
  };
  if (b <= kAsym) return integrate_adaptive(f, a, b, 1e-11, a < 0.1).value;
  if (a >= kAsym)
    return sin_endpoint_tail(1.0 + alpha, a, 12) -
           sin_endpoint_tail(1.0 + alpha, b, 12);
  return stable_sin_integral(alpha, a, kAsym) +
         stable_sin_integral(alpha, kAsym, b);
}

// Unclipped kernel of a piece and a monotone decreasing continuation beyond
// its upper end (needed by the infinite-tail oscillatory sums).
std::function<double(double)> extended_kernel(const MeasurePiece& pc) {
  if (pc.kind == MeasurePiece::Kind::Power) {
    double alpha = pc.alpha, c = pc.coeff;
    return [alpha, c](double y) { return c * std::pow(y, -1.0 - alpha); };
  }
  double c = pc.coeff, hi = pc.hi;
  double at_hi = c / (hi * hi * std::abs(std::log(hi)));
  return [c, hi, at_hi](double y) {
    if (y <= hi) return c / (y * y * std::abs(std::log(y)));
    return at_hi * (hi / y) * (hi / y);
  };
}

struct Contribution {
  double re = 0.0;
  double im = 0.0;
  double err = 0.0;
  bool converged = true;
};

// Generic x-space route: smooth core under the log substitution, analytic
// mass on the oscillatory range, half-period remainder.
Contribution piece_generic(const MeasurePiece& pc, double z, double tol) {
  Contribution out;
  auto kernel = extended_kernel(pc);
  const double lo = pc.lo, hi = pc.hi;
  const double xs = std::clamp(8.0 * kPi / z, lo, hi);

  // Real part.
  if (xs > lo) {
    auto ft = [&](double t) {
      double y = std::exp(t);
      return one_minus_cos(z * y) * kernel(y) * y;
    };
    double span = pc.kind == MeasurePiece::Kind::Power
                      ? 48.0 / std::max(2.0 - pc.alpha, 0.05)
                      : 48.0;
    double tmin = std::log(xs) - span;
    if (lo > 0.0) tmin = std::max(tmin, std::log(lo));
    QuadResult q = integrate_adaptive(ft, tmin, std::log(xs), tol);
    out.re += q.value;
    out.err += q.err;
    out.converged = out.converged && q.converged;
  }
  if (hi > xs) {
    out.re += piece_mass(pc, xs, hi);
    QuadResult q = oscillatory_integral(kernel, z, Trig::Cos, xs, hi, tol);
    out.re -= q.value;
    out.err += q.err;
    out.converged = out.converged && q.converged;
  }

  // Imaginary part: compensated below 1, plain -sin above.
  const double m1 = std::min(hi, 1.0);
  if (m1 > lo) {
    double xc = std::clamp(8.0 * kPi / z, lo, m1);
    if (xc > lo) {
      auto ft = [&](double t) {
        double y = std::exp(t);
        return u_minus_sin(z * y) * kernel(y) * y;
      };
      double span = pc.kind == MeasurePiece::Kind::Power
                        ? 48.0 / std::max(2.0 - pc.alpha, 0.05)
                        : 48.0;
      double tmin = std::log(xc) - span;
      if (lo > 0.0) tmin = std::max(tmin, std::log(lo));
      QuadResult q = integrate_adaptive(ft, tmin, std::log(xc), tol);
      out.im += q.value;
      out.err += q.err;
      out.converged = out.converged && q.converged;
    }
    if (m1 > xc) {
      out.im += z * piece_abs_moment(pc, 1.0, xc, m1);
      QuadResult q = oscillatory_integral(kernel, z, Trig::Sin, xc, m1, tol);
      out.im -= q.value;
      out.err += q.err;
      out.converged = out.converged && q.converged;
    }
  }
  if (hi > 1.0) {
    QuadResult q =
        oscillatory_integral(kernel, z, Trig::Sin, std::max(lo, 1.0), hi, tol);
    out.im -= q.value;
    out.err += q.err;
    out.converged = out.converged && q.converged;
  }
  out.im *= pc.sign;
  return out;
}

// Closed-form route for power pieces via scaled trig-integral primitives.
Contribution piece_power_closed(const MeasurePiece& pc, double z,
                                const std::array<double, 2>& c48) {
  Contribution out;
  const double alpha = pc.alpha, c = pc.coeff;
  const double za = std::pow(z, alpha);
  out.re = c * za * stable_cos_integral(alpha, z * pc.lo, z * pc.hi, &c48[0]);
  double im = 0.0;
  const double m1 = std::min(pc.hi, 1.0);
  if (m1 > pc.lo)
    im += c * za * stable_comp_sin_integral(alpha, z * pc.lo, z * m1, &c48[1]);
  if (pc.hi > 1.0)
    im -= c * za *
          stable_sin_integral(alpha, z * std::max(pc.lo, 1.0), z * pc.hi);
  out.im = pc.sign * im;
  out.err = 1e-11 * (1.0 + std::abs(out.re) + std::abs(im));
  return out;
}

}  // namespace

double stable_cos_constant(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw Error(ErrorCode::EvaluationFailure,
                "stable constant needs alpha in (0,2)");
  return kPi / (2.0 * std::tgamma(1.0 + alpha) * std::sin(kPi * alpha / 2.0));
}

ExponentHandle::ExponentHandle(LevyTriplet t, EvalOptions opt)
    : t_(std::move(t)), opt_(opt) {
  if (t_.dim() == 1) {
    flat_ = flatten(t_.mu());
    if (!opt_.force_quadrature) {
      for (const auto& pc : flat_.pieces) {
        if (pc.kind != MeasurePiece::Kind::Power) continue;
        if (alpha_cache_.count(pc.alpha)) continue;
        alpha_cache_[pc.alpha] = {
            stable_cos_integral(pc.alpha, 0.0, kAsym),
            stable_comp_sin_integral(pc.alpha, 0.0, kAsym)};
      }
    }
  }
}

PsiValue ExponentHandle::eval_uncached(double z) const {
  PsiValue out;
  if (z == 0.0) return out;
  if (z < 0.0) {
    PsiValue p = eval(-z);
    p.value = std::conj(p.value);
    return p;
  }
  double re = 0.5 * t_.Q()(0, 0) * z * z;
  double im = t_.a()[0] * z;
  double err = 0.0;
  bool ok = true;
  const double tol = opt_.rel_tol * 0.01;
  for (const auto& pc : flat_.pieces) {
    Contribution c;
    auto it = opt_.force_quadrature ? alpha_cache_.end()
                                    : alpha_cache_.find(pc.alpha);
    if (pc.kind == MeasurePiece::Kind::Power && it != alpha_cache_.end()) {
      c = piece_power_closed(pc, z, it->second);
    } else {
      c = piece_generic(pc, z, tol);
    }
    re += c.re;
    im += c.im;
    err += c.err;
    ok = ok && c.converged;
  }
  for (const auto& a : flat_.atoms) {
    double u = z * a.x;
    re += a.w * one_minus_cos(u);
    im += a.w * (-std::sin(u) + (std::abs(a.x) < 1.0 ? u : 0.0));
  }
  out.value = {re, im};
  out.err = err;
  out.converged = ok && std::isfinite(re) && std::isfinite(im);
  return out;
}

PsiValue ExponentHandle::eval(double z) const {
  if (t_.dim() != 1)
    throw Error(ErrorCode::DimensionMismatch, "scalar eval needs dim == 1");
  if (!opt_.cache_enabled) return eval_uncached(z);
  const uint64_t key = std::bit_cast<uint64_t>(z);
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  PsiValue v = eval_uncached(z);
  {
    std::unique_lock lock(mutex_);
    cache_.emplace(key, v);
  }
  return v;
}

PsiValue ExponentHandle::eval(const Eigen::VectorXd& z) const {
  if (z.size() != t_.dim())
    throw Error(ErrorCode::DimensionMismatch, "z dimension mismatch");
  if (t_.dim() == 1) return eval(z[0]);
  PsiValue out;
  double re = 0.5 * z.dot(t_.Q() * z);
  double im = t_.a().dot(z);
  for (const auto& comp : t_.mu().components) {
    const auto* at = std::get_if<Atoms>(&comp.v);
    if (!at)
      throw Error(ErrorCode::DimensionMismatch,
                  "density components are 1-D only");
    for (const auto& a : at->atoms) {
      double u = z.dot(a.x);
      re += a.w * one_minus_cos(u);
      im += a.w * (-std::sin(u) + (a.x.norm() < 1.0 ? u : 0.0));
    }
  }
  out.value = {re, im};
  out.converged = std::isfinite(re) && std::isfinite(im);
  return out;
}

namespace {

PsiParts to_parts(const PsiValue& v) {
  PsiParts p;
  p.re = v.value.real();
  p.im = v.value.imag();
  p.A = std::max(1.0 + p.re, 1e-300);
  p.B = std::hypot(p.A, p.im);
  return p;
}

}  // namespace

PsiParts ExponentHandle::parts(double z) const { return to_parts(eval(z)); }

PsiParts ExponentHandle::parts(const Eigen::VectorXd& z) const {
  return to_parts(eval(z));
}

std::complex<double> measure_fourier(const FiniteMeasure& nu,
                                     const Eigen::VectorXd& z) {
  std::complex<double> s{0.0, 0.0};
  for (const auto& a : nu.atoms) {
    if (a.x.size() != z.size())
      throw Error(ErrorCode::DimensionMismatch, "fourier dimension mismatch");
    double u = z.dot(a.x);
    s += a.w * std::complex<double>(std::cos(u), std::sin(u));
  }
  return s;
}

std::complex<double> measure_fourier(const FiniteMeasure& nu, double z) {
  Eigen::VectorXd v(1);
  v[0] = z;
  return measure_fourier(nu, v);
}

ConvergenceReport one_energy(const FiniteMeasure& nu, const ExponentHandle& h,
                             double zmax, double tol) {
  if (h.dim() != 1)
    throw Error(ErrorCode::Unsupported, "1-energy quadrature is 1-D only");
  if (!(nu.total_mass() > 0.0))
    throw Error(ErrorCode::InvalidSpec, "nu must have positive mass");

  // Merge coincident atoms, then expand |nu_hat|^2 into pair cosines.
  std::vector<Atom1D> atoms;
  for (const auto& a : nu.atoms) {
    if (a.x.size() != 1)
      throw Error(ErrorCode::DimensionMismatch, "nu must be 1-D");
    bool merged = false;
    for (auto& b : atoms)
      if (std::abs(b.x - a.x[0]) < 1e-15) {
        b.w += a.w;
        merged = true;
        break;
      }
    if (!merged) atoms.push_back({a.x[0], a.w});
  }
  double c0 = 0.0;
  for (const auto& a : atoms) c0 += a.w * a.w;
  struct Pair {
    double delta, weight;
  };
  std::vector<Pair> pairs;
  for (size_t i = 0; i < atoms.size(); ++i)
    for (size_t j = i + 1; j < atoms.size(); ++j)
      pairs.push_back(
          {std::abs(atoms[i].x - atoms[j].x), 2.0 * atoms[i].w * atoms[j].w});

  auto g = [&h](double z) {
    PsiParts p = h.parts(z);
    return p.A / (p.B * p.B);
  };
  auto fsample = [&](double z) {
    std::complex<double> f = measure_fourier(nu, z);
    return 2.0 * g(z) * std::norm(f);
  };
  auto segment = [&](double a, double b) {
    QuadResult total = integrate_adaptive(g, a, b, tol, a == 0.0);
    total.value *= c0;
    total.err *= c0;
    for (const auto& p : pairs) {
      QuadResult q = oscillatory_integral(g, p.delta, Trig::Cos, a, b, tol);
      total.value += p.weight * q.value;
      total.err += std::abs(p.weight) * q.err;
      total.converged = total.converged && q.converged;
    }
    total.value *= 2.0;  // even integrand, both half-lines
    total.err *= 2.0;
    return std::make_tuple(total.value, total.err, total.converged);
  };

  ImproperOptions opt;
  opt.limits.clear();
  for (double u = 10.0; u < zmax * 0.999; u *= 10.0) opt.limits.push_back(u);
  opt.limits.push_back(zmax);
  if (opt.limits.size() < 2) opt.limits.insert(opt.limits.begin(), zmax / 10.0);
  opt.tol = tol;
  return integrate_improper_segments(segment, fsample, 0.0, opt);
}

}  // namespace levyh
