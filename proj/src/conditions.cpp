#include "levyh/conditions.hpp"

#include <algorithm>
#include <cmath>

#include "levyh/detail/ratio_scan.hpp"
#include "levyh/quadrature.hpp"

namespace levyh {

namespace {

using detail::RatioScan;
using detail::scan_ratio;
using detail::scan_parts;
using detail::bounded_ratio_verdict;
using detail::scan_directions;
constexpr const char* kGridCaveat = detail::kGridCaveat;

}  // namespace

Verdict check_nd(const LevyTriplet& t) {
  Verdict v;
  v.citations.push_back({"nd", "Q is non-degenerate: rank(Q) = n"});
  double lmin = t.q_min_eigenvalue();
  v.evidence["min_eigenvalue"] = lmin;
  v.status = lmin > LevyTriplet::kPsdTol ? Status::Holds : Status::Fails;
  return v;
}

Verdict check_sym(const ExponentHandle& h, const GridSpec& grid) {
  const LevyTriplet& t = h.triplet();
  Verdict v;
  v.citations.push_back({"sym", "symmetric exponent: Im psi = 0"});
  bool structural =
      t.a().norm() <= 1e-12 * (1.0 + t.a().norm()) && reflection_invariant(t.mu());

  double sup_abs = 0.0, sup_rel = 0.0;
  for (const auto& dir : scan_directions(t)) {
    for (double r : grid.points()) {
      PsiParts p = h.parts(Eigen::VectorXd(r * dir));
      double im = std::abs(p.im);
      sup_abs = std::max(sup_abs, im);
      sup_rel = std::max(
          sup_rel, im / std::max(1.0, std::hypot(p.re, p.im)));
    }
  }
  v.evidence["sup_im"] = sup_abs;
  v.evidence["sup_im_rel"] = sup_rel;
  bool numeric = sup_rel < 1e-9;
  if (structural && numeric) {
    v.status = Status::Holds;
    v.caveats.push_back(
        "resolvent densities w.r.t. Lebesgue measure are a separate "
        "hypothesis (growth gate or assertion)");
    return v;
  }
  if (!structural && sup_rel > 1e-6) {
    v.status = Status::Fails;
    return v;
  }
  v.caveats.push_back(structural
                          ? "structurally symmetric but Im psi not numerically zero"
                          : "Im psi nearly zero but symmetry not structural");
  return v;
}

Verdict check_kf(const ExponentHandle& h, const GridSpec& grid) {
  RatioScan s = scan_parts(
      h, grid, [](const PsiParts& p) { return std::abs(p.im) / p.A; });
  return bounded_ratio_verdict(s, "kf", "Kanda-Forst bound |Im psi| <= c A");
}

Verdict check_rao(const ExponentHandle& h, std::optional<GrowthFunction> f,
                  const GridSpec& grid) {
  const char* anchor =
      "Rao bound |Im psi| <= A f(A), f increasing with divergent "
      "integral of 1/(lambda f(lambda))";
  if (f) {
    GrowthFunction g = *f;
    RatioScan s = scan_parts(h, grid, [&](const PsiParts& p) {
      return std::abs(p.im) / (p.A * g(p.A));
    });
    Verdict v = bounded_ratio_verdict(s, "rao", anchor);
    v.evidence["family"] = double(static_cast<int>(g.kind));
    return v;
  }
  bool any_unknown = false;
  Verdict last;
  for (auto kind : {GrowthFunction::Kind::Constant, GrowthFunction::Kind::Log,
                    GrowthFunction::Kind::LogLogLog}) {
    GrowthFunction g{kind, 1.0};
    RatioScan s = scan_parts(h, grid, [&](const PsiParts& p) {
      return std::abs(p.im) / (p.A * g(p.A));
    });
    Verdict v = bounded_ratio_verdict(s, "rao", anchor);
    v.evidence["family"] = double(static_cast<int>(kind));
    if (v.holds()) return v;
    if (v.status == Status::Unknown) any_unknown = true;
    last = v;
  }
  if (any_unknown) {
    last.status = Status::Unknown;
    last.caveats.push_back("at least one family in the margin band");
  }
  return last;
}

Verdict check_cba(const ExponentHandle& h, const GridSpec& grid) {
  RatioScan s = scan_parts(h, grid, [](const PsiParts& p) {
    double lb = std::log(2.0 + p.B);
    return p.B / (p.A * lb * std::log(lb));
  });
  return bounded_ratio_verdict(s, "cba",
                               "B <= c A log(2+B) loglog(2+B)");
}

RangeMemberResult range_member(const Eigen::MatrixXd& M,
                               const Eigen::VectorXd& x) {
  RangeMemberResult res;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (M + M.transpose()));
  const auto& ev = es.eigenvalues();
  const auto& V = es.eigenvectors();
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
  for (int i = 0; i < ev.size(); ++i) {
    double comp = V.col(i).dot(x);
    if (ev[i] < 1e-10 * scale) {
      if (std::abs(comp) >= 1e-9) {
        res.member = false;
        res.witness = V.col(i);
        return res;
      }
    } else {
      y += comp / std::sqrt(ev[i]) * V.col(i);
    }
  }
  res.member = true;
  res.witness = y;
  res.certificate_c = 1.0 + y.norm();
  return res;
}

Verdict check_s(const LevyTriplet& t) {
  Verdict v;
  v.citations.push_back(
      {"s",
       "finite mass off sqrt(Q)R^n and sqrt(Q)y = -a - integral of "
       "x 1_{|x|<1} over the off-range part is solvable"});
  const int n = t.dim();

  // Off-range part of the measure. Density components (1-D) are off-range
  // exactly when Q = 0; atoms are tested individually.
  bool q_zero = t.q_is_zero();
  double off_mass = 0.0;
  Eigen::VectorXd off_drift = Eigen::VectorXd::Zero(n);
  bool infinite = false;

  if (n == 1) {
    if (q_zero) {
      ExtendedReal m = total_mass(t.mu());
      if (m.is_infinite()) {
        infinite = true;
      } else {
        off_mass = m.value();
        off_drift = drift_integral(t.mu(), 1);
      }
    }
    // Q > 0 in 1-D: the range is all of R, nothing is off-range.
  } else {
    for (const auto& c : t.mu().components) {
      const auto* at = std::get_if<Atoms>(&c.v);
      if (!at)
        throw Error(ErrorCode::DimensionMismatch,
                    "density components are 1-D only");
      for (const auto& a : at->atoms) {
        if (!range_member(t.Q(), a.x).member) {
          off_mass += a.w;
          if (a.x.norm() < 1.0) off_drift += a.w * a.x;
        }
      }
    }
  }
  if (infinite) {
    v.status = Status::Fails;
    v.caveats.push_back("off-range mass is infinite");
    return v;
  }
  v.evidence["off_range_mass"] = off_mass;
  Eigen::VectorXd b = -t.a() - off_drift;
  RangeMemberResult rm = range_member(t.Q(), b);
  v.evidence["drift_equation_residual"] =
      rm.member ? 0.0 : std::abs(rm.witness.dot(b));
  if (rm.member) {
    v.status = Status::Holds;
    v.evidence["certificate_c"] = rm.certificate_c;
  } else {
    v.status = Status::Fails;
  }
  return v;
}

Verdict check_thm25(const LevyTriplet& t, const Thm25Witness& w) {
  Verdict v;
  v.citations.push_back(
      {"asymmetric-tail-domination",
       "Q = 0, infinite positive variation, and the reflected negative part "
       "is dominated: mu_bar_minus <= k mu_plus + nu with finite "
       "x-moment of nu on (0,delta)"});
  v.evidence["k"] = w.k;
  v.evidence["delta"] = w.delta;
  Thm25Hypothesis h = thm25_hypothesis(t, w);
  if (h.ok) {
    v.status = Status::Holds;
    if (h.grid_verified)
      v.caveats.push_back("domination numerically verified on a log grid");
    return v;
  }
  // Distinguish a clear violation from a borderline grid decision.
  if (h.reason.rfind("domination", 0) == 0) {
    SplitPM parts = split_pm(t.mu());
    double worst = 0.0;
    bool grid = false;
    dominates(flatten(add(scale(parts.mu_plus, w.k), w.nu)),
              flatten(parts.mu_minus_reflected), &grid, &worst);
    v.evidence["worst_violation"] = worst;
    if (worst < 1e-6) {
      v.caveats.push_back("domination not decidable within grid tolerance");
      return v;  // Unknown
    }
  }
  v.status = Status::Fails;
  v.caveats.push_back(h.reason);
  return v;
}

namespace {

Verdict local_mass_verdict(const LevyTriplet& t, const LiminfOptions& opt,
                           bool loglog_variant) {
  Verdict v;
  if (loglog_variant) {
    v.citations.push_back(
        {"local-mass-loglog-bound",
         "liminf of truncated x^2 mass over eps/(|log eps| log|log eps|) "
         "is positive"});
  } else {
    v.citations.push_back(
        {"local-mass-lower-bound",
         "liminf of truncated x^2 mass over eps/|log eps| is positive"});
  }
  if (t.dim() != 1)
    throw Error(ErrorCode::DimensionMismatch, "local mass criteria are 1-D");
  auto ratio = [&](double eps) {
    double L = std::abs(std::log(eps));
    double denom = loglog_variant ? eps / (L * std::log(L)) : eps / L;
    return truncated_moment(t.mu(), 2.0, eps) / denom;
  };
  LiminfReport rep;
  try {
    rep = liminf_ratio(ratio, opt);
  } catch (const Error&) {
    v.caveats.push_back("ratio evaluation failed");
    return v;
  }
  v.evidence["estimate"] = rep.estimate;
  v.evidence["slope"] = rep.trend_slope;
  // Trend-extrapolated floor: continue the fitted slope far beyond the
  // double-precision grid end (the liminf is asymptotic).
  double extra = rep.estimate *
                 std::exp(std::min(0.0, rep.trend_slope) * 80.0 * std::log(2.0));
  v.evidence["extrapolated_floor"] = extra;
  v.caveats.push_back(kGridCaveat);
  if (rep.estimate > 1e-3 && rep.trend_slope >= -0.01) {
    v.status = Status::Holds;
    return v;
  }
  if (rep.estimate < 1e-6 ||
      (rep.estimate < 1e-3 && rep.trend_slope <= -0.05)) {
    v.status = Status::Fails;
    return v;
  }
  return v;
}

}  // namespace

Verdict check_thm26(const LevyTriplet& t, const LiminfOptions& opt) {
  return local_mass_verdict(t, opt, false);
}

Verdict check_loglog_local(const LevyTriplet& t, const LiminfOptions& opt) {
  return local_mass_verdict(t, opt, true);
}

Verdict check_repsi_growth(const ExponentHandle& h, GrowthVariant variant,
                           const GridSpec& grid_in) {
  Verdict v;
  GridSpec grid = grid_in;
  grid.z_lo = std::max(grid.z_lo, 10.0);  // the ratios need log z > 0
  const bool hw = variant == GrowthVariant::HartmanWintner;
  if (hw) {
    v.citations.push_back(
        {"hw-density-gate",
         "Re psi / log(1+|z|) -> infinity, hence bounded continuous "
         "transition densities (Hartman-Wintner)"});
  } else {
    v.citations.push_back(
        {"re-psi-log-growth",
         "liminf of Re psi over |z|/log|z| is positive"});
  }
  // These criteria need the tail minimum and the least favourable slope
  // across directions (the shared scanner maximizes, which fits the
  // boundedness checks but not liminf-style ones).
  auto make_ratio = [&](const Eigen::VectorXd& dir) {
    return [&h, dir, hw](double r) {
      PsiParts p = h.parts(Eigen::VectorXd(r * dir));
      double z = r;
      return hw ? p.re / std::log1p(z) : p.re * std::log(z) / z;
    };
  };
  double tail_min = std::numeric_limits<double>::infinity();
  double slope = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (const auto& dir : scan_directions(h.triplet())) {
    RatioScan sc = scan_ratio(make_ratio(dir), grid);
    ok = ok && sc.ok;
    tail_min = std::min(tail_min, sc.tail_min);
    slope = std::min(slope, sc.informative ? sc.slope : -1.0);
  }
  v.evidence["tail_min"] = std::isfinite(tail_min) ? tail_min : 0.0;
  v.evidence["slope"] = std::isfinite(slope) ? slope : 0.0;
  v.caveats.push_back(kGridCaveat);
  if (!ok) {
    v.caveats.push_back("evaluation failures on the grid");
    return v;
  }
  if (hw) {
    if (tail_min < 1e-3 || slope <= 0.001) {
      v.status = Status::Fails;
      return v;
    }
    if (slope >= 0.01 && tail_min >= 1.0) {
      v.status = Status::Holds;
      return v;
    }
    return v;
  }
  if (tail_min < 1e-6 || (tail_min < 1e-3 && slope <= -0.05)) {
    v.status = Status::Fails;
    return v;
  }
  if (slope <= -0.05) {
    v.status = Status::Fails;  // decaying ratio: the liminf is 0
    return v;
  }
  if (tail_min > 1e-3 && slope >= -0.01) {
    v.status = Status::Holds;
    return v;
  }
  return v;
}

ConvergenceReport nu_alpha_mass(const LevyMeasure& mu, double alpha) {
  if (alpha <= 0.0)
    throw Error(ErrorCode::EvaluationFailure, "alpha must be > 0");
  // nu_alpha(dx) = |x| |log|x||^{1+alpha} mu(dx) on (-1,1).
  // Finiteness is a shrinking-window analysis: windows (2^{-j-1}, 2^{-j}].
  ConvergenceReport rep;
  FlatMeasure flat = flatten(mu);
  double total = 0.0;
  std::vector<double> lx, ly;
  const int jmax = 48;
  for (int j = 0; j < jmax; ++j) {
    double hi = std::ldexp(1.0, -j);
    double lo = 0.5 * hi;
    // |log| and the power weight vary slowly inside a dyadic window; sample
    // the weight at the geometric centre and use the exact |x| moment.
    double mid = std::sqrt(lo * hi);
    double weight = std::pow(std::abs(std::log(mid)), 1.0 + alpha);
    double m1 = 0.0;
    for (const auto& pc : flat.pieces) m1 += piece_abs_moment(pc, 1.0, lo, hi);
    for (const auto& a : flat.atoms) {
      double r = std::abs(a.x);
      if (r > lo && r <= hi && r < 1.0)
        m1 += a.w * r;
    }
    double term = weight * m1;
    total += term;
    rep.samples.emplace_back(hi, total);
    if (term > 1e-300 && j >= 8) {
      lx.push_back(-double(j) * std::log(2.0));  // log of window scale
      ly.push_back(std::log(term));
    }
  }
  // Window terms ~ 2^{-j s}: converges iff s > 0 (terms shrink geometrically
  // up to the slowly varying log weight).
  if (ly.size() < 6) {
    rep.verdict = ConvergenceReport::Verdict::Converges;  // finitely many terms
    rep.value = total;
    return rep;
  }
  size_t m = ly.size();
  std::vector<double> lx2(lx.end() - std::min<size_t>(m, 24), lx.end());
  std::vector<double> ly2(ly.end() - std::min<size_t>(m, 24), ly.end());
  double slope = ls_slope(lx2, ly2);  // d log(term) / d log(scale)
  rep.tail_exponent = slope;
  if (slope > 0.02) {
    rep.verdict = ConvergenceReport::Verdict::Converges;
    double last = std::exp(ly2.back());
    // geometric tail bound
    double q = std::exp(-slope * std::log(2.0));
    rep.value = total + last * q / (1.0 - q);
    rep.err = last;
    return rep;
  }
  if (slope < -0.02) {
    rep.verdict = ConvergenceReport::Verdict::Diverges;
    return rep;
  }
  rep.verdict = ConvergenceReport::Verdict::Inconclusive;
  return rep;
}

double beta2_smallness_index(const LevyMeasure& mu) {
  if (mu.dim != 1) return 0.0;  // atoms only
  FlatMeasure flat = flatten(mu);
  double beta2 = 0.0;
  for (const auto& pc : flat.pieces) {
    if (pc.lo > 0.0) continue;
    double crit =
        pc.kind == MeasurePiece::Kind::Power ? pc.alpha : 1.0;
    beta2 = std::max(beta2, crit);
  }
  return std::max(beta2, 0.0);
}

BgIndices bg_indices(const ExponentHandle& h) {
  BgIndices out;
  if (h.dim() != 1) {
    out.ok = false;
    return out;
  }
  std::vector<double> lx, ly;
  const int per_decade = 16;
  for (int i = 0; i <= 4 * per_decade; ++i) {
    double z = 1e2 * std::pow(1e4, double(i) / (4.0 * per_decade));
    PsiParts p = h.parts(z);
    if (p.re > 1e-300) {
      lx.push_back(std::log(z));
      ly.push_back(std::log(p.re));
    }
  }
  if (lx.size() < 8) {
    out.ok = false;
    return out;
  }
  out.beta1pp = ls_slope(lx, ly);
  out.beta2 = beta2_smallness_index(h.triplet().mu());
  return out;
}

Verdict check_type_alpha_beta(const TypeAlphaBetaDensity& comp) {
  Verdict v;
  v.citations.push_back(
      {"type-alpha-beta",
       "1/(c x^{1+alpha}) <= rho(x) <= c/x^{1+beta} on (0,1]"});
  double worst_lo = 0.0, worst_hi = 0.0, at_lo = 0.0, at_hi = 0.0;
  const int n = 64;
  for (int i = 0; i < n; ++i) {
    double x = std::pow(10.0, -8.0 * (1.0 - double(i + 1) / n));
    double rho = comp.rho(x);
    double lower = 1.0 / (comp.c * std::pow(x, 1.0 + comp.alpha));
    double upper = comp.c / std::pow(x, 1.0 + comp.beta);
    double viol_lo = (lower - rho) / lower;
    double viol_hi = (rho - upper) / upper;
    if (viol_lo > worst_lo) {
      worst_lo = viol_lo;
      at_lo = x;
    }
    if (viol_hi > worst_hi) {
      worst_hi = viol_hi;
      at_hi = x;
    }
  }
  v.evidence["worst_lower_violation"] = worst_lo;
  v.evidence["worst_upper_violation"] = worst_hi;
  if (worst_lo > 1e-12 || worst_hi > 1e-12) {
    v.status = Status::Fails;
    v.evidence["violation_at_x"] = worst_lo > worst_hi ? at_lo : at_hi;
    return v;
  }
  v.status = Status::Holds;
  return v;
}

Verdict pro123_limit(const ExponentHandle& h, const FiniteMeasure& nu,
                     const GrowthFunction& f, const Pro123Options& opt) {
  Verdict v;
  v.citations.push_back(
      {"resolvent-limit",
       "lambda-limit of the integral of lambda/(lambda^2+B^2)|nu_hat|^2 "
       "over {B > A f(A)} vanishes for the supplied finite 1-energy nu"});
  v.caveats.push_back(
      "evidence for a single measure only; the criterion quantifies over "
      "all finite measures of finite 1-energy");
  if (h.dim() != 1)
    throw Error(ErrorCode::Unsupported, "1-D only");

  ConvergenceReport energy = one_energy(nu, h, opt.zmax);
  if (!energy.converges()) {
    v.caveats.push_back("nu not verified to have finite 1-energy");
    return v;
  }
  v.evidence["one_energy"] = energy.value;

  // Region {B > A f(A)} on (0, zmax]: located on a log grid, boundaries
  // refined by bisection.
  auto excess = [&](double z) {
    PsiParts p = h.parts(z);
    return p.B - p.A * f(p.A);
  };
  GridSpec grid;
  grid.z_hi = opt.zmax;
  auto zs = grid.points();
  std::vector<std::pair<double, double>> region;
  double start = 0.0;
  bool inside = false;
  double prev = zs.front();
  double prev_val = excess(prev);
  if (prev_val > 0.0) {
    inside = true;
    start = 0.0;  // treat the region as starting at 0
  }
  for (size_t i = 1; i < zs.size(); ++i) {
    double cur = zs[i];
    double val = excess(cur);
    if (!inside && prev_val <= 0.0 && val > 0.0) {
      double a = prev, b = cur;
      for (int it = 0; it < 60; ++it) {
        double m = 0.5 * (a + b);
        (excess(m) > 0.0 ? b : a) = m;
      }
      start = 0.5 * (a + b);
      inside = true;
    } else if (inside && prev_val > 0.0 && val <= 0.0) {
      double a = prev, b = cur;
      for (int it = 0; it < 60; ++it) {
        double m = 0.5 * (a + b);
        (excess(m) > 0.0 ? a : b) = m;
      }
      region.emplace_back(start, 0.5 * (a + b));
      inside = false;
    }
    prev = cur;
    prev_val = val;
  }
  if (inside) {
    region.emplace_back(start, opt.zmax);
    v.caveats.push_back("region truncated at zmax");
  }
  v.evidence["region_intervals"] = double(region.size());

  auto integral_at = [&](double lam) {
    double total = 0.0;
    for (const auto& [a, b] : region) {
      auto g = [&](double z) {
        PsiParts p = h.parts(z);
        std::complex<double> fhat = measure_fourier(nu, z);
        return lam / (lam * lam + p.B * p.B) * std::norm(fhat);
      };
      total += 2.0 * integrate_adaptive(g, a, b, 1e-9).value;
    }
    return total;
  };
  LimitOptions lopt;
  lopt.lambda_grid = opt.lambda_grid;
  lopt.tol = opt.tol;
  LimitReport rep = limit_lambda(integral_at, lopt);
  if (!rep.values.empty()) {
    v.evidence["final_value"] = rep.values.back().second;
  }
  switch (rep.verdict) {
    case LimitReport::Verdict::TendsToZero:
      v.status = Status::Holds;
      break;
    case LimitReport::Verdict::Positive:
      v.status = Status::Fails;
      v.evidence["floor"] = rep.floor;
      break;
    case LimitReport::Verdict::Inconclusive:
      break;
  }
  return v;
}

}  // namespace levyh
