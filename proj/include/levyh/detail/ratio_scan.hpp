#pragma once

#include <functional>
#include <limits>

#include "levyh/convergence.hpp"
#include "levyh/exponent.hpp"
#include "levyh/verdict.hpp"

namespace levyh::detail {

inline constexpr double kHoldsSlope = 0.02;  // bounded: slope <= 0 + margin
inline constexpr double kFailsSlope = 0.05;  // growing with positive exponent
inline constexpr const char* kGridCaveat = "asymptotic check on finite grid";

/// Evaluation directions: the axis for n = 1, otherwise the eigenbasis of Q
/// plus a diagonal direction.
inline std::vector<Eigen::VectorXd> scan_directions(const LevyTriplet& t) {
  std::vector<Eigen::VectorXd> dirs;
  const int n = t.dim();
  if (n == 1) {
    dirs.push_back(Eigen::VectorXd::Constant(1, 1.0));
    return dirs;
  }
  for (int i = 0; i < n; ++i) dirs.push_back(t.q_eigenvectors().col(i));
  dirs.push_back(Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n))));
  return dirs;
}

struct RatioScan {
  double sup = 0.0;
  double arg_sup = 0.0;
  double slope = 0.0;     // fitted d log(ratio)/d log z on the tail window
  double tail_min = std::numeric_limits<double>::infinity();
  bool informative = false;
  bool ok = true;
};

inline RatioScan scan_ratio(const std::function<double(double)>& ratio,
                            const GridSpec& grid) {
  RatioScan s;
  auto zs = grid.points();
  const size_t window =
      std::min(zs.size(), size_t(grid.fit_decades * grid.per_decade));
  std::vector<double> lx, ly;
  for (size_t i = 0; i < zs.size(); ++i) {
    double r = ratio(zs[i]);
    if (!std::isfinite(r)) {
      s.ok = false;
      continue;
    }
    if (r > s.sup) {
      s.sup = r;
      s.arg_sup = zs[i];
    }
    if (i + window >= zs.size()) {
      s.tail_min = std::min(s.tail_min, r);
      lx.push_back(std::log(zs[i]));
      ly.push_back(std::log(std::max(r, 1e-300)));
    }
  }
  s.informative = s.sup > 1e-12;
  if (s.informative) s.slope = ls_slope(lx, ly);
  return s;
}

/// Max-ratio scan of a PsiParts functional across directions.
inline RatioScan scan_parts(
    const ExponentHandle& h, const GridSpec& grid,
    const std::function<double(const PsiParts&)>& f) {
  RatioScan best;
  bool first = true;
  for (const auto& dir : scan_directions(h.triplet())) {
    auto ratio = [&](double r) {
      return f(h.parts(Eigen::VectorXd(r * dir)));
    };
    RatioScan s = scan_ratio(ratio, grid);
    if (first) {
      best = s;
      first = false;
      continue;
    }
    best.ok = best.ok && s.ok;
    if (s.sup > best.sup) {
      best.sup = s.sup;
      best.arg_sup = s.arg_sup;
    }
    best.slope = std::max(best.slope, s.slope);
    best.tail_min = std::min(best.tail_min, s.tail_min);
    best.informative = best.informative || s.informative;
  }
  return best;
}

/// "There exists c with ratio <= c" decided by sup + trend slope.
inline Verdict bounded_ratio_verdict(const RatioScan& s, const char* rule,
                                     const char* anchor) {
  Verdict v;
  v.citations.push_back({rule, anchor});
  if (!s.ok) {
    v.caveats.push_back("evaluation failures on the grid");
    return v;
  }
  v.evidence["c_est"] = s.sup;
  v.evidence["sup_at_z"] = s.arg_sup;
  v.evidence["slope"] = s.slope;
  if (!s.informative) {
    v.status = Status::Holds;
    v.evidence["c_est"] = 0.0;
    return v;
  }
  v.caveats.push_back(kGridCaveat);
  if (s.slope <= kHoldsSlope) {
    v.status = Status::Holds;
    return v;
  }
  if (s.slope >= kFailsSlope) {
    v.status = Status::Fails;
    return v;
  }
  return v;
}

}  // namespace levyh::detail
