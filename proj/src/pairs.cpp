#include "levyh/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "levyh/detail/ratio_scan.hpp"

namespace levyh {

namespace {

using detail::RatioScan;
using detail::bounded_ratio_verdict;
using detail::scan_directions;
using detail::scan_ratio;

void require_same_dim(const ExponentHandle& h1, const ExponentHandle& h2) {
  if (h1.dim() != h2.dim())
    throw Error(ErrorCode::DimensionMismatch, "pair dimensions differ");
}

// Max-ratio scan of a two-exponent functional over shared directions.
RatioScan scan_pair(const ExponentHandle& h1, const ExponentHandle& h2,
                    const GridSpec& grid,
                    const std::function<double(const PsiParts&,
                                               const PsiParts&)>& f) {
  RatioScan best;
  bool first = true;
  for (const auto& dir : scan_directions(h1.triplet())) {
    auto ratio = [&](double r) {
      Eigen::VectorXd z = r * dir;
      return f(h1.parts(z), h2.parts(z));
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

}  // namespace

Verdict check_im_domination(const ExponentHandle& h1, const ExponentHandle& h2,
                            const GridSpec& grid) {
  require_same_dim(h1, h2);
  RatioScan s = scan_pair(h1, h2, grid,
                          [](const PsiParts& p1, const PsiParts& p2) {
                            return std::abs(p2.im) /
                                   (1.0 + p1.re + p2.re);
                          });
  return bounded_ratio_verdict(
      s, "im-domination", "|Im psi_2| <= c (1 + Re psi_1 + Re psi_2)");
}

double lemma314_gamma(double c) {
  if (!(c > 0.0))
    throw Error(ErrorCode::EvaluationFailure, "c must be > 0");
  return 0.5 * std::min(0.25, 1.0 / (4.0 * c * c + 1.0));
}

Verdict verify_lemma314(double c, double gamma, int samples, uint64_t seed) {
  Verdict v;
  v.citations.push_back(
      {"quadratic-minoration",
       "|1 + psi_1 + psi_2|^2 >= gamma |1 + psi_1|^2 under "
       "|Im psi_2| <= c (1 + Re psi_1 + Re psi_2)"});
  v.evidence["c"] = c;
  v.evidence["gamma"] = gamma;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  auto magnitude = [&]() {
    if (unit(rng) < 0.25) return 0.0;
    return std::pow(10.0, -3.0 + 9.0 * unit(rng));
  };

  int violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  double viol_re1 = 0, viol_im1 = 0, viol_re2 = 0, viol_im2 = 0;
  for (int i = 0; i < samples; ++i) {
    double re1 = magnitude();
    double re2 = magnitude();
    double im1 = sym(rng) * magnitude() * 3.0;
    double im2 = sym(rng) * c * (1.0 + re1 + re2);
    double lhs = (1.0 + re1 + re2) * (1.0 + re1 + re2) +
                 (im1 + im2) * (im1 + im2);
    double rhs = gamma * ((1.0 + re1) * (1.0 + re1) + im1 * im1);
    double margin = lhs / rhs;
    if (margin < min_margin) min_margin = margin;
    if (lhs < rhs * (1.0 - 1e-12)) {
      if (violations == 0) {
        viol_re1 = re1;
        viol_im1 = im1;
        viol_re2 = re2;
        viol_im2 = im2;
      }
      ++violations;
    }
  }
  v.evidence["samples"] = samples;
  v.evidence["violations"] = violations;
  v.evidence["min_margin"] = min_margin;
  if (violations == 0) {
    v.status = Status::Holds;
  } else {
    v.status = Status::Fails;
    v.evidence["violation_re1"] = viol_re1;
    v.evidence["violation_im1"] = viol_im1;
    v.evidence["violation_re2"] = viol_re2;
    v.evidence["violation_im2"] = viol_im2;
  }
  return v;
}

Verdict check_pro312(const ExponentHandle& h1, const ExponentHandle& h2,
                     Pro312Variant variant, const GridSpec& grid) {
  require_same_dim(h1, h2);
  auto combine = [](Verdict a, const Verdict& b) {
    if (a.fails() || b.fails())
      a.status = Status::Fails;
    else if (a.holds() && b.holds())
      a.status = Status::Holds;
    else
      a.status = Status::Unknown;
    for (const auto& [k, val] : b.evidence)
      a.evidence["second_" + k] = val;
    a.caveats.insert(a.caveats.end(), b.caveats.begin(), b.caveats.end());
    return a;
  };
  auto re2_control = [](const PsiParts& p1, const PsiParts& p2) {
    return p2.re / (1.0 + p1.re + p1.im * p1.im / (1.0 + p1.re));
  };
  switch (variant) {
    case Pro312Variant::I: {
      RatioScan s =
          scan_pair(h1, h2, grid, [](const PsiParts& p1, const PsiParts& p2) {
            return std::hypot(p2.re, p2.im) / (1.0 + p1.re);
          });
      return bounded_ratio_verdict(s, "energy-domination-i",
                                   "|psi_2| <= c (1 + Re psi_1)");
    }
    case Pro312Variant::II: {
      RatioScan s1 = scan_pair(h1, h2, grid, re2_control);
      Verdict v1 = bounded_ratio_verdict(
          s1, "energy-domination-ii",
          "Re psi_2 <= c (1 + Re psi_1 + (Im psi_1)^2/(1 + Re psi_1)) and "
          "|Im psi_2| <= c (1 + Re psi_1 + Re psi_2)");
      RatioScan s2 = scan_pair(h1, h2, grid,
                               [](const PsiParts& p1, const PsiParts& p2) {
                                 return std::abs(p2.im) /
                                        (1.0 + p1.re + p2.re);
                               });
      Verdict v2 = bounded_ratio_verdict(s2, "energy-domination-ii", "");
      v2.citations.clear();
      return combine(v1, v2);
    }
    case Pro312Variant::III: {
      RatioScan s1 = scan_pair(h1, h2, grid, re2_control);
      Verdict v1 = bounded_ratio_verdict(
          s1, "energy-domination-iii",
          "Re psi_2 <= c (...) and (Im psi_2)^2 <= c (1 + Re psi_1 + "
          "Re psi_2)(1 + Re psi_1 + (Im psi_1)^2/(1 + Re psi_1))");
      RatioScan s2 = scan_pair(
          h1, h2, grid, [](const PsiParts& p1, const PsiParts& p2) {
            double d1 = 1.0 + p1.re + p2.re;
            double d2 = 1.0 + p1.re + p1.im * p1.im / (1.0 + p1.re);
            return p2.im * p2.im / (d1 * d2);
          });
      Verdict v2 = bounded_ratio_verdict(s2, "energy-domination-iii", "");
      v2.citations.clear();
      return combine(v1, v2);
    }
  }
  return {};
}

Verdict check_pro43(const ExponentHandle& h1, const ExponentHandle& h2,
                    const SplitWitness& witness, const GrowthFunction& f,
                    const GridSpec& grid) {
  require_same_dim(h1, h2);
  if (h1.dim() != 1)
    throw Error(ErrorCode::Unsupported, "split-witness checks are 1-D only");
  if (!witness.phi1 || !witness.phi2)
    throw Error(ErrorCode::InvalidWitness, "witness functions missing");

  Verdict v;
  v.citations.push_back(
      {"im-split-witness",
       "Im psi_1 = phi11 + phi12 with |phi11| <= A1 f(A1), integrable "
       "|phi12|/B1^2, and |Im psi_2| <= A f(A) for the sum"});
  v.caveats.push_back(detail::kGridCaveat);

  auto zs = grid.points();
  double worst_split = 0.0;
  double worst_phi11 = 0.0;
  double worst_im2 = 0.0;
  for (double zb : zs) {
    for (double z : {zb, -zb}) {
      PsiParts p1 = h1.parts(z);
      PsiParts p2 = h2.parts(z);
      double f1 = witness.phi1(z), f2 = witness.phi2(z);
      worst_split = std::max(
          worst_split, std::abs(f1 + f2 - p1.im) / (1.0 + std::abs(p1.im)));
      worst_phi11 =
          std::max(worst_phi11, std::abs(f1) / (p1.A * f(p1.A)));
      double a_sum = 1.0 + p1.re + p2.re;
      worst_im2 = std::max(worst_im2, std::abs(p2.im) / (a_sum * f(a_sum)));
    }
  }
  if (worst_split > 1e-9)
    throw Error(ErrorCode::InvalidWitness,
                "phi1 + phi2 differs from Im psi_1 on the grid");
  v.evidence["sup_phi11_ratio"] = worst_phi11;
  v.evidence["sup_im2_ratio"] = worst_im2;

  auto integrand = [&](double z) {
    PsiParts p = h1.parts(z);
    PsiParts pm = h1.parts(-z);
    return std::abs(witness.phi2(z)) / (p.B * p.B) +
           std::abs(witness.phi2(-z)) / (pm.B * pm.B);
  };
  ConvergenceReport conv = integrate_improper(integrand, 0.0);
  v.evidence["phi12_tail_exponent"] = conv.tail_exponent;
  if (conv.converges()) v.evidence["phi12_integral"] = conv.value;

  bool pointwise_ok = worst_phi11 <= 1.0 + 1e-12 && worst_im2 <= 1.0 + 1e-12;
  if (pointwise_ok && conv.converges()) {
    v.status = Status::Holds;
    return v;
  }
  if (worst_phi11 > 1.0 + 1e-9 || worst_im2 > 1.0 + 1e-9 || conv.diverges()) {
    v.status = Status::Fails;
    return v;
  }
  return v;
}

Verdict check_bg_rule(const ExponentHandle& h1, const ExponentHandle& h2) {
  Verdict v;
  v.citations.push_back(
      {"bg-index-rule",
       "beta_2(X_2) < beta_1''(X_1) (uncertainty-adjusted strict "
       "inequality of the activity indices)"});
  BgIndices b1 = bg_indices(h1);
  BgIndices b2 = bg_indices(h2);
  if (!b1.ok || !b2.ok) {
    v.caveats.push_back("index fit inconclusive");
    return v;
  }
  v.evidence["beta1pp_x1"] = b1.beta1pp;
  v.evidence["beta2_x2"] = b2.beta2;
  v.evidence["margin"] = b1.uncertainty;
  v.status = (b2.beta2 + b1.uncertainty < b1.beta1pp) ? Status::Holds
                                                      : Status::Fails;
  return v;
}

}  // namespace levyh
