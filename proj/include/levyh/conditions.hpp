#pragma once

#include <optional>

#include "levyh/exponent.hpp"
#include "levyh/verdict.hpp"

namespace levyh {

// Sufficient conditions for (H), one checker per condition. The asymptotic
// checkers decide the existential constants by boundedness-of-ratio scans
// with a trend-slope fit on a finite log grid; Holds/Fails verdicts carry the
// "asymptotic check on finite grid" caveat, anything in the margin band
// degrades to Unknown.

/// (ND): Q non-degenerate.
Verdict check_nd(const LevyTriplet& t);

/// (SYM): structurally symmetric (zero drift, reflection-invariant measure)
/// and numerically Im psi = 0 on the grid.
Verdict check_sym(const ExponentHandle& h, const GridSpec& grid = {});

/// (KF): |Im psi| <= c A.
Verdict check_kf(const ExponentHandle& h, const GridSpec& grid = {});

/// (R): |Im psi| <= A f(A). With no f given, searches the smallest family
/// constant -> log -> log-loglog and reports the first that is bounded.
Verdict check_rao(const ExponentHandle& h,
                  std::optional<GrowthFunction> f = std::nullopt,
                  const GridSpec& grid = {});

/// (C^{B/A}): B <= c A log(2+B) loglog(2+B).
Verdict check_cba(const ExponentHandle& h, const GridSpec& grid = {});

/// (S): finite mass off sqrt(Q)R^n and the drift equation solvable in range.
Verdict check_s(const LevyTriplet& t);

struct RangeMemberResult {
  bool member = false;
  double certificate_c = 0.0;        // 1 + |y| from the pseudo-inverse solve
  Eigen::VectorXd witness;           // y when member, kernel direction if not
};

/// x in sqrt(M) R^n iff x is orthogonal to the kernel of M.
RangeMemberResult range_member(const Eigen::MatrixXd& M,
                               const Eigen::VectorXd& x);

/// Kesten-extension hypothesis for a supplied witness (k, delta, nu).
Verdict check_thm25(const LevyTriplet& t, const Thm25Witness& w);

/// Local jump-mass criterion:
/// liminf of (truncated x^2 mass) / (eps / |log eps|) > 0.
Verdict check_thm26(const LevyTriplet& t, const LiminfOptions& opt = {});

/// Weaker local criterion with denominator eps/(|log eps| log|log eps|).
Verdict check_loglog_local(const LevyTriplet& t, const LiminfOptions& opt = {});

enum class GrowthVariant {
  LogRatio,  // liminf Re psi / (|z|/log|z|) > 0
  HartmanWintner,  // Re psi / log(1+|z|) -> infinity (density gate)
};

Verdict check_repsi_growth(const ExponentHandle& h, GrowthVariant variant,
                           const GridSpec& grid = {});

/// Mass of nu_alpha(dx) = |x| |log|x||^{1+alpha} mu(dx) on (-1,1) with a
/// finiteness verdict from singularity analysis plus shrinking-window sums.
ConvergenceReport nu_alpha_mass(const LevyMeasure& mu, double alpha);

struct BgIndices {
  double beta1pp = 0.0;  // growth index of Re psi at infinity
  double beta2 = 0.0;    // smallness index of the Levy measure at 0
  double uncertainty = 0.05;
  bool ok = true;
};

/// Blumenthal-Getoor type indices: beta1'' from a log-log slope fit of
/// Re psi on z in [1e2, 1e6], beta2 from the singularity metadata.
BgIndices bg_indices(const ExponentHandle& h);

/// Bracket check 1/(c x^{1+alpha}) <= rho(x) <= c/x^{1+beta} on a 64-point
/// log grid of (0, 1].
Verdict check_type_alpha_beta(const TypeAlphaBetaDensity& comp);

struct Pro123Options {
  std::vector<double> lambda_grid = {1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
  double zmax = 1e6;
  double tol = 1e-4;
};

/// Resolvent-limit criterion for one finite 1-energy measure nu:
/// lambda-limit of the integral of lambda/(lambda^2+B^2) |nu_hat|^2 over
/// {B > A f(A)}. Evidence for a single nu only, recorded as such.
Verdict pro123_limit(const ExponentHandle& h, const FiniteMeasure& nu,
                     const GrowthFunction& f, const Pro123Options& opt = {});

/// beta2 smallness index from flattened singularity exponents.
double beta2_smallness_index(const LevyMeasure& mu);

}  // namespace levyh
