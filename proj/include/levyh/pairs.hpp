#pragma once

#include "levyh/conditions.hpp"

namespace levyh {

// Two-process checkers: the hypotheses of the sum-of-processes rules.

/// |Im psi_2| <= c (1 + Re psi_1 + Re psi_2).
Verdict check_im_domination(const ExponentHandle& h1, const ExponentHandle& h2,
                            const GridSpec& grid = {});

/// A constant gamma strictly inside {gamma in (0,1/4) :
/// (1-gamma)(1 + 1/(4c^2)) > 1}, valid for the quadratic minoration
/// |1 + psi_1 + psi_2|^2 >= gamma |1 + psi_1|^2.
double lemma314_gamma(double c);

/// Randomized verification of the minoration over constrained complex pairs
/// (Re >= 0, |Im psi_2| <= c(1 + Re psi_1 + Re psi_2)). Holds iff zero
/// violations.
Verdict verify_lemma314(double c, double gamma, int samples,
                        uint64_t seed = 0x9E3779B97F4A7C15ull);

enum class Pro312Variant { I, II, III };

/// 1-energy domination sufficient conditions (i) => (ii) => (iii).
Verdict check_pro312(const ExponentHandle& h1, const ExponentHandle& h2,
                     Pro312Variant variant, const GridSpec& grid = {});

/// Split-witness rule: Im psi_1 = phi11 + phi12 with |phi11| <= A1 f(A1),
/// integrable |phi12|/B1^2, and |Im psi_2| <= A f(A) for the sum.
/// Throws InvalidWitness when phi11 + phi12 != Im psi_1 on the grid.
Verdict check_pro43(const ExponentHandle& h1, const ExponentHandle& h2,
                    const SplitWitness& witness, const GrowthFunction& f,
                    const GridSpec& grid = {});

/// Index comparison rule: beta_2(X2) + margin < beta_1''(X1).
Verdict check_bg_rule(const ExponentHandle& h1, const ExponentHandle& h2);

}  // namespace levyh
