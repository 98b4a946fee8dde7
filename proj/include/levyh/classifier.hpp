#pragma once

#include <memory>
#include <optional>

#include "levyh/pairs.hpp"

namespace levyh {

enum class BCase { A, B, C1, C2, C3 };

inline const char* bcase_name(BCase c) {
  switch (c) {
    case BCase::A: return "A";
    case BCase::B: return "B";
    case BCase::C1: return "C1";
    case BCase::C2: return "C2";
    case BCase::C3: return "C3";
  }
  return "?";
}

/// 1-D classification by Gaussian part, jump variation and effective drift.
struct BretagnolleCase {
  BCase c = BCase::C1;
  double a_prime = 0.0;          // effective drift (finite-variation cases)
  bool compound_poisson = false; // finite measure and Q = 0
  bool mirrored = false;         // classified through x -> -x (a' < 0)
};

enum class HittingSet { AllReals, Empty, PositiveHalfLine, Unknown };

inline const char* hitting_name(HittingSet h) {
  switch (h) {
    case HittingSet::AllReals: return "all_reals";
    case HittingSet::Empty: return "empty";
    case HittingSet::PositiveHalfLine: return "positive_half_line";
    case HittingSet::Unknown: return "unknown";
  }
  return "unknown";
}

BretagnolleCase bretagnolle_case(const LevyTriplet& t);

bool is_compound_poisson(const LevyTriplet& t);

struct KestenResult {
  HittingSet hitting = HittingSet::Unknown;
  Citation rule;
  std::map<std::string, double> evidence;
  bool shortcut = false;
};

/// Hitting-set decision for infinite-variation pure-jump processes: the
/// one-sided finite-variation shortcut, otherwise the integral test on
/// Re(1/(1+psi)).
KestenResult kesten_hitting(const LevyTriplet& t,
                            const ExponentHandle* h = nullptr,
                            double z_max = 1e6);

/// Global numeric defaults, overridable from the CLI and embedded in every
/// report for reproducibility.
struct EngineOptions {
  double z_max = 1e6;
  int eps_min_exp = 40;
  double tol = 1e-8;
  int threads = 1;
};

/// User-supplied hypotheses and witnesses for the rule engine.
struct Assertions {
  bool h1_holds = false;
  bool h2_holds = false;
  bool bounded_resolvent = false;
  bool has_densities = false;
  std::optional<Thm25Witness> thm25;
  std::shared_ptr<SplitWitness> pair_witness;
  std::optional<GrowthFunction> pair_witness_f;
};

struct HReport {
  Verdict verdict;
  std::optional<BretagnolleCase> bcase;  // 1-D only
  HittingSet hitting = HittingSet::Unknown;
};

/// Single-process verdict. Rule order: exact/structural classification first
/// (Bretagnolle cases, Kesten), then the diagram conditions gated on the
/// density hypothesis, then (S), then the local-mass and growth criteria.
/// Fails only arises from the C2/C3 classification.
HReport h_verdict(const LevyTriplet& t, const Assertions& asserts = {},
                  const EngineOptions& opts = {});

/// Sum-of-two-processes verdict; tries the pair rules in order and falls
/// back to classifying the summed triplet.
HReport h_verdict_sum(const LevyTriplet& t1, const LevyTriplet& t2,
                      const Assertions& asserts = {},
                      const EngineOptions& opts = {});

}  // namespace levyh
