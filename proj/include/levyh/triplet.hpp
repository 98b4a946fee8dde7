#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>

#include "levyh/measure.hpp"

namespace levyh {

struct TripletData {
  Eigen::VectorXd a;
  Eigen::MatrixXd Q;
  LevyMeasure mu;
};

/// Validated Levy triplet (a, Q, mu) with the eigendecomposition of Q cached.
/// Immutable after construction; the truncation function is fixed to
/// 1_{|x|<1}.
class LevyTriplet {
 public:
  static constexpr double kSymTol = 1e-12;
  static constexpr double kPsdTol = 1e-10;

  /// Validates and constructs. Throws NonSymmetricQ, NegativeEigenvalue,
  /// NonIntegrableLevyMeasure, AtomAtOrigin, DimensionMismatch, InvalidSpec.
  static LevyTriplet validate(TripletData d);

  int dim() const { return static_cast<int>(a_.size()); }
  const Eigen::VectorXd& a() const { return a_; }
  const Eigen::MatrixXd& Q() const { return Q_; }
  const LevyMeasure& mu() const { return mu_; }

  const Eigen::VectorXd& q_eigenvalues() const { return eigval_; }
  const Eigen::MatrixXd& q_eigenvectors() const { return eigvec_; }
  double q_min_eigenvalue() const { return eigval_.minCoeff(); }
  bool q_is_zero() const { return eigval_.maxCoeff() <= kPsdTol; }

 private:
  LevyTriplet() = default;
  Eigen::VectorXd a_;
  Eigen::MatrixXd Q_;
  LevyMeasure mu_;
  Eigen::VectorXd eigval_;  // ascending, clamped to >= 0
  Eigen::MatrixXd eigvec_;
};

/// Independent sum: (a1 + a2, Q1 + Q2, mu1 + mu2).
LevyTriplet sum_triplets(const LevyTriplet& t1, const LevyTriplet& t2);

/// a + integral of x 1_{|x|<1} d(mu): the drift in the no-compensation form
/// psi = i a' z + ... available when the variation is finite.
double a_prime(const LevyTriplet& t);

/// Removes a finite sub-measure mu1 <= mu and shifts the drift by its small
/// first moment, leaving the exponent split psi = psi' + psi_cp.
LevyTriplet decompose_pro35(const LevyTriplet& t, const LevyMeasure& mu1);

struct Thm25Witness {
  double k = 0.0;
  double delta = 0.5;
  LevyMeasure nu;  // measure on (0, delta) with finite first moment
};

struct Thm25Hypothesis {
  bool ok = false;
  bool grid_verified = false;  // domination decided on a log grid
  std::string reason;
};

/// Checks Q = 0, infinite positive variation, finite first moment of nu on
/// (0, delta), and the reflected-negative-part domination
/// mu_minus_reflected <= k mu_plus + nu.
Thm25Hypothesis thm25_hypothesis(const LevyTriplet& t, const Thm25Witness& w);

/// Splits X into X1 = (a, 0, mu - mu2) and the symmetric pure-jump part
/// X2 = (0, 0, mu2) with mu2 = (mu_minus_reflected - nu)^+ on (0, delta),
/// reflected symmetrically. Throws HypothesisNotVerified or
/// SignedPartNotRepresentable.
std::pair<LevyTriplet, LevyTriplet> decompose_thm25(const LevyTriplet& t,
                                                    const Thm25Witness& w);

}  // namespace levyh
