#pragma once

#include <complex>
#include <map>
#include <memory>
#include <shared_mutex>
#include <unordered_map>

#include "levyh/convergence.hpp"
#include "levyh/triplet.hpp"

namespace levyh {

struct PsiValue {
  std::complex<double> value;
  double err = 0.0;
  bool converged = true;
};

/// A = 1 + Re(psi), B = |1 + psi|; B^2 = A^2 + im^2 by construction.
struct PsiParts {
  double A = 1.0;
  double B = 1.0;
  double re = 0.0;
  double im = 0.0;
};

struct EvalOptions {
  double rel_tol = 1e-8;
  bool force_quadrature = false;  // generic x-space route for every piece
  bool cache_enabled = true;
};

/// Evaluator for the Levy-Khintchine exponent
///   psi(z) = i<a,z> + <z,Qz>/2
///          + integral of (1 - e^{i<z,x>} + i<z,x> 1_{|x|<1}) d(mu).
/// Stable power pieces use scaled sine/cosine-integral closed forms; the
/// log-singular kernel integrates through the split
/// smooth-core / analytic-mass / oscillatory-remainder. Evaluations are pure
/// and cached by the bit pattern of z; safe for concurrent use.
class ExponentHandle {
 public:
  explicit ExponentHandle(LevyTriplet t, EvalOptions opt = {});

  const LevyTriplet& triplet() const { return t_; }
  int dim() const { return t_.dim(); }

  PsiValue eval(double z) const;
  PsiValue eval(const Eigen::VectorXd& z) const;
  std::complex<double> psi(double z) const { return eval(z).value; }
  PsiParts parts(double z) const;
  PsiParts parts(const Eigen::VectorXd& z) const;

 private:
  PsiValue eval_uncached(double z) const;

  LevyTriplet t_;
  EvalOptions opt_;
  FlatMeasure flat_;  // dim == 1 only
  // Per-alpha constants of the power-piece closed forms (filled upfront).
  std::map<double, std::array<double, 2>> alpha_cache_;  // {F48, CS48}
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<uint64_t, PsiValue> cache_;
};

std::complex<double> measure_fourier(const FiniteMeasure& nu,
                                     const Eigen::VectorXd& z);
std::complex<double> measure_fourier(const FiniteMeasure& nu, double z);

/// 1-energy integral of nu against the exponent:
///   integral over R of A(z)/B^2(z) |nu_hat(z)|^2 dz,
/// estimated on [-zmax, zmax] with a tail-exponent verdict. The |nu_hat|^2
/// factor is expanded into atom-pair cosines so each oscillatory part is
/// integrated with the half-period machinery. Throws Unsupported for n > 1.
ConvergenceReport one_energy(const FiniteMeasure& nu, const ExponentHandle& h,
                             double zmax = 1e6, double tol = 1e-9);

/// K_alpha = integral over (0,inf) of (1 - cos u) u^{-1-alpha} du,
/// the stable normalization constant pi / (2 Gamma(1+alpha) sin(pi alpha/2)).
double stable_cos_constant(double alpha);

}  // namespace levyh
