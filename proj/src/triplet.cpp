#include "levyh/triplet.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace levyh {

namespace {

void validate_component(const LevyComponent& c, int dim);

void validate_measure(const LevyMeasure& mu, int dim) {
  if (mu.dim != dim)
    throw Error(ErrorCode::DimensionMismatch, "measure dimension mismatch");
  for (const auto& c : mu.components) validate_component(c, dim);
  if (dim == 1) {
    // Integrability near 0 from the flattened singularity exponents:
    // power pieces need 1 + alpha < 3.
    FlatMeasure flat = flatten(mu);
    for (const auto& pc : flat.pieces) {
      if (pc.lo <= 0.0 && pc.kind == MeasurePiece::Kind::Power &&
          pc.alpha >= 2.0)
        throw Error(ErrorCode::NonIntegrableLevyMeasure,
                    "singularity exponent 1 + alpha >= 3 at the origin");
    }
  }
}

void validate_component(const LevyComponent& c, int dim) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, StablePowerDensity>) {
          if (dim != 1)
            throw Error(ErrorCode::DimensionMismatch,
                        "stable_power is 1-D only");
          if (!(v.cutoff > 0.0))
            throw Error(ErrorCode::InvalidSpec, "stable_power cutoff <= 0");
          if (v.c_plus < 0.0 || v.c_minus < 0.0)
            throw Error(ErrorCode::InvalidSpec, "negative stable_power weight");
          if (!(v.alpha > 0.0))
            throw Error(ErrorCode::InvalidSpec, "stable_power alpha <= 0");
          // alpha >= 2 is caught by the flattened integrability check.
        } else if constexpr (std::is_same_v<T, LogSingularDensity>) {
          if (dim != 1)
            throw Error(ErrorCode::DimensionMismatch,
                        "log_singular is 1-D only");
          if (!(v.c > 0.0))
            throw Error(ErrorCode::InvalidSpec, "log_singular c <= 0");
          if (!(v.delta > 0.0 && v.delta < 1.0))
            throw Error(ErrorCode::InvalidSpec,
                        "log_singular delta outside (0,1)");
        } else if constexpr (std::is_same_v<T, Atoms>) {
          for (const auto& a : v.atoms) {
            if (a.x.size() != dim)
              throw Error(ErrorCode::DimensionMismatch,
                          "atom dimension mismatch");
            if (a.x.norm() < 1e-300)
              throw Error(ErrorCode::AtomAtOrigin, "atom at the origin");
            if (!(a.w > 0.0) || !std::isfinite(a.w))
              throw Error(ErrorCode::InvalidSpec, "atom weight must be > 0");
          }
        } else if constexpr (std::is_same_v<T, ScaledRestriction>) {
          if (!v.inner)
            throw Error(ErrorCode::InvalidSpec, "empty restriction");
          if (v.scale < 0.0)
            throw Error(ErrorCode::InvalidSpec, "negative restriction scale");
          if (!(v.lo < v.hi))
            throw Error(ErrorCode::InvalidSpec, "empty restriction interval");
          validate_component(*v.inner, dim);
        } else if constexpr (std::is_same_v<T, TypeAlphaBetaDensity>) {
          if (dim != 1)
            throw Error(ErrorCode::DimensionMismatch,
                        "type_alpha_beta is 1-D only");
          if (!(0.0 < v.alpha && v.alpha < v.beta && v.beta < 1.0))
            throw Error(ErrorCode::InvalidSpec,
                        "type_alpha_beta needs 0 < alpha < beta < 1");
          if (!(v.c > 1.0))
            throw Error(ErrorCode::InvalidSpec, "type_alpha_beta needs c > 1");
          if (v.rho.terms.empty())
            throw Error(ErrorCode::InvalidSpec, "type_alpha_beta without rho");
          for (const auto& t : v.rho.terms)
            if (!(t.coeff > 0.0))
              throw Error(ErrorCode::InvalidSpec,
                          "rho terms must have positive coefficients");
        }
      },
      c.v);
}

}  // namespace

LevyTriplet LevyTriplet::validate(TripletData d) {
  const int n = static_cast<int>(d.a.size());
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "dimension must be >= 1");
  if (d.Q.rows() != n || d.Q.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "Q must be n x n");
  double qscale = std::max(1.0, d.Q.cwiseAbs().maxCoeff());
  if ((d.Q - d.Q.transpose()).cwiseAbs().maxCoeff() > kSymTol * qscale)
    throw Error(ErrorCode::NonSymmetricQ, "Q is not symmetric");

  LevyTriplet t;
  t.a_ = std::move(d.a);
  t.Q_ = 0.5 * (d.Q + d.Q.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.Q_);
  Eigen::VectorXd ev = es.eigenvalues();
  for (int i = 0; i < n; ++i) {
    if (ev[i] < -kPsdTol * qscale)
      throw Error(ErrorCode::NegativeEigenvalue,
                  "Q has eigenvalue " + std::to_string(ev[i]));
    if (ev[i] < 0.0) ev[i] = 0.0;
  }
  t.eigval_ = ev;
  t.eigvec_ = es.eigenvectors();

  d.mu.dim = d.mu.components.empty() ? n : d.mu.dim;
  validate_measure(d.mu, n);
  t.mu_ = std::move(d.mu);
  return t;
}

LevyTriplet sum_triplets(const LevyTriplet& t1, const LevyTriplet& t2) {
  if (t1.dim() != t2.dim())
    throw Error(ErrorCode::DimensionMismatch, "summing different dimensions");
  TripletData d;
  d.a = t1.a() + t2.a();
  d.Q = t1.Q() + t2.Q();
  d.mu = add(t1.mu(), t2.mu());
  return LevyTriplet::validate(std::move(d));
}

double a_prime(const LevyTriplet& t) {
  if (t.dim() != 1)
    throw Error(ErrorCode::DimensionMismatch, "a' is defined for 1-D");
  return t.a()[0] + drift_integral(t.mu(), 1)[0];
}

namespace {

// n-D atom domination (densities are 1-D, so n > 1 reduces to atoms).
bool dominates_nd(const LevyMeasure& big, const LevyMeasure& small) {
  std::vector<Atom> bs, ss;
  auto collect = [](const LevyMeasure& m, std::vector<Atom>& out) {
    for (const auto& c : m.components) {
      const auto* at = std::get_if<Atoms>(&c.v);
      if (!at) throw Error(ErrorCode::DimensionMismatch, "atoms only");
      out.insert(out.end(), at->atoms.begin(), at->atoms.end());
    }
  };
  collect(big, bs);
  collect(small, ss);
  for (const auto& s : ss) {
    double avail = 0.0;
    for (const auto& b : bs)
      if ((b.x - s.x).norm() <= 1e-12 * (1.0 + s.x.norm())) avail += b.w;
    if (avail < s.w * (1.0 - 1e-9)) return false;
  }
  return true;
}

LevyMeasure subtract_nd(const LevyMeasure& a, const LevyMeasure& b) {
  std::vector<Atom> as, bs;
  for (const auto& c : a.components) {
    const auto& at = std::get<Atoms>(c.v);
    as.insert(as.end(), at.atoms.begin(), at.atoms.end());
  }
  for (const auto& c : b.components) {
    const auto& at = std::get<Atoms>(c.v);
    bs.insert(bs.end(), at.atoms.begin(), at.atoms.end());
  }
  std::vector<bool> used(bs.size(), false);
  Atoms out;
  for (const auto& aa : as) {
    double w = aa.w;
    for (size_t j = 0; j < bs.size(); ++j) {
      if (used[j]) continue;
      if ((bs[j].x - aa.x).norm() <= 1e-12 * (1.0 + aa.x.norm())) {
        w -= bs[j].w;
        used[j] = true;
      }
    }
    if (w < -1e-12)
      throw Error(ErrorCode::SignedPartNotRepresentable,
                  "atom subtraction leaves negative weight");
    if (w > 1e-15) out.atoms.push_back({aa.x, w});
  }
  LevyMeasure m;
  m.dim = a.dim;
  if (!out.atoms.empty()) m.components.push_back(LevyComponent{out});
  return m;
}

}  // namespace

LevyTriplet decompose_pro35(const LevyTriplet& t, const LevyMeasure& mu1) {
  ExtendedReal mass =
      total_mass(mu1, 0.0, std::numeric_limits<double>::infinity());
  if (mass.is_infinite())
    throw Error(ErrorCode::InfiniteMass, "mu1 must have finite total mass");

  LevyMeasure rest;
  if (t.dim() == 1) {
    FlatMeasure big = flatten(t.mu());
    FlatMeasure small = flatten(mu1);
    if (!dominates(big, small))
      throw Error(ErrorCode::NotDominated, "mu1 is not dominated by mu");
    rest = materialize(subtract_exact(big, small));
  } else {
    if (!dominates_nd(t.mu(), mu1))
      throw Error(ErrorCode::NotDominated, "mu1 is not dominated by mu");
    rest = subtract_nd(t.mu(), mu1);
  }
  TripletData d;
  d.a = t.a() + drift_integral(mu1, t.dim());
  d.Q = t.Q();
  d.mu = rest;
  d.mu.dim = t.dim();
  return LevyTriplet::validate(std::move(d));
}

Thm25Hypothesis thm25_hypothesis(const LevyTriplet& t, const Thm25Witness& w) {
  Thm25Hypothesis h;
  if (t.dim() != 1) {
    h.reason = "1-D only";
    return h;
  }
  if (!(w.k >= 0.0 && w.k < 1.0)) {
    h.reason = "k outside [0,1)";
    return h;
  }
  if (!(w.delta > 0.0 && w.delta < 1.0)) {
    h.reason = "delta outside (0,1)";
    return h;
  }
  if (!t.q_is_zero()) {
    h.reason = "Q != 0";
    return h;
  }
  if (variation_integral(t.mu(), Side::Positive).is_finite()) {
    h.reason = "positive-side variation is finite";
    return h;
  }
  if (abs_moment(w.nu, 1.0, 0.0, w.delta, Side::Positive).is_infinite()) {
    h.reason = "nu has infinite first moment on (0,delta)";
    return h;
  }
  SplitPM parts = split_pm(t.mu());
  FlatMeasure lhs = flatten(parts.mu_minus_reflected);
  FlatMeasure rhs = flatten(add(scale(parts.mu_plus, w.k), w.nu));
  if (!dominates(rhs, lhs, &h.grid_verified)) {
    h.reason = "domination mu_minus_reflected <= k mu_plus + nu fails";
    return h;
  }
  h.ok = true;
  return h;
}

std::pair<LevyTriplet, LevyTriplet> decompose_thm25(const LevyTriplet& t,
                                                    const Thm25Witness& w) {
  Thm25Hypothesis h = thm25_hypothesis(t, w);
  if (!h.ok)
    throw Error(ErrorCode::HypothesisNotVerified, h.reason);

  SplitPM parts = split_pm(t.mu());
  FlatMeasure pos_half =
      positive_part_subtract(flatten(parts.mu_minus_reflected), flatten(w.nu),
                             0.0, w.delta, +1);
  FlatMeasure mu2 = pos_half;
  for (auto pc : pos_half.pieces) {
    pc.sign = -1;
    mu2.pieces.push_back(pc);
  }
  for (const auto& a : pos_half.atoms) mu2.atoms.push_back({-a.x, a.w});

  FlatMeasure mu1 = subtract_exact(flatten(t.mu()), mu2);

  TripletData d1;
  d1.a = t.a();
  d1.Q = Eigen::MatrixXd::Zero(1, 1);
  d1.mu = materialize(mu1);
  TripletData d2;
  d2.a = Eigen::VectorXd::Zero(1);
  d2.Q = Eigen::MatrixXd::Zero(1, 1);
  d2.mu = materialize(mu2);
  return {LevyTriplet::validate(std::move(d1)),
          LevyTriplet::validate(std::move(d2))};
}

}  // namespace levyh
