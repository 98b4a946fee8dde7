#include "levyh/classifier.hpp"

#include <cmath>

namespace levyh {

namespace {

constexpr double kDriftTol = 1e-10;

void merge_evidence(Verdict& into, const Verdict& from,
                    const std::string& prefix = "") {
  for (const auto& [k, v] : from.evidence) into.evidence[prefix + k] = v;
  into.caveats.insert(into.caveats.end(), from.caveats.begin(),
                      from.caveats.end());
}

}  // namespace

bool is_compound_poisson(const LevyTriplet& t) {
  return t.q_is_zero() && total_mass(t.mu()).is_finite();
}

BretagnolleCase bretagnolle_case(const LevyTriplet& t) {
  if (t.dim() != 1)
    throw Error(ErrorCode::DimensionMismatch,
                "the case classification is 1-D");
  BretagnolleCase bc;
  if (!t.q_is_zero()) {
    bc.c = BCase::A;
    return bc;
  }
  bc.compound_poisson = is_compound_poisson(t);
  if (variation_integral(t.mu(), Side::Both).is_infinite()) {
    bc.c = BCase::B;
    return bc;
  }
  bc.a_prime = a_prime(t);
  if (std::abs(bc.a_prime) <= kDriftTol) {
    bc.c = BCase::C1;
    return bc;
  }
  bc.mirrored = bc.a_prime < 0.0;
  // Charge on the side opposite to the effective drift separates C2 and C3.
  Side opposite = bc.mirrored ? Side::Positive : Side::Negative;
  ExtendedReal opp = abs_moment(t.mu(), 0.0, 0.0,
                                std::numeric_limits<double>::infinity(),
                                opposite);
  bool charges_opposite = opp.is_infinite() || opp.value() > 0.0;
  bc.c = charges_opposite ? BCase::C3 : BCase::C2;
  return bc;
}

KestenResult kesten_hitting(const LevyTriplet& t, const ExponentHandle* h,
                            double z_max) {
  KestenResult res;
  if (t.dim() != 1)
    throw Error(ErrorCode::DimensionMismatch, "hitting decision is 1-D");
  bool pos_finite = variation_integral(t.mu(), Side::Positive).is_finite();
  bool neg_finite = variation_integral(t.mu(), Side::Negative).is_finite();
  if (pos_finite || neg_finite) {
    res.hitting = HittingSet::AllReals;
    res.shortcut = true;
    res.rule = {"kesten-one-sided",
                "one side of the jump measure has finite variation while the "
                "total variation is infinite: the hitting set is R"};
    return res;
  }
  std::optional<ExponentHandle> own;
  if (!h) {
    own.emplace(t);
    h = &*own;
  }
  auto f = [h](double z) {
    PsiParts p = h->parts(z);
    return p.A / (p.B * p.B);  // Re(1/(1+psi))
  };
  ImproperOptions iopt;
  iopt.limits.clear();
  for (double u = 10.0; u < z_max * 0.999; u *= 10.0) iopt.limits.push_back(u);
  iopt.limits.push_back(z_max);
  if (iopt.limits.size() < 2) iopt.limits.insert(iopt.limits.begin(), z_max / 10.0);
  ConvergenceReport rep = integrate_improper(f, 0.0, iopt);
  res.evidence["tail_exponent"] = rep.tail_exponent;
  switch (rep.verdict) {
    case ConvergenceReport::Verdict::Converges:
      res.hitting = HittingSet::AllReals;
      res.evidence["integral"] = rep.value;
      res.rule = {"kesten-integral",
                  "the integral over (0,inf) of Re(1/(1+psi)) converges, so "
                  "singletons are non-polar and every point is regular"};
      break;
    case ConvergenceReport::Verdict::Diverges:
      res.hitting = HittingSet::Empty;
      res.rule = {"kesten-integral",
                  "the integral of Re(1/(1+psi)) diverges: no point is hit "
                  "with positive probability"};
      break;
    case ConvergenceReport::Verdict::Inconclusive:
      res.rule = {"kesten-integral", "integral test inconclusive"};
      break;
  }
  return res;
}

namespace {

struct Gate {
  bool available = false;
  Citation citation;
  Verdict hw;  // the computed growth check, when run
};

Gate density_gate(const ExponentHandle& h, const Assertions& asserts) {
  Gate g;
  if (asserts.has_densities) {
    g.available = true;
    g.citation = {"density-assertion",
                  "resolvent densities w.r.t. Lebesgue measure asserted",
                  "asserted"};
    return g;
  }
  g.hw = check_repsi_growth(h, GrowthVariant::HartmanWintner);
  if (g.hw.holds()) {
    g.available = true;
    g.citation = g.hw.citations.front();
  }
  return g;
}

const Citation kSelfGate{
    "hw-implied",
    "the growth bound itself forces Re psi >= c|z|/(4 log|z|), hence "
    "bounded continuous transition densities"};

}  // namespace

HReport h_verdict(const LevyTriplet& t, const Assertions& asserts,
                  const EngineOptions& opts) {
  GridSpec grid;
  grid.z_hi = opts.z_max;
  LiminfOptions lopt;
  lopt.j_hi = opts.eps_min_exp;
  HReport rep;
  auto& chain = rep.verdict.citations;
  ExponentHandle handle(t);
  bool asymptotic_rules_allowed = t.dim() > 1;

  if (t.dim() == 1) {
    BretagnolleCase bc = bretagnolle_case(t);
    rep.bcase = bc;
    switch (bc.c) {
      case BCase::A:
        rep.hitting = HittingSet::AllReals;
        rep.verdict.status = Status::Holds;
        chain.push_back(
            {"bretagnolle-A",
             "Q > 0: the hitting set is R and 0 is regular for {0}; only "
             "the empty set is semipolar"});
        rep.verdict.evidence["Q"] = t.Q()(0, 0);
        return rep;
      case BCase::C2:
      case BCase::C3:
        if (!bc.compound_poisson) {
          rep.hitting = bc.c == BCase::C2 ? HittingSet::PositiveHalfLine
                                          : HittingSet::AllReals;
          rep.verdict.status = Status::Fails;
          chain.push_back(
              {bc.c == BCase::C2 ? "bretagnolle-C2" : "bretagnolle-C3",
               "finite variation, nonzero effective drift: singletons are "
               "semipolar but not polar; 0 is not a regular point"});
          rep.verdict.evidence["a_prime"] = bc.a_prime;
          if (bc.mirrored)
            rep.verdict.caveats.push_back(
                "classified through the reflection x -> -x");
          return rep;
        }
        rep.verdict.caveats.push_back(
            "compound Poisson: the non-regularity classification does not "
            "apply");
        break;
      case BCase::B: {
        asymptotic_rules_allowed = true;
        KestenResult kes = kesten_hitting(t, &handle, opts.z_max);
        rep.hitting = kes.hitting;
        if (kes.hitting == HittingSet::AllReals) {
          rep.verdict.status = Status::Holds;
          chain.push_back(
              {"bretagnolle-B",
               "Q = 0 with infinite jump variation; the hitting set decides "
               "(H)"});
          chain.push_back(kes.rule);
          for (const auto& [k, v] : kes.evidence)
            rep.verdict.evidence[k] = v;
          return rep;
        }
        for (const auto& [k, v] : kes.evidence) rep.verdict.evidence[k] = v;
        if (kes.hitting == HittingSet::Unknown)
          rep.verdict.caveats.push_back("hitting-set integral inconclusive");
        break;
      }
      case BCase::C1:
        if (!bc.compound_poisson) rep.hitting = HittingSet::Empty;
        break;
    }
  }

  // Diagram conditions, gated on the resolvent-density hypothesis. The
  // asymptotic-ratio conditions are trusted only outside the
  // finite-variation Case C, where grid certificates of the existential
  // constants routinely pass for processes whose (H) status is open.
  Gate gate = density_gate(handle, asserts);
  if (gate.available) {
    Verdict nd = check_nd(t);
    if (nd.holds()) {
      rep.verdict.status = Status::Holds;
      chain.push_back(gate.citation);
      chain.push_back(nd.citations.front());
      merge_evidence(rep.verdict, nd);
      return rep;
    }
    Verdict sym = check_sym(handle, grid);
    if (sym.holds()) {
      rep.verdict.status = Status::Holds;
      chain.push_back(gate.citation);
      chain.push_back(sym.citations.front());
      merge_evidence(rep.verdict, sym);
      return rep;
    }
    if (asymptotic_rules_allowed) {
      Verdict kf = check_kf(handle, grid);
      if (kf.holds()) {
        rep.verdict.status = Status::Holds;
        chain.push_back(gate.citation);
        chain.push_back(kf.citations.front());
        merge_evidence(rep.verdict, kf);
        return rep;
      }
      Verdict rao = check_rao(handle, std::nullopt, grid);
      if (rao.holds()) {
        rep.verdict.status = Status::Holds;
        chain.push_back(gate.citation);
        chain.push_back(rao.citations.front());
        merge_evidence(rep.verdict, rao);
        return rep;
      }
      Verdict cba = check_cba(handle, grid);
      if (cba.holds()) {
        rep.verdict.status = Status::Holds;
        chain.push_back(gate.citation);
        chain.push_back(cba.citations.front());
        merge_evidence(rep.verdict, cba);
        return rep;
      }
    }
  } else {
    rep.verdict.caveats.push_back(
        "diagram conditions skipped: resolvent-density hypothesis not "
        "established (growth gate failed, no assertion)");
  }

  Verdict s = check_s(t);
  if (s.holds()) {
    rep.verdict.status = Status::Holds;
    chain.push_back(s.citations.front());
    merge_evidence(rep.verdict, s);
    return rep;
  }

  if (t.dim() == 1) {
    Thm25Witness w = asserts.thm25 ? *asserts.thm25 : Thm25Witness{};
    Verdict t25 = check_thm25(t, w);
    if (t25.holds()) {
      rep.verdict.status = Status::Holds;
      chain.push_back(t25.citations.front());
      merge_evidence(rep.verdict, t25);
      return rep;
    }

    Verdict t26 = check_thm26(t, lopt);
    if (t26.holds()) {
      rep.verdict.status = Status::Holds;
      chain.push_back(t26.citations.front());
      chain.push_back(kSelfGate);
      merge_evidence(rep.verdict, t26);
      return rep;
    }

    Verdict growth = check_repsi_growth(handle, GrowthVariant::LogRatio, grid);
    if (growth.holds()) {
      rep.verdict.status = Status::Holds;
      chain.push_back(growth.citations.front());
      chain.push_back(kSelfGate);
      merge_evidence(rep.verdict, growth);
      return rep;
    }

    Verdict ll = check_loglog_local(t, lopt);
    if (ll.holds()) {
      rep.verdict.status = Status::Holds;
      chain.push_back(ll.citations.front());
      chain.push_back(kSelfGate);
      merge_evidence(rep.verdict, ll);
      return rep;
    }
  }

  rep.verdict.status = Status::Unknown;
  rep.verdict.caveats.push_back("no applicable rule");
  return rep;
}

namespace {

struct H1Source {
  bool holds = false;
  Citation citation;
};

// Attaches the case/hitting classification of the summed triplet (1-D).
void finalize_sum_case(HReport& rep, const LevyTriplet& t1,
                       const LevyTriplet& t2) {
  if (t1.dim() != 1) return;
  try {
    LevyTriplet sum = sum_triplets(t1, t2);
    BretagnolleCase bc = bretagnolle_case(sum);
    rep.bcase = bc;
    if (bc.c == BCase::A) rep.hitting = HittingSet::AllReals;
  } catch (const Error&) {
    // classification of the sum is informative only
  }
}

H1Source h_of(const LevyTriplet& t, bool asserted, const char* label) {
  H1Source src;
  if (asserted) {
    src.holds = true;
    src.citation = {std::string("h-of-") + label,
                    std::string(label) + " satisfies (H)", "asserted"};
    return src;
  }
  HReport r = h_verdict(t);
  if (r.verdict.holds()) {
    src.holds = true;
    std::string lead =
        r.verdict.citations.empty() ? "" : r.verdict.citations.front().rule;
    src.citation = {std::string("h-of-") + label,
                    std::string(label) + " satisfies (H) (classified via " +
                        lead + ")",
                    "computed"};
  }
  return src;
}

}  // namespace

HReport h_verdict_sum(const LevyTriplet& t1, const LevyTriplet& t2,
                      const Assertions& asserts, const EngineOptions& opts) {
  GridSpec grid;
  grid.z_hi = opts.z_max;
  if (t1.dim() != t2.dim())
    throw Error(ErrorCode::DimensionMismatch, "summands of different dimension");
  HReport rep;
  auto& chain = rep.verdict.citations;
  ExponentHandle h1(t1), h2(t2);

  // R1: one summand satisfies (H), the other is compound Poisson.
  for (int swap = 0; swap < 2; ++swap) {
    const LevyTriplet& a = swap ? t2 : t1;
    const LevyTriplet& b = swap ? t1 : t2;
    if (!is_compound_poisson(b)) continue;
    H1Source src = h_of(a, swap ? asserts.h2_holds : asserts.h1_holds,
                        swap ? "X2" : "X1");
    if (!src.holds) continue;
    rep.verdict.status = Status::Holds;
    chain.push_back(src.citation);
    chain.push_back(
        {"sum-compound-poisson",
         "adding an independent compound Poisson process preserves (H)"});
    if (swap)
      rep.verdict.caveats.push_back("roles of the summands exchanged");
    finalize_sum_case(rep, t1, t2);
    return rep;
  }

  // R2: both summands satisfy (S).
  {
    Verdict s1 = check_s(t1);
    Verdict s2 = check_s(t2);
    if (s1.holds() && s2.holds()) {
      rep.verdict.status = Status::Holds;
      chain.push_back(
          {"sum-both-s",
           "both summands satisfy the solvable-drift condition (S); the sum "
           "satisfies (H)"});
      merge_evidence(rep.verdict, s1, "x1_");
      merge_evidence(rep.verdict, s2, "x2_");
      finalize_sum_case(rep, t1, t2);
      return rep;
    }
  }

  // R3: 1-energy domination + Im control + densities (transfer rule).
  {
    H1Source src = h_of(t1, asserts.h1_holds, "X1");
    if (src.holds) {
      Verdict dom;
      bool have_dom = false;
      for (auto variant :
           {Pro312Variant::I, Pro312Variant::II, Pro312Variant::III}) {
        Verdict v = check_pro312(h1, h2, variant, grid);
        if (v.holds()) {
          dom = v;
          have_dom = true;
          break;
        }
      }
      if (have_dom) {
        Verdict imdom = check_im_domination(h1, h2, grid);
        Gate gate = density_gate(h1, asserts);
        if (imdom.holds() && gate.available) {
          rep.verdict.status = Status::Holds;
          chain.push_back(src.citation);
          chain.push_back(dom.citations.front());
          chain.push_back(gate.citation);
          chain.push_back(
              {"sum-energy-domination",
               "measures of finite 1-energy for the sum have finite 1-energy "
               "for X1, and |Im psi_2| <= c(1 + Re psi_1 + Re psi_2); (H) "
               "transfers to the sum"});
          merge_evidence(rep.verdict, dom);
          merge_evidence(rep.verdict, imdom, "imdom_");
          finalize_sum_case(rep, t1, t2);
          return rep;
        }
      }
    }
  }

  // R4: bounded resolvent densities for X1 + Im control.
  {
    H1Source src = h_of(t1, asserts.h1_holds, "X1");
    if (src.holds) {
      Citation bounded;
      bool have_bounded = false;
      if (asserts.bounded_resolvent) {
        bounded = {"bounded-resolvent-assertion",
                   "bounded resolvent densities asserted for X1", "asserted"};
        have_bounded = true;
      } else if (t1.dim() == 1) {
        BretagnolleCase bc = bretagnolle_case(t1);
        if (bc.c == BCase::B) {
          KestenResult kes = kesten_hitting(t1, &h1, opts.z_max);
          if (kes.hitting == HittingSet::AllReals) {
            bounded = {"bounded-resolvent-auto",
                       "one-dimensional Case B with hitting set R has bounded "
                       "resolvent densities",
                       "computed"};
            have_bounded = true;
          }
        }
      }
      if (have_bounded) {
        Verdict imdom = check_im_domination(h1, h2, grid);
        if (imdom.holds()) {
          rep.verdict.status = Status::Holds;
          chain.push_back(src.citation);
          chain.push_back(bounded);
          chain.push_back(
              {"sum-bounded-resolvent",
               "bounded resolvent densities for X1 plus "
               "|Im psi_2| <= c(1 + Re psi_1 + Re psi_2) give (H) for the "
               "sum"});
          merge_evidence(rep.verdict, imdom, "imdom_");
          finalize_sum_case(rep, t1, t2);
          return rep;
        }
      }
    }
  }

  // R5: user-supplied imaginary-part split witness.
  if (asserts.pair_witness) {
    GrowthFunction f = asserts.pair_witness_f.value_or(
        GrowthFunction{GrowthFunction::Kind::Log, 1.0});
    Verdict w = check_pro43(h1, h2, *asserts.pair_witness, f, grid);
    if (w.holds()) {
      ExponentHandle hsum(sum_triplets(t1, t2));
      Gate gate = density_gate(hsum, asserts);
      if (gate.available) {
        rep.verdict.status = Status::Holds;
        chain.push_back(w.citations.front());
        chain.push_back(gate.citation);
        merge_evidence(rep.verdict, w);
        finalize_sum_case(rep, t1, t2);
        return rep;
      }
    }
  }

  // R6: activity-index comparison.
  {
    H1Source src = h_of(t1, asserts.h1_holds, "X1");
    if (src.holds) {
      Verdict bg = check_bg_rule(h1, h2);
      if (bg.holds()) {
        Gate gate = density_gate(h1, asserts);
        if (gate.available) {
          rep.verdict.status = Status::Holds;
          chain.push_back(src.citation);
          chain.push_back(bg.citations.front());
          chain.push_back(gate.citation);
          chain.push_back(
              {"sum-energy-domination",
               "beta_2(X2) < beta_1''(X1) forces |psi_2| <= c(1 + Re psi_1); "
               "(H) transfers to the sum"});
          merge_evidence(rep.verdict, bg);
          finalize_sum_case(rep, t1, t2);
          return rep;
        }
      }
    }
  }

  // Fallback: classify the summed triplet directly (assertions about the
  // summands do not transfer).
  HReport direct = h_verdict(sum_triplets(t1, t2));
  rep = direct;
  rep.verdict.citations.insert(
      rep.verdict.citations.begin(),
      {"sum-fallback", "no pair rule applied; the summed triplet was "
                       "classified directly"});
  return rep;
}

}  // namespace levyh
