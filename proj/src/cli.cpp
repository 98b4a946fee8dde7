#include "levyh/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "levyh/catalog.hpp"
#include "levyh/specio.hpp"

namespace levyh::cli {

namespace {

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::QuadratureFailure:
    case ErrorCode::MaxSubdivisions:
    case ErrorCode::EvaluationFailure:
      return 3;
    case ErrorCode::HypothesisNotVerified:
    case ErrorCode::NotDominated:
    case ErrorCode::SignedPartNotRepresentable:
      return 4;
    default:
      return 2;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::InvalidSpec, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProcessSpec resolve_spec(const std::string& ref) {
  if (ref.rfind("preset:", 0) == 0) {
    const CatalogEntry& e = catalog_get(ref.substr(7));
    return ProcessSpec{e.triplet, {}};
  }
  return parse_spec_json(read_file(ref));
}

std::string stem_of(const std::string& ref) {
  if (ref.rfind("preset:", 0) == 0) return ref.substr(7);
  std::string s = ref;
  size_t slash = s.find_last_of('/');
  if (slash != std::string::npos) s = s.substr(slash + 1);
  size_t dot = s.find_last_of('.');
  if (dot != std::string::npos) s = s.substr(0, dot);
  return s;
}

GrowthFunction parse_family(const std::string& name, double c) {
  if (name == "constant") return {GrowthFunction::Kind::Constant, c};
  if (name == "log") return {GrowthFunction::Kind::Log, c};
  if (name == "logloglog" || name == "log-loglog")
    return {GrowthFunction::Kind::LogLogLog, c};
  throw Error(ErrorCode::InvalidSpec, "unknown growth family '" + name + "'");
}

struct GlobalFlags {
  EngineOptions engine;
  bool text = false;
};

void emit_report(std::ostream& out, const HReport& rep, const GlobalFlags& g) {
  out << (g.text ? verdict_report_text(rep)
                 : verdict_report_json(rep, g.engine));
}

void emit_report(std::ostream& out, const Verdict& v, const GlobalFlags& g) {
  out << (g.text ? verdict_report_text(v) : verdict_report_json(v, g.engine));
}

Verdict convergence_as_verdict(const ConvergenceReport& rep, const char* rule,
                               const char* anchor) {
  Verdict v;
  v.citations.push_back({rule, anchor});
  v.evidence["tail_exponent"] = rep.tail_exponent;
  switch (rep.verdict) {
    case ConvergenceReport::Verdict::Converges:
      v.status = Status::Holds;
      v.evidence["value"] = rep.value;
      v.evidence["err"] = rep.err;
      break;
    case ConvergenceReport::Verdict::Diverges:
      v.status = Status::Fails;
      break;
    case ConvergenceReport::Verdict::Inconclusive:
      break;
  }
  return v;
}

int cmd_exponent(const std::string& spec_ref, std::vector<double> zs,
                 double z_lo, double z_hi, int z_count, bool tsv,
                 const GlobalFlags& g, std::ostream& out) {
  ProcessSpec spec = resolve_spec(spec_ref);
  ExponentHandle h(spec.triplet);
  if (zs.empty()) {
    for (int i = 0; i < z_count; ++i)
      zs.push_back(z_lo *
                   std::pow(z_hi / z_lo, z_count == 1
                                             ? 0.0
                                             : double(i) / (z_count - 1)));
  }
  bool all_ok = true;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::ostringstream tsv_out;
  tsv_out.precision(17);
  tsv_out << "z\tre\tim\tA\tB\n";
  for (double z : zs) {
    if (spec.triplet.dim() != 1)
      throw Error(ErrorCode::Unsupported,
                  "exponent tables are 1-D; use the library API for n-D");
    PsiValue val = h.eval(z);
    all_ok = all_ok && val.converged;
    PsiParts p = h.parts(z);
    nlohmann::ordered_json r;
    r["z"] = z;
    r["re"] = p.re;
    r["im"] = p.im;
    r["A"] = p.A;
    r["B"] = p.B;
    rows.push_back(std::move(r));
    tsv_out << z << '\t' << p.re << '\t' << p.im << '\t' << p.A << '\t' << p.B
            << '\n';
  }
  if (!all_ok)
    throw Error(ErrorCode::QuadratureFailure,
                "exponent quadrature did not reach the accuracy target");
  if (tsv) {
    out << tsv_out.str();
  } else {
    nlohmann::ordered_json j;
    j["rows"] = std::move(rows);
    j["settings"] = {{"z_max", g.engine.z_max},
                     {"eps_min_exp", g.engine.eps_min_exp},
                     {"tol", g.engine.tol},
                     {"threads", g.engine.threads}};
    out << j.dump(2) << "\n";
  }
  return 0;
}

struct CheckParams {
  std::string condition;
  double k = 0.0;
  double delta = 0.5;
  std::string nu_file;
  double alpha = 1.0;
  std::string family = "log";
  double family_c = 1.0;
  bool family_given = false;
};

int cmd_check(const std::string& spec_ref, const CheckParams& cp,
              const GlobalFlags& g, std::ostream& out) {
  ProcessSpec spec = resolve_spec(spec_ref);
  const LevyTriplet& t = spec.triplet;
  GridSpec grid;
  grid.z_hi = g.engine.z_max;
  LiminfOptions lopt;
  lopt.j_hi = g.engine.eps_min_exp;
  ExponentHandle h(t);

  Verdict v;
  const std::string& id = cp.condition;
  if (id == "nd") {
    v = check_nd(t);
  } else if (id == "sym") {
    v = check_sym(h, grid);
  } else if (id == "kf") {
    v = check_kf(h, grid);
  } else if (id == "rao") {
    std::optional<GrowthFunction> f;
    if (cp.family_given) f = parse_family(cp.family, cp.family_c);
    v = check_rao(h, f, grid);
  } else if (id == "cba") {
    v = check_cba(h, grid);
  } else if (id == "s") {
    v = check_s(t);
  } else if (id == "thm25") {
    Thm25Witness w;
    w.k = cp.k;
    w.delta = cp.delta;
    w.nu.dim = 1;
    if (!cp.nu_file.empty())
      w.nu = parse_measure_json(read_file(cp.nu_file), 1);
    v = check_thm25(t, w);
  } else if (id == "thm26") {
    v = check_thm26(t, lopt);
  } else if (id == "repsi-log") {
    v = check_repsi_growth(h, GrowthVariant::LogRatio, grid);
  } else if (id == "loglog") {
    v = check_loglog_local(t, lopt);
  } else if (id == "hw") {
    v = check_repsi_growth(h, GrowthVariant::HartmanWintner, grid);
  } else if (id == "nu-alpha") {
    ConvergenceReport rep = nu_alpha_mass(t.mu(), cp.alpha);
    v = convergence_as_verdict(
        rep, "nu-alpha-mass",
        "mass of |x| |log|x||^{1+alpha} mu(dx) on (-1,1): holds = finite");
  } else if (id == "bg") {
    BgIndices b = bg_indices(h);
    v.citations.push_back(
        {"bg-indices", "growth index of Re psi and smallness index of mu"});
    v.caveats.push_back("estimator only; pair rule lives in the sum command");
    if (b.ok) {
      v.evidence["beta1pp"] = b.beta1pp;
      v.evidence["beta2"] = b.beta2;
      v.evidence["uncertainty"] = b.uncertainty;
    }
  } else if (id == "type-ab") {
    bool any = false;
    Status agg = Status::Holds;
    for (const auto& c : t.mu().components) {
      if (const auto* d = std::get_if<TypeAlphaBetaDensity>(&c.v)) {
        any = true;
        Verdict one = check_type_alpha_beta(*d);
        for (const auto& [kk, val] : one.evidence) v.evidence[kk] = val;
        if (one.fails()) agg = Status::Fails;
      }
    }
    v.citations.push_back(
        {"type-alpha-beta",
         "1/(c x^{1+alpha}) <= rho(x) <= c/x^{1+beta} on (0,1]"});
    if (any)
      v.status = agg;
    else
      v.caveats.push_back("no type_alpha_beta component in the spec");
  } else if (id == "pro123") {
    if (cp.nu_file.empty())
      throw Error(ErrorCode::InvalidSpec, "pro123 needs --nu FILE");
    FiniteMeasure nu = parse_finite_measure_json(read_file(cp.nu_file));
    Pro123Options popt;
    popt.zmax = g.engine.z_max;
    v = pro123_limit(h, nu, parse_family(cp.family, cp.family_c), popt);
  } else {
    throw Error(ErrorCode::InvalidSpec, "unknown condition '" + id + "'");
  }
  emit_report(out, v, g);
  return 0;
}

int cmd_classify(const std::string& spec_ref, const GlobalFlags& g,
                 std::ostream& out) {
  ProcessSpec spec = resolve_spec(spec_ref);
  HReport rep = h_verdict(spec.triplet, spec.asserts, g.engine);
  emit_report(out, rep, g);
  return 0;
}

int cmd_sum(const std::string& ref1, const std::string& ref2, bool assert_h1,
            bool assert_h2, bool assert_bounded, bool assert_densities,
            const GlobalFlags& g, std::ostream& out) {
  ProcessSpec s1 = resolve_spec(ref1);
  ProcessSpec s2 = resolve_spec(ref2);
  Assertions a;
  a.h1_holds = assert_h1 || s1.asserts.h1_holds;
  a.h2_holds = assert_h2 || s2.asserts.h1_holds;
  a.bounded_resolvent = assert_bounded || s1.asserts.bounded_resolvent;
  a.has_densities =
      assert_densities || s1.asserts.has_densities || s2.asserts.has_densities;
  HReport rep = h_verdict_sum(s1.triplet, s2.triplet, a, g.engine);
  emit_report(out, rep, g);
  return 0;
}

int cmd_decompose(const std::string& spec_ref, const std::string& method,
                  const std::string& mu1_file, double k, double delta,
                  const std::string& nu_file, std::string out1,
                  std::string out2, const GlobalFlags& g, std::ostream& out) {
  ProcessSpec spec = resolve_spec(spec_ref);
  if (out1.empty()) out1 = stem_of(spec_ref) + ".part1.json";
  if (out2.empty()) out2 = stem_of(spec_ref) + ".part2.json";

  LevyTriplet t1 = spec.triplet, t2 = spec.triplet;
  if (method == "pro35") {
    if (mu1_file.empty())
      throw Error(ErrorCode::InvalidSpec, "pro35 needs --mu1 FILE");
    LevyMeasure mu1 =
        parse_measure_json(read_file(mu1_file), spec.triplet.dim());
    t1 = decompose_pro35(spec.triplet, mu1);
    // The removed part as a pure-jump triplet (zero drift in the
    // no-compensation form).
    TripletData d;
    d.a = -drift_integral(mu1, spec.triplet.dim());
    d.Q = Eigen::MatrixXd::Zero(spec.triplet.dim(), spec.triplet.dim());
    d.mu = mu1;
    d.mu.dim = spec.triplet.dim();
    t2 = LevyTriplet::validate(std::move(d));
  } else if (method == "thm25") {
    Thm25Witness w;
    w.k = k;
    w.delta = delta;
    w.nu.dim = 1;
    if (!nu_file.empty()) w.nu = parse_measure_json(read_file(nu_file), 1);
    auto [a, b] = decompose_thm25(spec.triplet, w);
    t1 = a;
    t2 = b;
  } else {
    throw Error(ErrorCode::InvalidSpec, "unknown method '" + method + "'");
  }

  std::string j1 = spec_to_json(t1), j2 = spec_to_json(t2);
  {
    std::ofstream f1(out1), f2(out2);
    if (!f1 || !f2)
      throw Error(ErrorCode::InvalidSpec, "cannot write output spec files");
    f1 << j1;
    f2 << j2;
  }

  // Exponent identity on a 64-point grid.
  ExponentHandle h(spec.triplet), h1(t1), h2(t2);
  double max_err = 0.0;
  for (int i = 0; i < 64; ++i) {
    double z = 1e-2 * std::pow(1e8 / 1e-2, double(i) / 63.0);
    if (spec.triplet.dim() != 1) break;
    std::complex<double> lhs = h.psi(z);
    std::complex<double> rhs = h1.psi(z) + h2.psi(z);
    max_err = std::max(max_err,
                       std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  nlohmann::ordered_json j;
  j["method"] = method;
  j["out1"] = out1;
  j["out2"] = out2;
  j["exponent_identity_max_rel_err"] = max_err;
  j["settings"] = {{"z_max", g.engine.z_max},
                   {"eps_min_exp", g.engine.eps_min_exp},
                   {"tol", g.engine.tol},
                   {"threads", g.engine.threads}};
  out << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Levy process classification and (H)-condition checking"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--zmax", g.engine.z_max, "upper end of the z grids");
  app.add_option("--eps-min-exp", g.engine.eps_min_exp,
                 "finest dyadic epsilon exponent for local-mass checks");
  app.add_option("--tol", g.engine.tol, "quadrature tolerance");
  app.add_option("--threads", g.engine.threads,
                 "threads for grid pre-evaluation");
  app.add_flag("--text", g.text, "render reports as text instead of JSON");

  std::string spec_ref, spec_ref2;
  std::vector<double> zs;
  double z_lo = 1e-2, z_hi = 1e2;
  int z_count = 9;
  bool tsv = false;
  auto* exp_cmd = app.add_subcommand("exponent", "evaluate the exponent");
  exp_cmd->add_option("spec", spec_ref, "spec file or preset:<name>")
      ->required();
  exp_cmd->add_option("--z", zs, "evaluation points");
  exp_cmd->add_option("--z-lo", z_lo, "grid start");
  exp_cmd->add_option("--z-hi", z_hi, "grid end");
  exp_cmd->add_option("--z-count", z_count, "grid size");
  exp_cmd->add_flag("--tsv", tsv, "TSV output");

  CheckParams cp;
  auto* check_cmd = app.add_subcommand("check", "run one condition checker");
  check_cmd->add_option("spec", spec_ref, "spec file or preset:<name>")
      ->required();
  check_cmd->add_option("--condition", cp.condition, "condition id")
      ->required();
  check_cmd->add_option("--k", cp.k, "domination constant (thm25)");
  check_cmd->add_option("--delta", cp.delta, "window end (thm25)");
  check_cmd->add_option("--nu", cp.nu_file, "witness measure file");
  check_cmd->add_option("--alpha", cp.alpha, "alpha for nu-alpha");
  check_cmd->add_option("--family", cp.family, "growth family")
      ->check([&cp](const std::string&) {
        cp.family_given = true;
        return std::string();
      });
  check_cmd->add_option("--family-c", cp.family_c, "growth family constant");

  auto* classify_cmd =
      app.add_subcommand("classify", "full (H) verdict for one process");
  classify_cmd->add_option("spec", spec_ref, "spec file or preset:<name>")
      ->required();

  bool assert_h1 = false, assert_h2 = false, assert_bounded = false,
       assert_densities = false;
  auto* sum_cmd =
      app.add_subcommand("sum", "(H) verdict for the sum of two processes");
  sum_cmd->add_option("spec1", spec_ref, "first spec")->required();
  sum_cmd->add_option("spec2", spec_ref2, "second spec")->required();
  sum_cmd->add_flag("--assert-h1", assert_h1, "assert (H) for the first");
  sum_cmd->add_flag("--assert-h2", assert_h2, "assert (H) for the second");
  sum_cmd->add_flag("--assert-bounded-resolvent", assert_bounded,
                    "assert bounded resolvent densities for the first");
  sum_cmd->add_flag("--assert-densities", assert_densities,
                    "assert resolvent densities");

  std::string method, mu1_file, nu_file, out1, out2;
  double dk = 0.0, ddelta = 0.5;
  auto* dec_cmd = app.add_subcommand("decompose", "split a process in two");
  dec_cmd->add_option("spec", spec_ref, "spec file or preset:<name>")
      ->required();
  dec_cmd->add_option("--method", method, "pro35 | thm25")->required();
  dec_cmd->add_option("--mu1", mu1_file, "finite sub-measure file (pro35)");
  dec_cmd->add_option("--k", dk, "domination constant (thm25)");
  dec_cmd->add_option("--delta", ddelta, "window end (thm25)");
  dec_cmd->add_option("--nu", nu_file, "witness measure file (thm25)");
  dec_cmd->add_option("--out1", out1, "first output spec path");
  dec_cmd->add_option("--out2", out2, "second output spec path");

  auto* list_cmd = app.add_subcommand("list", "list catalog presets");

  std::vector<const char*> argv;
  argv.push_back("levyh");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (exp_cmd->parsed())
      return cmd_exponent(spec_ref, zs, z_lo, z_hi, z_count, tsv, g, out);
    if (check_cmd->parsed()) return cmd_check(spec_ref, cp, g, out);
    if (classify_cmd->parsed()) return cmd_classify(spec_ref, g, out);
    if (sum_cmd->parsed())
      return cmd_sum(spec_ref, spec_ref2, assert_h1, assert_h2, assert_bounded,
                     assert_densities, g, out);
    if (dec_cmd->parsed())
      return cmd_decompose(spec_ref, method, mu1_file, dk, ddelta, nu_file,
                           out1, out2, g, out);
    if (list_cmd->parsed()) {
      for (const auto& n : catalog_list()) out << n << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  err << "no command\n";
  return 2;
}

}  // namespace levyh::cli
