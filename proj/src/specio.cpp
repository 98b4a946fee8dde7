#include "levyh/specio.hpp"

#include <json.hpp>
#include <sstream>

namespace levyh {

namespace {

using json = nlohmann::ordered_json;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known)
      throw Error(ErrorCode::InvalidSpec,
                  "unknown key '" + it.key() + "' in " + where);
  }
}

Eigen::VectorXd parse_vector(const json& j, const std::string& where) {
  if (!j.is_array())
    throw Error(ErrorCode::InvalidSpec, where + " must be an array");
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number())
      throw Error(ErrorCode::InvalidSpec, where + " entries must be numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

double num(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number())
    throw Error(ErrorCode::InvalidSpec,
                where + " needs numeric field '" + key + "'");
  return j[key].get<double>();
}

LevyComponent parse_component(const json& j, int dim);

Atoms parse_atoms(const json& j, int dim) {
  Atoms at;
  if (!j.is_array())
    throw Error(ErrorCode::InvalidSpec, "atoms must be an array");
  for (const auto& a : j) {
    reject_unknown_keys(a, {"x", "w"}, "atom");
    Atom atom;
    atom.x = parse_vector(a.at("x"), "atom x");
    if (atom.x.size() != dim)
      throw Error(ErrorCode::DimensionMismatch, "atom dimension mismatch");
    atom.w = num(a, "w", "atom");
    at.atoms.push_back(std::move(atom));
  }
  return at;
}

RhoSpec parse_rho(const json& j) {
  reject_unknown_keys(j, {"terms"}, "rho");
  RhoSpec rho;
  if (!j.contains("terms") || !j["terms"].is_array())
    throw Error(ErrorCode::InvalidSpec, "rho needs a terms array");
  for (const auto& t : j["terms"]) {
    reject_unknown_keys(t, {"coeff", "exponent"}, "rho term");
    rho.terms.push_back({num(t, "coeff", "rho term"),
                         num(t, "exponent", "rho term")});
  }
  return rho;
}

LevyComponent parse_component(const json& j, int dim) {
  if (!j.is_object() || !j.contains("type"))
    throw Error(ErrorCode::InvalidSpec, "component needs a type");
  std::string type = j["type"].get<std::string>();
  LevyComponent c;
  if (type == "stable_power") {
    reject_unknown_keys(j, {"type", "alpha", "c_plus", "c_minus", "cutoff"},
                        "stable_power");
    c.v = StablePowerDensity{num(j, "alpha", type), num(j, "c_plus", type),
                             num(j, "c_minus", type), num(j, "cutoff", type)};
  } else if (type == "log_singular") {
    reject_unknown_keys(j, {"type", "c", "delta", "mirrored"}, "log_singular");
    LogSingularDensity d{num(j, "c", type), num(j, "delta", type), false};
    if (j.contains("mirrored")) d.mirrored = j["mirrored"].get<bool>();
    c.v = d;
  } else if (type == "atoms") {
    reject_unknown_keys(j, {"type", "atoms"}, "atoms");
    c.v = parse_atoms(j.at("atoms"), dim);
  } else if (type == "type_alpha_beta") {
    reject_unknown_keys(j, {"type", "alpha", "beta", "c", "rho", "mirrored"},
                        "type_alpha_beta");
    TypeAlphaBetaDensity d;
    d.alpha = num(j, "alpha", type);
    d.beta = num(j, "beta", type);
    d.c = num(j, "c", type);
    d.rho = parse_rho(j.at("rho"));
    if (j.contains("mirrored")) d.mirrored = j["mirrored"].get<bool>();
    c.v = d;
  } else if (type == "scaled_restriction") {
    reject_unknown_keys(j, {"type", "scale", "interval", "inner"},
                        "scaled_restriction");
    ScaledRestriction r;
    r.scale = num(j, "scale", type);
    const auto& iv = j.at("interval");
    if (!iv.is_array() || iv.size() != 2)
      throw Error(ErrorCode::InvalidSpec, "interval must be [lo, hi]");
    r.lo = iv[0].get<double>();
    r.hi = iv[1].get<double>();
    r.inner = std::make_shared<LevyComponent>(parse_component(j.at("inner"), dim));
    c.v = r;
  } else {
    throw Error(ErrorCode::InvalidSpec, "unknown component type '" + type + "'");
  }
  return c;
}

LevyMeasure parse_measure(const json& j, int dim) {
  reject_unknown_keys(j, {"components"}, "levy_measure");
  LevyMeasure mu;
  mu.dim = dim;
  if (j.contains("components")) {
    if (!j["components"].is_array())
      throw Error(ErrorCode::InvalidSpec, "components must be an array");
    for (const auto& c : j["components"])
      mu.components.push_back(parse_component(c, dim));
  }
  return mu;
}

json component_to_json(const LevyComponent& c);

json measure_to_json_obj(const LevyMeasure& mu) {
  json out;
  json comps = json::array();
  for (const auto& c : mu.components) comps.push_back(component_to_json(c));
  out["components"] = std::move(comps);
  return out;
}

json component_to_json(const LevyComponent& c) {
  json j;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, StablePowerDensity>) {
          j["type"] = "stable_power";
          j["alpha"] = v.alpha;
          j["c_plus"] = v.c_plus;
          j["c_minus"] = v.c_minus;
          j["cutoff"] = v.cutoff;
        } else if constexpr (std::is_same_v<T, LogSingularDensity>) {
          j["type"] = "log_singular";
          j["c"] = v.c;
          j["delta"] = v.delta;
          j["mirrored"] = v.mirrored;
        } else if constexpr (std::is_same_v<T, Atoms>) {
          j["type"] = "atoms";
          json arr = json::array();
          for (const auto& a : v.atoms) {
            json ja;
            json x = json::array();
            for (int i = 0; i < a.x.size(); ++i) x.push_back(a.x[i]);
            ja["x"] = std::move(x);
            ja["w"] = a.w;
            arr.push_back(std::move(ja));
          }
          j["atoms"] = std::move(arr);
        } else if constexpr (std::is_same_v<T, ScaledRestriction>) {
          j["type"] = "scaled_restriction";
          j["scale"] = v.scale;
          j["interval"] = json::array({v.lo, v.hi});
          j["inner"] = component_to_json(*v.inner);
        } else if constexpr (std::is_same_v<T, TypeAlphaBetaDensity>) {
          j["type"] = "type_alpha_beta";
          j["alpha"] = v.alpha;
          j["beta"] = v.beta;
          j["c"] = v.c;
          json terms = json::array();
          for (const auto& t : v.rho.terms) {
            json jt;
            jt["coeff"] = t.coeff;
            jt["exponent"] = t.exponent;
            terms.push_back(std::move(jt));
          }
          j["rho"] = json{{"terms", std::move(terms)}};
          j["mirrored"] = v.mirrored;
        }
      },
      c.v);
  return j;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidSpec,
                std::string("JSON parse error: ") + e.what());
  }
}

}  // namespace

ProcessSpec parse_spec_json(const std::string& text) {
  json j = parse_text(text);
  reject_unknown_keys(j, {"dim", "a", "Q", "levy_measure", "assert"}, "spec");
  int dim = 1;
  if (j.contains("dim")) dim = j["dim"].get<int>();
  if (dim < 1) throw Error(ErrorCode::InvalidSpec, "dim must be >= 1");
  TripletData d;
  d.a = j.contains("a") ? parse_vector(j["a"], "a")
                        : Eigen::VectorXd::Zero(dim);
  if (d.a.size() != dim)
    throw Error(ErrorCode::DimensionMismatch, "a has wrong length");
  d.Q = Eigen::MatrixXd::Zero(dim, dim);
  if (j.contains("Q")) {
    const auto& q = j["Q"];
    if (!q.is_array() || static_cast<int>(q.size()) != dim)
      throw Error(ErrorCode::DimensionMismatch, "Q must be n x n");
    for (int r = 0; r < dim; ++r) {
      Eigen::VectorXd row = parse_vector(q[r], "Q row");
      if (row.size() != dim)
        throw Error(ErrorCode::DimensionMismatch, "Q must be n x n");
      d.Q.row(r) = row;
    }
  }
  d.mu = j.contains("levy_measure") ? parse_measure(j["levy_measure"], dim)
                                    : LevyMeasure{dim, {}};
  ProcessSpec spec{LevyTriplet::validate(std::move(d)), {}};
  if (j.contains("assert")) {
    const auto& a = j["assert"];
    reject_unknown_keys(a, {"h_holds", "bounded_resolvent", "has_densities"},
                        "assert");
    if (a.contains("h_holds")) spec.asserts.h1_holds = a["h_holds"].get<bool>();
    if (a.contains("bounded_resolvent"))
      spec.asserts.bounded_resolvent = a["bounded_resolvent"].get<bool>();
    if (a.contains("has_densities"))
      spec.asserts.has_densities = a["has_densities"].get<bool>();
  }
  return spec;
}

LevyMeasure parse_measure_json(const std::string& text, int dim) {
  return parse_measure(parse_text(text), dim);
}

FiniteMeasure parse_finite_measure_json(const std::string& text) {
  json j = parse_text(text);
  reject_unknown_keys(j, {"atoms"}, "finite measure");
  FiniteMeasure nu;
  if (j.contains("atoms")) {
    Atoms at = parse_atoms(j["atoms"], j["atoms"].empty()
                                           ? 1
                                           : static_cast<int>(
                                                 j["atoms"][0]["x"].size()));
    nu.atoms = std::move(at.atoms);
  }
  return nu;
}

std::string spec_to_json(const LevyTriplet& t) {
  json j;
  j["dim"] = t.dim();
  json a = json::array();
  for (int i = 0; i < t.dim(); ++i) a.push_back(t.a()[i]);
  j["a"] = std::move(a);
  json q = json::array();
  for (int r = 0; r < t.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < t.dim(); ++c) row.push_back(t.Q()(r, c));
    q.push_back(std::move(row));
  }
  j["Q"] = std::move(q);
  j["levy_measure"] = measure_to_json_obj(t.mu());
  return j.dump(2) + "\n";
}

std::string measure_to_json(const LevyMeasure& mu) {
  return measure_to_json_obj(mu).dump(2) + "\n";
}

namespace {

json chain_to_json(const Verdict& v) {
  json chain = json::array();
  for (size_t i = 0; i < v.citations.size(); ++i) {
    json e;
    e["rule"] = v.citations[i].rule;
    e["anchor"] = v.citations[i].anchor;
    json ev = json::object();
    if (i == 0)
      for (const auto& [k, val] : v.evidence) ev[k] = val;
    e["evidence"] = std::move(ev);
    e["source"] = v.citations[i].source;
    chain.push_back(std::move(e));
  }
  return chain;
}

json settings_to_json(const EngineOptions& opts) {
  json s;
  s["z_max"] = opts.z_max;
  s["eps_min_exp"] = opts.eps_min_exp;
  s["tol"] = opts.tol;
  s["threads"] = opts.threads;
  return s;
}

json report_obj(const Verdict& v, const EngineOptions& opts,
                const std::optional<BretagnolleCase>& bc, HittingSet hitting,
                bool with_case) {
  json j;
  j["verdict"] = status_name(v.status);
  if (with_case) {
    j["case"] = bc ? json(bcase_name(bc->c)) : json(nullptr);
    j["hitting_set"] = hitting_name(hitting);
  }
  j["chain"] = chain_to_json(v);
  json warnings = json::array();
  for (const auto& c : v.caveats) warnings.push_back(c);
  j["warnings"] = std::move(warnings);
  j["settings"] = settings_to_json(opts);
  return j;
}

std::string render_text(const Verdict& v,
                        const std::optional<BretagnolleCase>& bc,
                        HittingSet hitting, bool with_case) {
  std::ostringstream os;
  os << "verdict: " << status_name(v.status) << "\n";
  if (with_case) {
    os << "case: " << (bc ? bcase_name(bc->c) : "n/a") << "\n";
    os << "hitting set: " << hitting_name(hitting) << "\n";
  }
  if (!v.citations.empty()) {
    os << "chain:\n";
    for (const auto& c : v.citations)
      os << "  - [" << c.rule << "] (" << c.source << ") " << c.anchor << "\n";
  }
  if (!v.evidence.empty()) {
    os << "evidence:\n";
    for (const auto& [k, val] : v.evidence)
      os << "  " << k << " = " << val << "\n";
  }
  if (!v.caveats.empty()) {
    os << "warnings:\n";
    for (const auto& c : v.caveats) os << "  - " << c << "\n";
  }
  return os.str();
}

}  // namespace

std::string verdict_report_json(const HReport& rep, const EngineOptions& opts) {
  return report_obj(rep.verdict, opts, rep.bcase, rep.hitting, true).dump(2) +
         "\n";
}

std::string verdict_report_json(const Verdict& v, const EngineOptions& opts) {
  return report_obj(v, opts, std::nullopt, HittingSet::Unknown, false).dump(2) +
         "\n";
}

std::string verdict_report_text(const HReport& rep) {
  return render_text(rep.verdict, rep.bcase, rep.hitting, true);
}

std::string verdict_report_text(const Verdict& v) {
  return render_text(v, std::nullopt, HittingSet::Unknown, false);
}

}  // namespace levyh
