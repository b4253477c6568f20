#include "eds/json_io.hpp"

namespace eds {

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rat(Int(s));
      return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw ParseError("not a rational number: '" + s + "'", 0);
    }
  }
  throw ParseError("expected an integer or a rational string", 0);
}

SolvedSystem solved_system_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("solved") || !j.contains("parameter"))
    throw ParseError("system JSON needs 'solved' and 'parameter'", 0);
  std::map<std::string, Expr> solved;
  for (const auto& [key, value] : j.at("solved").items())
    solved[key] = parse_expr(value.get<std::string>());
  return SolvedSystem(std::move(solved), j.at("parameter").get<std::string>());
}

RationalPoint point_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("point JSON must be an object", 0);
  RationalPoint pt;
  for (const auto& [key, value] : j.items()) pt.values[var_intern(key)] = rat_from_json(value);
  return pt;
}

std::vector<RationalPoint> points_from_json(const Json& j) {
  std::vector<RationalPoint> pts;
  if (j.is_array()) {
    for (const auto& e : j) pts.push_back(point_from_json(e));
  } else if (j.is_object() && j.contains("points")) {
    for (const auto& e : j.at("points")) pts.push_back(point_from_json(e));
  } else {
    pts.push_back(point_from_json(j));
  }
  return pts;
}

Json rat_to_json(const Rat& r) {
  if (denominator(r) == 1 && numerator(r) >= -((Int(1) << 62)) && numerator(r) <= (Int(1) << 62))
    return Json(numerator(r).convert_to<long long>());
  return Json(rat_to_string(r));
}

Json point_to_json(const RationalPoint& pt) {
  Json j = Json::object();
  for (const auto& [v, value] : pt.values) j[var_name(v)] = rat_to_json(value);
  return j;
}

Json form_to_json(const Form& f) {
  Json j = Json::object();
  j["degree"] = f.degree();
  Json terms = Json::array();
  for (const auto& [idx, c] : f.terms()) {
    Json term = Json::object();
    term["indices"] = idx;
    term["coeff"] = c.to_string();
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j;
}

Form form_from_json(const Chart& chart, const Json& j) {
  Form f(chart, j.at("degree").get<int>());
  for (const auto& term : j.at("terms")) {
    std::vector<int> idx = term.at("indices").get<std::vector<int>>();
    f.add_term(std::move(idx), parse_expr(term.at("coeff").get<std::string>()));
  }
  return f;
}

Json system_to_json(const PfaffSystem& s) {
  Json j = Json::array();
  for (const auto& g : s.generators) j.push_back(form_to_json(g));
  return j;
}

Json flag_report(const DerivedFlag& flag) {
  Json j = Json::object();
  j["mode"] = flag.mode == FlagMode::weak ? "weak" : "strong";
  j["ranks"] = flag.ranks;
  Json loci = Json::array();
  for (const auto& l : flag.loci) loci.push_back(l.to_string());
  j["degeneracy_loci"] = std::move(loci);
  return j;
}

Json cauchy_report(const CauchyResult& c) {
  Json j = Json::object();
  j["rank"] = c.rank;
  Json fields = Json::array();
  for (const auto& f : c.fields) {
    Json comps = Json::array();
    for (const auto& e : f.components()) comps.push_back(e.to_string());
    fields.push_back(std::move(comps));
  }
  j["fields"] = std::move(fields);
  Json loci = Json::array();
  for (const auto& l : c.loci) loci.push_back(l.to_string());
  j["degeneracy_loci"] = std::move(loci);
  return j;
}

Json growth_report(const GrowthVector& g) {
  Json j = Json::object();
  j["ranks"] = g.ranks;
  return j;
}

Json classification_report(const Classification& c) {
  Json j = Json::object();
  j["type"] = to_string(c.label.kind);
  if (!c.label.reason.empty()) j["reason"] = c.label.reason;
  j["kernel_dim"] = c.kernel_dim;
  if (c.transversal.has_value())
    j["transversal"] = *c.transversal;
  else
    j["transversal"] = nullptr;
  j["delta_sign"] = c.delta_sign;
  j["cauchy_rank"] = c.cauchy_rank;
  j["cauchy_consistent"] = c.cauchy_consistent;
  Json pencil = Json::object();
  pencil["qf"] = Json::array({c.pencil.qf.a.to_string(), c.pencil.qf.b.to_string(),
                              c.pencil.qf.c.to_string()});
  pencil["qg"] = Json::array({c.pencil.qg.a.to_string(), c.pencil.qg.b.to_string(),
                              c.pencil.qg.c.to_string()});
  pencil["delta"] = c.pencil.delta.to_string();
  j["pencil"] = std::move(pencil);
  Json certificates = Json::object();
  Json loci = Json::array();
  for (const auto& l : c.loci) loci.push_back(l.to_string());
  certificates["loci"] = std::move(loci);
  certificates["minors"] = Json::array({"1"});
  j["certificates"] = std::move(certificates);
  return j;
}

Json fiber_report(const FiberDescriptor& f) {
  Json j = Json::object();
  j["point"] = point_to_json(f.point);
  j["kernel_dim"] = f.kernel_dim;
  Json basis = Json::array();
  for (std::size_t i = 0; i < f.kernel_basis.size(); ++i) {
    Json e = Json::object();
    e["wedge_coords"] = Json::array({rat_to_json(f.kernel_basis[i][0]),
                                     rat_to_json(f.kernel_basis[i][1]),
                                     rat_to_json(f.kernel_basis[i][2])});
    e["transversal"] = static_cast<bool>(f.basis_transversal[i]);
    basis.push_back(std::move(e));
  }
  j["kernel_basis"] = std::move(basis);
  j["has_transversal"] = f.has_transversal;
  j["has_nontransversal"] = f.has_nontransversal;
  return j;
}

namespace {

Json prolong_chart_report(const ProlongChart& c) {
  Json j = Json::object();
  j["kind"] = c.transversal ? "transversal" : "nontransversal";
  j["coordinates"] = c.chart.coords();
  j["fiber"] = c.fiber_var;
  Json gens = Json::array();
  for (const auto& g : c.generators) gens.push_back(form_to_json(g));
  j["generators"] = std::move(gens);
  j["theta"] = form_to_json(c.theta);
  j["f_expr"] = c.f_expr.to_string();
  return j;
}

}  // namespace

Json prolongation_report(const Prolongation& p, const AdaptedCoframe& co) {
  Json j = Json::object();
  j["base_type"] = to_string(p.base_type);
  Json coframe = Json::object();
  coframe["hat1"] = form_to_json(co.hat1);
  coframe["hat2"] = form_to_json(co.hat2);
  coframe["omega1"] = form_to_json(co.omega1);
  coframe["omega2"] = form_to_json(co.omega2);
  coframe["pi"] = form_to_json(co.pi);
  j["adapted_coframe"] = std::move(coframe);
  Json scalings = Json::object();
  scalings["pi_vertical_pairing"] = co.pi_vertical_pairing.to_string();
  scalings["hat1_combination"] =
      Json::array({co.combo_c1.to_string(), co.combo_c2.to_string()});
  j["scalings"] = std::move(scalings);
  if (p.charts) {
    j["charts"] = Json::array(
        {prolong_chart_report(p.charts->first), prolong_chart_report(p.charts->second)});
    Json t = Json::object();
    t["domain"] = p.transition->domain;
    Json comps = Json::array();
    for (const auto& c : p.transition->forward.components()) comps.push_back(c.to_string());
    t["map"] = std::move(comps);
    j["transition"] = std::move(t);
  }
  if (p.trivial) {
    Json t = Json::object();
    t["type"] = to_string(p.trivial->type);
    t["transversal"] = p.trivial->transversal;
    j["trivial_fiber"] = std::move(t);
  }
  return j;
}

Json symbol_report(const GradedAlgebra& g, const ModelMatch& match) {
  Json j = Json::object();
  j["dims"] = g.dims;
  Json brackets = Json::array();
  for (const auto& [pair, comps] : g.table) {
    Json b = Json::object();
    b["deg_pair"] = Json::array({g.grade_of(pair.first), g.grade_of(pair.second)});
    b["basis_pair"] = Json::array({pair.first, pair.second});
    Json cs = Json::array();
    for (const auto& c : comps) cs.push_back(rat_to_json(c));
    b["result_coeffs"] = std::move(cs);
    brackets.push_back(std::move(b));
  }
  j["brackets"] = std::move(brackets);
  j["generating"] = generating_check(g);
  j["model"] = to_string(match.model);
  j["k_invariant"] = match.k_invariant;
  j["table_match"] = match.table_match;
  j["sign_flips"] = match.sign_flips;
  return j;
}

Json solution_report(const SolutionSurface& s, const SolutionReport& rep) {
  Json j = Json::object();
  j["parameters"] = s.params.coords();
  Json comps = Json::object();
  const char* names[] = {"x", "y", "z", "p", "q", "t"};
  for (std::size_t i = 0; i < 6; ++i) comps[names[i]] = s.components[i].to_string();
  comps["b"] = s.fiber_b.to_string();
  j["components"] = std::move(comps);
  j["free_function"] = s.free_function.to_string();
  Json checks = Json::object();
  checks["pullbacks_zero"] = rep.pullbacks_zero;
  checks["prolongation_pullback_zero"] = rep.prolongation_pullback_zero;
  checks["nonimmersion_locus"] = rep.nonimmersion_locus.to_string();
  checks["through_origin"] = rep.through_origin;
  checks["origin_condition"] = s.origin_condition;
  checks["transcription_match"] = rep.transcription_match;
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace eds
