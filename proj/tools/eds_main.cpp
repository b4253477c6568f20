// Command-line front end for the exterior-differential-systems toolkit:
// classification of solved second-order systems, integral-element fibers,
// rank-2 prolongations, symbol algebras, Cauchy reductions, and the
// singular-solution constructions of the worked involutive example.
#include "eds/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace {

using namespace eds;

constexpr int kExitDomain = 1;
constexpr int kExitInput = 2;

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(std::string("invalid JSON in '") + path + "': " + err.what(),
                     static_cast<std::size_t>(err.byte));
  }
}

SolvedSystem load_system(const std::string& path) {
  return solved_system_from_json(read_json_file(path));
}

std::vector<RationalPoint> load_points(const std::string& path) {
  return points_from_json(read_json_file(path));
}

RationalPoint default_point(const SolvedSystem& sys) {
  RationalPoint pt =
      RationalPoint::of({{"x", 0}, {"y", 0}, {"z", 0}, {"p", 0}, {"q", 0}});
  pt.values[var_intern(sys.parameter)] = 1;
  return pt;
}

int max_tower_depth() {
  if (const char* env = std::getenv("EDS_MAX_DEPTH")) {
    int d = std::atoi(env);
    if (d >= 1) return d;
  }
  return 3;
}

void emit(const Json& j, bool text) {
  if (!text) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  // plain rendering: one "key: value" line per top-level entry
  for (const auto& [key, value] : j.items())
    std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
              << "\n";
}

struct Options {
  std::string system_path;
  std::string points_path;
  std::string point_path;
  std::string format = "json";
  bool verify = false;
};

int run_classify(const Options& opt) {
  SolvedSystem sys = load_system(opt.system_path);
  EquationChart eq = build_chart(sys);
  std::vector<RationalPoint> pts;
  if (!opt.points_path.empty()) pts = load_points(opt.points_path);
  if (!opt.point_path.empty()) pts.push_back(point_from_json(read_json_file(opt.point_path)));
  if (pts.empty()) pts.push_back(default_point(sys));
  // points are independent work items; results assemble in input order
  std::vector<std::future<Json>> work;
  work.reserve(pts.size());
  for (const auto& pt : pts)
    work.push_back(std::async(std::launch::async, [&eq, &sys, pt, &opt] {
      Classification c = classify_type(eq, pt);
      Json entry = Json::object();
      entry["point"] = point_to_json(pt);
      entry["report"] = classification_report(c);
      if (opt.verify) {
        Json checks = Json::object();
        checks["cauchy_consistent"] = c.cauchy_consistent;
        FiberDescriptor f = fiber_at(eq, pt);
        checks["kernel_dim_matches"] = f.kernel_dim == c.kernel_dim;
        checks["regularity"] = regularity_check(sys, {pt}).regular;
        entry["verify"] = std::move(checks);
      }
      return entry;
    }));
  Json out = Json::array();
  for (auto& w : work) out.push_back(w.get());
  emit(out.size() == 1 ? out[0] : out, opt.format == "text");
  return 0;
}

int run_fiber(const Options& opt) {
  SolvedSystem sys = load_system(opt.system_path);
  EquationChart eq = build_chart(sys);
  RationalPoint pt = opt.point_path.empty()
                         ? default_point(sys)
                         : point_from_json(read_json_file(opt.point_path));
  FiberDescriptor f = fiber_at(eq, pt);
  Json out = fiber_report(f);
  if (opt.verify) {
    SymbolicFiber sym = symbolic_fiber(eq);
    out["verify"] = Json::object();
    out["verify"]["generic_kernel_dim"] = sym.generic_kernel_dim;
    out["verify"]["matches_generic"] = sym.generic_kernel_dim == f.kernel_dim;
  }
  emit(out, opt.format == "text");
  return 0;
}

int run_prolong(const Options& opt, int depth) {
  SolvedSystem sys = load_system(opt.system_path);
  EquationChart eq = build_chart(sys);
  RationalPoint pt = opt.point_path.empty()
                         ? default_point(sys)
                         : point_from_json(read_json_file(opt.point_path));
  Prolongation pr = prolong(eq, pt);
  Json out;
  if (pr.charts) {
    AdaptedCoframe co = adapted_coframe(eq);
    out = prolongation_report(pr, co);
    // stratification samples along the nontransversal fiber
    Json samples = Json::array();
    for (int b = -1; b <= 1; ++b) {
      RationalPoint sp = pt;
      sp.values[var_intern(pr.charts->second.fiber_var)] = b;
      Json s = Json::object();
      s["fiber"] = b;
      s["stratum"] = stratify(pr.charts->second, sp) == Stratum::sigma0 ? "sigma0" : "sigma1";
      samples.push_back(std::move(s));
    }
    out["strata_samples"] = std::move(samples);
    if (opt.verify) {
      TransitionReport t =
          transition_check(pr.charts->first, pr.charts->second, *pr.transition);
      out["verify"] = Json::object();
      out["verify"]["transition_closed"] = t.generators_closed;
      out["verify"]["composite_identity"] = t.composite_identity;
    }
    if (depth > 1) {
      int cap = max_tower_depth();
      if (depth > cap) throw DomainError("depth exceeds EDS_MAX_DEPTH cap of " +
                                         std::to_string(cap));
      auto levels = tower(eq, depth, pt);
      Json tower_report = Json::array();
      for (const auto& level : levels) {
        Json lj = Json::object();
        lj["charts"] = level.charts.size();
        Json dims = Json::array();
        for (const auto& ds : level.fiber_kernel_dims) dims.push_back(ds);
        lj["fiber_kernel_dims"] = std::move(dims);
        tower_report.push_back(std::move(lj));
      }
      out["tower"] = std::move(tower_report);
    }
  } else {
    out = Json::object();
    out["base_type"] = to_string(pr.base_type);
    out["trivial_fiber"] = Json::object();
    out["trivial_fiber"]["type"] = to_string(pr.trivial->type);
    out["trivial_fiber"]["transversal"] = pr.trivial->transversal;
  }
  emit(out, opt.format == "text");
  return 0;
}

int run_symbol(const Options& opt, const std::string& chart_kind) {
  StratumModel sm = stratum_model(chart_kind != "sigma1");
  RationalPoint pt;
  if (!opt.point_path.empty()) {
    pt = point_from_json(read_json_file(opt.point_path));
  } else {
    pt = RationalPoint::of(
        {{"x", 0}, {"y", 0}, {"z", 0}, {"p", 0}, {"q", 0}, {"t", 1}});
    pt.values[var_intern(sm.chart.fiber_var)] = chart_kind == "sigma1" ? 0 : 1;
  }
  GradedAlgebra g = graded_symbol(sm.filtration, pt, sm.frame);
  ModelMatch m = match_model(g);
  Json out = symbol_report(g, m);
  if (opt.verify) {
    out["verify"] = Json::object();
    out["verify"]["jacobi"] = g.jacobi_ok();
    out["verify"]["generating"] = generating_check(g);
  }
  emit(out, opt.format == "text");
  return 0;
}

int run_cauchy(const Options& opt) {
  SolvedSystem sys = load_system(opt.system_path);
  EquationChart eq = build_chart(sys);
  CauchyResult ch = cauchy_characteristics(eq.pfaff());
  Json out = cauchy_report(ch);
  if (opt.verify) {
    bool inside = true;
    for (const auto& f : ch.fields)
      for (const auto& g : eq.pfaff().generators)
        inside = inside && evaluate(g, f).is_zero();
    out["verify"] = Json::object();
    out["verify"]["fields_inside_system"] = inside;
  }
  emit(out, opt.format == "text");
  return 0;
}

int run_growth(const Options& opt) {
  SolvedSystem sys = load_system(opt.system_path);
  EquationChart eq = build_chart(sys);
  DerivedFlag flag = weak_derived_flag(eq.pfaff());
  Json out = flag_report(flag);
  if (!opt.point_path.empty()) {
    RationalPoint pt = point_from_json(read_json_file(opt.point_path));
    out["ranks_at_point"] = growth_at(eq.pfaff(), pt).ranks;
  }
  if (opt.verify) {
    // the annihilator route must agree with the bracket route up front
    auto derived = derived_system(eq.pfaff());
    int stage2 = flag.ranks.size() > 1 ? flag.ranks[1] : flag.ranks[0];
    out["verify"] = Json::object();
    out["verify"]["derived_rank_agreement"] = derived.system.rank() == stage2;
  }
  emit(out, opt.format == "text");
  return 0;
}

int run_solve(const Options& opt, const std::string& method, const std::string& y0,
              const std::string& phi) {
  SolutionSurface s = method == "ii" ? solve_ii(parse_expr(phi.empty() ? y0 : phi))
                                     : solve_i(parse_expr(y0));
  SolutionReport rep = verify_solution(s);
  Json out = solution_report(s, rep);
  emit(out, opt.format == "text");
  if (opt.verify && !(rep.pullbacks_zero && rep.prolongation_pullback_zero)) {
    std::cerr << "verification failed: the surface is not integral\n";
    return kExitDomain;
  }
  return 0;
}

int run_compare(const Options& opt, const std::string& y0) {
  Expr gen = parse_expr(y0);
  bool equal = compare_solutions(gen);
  Json out = Json::object();
  out["y0"] = y0;
  out["equal"] = equal;
  if (opt.verify) {
    VarId t = var_intern("t");
    Expr phi = gen.substitute({{t, -Expr::variable("tau")}});
    out["verify"] = Json::object();
    out["verify"]["first_integral"] = verify_solution(solve_i(gen)).pullbacks_zero;
    out["verify"]["second_integral"] = verify_solution(solve_ii(phi)).pullbacks_zero;
  }
  emit(out, opt.format == "text");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exterior differential systems toolkit"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));

  auto add_common = [&](CLI::App* cmd, bool needs_system) {
    cmd->fallthrough();
    if (needs_system)
      cmd->add_option("--system", opt.system_path, "system JSON file")->required();
    cmd->add_flag("--verify", opt.verify, "re-run internal cross-checks");
  };

  auto* classify = app.add_subcommand("classify", "classify a solved system at points");
  add_common(classify, true);
  classify->add_option("--points", opt.points_path, "JSON array of points");
  classify->add_option("--point", opt.point_path, "single point JSON file");

  auto* fiber = app.add_subcommand("fiber", "integral-element fiber at a point");
  add_common(fiber, true);
  fiber->add_option("--point", opt.point_path, "point JSON file");

  int depth = 1;
  auto* prolong_cmd = app.add_subcommand("prolong", "rank-2 prolongation charts");
  add_common(prolong_cmd, true);
  prolong_cmd->add_option("--point", opt.point_path, "base point JSON file");
  prolong_cmd->add_option("--depth", depth, "iterate the prolongation");

  std::string chart_kind = "sigma0";
  auto* symbol = app.add_subcommand("symbol", "graded symbol algebra on a stratum");
  add_common(symbol, false);
  symbol->add_option("--chart", chart_kind, "sigma0 or sigma1")
      ->check(CLI::IsMember({"sigma0", "sigma1"}));
  symbol->add_option("--point", opt.point_path, "point JSON file");

  auto* cauchy = app.add_subcommand("cauchy", "Cauchy characteristic system");
  add_common(cauchy, true);

  auto* growth = app.add_subcommand("growth", "weak derived flag and growth vector");
  add_common(growth, true);
  growth->add_option("--point", opt.point_path, "point JSON file");

  auto* cartan = app.add_subcommand("cartan", "the worked involutive example");
  cartan->require_subcommand(1);
  cartan->fallthrough();
  std::string method = "i", y0, phi;
  auto* solve = cartan->add_subcommand("solve", "construct a singular solution");
  solve->fallthrough();
  solve->add_option("--method", method, "i or ii")->check(CLI::IsMember({"i", "ii"}));
  solve->add_option("--y0", y0, "generating polynomial in t");
  solve->add_option("--phi", phi, "generating polynomial in tau");
  solve->add_flag("--verify", opt.verify, "check integrality");
  auto* compare = cartan->add_subcommand("compare", "compare both constructions");
  compare->fallthrough();
  compare->add_option("--y0", y0, "generating polynomial in t")->required();
  compare->add_flag("--verify", opt.verify, "check integrality of both surfaces");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(classify)) return run_classify(opt);
    if (app.got_subcommand(fiber)) return run_fiber(opt);
    if (app.got_subcommand(prolong_cmd)) return run_prolong(opt, depth);
    if (app.got_subcommand(symbol)) return run_symbol(opt, chart_kind);
    if (app.got_subcommand(cauchy)) return run_cauchy(opt);
    if (app.got_subcommand(growth)) return run_growth(opt);
    if (app.got_subcommand(cartan)) {
      if (cartan->got_subcommand(solve)) return run_solve(opt, method, y0, phi);
      if (cartan->got_subcommand(compare)) return run_compare(opt, y0);
    }
  } catch (const ParseError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& err) {
    std::cerr << "input error: " << err.what() << " (at position 0)\n";
    return kExitInput;
  } catch (const DegenerateError& err) {
    std::cerr << "domain error: " << err.what() << "\n";
    return kExitDomain;
  } catch (const DomainError& err) {
    std::cerr << "domain error: " << err.what() << "\n";
    return kExitDomain;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitDomain;
  }
  return 0;
}
