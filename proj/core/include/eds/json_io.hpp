#pragma once

#include "eds/cartan.hpp"

#include <nlohmann/json.hpp>

namespace eds {

using Json = nlohmann::ordered_json;

// ---- inputs ----

// {"solved": {"r": "t^3/3", "s": "t^2/2"}, "parameter": "t"}
SolvedSystem solved_system_from_json(const Json& j);

// {"x": 0, "y": "1/2", ...}; values are integers or rational strings
RationalPoint point_from_json(const Json& j);

// a single point object or an array of them
std::vector<RationalPoint> points_from_json(const Json& j);

Rat rat_from_json(const Json& j);

// ---- reports ----

Json rat_to_json(const Rat& r);
Json point_to_json(const RationalPoint& pt);

// {degree, terms: [{indices: [...], coeff: "expr"}]}
Json form_to_json(const Form& f);
Form form_from_json(const Chart& chart, const Json& j);

Json system_to_json(const PfaffSystem& s);

// {mode, ranks, degeneracy_loci: [...]}
Json flag_report(const DerivedFlag& flag);

Json cauchy_report(const CauchyResult& c);

Json growth_report(const GrowthVector& g);

// {type, kernel_dim, transversal, delta_sign, cauchy_rank, certificates}
Json classification_report(const Classification& c);

Json fiber_report(const FiberDescriptor& f);

// {kind, coordinates, generators, transition, strata_samples, scalings, f_expr}
Json prolongation_report(const Prolongation& p, const AdaptedCoframe& co);

// {dims, brackets: [{deg_pair, basis_pair, result_coeffs}], generating, model}
Json symbol_report(const GradedAlgebra& g, const ModelMatch& match);

// {parameters, components, free_function, checks}
Json solution_report(const SolutionSurface& s, const SolutionReport& rep);

}  // namespace eds
