#include "ugspec/report_json.hpp"

#include <cmath>

namespace ugspec {

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

const char *to_string(Decision d) { return d == Decision::yes ? "YES" : "NO"; }

json to_json(const Labeling &L) { return json(L.labels()); }

json to_json(const SolveReport &r, bool timings) {
    json j = {
        {"best_labeling", to_json(r.best_labeling)},
        {"best_value", r.best_value},
        {"decision", to_string(r.decision)},
        {"yes_threshold", r.yes_threshold},
        {"dim_W", r.dim_W},
        {"net_points_evaluated", r.net_points_evaluated},
    };
    if (timings) {
        j["eigen_time"] = r.eigen_time;
        j["enumeration_time"] = r.enumeration_time;
    }
    return j;
}

json to_json(const UniformityReport &r) {
    return {
        {"bound", r.bound},
        {"basis_max_linf", r.basis_max_linf},
        {"worst_basis_index", r.worst_basis_index},
        {"passed", r.passed},
        {"samples", r.samples},
        {"sampled_max_linf", r.sampled_max_linf},
        {"sampled_passed", r.sampled_passed},
    };
}

json to_json(const PerturbationReport &r) {
    return {
        {"lambda", r.lambda},
        {"lambda_s", finite_or_null(r.lambda_s)},
        {"numerator", r.numerator},
        {"beta_bound", finite_or_null(r.beta_bound)},
        {"beta_measured", r.beta_measured},
        {"R_row_budget", r.R_row_budget},
        {"R_norm_bound", r.R_norm_bound},
        {"dim_Y", r.dim_Y},
    };
}

json to_json(const MaxLinSolveReport &r, bool timings) {
    json j = to_json(r.solve, timings);
    j["maxlin"] = {
        {"theta", r.theta},
        {"dim_S", r.dim_S},
        {"dim_W", r.dim_W},
        {"k_times_dim_S", r.k_times_dim_S},
        {"dim_check_passed", r.dim_check_passed},
        {"expander_regime", r.expander_regime},
        {"uniformity", to_json(r.uniformity)},
        {"warnings", r.warnings},
    };
    return j;
}

json to_json(const OracleResult &r) {
    return {
        {"best_value", r.best_value},
        {"best_labeling", to_json(r.best_labeling)},
        {"labelings_examined", r.labelings_examined},
        {"shift_reduced", r.shift_reduced},
    };
}

json to_json(const ProjectionSplit &s) { return {{"alpha", s.alpha}, {"beta", s.beta}}; }

json to_json(const NumericConfig &c) {
    return {
        {"residual_tol", c.residual_tol},
        {"aggregate_tol", c.aggregate_tol},
        {"regularity_tol", c.regularity_tol},
        {"zero_tol", c.zero_tol},
        {"net_cap", c.net_cap},
        {"brute_force_budget", c.brute_force_budget},
        {"jacobi_max_sweeps", c.jacobi_max_sweeps},
    };
}

json to_json(const std::vector<SpectrumLevel> &levels) {
    json arr = json::array();
    for (const auto &l : levels)
        arr.push_back({{"r", l.r}, {"eigenvalue", l.eigenvalue}, {"multiplicity", l.multiplicity}});
    return arr;
}

json to_json(const Eigenspace &S, bool with_vectors) {
    json j = {
        {"dim_ambient", S.dim_ambient},
        {"dim", S.dim()},
        {"threshold", S.threshold},
        {"mode", S.mode == SpectralMode::adjacency_high ? "adjacency_high" : "laplacian_low"},
        {"eigenvalues", S.eigenvalues},
    };
    if (with_vectors)
        j["vectors"] = S.basis;
    return j;
}

} // namespace ugspec
