#pragma once

#include <string>

namespace ugspec {

/// Tolerances and budgets shared by every spectral operation.
struct NumericConfig {
    double residual_tol = 1e-9;     // per-eigenpair residual, relative to max(1, row norm)
    double aggregate_tol = 1e-8;    // reconstruction / trace checks
    double regularity_tol = 1e-9;   // relative spread of degrees still called regular
    double zero_tol = 1e-12;        // relative norm below which a projection part is zero
    double net_cap = 1e8;           // max epsilon-net points
    double brute_force_budget = 1e8;
    int jacobi_max_sweeps = 100;
};

const NumericConfig &numeric_config();
void set_numeric_config(const NumericConfig &cfg);

/// Reads overrides from a JSON object file; unknown keys are rejected.
NumericConfig load_numeric_config(const std::string &path);

/// Applies UGSPEC_NUMERIC_CONFIG if set. Returns true if a file was loaded.
bool load_numeric_config_from_env();

} // namespace ugspec
