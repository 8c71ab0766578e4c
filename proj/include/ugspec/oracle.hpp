#pragma once

#include "ugspec/core.hpp"

#include <cstdint>
#include <vector>

namespace ugspec {

struct OracleResult {
    double best_value = 0.0;
    Labeling best_labeling;
    std::uint64_t labelings_examined = 0;
    bool shift_reduced = false;
};

struct OracleOptions {
    double budget = 1e8;
    int threads = 1;
    /// Fix the first vertex of each component to 0 when the instance is a group Max-Lin.
    bool shift_reduction = true;
};

/// Exact optimum by exhaustive search per connected component. Among optimal
/// labelings the lexicographically smallest is returned. Throws BudgetError
/// naming the required count if it exceeds the budget.
OracleResult brute_force(const UGInstance &inst, const OracleOptions &opts = {});

/// One component's search space as seen by the kernels.
struct OracleProblem {
    std::size_t k = 0;
    std::size_t vars = 0;     // free vertices, most significant first
    Label fixed_first = 0;    // label of the pinned first vertex when `pinned`
    bool pinned = false;
    std::vector<std::uint32_t> eu, ev; // local endpoints (0 = first vertex)
    std::vector<double> ew;
    std::vector<Label> images; // k per edge
    double total = 0.0;        // component weight summed in edge order

    std::uint64_t count() const;
};

struct OracleHit {
    double best = -1.0;
    std::uint64_t index = 0;    // enumeration index of the winner
    std::uint64_t examined = 0;
};

/// Plain odometer loop.
OracleHit oracle_search_serial(const OracleProblem &p);
/// Index range split into chunks across threads; same winner and count as the serial loop.
OracleHit oracle_search_omp(const OracleProblem &p, int threads);

} // namespace ugspec
