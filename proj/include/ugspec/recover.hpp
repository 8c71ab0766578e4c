#pragma once

#include "ugspec/core.hpp"
#include "ugspec/linalg.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace ugspec {

enum class SolveMode { adjacency, laplacian };

struct SolveParams {
    double epsilon = 0.01;
    double gamma = 0.5;
    std::size_t max_dim = 8;
    SolveMode mode = SolveMode::adjacency;
    std::optional<double> net_step_override;
    double yes_constant = 10.0;
    int threads = 1;
    /// gamma > 8 epsilon. Turning it off makes the yes-threshold 1.
    bool enforce_gap_precondition = true;

    /// Throws PreconditionError.
    void validate() const;
};

/// 1 - C (eps / (gamma - 8 eps) + eps) clamped to [0, 1]; 1 when gamma <= 8 eps.
double yes_threshold(double epsilon, double gamma, double yes_constant);

// ---- epsilon-net -----------------------------------------------------------

/// sqrt(2 eps / (gamma * dim)).
double default_net_step(double epsilon, double gamma, std::size_t dim);

struct NetSpec {
    const Eigenspace *basis = nullptr;
    double step = 0.0;
};

/// Walks { z in Z^dim : step * |z| <= 1 } in lexicographic order of z.
class NetEnumerator {
  public:
    NetEnumerator(std::size_t dim, double step);

    /// Advances to the next point; the first call yields the lexicographically smallest.
    bool next();
    const std::vector<std::int64_t> &coefficients() const noexcept { return z_; }
    std::size_t dim() const noexcept { return z_.size(); }
    double step() const noexcept { return step_; }

  private:
    double radius2_; // in lattice units
    double step_;
    std::vector<std::int64_t> z_;
    std::vector<std::int64_t> bound_;  // |z_j| <= bound_[j] given the prefix
    std::vector<double> prefix2_;      // sum_{i<j} z_i^2
    bool started_ = false;
    bool done_ = false;

    void descend_from(std::size_t level);
};

/// Exact number of lattice points the net will contain (floating count, saturates
/// gracefully for astronomically large nets).
double projected_net_size(std::size_t dim, double step);

/// Throws BudgetError naming dim and step if the net exceeds `cap`.
void check_net_budget(std::size_t dim, double step, double cap);

/// Calls `visit(vector)` on every net point, with vector = step * sum z_s w_s.
void enumerate_net(const NetSpec &spec, const std::function<void(std::span<const double>)> &visit);

// ---- candidate evaluation kernels ----------------------------------------

/// Flattened edge list for fast repeated evaluation.
class CompiledInstance {
  public:
    explicit CompiledInstance(const UGInstance &inst);
    /// Satisfied weight of the labeling read off from x (argmax per block).
    double evaluate(std::span<const double> x, std::vector<Label> &scratch) const;
    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }

  private:
    std::size_t n_, k_;
    std::vector<Vertex> u_, v_;
    std::vector<double> w_;
    std::vector<Label> images_;
};

/// Satisfied weight for each of `count` candidate vectors stored back to back.
void evaluate_candidates_serial(const CompiledInstance &ci, std::span<const double> candidates, std::size_t count,
                                std::span<double> out);
void evaluate_candidates_omp(const CompiledInstance &ci, std::span<const double> candidates, std::size_t count,
                             std::span<double> out, int threads);

// ---- solver --------------------------------------------------------------

enum class Decision { yes, no };

struct SolveReport {
    Labeling best_labeling;
    double best_value = 0.0;
    Decision decision = Decision::no;
    double yes_threshold = 1.0;
    std::size_t dim_W = 0;
    std::uint64_t net_points_evaluated = 0; // net points plus the 2*dim(W) signed basis vectors
    double eigen_time = 0.0;                // seconds
    double enumeration_time = 0.0;          // seconds
};

/// Threshold of W for the given mode: (1-gamma) d or gamma * d_avg.
double eigenspace_threshold(const UGInstance &inst, SolveMode mode, double gamma);

/// Net search over an already selected W (dim >= 1).
SolveReport recover_from_eigenspace(const UGInstance &inst, const Eigenspace &W, const SolveParams &params);

SolveReport recover_solution(const UGInstance &inst, const SolveParams &params);

/// Split of the normalized characteristic vector of `planted` against W.
ProjectionSplit closeness_diagnostic(const UGInstance &inst, const Labeling &planted, const SolveParams &params);

/// M (adjacency mode, regular input required) or L_M (laplacian mode) and its W.
struct SelectedSpace {
    SymmetricMatrix matrix;
    Eigenspace W;
    double degree = 0.0; // d or d_avg
};
SelectedSpace select_solver_space(const UGInstance &inst, SolveMode mode, double gamma);

} // namespace ugspec
