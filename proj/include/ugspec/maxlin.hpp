#pragma once

#include "ugspec/core.hpp"
#include "ugspec/linalg.hpp"
#include "ugspec/recover.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ugspec {

/// Finite abelian group given as a product of cyclic factors. Elements are
/// encoded in mixed radix with factor 0 least significant, so Z_2^kappa
/// elements are kappa-bit integers and addition is xor.
class Group {
  public:
    explicit Group(std::vector<Label> factors);
    static Group cyclic(Label k) { return Group({k}); }
    static Group boolean_cube(unsigned kappa) { return Group(std::vector<Label>(kappa, 2)); }

    std::size_t order() const noexcept { return order_; }
    const std::vector<Label> &factors() const noexcept { return factors_; }
    Label add(Label a, Label b) const;
    Label sub(Label a, Label b) const;

    /// Permutation of the constraint x_u - x_v = c: i -> i - c.
    Permutation shift_permutation(Label c) const;

    friend bool operator==(const Group &, const Group &) = default;

  private:
    std::vector<Label> factors_;
    std::size_t order_ = 1;
};

struct MaxLinEdge {
    Vertex u = 0;
    Vertex v = 0;
    double weight = 1.0;
    Label c = 0; // x_u - x_v = c
};

struct MaxLinInstance {
    Group group{{1}};
    UGInstance base;
    std::vector<Label> shifts; // per edge, aligned with base.edges()
};

MaxLinInstance make_maxlin(const Group &group, std::size_t n, std::span<const MaxLinEdge> edges);
/// Throws InvalidInstance if some edge permutation is not a shift of `group`.
MaxLinInstance as_maxlin(const UGInstance &inst, const Group &group);
/// Z_k if every permutation is a cyclic shift, else Z_2^kappa for xor shifts, else nothing.
std::optional<Group> detect_group(const UGInstance &inst);

/// `maxlin n k` text for cyclic groups, the `ug` format otherwise.
std::string serialize_maxlin(const MaxLinInstance &inst);

/// L_u + i for every vertex.
Labeling shift(const Labeling &L, Label i, const Group &group);

/// Lifted eigenbasis of the completion: for each phi and each group element i,
/// the vector with entry phi_u at (u, planted_u + i). `planted` must satisfy every edge.
std::vector<std::vector<double>> lift_eigenbasis(const MaxLinInstance &inst, const Eigenspace &phi_basis,
                                                 const Labeling &planted);

struct UniformityReport {
    double bound = 0.0; // C / sqrt(n)
    double basis_max_linf = 0.0;
    std::size_t worst_basis_index = 0;
    bool passed = false; // on the basis vectors
    std::size_t samples = 0;
    double sampled_max_linf = 0.0;
    bool sampled_passed = false;
};

/// The ell-infinity hypothesis checked on the basis (a necessary proxy) plus
/// random unit combinations of it.
UniformityReport uniformity_check(const Eigenspace &S, double C, std::size_t samples = 1000,
                                  std::uint64_t seed = 0);

/// wbar_u = |w_u| (Euclidean norm of block u).
std::vector<double> block_norm_vector(std::span<const double> w, std::size_t n, std::size_t k);

struct PerturbationReport {
    double lambda = 0.0;
    double lambda_s = 0.0;       // -inf when no eigenvalue of the completion is below (1-gamma) d
    double numerator = 0.0;      // |(Mtilde - M) w|
    double beta_bound = 0.0;     // numerator / (lambda - lambda_s), +inf if the gap is not positive
    double beta_measured = 0.0;  // distance of w from Y
    double R_row_budget = 0.0;   // total weight of perturbed edges
    double R_norm_bound = 0.0;   // 2 |R wbar|, an upper bound for the numerator
    std::size_t dim_Y = 0;
};

/// Perturbation diagnostics for a unit eigenvector w of M against Y, the span of
/// eigenvectors of the completion with eigenvalue >= (1-gamma) d.
PerturbationReport sin_theta_report(const MaxLinInstance &inst, const MaxLinInstance &completion,
                                    std::span<const double> w, double gamma);

/// sin_theta_report for every eigenvector of M with eigenvalue >= (1-theta) d.
std::vector<PerturbationReport> sin_theta_reports(const MaxLinInstance &inst, const MaxLinInstance &completion,
                                                  double theta, double gamma);

struct MaxLinParams {
    double epsilon = 0.01;
    double gamma = 0.5;
    std::optional<double> theta; // default_theta() when unset
    double uniformity_C = 1.0;
    double theta_floor_constant = 1.0; // theta >= constant * eps * gamma
    std::size_t max_dim = 8;
    std::optional<double> net_step_override;
    double yes_constant = 10.0;
    int threads = 1;

    double resolved_theta() const;
    void validate() const;
};

/// min(gamma, max(10 eps gamma, gamma^3 / 100)).
double default_theta(double epsilon, double gamma);

struct MaxLinSolveReport {
    SolveReport solve;
    double theta = 0.0;
    std::size_t dim_S = 0;
    std::size_t dim_W = 0;
    std::size_t k_times_dim_S = 0;
    bool dim_check_passed = false;
    bool expander_regime = false; // dim_S == 1
    UniformityReport uniformity;
    std::vector<std::string> warnings;
};

MaxLinSolveReport solve_maxlin(const MaxLinInstance &inst, const MaxLinParams &params);

} // namespace ugspec
