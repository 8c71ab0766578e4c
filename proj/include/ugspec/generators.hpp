#pragma once

#include "ugspec/core.hpp"
#include "ugspec/linalg.hpp"
#include "ugspec/maxlin.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ugspec {

struct SkeletonEdge {
    Vertex u = 0;
    Vertex v = 0;
    double weight = 1.0;
};

/// A weighted graph with no constraints attached yet.
struct GraphSkeleton {
    std::size_t n = 0;
    std::vector<SkeletonEdge> edges;
    std::optional<double> lambda2; // measured second adjacency eigenvalue, when recorded
};

enum class ConstraintFamily { general, maxlin };

struct PlantedSpec {
    GraphSkeleton graph;
    std::size_t k = 2;
    Labeling planted;
    ConstraintFamily family = ConstraintFamily::general;
    std::uint64_t seed = 0;
};

struct PlantedInstance {
    UGInstance inst;
    Labeling planted;
};

/// Uniform labels in [0, k).
Labeling random_labeling(std::size_t n, std::size_t k, std::uint64_t seed);

/// Each edge gets a uniformly random permutation with pi(planted_u) = planted_v
/// (general) or the cyclic shift c = planted_u - planted_v (maxlin).
PlantedInstance planted_instance(const PlantedSpec &spec);
MaxLinInstance planted_maxlin(const GraphSkeleton &graph, const Group &group, const Labeling &planted);

/// Rewrites the shortest prefix of a seeded random edge order whose weight
/// reaches eps * total so that each rewritten edge violates `planted`.
UGInstance perturb(const UGInstance &inst, const Labeling &planted, double eps, std::uint64_t seed);
/// Same edge selection; rewritten edges get a random wrong group shift.
MaxLinInstance perturb_maxlin(const MaxLinInstance &inst, const Labeling &planted, double eps, std::uint64_t seed);

struct PlantedRegular {
    GraphSkeleton graph;
    Labeling planted;
    UGInstance completion; // value(completion, planted) = 1
    UGInstance inst;       // completion after perturb(eps)
    double realized_eps = 0.0;
};

/// random_regular_graph + random labeling + planted_instance + perturb, all
/// seeded from `seed`. The maxlin family uses Z_k shifts throughout.
PlantedRegular planted_regular_instance(std::size_t n, std::size_t d, std::size_t k, ConstraintFamily family,
                                        double eps, std::uint64_t seed);

/// Simple d-regular graph from the pairing model, 100 attempts. Records lambda2.
GraphSkeleton random_regular_graph(std::size_t n, std::size_t d, std::uint64_t seed);

// ---- Khot-Vishnoi ---------------------------------------------------------

struct KVSpec {
    unsigned kappa = 2;
    double eps = 0.1;
    std::size_t n() const { return std::size_t{1} << kappa; }
    void validate() const;
};

/// h_y as an n-bit mask: bit x is parity(x & y).
std::uint64_t hadamard_codeword(std::size_t n, std::uint64_t y);

struct KVGraph {
    KVSpec spec;
    std::vector<std::uint64_t> representatives; // smallest member of each coset, ascending
    std::vector<std::uint64_t> codewords;       // codewords[y] = h_y
    SymmetricMatrix weights;                    // A(p_i, p_j)
};

/// kappa <= 3.
KVGraph kv_constraint_graph(const KVSpec &spec);
UGInstance kv_instance(const KVSpec &spec);
/// Row (i*n + y) of the label-extended matrix corresponds to hypercube point p_i xor h_y.
std::vector<std::uint64_t> kv_bijection(const KVGraph &g);

/// n * eps^|z| * (1-eps)^(n-|z|) for z in F_2^n.
std::vector<double> kv_weight_function(std::size_t n, double eps);
/// Entry (u,v) = n * eps^|u^v| * (1-eps)^(n-|u^v|); n <= 12.
SymmetricMatrix kv_label_extended(std::size_t n, double eps);

struct FourierSpectrum {
    unsigned group_dim = 0;
    std::vector<double> values; // values[omega] = sum_x f(x) (-1)^<omega,x>
};

/// In-place fast transform; length must be a power of two.
FourierSpectrum walsh_hadamard_spectrum(std::span<const double> f);
/// Dense adjacency of the Cayley graph on F_2^n with weight function f: A(x,y) = f(x^y).
SymmetricMatrix cayley_matrix(std::span<const double> f);

struct SpectrumLevel {
    unsigned r = 0;
    double eigenvalue = 0.0;
    std::uint64_t multiplicity = 0;
};

/// (n (1-2 eps)^r, C(n, r)) for r = 0..n.
std::vector<SpectrumLevel> kv_spectrum(std::size_t n, double eps);
/// Sum of C(n, r) over r with (1-2 eps)^r >= 1 - gamma.
std::uint64_t kv_eigenspace_dimension(std::size_t n, double eps, double gamma);

} // namespace ugspec
