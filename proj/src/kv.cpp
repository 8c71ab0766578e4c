#include "ugspec/generators.hpp"

#include "ugspec/errors.hpp"

#include <bit>
#include <cmath>

namespace ugspec {

void KVSpec::validate() const {
    if (kappa < 1)
        throw PreconditionError("kappa must be at least 1");
    if (!(eps > 0.0 && eps < 0.5))
        throw PreconditionError("KV eps must lie in (0, 1/2)");
}

std::uint64_t hadamard_codeword(std::size_t n, std::uint64_t y) {
    std::uint64_t h = 0;
    for (std::size_t x = 0; x < n; ++x)
        if (std::popcount(x & y) & 1)
            h |= std::uint64_t{1} << x;
    return h;
}

namespace {

double noisy_weight(std::size_t n, double eps, std::uint64_t z) {
    const int w = std::popcount(z);
    return std::pow(eps, w) * std::pow(1.0 - eps, static_cast<int>(n) - w);
}

} // namespace

KVGraph kv_constraint_graph(const KVSpec &spec) {
    spec.validate();
    if (spec.kappa > 3)
        throw BudgetError("KV materialization is limited to kappa <= 3 (kappa=" + std::to_string(spec.kappa) + ")");
    const std::size_t n = spec.n();
    const std::uint64_t N = std::uint64_t{1} << n;

    KVGraph g;
    g.spec = spec;
    for (std::uint64_t y = 0; y < n; ++y)
        g.codewords.push_back(hadamard_codeword(n, y));

    // Scanning upward, the first unseen point is its coset's minimum.
    std::vector<char> seen(N, 0);
    for (std::uint64_t x = 0; x < N; ++x) {
        if (seen[x])
            continue;
        g.representatives.push_back(x);
        for (auto h : g.codewords)
            seen[x ^ h] = 1;
    }

    const std::size_t m = g.representatives.size();
    g.weights = SymmetricMatrix(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            double a = 0.0;
            for (auto h1 : g.codewords)
                for (auto h2 : g.codewords)
                    a += noisy_weight(n, spec.eps, g.representatives[i] ^ h1 ^ g.representatives[j] ^ h2);
            g.weights.set(i, j, a);
        }
    }
    return g;
}

UGInstance kv_instance(const KVSpec &spec) {
    const auto g = kv_constraint_graph(spec);
    const std::size_t n = spec.n();
    const std::size_t m = g.representatives.size();
    std::vector<UGEdge> edges;
    edges.reserve(m * (m + 1) / 2 * n * n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            for (std::uint64_t s = 0; s < n; ++s) {
                for (std::uint64_t t = 0; t < n; ++t) {
                    const auto z = g.representatives[i] ^ g.codewords[s] ^ g.representatives[j] ^ g.codewords[t];
                    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j), noisy_weight(n, spec.eps, z),
                                     Permutation::xor_shift(n, static_cast<Label>(s ^ t))});
                }
            }
        }
    }
    return UGInstance(m, n, std::move(edges));
}

std::vector<std::uint64_t> kv_bijection(const KVGraph &g) {
    const std::size_t n = g.spec.n();
    std::vector<std::uint64_t> out;
    out.reserve(g.representatives.size() * n);
    for (auto p : g.representatives)
        for (std::size_t y = 0; y < n; ++y)
            out.push_back(p ^ g.codewords[y]);
    return out;
}

std::vector<double> kv_weight_function(std::size_t n, double eps) {
    if (n < 1 || n > 30)
        throw BudgetError("weight function length 2^n needs 1 <= n <= 30");
    std::vector<double> f(std::size_t{1} << n);
    for (std::uint64_t z = 0; z < f.size(); ++z)
        f[z] = static_cast<double>(n) * noisy_weight(n, eps, z);
    return f;
}

SymmetricMatrix kv_label_extended(std::size_t n, double eps) {
    if (n < 1 || n > 12)
        throw BudgetError("dense noisy hypercube is limited to n <= 12 (n=" + std::to_string(n) + ")");
    if (!(eps > 0.0 && eps < 0.5))
        throw PreconditionError("KV eps must lie in (0, 1/2)");
    return cayley_matrix(kv_weight_function(n, eps));
}

std::vector<SpectrumLevel> kv_spectrum(std::size_t n, double eps) {
    if (n < 1 || n > 62)
        throw PreconditionError("kv_spectrum needs 1 <= n <= 62");
    std::vector<SpectrumLevel> out;
    std::uint64_t binom = 1;
    for (unsigned r = 0; r <= n; ++r) {
        out.push_back({r, static_cast<double>(n) * std::pow(1.0 - 2.0 * eps, static_cast<int>(r)), binom});
        binom = binom * (n - r) / (r + 1);
    }
    return out;
}

std::uint64_t kv_eigenspace_dimension(std::size_t n, double eps, double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw PreconditionError("gamma must lie in (0,1]");
    std::uint64_t dim = 0;
    for (const auto &lev : kv_spectrum(n, eps))
        if (std::pow(1.0 - 2.0 * eps, static_cast<int>(lev.r)) >= 1.0 - gamma)
            dim += lev.multiplicity;
    return dim;
}

} // namespace ugspec
