#include "ugspec/generators.hpp"

#include "ugspec/errors.hpp"
#include "ugspec/label_extended.hpp"
#include "ugspec/rng.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

namespace ugspec {

namespace {

void check_skeleton(const GraphSkeleton &g) {
    for (const auto &e : g.edges)
        if (e.u >= g.n || e.v >= g.n)
            throw InvalidInstance("skeleton edge endpoint out of range");
}

// Uniform permutation with pi(a) = b: shuffle, then swap b into slot a.
Permutation random_perm_mapping(Rng &rng, std::size_t k, Label a, Label b) {
    std::vector<Label> img(k);
    std::iota(img.begin(), img.end(), Label{0});
    rng.shuffle(img.begin(), img.end());
    const auto pos = static_cast<std::size_t>(std::find(img.begin(), img.end(), b) - img.begin());
    std::swap(img[pos], img[a]);
    return Permutation(std::move(img));
}

Permutation random_perm_violating(Rng &rng, std::size_t k, Label a, Label b) {
    std::vector<Label> img(k);
    do {
        std::iota(img.begin(), img.end(), Label{0});
        rng.shuffle(img.begin(), img.end());
    } while (img[a] == b);
    return Permutation(std::move(img));
}

// Indices of the shortest prefix of a seeded shuffle of the edges whose
// weight reaches eps * total.
std::vector<std::size_t> pick_perturbed(const UGInstance &inst, double eps, std::uint64_t seed) {
    std::vector<std::size_t> order(inst.edges().size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(order.begin(), order.end());
    const double target = eps * inst.total_weight();
    std::vector<std::size_t> picked;
    double acc = 0.0;
    for (std::size_t idx : order) {
        if (acc >= target)
            break;
        picked.push_back(idx);
        acc += inst.edges()[idx].weight;
    }
    return picked;
}

void check_perturb_args(const UGInstance &inst, const Labeling &planted, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw PreconditionError("perturbation eps must lie in [0,1]");
    if (inst.k() < 2)
        throw PreconditionError("cannot violate a constraint over a single label");
    check_labeling(inst, planted);
    for (const auto &e : inst.edges())
        if (e.perm(planted[e.u]) != planted[e.v])
            throw PreconditionError("perturb needs an instance the planted labeling fully satisfies");
}

} // namespace

Labeling random_labeling(std::size_t n, std::size_t k, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Label> L(n);
    for (auto &x : L)
        x = static_cast<Label>(rng.index(k));
    return Labeling(std::move(L));
}

PlantedInstance planted_instance(const PlantedSpec &spec) {
    check_skeleton(spec.graph);
    if (spec.k < 1)
        throw InvalidInstance("k must be at least 1");
    if (spec.planted.size() != spec.graph.n)
        throw InvalidLabeling("planted labeling has the wrong length");
    for (Label x : spec.planted)
        if (x >= spec.k)
            throw InvalidLabeling("planted label out of range");

    Rng rng(spec.seed);
    std::vector<UGEdge> edges;
    edges.reserve(spec.graph.edges.size());
    for (const auto &e : spec.graph.edges) {
        const Label a = spec.planted[e.u], b = spec.planted[e.v];
        Permutation p;
        if (spec.family == ConstraintFamily::maxlin) {
            const auto k = static_cast<Label>(spec.k);
            p = Permutation::cyclic_shift(spec.k, (a + k - b) % k);
        } else {
            p = random_perm_mapping(rng, spec.k, a, b);
        }
        edges.push_back({e.u, e.v, e.weight, std::move(p)});
    }
    return {UGInstance(spec.graph.n, spec.k, std::move(edges)), spec.planted};
}

MaxLinInstance planted_maxlin(const GraphSkeleton &graph, const Group &group, const Labeling &planted) {
    check_skeleton(graph);
    if (planted.size() != graph.n)
        throw InvalidLabeling("planted labeling has the wrong length");
    std::vector<MaxLinEdge> edges;
    edges.reserve(graph.edges.size());
    for (const auto &e : graph.edges) {
        if (planted[e.u] >= group.order() || planted[e.v] >= group.order())
            throw InvalidLabeling("planted label out of range");
        edges.push_back({e.u, e.v, e.weight, group.sub(planted[e.u], planted[e.v])});
    }
    return make_maxlin(group, graph.n, edges);
}

UGInstance perturb(const UGInstance &inst, const Labeling &planted, double eps, std::uint64_t seed) {
    check_perturb_args(inst, planted, eps);
    if (eps == 0.0)
        return inst;
    auto edges = inst.edges();
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::size_t idx : pick_perturbed(inst, eps, seed)) {
        auto &e = edges[idx];
        e.perm = random_perm_violating(rng, inst.k(), planted[e.u], planted[e.v]);
    }
    return UGInstance(inst.n(), inst.k(), std::move(edges), inst.weight_scale());
}

MaxLinInstance perturb_maxlin(const MaxLinInstance &inst, const Labeling &planted, double eps, std::uint64_t seed) {
    check_perturb_args(inst.base, planted, eps);
    if (eps == 0.0)
        return inst;
    auto edges = inst.base.edges();
    auto shifts = inst.shifts;
    const auto k = inst.group.order();
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::size_t idx : pick_perturbed(inst.base, eps, seed)) {
        auto &e = edges[idx];
        const Label good = inst.group.sub(planted[e.u], planted[e.v]);
        // uniform over the k-1 wrong shifts
        Label c = static_cast<Label>(rng.index(k - 1));
        if (c >= good)
            ++c;
        shifts[idx] = c;
        e.perm = inst.group.shift_permutation(c);
    }
    return {inst.group, UGInstance(inst.base.n(), k, std::move(edges), inst.base.weight_scale()),
            std::move(shifts)};
}

GraphSkeleton random_regular_graph(std::size_t n, std::size_t d, std::uint64_t seed) {
    if (n == 0 || d == 0 || d >= n || (n * d) % 2 != 0)
        throw PreconditionError("random regular graph needs n*d even and 0 < d < n");
    Rng rng(seed);
    std::vector<Vertex> points(n * d);
    for (int attempt = 0; attempt < 100; ++attempt) {
        for (std::size_t i = 0; i < points.size(); ++i)
            points[i] = static_cast<Vertex>(i / d);
        rng.shuffle(points.begin(), points.end());
        std::set<std::pair<Vertex, Vertex>> seen;
        bool ok = true;
        for (std::size_t i = 0; i < points.size() && ok; i += 2) {
            auto a = points[i], b = points[i + 1];
            if (a == b) {
                ok = false;
                break;
            }
            if (a > b)
                std::swap(a, b);
            ok = seen.emplace(a, b).second;
        }
        if (!ok)
            continue;
        GraphSkeleton g;
        g.n = n;
        for (const auto &[a, b] : seen)
            g.edges.push_back({a, b, 1.0});
        SymmetricMatrix A(n);
        for (const auto &e : g.edges)
            A.set(e.u, e.v, 1.0);
        const auto eig = eigendecompose(A);
        g.lambda2 = n > 1 ? eig.values[1] : eig.values[0];
        return g;
    }
    throw Error("pairing model failed 100 times for n=" + std::to_string(n) + " d=" + std::to_string(d));
}

PlantedRegular planted_regular_instance(std::size_t n, std::size_t d, std::size_t k, ConstraintFamily family,
                                        double eps, std::uint64_t seed) {
    PlantedRegular out;
    out.graph = random_regular_graph(n, d, derive_seed(seed, 0));
    out.planted = random_labeling(n, k, derive_seed(seed, 1));
    if (family == ConstraintFamily::maxlin) {
        const auto group = Group::cyclic(static_cast<Label>(k));
        const auto ml = planted_maxlin(out.graph, group, out.planted);
        out.completion = ml.base;
        out.inst = perturb_maxlin(ml, out.planted, eps, derive_seed(seed, 3)).base;
    } else {
        PlantedSpec spec{out.graph, k, out.planted, family, derive_seed(seed, 2)};
        out.completion = planted_instance(spec).inst;
        out.inst = perturb(out.completion, out.planted, eps, derive_seed(seed, 3));
    }
    out.realized_eps = 1.0 - value(out.inst, out.planted);
    return out;
}

} // namespace ugspec
