#include "ugspec/oracle.hpp"

#include "ugspec/errors.hpp"
#include "ugspec/maxlin.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace ugspec {

std::uint64_t OracleProblem::count() const {
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < vars; ++i)
        c *= k;
    return c;
}

namespace {

// Labels of all component vertices for enumeration index idx.
void decode(const OracleProblem &p, std::uint64_t idx, std::vector<Label> &L) {
    const std::size_t off = p.pinned ? 1 : 0;
    L.resize(p.vars + off);
    if (p.pinned)
        L[0] = p.fixed_first;
    for (std::size_t i = p.vars; i-- > 0;) {
        L[i + off] = static_cast<Label>(idx % p.k);
        idx /= p.k;
    }
}

double score(const OracleProblem &p, const std::vector<Label> &L) {
    double s = 0.0;
    for (std::size_t e = 0; e < p.ew.size(); ++e)
        if (p.images[e * p.k + L[p.eu[e]]] == L[p.ev[e]])
            s += p.ew[e];
    return s;
}

// Increments the free part of L as a base-k odometer; false on wrap.
bool advance(const OracleProblem &p, std::vector<Label> &L) {
    const std::size_t off = p.pinned ? 1 : 0;
    for (std::size_t i = L.size(); i-- > off;) {
        if (++L[i] < p.k)
            return true;
        L[i] = 0;
    }
    return false;
}

} // namespace

OracleHit oracle_search_serial(const OracleProblem &p) {
    OracleHit hit;
    std::vector<Label> L;
    decode(p, 0, L);
    std::uint64_t idx = 0;
    do {
        const double s = score(p, L);
        ++hit.examined;
        if (s > hit.best) {
            hit.best = s;
            hit.index = idx;
            if (s == p.total)
                break;
        }
        ++idx;
    } while (advance(p, L));
    return hit;
}

OracleHit oracle_search_omp(const OracleProblem &p, int threads) {
    const std::uint64_t total = p.count();
    const std::uint64_t chunk = 1 << 14;
    const std::uint64_t nchunks = (total + chunk - 1) / chunk;
    std::vector<OracleHit> per(nchunks);
    // Smallest chunk holding a perfect labeling; later chunks are skipped.
    std::atomic<std::uint64_t> perfect{nchunks};

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(nchunks); ++ci) {
        const auto c = static_cast<std::uint64_t>(ci);
        if (c > perfect.load(std::memory_order_relaxed))
            continue;
        OracleHit &h = per[c];
        const std::uint64_t lo = c * chunk, hi = std::min(total, lo + chunk);
        std::vector<Label> L;
        decode(p, lo, L);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            const double s = score(p, L);
            if (s > h.best) {
                h.best = s;
                h.index = idx;
                if (s == p.total) {
                    std::uint64_t cur = perfect.load();
                    while (c < cur && !perfect.compare_exchange_weak(cur, c)) {
                    }
                    break;
                }
            }
            advance(p, L);
        }
    }

    OracleHit out;
    const std::uint64_t last = std::min(perfect.load(), nchunks - 1);
    for (std::uint64_t c = 0; c <= last; ++c) {
        if (per[c].best > out.best) {
            out.best = per[c].best;
            out.index = per[c].index;
        }
    }
    out.examined = out.best == p.total ? out.index + 1 : total;
    return out;
}

OracleResult brute_force(const UGInstance &inst, const OracleOptions &opts) {
    const std::size_t n = inst.n(), k = inst.k();
    if (opts.threads < 1)
        throw PreconditionError("threads must be at least 1");

    // union-find over the constraint graph
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto &e : inst.edges()) {
        const auto a = find(e.u), b = find(e.v);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::vector<Vertex>> comps;
    std::vector<std::size_t> comp_of(n), local(n);
    std::vector<std::size_t> root_slot(n, SIZE_MAX);
    for (std::size_t u = 0; u < n; ++u) {
        const auto r = find(u);
        if (root_slot[r] == SIZE_MAX) {
            root_slot[r] = comps.size();
            comps.emplace_back();
        }
        comp_of[u] = root_slot[r];
        local[u] = comps[comp_of[u]].size();
        comps[comp_of[u]].push_back(static_cast<Vertex>(u));
    }

    OracleResult res;
    res.shift_reduced = opts.shift_reduction && detect_group(inst).has_value();

    std::vector<OracleProblem> probs(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) {
        auto &p = probs[c];
        p.k = k;
        p.pinned = res.shift_reduced;
        p.vars = comps[c].size() - (p.pinned ? 1 : 0);
    }
    for (const auto &e : inst.edges()) {
        auto &p = probs[comp_of[e.u]];
        p.eu.push_back(static_cast<std::uint32_t>(local[e.u]));
        p.ev.push_back(static_cast<std::uint32_t>(local[e.v]));
        p.ew.push_back(e.weight);
        p.images.insert(p.images.end(), e.perm.images().begin(), e.perm.images().end());
    }

    double required = 0.0;
    for (auto &p : probs) {
        for (double w : p.ew)
            p.total += w;
        required += p.ew.empty() ? 1.0 : std::pow(static_cast<double>(k), static_cast<double>(p.vars));
    }
    if (required > opts.budget) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "brute force needs %.6g labelings, budget is %.6g", required, opts.budget);
        throw BudgetError(buf);
    }

    std::vector<Label> labels(n, 0), L;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const auto &p = probs[c];
        if (p.ew.empty()) {
            res.labelings_examined += 1;
            continue;
        }
        const auto hit = opts.threads > 1 ? oracle_search_omp(p, opts.threads) : oracle_search_serial(p);
        res.labelings_examined += hit.examined;
        decode(p, hit.index, L);
        for (std::size_t i = 0; i < comps[c].size(); ++i)
            labels[comps[c][i]] = L[i];
    }
    res.best_labeling = Labeling(std::move(labels));
    res.best_value = value(inst, res.best_labeling);
    return res;
}

} // namespace ugspec
