#pragma once

#include "ugspec/core.hpp"
#include "ugspec/generators.hpp"
#include "ugspec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace testutil {

using namespace ugspec;

inline UGInstance single_edge(std::size_t k, Permutation p, double w = 1.0) {
    return UGInstance(2, k, {UGEdge{0, 1, w, std::move(p)}});
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double residual(const SymmetricMatrix &A, std::span<const double> x, double lambda) {
    const auto y = A.apply(x);
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        s += (y[i] - lambda * x[i]) * (y[i] - lambda * x[i]);
    return std::sqrt(s);
}

// Reference matvec straight from the definition, one entry at a time.
inline std::vector<double> naive_label_extended_apply(const UGInstance &inst, std::span<const double> x) {
    const auto k = inst.k();
    std::vector<double> y(inst.n() * k, 0.0);
    for (const auto &e : inst.edges()) {
        for (Label i = 0; i < k; ++i) {
            const Label j = e.perm(i);
            if (e.u == e.v) {
                y[e.u * k + i] += 0.5 * e.weight * x[e.u * k + j];
                y[e.u * k + j] += 0.5 * e.weight * x[e.u * k + i];
            } else {
                y[e.u * k + i] += e.weight * x[e.v * k + j];
                y[e.v * k + j] += e.weight * x[e.u * k + i];
            }
        }
    }
    return y;
}

inline std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace testutil
