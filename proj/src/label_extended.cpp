#include "ugspec/label_extended.hpp"

#include "ugspec/errors.hpp"

#include <omp.h>

namespace ugspec {

namespace {

std::vector<double> dense_label_extended(const UGInstance &inst) {
    const std::size_t k = inst.k();
    const std::size_t dim = inst.n() * k;
    std::vector<double> a(dim * dim, 0.0);
    for (const auto &e : inst.edges()) {
        const std::size_t ru = std::size_t{e.u} * k;
        const std::size_t rv = std::size_t{e.v} * k;
        if (e.u == e.v) {
            // Self-loop: w * (Pi + Pi^T) / 2 keeps the block symmetric with row sum w.
            for (std::size_t i = 0; i < k; ++i) {
                a[(ru + i) * dim + rv + e.perm(i)] += 0.5 * e.weight;
                a[(rv + e.perm(i)) * dim + ru + i] += 0.5 * e.weight;
            }
            continue;
        }
        for (std::size_t i = 0; i < k; ++i) {
            a[(ru + i) * dim + rv + e.perm(i)] += e.weight;
            a[(rv + e.perm(i)) * dim + ru + i] += e.weight;
        }
    }
    return a;
}

} // namespace

LabelExtendedMatrix build_label_extended(const UGInstance &inst) {
    LabelExtendedMatrix out;
    out.inst_n = inst.n();
    out.inst_k = inst.k();
    out.kind = MatrixKind::adjacency;
    out.matrix = SymmetricMatrix(inst.n() * inst.k(), dense_label_extended(inst));
    out.degree_profile = inst.degrees();
    out.d_avg = inst.average_degree();
    return out;
}

LabelExtendedMatrix build_laplacian(const UGInstance &inst) {
    const std::size_t k = inst.k();
    const std::size_t dim = inst.n() * k;
    std::vector<double> a = dense_label_extended(inst);
    for (double &x : a)
        x = -x;
    for (std::size_t u = 0; u < inst.n(); ++u)
        for (std::size_t i = 0; i < k; ++i)
            a[(u * k + i) * dim + u * k + i] += inst.degrees()[u];

    LabelExtendedMatrix out;
    out.inst_n = inst.n();
    out.inst_k = k;
    out.kind = MatrixKind::laplacian;
    out.matrix = SymmetricMatrix(dim, std::move(a));
    out.degree_profile = inst.degrees();
    out.d_avg = inst.average_degree();
    return out;
}

SymmetricMatrix constraint_adjacency(const UGInstance &inst) {
    const std::size_t n = inst.n();
    std::vector<double> a(n * n, 0.0);
    for (const auto &e : inst.edges()) {
        if (e.u == e.v) {
            a[std::size_t{e.u} * n + e.u] += e.weight;
            continue;
        }
        a[std::size_t{e.u} * n + e.v] += e.weight;
        a[std::size_t{e.v} * n + e.u] += e.weight;
    }
    return SymmetricMatrix(n, std::move(a));
}

LabelExtendedOperator::LabelExtendedOperator(const UGInstance &inst) : n_(inst.n()), k_(inst.k()) {
    // Each undirected edge becomes two arcs (one for a self-loop is split in halves
    // so the operator matches the dense builder).
    std::vector<std::size_t> count(n_ + 1, 0);
    for (const auto &e : inst.edges()) {
        ++count[e.u];
        ++count[e.v];
    }
    row_start_.assign(n_ + 1, 0);
    for (std::size_t u = 0; u < n_; ++u)
        row_start_[u + 1] = row_start_[u] + count[u];
    arcs_.resize(row_start_[n_]);
    std::vector<std::size_t> fill(row_start_.begin(), row_start_.end() - 1);

    images_.reserve(inst.edges().size() * 2 * k_);
    for (const auto &e : inst.edges()) {
        const double w = e.u == e.v ? 0.5 * e.weight : e.weight;
        // Arc u -> v: row (u,i) picks column (v, pi(i)).
        const std::size_t fwd = images_.size();
        images_.insert(images_.end(), e.perm.images().begin(), e.perm.images().end());
        arcs_[fill[e.u]++] = Arc{e.v, w, fwd};
        // Arc v -> u: row (v,j) picks column (u, pi^-1(j)).
        const std::size_t bwd = images_.size();
        const auto inv = e.perm.inverse();
        images_.insert(images_.end(), inv.images().begin(), inv.images().end());
        arcs_[fill[e.v]++] = Arc{e.u, w, bwd};
    }
}

void LabelExtendedOperator::apply_rows(std::span<const double> x, std::span<double> y, std::size_t u) const {
    double *out = y.data() + u * k_;
    for (std::size_t i = 0; i < k_; ++i)
        out[i] = 0.0;
    for (std::size_t a = row_start_[u]; a < row_start_[u + 1]; ++a) {
        const Arc &arc = arcs_[a];
        const Label *img = images_.data() + arc.perm_offset;
        const double *col = x.data() + std::size_t{arc.to} * k_;
        for (std::size_t i = 0; i < k_; ++i)
            out[i] += arc.weight * col[img[i]];
    }
}

void LabelExtendedOperator::apply_serial(std::span<const double> x, std::span<double> y) const {
    if (x.size() != dim() || y.size() != dim())
        throw PreconditionError("LabelExtendedOperator: dimension mismatch");
    for (std::size_t u = 0; u < n_; ++u)
        apply_rows(x, y, u);
}

void LabelExtendedOperator::apply_omp(std::span<const double> x, std::span<double> y, int threads) const {
    if (x.size() != dim() || y.size() != dim())
        throw PreconditionError("LabelExtendedOperator: dimension mismatch");
    const int nt = threads > 0 ? threads : omp_get_max_threads();
    const auto n = static_cast<std::ptrdiff_t>(n_);
#pragma omp parallel for num_threads(nt) schedule(static)
    for (std::ptrdiff_t u = 0; u < n; ++u)
        apply_rows(x, y, static_cast<std::size_t>(u));
}

std::vector<double> LabelExtendedOperator::apply(std::span<const double> x) const {
    std::vector<double> y(dim());
    apply_serial(x, y);
    return y;
}

} // namespace ugspec
