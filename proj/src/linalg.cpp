#include "ugspec/linalg.hpp"

#include "ugspec/errors.hpp"
#include "ugspec/numeric_config.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ugspec {

SymmetricMatrix::SymmetricMatrix(std::size_t dim, std::vector<double> row_major)
    : dim_(dim), a_(std::move(row_major)) {
    if (a_.size() != dim_ * dim_)
        throw PreconditionError("SymmetricMatrix: expected " + std::to_string(dim_ * dim_) + " entries");
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j) {
            const double s = 0.5 * (a_[i * dim_ + j] + a_[j * dim_ + i]);
            a_[i * dim_ + j] = s;
            a_[j * dim_ + i] = s;
        }
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t dim) {
    SymmetricMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        m.a_[i * dim + i] = 1.0;
    return m;
}

std::vector<double> SymmetricMatrix::apply(std::span<const double> x) const {
    if (x.size() != dim_)
        throw PreconditionError("SymmetricMatrix::apply: dimension mismatch");
    std::vector<double> y(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) {
        const double *row = a_.data() + i * dim_;
        double s = 0.0;
        for (std::size_t j = 0; j < dim_; ++j)
            s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

double SymmetricMatrix::quadratic_form(std::span<const double> x) const { return dot(x, apply(x)); }

double SymmetricMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        t += a_[i * dim_ + i];
    return t;
}

double SymmetricMatrix::max_abs_row_sum() const {
    double best = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < dim_; ++j)
            s += std::abs(a_[i * dim_ + j]);
        best = std::max(best, s);
    }
    return best;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw PreconditionError("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

EigenDecomposition eigendecompose(const SymmetricMatrix &A) {
    const std::size_t n = A.dim();
    if (n == 0)
        throw PreconditionError("eigendecompose: empty matrix");
    std::vector<double> a = A.data();
    for (double x : a)
        if (!std::isfinite(x))
            throw NumericError("eigendecompose: non-finite matrix entry");

    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        v[i * n + i] = 1.0;

    double frob2 = 0.0;
    for (double x : a)
        frob2 += x * x;
    const double stop = frob2 * 1e-28; // off-diagonal norm at 1e-14 relative

    auto at = [&](std::size_t i, std::size_t j) -> double & { return a[i * n + j]; };

    bool converged = n == 1;
    for (int sweep = 0; sweep < numeric_config().jacobi_max_sweeps && !converged; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += at(p, q) * at(p, q);
        if (off <= stop) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0)
                    continue;
                const double app = at(p, p);
                const double aqq = at(q, q);
                // Entry already below the resolution of both diagonal entries.
                const double g = 100.0 * std::abs(apq);
                if (sweep > 3 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
                    at(p, q) = 0.0;
                    at(q, p) = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150)
                    t = 0.5 / theta;
                else
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q)
                        continue;
                    const double arp = at(r, p);
                    const double arq = at(r, q);
                    const double np = c * arp - s * arq;
                    const double nq = s * arp + c * arq;
                    at(r, p) = np;
                    at(p, r) = np;
                    at(r, q) = nq;
                    at(q, r) = nq;
                }
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = 0.0;
                at(q, p) = 0.0;

                for (std::size_t r = 0; r < n; ++r) {
                    const double vrp = v[r * n + p];
                    const double vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    if (!converged) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += at(p, q) * at(p, q);
        if (off > stop)
            throw NumericError("eigendecompose: Jacobi did not converge within " +
                               std::to_string(numeric_config().jacobi_max_sweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a[i * n + i] > a[j * n + j]; });

    EigenDecomposition out;
    out.values.reserve(n);
    out.vectors.reserve(n);
    for (std::size_t idx : order) {
        out.values.push_back(a[idx * n + idx]);
        std::vector<double> col(n);
        for (std::size_t r = 0; r < n; ++r)
            col[r] = v[r * n + idx];
        out.vectors.push_back(std::move(col));
    }
    return out;
}

Eigenspace select_eigenspace(const EigenDecomposition &eig, std::size_t dim_ambient, double threshold,
                             SpectralMode mode) {
    if (!std::isfinite(threshold))
        throw PreconditionError("select_eigenspace: threshold must be finite");
    Eigenspace S;
    S.dim_ambient = dim_ambient;
    S.threshold = threshold;
    S.mode = mode;
    const std::size_t n = eig.values.size();
    if (mode == SpectralMode::adjacency_high) {
        for (std::size_t i = 0; i < n; ++i)
            if (eig.values[i] >= threshold) {
                S.eigenvalues.push_back(eig.values[i]);
                S.basis.push_back(eig.vectors[i]);
            }
    } else {
        for (std::size_t i = n; i-- > 0;)
            if (eig.values[i] <= threshold) {
                S.eigenvalues.push_back(eig.values[i]);
                S.basis.push_back(eig.vectors[i]);
            }
    }
    return S;
}

Eigenspace select_eigenspace(const SymmetricMatrix &A, double threshold, SpectralMode mode) {
    return select_eigenspace(eigendecompose(A), A.dim(), threshold, mode);
}

ProjectionSplit project_split(std::span<const double> x, const Eigenspace &S) {
    if (x.size() != S.dim_ambient)
        throw PreconditionError("project_split: vector has dimension " + std::to_string(x.size()) +
                                ", eigenspace lives in dimension " + std::to_string(S.dim_ambient));
    const double xn = norm(x);
    if (!(xn > 0.0))
        throw PreconditionError("project_split: zero vector");

    std::vector<double> proj(x.size(), 0.0);
    for (const auto &b : S.basis) {
        const double c = dot(b, x);
        for (std::size_t i = 0; i < x.size(); ++i)
            proj[i] += c * b[i];
    }
    std::vector<double> rest(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        rest[i] = x[i] - proj[i];

    ProjectionSplit out;
    const double cutoff = numeric_config().zero_tol * xn;
    const double pn = norm(proj);
    const double rn = norm(rest);
    if (pn > cutoff) {
        out.alpha = pn;
        out.parallel = std::move(proj);
        for (double &e : out.parallel)
            e /= pn;
    }
    if (rn > cutoff) {
        out.beta = rn;
        out.orthogonal = std::move(rest);
        for (double &e : out.orthogonal)
            e /= rn;
    }
    return out;
}

} // namespace ugspec
