#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ugspec {

/// Dense symmetric matrix, row-major. Construction symmetrizes (A + A^T) / 2.
class SymmetricMatrix {
  public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, 0.0) {}
    SymmetricMatrix(std::size_t dim, std::vector<double> row_major);

    static SymmetricMatrix identity(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
    /// Sets both (i,j) and (j,i).
    void set(std::size_t i, std::size_t j, double x) {
        a_[i * dim_ + j] = x;
        a_[j * dim_ + i] = x;
    }
    const std::vector<double> &data() const noexcept { return a_; }

    std::vector<double> apply(std::span<const double> x) const;
    double quadratic_form(std::span<const double> x) const;
    double trace() const;
    double max_abs_row_sum() const;

  private:
    std::size_t dim_ = 0;
    std::vector<double> a_;
};

/// Full spectrum, eigenvalues descending; vectors[i] pairs with values[i].
struct EigenDecomposition {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};

/// Cyclic Jacobi. Deterministic for a fixed input. Throws NumericError on
/// non-finite entries or if the sweep limit is hit.
EigenDecomposition eigendecompose(const SymmetricMatrix &A);

enum class SpectralMode { adjacency_high, laplacian_low };

struct Eigenspace {
    std::size_t dim_ambient = 0;
    std::vector<std::vector<double>> basis;
    std::vector<double> eigenvalues;
    double threshold = 0.0;
    SpectralMode mode = SpectralMode::adjacency_high;

    std::size_t dim() const noexcept { return basis.size(); }
};

/// adjacency_high keeps eigenvalues >= threshold (descending order),
/// laplacian_low keeps eigenvalues <= threshold (ascending order).
Eigenspace select_eigenspace(const EigenDecomposition &eig, std::size_t dim_ambient, double threshold,
                             SpectralMode mode);
Eigenspace select_eigenspace(const SymmetricMatrix &A, double threshold, SpectralMode mode);

struct ProjectionSplit {
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<double> parallel;   // empty when alpha == 0
    std::vector<double> orthogonal; // empty when beta == 0
};

/// x = alpha * parallel + beta * orthogonal, parallel in span(S), orthogonal in its complement.
ProjectionSplit project_split(std::span<const double> x, const Eigenspace &S);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

} // namespace ugspec
