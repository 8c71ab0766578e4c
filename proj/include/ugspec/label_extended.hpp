#pragma once

#include "ugspec/core.hpp"
#include "ugspec/linalg.hpp"

#include <span>
#include <vector>

namespace ugspec {

enum class MatrixKind { adjacency, laplacian };

/// The nk x nk label-extended matrix M (block (u,v) = sum of w * Pi_uv over
/// parallel edges) or its Laplacian D - M.
struct LabelExtendedMatrix {
    std::size_t inst_n = 0;
    std::size_t inst_k = 0;
    SymmetricMatrix matrix;
    MatrixKind kind = MatrixKind::adjacency;
    std::vector<double> degree_profile;
    double d_avg = 0.0;
};

LabelExtendedMatrix build_label_extended(const UGInstance &inst);
LabelExtendedMatrix build_laplacian(const UGInstance &inst);

/// n x n weighted adjacency of the constraint graph; a self-loop adds its weight once to the diagonal.
SymmetricMatrix constraint_adjacency(const UGInstance &inst);

/// Matrix-free view of M: y = M x straight from the edge list.
class LabelExtendedOperator {
  public:
    explicit LabelExtendedOperator(const UGInstance &inst);

    std::size_t dim() const noexcept { return n_ * k_; }

    /// Serial reference.
    void apply_serial(std::span<const double> x, std::span<double> y) const;
    /// Row blocks split across OpenMP threads; each row block is summed in the
    /// same order as the serial kernel, so results match it bit for bit.
    void apply_omp(std::span<const double> x, std::span<double> y, int threads = 0) const;

    std::vector<double> apply(std::span<const double> x) const;

  private:
    struct Arc {
        Vertex to;
        double weight;
        std::size_t perm_offset; // into images_
    };
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::vector<std::size_t> row_start_; // CSR over source vertex
    std::vector<Arc> arcs_;
    std::vector<Label> images_;

    void apply_rows(std::span<const double> x, std::span<double> y, std::size_t u) const;
};

} // namespace ugspec
