#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ugspec {

using Vertex = std::uint32_t;
using Label = std::uint32_t;

/// A bijection on {0, ..., k-1}; images[i] = pi(i).
class Permutation {
  public:
    Permutation() = default;
    /// Throws InvalidInstance unless `images` is a bijection.
    explicit Permutation(std::vector<Label> images);
    Permutation(std::initializer_list<Label> images) : Permutation(std::vector<Label>(images)) {}

    static Permutation identity(std::size_t k);
    /// i -> (i - c) mod k, the constraint x_u - x_v = c over Z_k.
    static Permutation cyclic_shift(std::size_t k, Label c);
    /// i -> i xor s, for k a power of two.
    static Permutation xor_shift(std::size_t k, Label s);

    Label operator()(Label i) const { return images_[i]; }
    std::size_t size() const noexcept { return images_.size(); }
    const std::vector<Label> &images() const noexcept { return images_; }
    Permutation inverse() const;
    bool is_identity() const;

    friend bool operator==(const Permutation &, const Permutation &) = default;

  private:
    std::vector<Label> images_;
};

/// Constraint perm(x_u) = x_v on the edge u -> v.
struct UGEdge {
    Vertex u = 0;
    Vertex v = 0;
    double weight = 1.0;
    Permutation perm;

    friend bool operator==(const UGEdge &, const UGEdge &) = default;
};

/// A Unique Games instance stored as an edge list. Each edge is stored once;
/// traversing it from v to u applies perm.inverse().
class UGInstance {
  public:
    UGInstance() = default;
    /// Validates indices, permutation sizes and weights. If the largest weight
    /// exceeds 1 all weights are divided by it and the factor is kept in weight_scale().
    UGInstance(std::size_t n, std::size_t k, std::vector<UGEdge> edges);
    /// Restores an already rescaled instance (used by the parser for `# weight_scale`).
    UGInstance(std::size_t n, std::size_t k, std::vector<UGEdge> edges, double weight_scale);

    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    const std::vector<UGEdge> &edges() const noexcept { return edges_; }
    /// Factor the ingested weights were divided by (1 when no rescale happened).
    double weight_scale() const noexcept { return weight_scale_; }

    double total_weight() const noexcept { return total_weight_; }
    /// Self-loops count once.
    const std::vector<double> &degrees() const noexcept { return degrees_; }
    double degree(Vertex u) const { return degrees_.at(u); }
    double average_degree() const;
    /// Common degree if every degree is within relative `tol` of the mean.
    std::optional<double> regular_degree(double tol) const;

    friend bool operator==(const UGInstance &a, const UGInstance &b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.edges_ == b.edges_ && a.weight_scale_ == b.weight_scale_;
    }

  private:
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::vector<UGEdge> edges_;
    double weight_scale_ = 1.0;
    double total_weight_ = 0.0;
    std::vector<double> degrees_;
};

class Labeling {
  public:
    Labeling() = default;
    explicit Labeling(std::vector<Label> labels) : labels_(std::move(labels)) {}
    Labeling(std::initializer_list<Label> labels) : labels_(labels) {}
    static Labeling zeros(std::size_t n) { return Labeling(std::vector<Label>(n, 0)); }

    std::size_t size() const noexcept { return labels_.size(); }
    Label operator[](std::size_t u) const { return labels_[u]; }
    Label &operator[](std::size_t u) { return labels_[u]; }
    const std::vector<Label> &labels() const noexcept { return labels_; }
    auto begin() const { return labels_.begin(); }
    auto end() const { return labels_.end(); }

    friend bool operator==(const Labeling &, const Labeling &) = default;
    friend auto operator<=>(const Labeling &, const Labeling &) = default;

  private:
    std::vector<Label> labels_;
};

/// Throws InvalidLabeling if L does not fit `inst`.
void check_labeling(const UGInstance &inst, const Labeling &L);

/// Fraction of total weight whose constraint L satisfies.
double value(const UGInstance &inst, const Labeling &L);
/// Unnormalized numerator of value(); summed in edge order.
double satisfied_weight(const UGInstance &inst, const Labeling &L);

struct CharacteristicVector {
    std::vector<double> entries; // block u = entries[u*k .. u*k+k-1]
    bool normalized = false;
};

/// One nonzero per block at position L[u]: 1, or 1/sqrt(n) when normalized.
CharacteristicVector characteristic_vector(const Labeling &L, std::size_t k, bool normalized);

/// argmax per block of an n*k vector, smallest index on ties.
Labeling read_off_assignment(std::span<const double> x, std::size_t n, std::size_t k);

/// Parses the `ug` or `maxlin` text format. Errors carry the 1-based line number.
UGInstance parse_instance(std::string_view text);
/// Canonical `ug` text: weights at 17 significant digits, edge order preserved.
std::string serialize_instance(const UGInstance &inst);

std::string format_double(double x);

/// Labels as whitespace separated integers (the `--planted` file format).
Labeling parse_labeling(std::string_view text);
std::string serialize_labeling(const Labeling &L);

} // namespace ugspec
