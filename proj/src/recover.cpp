#include "ugspec/recover.hpp"

#include "ugspec/errors.hpp"
#include "ugspec/label_extended.hpp"
#include "ugspec/numeric_config.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

namespace ugspec {

void SolveParams::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw PreconditionError("epsilon must lie in (0,1)");
    if (!std::isfinite(gamma) || !(gamma > 0.0))
        throw PreconditionError("gamma must be positive and finite");
    if (enforce_gap_precondition && !(gamma > 8.0 * epsilon)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "gamma=%.6g must exceed 8*epsilon=%.6g", gamma, 8.0 * epsilon);
        throw PreconditionError(buf);
    }
    if (max_dim < 1)
        throw PreconditionError("max_dim must be at least 1");
    if (net_step_override && (!(*net_step_override > 0.0) || !std::isfinite(*net_step_override)))
        throw PreconditionError("net step override must be positive and finite");
    if (!(yes_constant >= 0.0) || !std::isfinite(yes_constant))
        throw PreconditionError("yes constant must be finite and >= 0");
    if (threads < 1)
        throw PreconditionError("threads must be at least 1");
}

double yes_threshold(double epsilon, double gamma, double yes_constant) {
    if (!(gamma > 8.0 * epsilon))
        return 1.0;
    const double t = 1.0 - yes_constant * (epsilon / (gamma - 8.0 * epsilon) + epsilon);
    return std::clamp(t, 0.0, 1.0);
}

CompiledInstance::CompiledInstance(const UGInstance &inst) : n_(inst.n()), k_(inst.k()) {
    const auto m = inst.edges().size();
    u_.reserve(m);
    v_.reserve(m);
    w_.reserve(m);
    images_.reserve(m * k_);
    for (const auto &e : inst.edges()) {
        u_.push_back(e.u);
        v_.push_back(e.v);
        w_.push_back(e.weight);
        images_.insert(images_.end(), e.perm.images().begin(), e.perm.images().end());
    }
}

double CompiledInstance::evaluate(std::span<const double> x, std::vector<Label> &L) const {
    L.resize(n_);
    for (std::size_t u = 0; u < n_; ++u) {
        const double *block = x.data() + u * k_;
        std::size_t best = 0;
        for (std::size_t i = 1; i < k_; ++i)
            if (block[i] > block[best])
                best = i;
        L[u] = static_cast<Label>(best);
    }
    double s = 0.0;
    for (std::size_t e = 0; e < w_.size(); ++e)
        if (images_[e * k_ + L[u_[e]]] == L[v_[e]])
            s += w_[e];
    return s;
}

void evaluate_candidates_serial(const CompiledInstance &ci, std::span<const double> candidates, std::size_t count,
                                std::span<double> out) {
    const std::size_t dim = ci.n() * ci.k();
    std::vector<Label> scratch;
    for (std::size_t c = 0; c < count; ++c)
        out[c] = ci.evaluate(candidates.subspan(c * dim, dim), scratch);
}

void evaluate_candidates_omp(const CompiledInstance &ci, std::span<const double> candidates, std::size_t count,
                             std::span<double> out, int threads) {
    const std::size_t dim = ci.n() * ci.k();
    const auto total = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel num_threads(threads)
    {
        std::vector<Label> scratch;
#pragma omp for schedule(static)
        for (std::ptrdiff_t c = 0; c < total; ++c)
            out[c] = ci.evaluate(candidates.subspan(static_cast<std::size_t>(c) * dim, dim), scratch);
    }
}

double eigenspace_threshold(const UGInstance &inst, SolveMode mode, double gamma) {
    if (mode == SolveMode::adjacency) {
        const auto d = inst.regular_degree(numeric_config().regularity_tol);
        if (!d)
            throw PreconditionError("adjacency mode needs a regular constraint graph; use laplacian mode");
        return (1.0 - gamma) * *d;
    }
    return gamma * inst.average_degree();
}

SelectedSpace select_solver_space(const UGInstance &inst, SolveMode mode, double gamma) {
    SelectedSpace out;
    const double threshold = eigenspace_threshold(inst, mode, gamma);
    if (mode == SolveMode::adjacency) {
        out.degree = *inst.regular_degree(numeric_config().regularity_tol);
        out.matrix = build_label_extended(inst).matrix;
        out.W = select_eigenspace(out.matrix, threshold, SpectralMode::adjacency_high);
    } else {
        out.degree = inst.average_degree();
        out.matrix = build_laplacian(inst).matrix;
        out.W = select_eigenspace(out.matrix, threshold, SpectralMode::laplacian_low);
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Candidates are evaluated in batches; the reduction walks each batch in index
// order, so the winner is the first maximal candidate for any thread count.
class CandidateSearch {
  public:
    CandidateSearch(const UGInstance &inst, int threads)
        : ci_(inst), dim_(inst.n() * inst.k()), threads_(threads),
          batch_(std::max<std::size_t>(1, std::min<std::size_t>(4096, (std::size_t{1} << 22) / std::max<std::size_t>(1, dim_)))),
          buf_(batch_ * dim_), values_(batch_) {}

    double *slot() { return buf_.data() + filled_ * dim_; }
    void commit() {
        if (++filled_ == batch_)
            flush();
    }

    void flush() {
        if (filled_ == 0)
            return;
        if (threads_ > 1)
            evaluate_candidates_omp(ci_, buf_, filled_, values_, threads_);
        else
            evaluate_candidates_serial(ci_, buf_, filled_, values_);
        for (std::size_t c = 0; c < filled_; ++c) {
            if (values_[c] > best_value_) {
                best_value_ = values_[c];
                best_vec_.assign(buf_.begin() + c * dim_, buf_.begin() + (c + 1) * dim_);
            }
        }
        evaluated_ += filled_;
        filled_ = 0;
    }

    const std::vector<double> &best_vector() const { return best_vec_; }
    std::uint64_t evaluated() const { return evaluated_; }

  private:
    CompiledInstance ci_;
    std::size_t dim_;
    int threads_;
    std::size_t batch_;
    std::vector<double> buf_;
    std::vector<double> values_;
    std::size_t filled_ = 0;
    double best_value_ = -1.0;
    std::vector<double> best_vec_;
    std::uint64_t evaluated_ = 0;
};

} // namespace

SolveReport recover_from_eigenspace(const UGInstance &inst, const Eigenspace &W, const SolveParams &params) {
    params.validate();
    const std::size_t D = W.dim();
    if (D == 0)
        throw DegenerateSpectrum("eigenspace W is empty; no candidates to enumerate");
    if (W.dim_ambient != inst.n() * inst.k())
        throw PreconditionError("eigenspace does not live in the label-extended space of the instance");

    const double step = params.net_step_override.value_or(default_net_step(params.epsilon, params.gamma, D));
    check_net_budget(D, step, numeric_config().net_cap);

    const auto t0 = Clock::now();
    CandidateSearch search(inst, params.threads);
    const std::size_t dim = W.dim_ambient;

    for (std::size_t s = 0; s < D; ++s) {
        for (double sign : {1.0, -1.0}) {
            double *x = search.slot();
            for (std::size_t i = 0; i < dim; ++i)
                x[i] = sign * W.basis[s][i];
            search.commit();
        }
    }

    NetEnumerator net(D, step);
    while (net.next()) {
        double *x = search.slot();
        std::fill(x, x + dim, 0.0);
        const auto &z = net.coefficients();
        for (std::size_t s = 0; s < D; ++s) {
            if (z[s] == 0)
                continue;
            const double c = step * static_cast<double>(z[s]);
            const double *b = W.basis[s].data();
            for (std::size_t i = 0; i < dim; ++i)
                x[i] += c * b[i];
        }
        search.commit();
    }
    search.flush();

    SolveReport rep;
    rep.best_labeling = read_off_assignment(search.best_vector(), inst.n(), inst.k());
    rep.best_value = value(inst, rep.best_labeling);
    rep.yes_threshold = yes_threshold(params.epsilon, params.gamma, params.yes_constant);
    rep.decision = rep.best_value >= rep.yes_threshold ? Decision::yes : Decision::no;
    rep.dim_W = D;
    rep.net_points_evaluated = search.evaluated();
    rep.enumeration_time = seconds_since(t0);
    return rep;
}

SolveReport recover_solution(const UGInstance &inst, const SolveParams &params) {
    params.validate();
    const auto t0 = Clock::now();
    const auto space = select_solver_space(inst, params.mode, params.gamma);
    const double eigen_time = seconds_since(t0);

    const std::size_t D = space.W.dim();
    if (D == 0)
        throw DegenerateSpectrum("no eigenvalue passes the threshold " + format_double(space.W.threshold));
    if (D > params.max_dim) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "dim(W)=%zu exceeds max_dim=%zu (threshold %.6g, smallest selected eigenvalue %.6g)", D,
                      params.max_dim, space.W.threshold, space.W.eigenvalues.back());
        throw DimensionAbort(D, params.max_dim, buf);
    }
    auto rep = recover_from_eigenspace(inst, space.W, params);
    rep.eigen_time = eigen_time;
    return rep;
}

ProjectionSplit closeness_diagnostic(const UGInstance &inst, const Labeling &planted, const SolveParams &params) {
    params.validate();
    check_labeling(inst, planted);
    const auto space = select_solver_space(inst, params.mode, params.gamma);
    if (space.W.dim() == 0)
        throw DegenerateSpectrum("no eigenvalue passes the threshold " + format_double(space.W.threshold));
    const auto y = characteristic_vector(planted, inst.k(), true);
    return project_split(y.entries, space.W);
}

} // namespace ugspec
