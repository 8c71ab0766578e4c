#include "ugspec/maxlin.hpp"

#include "ugspec/errors.hpp"
#include "ugspec/label_extended.hpp"
#include "ugspec/numeric_config.hpp"
#include "ugspec/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ugspec {

Group::Group(std::vector<Label> factors) : factors_(std::move(factors)) {
    if (factors_.empty())
        throw InvalidInstance("group needs at least one cyclic factor");
    for (Label f : factors_) {
        if (f < 1)
            throw InvalidInstance("cyclic factor order must be >= 1");
        order_ *= f;
        if (order_ > std::numeric_limits<Label>::max())
            throw InvalidInstance("group order too large");
    }
}

Label Group::add(Label a, Label b) const {
    Label out = 0, stride = 1;
    for (Label f : factors_) {
        const Label da = a % f, db = b % f;
        out += ((da + db) % f) * stride;
        a /= f;
        b /= f;
        stride *= f;
    }
    return out;
}

Label Group::sub(Label a, Label b) const {
    Label out = 0, stride = 1;
    for (Label f : factors_) {
        const Label da = a % f, db = b % f;
        out += ((da + f - db) % f) * stride;
        a /= f;
        b /= f;
        stride *= f;
    }
    return out;
}

Permutation Group::shift_permutation(Label c) const {
    std::vector<Label> img(order_);
    for (Label i = 0; i < order_; ++i)
        img[i] = sub(i, c);
    return Permutation(std::move(img));
}

MaxLinInstance make_maxlin(const Group &group, std::size_t n, std::span<const MaxLinEdge> edges) {
    std::vector<UGEdge> ug;
    ug.reserve(edges.size());
    std::vector<Label> shifts;
    shifts.reserve(edges.size());
    for (const auto &e : edges) {
        if (e.c >= group.order())
            throw InvalidInstance("shift outside the group");
        ug.push_back({e.u, e.v, e.weight, group.shift_permutation(e.c)});
        shifts.push_back(e.c);
    }
    return {group, UGInstance(n, group.order(), std::move(ug)), std::move(shifts)};
}

MaxLinInstance as_maxlin(const UGInstance &inst, const Group &group) {
    if (group.order() != inst.k())
        throw InvalidInstance("group order differs from the alphabet size");
    std::vector<Label> shifts;
    shifts.reserve(inst.edges().size());
    for (std::size_t idx = 0; idx < inst.edges().size(); ++idx) {
        const auto &perm = inst.edges()[idx].perm;
        // pi(0) = 0 - c
        const Label c = group.sub(0, perm(0));
        for (Label i = 0; i < inst.k(); ++i)
            if (perm(i) != group.sub(i, c))
                throw InvalidInstance("edge " + std::to_string(idx) + " is not a group shift");
        shifts.push_back(c);
    }
    return {group, inst, std::move(shifts)};
}

std::optional<Group> detect_group(const UGInstance &inst) {
    const auto k = inst.k();
    std::vector<Group> candidates{Group::cyclic(static_cast<Label>(k))};
    if (k > 2 && (k & (k - 1)) == 0) {
        unsigned kappa = 0;
        while ((std::size_t{1} << kappa) < k)
            ++kappa;
        candidates.push_back(Group::boolean_cube(kappa));
    }
    for (const auto &g : candidates) {
        try {
            as_maxlin(inst, g);
            return g;
        } catch (const InvalidInstance &) {
        }
    }
    return std::nullopt;
}

std::string serialize_maxlin(const MaxLinInstance &inst) {
    if (inst.group.factors().size() != 1)
        return serialize_instance(inst.base);
    const auto &b = inst.base;
    std::string out = "maxlin " + std::to_string(b.n()) + " " + std::to_string(b.k()) + "\n";
    if (b.weight_scale() != 1.0)
        out += "# weight_scale " + format_double(b.weight_scale()) + "\n";
    for (std::size_t i = 0; i < b.edges().size(); ++i) {
        const auto &e = b.edges()[i];
        out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + format_double(e.weight) + " " +
               std::to_string(inst.shifts[i]) + "\n";
    }
    return out;
}

Labeling shift(const Labeling &L, Label i, const Group &group) {
    std::vector<Label> out(L.size());
    for (std::size_t u = 0; u < L.size(); ++u)
        out[u] = group.add(L[u], i);
    return Labeling(std::move(out));
}

std::vector<std::vector<double>> lift_eigenbasis(const MaxLinInstance &inst, const Eigenspace &phi_basis,
                                                 const Labeling &planted) {
    const auto n = inst.base.n();
    const auto k = inst.base.k();
    check_labeling(inst.base, planted);
    if (phi_basis.dim_ambient != n)
        throw PreconditionError("phi basis does not live on the constraint graph");
    for (const auto &e : inst.base.edges())
        if (e.perm(planted[e.u]) != planted[e.v])
            throw InvalidLabeling("planted labeling does not satisfy every constraint");
    std::vector<std::vector<double>> out;
    out.reserve(phi_basis.dim() * k);
    for (const auto &phi : phi_basis.basis) {
        for (Label i = 0; i < k; ++i) {
            std::vector<double> v(n * k, 0.0);
            for (std::size_t u = 0; u < n; ++u)
                v[u * k + inst.group.add(planted[u], i)] = phi[u];
            out.push_back(std::move(v));
        }
    }
    return out;
}

UniformityReport uniformity_check(const Eigenspace &S, double C, std::size_t samples, std::uint64_t seed) {
    if (S.dim() == 0)
        throw PreconditionError("uniformity check needs a nonempty eigenspace");
    const auto n = S.dim_ambient;
    UniformityReport rep;
    rep.bound = C / std::sqrt(static_cast<double>(n));
    const auto linf = [](const std::vector<double> &v) {
        double m = 0.0;
        for (double x : v)
            m = std::max(m, std::abs(x));
        return m;
    };
    for (std::size_t s = 0; s < S.dim(); ++s) {
        const double m = linf(S.basis[s]);
        if (m > rep.basis_max_linf) {
            rep.basis_max_linf = m;
            rep.worst_basis_index = s;
        }
    }
    const double slack = numeric_config().residual_tol;
    rep.passed = rep.basis_max_linf <= rep.bound + slack;

    rep.sampled_max_linf = rep.basis_max_linf;
    if (S.dim() > 1) {
        Rng rng(seed);
        std::vector<double> coef(S.dim()), v(n);
        for (std::size_t t = 0; t < samples; ++t) {
            double nrm = 0.0;
            for (auto &c : coef) {
                c = rng.normal();
                nrm += c * c;
            }
            nrm = std::sqrt(nrm);
            if (nrm == 0.0)
                continue;
            std::fill(v.begin(), v.end(), 0.0);
            for (std::size_t s = 0; s < S.dim(); ++s)
                for (std::size_t u = 0; u < n; ++u)
                    v[u] += coef[s] / nrm * S.basis[s][u];
            rep.sampled_max_linf = std::max(rep.sampled_max_linf, linf(v));
        }
        rep.samples = samples;
    }
    rep.sampled_passed = rep.sampled_max_linf <= rep.bound + slack;
    return rep;
}

std::vector<double> block_norm_vector(std::span<const double> w, std::size_t n, std::size_t k) {
    if (w.size() != n * k)
        throw PreconditionError("vector length is not n*k");
    std::vector<double> out(n);
    for (std::size_t u = 0; u < n; ++u)
        out[u] = norm(w.subspan(u * k, k));
    return out;
}

namespace {

double require_regular(const UGInstance &inst, const char *who) {
    const auto d = inst.regular_degree(numeric_config().regularity_tol);
    if (!d)
        throw PreconditionError(std::string(who) + " requires a regular constraint graph");
    return *d;
}

// Everything about the completion that does not depend on w.
struct PerturbationContext {
    LabelExtendedMatrix M;
    LabelExtendedMatrix Mt;
    Eigenspace Y;
    double lambda_s = -std::numeric_limits<double>::infinity();
    SymmetricMatrix R;
    double R_row_budget = 0.0;
    double d = 0.0;
};

PerturbationContext make_context(const MaxLinInstance &inst, const MaxLinInstance &completion, double gamma) {
    const auto &a = inst.base;
    const auto &b = completion.base;
    if (a.n() != b.n() || a.k() != b.k() || a.edges().size() != b.edges().size())
        throw PreconditionError("instance and completion have different shapes");
    PerturbationContext ctx;
    ctx.d = require_regular(b, "sin-theta report");
    ctx.R = SymmetricMatrix(a.n());
    for (std::size_t i = 0; i < a.edges().size(); ++i) {
        const auto &e = a.edges()[i];
        const auto &f = b.edges()[i];
        if (e.u != f.u || e.v != f.v || e.weight != f.weight)
            throw PreconditionError("completion must differ from the instance only in edge permutations");
        if (e.perm == f.perm)
            continue;
        ctx.R_row_budget += e.weight;
        if (e.u == e.v)
            ctx.R.set(e.u, e.u, ctx.R(e.u, e.u) + e.weight);
        else
            ctx.R.set(e.u, e.v, ctx.R(e.u, e.v) + e.weight);
    }
    ctx.M = build_label_extended(a);
    ctx.Mt = build_label_extended(b);
    const auto eig = eigendecompose(ctx.Mt.matrix);
    const double thr = (1.0 - gamma) * ctx.d;
    ctx.Y = select_eigenspace(eig, ctx.Mt.matrix.dim(), thr, SpectralMode::adjacency_high);
    for (double lam : eig.values) {
        if (lam < thr) {
            ctx.lambda_s = lam;
            break;
        }
    }
    return ctx;
}

PerturbationReport report_for(const PerturbationContext &ctx, const MaxLinInstance &inst,
                              std::span<const double> w) {
    const auto n = inst.base.n();
    const auto k = inst.base.k();
    if (w.size() != n * k)
        throw PreconditionError("w must have length n*k");
    const double wn = norm(w);
    if (std::abs(wn - 1.0) > 1e-6)
        throw PreconditionError("w must have unit norm");

    PerturbationReport rep;
    rep.lambda = ctx.M.matrix.quadratic_form(w);
    rep.lambda_s = ctx.lambda_s;
    const auto Mw = ctx.M.matrix.apply(w);
    const auto Mtw = ctx.Mt.matrix.apply(w);
    double num = 0.0;
    for (std::size_t i = 0; i < Mw.size(); ++i)
        num += (Mtw[i] - Mw[i]) * (Mtw[i] - Mw[i]);
    rep.numerator = std::sqrt(num);
    const double gap = rep.lambda - rep.lambda_s;
    rep.beta_bound = gap > 0.0 ? rep.numerator / gap : std::numeric_limits<double>::infinity();
    rep.dim_Y = ctx.Y.dim();
    rep.beta_measured = ctx.Y.dim() == 0 ? wn : project_split(w, ctx.Y).beta;
    rep.R_row_budget = ctx.R_row_budget;
    const auto wbar = block_norm_vector(w, n, k);
    rep.R_norm_bound = 2.0 * norm(ctx.R.apply(wbar));
    return rep;
}

using Clock = std::chrono::steady_clock;

} // namespace

PerturbationReport sin_theta_report(const MaxLinInstance &inst, const MaxLinInstance &completion,
                                    std::span<const double> w, double gamma) {
    if (!(gamma > 0.0))
        throw PreconditionError("gamma must be positive");
    return report_for(make_context(inst, completion, gamma), inst, w);
}

std::vector<PerturbationReport> sin_theta_reports(const MaxLinInstance &inst, const MaxLinInstance &completion,
                                                  double theta, double gamma) {
    if (!(gamma > 0.0) || !(theta > 0.0))
        throw PreconditionError("gamma and theta must be positive");
    const auto ctx = make_context(inst, completion, gamma);
    const double d = require_regular(inst.base, "sin-theta report");
    const auto eig = eigendecompose(ctx.M.matrix);
    const auto W = select_eigenspace(eig, ctx.M.matrix.dim(), (1.0 - theta) * d, SpectralMode::adjacency_high);
    std::vector<PerturbationReport> out;
    out.reserve(W.dim());
    for (const auto &w : W.basis)
        out.push_back(report_for(ctx, inst, w));
    return out;
}

double default_theta(double epsilon, double gamma) {
    return std::min(gamma, std::max(10.0 * epsilon * gamma, gamma * gamma * gamma / 100.0));
}

double MaxLinParams::resolved_theta() const { return theta.value_or(default_theta(epsilon, gamma)); }

void MaxLinParams::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw PreconditionError("epsilon must lie in (0,1)");
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw PreconditionError("gamma must lie in (0,1]");
    const double th = resolved_theta();
    if (!(th > 0.0) || th > gamma)
        throw PreconditionError("theta must lie in (0, gamma]");
    if (th < theta_floor_constant * epsilon * gamma) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "theta=%.6g is below %.6g*epsilon*gamma=%.6g", th, theta_floor_constant,
                      theta_floor_constant * epsilon * gamma);
        throw PreconditionError(buf);
    }
    if (!(uniformity_C > 0.0))
        throw PreconditionError("uniformity constant must be positive");
    if (max_dim < 1)
        throw PreconditionError("max_dim must be at least 1");
    if (threads < 1)
        throw PreconditionError("threads must be at least 1");
}

MaxLinSolveReport solve_maxlin(const MaxLinInstance &inst, const MaxLinParams &params) {
    params.validate();
    const auto &base = inst.base;
    const double d = require_regular(base, "Max-Lin solver");
    const double theta = params.resolved_theta();

    const auto t0 = Clock::now();
    MaxLinSolveReport rep;
    rep.theta = theta;
    const auto S = select_eigenspace(constraint_adjacency(base), (1.0 - params.gamma) * d,
                                     SpectralMode::adjacency_high);
    rep.dim_S = S.dim();
    rep.expander_regime = S.dim() == 1;
    if (S.dim() > 0)
        rep.uniformity = uniformity_check(S, params.uniformity_C);
    if (!rep.uniformity.passed)
        rep.warnings.push_back("basis of S fails the ell-infinity uniformity bound");

    const auto M = build_label_extended(base);
    const auto W = select_eigenspace(M.matrix, (1.0 - theta) * d, SpectralMode::adjacency_high);
    const double eigen_time = std::chrono::duration<double>(Clock::now() - t0).count();
    rep.dim_W = W.dim();
    rep.k_times_dim_S = base.k() * S.dim();
    rep.dim_check_passed = rep.dim_W <= rep.k_times_dim_S;
    if (!rep.dim_check_passed)
        rep.warnings.push_back("dim(W)=" + std::to_string(rep.dim_W) + " exceeds k*dim(S)=" +
                               std::to_string(rep.k_times_dim_S));

    if (W.dim() == 0)
        throw DegenerateSpectrum("no eigenvalue of M passes (1-theta)d");
    if (W.dim() > params.max_dim) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "dim(W)=%zu exceeds max_dim=%zu at theta=%.6g", W.dim(), params.max_dim,
                      theta);
        throw DimensionAbort(W.dim(), params.max_dim, buf);
    }

    SolveParams sp;
    sp.epsilon = params.epsilon;
    sp.gamma = theta;
    sp.max_dim = params.max_dim;
    sp.mode = SolveMode::adjacency;
    sp.net_step_override = params.net_step_override;
    sp.yes_constant = params.yes_constant;
    sp.threads = params.threads;
    sp.enforce_gap_precondition = false;
    rep.solve = recover_from_eigenspace(base, W, sp);
    rep.solve.eigen_time = eigen_time;
    return rep;
}

} // namespace ugspec
