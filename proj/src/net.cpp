#include "ugspec/errors.hpp"
#include "ugspec/numeric_config.hpp"
#include "ugspec/recover.hpp"

#include <cmath>
#include <cstdio>

namespace ugspec {

namespace {

// Points on the sphere of radius exactly 1/step belong to the net.
constexpr double ball_slack = 1e-12;

std::int64_t floor_isqrt(double r) {
    if (r <= 0.0)
        return 0;
    auto m = static_cast<std::int64_t>(std::floor(std::sqrt(r)));
    while (static_cast<double>((m + 1) * (m + 1)) <= r)
        ++m;
    while (m > 0 && static_cast<double>(m * m) > r)
        --m;
    return m;
}

} // namespace

double default_net_step(double epsilon, double gamma, std::size_t dim) {
    if (dim == 0)
        throw PreconditionError("net step undefined for dim 0");
    return std::sqrt(2.0 * epsilon / (gamma * static_cast<double>(dim)));
}

NetEnumerator::NetEnumerator(std::size_t dim, double step)
    : radius2_((1.0 + ball_slack) / (step * step)), step_(step), z_(dim, 0), bound_(dim, 0), prefix2_(dim, 0.0) {
    if (dim == 0)
        throw PreconditionError("enumerate_net: eigenspace has dimension 0");
    if (!(step > 0.0) || !std::isfinite(step))
        throw PreconditionError("enumerate_net: step must be positive and finite");
}

void NetEnumerator::descend_from(std::size_t level) {
    for (std::size_t j = level; j < z_.size(); ++j) {
        prefix2_[j] = j == 0 ? 0.0 : prefix2_[j - 1] + static_cast<double>(z_[j - 1] * z_[j - 1]);
        bound_[j] = floor_isqrt(radius2_ - prefix2_[j]);
        z_[j] = -bound_[j];
    }
}

bool NetEnumerator::next() {
    if (done_)
        return false;
    if (!started_) {
        started_ = true;
        descend_from(0);
        return true;
    }
    for (std::size_t j = z_.size(); j-- > 0;) {
        if (z_[j] < bound_[j]) {
            ++z_[j];
            descend_from(j + 1);
            return true;
        }
    }
    done_ = true;
    return false;
}

double projected_net_size(std::size_t dim, double step) {
    if (dim == 0)
        return 0.0;
    const double r2 = (1.0 + ball_slack) / (step * step);
    constexpr double exact_limit = 4e6;
    if (r2 > exact_limit) {
        // Ball volume in lattice units; only used to reject hopeless nets.
        const double d = static_cast<double>(dim);
        return std::exp(d / 2.0 * std::log(M_PI) - std::lgamma(d / 2.0 + 1.0) + d / 2.0 * std::log(r2));
    }
    const auto smax = static_cast<std::size_t>(std::floor(r2));
    // counts[s] = #{z in Z^j : |z|^2 = s}
    std::vector<double> counts(smax + 1, 0.0), next(smax + 1);
    counts[0] = 1.0;
    for (std::size_t j = 0; j < dim; ++j) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t s = 0; s <= smax; ++s) {
            if (counts[s] == 0.0)
                continue;
            next[s] += counts[s];
            for (std::size_t a = 1; s + a * a <= smax; ++a)
                next[s + a * a] += 2.0 * counts[s];
        }
        counts.swap(next);
    }
    double total = 0.0;
    for (double c : counts)
        total += c;
    return total;
}

void check_net_budget(std::size_t dim, double step, double cap) {
    const double size = projected_net_size(dim, step);
    if (size > cap) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "epsilon-net too large: dim=%zu step=%.6g gives %.3g points (cap %.3g)", dim,
                      step, size, cap);
        throw BudgetError(buf);
    }
}

void enumerate_net(const NetSpec &spec, const std::function<void(std::span<const double>)> &visit) {
    if (spec.basis == nullptr)
        throw PreconditionError("enumerate_net: no basis");
    const Eigenspace &W = *spec.basis;
    check_net_budget(W.dim(), spec.step, numeric_config().net_cap);
    NetEnumerator net(W.dim(), spec.step);
    std::vector<double> v(W.dim_ambient);
    while (net.next()) {
        std::fill(v.begin(), v.end(), 0.0);
        const auto &z = net.coefficients();
        for (std::size_t s = 0; s < z.size(); ++s) {
            if (z[s] == 0)
                continue;
            const double c = spec.step * static_cast<double>(z[s]);
            const auto &b = W.basis[s];
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] += c * b[i];
        }
        visit(v);
    }
}

} // namespace ugspec
