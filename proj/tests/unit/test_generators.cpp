#include "helpers.hpp"

#include "ugspec/errors.hpp"
#include "ugspec/label_extended.hpp"
#include "ugspec/maxlin.hpp"
#include "ugspec/rng.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>
#include <set>

using namespace ugspec;

namespace {

std::string bits(std::uint64_t mask, std::size_t n) {
    std::string s;
    for (std::size_t x = 0; x < n; ++x)
        s += (mask >> x) & 1 ? '1' : '0';
    return s;
}

double binom(int n, int r) {
    double b = 1.0;
    for (int i = 0; i < r; ++i)
        b = b * (n - i) / (i + 1);
    return b;
}

} // namespace

TEST_SUITE("generators") {

TEST_CASE("rng is reproducible") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i)
        CHECK(a.bits() == b.bits());
    Rng c(1);
    for (int i = 0; i < 1000; ++i) {
        CHECK(c.index(7) < 7);
        const double u = c.uniform01();
        CHECK((u >= 0.0 && u < 1.0));
    }
}

TEST_CASE("planted instances satisfy the planted labeling") {
    for (auto fam : {ConstraintFamily::general, ConstraintFamily::maxlin}) {
        const auto g = random_regular_graph(12, 3, 4);
        const auto L = random_labeling(12, 4, 5);
        const auto pi = planted_instance({g, 4, L, fam, 6});
        CHECK(value(pi.inst, L) == 1.0);
        if (fam == ConstraintFamily::maxlin)
            for (const auto &e : pi.inst.edges())
                CHECK(e.perm == Permutation::cyclic_shift(4, (L[e.u] + 4 - L[e.v]) % 4));
    }
}

TEST_CASE("generators are deterministic") {
    const auto a = planted_regular_instance(20, 3, 3, ConstraintFamily::general, 0.1, 9);
    const auto b = planted_regular_instance(20, 3, 3, ConstraintFamily::general, 0.1, 9);
    CHECK(serialize_instance(a.inst) == serialize_instance(b.inst));
    CHECK(a.planted == b.planted);
    const auto c = planted_regular_instance(20, 3, 3, ConstraintFamily::general, 0.1, 10);
    CHECK(serialize_instance(a.inst) != serialize_instance(c.inst));
}

TEST_CASE("perturb") {
    const auto g = random_regular_graph(20, 3, 1);
    const auto L = random_labeling(20, 3, 2);
    const auto inst = planted_instance({g, 3, L, ConstraintFamily::general, 3}).inst;
    CHECK(perturb(inst, L, 0.0, 1) == inst);

    const auto one = testutil::single_edge(3, Permutation::identity(3));
    CHECK(value(perturb(one, Labeling{1, 1}, 1.0, 4), Labeling{1, 1}) == 0.0);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = perturb(inst, L, 0.05, seed);
        const double v = value(p, L);
        const double wmax = 1.0 / inst.total_weight();
        CHECK(v >= 1.0 - 0.05 - wmax - 1e-12);
        CHECK(v <= 1.0 - 0.05 + wmax + 1e-12);
        // shortest prefix: 30 unit edges, 0.05 * 30 = 1.5 -> 2 edges
        CHECK(v == doctest::Approx(28.0 / 30.0));
    }

    CHECK_THROWS_AS(perturb(inst, L, -0.1, 0), PreconditionError);
    CHECK_THROWS_AS(perturb(testutil::single_edge(1, Permutation::identity(1)), Labeling{0, 0}, 0.5, 0),
                    PreconditionError);
    Labeling bad = L;
    bad[0] = (bad[0] + 1) % 3;
    CHECK_THROWS_AS(perturb(inst, bad, 0.1, 0), PreconditionError);
}

TEST_CASE("perturb_maxlin keeps group structure") {
    const auto g = random_regular_graph(16, 3, 2);
    const auto L = random_labeling(16, 5, 3);
    const auto ml = planted_maxlin(g, Group::cyclic(5), L);
    const auto p = perturb_maxlin(ml, L, 0.2, 4);
    CHECK(as_maxlin(p.base, Group::cyclic(5)).shifts == p.shifts);
    CHECK(value(p.base, L) == doctest::Approx(1.0 - 5.0 / 24.0));
}

TEST_CASE("random regular graphs") {
    const auto k4 = random_regular_graph(4, 3, 0);
    CHECK(k4.edges.size() == 6);
    const auto g = random_regular_graph(20, 3, 5);
    std::vector<int> deg(20, 0);
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const auto &e : g.edges) {
        CHECK(e.u != e.v);
        CHECK(seen.emplace(e.u, e.v).second);
        ++deg[e.u];
        ++deg[e.v];
    }
    for (int d : deg)
        CHECK(d == 3);
    REQUIRE(g.lambda2.has_value());
    CHECK(*g.lambda2 < 3.0);
    CHECK_THROWS_AS(random_regular_graph(5, 3, 0), PreconditionError);
    CHECK_THROWS_AS(random_regular_graph(4, 4, 0), PreconditionError);
}

TEST_CASE("Hadamard code, kappa=2") {
    std::vector<std::string> words;
    for (std::uint64_t y = 0; y < 4; ++y)
        words.push_back(bits(hadamard_codeword(4, y), 4));
    CHECK(words == std::vector<std::string>{"0000", "0101", "0011", "0110"});
}

TEST_CASE("KV constraint graph") {
    for (unsigned kappa : {1u, 2u, 3u}) {
        const KVSpec spec{kappa, 0.1};
        const auto g = kv_constraint_graph(spec);
        const std::size_t n = spec.n();
        CHECK(g.representatives.size() == (std::size_t{1} << n) / n);
        CHECK(std::is_sorted(g.representatives.begin(), g.representatives.end()));
        const auto &A = g.weights;
        for (std::size_t i = 0; i < A.dim(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < A.dim(); ++j) {
                s += A(i, j);
                CHECK(A(i, j) == A(j, i));
            }
            CHECK(s == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(kv_constraint_graph({4, 0.1}), BudgetError);
    CHECK_THROWS_AS(kv_constraint_graph({2, 0.5}), PreconditionError);
}

TEST_CASE("KV instance") {
    const auto inst = kv_instance({2, 0.25});
    CHECK(inst.n() == 4);
    CHECK(inst.k() == 4);
    CHECK(inst.edges().size() == 160);
    CHECK(inst.total_weight() == doctest::Approx(11.375));
    CHECK(detect_group(inst) == Group::boolean_cube(2));
    const auto d = inst.regular_degree(1e-9);
    REQUIRE(d.has_value());
    CHECK(*d == doctest::Approx(4.0));
}

TEST_CASE("KV label-extended equivalence") {
    for (double eps : {0.1, 0.25}) {
        for (unsigned kappa : {1u, 2u}) {
            const KVSpec spec{kappa, eps};
            const auto g = kv_constraint_graph(spec);
            const auto perm = kv_bijection(g);
            const auto M = build_label_extended(kv_instance(spec));
            const auto closed = kv_label_extended(spec.n(), eps);
            double worst = 0.0;
            for (std::size_t r = 0; r < perm.size(); ++r)
                for (std::size_t c = 0; c < perm.size(); ++c)
                    worst = std::max(worst, std::abs(M.matrix(r, c) - closed(perm[r], perm[c])));
            CHECK(worst <= 1e-12);
        }
    }
}

TEST_CASE("KV closed form entries") {
    const auto A = kv_label_extended(4, 0.1);
    CHECK(A(0, 1) == doctest::Approx(0.2916).epsilon(1e-12));
    CHECK(A(5, 5) == doctest::Approx(4.0 * std::pow(0.9, 4)));
    for (std::size_t i = 0; i < 16; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < 16; ++j)
            s += A(i, j);
        CHECK(std::abs(s - 4.0) < 1e-9);
    }
    CHECK_THROWS_AS(kv_label_extended(13, 0.1), BudgetError);
}

TEST_CASE("Walsh-Hadamard examples") {
    std::vector<double> delta(8, 0.0);
    delta[0] = 1.0;
    for (double v : walsh_hadamard_spectrum(delta).values)
        CHECK(v == 1.0);

    const std::vector<double> cycle{0, 1, 1, 0};
    CHECK(testutil::sorted(walsh_hadamard_spectrum(cycle).values) == std::vector<double>{-2, 0, 0, 2});

    const std::size_t n = 6;
    const double eps = 0.15;
    const auto spec = walsh_hadamard_spectrum(kv_weight_function(n, eps));
    CHECK(spec.group_dim == n);
    for (std::uint64_t w = 0; w < spec.values.size(); ++w)
        CHECK(std::abs(spec.values[w] - n * std::pow(1 - 2 * eps, std::popcount(w))) < 1e-9);

    CHECK_THROWS_AS(walsh_hadamard_spectrum(std::vector<double>(6, 1.0)), PreconditionError);
}

TEST_CASE("Walsh-Hadamard matches a naive character sum") {
    Rng rng(3);
    std::vector<double> f(32);
    for (auto &x : f)
        x = rng.normal();
    const auto fast = walsh_hadamard_spectrum(f);
    for (std::uint64_t w = 0; w < 32; ++w) {
        double s = 0.0;
        for (std::uint64_t x = 0; x < 32; ++x)
            s += (std::popcount(w & x) & 1 ? -1.0 : 1.0) * f[x];
        CHECK(fast.values[w] == doctest::Approx(s).epsilon(1e-12));
    }
}

TEST_CASE("Walsh-Hadamard agrees with the dense eigensolver") {
    Rng rng(8);
    for (std::size_t n : {2u, 3u, 4u}) {
        std::vector<double> f(std::size_t{1} << n);
        for (auto &x : f)
            x = rng.uniform01();
        const auto wht = testutil::sorted(walsh_hadamard_spectrum(f).values);
        const auto dense = testutil::sorted(eigendecompose(cayley_matrix(f)).values);
        CHECK(testutil::max_abs_diff(wht, dense) < 1e-9);
    }
}

TEST_CASE("KV spectrum") {
    const auto s = kv_spectrum(8, 0.1);
    REQUIRE(s.size() == 9);
    CHECK(s[0].eigenvalue == 8.0);
    CHECK(s[0].multiplicity == 1);
    CHECK(s[1].eigenvalue == doctest::Approx(6.4));
    CHECK(s[1].multiplicity == 8);
    CHECK(s[2].multiplicity == 28);
    for (int r = 0; r <= 8; ++r)
        CHECK(static_cast<double>(s[r].multiplicity) == binom(8, r));

    // closed form vs transform for every n up to 12
    for (std::size_t n = 1; n <= 12; ++n) {
        const auto levels = kv_spectrum(n, 0.2);
        const auto spec = walsh_hadamard_spectrum(kv_weight_function(n, 0.2));
        for (std::uint64_t w = 0; w < spec.values.size(); ++w)
            CHECK(std::abs(spec.values[w] - levels[std::popcount(w)].eigenvalue) < 1e-9);
    }
}

TEST_CASE("KV eigenspace dimension") {
    CHECK(kv_eigenspace_dimension(8, 0.1, 0.19) == 1);
    CHECK(kv_eigenspace_dimension(8, 0.1, 0.632) == 163);
    std::uint64_t prev = 0;
    for (double g = 0.05; g <= 1.0; g += 0.05) {
        const auto d = kv_eigenspace_dimension(8, 0.1, g);
        CHECK(d >= prev);
        prev = d;
    }
    CHECK(kv_eigenspace_dimension(4, 0.25, 1.0) == 16);
}

}
