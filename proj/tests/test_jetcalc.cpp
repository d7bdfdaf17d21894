#include <algorithm>
#include <numeric>

#include <catch_amalgamated.hpp>

#include <morin/jet.hpp>
#include <morin/jet_linalg.hpp>
#include <morin/map_jet.hpp>
#include <morin/matrix.hpp>
#include <morin/rat.hpp>

#include "gen.hpp"

using namespace morin;

namespace
{

Jet x(int nvars, int order, int k)
{
    return Jet::variable(nvars, order, k - 1);
}
Jet c(int nvars, int order, Rat v)
{
    return Jet::constant(nvars, order, v);
}

// Leibniz expansion over all permutations.
template <typename T, typename Mul>
T leibniz(const std::vector<std::vector<T>> &a, T zero, T one, Mul mul)
{
    const int n = static_cast<int>(a.size());
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    T total = zero;
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                inversions += p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)];
            }
        }
        T term = one;
        for (int i = 0; i < n; ++i) {
            term = mul(term, a[static_cast<std::size_t>(i)][static_cast<std::size_t>(p[static_cast<std::size_t>(i)])]);
        }
        total = inversions % 2 ? total - term : total + term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

// Plain row echelon over Rat, no fraction-free tricks.
int naive_rank(RatMatrix m)
{
    int r = 0;
    for (int col = 0; col < m.cols() && r < m.rows(); ++col) {
        int p = r;
        while (p < m.rows() && m(p, col).is_zero()) {
            ++p;
        }
        if (p == m.rows()) {
            continue;
        }
        for (int j = 0; j < m.cols(); ++j) {
            std::swap(m(p, j), m(r, j));
        }
        for (int i = r + 1; i < m.rows(); ++i) {
            const Rat f = m(i, col) / m(r, col);
            for (int j = 0; j < m.cols(); ++j) {
                m(i, j) -= f * m(r, j);
            }
        }
        ++r;
    }
    return r;
}

} // namespace

TEST_CASE("Rat arithmetic is canonical across the inline and GMP paths")
{
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(3, -6) == Rat(-1, 2));
    CHECK(Rat(-1, 2).to_string() == "-1/2");
    CHECK(Rat::parse("-12/8") == Rat(-3, 2));
    CHECK_THROWS_AS(Rat(1, 0), std::domain_error);

    const Rat big = Rat::parse("123456789012345678901234567890");
    CHECK_FALSE(big.is_small());
    CHECK((big - big).is_small());
    CHECK((big / big) == Rat(1));
    const Rat near_max(std::numeric_limits<std::int64_t>::max());
    CHECK((near_max + Rat(1)).to_mpq() == mpq_class(near_max.to_mpq() + 1));
    CHECK((near_max * near_max).to_mpq() == mpq_class(near_max.to_mpq() * near_max.to_mpq()));

    gen::Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        const std::int64_t p = static_cast<std::int64_t>(rng.engine()()) >> rng.uniform(0, 62);
        const std::int64_t q = (static_cast<std::int64_t>(rng.engine()() >> 1) >> rng.uniform(0, 62)) | 1;
        const std::int64_t s = static_cast<std::int64_t>(rng.engine()()) >> rng.uniform(0, 62);
        const Rat a(p, q), b(s, 1);
        const mpq_class qa = a.to_mpq(), qb = b.to_mpq();
        REQUIRE((a + b).to_mpq() == mpq_class(qa + qb));
        REQUIRE((a - b).to_mpq() == mpq_class(qa - qb));
        REQUIRE((a * b).to_mpq() == mpq_class(qa * qb));
        if (!b.is_zero()) {
            REQUIRE((a / b).to_mpq() == mpq_class(qa / qb));
        }
        REQUIRE(((a <=> b) < 0) == (qa < qb));
    }
}

TEST_CASE("jet_mul examples")
{
    CHECK(jet_mul(c(1, 2, 1) + x(1, 2, 1), c(1, 2, 1) - x(1, 2, 1)) == c(1, 2, 1) - x(1, 2, 1) * x(1, 2, 1));
    const Jet x2 = x(2, 3, 2);
    CHECK(jet_mul(x2 * x2, x2 * x2).is_zero());
    const Jet s = x(2, 2, 1) + x(2, 2, 2);
    CHECK(jet_mul(s, s) == x(2, 2, 1) * x(2, 2, 1) + Rat(2) * x(2, 2, 1) * x(2, 2, 2) + x(2, 2, 2) * x(2, 2, 2));
    CHECK_THROWS_AS(jet_mul(x(2, 2, 1), x(2, 3, 1)), DimensionError);
    CHECK_THROWS_AS(jet_mul(x(2, 2, 1), x(3, 2, 1)), DimensionError);
}

TEST_CASE("jet_derive examples")
{
    const Jet x1 = x(2, 4, 1), x2 = x(2, 4, 2);
    CHECK(jet_derive(x1 * x2 + x2 * x2 * x2, 2) == (x1 + Rat(3) * x2 * x2).truncated(3));
    CHECK(jet_derive(c(2, 4, 5), 1).is_zero());
    const Jet x3 = x(4, 5, 3), x4 = x(4, 5, 4);
    CHECK(jet_derive(x3 * x4 + x4 * x4 * x4, 4) == (x3 + Rat(3) * x4 * x4).truncated(4));
    CHECK_THROWS_AS(jet_derive(x1, 3), DimensionError);
    CHECK_THROWS_AS(jet_derive(x1, 0), DimensionError);
    CHECK(jet_derive(c(1, 0, 1), 1).order() == 0);
}

TEST_CASE("Jet ring axioms and derivative symmetry on random jets")
{
    gen::Rng rng(11);
    for (int t = 0; t < 60; ++t) {
        const int nv = rng.uniform(1, 4), ord = rng.uniform(0, 5);
        const Jet a = gen::jet(rng, nv, ord), b = gen::jet(rng, nv, ord), d = gen::jet(rng, nv, ord);
        REQUIRE((a * b) * d == a * (b * d));
        REQUIRE(a * (b + d) == a * b + a * d);
        REQUIRE(a * b == b * a);
        REQUIRE(a + (b - a) == b);
        const int j = rng.uniform(0, nv - 1), k = rng.uniform(0, nv - 1);
        REQUIRE(a.derive(j).derive(k) == a.derive(k).derive(j));
        // Leibniz rule at the order both sides are exact.
        REQUIRE(equal_to_order((a * b).derive(j), a.derive(j) * b + a * b.derive(j), ord - 1));
    }
}

TEST_CASE("Jet invariants: sorted, no zeros, bounded degree")
{
    gen::Rng rng(5);
    for (int t = 0; t < 40; ++t) {
        const Jet a = gen::jet(rng, 3, 4) * gen::jet(rng, 3, 4) - gen::jet(rng, 3, 4);
        const auto &ts = a.terms();
        for (std::size_t i = 0; i < ts.size(); ++i) {
            REQUIRE_FALSE(ts[i].second.is_zero());
            REQUIRE(ts[i].first.degree() <= a.order());
            if (i > 0) {
                REQUIRE(graded_less(ts[i - 1].first, ts[i].first));
            }
        }
    }
}

TEST_CASE("Jet printing")
{
    const Jet x1 = x(2, 4, 1), x2 = x(2, 4, 2);
    CHECK((Rat(3, 4) * x1 * x1 * x2).to_string() == "3/4*x1^2*x2");
    CHECK((x2 - x1).to_string() == "-x1 + x2");
    CHECK(Jet(2, 3).to_string() == "0");
}

TEST_CASE("rat_rank and rat_det examples")
{
    CHECK(rat_rank(RatMatrix::identity(3)) == 3);
    CHECK(rat_det(RatMatrix::identity(3)) == Rat(1));
    const RatMatrix m{{1, 2}, {2, 4}};
    CHECK(rat_rank(m) == 1);
    CHECK(rat_det(m) == Rat(0));
    CHECK(rat_rank(RatMatrix(0, 0)) == 0);
    CHECK(rat_det(RatMatrix{{Rat(1, 2), Rat(1, 3)}, {Rat(1, 5), Rat(1, 7)}}) == Rat(1, 14) - Rat(1, 15));
}

TEST_CASE("rat_rank agrees with naive elimination; rat_det with Leibniz")
{
    gen::Rng rng(3);
    for (int t = 0; t < 300; ++t) {
        const int rows = rng.uniform(1, 6), cols = rng.uniform(1, 6);
        RatMatrix a = gen::int_matrix(rng, rows, cols, -2, 2);
        if (rng.chance(30) && rows > 1) {
            for (int j = 0; j < cols; ++j) {
                a(rows - 1, j) = a(0, j) * Rat(2) - a(rows / 2, j);
            }
        }
        REQUIRE(rat_rank(a) == naive_rank(a));
        if (rows == cols) {
            std::vector<std::vector<Rat>> g;
            for (int i = 0; i < rows; ++i) {
                g.push_back(a.row(i));
            }
            REQUIRE(rat_det(a) == leibniz<Rat>(g, Rat(0), Rat(1), [](const Rat &p, const Rat &q) { return p * q; }));
        }
    }
}

TEST_CASE("solve, inverse and solve_consistent")
{
    gen::Rng rng(19);
    for (int t = 0; t < 50; ++t) {
        const int n = rng.uniform(1, 5);
        const RatMatrix a = gen::int_matrix(rng, n, n, -3, 3);
        if (rat_det(a).is_zero()) {
            CHECK_THROWS_AS(inverse(a), SingularError);
            continue;
        }
        REQUIRE(a * inverse(a) == RatMatrix::identity(n));
        const RatMatrix b = gen::int_matrix(rng, n, 1, -3, 3);
        const auto xs = solve_consistent(a, b.col(0));
        REQUIRE(xs.has_value());
        RatMatrix xm(n, 1);
        for (int i = 0; i < n; ++i) {
            xm(i, 0) = (*xs)[static_cast<std::size_t>(i)];
        }
        REQUIRE(a * xm == b);
    }
    const RatMatrix a{{1, 1}, {2, 2}};
    CHECK_FALSE(solve_consistent(a, {Rat(1), Rat(3)}).has_value());
    CHECK(solve_consistent(a, {Rat(1), Rat(2)}).has_value());
    CHECK(pivot_rows(RatMatrix{{0, 0}, {1, 0}, {2, 0}, {0, 3}}) == std::vector<int>{1, 3});
}

TEST_CASE("jet_det and maximal minors match the Leibniz oracle")
{
    gen::Rng rng(23);
    for (int t = 0; t < 25; ++t) {
        const int n = rng.uniform(1, 4), nv = rng.uniform(1, 3), ord = rng.uniform(1, 4);
        JetGrid g(static_cast<std::size_t>(n));
        for (auto &row : g) {
            for (int j = 0; j < n; ++j) {
                row.push_back(gen::jet(rng, nv, ord, 30));
            }
        }
        const Jet expect = leibniz<Jet>(g, Jet(nv, ord), c(nv, ord, 1), [](const Jet &p, const Jet &q) { return p * q; });
        REQUIRE(jet_det(g) == expect);

        JetGrid wide(static_cast<std::size_t>(n));
        for (auto &row : wide) {
            for (int j = 0; j <= n; ++j) {
                row.push_back(gen::jet(rng, nv, ord, 30));
            }
        }
        const auto minors = jet_maximal_minors(wide, nv, ord);
        for (int del = 0; del <= n; ++del) {
            JetGrid sq;
            for (const auto &row : wide) {
                std::vector<Jet> r;
                for (int j = 0; j <= n; ++j) {
                    if (j != del) {
                        r.push_back(row[static_cast<std::size_t>(j)]);
                    }
                }
                sq.push_back(r);
            }
            REQUIRE(minors[static_cast<std::size_t>(del)] == jet_det(sq));
        }
    }
}

TEST_CASE("jet_matrix_solve")
{
    const Jet t = x(1, 2, 1);
    const auto x1 = jet_matrix_solve(JetGrid{{c(1, 2, 1) + t}}, {c(1, 2, 1)});
    CHECK(x1[0] == c(1, 2, 1) - t + t * t);

    gen::Rng rng(29);
    const JetGrid id{{c(2, 3, 1), Jet(2, 3)}, {Jet(2, 3), c(2, 3, 1)}};
    const std::vector<Jet> b{gen::jet(rng, 2, 3), gen::jet(rng, 2, 3)};
    CHECK(jet_matrix_solve(id, b) == b);

    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.uniform(1, 3), nv = rng.uniform(1, 3), ord = rng.uniform(0, 4);
        JetGrid a(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                a[static_cast<std::size_t>(i)].push_back(gen::jet(rng, nv, ord, 40, 1) + c(nv, ord, Rat(i == j ? 2 : 0) + Rat(rng.uniform(-1, 1))));
            }
        }
        if (rat_det(constant_part(a)).is_zero()) {
            REQUIRE_THROWS_AS(jet_matrix_solve(a, std::vector<Jet>(static_cast<std::size_t>(n), Jet(nv, ord))), SingularError);
            continue;
        }
        std::vector<Jet> rhs;
        for (int i = 0; i < n; ++i) {
            rhs.push_back(gen::jet(rng, nv, ord));
        }
        const auto sol = jet_matrix_solve(a, rhs);
        for (int i = 0; i < n; ++i) {
            Jet lhs(nv, ord);
            for (int j = 0; j < n; ++j) {
                lhs += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * sol[static_cast<std::size_t>(j)];
            }
            REQUIRE(lhs == rhs[static_cast<std::size_t>(i)]);
        }
    }
}

TEST_CASE("jet_compose examples")
{
    const MapJet f(1, 3, {x(1, 3, 1) * x(1, 3, 1)});
    const MapJet g(1, 3, {x(1, 3, 1) + x(1, 3, 1) * x(1, 3, 1)});
    const Jet t = x(1, 3, 1);
    CHECK(jet_compose(f, g)[0] == t * t + Rat(2) * t * t * t);
    CHECK(jet_compose(f, MapJet::identity(1, 3)) == f);

    const Jet x1 = x(2, 4, 1), x2 = x(2, 4, 2);
    const MapJet h(2, 4, {x1, x1 * x2, x2 * x2});
    const MapJet rot = MapJet::linear(RatMatrix{{-1, 0}, {0, -1}}, 4);
    CHECK(jet_compose(h, rot) == MapJet(2, 4, {-x1, x1 * x2, x2 * x2}));

    CHECK_THROWS_AS(jet_compose(h, MapJet::identity(3, 4)), DimensionError);
    CHECK_THROWS_AS(MapJet(1, 3, {t + c(1, 3, 1)}), GermError);
}

TEST_CASE("jet_compose is associative to the shared order")
{
    gen::Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        const int a = rng.uniform(1, 3), b = rng.uniform(1, 3), d = rng.uniform(1, 3), ord = rng.uniform(1, 4);
        const MapJet f = gen::map_jet(rng, b, d, ord), g = gen::map_jet(rng, a, b, ord), h = gen::map_jet(rng, rng.uniform(1, 3), a, ord);
        REQUIRE(compose(compose(f, g), h) == compose(f, compose(g, h)));
    }
}

TEST_CASE("inverse_diffeo inverts to the truncation order")
{
    gen::Rng rng(37);
    for (int t = 0; t < 20; ++t) {
        const int n = rng.uniform(1, 4), ord = rng.uniform(1, 5);
        MapJet phi = gen::map_jet(rng, n, n, ord);
        std::vector<Jet> comps = phi.components();
        for (int i = 0; i < n; ++i) {
            comps[static_cast<std::size_t>(i)] += x(n, ord, i + 1);
        }
        phi = MapJet(n, ord, comps);
        if (rat_det(phi.jacobian_at_origin()).is_zero()) {
            continue;
        }
        const MapJet psi = inverse_diffeo(phi);
        REQUIRE(compose(phi, psi) == MapJet::identity(n, ord));
        REQUIRE(compose(psi, phi) == MapJet::identity(n, ord));
    }
}
