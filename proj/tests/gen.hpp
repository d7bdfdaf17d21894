#ifndef MORIN_TESTS_GEN_HPP
#define MORIN_TESTS_GEN_HPP

// Hand-rolled random generators for the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include <morin/jet.hpp>
#include <morin/map_jet.hpp>
#include <morin/matrix.hpp>
#include <morin/parse.hpp>

namespace gen
{

using morin::Jet;
using morin::MapJet;
using morin::Monomial;
using morin::Rat;
using morin::RatMatrix;
using morin::ExprPtr;
using morin::GermSource;
using morin::detail::make;
namespace ast = morin::ast;

class Rng
{
public:
    explicit Rng(std::uint64_t seed) : m_eng(seed) {}

    // Uniform in [lo, hi].
    int uniform(int lo, int hi)
    {
        return lo + static_cast<int>(m_eng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool chance(int percent)
    {
        return uniform(0, 99) < percent;
    }
    Rat small_rat()
    {
        return Rat(uniform(-4, 4), uniform(1, 3));
    }
    std::mt19937_64 &engine()
    {
        return m_eng;
    }

private:
    std::mt19937_64 m_eng;
};

// Every exponent vector in nvars variables with total degree in [lo, hi].
inline std::vector<Monomial> monomials(int nvars, int lo, int hi)
{
    std::vector<Monomial> out;
    std::vector<int> e(static_cast<std::size_t>(nvars), 0);
    auto rec = [&](auto &self, int k, int left) -> void {
        if (k == nvars) {
            int d = 0;
            for (int x : e) {
                d += x;
            }
            if (d >= lo) {
                out.emplace_back(std::span<const int>(e));
            }
            return;
        }
        for (int x = 0; x <= left; ++x) {
            e[static_cast<std::size_t>(k)] = x;
            self(self, k + 1, left - x);
        }
        e[static_cast<std::size_t>(k)] = 0;
    };
    rec(rec, 0, hi);
    return out;
}

inline Jet jet(Rng &rng, int nvars, int order, int density = 40, int min_degree = 0)
{
    std::vector<Jet::term_type> terms;
    for (const auto &m : monomials(nvars, min_degree, order)) {
        if (rng.chance(density)) {
            terms.emplace_back(m, rng.small_rat());
        }
    }
    return Jet::from_terms(nvars, order, std::move(terms));
}

inline RatMatrix int_matrix(Rng &rng, int rows, int cols, int lo, int hi)
{
    RatMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = Rat(rng.uniform(lo, hi));
        }
    }
    return m;
}

// A germ jet with zero constant terms.
inline MapJet map_jet(Rng &rng, int m, int n, int order, int density = 30)
{
    std::vector<Jet> c;
    for (int i = 0; i < n; ++i) {
        c.push_back(jet(rng, m, order, density, 1));
    }
    return {m, order, std::move(c)};
}

// Germ of the form (x_1, ..., x_{m-1}, f_m, ..., f_n). About half start
// from a Morin normal form so that higher Morin orders occur; all receive
// sparse random terms of degree >= 2.
inline MapJet random_normal2(Rng &rng, int m, int n, int order)
{
    const int a = n - m;
    std::vector<Jet> c;
    for (int k = 0; k < m - 1; ++k) {
        c.push_back(Jet::variable(m, order, k));
    }
    std::vector<Jet> tail(static_cast<std::size_t>(a + 1), Jet(m, order));
    const int r = rng.uniform(1, 3);
    if (rng.chance(50) && r * (a + 1) <= m && r + 1 <= order) {
        auto x = [&](int k) { return Jet::variable(m, order, k - 1); };
        for (int i = 1; i <= a + 1; ++i) {
            Jet h(m, order);
            for (int j = 1; j <= (i <= a ? r : r - 1); ++j) {
                h += x((i - 1) * r + j) * morin::pow(x(m), j);
            }
            if (i == a + 1) {
                h += morin::pow(x(m), r + 1);
            }
            tail[static_cast<std::size_t>(i - 1)] = h;
        }
    }
    const int density = rng.uniform(0, 2) == 0 ? 0 : 4;
    for (auto &t : tail) {
        t += jet(rng, m, order, density, 2);
        c.push_back(t);
    }
    return {m, order, std::move(c)};
}

inline MapJet random_adapted(Rng &rng, int m, int n, int order)
{
    RatMatrix lin;
    do {
        lin = int_matrix(rng, m - 1, m, -2, 2);
    } while (rank(lin) != m - 1);
    std::vector<Jet> c;
    for (int i = 0; i < m - 1; ++i) {
        Jet ci = jet(rng, m, order, 20, 2);
        for (int k = 0; k < m; ++k) {
            ci += lin(i, k) * Jet::variable(m, order, k);
        }
        c.push_back(ci);
    }
    for (int i = m - 1; i < n; ++i) {
        c.push_back(jet(rng, m, order, 35, 2));
    }
    return {m, order, std::move(c)};
}

// Block-structured target change: d Phi_0 = [[M1, M2], [0, M4]] plus
// random quadratic terms.
inline MapJet block_target(Rng &rng, int m, int n, int order, RatMatrix &m1, RatMatrix &m4)
{
    RatMatrix d(n, n);
    do {
        m1 = int_matrix(rng, m - 1, m - 1, -2, 2);
    } while (det(m1).is_zero());
    do {
        m4 = int_matrix(rng, n - m + 1, n - m + 1, -2, 2);
    } while (det(m4).is_zero());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i < m - 1 && j < m - 1) {
                d(i, j) = m1(i, j);
            } else if (i >= m - 1 && j >= m - 1) {
                d(i, j) = m4(i - m + 1, j - m + 1);
            } else if (i < m - 1) {
                d(i, j) = Rat(rng.uniform(-2, 2));
            }
        }
    }
    const MapJet lin = MapJet::linear(d, order);
    std::vector<Jet> c;
    for (int i = 0; i < n; ++i) {
        c.push_back(lin[i] + jet(rng, n, order, 15, 2));
    }
    return {n, order, std::move(c)};
}

inline ExprPtr random_expr(Rng &rng, int nvars, int depth)
{
    const int pick = depth == 0 ? rng.uniform(0, 1) : rng.uniform(0, 6);
    switch (pick) {
    case 0:
        return make(ast::Num{Rat(rng.uniform(0, 9), rng.uniform(1, 4))});
    case 1:
        return make(ast::Var{rng.uniform(0, nvars - 1)});
    case 2:
        return make(ast::Neg{random_expr(rng, nvars, depth - 1)});
    case 3:
        return make(ast::Add{random_expr(rng, nvars, depth - 1), random_expr(rng, nvars, depth - 1)});
    case 4:
        return make(ast::Sub{random_expr(rng, nvars, depth - 1), random_expr(rng, nvars, depth - 1)});
    case 5:
        return make(ast::Mul{random_expr(rng, nvars, depth - 1), random_expr(rng, nvars, depth - 1)});
    default:
        return make(ast::Pow{random_expr(rng, nvars, depth - 1), rng.uniform(1, 3)});
    }
}

// A random germ source; constant terms are cancelled by an explicit literal.
inline GermSource random_germ(Rng &rng)
{
    GermSource g;
    g.m = rng.uniform(1, 4);
    g.n = rng.uniform(1, 4);
    g.order = rng.uniform(1, 4);
    for (int i = 0; i < g.n; ++i) {
        ExprPtr e = random_expr(rng, g.m, rng.uniform(0, 4));
        const Rat c = morin::eval_expr(*e, g.m, g.order).constant_term();
        if (c.sign() > 0) {
            e = make(ast::Sub{e, make(ast::Num{c})});
        } else if (c.sign() < 0) {
            e = make(ast::Add{e, make(ast::Num{-c})});
        }
        g.exprs.push_back(e);
    }
    return g;
}

} // namespace gen

#endif
