#ifndef MORIN_JET_LINALG_HPP
#define MORIN_JET_LINALG_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include <morin/errors.hpp>
#include <morin/jet.hpp>
#include <morin/matrix.hpp>

namespace morin
{

// Row-major grid of jets sharing one variable count.
template <typename C>
using BasicJetGrid = std::vector<std::vector<BasicJet<C>>>;
using JetGrid = BasicJetGrid<Rat>;

namespace detail
{

// Minors of the first k rows of a k x N jet matrix over every k-subset of
// columns, by Laplace expansion along the last row with memoised column
// subsets. Keys are column bitmasks. Cost is O(2^N * N) jet products.
template <typename C>
std::unordered_map<std::uint32_t, BasicJet<C>> top_minors(const BasicJetGrid<C> &a, int nvars, int order)
{
    const int k = static_cast<int>(a.size());
    const int n = k == 0 ? 0 : static_cast<int>(a.front().size());
    if (n > 16) {
        throw DimensionError("jet minors: at most 16 columns");
    }
    std::unordered_map<std::uint32_t, BasicJet<C>> level{{0u, BasicJet<C>::constant(nvars, order, C(1))}};
    for (int row = 0; row < k; ++row) {
        std::unordered_map<std::uint32_t, BasicJet<C>> next;
        for (const auto &[mask, minor] : level) {
            if (minor.is_zero()) {
                continue;
            }
            for (int c = 0; c < n; ++c) {
                const std::uint32_t bit = 1u << c;
                if (mask & bit) {
                    continue;
                }
                const auto &entry = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
                if (entry.is_zero()) {
                    continue;
                }
                // Column c sits at position p within mask|bit; the new row is
                // the last one, so the cofactor sign is (-1)^(row + p).
                const int p = std::popcount(mask & (bit - 1u));
                auto term = entry * minor;
                if ((row + p) % 2 != 0) {
                    term = -term;
                }
                auto [it, inserted] = next.try_emplace(mask | bit, term);
                if (!inserted) {
                    it->second += term;
                }
            }
        }
        level = std::move(next);
    }
    return level;
}

// top_minors over Rat with every row first scaled by the lcm of its
// denominators, so the expansion runs on integer coefficients; the minors
// are divided by the product of the scales afterwards.
template <typename C>
std::unordered_map<std::uint32_t, BasicJet<C>> integral_minors(const BasicJetGrid<C> &a, int nvars, int order)
{
    if constexpr (!std::is_same_v<C, Rat>) {
        return top_minors(a, nvars, order);
    } else {
        BasicJetGrid<C> scaled(a);
        mpz_class total = 1;
        for (auto &row : scaled) {
            mpz_class l = 1;
            for (const auto &e : row) {
                for (const auto &t : e.terms()) {
                    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.second.denominator().get_mpz_t());
                }
            }
            if (l != 1) {
                const Rat f{mpq_class(l)};
                for (auto &e : row) {
                    e = f * e;
                }
                total *= l;
            }
        }
        auto minors = top_minors(scaled, nvars, order);
        if (total != 1) {
            const Rat inv{mpq_class(1, total)};
            for (auto &kv : minors) {
                kv.second = inv * kv.second;
            }
        }
        return minors;
    }
}

template <typename C>
int grid_order(const BasicJetGrid<C> &a, int fallback)
{
    int ord = fallback;
    for (const auto &r : a) {
        for (const auto &e : r) {
            ord = std::min(ord, e.order());
        }
    }
    return ord;
}

template <typename C>
int grid_vars(const BasicJetGrid<C> &a)
{
    int nv = -1;
    for (const auto &r : a) {
        for (const auto &e : r) {
            if (nv < 0) {
                nv = e.num_vars();
            } else if (nv != e.num_vars()) {
                throw DimensionError("jet grid: entries differ in variable count");
            }
        }
    }
    return nv;
}

} // namespace detail

// Determinant over the jet ring.
template <typename C>
BasicJet<C> jet_det(const BasicJetGrid<C> &a)
{
    const int n = static_cast<int>(a.size());
    for (const auto &r : a) {
        if (static_cast<int>(r.size()) != n) {
            throw DimensionError("jet_det: matrix is not square");
        }
    }
    if (n == 0) {
        throw DimensionError("jet_det: empty matrix has no variable count");
    }
    const int nv = detail::grid_vars(a);
    const int ord = detail::grid_order(a, Monomial::max_degree);
    auto minors = detail::integral_minors(a, nv, ord);
    const std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1u);
    auto it = minors.find(full);
    return it == minors.end() ? BasicJet<C>(nv, ord) : it->second;
}

// For a k x (k+1) jet matrix, the k+1 maximal minors: entry c is the
// determinant with column c deleted.
template <typename C>
std::vector<BasicJet<C>> jet_maximal_minors(const BasicJetGrid<C> &a, int nvars, int order)
{
    const int k = static_cast<int>(a.size());
    const int n = k + 1;
    for (const auto &r : a) {
        if (static_cast<int>(r.size()) != n) {
            throw DimensionError("jet_maximal_minors: expected k x (k+1) matrix");
        }
    }
    auto minors = detail::integral_minors(a, nvars, order);
    std::vector<BasicJet<C>> out;
    const std::uint32_t full = (1u << n) - 1u;
    for (int c = 0; c < n; ++c) {
        auto it = minors.find(full & ~(1u << c));
        out.push_back(it == minors.end() ? BasicJet<C>(nvars, order) : it->second);
    }
    return out;
}

// Values of a jet grid at the origin.
template <typename C>
Matrix<C> constant_part(const BasicJetGrid<C> &a)
{
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a.front().size());
    Matrix<C> m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].constant_term();
        }
    }
    return m;
}

// Solves A x = b over the jet ring, exact to the common truncation order.
//
// Writing A = A0 + N with A0 the constant part, the fixed point
// x = A0^{-1} (b - N x) gains one correct degree per sweep because N has no
// constant term, so order + 1 sweeps from x = 0 are exact.
template <typename C>
std::vector<BasicJet<C>> jet_matrix_solve(const BasicJetGrid<C> &a, const std::vector<BasicJet<C>> &b)
{
    const int n = static_cast<int>(a.size());
    if (static_cast<int>(b.size()) != n) {
        throw DimensionError("jet_matrix_solve: right-hand side has the wrong length");
    }
    for (const auto &r : a) {
        if (static_cast<int>(r.size()) != n) {
            throw DimensionError("jet_matrix_solve: matrix is not square");
        }
    }
    if (n == 0) {
        return {};
    }
    const int nv = detail::grid_vars(a);
    int ord = detail::grid_order(a, Monomial::max_degree);
    for (const auto &e : b) {
        if (e.num_vars() != nv) {
            throw DimensionError("jet_matrix_solve: right-hand side differs in variable count");
        }
        ord = std::min(ord, e.order());
    }
    const Matrix<C> a0 = constant_part(a);
    Matrix<C> a0inv;
    try {
        a0inv = inverse(a0);
    } catch (const SingularError &) {
        throw SingularError("jet_matrix_solve: constant term of the matrix is singular");
    }
    BasicJetGrid<C> nil(a);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            auto &e = nil[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            e = e.truncated(ord) - BasicJet<C>::constant(nv, ord, a0(i, j));
        }
    }
    std::vector<BasicJet<C>> x(static_cast<std::size_t>(n), BasicJet<C>(nv, ord));
    for (int sweep = 0; sweep <= ord; ++sweep) {
        std::vector<BasicJet<C>> rhs;
        rhs.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            auto r = b[static_cast<std::size_t>(i)].truncated(ord);
            for (int j = 0; j < n; ++j) {
                r -= nil[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
            }
            rhs.push_back(std::move(r));
        }
        for (int i = 0; i < n; ++i) {
            BasicJet<C> xi(nv, ord);
            for (int j = 0; j < n; ++j) {
                xi += a0inv(i, j) * rhs[static_cast<std::size_t>(j)];
            }
            x[static_cast<std::size_t>(i)] = std::move(xi);
        }
    }
    return x;
}

} // namespace morin

#endif
