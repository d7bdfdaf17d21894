#ifndef MORIN_GERM_HPP
#define MORIN_GERM_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include <morin/errors.hpp>
#include <morin/jet.hpp>
#include <morin/jet_linalg.hpp>
#include <morin/map_jet.hpp>
#include <morin/matrix.hpp>

namespace morin
{

// A corank-one germ in adapted target coordinates together with its lambda
// vector and null vector field.
//
// Gauge: target_change T has det T = +1 and acts as the identity on the
// pivot coordinates, so the block carrying (f_1, ..., f_{m-1}) is
// orientation-preserving. The null field is the cofactor field of
// d(f_1, ..., f_{m-1}) multiplied by eta_sign, the sign that makes
// (e_{c_1}, ..., e_{c_{m-1}}, eta(0)) a positive frame for the pivot source
// columns c of d(f_1, ..., f_{m-1})_0. Lambda is the plain determinant and
// carries no such sign.
struct LambdaData {
    MapJet adapted;
    RatMatrix target_change;
    std::vector<int> pivot_targets; // 0-based rows of df_0 mapped to adapted 1..m-1
    std::vector<int> pivot_sources; // 0-based pivot columns of d(f_1..f_{m-1})_0
    int eta_sign = 1;
    std::vector<Jet> lambda;
    std::vector<Jet> eta;

    int m() const noexcept
    {
        return adapted.source_dim();
    }
    int n() const noexcept
    {
        return adapted.target_dim();
    }
};

struct SingularChainReport {
    // eta_lambda_values[j] = eta^j Lambda (0), j = 0..r_max.
    std::vector<std::vector<Rat>> eta_lambda_values;
    // chain_ranks[j] = rank d(Lambda, eta Lambda, ..., eta^j Lambda)_0.
    std::vector<int> chain_ranks;
    // differentials[j] is the (n-m+1) x m matrix d(eta^j Lambda)_0.
    std::vector<RatMatrix> differentials;

    friend bool operator==(const SingularChainReport &, const SingularChainReport &) = default;
};

inline int corank_at_origin(const MapJet &f)
{
    return f.source_dim() - rank(f.jacobian_at_origin());
}

namespace detail
{

// Cofactor field of the (m-1) x m Jacobian of the first m-1 components:
// entry k is (-1)^(m+k) times the minor with column k deleted (1-based).
inline std::vector<Jet> cofactor_field(const MapJet &f)
{
    const int m = f.source_dim();
    JetGrid jac = f.jacobian();
    jac.resize(static_cast<std::size_t>(m - 1));
    const int ord = std::max(f.order() - 1, 0);
    auto minors = jet_maximal_minors(jac, m, ord);
    for (int k = 1; k <= m; ++k) {
        if ((m + k) % 2 != 0) {
            minors[static_cast<std::size_t>(k - 1)] = -minors[static_cast<std::size_t>(k - 1)];
        }
    }
    return minors;
}

inline Jet directional(const std::vector<Jet> &field, const Jet &g)
{
    const int m = static_cast<int>(field.size());
    if (g.num_vars() != m) {
        throw DimensionError("directional derivative: function has " + std::to_string(g.num_vars())
                             + " variables, field has " + std::to_string(m) + " components");
    }
    const int ord = std::max(std::min(g.order() - 1, field.empty() ? 0 : field.front().order()), 0);
    Jet out(m, ord);
    for (int k = 0; k < m; ++k) {
        out += field[static_cast<std::size_t>(k)] * g.derive(k);
    }
    return out;
}

} // namespace detail

// Target linear change bringing f into the form where the first m-1
// components have independent differentials at 0 and the rest vanish to
// first order. Pivot targets are the first independent rows of df_0 in
// target order; every other target subtracts its unique combination of the
// pivots. When placing the pivots first is an odd permutation, the last
// adapted component is negated so that det T = +1.
inline LambdaData adapt_target(const MapJet &f)
{
    const int m = f.source_dim(), n = f.target_dim();
    if (m >= n) {
        throw DimensionError("adapt_target: requires m < n, got m = " + std::to_string(m) + ", n = "
                             + std::to_string(n));
    }
    const RatMatrix df0 = f.jacobian_at_origin();
    const auto piv = pivot_rows(df0);
    const int corank = m - static_cast<int>(piv.size());
    if (corank != 1) {
        throw NotCorankOneError("adapt_target: corank at the origin is " + std::to_string(corank), corank);
    }
    std::vector<int> order(piv);
    for (int i = 0; i < n; ++i) {
        if (std::find(piv.begin(), piv.end(), i) == piv.end()) {
            order.push_back(i);
        }
    }
    // Sign of the permutation i -> order[i], by counting inversions.
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            inversions += order[static_cast<std::size_t>(i)] > order[static_cast<std::size_t>(j)];
        }
    }
    RatMatrix pivot_block(m, m - 1);
    for (int k = 0; k < m - 1; ++k) {
        for (int s = 0; s < m; ++s) {
            pivot_block(s, k) = df0(piv[static_cast<std::size_t>(k)], s);
        }
    }
    RatMatrix t(n, n);
    for (int row = 0; row < n; ++row) {
        const int src = order[static_cast<std::size_t>(row)];
        t(row, src) = Rat(1);
        if (row >= m - 1) {
            const auto coef = solve_consistent(pivot_block, df0.row(src));
            if (!coef) {
                throw std::logic_error("adapt_target: non-pivot row outside the pivot span");
            }
            for (int k = 0; k < m - 1; ++k) {
                t(row, piv[static_cast<std::size_t>(k)]) -= (*coef)[static_cast<std::size_t>(k)];
            }
        }
    }
    if (inversions % 2 != 0) {
        for (int j = 0; j < n; ++j) {
            t(n - 1, j) = -t(n - 1, j);
        }
    }
    LambdaData ld;
    ld.adapted = compose(MapJet::linear(t, f.order()), f);
    ld.target_change = std::move(t);
    ld.pivot_targets = piv;
    if (m > 1) {
        RatMatrix top(m - 1, m);
        for (int i = 0; i < m - 1; ++i) {
            for (int s = 0; s < m; ++s) {
                top(i, s) = ld.adapted[i].linear_coeff(s);
            }
        }
        ld.pivot_sources = pivot_columns(top);
    }
    const auto cof = detail::cofactor_field(ld.adapted);
    RatMatrix frame(m, m);
    for (int k = 0; k < m - 1; ++k) {
        frame(ld.pivot_sources[static_cast<std::size_t>(k)], k) = Rat(1);
    }
    for (int s = 0; s < m; ++s) {
        frame(s, m - 1) = cof[static_cast<std::size_t>(s)].constant_term();
    }
    const int sgn = det(frame).sign();
    if (sgn == 0) {
        throw std::logic_error("adapt_target: cofactor field vanishes at the origin");
    }
    ld.eta_sign = sgn;
    for (int i = m - 1; i < n; ++i) {
        ld.lambda.push_back(detail::directional(cof, ld.adapted[i]));
    }
    for (const auto &e : cof) {
        ld.eta.push_back(sgn > 0 ? e : -e);
    }
    return ld;
}

// lambda_i = det(df_1, ..., df_{m-1}, df_{m-1+i}) of the adapted germ,
// recomputed from scratch as full m x m jet determinants.
inline std::vector<Jet> lambda_vector(const LambdaData &ld)
{
    const int m = ld.m(), n = ld.n();
    if (ld.adapted.order() < 1) {
        throw TruncationError("lambda_vector: truncation order must be at least 1", 1);
    }
    const JetGrid jac = ld.adapted.jacobian();
    std::vector<Jet> out;
    for (int i = m - 1; i < n; ++i) {
        JetGrid g(jac.begin(), jac.begin() + (m - 1));
        g.push_back(jac[static_cast<std::size_t>(i)]);
        out.push_back(jet_det(g));
    }
    return out;
}

// The gauge-fixed null vector field, recomputed from the adapted germ.
inline std::vector<Jet> null_field(const LambdaData &ld)
{
    auto cof = detail::cofactor_field(ld.adapted);
    if (ld.eta_sign < 0) {
        for (auto &e : cof) {
            e = -e;
        }
    }
    return cof;
}

// (eta g)_i = sum_k eta_k d g_i / d x_k.
inline std::vector<Jet> eta_derive(const LambdaData &ld, const std::vector<Jet> &g)
{
    std::vector<Jet> out;
    out.reserve(g.size());
    for (const auto &gi : g) {
        out.push_back(detail::directional(ld.eta, gi));
    }
    return out;
}

inline RatMatrix differential_at_origin(const std::vector<Jet> &g, int m)
{
    RatMatrix d(static_cast<int>(g.size()), m);
    for (int i = 0; i < d.rows(); ++i) {
        for (int k = 0; k < m; ++k) {
            d(i, k) = g[static_cast<std::size_t>(i)].linear_coeff(k);
        }
    }
    return d;
}

// eta^j Lambda (0) and the ranks of the stacked differentials for
// j = 0..r_max. Requires order >= r_max + 2: eta^j Lambda is exact to order
// d - 1 - j, and its differential needs order at least one.
inline SingularChainReport singular_chain(const LambdaData &ld, int r_max)
{
    if (r_max < 0) {
        throw DimensionError("singular_chain: r_max must be non-negative");
    }
    const int required = r_max + 2;
    if (ld.adapted.order() < required) {
        throw TruncationError("singular_chain: order " + std::to_string(ld.adapted.order())
                                  + " is below the required " + std::to_string(required),
                              required);
    }
    const int m = ld.m();
    SingularChainReport rep;
    std::vector<Jet> g = ld.lambda;
    RatMatrix stacked(0, m);
    for (int j = 0; j <= r_max; ++j) {
        std::vector<Rat> vals;
        for (const auto &gi : g) {
            vals.push_back(gi.constant_term());
        }
        rep.eta_lambda_values.push_back(std::move(vals));
        const RatMatrix d = differential_at_origin(g, m);
        stacked = vstack(stacked, d);
        rep.chain_ranks.push_back(rank(stacked));
        rep.differentials.push_back(d);
        if (j < r_max) {
            g = eta_derive(ld, g);
        }
    }
    return rep;
}

} // namespace morin

#endif
