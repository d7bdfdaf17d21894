#ifndef MORIN_MAP_JET_HPP
#define MORIN_MAP_JET_HPP

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <morin/errors.hpp>
#include <morin/jet.hpp>
#include <morin/jet_linalg.hpp>
#include <morin/matrix.hpp>

namespace morin
{

// Jet of a map-germ (R^m, 0) -> (R^n, 0): n component jets in m variables
// sharing one truncation order, each vanishing at the origin.
class MapJet
{
public:
    MapJet() = default;
    MapJet(int source_dim, int order, std::vector<Jet> components)
        : m_source(source_dim), m_order(order), m_comps(std::move(components))
    {
        for (std::size_t i = 0; i < m_comps.size(); ++i) {
            const auto &c = m_comps[i];
            if (c.num_vars() != source_dim) {
                throw DimensionError("MapJet: component " + std::to_string(i + 1) + " has "
                                     + std::to_string(c.num_vars()) + " variables, expected "
                                     + std::to_string(source_dim));
            }
            if (c.order() != order) {
                if (c.order() < order) {
                    throw DimensionError("MapJet: component " + std::to_string(i + 1)
                                         + " is truncated below the map order");
                }
                m_comps[i] = c.truncated(order);
            }
            if (!m_comps[i].constant_term().is_zero()) {
                throw GermError("MapJet: component " + std::to_string(i + 1) + " has nonzero constant term",
                                static_cast<int>(i + 1));
            }
        }
    }

    static MapJet identity(int dim, int order)
    {
        std::vector<Jet> c;
        for (int k = 0; k < dim; ++k) {
            c.push_back(Jet::variable(dim, order, k));
        }
        return {dim, order, std::move(c)};
    }

    // x -> A x.
    static MapJet linear(const RatMatrix &a, int order)
    {
        std::vector<Jet> c;
        for (int i = 0; i < a.rows(); ++i) {
            Jet ci(a.cols(), order);
            for (int k = 0; k < a.cols(); ++k) {
                ci += a(i, k) * Jet::variable(a.cols(), order, k);
            }
            c.push_back(std::move(ci));
        }
        return {a.cols(), order, std::move(c)};
    }

    int source_dim() const noexcept
    {
        return m_source;
    }
    int target_dim() const noexcept
    {
        return static_cast<int>(m_comps.size());
    }
    int order() const noexcept
    {
        return m_order;
    }
    const std::vector<Jet> &components() const noexcept
    {
        return m_comps;
    }
    const Jet &operator[](int i) const
    {
        return m_comps.at(static_cast<std::size_t>(i));
    }

    MapJet truncated(int order) const
    {
        std::vector<Jet> c;
        for (const auto &j : m_comps) {
            c.push_back(j.truncated(order));
        }
        return {m_source, order, std::move(c)};
    }

    // n x m matrix of first-order coefficients.
    RatMatrix jacobian_at_origin() const
    {
        RatMatrix d(target_dim(), m_source);
        for (int i = 0; i < target_dim(); ++i) {
            for (int k = 0; k < m_source; ++k) {
                d(i, k) = m_comps[static_cast<std::size_t>(i)].linear_coeff(k);
            }
        }
        return d;
    }

    // Jacobian as a grid of jets (order drops by one).
    JetGrid jacobian() const
    {
        JetGrid g;
        for (const auto &c : m_comps) {
            std::vector<Jet> row;
            for (int k = 0; k < m_source; ++k) {
                row.push_back(c.derive(k));
            }
            g.push_back(std::move(row));
        }
        return g;
    }

    friend bool operator==(const MapJet &, const MapJet &) = default;

private:
    int m_source = 0;
    int m_order = 0;
    std::vector<Jet> m_comps;
};

// Substitutes the components of g for the variables of each jet in fs.
// g must have zero constant terms, so every monomial of degree d in the
// substituted jet contributes only at degree >= d and products are truncated
// eagerly. Powers are memoised across all of fs.
inline std::vector<Jet> substitute(const std::vector<Jet> &fs, const MapJet &g)
{
    const int ord = g.order();
    const int nv = g.source_dim();
    std::unordered_map<Monomial, Jet, MonomialHash> powers;
    powers.emplace(Monomial{}, Jet::constant(nv, ord, Rat(1)));
    auto power = [&](auto &self, const Monomial &m) -> const Jet & {
        if (auto it = powers.find(m); it != powers.end()) {
            return it->second;
        }
        const int k = m.last_variable();
        Monomial rest = m;
        rest.set(k, m[k] - 1);
        Jet p = self(self, rest) * g[k];
        return powers.emplace(m, std::move(p)).first->second;
    };
    std::vector<Jet> out;
    out.reserve(fs.size());
    for (const auto &f : fs) {
        if (f.num_vars() != g.target_dim()) {
            throw DimensionError("compose: inner map targets " + std::to_string(g.target_dim())
                                 + " dimensions but the outer jet has " + std::to_string(f.num_vars())
                                 + " variables");
        }
        const int o = std::min(ord, f.order());
        Jet r(nv, o);
        for (const auto &[m, c] : f.terms()) {
            if (m.degree() > o) {
                break;
            }
            r += c * power(power, m).truncated(o);
        }
        out.push_back(std::move(r));
    }
    return out;
}

// f o g, truncated to the smaller of the two orders.
inline MapJet compose(const MapJet &f, const MapJet &g)
{
    if (f.source_dim() != g.target_dim()) {
        throw DimensionError("compose: dimension mismatch");
    }
    const int ord = std::min(f.order(), g.order());
    return {g.source_dim(), ord, substitute(f.components(), g.truncated(ord))};
}

inline MapJet jet_compose(const MapJet &f, const MapJet &g)
{
    return compose(f, g);
}

// Truncated inverse of a diffeomorphism jet: the unique psi with
// phi o psi = id to the order of phi. Writing phi = L + N with L linear,
// psi = L^{-1}(id - N o psi) gains one degree per sweep.
inline MapJet inverse_diffeo(const MapJet &phi)
{
    const int n = phi.source_dim();
    if (phi.target_dim() != n) {
        throw DimensionError("inverse_diffeo: map is not square");
    }
    const int ord = phi.order();
    const RatMatrix lin = phi.jacobian_at_origin();
    RatMatrix linv;
    try {
        linv = inverse(lin);
    } catch (const SingularError &) {
        throw SingularError("inverse_diffeo: linear part is singular");
    }
    std::vector<Jet> nonlinear;
    const auto linear_part = MapJet::linear(lin, ord);
    for (int i = 0; i < n; ++i) {
        nonlinear.push_back(phi[i] - linear_part[i]);
    }
    MapJet psi = MapJet::linear(linv, ord);
    const MapJet id = MapJet::identity(n, ord);
    for (int sweep = 1; sweep < ord; ++sweep) {
        const auto np = substitute(nonlinear, psi);
        std::vector<Jet> rhs;
        for (int i = 0; i < n; ++i) {
            rhs.push_back(id[i] - np[static_cast<std::size_t>(i)]);
        }
        std::vector<Jet> next;
        for (int i = 0; i < n; ++i) {
            Jet c(n, ord);
            for (int k = 0; k < n; ++k) {
                c += linv(i, k) * rhs[static_cast<std::size_t>(k)];
            }
            next.push_back(std::move(c));
        }
        psi = MapJet(n, ord, std::move(next));
    }
    return psi;
}

} // namespace morin

#endif
