#ifndef MORIN_FORMS_HPP
#define MORIN_FORMS_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <morin/errors.hpp>
#include <morin/jet.hpp>
#include <morin/map_jet.hpp>
#include <morin/matrix.hpp>

namespace morin
{

// Parameters of a Morin normal or isotopy form: r is the Morin order,
// a = n - m, and `extra` counts suspension variables, so that
// m = r(a+1) + extra and n = m + a.
struct FormSpec {
    int r = 1;
    int a = 1;
    int extra = 0;
    int eps1 = 1;
    int eps2 = 1;

    int m() const noexcept
    {
        return r * (a + 1) + extra;
    }
    int n() const noexcept
    {
        return m() + a;
    }
    bool suspension() const noexcept
    {
        return extra > 0;
    }
    int default_order() const noexcept
    {
        return r + 2;
    }

    void validate() const
    {
        if (r < 1) {
            throw DimensionError("FormSpec: r must be at least 1");
        }
        if (a < 1) {
            throw DimensionError("FormSpec: a = n - m must be at least 1");
        }
        if (extra < 0) {
            throw DimensionError("FormSpec: extra must be non-negative");
        }
        if ((eps1 != 1 && eps1 != -1) || (eps2 != 1 && eps2 != -1)) {
            throw DimensionError("FormSpec: eps1 and eps2 must be +1 or -1");
        }
        if (m() > Monomial::max_vars || n() > Monomial::max_vars) {
            throw DimensionError("FormSpec: dimensions exceed 16 variables");
        }
    }

    friend bool operator==(const FormSpec &, const FormSpec &) = default;
};

// h_{r,(eps1,eps2)}: (eps1 x_1, x_2, ..., x_{m-1},
// eps1 x_1 x_m + sum_{j=2}^r x_j x_m^j, h_2, ..., h_a, eps2 h_{a+1}) where
// h_i = sum_{j=1}^r x_{(i-1)r+j} x_m^j and
// h_{a+1} = sum_{j=1}^{r-1} x_{ar+j} x_m^j + x_m^{r+1}.
inline MapJet isotopy_form(const FormSpec &spec, int order)
{
    spec.validate();
    if (order < spec.r + 2) {
        throw TruncationError("isotopy_form: order must be at least r + 2 = " + std::to_string(spec.r + 2),
                              spec.r + 2);
    }
    const int m = spec.m(), r = spec.r, a = spec.a;
    auto x = [&](int k) { return Jet::variable(m, order, k - 1); };
    std::vector<Jet> xm_pow{Jet::constant(m, order, Rat(1))};
    for (int j = 1; j <= r + 1; ++j) {
        xm_pow.push_back(xm_pow.back() * x(m));
    }
    std::vector<Jet> c;
    c.push_back(Rat(spec.eps1) * x(1));
    for (int k = 2; k <= m - 1; ++k) {
        c.push_back(x(k));
    }
    for (int i = 1; i <= a; ++i) {
        Jet h(m, order);
        for (int j = 1; j <= r; ++j) {
            Jet t = x((i - 1) * r + j) * xm_pow[static_cast<std::size_t>(j)];
            if (i == 1 && j == 1) {
                t = Rat(spec.eps1) * t;
            }
            h += t;
        }
        c.push_back(std::move(h));
    }
    Jet last = xm_pow[static_cast<std::size_t>(r + 1)];
    for (int j = 1; j <= r - 1; ++j) {
        last += x(a * r + j) * xm_pow[static_cast<std::size_t>(j)];
    }
    c.push_back(Rat(spec.eps2) * last);
    return {m, order, std::move(c)};
}

inline MapJet isotopy_form(const FormSpec &spec)
{
    return isotopy_form(spec, spec.default_order());
}

// h_{0,r}: the isotopy form with both signs positive.
inline MapJet normal_form(const FormSpec &spec, int order)
{
    FormSpec s = spec;
    s.eps1 = 1;
    s.eps2 = 1;
    return isotopy_form(s, order);
}

inline MapJet normal_form(const FormSpec &spec)
{
    return normal_form(spec, spec.default_order());
}

// Diagonal linear map negating the coordinates in `indices` (1-based).
inline MapJet pi_rotation(int dim, const std::vector<int> &indices, int order)
{
    const std::set<int> s(indices.begin(), indices.end());
    if (s.size() != indices.size()) {
        throw DimensionError("pi_rotation: repeated index");
    }
    if (s.size() % 2 != 0) {
        throw ParityError("pi_rotation: index set has odd size " + std::to_string(s.size()));
    }
    RatMatrix d = RatMatrix::identity(dim);
    for (int k : s) {
        if (k < 1 || k > dim) {
            throw DimensionError("pi_rotation: index " + std::to_string(k) + " outside 1.."
                                 + std::to_string(dim));
        }
        d(k - 1, k - 1) = Rat(-1);
    }
    return MapJet::linear(d, order);
}

// Random diffeomorphism jet: invertible linear part plus sparse terms of
// degree 2..degree. Coefficients are p/q with p in [-3, 3] and q in {1, 2};
// each monomial is present with probability 3/10. When the linear part has
// negative determinant and an orientation-preserving map is requested, the
// first component is negated.
inline MapJet random_diffeo(int dim, int degree, std::uint64_t seed, bool orientation_preserving, int order)
{
    if (degree < 1) {
        throw DimensionError("random_diffeo: degree must be at least 1");
    }
    if (order < 1) {
        throw DimensionError("random_diffeo: order must be at least 1");
    }
    std::mt19937_64 eng(seed);
    std::uniform_int_distribution<int> num(-3, 3), den(1, 2), pct(0, 9);
    auto coeff = [&](bool nonzero) {
        int p = num(eng);
        while (nonzero && p == 0) {
            p = num(eng);
        }
        return Rat(p, den(eng));
    };
    RatMatrix lin(dim, dim);
    do {
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                lin(i, j) = coeff(false);
            }
        }
    } while (det(lin).is_zero());
    const bool flip = orientation_preserving && det(lin).sign() < 0;

    // Monomials of degree 2..degree, enumerated in a fixed order.
    std::vector<Monomial> monos;
    std::vector<int> e(static_cast<std::size_t>(dim), 0);
    auto rec = [&](auto &self, int k, int left) -> void {
        if (k == dim) {
            int d = 0;
            for (int v : e) {
                d += v;
            }
            if (d >= 2) {
                monos.emplace_back(std::span<const int>(e));
            }
            return;
        }
        for (int v = 0; v <= left; ++v) {
            e[static_cast<std::size_t>(k)] = v;
            self(self, k + 1, left - v);
        }
        e[static_cast<std::size_t>(k)] = 0;
    };
    rec(rec, 0, std::min(degree, order));

    std::vector<Jet> comps;
    for (int i = 0; i < dim; ++i) {
        std::vector<Jet::term_type> terms;
        for (int k = 0; k < dim; ++k) {
            terms.emplace_back(Monomial::variable(k), lin(i, k));
        }
        for (const auto &mono : monos) {
            if (pct(eng) < 3) {
                terms.emplace_back(mono, coeff(true));
            }
        }
        Jet c = Jet::from_terms(dim, order, std::move(terms));
        comps.push_back(flip && i == 0 ? -c : c);
    }
    return {dim, order, std::move(comps)};
}

inline MapJet random_diffeo(int dim, int degree, std::uint64_t seed, bool orientation_preserving = true)
{
    return random_diffeo(dim, degree, seed, orientation_preserving, degree);
}

// Phi o f o phi.
inline MapJet conjugate(const MapJet &f, const MapJet &phi, const MapJet &big_phi)
{
    if (phi.target_dim() != f.source_dim() || phi.source_dim() != f.source_dim()) {
        throw DimensionError("conjugate: source diffeomorphism has the wrong dimension");
    }
    if (big_phi.source_dim() != f.target_dim() || big_phi.target_dim() != f.target_dim()) {
        throw DimensionError("conjugate: target diffeomorphism has the wrong dimension");
    }
    return compose(big_phi, compose(f, phi));
}

} // namespace morin

#endif
