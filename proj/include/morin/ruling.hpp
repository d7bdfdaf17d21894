#ifndef MORIN_RULING_HPP
#define MORIN_RULING_HPP

// One-parameter families of n-planes in R^{2n}: the ruling map
// F(t, u) = gamma(t) + sum u_i delta_i(t), its striction curve, and the
// 1-Morin criterion at t = 0.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <morin/classify.hpp>
#include <morin/errors.hpp>
#include <morin/germ.hpp>
#include <morin/jet.hpp>
#include <morin/jet_linalg.hpp>
#include <morin/map_jet.hpp>
#include <morin/matrix.hpp>

namespace morin
{

// Curves are jets in the single variable t.
struct FramedCurve {
    int n = 0;
    int order = 0;
    std::vector<Jet> gamma;              // 2n entries
    std::vector<std::vector<Jet>> delta; // n vectors of 2n entries

    // Throws FrameError naming the first identity that fails.
    void validate() const
    {
        if (n < 2) {
            throw DimensionError("FramedCurve: n must be at least 2 so that n + 1 < 2n");
        }
        if (order < 2) {
            throw TruncationError("FramedCurve: order must be at least 2", 2);
        }
        auto check_vec = [&](const std::vector<Jet> &v, const std::string &what) {
            if (static_cast<int>(v.size()) != 2 * n) {
                throw DimensionError("FramedCurve: " + what + " must have " + std::to_string(2 * n) + " entries");
            }
            for (const auto &e : v) {
                if (e.num_vars() != 1) {
                    throw DimensionError("FramedCurve: " + what + " must be a jet in t only");
                }
                if (e.order() < order) {
                    throw TruncationError("FramedCurve: " + what + " is truncated below the curve order", order);
                }
            }
        };
        check_vec(gamma, "gamma");
        if (static_cast<int>(delta.size()) != n) {
            throw DimensionError("FramedCurve: expected " + std::to_string(n) + " director vectors");
        }
        for (int i = 0; i < n; ++i) {
            check_vec(delta[static_cast<std::size_t>(i)], "delta" + std::to_string(i + 1));
        }
        const auto d = cut();
        std::vector<std::vector<Jet>> dp;
        for (const auto &v : d) {
            dp.push_back(derivative(v));
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const auto &di = d[static_cast<std::size_t>(i)];
                const Jet expect = Jet::constant(1, order, Rat(i == j ? 1 : 0));
                if (!equal_to_order(dot(di, d[static_cast<std::size_t>(j)]), expect, order)) {
                    throw FrameError("FramedCurve: delta" + std::to_string(i + 1) + " . delta" + std::to_string(j + 1)
                                     + " != " + (i == j ? "1" : "0") + " up to order " + std::to_string(order));
                }
                if (!equal_to_order(dot(di, dp[static_cast<std::size_t>(j)]), Jet(1, order - 1), order - 1)) {
                    throw FrameError("FramedCurve: delta" + std::to_string(i + 1) + " . delta" + std::to_string(j + 1)
                                     + "' != 0 up to order " + std::to_string(order - 1));
                }
            }
        }
        RatMatrix base(2 * n, 2 * n);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < 2 * n; ++k) {
                base(k, i) = d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].constant_term();
                base(k, n + i) = dp[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].constant_term();
            }
        }
        if (det(base).is_zero()) {
            throw FrameError("FramedCurve: (delta, delta')(0) is not a basis of R^" + std::to_string(2 * n));
        }
    }

    // Frame vectors truncated to the curve order.
    std::vector<std::vector<Jet>> cut() const
    {
        std::vector<std::vector<Jet>> out;
        for (const auto &v : delta) {
            std::vector<Jet> w;
            for (const auto &e : v) {
                w.push_back(e.truncated(order));
            }
            out.push_back(std::move(w));
        }
        return out;
    }

    static std::vector<Jet> derivative(const std::vector<Jet> &v)
    {
        std::vector<Jet> out;
        for (const auto &e : v) {
            out.push_back(e.derive(0));
        }
        return out;
    }

    static Jet dot(const std::vector<Jet> &a, const std::vector<Jet> &b)
    {
        int ord = Monomial::max_degree;
        for (const auto &e : a) {
            ord = std::min(ord, e.order());
        }
        for (const auto &e : b) {
            ord = std::min(ord, e.order());
        }
        Jet s(1, ord);
        for (std::size_t k = 0; k < a.size(); ++k) {
            s += a[k] * b[k];
        }
        return s;
    }
};

struct StrictionResult {
    std::vector<Jet> u;     // n jets in t
    std::vector<Jet> sigma; // 2n jets in t
    std::vector<Jet> alpha; // sigma' = sum alpha_i delta_i
    bool morin1_at_origin = false;
};

namespace detail
{

// A jet in t viewed as a jet in (t, u_1, ..., u_n).
inline Jet lift_t(const Jet &c, int nvars, int order)
{
    std::vector<Jet::term_type> terms;
    for (const auto &[mono, coef] : c.terms()) {
        if (mono.degree() > order) {
            break;
        }
        std::vector<int> e(static_cast<std::size_t>(nvars), 0);
        e[0] = mono[0];
        terms.emplace_back(Monomial(std::span<const int>(e)), coef);
    }
    return Jet::from_terms(nvars, order, std::move(terms));
}

inline int vec_order(const std::vector<Jet> &v)
{
    int ord = Monomial::max_degree;
    for (const auto &e : v) {
        ord = std::min(ord, e.order());
    }
    return ord;
}

// F(t, u) - gamma(0) at the common order of gamma and delta.
inline MapJet ruling_jet(const std::vector<Jet> &gamma, const std::vector<std::vector<Jet>> &delta)
{
    const int n = static_cast<int>(delta.size());
    int ord = vec_order(gamma);
    for (const auto &v : delta) {
        ord = std::min(ord, vec_order(v));
    }
    std::vector<Jet> comps;
    for (int k = 0; k < 2 * n; ++k) {
        const Jet &g = gamma[static_cast<std::size_t>(k)];
        Jet c = lift_t(g - Jet::constant(1, g.order(), g.constant_term()), n + 1, ord);
        for (int i = 0; i < n; ++i) {
            c += Jet::variable(n + 1, ord, i + 1)
                 * lift_t(delta[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], n + 1, ord);
        }
        comps.push_back(std::move(c));
    }
    return {n + 1, ord, std::move(comps)};
}

} // namespace detail

// The germ of F at (t, u) = 0 in variables (t, u_1, ..., u_n), translated by
// -gamma(0) so that it is based at the origin.
inline MapJet ruling_map(const FramedCurve &fc)
{
    fc.validate();
    std::vector<Jet> g;
    for (const auto &e : fc.gamma) {
        g.push_back(e.truncated(fc.order));
    }
    return detail::ruling_jet(g, fc.cut());
}

inline StrictionResult striction(const FramedCurve &fc)
{
    fc.validate();
    const int n = fc.n;
    const auto d = fc.cut();
    std::vector<std::vector<Jet>> dp;
    for (const auto &v : d) {
        dp.push_back(FramedCurve::derivative(v));
    }
    std::vector<Jet> gamma;
    for (const auto &e : fc.gamma) {
        gamma.push_back(e.truncated(fc.order));
    }
    const auto gp = FramedCurve::derivative(gamma);
    JetGrid gram(static_cast<std::size_t>(n));
    std::vector<Jet> rhs;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            gram[static_cast<std::size_t>(i)].push_back(
                FramedCurve::dot(dp[static_cast<std::size_t>(i)], dp[static_cast<std::size_t>(j)]));
        }
        rhs.push_back(-FramedCurve::dot(gp, dp[static_cast<std::size_t>(i)]));
    }
    StrictionResult res;
    try {
        res.u = jet_matrix_solve(gram, rhs);
    } catch (const SingularError &) {
        throw FrameError("striction: Gram matrix of delta' is singular at t = 0");
    }
    const int ord = detail::vec_order(res.u);
    for (int k = 0; k < 2 * n; ++k) {
        Jet s = gamma[static_cast<std::size_t>(k)].truncated(ord);
        for (int i = 0; i < n; ++i) {
            s += res.u[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        }
        res.sigma.push_back(std::move(s));
    }
    const auto sp = FramedCurve::derivative(res.sigma);
    bool nonzero = false;
    for (int i = 0; i < n; ++i) {
        res.alpha.push_back(FramedCurve::dot(sp, d[static_cast<std::size_t>(i)]));
        nonzero = nonzero || !res.alpha.back().constant_term().is_zero();
    }
    res.morin1_at_origin = nonzero;
    return res;
}

// Ruling map of (sigma, delta); its singular set is {u = 0}.
inline MapJet striction_ruling_map(const FramedCurve &fc, const StrictionResult &s)
{
    return detail::ruling_jet(s.sigma, fc.cut());
}

struct RulingCheck {
    bool classifier_morin1 = false;
    bool alpha_nonzero = false;
    Verdict verdict;
    std::vector<Rat> eta_lambda;  // eta lambda_j(0)
    std::vector<Rat> alpha_delta; // (-1)^{n+j-1} alpha_j(0) Delta(0)
    Rat delta0;                   // Delta(0) = det(delta, delta')(0)

    bool agree() const noexcept
    {
        return classifier_morin1 == alpha_nonzero;
    }
    bool identity_holds() const
    {
        return eta_lambda == alpha_delta;
    }
};

// lambda_j = det(F_t, delta, delta' without delta_j') on the ruling map of
// (sigma, delta), in variables (t, u).
inline std::vector<Jet> ruling_lambda(const FramedCurve &fc, const StrictionResult &s)
{
    const int n = fc.n, nv = n + 1;
    const auto d = fc.cut();
    std::vector<std::vector<Jet>> dp;
    for (const auto &v : d) {
        dp.push_back(FramedCurve::derivative(v));
    }
    const auto sp = FramedCurve::derivative(s.sigma);
    const int ord = std::min(detail::vec_order(sp), detail::vec_order(dp.front()));
    std::vector<Jet> ft;
    for (int k = 0; k < 2 * n; ++k) {
        Jet c = detail::lift_t(sp[static_cast<std::size_t>(k)], nv, ord);
        for (int i = 0; i < n; ++i) {
            c += Jet::variable(nv, ord, i + 1)
                 * detail::lift_t(dp[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], nv, ord);
        }
        ft.push_back(std::move(c));
    }
    std::vector<Jet> out;
    for (int j = 0; j < n; ++j) {
        // Columns after F_t: delta_1..delta_n, delta'_i for i != j.
        std::vector<std::vector<Jet>> cols;
        for (const auto &v : d) {
            cols.push_back(v);
        }
        for (int i = 0; i < n; ++i) {
            if (i != j) {
                cols.push_back(dp[static_cast<std::size_t>(i)]);
            }
        }
        JetGrid grid(static_cast<std::size_t>(2 * n));
        for (int k = 0; k < 2 * n; ++k) {
            grid[static_cast<std::size_t>(k)].push_back(ft[static_cast<std::size_t>(k)]);
            for (const auto &c : cols) {
                grid[static_cast<std::size_t>(k)].push_back(detail::lift_t(c[static_cast<std::size_t>(k)], nv, ord));
            }
        }
        out.push_back(jet_det(grid));
    }
    return out;
}

// Both 1-Morin characterizations at t = 0 together with the determinant
// identity eta lambda_j(0) = (-1)^{n+j-1} alpha_j(0) Delta(0), where
// eta = -d/dt + sum alpha_i d/du_i.
inline RulingCheck ruling_morin1_check(const FramedCurve &fc)
{
    const StrictionResult s = striction(fc);
    const int n = fc.n;
    RulingCheck out;
    out.alpha_nonzero = s.morin1_at_origin;
    const MapJet f = striction_ruling_map(fc, s);
    if (f.order() < 3) {
        throw TruncationError("ruling_morin1_check: curve order too low for the classifier", fc.order + 1);
    }
    const MorinResult res = morin_classify(f, 1);
    out.verdict = res.verdict;
    out.classifier_morin1 = res.is_morin(1);

    const auto lambda = ruling_lambda(fc, s);
    const int nv = n + 1;
    for (int j = 0; j < n; ++j) {
        const Jet &l = lambda[static_cast<std::size_t>(j)];
        Jet e = -l.derive(0);
        for (int i = 0; i < n; ++i) {
            e += detail::lift_t(s.alpha[static_cast<std::size_t>(i)], nv, std::min(l.order(), s.alpha[0].order()))
                 * l.derive(i + 1);
        }
        out.eta_lambda.push_back(e.constant_term());
    }
    const auto d = fc.cut();
    RatMatrix base(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        const auto dp = FramedCurve::derivative(d[static_cast<std::size_t>(i)]);
        for (int k = 0; k < 2 * n; ++k) {
            base(k, i) = d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].constant_term();
            base(k, n + i) = dp[static_cast<std::size_t>(k)].constant_term();
        }
    }
    out.delta0 = det(base);
    for (int j = 1; j <= n; ++j) {
        const Rat sign((n + j - 1) % 2 == 0 ? 1 : -1);
        out.alpha_delta.push_back(sign * s.alpha[static_cast<std::size_t>(j - 1)].constant_term() * out.delta0);
    }
    return out;
}

// Taylor truncations of cos t and sin t.
inline Jet cos_jet(int order)
{
    std::vector<Jet::term_type> terms;
    Rat f(1);
    for (int k = 0; k <= order; ++k) {
        if (k > 0) {
            f = f / Rat(k);
        }
        if (k % 2 == 0) {
            terms.emplace_back(Monomial{k}, (k / 2) % 2 == 0 ? f : -f);
        }
    }
    return Jet::from_terms(1, order, std::move(terms));
}

inline Jet sin_jet(int order)
{
    std::vector<Jet::term_type> terms;
    Rat f(1);
    for (int k = 1; k <= order; ++k) {
        f = f / Rat(k);
        if (k % 2 != 0) {
            terms.emplace_back(Monomial{k}, (k / 2) % 2 == 0 ? f : -f);
        }
    }
    return Jet::from_terms(1, order, std::move(terms));
}

// n = 2 frame delta_1 = (cos t, sin t, 0, 0), delta_2 = (0, 0, cos t, sin t)
// with gamma' = delta_1 and gamma(0) = 0.
inline FramedCurve rotation_frame(int order)
{
    const Jet z(1, order), c = cos_jet(order), s = sin_jet(order);
    FramedCurve fc;
    fc.n = 2;
    fc.order = order;
    fc.delta = {{c, s, z, z}, {z, z, c, s}};
    fc.gamma = {s, Jet::constant(1, order, Rat(1)) - c, z, z};
    return fc;
}

inline Jet integrate_t(const Jet &a, int order)
{
    std::vector<Jet::term_type> terms;
    for (const auto &[mono, coef] : a.terms()) {
        const int k = mono[0];
        if (k + 1 > order) {
            break;
        }
        terms.emplace_back(Monomial{k + 1}, coef / Rat(k + 1));
    }
    return Jet::from_terms(1, order, std::move(terms));
}

inline RatMatrix lower_left(const RatMatrix &k, int n)
{
    RatMatrix b(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            b(i, j) = k(n + i, j);
        }
    }
    return b;
}

// A random exact frame with delta = first n columns of Q, Q' = Q K, where
// K is skew with a vanishing upper-left n x n block and Q(0) a Cayley
// transform. gamma = int sum alpha_i delta_i + sum c_i delta_i with constant
// c, so the striction coefficients are u = -c. With alpha_vanishes the
// constant terms of alpha are zero.
inline FramedCurve random_framed_curve(int n, int order, std::uint64_t seed, bool alpha_vanishes = false)
{
    std::mt19937_64 eng(seed);
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(eng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    const int dim = 2 * n;

    RatMatrix s(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            s(i, j) = Rat(pick(-2, 2), pick(1, 2));
            s(j, i) = -s(i, j);
        }
    }
    const RatMatrix id = RatMatrix::identity(dim);
    const RatMatrix q0 = (id - s) * inverse(id + s);

    // K = K0 + t K1.
    std::vector<RatMatrix> k(2, RatMatrix(dim, dim));
    do {
        for (auto &km : k) {
            km = RatMatrix(dim, dim);
            for (int i = 0; i < dim; ++i) {
                for (int j = std::max(i + 1, n); j < dim; ++j) {
                    km(i, j) = Rat(pick(-2, 2));
                    km(j, i) = -km(i, j);
                }
            }
        }
    } while (det(lower_left(k[0], n)).is_zero());

    std::vector<RatMatrix> q{q0};
    for (int p = 0; p < order; ++p) {
        RatMatrix acc(dim, dim);
        for (int j = 0; j <= std::min(p, 1); ++j) {
            acc = acc + q[static_cast<std::size_t>(p - j)] * k[static_cast<std::size_t>(j)];
        }
        q.push_back(Rat(1, p + 1) * acc);
    }

    FramedCurve fc;
    fc.n = n;
    fc.order = order;
    for (int i = 0; i < n; ++i) {
        std::vector<Jet> v;
        for (int row = 0; row < dim; ++row) {
            std::vector<Jet::term_type> terms;
            for (int p = 0; p <= order; ++p) {
                const Rat &c = q[static_cast<std::size_t>(p)](row, i);
                if (!c.is_zero()) {
                    terms.emplace_back(Monomial{p}, c);
                }
            }
            v.push_back(Jet::from_terms(1, order, std::move(terms)));
        }
        fc.delta.push_back(std::move(v));
    }
    std::vector<Jet> alpha;
    for (int i = 0; i < n; ++i) {
        std::vector<Jet::term_type> terms;
        for (int p = alpha_vanishes ? 1 : 0; p < order; ++p) {
            const int c = pick(-3, 3);
            if (c != 0) {
                terms.emplace_back(Monomial{p}, Rat(c));
            }
        }
        alpha.push_back(Jet::from_terms(1, order, std::move(terms)));
    }
    std::vector<Rat> c;
    for (int i = 0; i < n; ++i) {
        c.emplace_back(pick(-2, 2));
    }
    for (int row = 0; row < dim; ++row) {
        Jet integrand(1, order);
        Jet shift(1, order);
        for (int i = 0; i < n; ++i) {
            const Jet &d = fc.delta[static_cast<std::size_t>(i)][static_cast<std::size_t>(row)];
            integrand += alpha[static_cast<std::size_t>(i)] * d;
            shift += c[static_cast<std::size_t>(i)] * d;
        }
        fc.gamma.push_back(integrate_t(integrand, order) + shift);
    }
    return fc;
}

} // namespace morin

#endif
