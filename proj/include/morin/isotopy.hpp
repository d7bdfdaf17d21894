#ifndef MORIN_ISOTOPY_HPP
#define MORIN_ISOTOPY_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <morin/classify.hpp>
#include <morin/errors.hpp>
#include <morin/forms.hpp>
#include <morin/germ.hpp>

namespace morin
{

struct IsotopyReport {
    int r = 0;
    int a = 0;
    int case_id = 0; // r mod 4
    bool suspension = false;
    int class_count = 1;
    std::string invariant_label = "none"; // "eps1", "eps2" or "none"
    std::optional<int> d_sign;
    std::string gauge_note;

    friend bool operator==(const IsotopyReport &, const IsotopyReport &) = default;
};

inline const char *gauge_note_text()
{
    return "eta = s * cofactor field of d(f_1..f_{m-1}), s = sign det(e_c, eta_cof(0)) over the pivot source "
           "columns c; target change has det +1 and identity pivot block; D rows ordered lambda_1, eta lambda_1, "
           "..., eta^{r-1} lambda_1, lambda_2, ...";
}

// Sign picked up by D when eta(0) is reversed.
inline int frame_flip_factor(int r, int a)
{
    return ((r - 1) * r / 2 * (a + 1)) % 2 == 0 ? 1 : -1;
}

// Sign picked up by D under an orientation-preserving target change whose
// (Phi_1, ..., Phi_{m-1}) block reverses orientation.
inline int target_flip_factor(int r, int a)
{
    return (a * r) % 2 == 0 ? 1 : -1;
}

// Number of A-isotopy classes in the A-class of the r-Morin germ with
// a = n - m. Two classes exist exactly when neither sign ambiguity can
// reverse D; D = eps1^((a+1)r+1) eps2^r then names the surviving sign.
inline IsotopyReport isotopy_classify(int r, int a, bool suspension)
{
    if (r < 1 || a < 1) {
        throw DimensionError("isotopy_classify: r and a must be positive");
    }
    IsotopyReport rep;
    rep.r = r;
    rep.a = a;
    rep.case_id = r % 4;
    rep.suspension = suspension;
    rep.gauge_note = gauge_note_text();
    if (!suspension && frame_flip_factor(r, a) == 1 && target_flip_factor(r, a) == 1) {
        const bool e1_odd = ((a + 1) * r + 1) % 2 != 0;
        const bool e2_odd = r % 2 != 0;
        if (e1_odd && !e2_odd) {
            rep.class_count = 2;
            rep.invariant_label = "eps1";
        } else if (e2_odd && !e1_odd) {
            rep.class_count = 2;
            rep.invariant_label = "eps2";
        }
    }
    return rep;
}

// Rows d(eta^j lambda_i)_0 for i = 1..a+1 and j = 0..r-1, ordered by i first.
inline RatMatrix d_matrix(const SingularChainReport &chain, int r)
{
    if (static_cast<int>(chain.differentials.size()) < r) {
        throw DimensionError("d_matrix: chain is shorter than r");
    }
    const int comps = chain.differentials.front().rows();
    const int m = chain.differentials.front().cols();
    RatMatrix d(comps * r, m);
    for (int i = 0; i < comps; ++i) {
        for (int j = 0; j < r; ++j) {
            for (int k = 0; k < m; ++k) {
                d(i * r + j, k) = chain.differentials[static_cast<std::size_t>(j)](i, k);
            }
        }
    }
    return d;
}

inline int d_invariant_of_chain(const SingularChainReport &chain, int r)
{
    const RatMatrix d = d_matrix(chain, r);
    if (d.rows() != d.cols()) {
        throw NotApplicableError("d_invariant: suspension case, the matrix is not square");
    }
    const int s = det(d).sign();
    if (s == 0) {
        throw std::logic_error("d_invariant: determinant vanishes for an r-Morin germ");
    }
    return s;
}

// Sign of det d(Lambda, eta Lambda, ..., eta^{r-1} Lambda)_0 in the gauge
// fixed by adapt_target.
inline int d_invariant(const MapJet &f, int r)
{
    const int m = f.source_dim(), a = f.target_dim() - m;
    if (a < 1) {
        throw DimensionError("d_invariant: requires m < n");
    }
    if (m != r * (a + 1)) {
        throw NotApplicableError("d_invariant: defined only when m = r(n-m+1); here m = " + std::to_string(m)
                                 + ", r(n-m+1) = " + std::to_string(r * (a + 1)));
    }
    const MorinResult res = morin_classify(f, r);
    if (!res.is_morin(r)) {
        throw NotApplicableError("d_invariant: germ is not " + std::to_string(r) + "-Morin (verdict "
                                 + to_string(res.verdict) + ")");
    }
    return d_invariant_of_chain(*res.evidence, r);
}

// Isotopy data for a classified germ; d_sign is present in the square case.
inline IsotopyReport isotopy_report(const MapJet &f, int r)
{
    const int m = f.source_dim(), a = f.target_dim() - m;
    IsotopyReport rep = isotopy_classify(r, a, m > r * (a + 1));
    if (!rep.suspension) {
        rep.d_sign = d_invariant(f, r);
    }
    return rep;
}

struct RotationStep {
    enum class Side { Source, Target };
    Side side = Side::Source;
    std::vector<int> indices; // 1-based

    friend bool operator==(const RotationStep &, const RotationStep &) = default;
};

// A sequence of pi-rotations carrying h_{from} to h_{to}. All steps are
// diagonal sign changes, so they commute and the order only documents the
// reduction.
struct Witness {
    FormSpec from;
    FormSpec to;
    std::vector<RotationStep> steps;

    std::vector<std::vector<int>> sets(RotationStep::Side side) const
    {
        std::vector<std::vector<int>> out;
        for (const auto &s : steps) {
            if (s.side == side) {
                out.push_back(s.indices);
            }
        }
        return out;
    }
};

namespace detail
{

inline std::vector<int> range(int lo, int hi)
{
    std::vector<int> v;
    for (int k = lo; k <= hi; ++k) {
        v.push_back(k);
    }
    return v;
}

inline std::vector<int> join(std::vector<int> a, const std::vector<int> &b)
{
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    return a;
}

inline RotationStep src(std::vector<int> v)
{
    return {RotationStep::Side::Source, std::move(v)};
}
inline RotationStep tgt(std::vector<int> v)
{
    return {RotationStep::Side::Target, std::move(v)};
}

// Source set negating x_m and, in each block of h_1..h_a, the variables with
// odd offset; in the last block the odd offsets up to r-2.
inline std::vector<int> odd_offsets(int r, int a, int m)
{
    std::vector<int> s;
    for (int i = 1; i <= a; ++i) {
        for (int j = 1; j <= r; j += 2) {
            s.push_back((i - 1) * r + j);
        }
    }
    for (int j = 1; j <= r - 2; j += 2) {
        s.push_back(a * r + j);
    }
    s.push_back(m);
    return s;
}

} // namespace detail

// Reduces h_{r,(eps1,eps2)} to the representative of its isotopy class:
// h_{0,r} when the class count is one, otherwise h_{r,(eps1,1)} or
// h_{r,(1,eps2)} according to the invariant sign.
inline Witness isotopy_witness(const FormSpec &spec)
{
    using detail::join;
    using detail::range;
    using detail::src;
    using detail::tgt;
    spec.validate();
    const int r = spec.r, a = spec.a, m = spec.m(), n = spec.n();
    Witness w;
    w.from = spec;
    FormSpec cur = spec;

    if (r % 2 == 0 && cur.eps2 == -1) {
        w.steps.push_back(tgt({m, n}));
        w.steps.push_back(src(range(1, r)));
        w.steps.push_back(tgt(range(1, r)));
        cur.eps2 = 1;
    }
    if (r % 2 != 0 && cur.eps1 == -1) {
        w.steps.push_back(src(range(2, r)));
        w.steps.push_back(tgt(join(range(1, r), {m})));
        cur.eps1 = 1;
    }
    if (spec.suspension()) {
        // x_{m-1} is a free coordinate and absorbs the parity.
        if (r % 2 == 0 && cur.eps1 == -1) {
            w.steps.push_back(src(join(range(2, r), {m - 1})));
            w.steps.push_back(tgt(join(range(1, r), {m - 1, m})));
            cur.eps1 = 1;
        }
        if (r % 2 != 0 && cur.eps2 == -1) {
            w.steps.push_back(tgt({m, n}));
            w.steps.push_back(src(join(range(1, r), {m - 1})));
            w.steps.push_back(tgt(join(range(1, r), {m - 1})));
            cur.eps2 = 1;
        }
    } else if (r % 4 == 1 && a % 2 != 0 && cur.eps2 == -1) {
        auto s = detail::odd_offsets(r, a, m);
        w.steps.push_back(src(s));
        s.pop_back();
        w.steps.push_back(tgt(join(s, {n})));
        cur.eps2 = 1;
    } else if (r % 4 == 2 && a % 2 == 0 && cur.eps1 == -1) {
        std::vector<int> s{1};
        for (int j = 2; j <= r; j += 2) {
            s.push_back(j);
        }
        for (int i = 2; i <= a; ++i) {
            for (int j = 1; j <= r - 1; j += 2) {
                s.push_back((i - 1) * r + j);
            }
        }
        for (int j = 2; j <= r - 2; j += 2) {
            s.push_back(a * r + j);
        }
        std::vector<int> t(s.begin() + 1, s.end());
        s.push_back(m);
        w.steps.push_back(src(s));
        w.steps.push_back(tgt(join(t, {m, n})));
        cur.eps1 = 1;
    } else if (r % 4 == 3 && cur.eps2 == -1) {
        auto s = detail::odd_offsets(r, a, m);
        w.steps.push_back(src(s));
        s.pop_back();
        w.steps.push_back(tgt(join(s, {n})));
        cur.eps2 = 1;
    }
    w.to = cur;
    return w;
}

// A witness from h_{from} to h_{to}, or NoWitnessError when the two forms
// lie in different isotopy classes.
inline Witness isotopy_witness(const FormSpec &from, const FormSpec &to)
{
    if (from.r != to.r || from.a != to.a || from.extra != to.extra) {
        throw NoWitnessError("isotopy_witness: forms have different (r, a, extra)");
    }
    const Witness wf = isotopy_witness(from);
    const Witness wt = isotopy_witness(to);
    if (!(wf.to == wt.to)) {
        const IsotopyReport rep = isotopy_classify(from.r, from.a, from.suspension());
        throw NoWitnessError("isotopy_witness: the forms lie in different isotopy classes, separated by the "
                             + rep.invariant_label + " sign");
    }
    Witness w;
    w.from = from;
    w.to = to;
    w.steps = wf.steps;
    // Rotations are involutions, so the reverse of wt carries its
    // representative back to `to`.
    w.steps.insert(w.steps.end(), wt.steps.rbegin(), wt.steps.rend());
    return w;
}

// Target rotations o f o source rotations.
inline MapJet apply_witness(const MapJet &f, const Witness &w)
{
    MapJet g = f;
    for (const auto &s : w.steps) {
        if (s.side == RotationStep::Side::Source) {
            g = compose(g, pi_rotation(g.source_dim(), s.indices, g.order()));
        } else {
            g = compose(pi_rotation(g.target_dim(), s.indices, g.order()), g);
        }
    }
    return g;
}

// Exact jet equality of the rotated form with the claimed representative.
inline bool verify_witness(const Witness &w, int order)
{
    for (const auto &s : w.steps) {
        if (s.indices.size() % 2 != 0) {
            return false;
        }
    }
    return apply_witness(isotopy_form(w.from, order), w) == isotopy_form(w.to, order);
}

inline bool verify_witness(const Witness &w)
{
    return verify_witness(w, w.from.default_order());
}

} // namespace morin

#endif
