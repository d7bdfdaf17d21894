#ifndef MORIN_CLASSIFY_HPP
#define MORIN_CLASSIFY_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <morin/errors.hpp>
#include <morin/forms.hpp>
#include <morin/germ.hpp>
#include <morin/map_jet.hpp>

namespace morin
{

namespace verdict
{
struct Regular {
    friend bool operator==(const Regular &, const Regular &) = default;
};
struct Morin {
    int r = 0;
    friend bool operator==(const Morin &, const Morin &) = default;
};
struct NotCorankOne {
    int corank = 0;
    friend bool operator==(const NotCorankOne &, const NotCorankOne &) = default;
};
// The rank of d(Lambda, ..., eta^j Lambda)_0 falls short at step j.
struct DegenerateRank {
    int j = 0;
    int expected = 0;
    int actual = 0;
    friend bool operator==(const DegenerateRank &, const DegenerateRank &) = default;
};
// eta^j Lambda (0) = 0 for every j <= r_max.
struct FlatToOrder {
    int r_max = 0;
    friend bool operator==(const FlatToOrder &, const FlatToOrder &) = default;
};
struct TruncationInsufficient {
    int required_order = 0;
    friend bool operator==(const TruncationInsufficient &, const TruncationInsufficient &) = default;
};
} // namespace verdict

using Verdict = std::variant<verdict::Regular, verdict::Morin, verdict::NotCorankOne, verdict::DegenerateRank,
                             verdict::FlatToOrder, verdict::TruncationInsufficient>;

struct MorinResult {
    Verdict verdict;
    std::optional<SingularChainReport> evidence;

    bool is_morin(int r) const
    {
        const auto *mo = std::get_if<verdict::Morin>(&verdict);
        return mo != nullptr && mo->r == r;
    }

    friend bool operator==(const MorinResult &, const MorinResult &) = default;
};

inline std::string verdict_name(const Verdict &v)
{
    struct Name {
        std::string operator()(const verdict::Regular &) const
        {
            return "Regular";
        }
        std::string operator()(const verdict::Morin &) const
        {
            return "Morin";
        }
        std::string operator()(const verdict::NotCorankOne &) const
        {
            return "NotCorankOne";
        }
        std::string operator()(const verdict::DegenerateRank &) const
        {
            return "DegenerateRank";
        }
        std::string operator()(const verdict::FlatToOrder &) const
        {
            return "FlatToOrder";
        }
        std::string operator()(const verdict::TruncationInsufficient &) const
        {
            return "TruncationInsufficient";
        }
    };
    return std::visit(Name{}, v);
}

inline std::string to_string(const Verdict &v)
{
    if (const auto *mo = std::get_if<verdict::Morin>(&v)) {
        return "Morin(" + std::to_string(mo->r) + ")";
    }
    if (const auto *nc = std::get_if<verdict::NotCorankOne>(&v)) {
        return "NotCorankOne(" + std::to_string(nc->corank) + ")";
    }
    if (const auto *dr = std::get_if<verdict::DegenerateRank>(&v)) {
        return "DegenerateRank(j=" + std::to_string(dr->j) + ", expected " + std::to_string(dr->expected)
               + ", actual " + std::to_string(dr->actual) + ")";
    }
    if (const auto *fl = std::get_if<verdict::FlatToOrder>(&v)) {
        return "FlatToOrder(" + std::to_string(fl->r_max) + ")";
    }
    if (const auto *ti = std::get_if<verdict::TruncationInsufficient>(&v)) {
        return "TruncationInsufficient(" + std::to_string(ti->required_order) + ")";
    }
    return "Regular";
}

// Applies the criterion to a chain report: the least r with
// eta^r Lambda (0) != 0 is the only candidate, and it is accepted when
// every partial stack d(Lambda, ..., eta^j Lambda)_0, j < r, has full rank
// (j+1)(n-m+1).
inline Verdict verdict_from_chain(const SingularChainReport &chain, int a, int r_max)
{
    int r = 0;
    for (int j = 1; j <= r_max; ++j) {
        bool nonzero = false;
        for (const auto &v : chain.eta_lambda_values[static_cast<std::size_t>(j)]) {
            nonzero = nonzero || !v.is_zero();
        }
        if (nonzero) {
            r = j;
            break;
        }
    }
    if (r == 0) {
        return verdict::FlatToOrder{r_max};
    }
    for (int j = 0; j < r; ++j) {
        const int expected = (j + 1) * (a + 1);
        const int actual = chain.chain_ranks[static_cast<std::size_t>(j)];
        if (actual != expected) {
            return verdict::DegenerateRank{j, expected, actual};
        }
    }
    return verdict::Morin{r};
}

inline MorinResult morin_classify(const MapJet &f, int r_max)
{
    const int m = f.source_dim(), n = f.target_dim();
    if (m >= n) {
        throw DimensionError("morin_classify: requires m < n, got m = " + std::to_string(m) + ", n = "
                             + std::to_string(n));
    }
    if (r_max < 1) {
        throw DimensionError("morin_classify: r_max must be positive");
    }
    const int corank = corank_at_origin(f);
    if (corank == 0) {
        return {verdict::Regular{}, std::nullopt};
    }
    if (corank >= 2) {
        return {verdict::NotCorankOne{corank}, std::nullopt};
    }
    if (f.order() < r_max + 2) {
        return {verdict::TruncationInsufficient{r_max + 2}, std::nullopt};
    }
    const LambdaData ld = adapt_target(f);
    auto chain = singular_chain(ld, r_max);
    Verdict v = verdict_from_chain(chain, n - m, r_max);
    return {std::move(v), std::move(chain)};
}

// True when the first m-1 components are exactly x_1, ..., x_{m-1}.
inline bool is_normal2(const MapJet &f)
{
    const int m = f.source_dim();
    if (m >= f.target_dim() || f.order() < 1) {
        return false;
    }
    for (int k = 0; k < m - 1; ++k) {
        if (!(f[k] == Jet::variable(m, f.order(), k))) {
            return false;
        }
    }
    for (int i = m - 1; i < f.target_dim(); ++i) {
        for (int k = 0; k < m; ++k) {
            if (!f[i].linear_coeff(k).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

// Independent path for germs (x_1, ..., x_{m-1}, f_m, ..., f_n): with
// F = d/dx_m (f_m, ..., f_n), the germ is r-Morin iff F, ..., F^(r-2) vanish
// at 0, F^(r-1)(0) != 0 and rank d(F, ..., F^(r-1))_0 = r(n-m+1). Uses only
// partial derivatives in x_m, no determinants and no null field.
inline MorinResult normal2_classify(const MapJet &f, int r_max)
{
    if (!is_normal2(f)) {
        throw DimensionError("normal2_classify: input is not of the form (x_1, ..., x_{m-1}, f_m, ..., f_n)");
    }
    if (f.order() < r_max + 2) {
        return {verdict::TruncationInsufficient{r_max + 2}, std::nullopt};
    }
    const int m = f.source_dim(), n = f.target_dim();
    std::vector<Jet> g;
    for (int i = m - 1; i < n; ++i) {
        g.push_back(f[i].derive(m - 1));
    }
    SingularChainReport rep;
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
        for (auto &gi : g) {
            gi = gi.derive(m - 1);
        }
    }
    Verdict v = verdict_from_chain(rep, n - m, r_max);
    return {std::move(v), std::move(rep)};
}

// Classifies Phi_i o f o phi_i for `trials` random orientation-preserving
// diffeomorphism jets of the given degree. Trial seeds are drawn from a
// single generator seeded with `seed`, so results are reproducible and
// ordered by trial index.
inline std::vector<MorinResult> equivalence_fuzz(const MapJet &f, int trials, int degree, std::uint64_t seed,
                                                 int r_max)
{
    std::mt19937_64 master(seed);
    std::vector<MorinResult> out;
    out.reserve(static_cast<std::size_t>(std::max(trials, 0)));
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t s_src = master();
        const std::uint64_t s_tgt = master();
        const MapJet phi = random_diffeo(f.source_dim(), degree, s_src, true, f.order());
        const MapJet big_phi = random_diffeo(f.target_dim(), degree, s_tgt, true, f.order());
        out.push_back(morin_classify(conjugate(f, phi, big_phi), r_max));
    }
    return out;
}

} // namespace morin

#endif
