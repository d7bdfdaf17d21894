// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes. All comparisons are exact; the only tolerances are
// the wall-clock budgets below.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <morin/morin.hpp>

#include "gen.hpp"

using namespace morin;

namespace
{

constexpr double budget_normal_forms_s = 60;
constexpr double budget_fuzz_s = 300;
constexpr double budget_ruling_s = 60;
constexpr double budget_default_s = 300;

constexpr int fuzz_trials = 25;
constexpr int fuzz_degree = 3;
constexpr int normalized_germs = 50;
constexpr int transformation_germs = 25;
constexpr int ruling_frames = 20;
constexpr int round_trips = 200;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int ipow(int b, int e)
{
    int r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
    }
    return r;
}

// The (r, a, extra) grid of criteria 1 and 2.
std::vector<FormSpec> normal_form_cases()
{
    std::vector<FormSpec> out;
    for (int r = 1; r <= 4; ++r) {
        for (int a = 1; a <= 3; ++a) {
            for (int e = 0; r * (a + 1) + e <= 8; ++e) {
                out.push_back({r, a, e});
            }
        }
    }
    return out;
}

Outcome normal_form_recovery()
{
    int ok = 0, total = 0;
    std::string first_bad;
    for (const auto &s : normal_form_cases()) {
        ++total;
        const MorinResult res = morin_classify(normal_form(s), s.r);
        if (res.is_morin(s.r)) {
            ++ok;
        } else if (first_bad.empty()) {
            first_bad = "; first failure r=" + std::to_string(s.r) + " a=" + std::to_string(s.a) + " extra="
                        + std::to_string(s.extra) + ": " + to_string(res.verdict);
        }
    }
    return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " normal forms are Morin(r)" + first_bad};
}

Outcome invariance_fuzz()
{
    int ok = 0, total = 0;
    std::uint64_t seed = 1000;
    for (const auto &s : normal_form_cases()) {
        const MapJet f = normal_form(s);
        const Verdict expected = verdict::Morin{s.r};
        for (const auto &res : equivalence_fuzz(f, fuzz_trials, fuzz_degree, seed++, s.r)) {
            ++total;
            ok += res.verdict == expected ? 1 : 0;
        }
    }
    return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " conjugations preserve Morin(r)"};
}

Outcome normalized_cross_check()
{
    gen::Rng rng(20260101);
    int ok = 0, morin_hits = 0;
    for (int t = 0; t < normalized_germs; ++t) {
        const int m = rng.uniform(2, 6), n = m + rng.uniform(1, 2), r_max = 3;
        const MapJet f = gen::random_normal2(rng, m, n, r_max + 2);
        const MorinResult a = morin_classify(f, r_max);
        const MorinResult b = normal2_classify(f, r_max);
        if (a.verdict == b.verdict && a.evidence && b.evidence && a.evidence->chain_ranks == b.evidence->chain_ranks) {
            ++ok;
        }
        morin_hits += std::holds_alternative<verdict::Morin>(a.verdict) ? 1 : 0;
    }
    return {ok == normalized_germs, std::to_string(ok) + "/" + std::to_string(normalized_germs)
                                   + " germs agree on verdict and ranks (" + std::to_string(morin_hits)
                                   + " of them Morin)"};
}

Outcome d_formula()
{
    int ok = 0, total = 0;
    for (int r = 1; r <= 4; ++r) {
        for (int a = 1; a <= 3 && r * (a + 1) <= 8; ++a) {
            for (int e1 : {1, -1}) {
                for (int e2 : {1, -1}) {
                    ++total;
                    const FormSpec s{r, a, 0, e1, e2};
                    ok += d_invariant(isotopy_form(s), r) == ipow(e1, (a + 1) * r + 1) * ipow(e2, r) ? 1 : 0;
                }
            }
        }
    }
    return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " signed forms match the closed formula"};
}

Outcome table_reproduction()
{
    // Table as printed, indexed by r mod 4 and the parity of a.
    const int counts[4][2] = {{2, 2}, {1, 2}, {2, 1}, {1, 1}};
    const char *labels[4][2] = {{"eps1", "eps1"}, {"none", "eps2"}, {"eps1", "none"}, {"none", "none"}};
    int ok = 0, total = 0;
    for (int r = 1; r <= 8; ++r) {
        for (int a = 1; a <= 4; ++a) {
            ++total;
            const IsotopyReport rep = isotopy_classify(r, a, false);
            const int col = a % 2 == 0 ? 1 : 0;
            ok += rep.class_count == counts[r % 4][col] && rep.invariant_label == labels[r % 4][col] ? 1 : 0;
        }
    }
    return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " cells match"};
}

Outcome witness_soundness()
{
    int ok = 0, total = 0;
    for (int r = 1; r <= 8; ++r) {
        for (int a = 1; a <= 4; ++a) {
            for (int e = 0; e <= 2; ++e) {
                const FormSpec base{r, a, e};
                if (base.n() > 16 || base.m() > 12) {
                    continue;
                }
                for (int e1 : {1, -1}) {
                    for (int e2 : {1, -1}) {
                        ++total;
                        const Witness w = isotopy_witness({r, a, e, e1, e2});
                        bool good = verify_witness(w);
                        for (const auto &st : w.steps) {
                            const int dim = st.side == RotationStep::Side::Source ? base.m() : base.n();
                            good = good && st.indices.size() % 2 == 0
                                   && det(pi_rotation(dim, st.indices, 1).jacobian_at_origin()) == Rat(1);
                        }
                        ok += good ? 1 : 0;
                    }
                }
            }
        }
    }
    return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " witnesses verified jet-exactly"};
}

Outcome transformation_law()
{
    gen::Rng rng(20260202);
    int ok = 0;
    for (int t = 0; t < transformation_germs; ++t) {
        const int m = rng.uniform(2, 4), n = m + rng.uniform(1, 2), ord = 3;
        const MapJet f = gen::random_adapted(rng, m, n, ord);
        RatMatrix m1, m4;
        const MapJet big_phi = gen::block_target(rng, m, n, ord, m1, m4);
        const LambdaData a = adapt_target(f);
        const LambdaData b = adapt_target(compose(big_phi, f));
        const RatMatrix da = differential_at_origin(a.lambda, m);
        const RatMatrix db = differential_at_origin(b.lambda, m);
        ok += b.target_change == RatMatrix::identity(n) && db == det(m1) * (m4 * da) ? 1 : 0;
    }
    return {ok == transformation_germs,
            std::to_string(ok) + "/" + std::to_string(transformation_germs) + " germs satisfy the law"};
}

Outcome ruling_identities()
{
    std::vector<FramedCurve> frames{rotation_frame(4)};
    for (int s = 0; s < ruling_frames; ++s) {
        frames.push_back(random_framed_curve(2, 4, 500 + static_cast<std::uint64_t>(s), s % 4 == 3));
    }
    int ok = 0, morin1 = 0;
    for (const auto &fc : frames) {
        const StrictionResult s = striction(fc);
        bool good = true;
        const auto d = fc.cut();
        const auto sp = FramedCurve::derivative(s.sigma);
        for (const auto &di : d) {
            good = good && FramedCurve::dot(sp, FramedCurve::derivative(di)).is_zero();
        }
        const RulingCheck c = ruling_morin1_check(fc);
        good = good && c.identity_holds() && c.agree();
        ok += good ? 1 : 0;
        morin1 += c.alpha_nonzero ? 1 : 0;
    }
    const int total = static_cast<int>(frames.size());
    return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " frames (" + std::to_string(morin1)
                             + " of them 1-Morin) satisfy all three identities"};
}

Outcome parser_round_trips()
{
    gen::Rng rng(20260303);
    int ok = 0;
    for (int t = 0; t < round_trips; ++t) {
        const GermSource g = gen::random_germ(rng);
        const GermSource back = parse_germ(g.to_string());
        ok += back == g && back.to_string() == g.to_string() ? 1 : 0;
    }
    const GermSource wu = parse_germ("map 2 -> 3 order 4 : [x1, x1*x2, x2^2]");
    const GermSource h02 = parse_germ("map 4 -> 5 order 5 : [x1, x2, x3, x1*x4 + x2*x4^2, x3*x4 + x4^3]");
    const std::vector<json> reports{
        classify_report(wu, 3, false).to_json(),
        classify_report(h02, 3, false).to_json(),
        fuzz_report(wu, 1, 5, 3, 1),
        form_report({2, 1, 1}, false, 4),
        form_report({3, 1, 0, 1, -1}, true, 5),
        d_invariant_report(h02, 2),
        table_report(8, 4),
        witness_report(isotopy_witness({3, 1, 0, 1, -1})),
        ruling_report(parse_ruling("ruling 2 order 4\ngamma: [t - 1/6*t^3, 1/2*t^2 - 1/24*t^4, 0, 0]\n"
                                   "delta1: [1 - 1/2*t^2 + 1/24*t^4, t - 1/6*t^3, 0, 0]\n"
                                   "delta2: [0, 0, 1 - 1/2*t^2 + 1/24*t^4, t - 1/6*t^3]")),
        error_report("ParseError", "example"),
    };
    int valid = 0;
    for (const auto &r : reports) {
        valid += validate_report(r).empty() ? 1 : 0;
    }
    const bool lossless = ClassifyReport::from_json(reports[1]) == classify_report(h02, 3, false);
    return {ok == round_trips && valid == static_cast<int>(reports.size()) && lossless,
            std::to_string(ok) + "/" + std::to_string(round_trips) + " round trips, " + std::to_string(valid) + "/"
                + std::to_string(reports.size()) + " reports valid, classify report "
                + (lossless ? "lossless" : "lossy")};
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char *name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "normal-form recovery", budget_normal_forms_s, normal_form_recovery},
        {2, "A-invariance fuzz", budget_fuzz_s, invariance_fuzz},
        {3, "normalized-form cross-check", budget_default_s, normalized_cross_check},
        {4, "D formula", budget_default_s, d_formula},
        {5, "isotopy table", budget_default_s, table_reproduction},
        {6, "witness soundness", budget_default_s, witness_soundness},
        {7, "Lambda transformation law", budget_default_s, transformation_law},
        {8, "ruling identities", budget_ruling_s, ruling_identities},
        {9, "parser and report round-trips", budget_default_s, parser_round_trips},
    };
    int failed = 0;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = secs <= c.budget_s;
        const bool pass = o.pass && in_budget;
        failed += pass ? 0 : 1;
        std::ostringstream t;
        t << std::fixed << std::setprecision(2) << secs << " s of " << c.budget_s << " s";
        std::cout << (pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << ": " << o.detail << " ["
                  << t.str() << (in_budget ? "" : ", over budget") << "]" << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
