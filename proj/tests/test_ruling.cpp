#include <catch_amalgamated.hpp>

#include <morin/ruling.hpp>

using namespace morin;

namespace
{

Jet t_poly(int order, std::initializer_list<Rat> coeffs)
{
    std::vector<Jet::term_type> terms;
    int k = 0;
    for (const auto &c : coeffs) {
        if (!c.is_zero() && k <= order) {
            terms.emplace_back(Monomial{k}, c);
        }
        ++k;
    }
    return Jet::from_terms(1, order, std::move(terms));
}

bool vanishes(const Jet &a)
{
    return a.is_zero();
}

FramedCurve with_gamma(FramedCurve fc, std::vector<Jet> g)
{
    fc.gamma = std::move(g);
    return fc;
}

} // namespace

TEST_CASE("trig truncations")
{
    CHECK(cos_jet(4) == t_poly(4, {1, 0, Rat(-1, 2), 0, Rat(1, 24)}));
    CHECK(sin_jet(4) == t_poly(4, {0, 1, 0, Rat(-1, 6)}));
}

TEST_CASE("ruling_map examples")
{
    const int d = 4;
    const FramedCurve rot = rotation_frame(d);
    const Jet z(1, d);
    const FramedCurve flat = with_gamma(rot, {z, z, z, z});
    const MapJet f = ruling_map(flat);
    REQUIRE(f.source_dim() == 3);
    REQUIRE(f.target_dim() == 4);
    const Jet u1 = Jet::variable(3, d, 1), u2 = Jet::variable(3, d, 2);
    const Jet c = detail::lift_t(cos_jet(d), 3, d), s = detail::lift_t(sin_jet(d), 3, d);
    CHECK(f == MapJet(3, d, {u1 * c, u1 * s, u2 * c, u2 * s}));
    CHECK(f[0].coeff(Monomial{2, 1, 0}) == Rat(-1, 2));

    // gamma' = delta_1 puts the singular set on {u = 0}.
    const LambdaData ld = adapt_target(ruling_map(rot));
    for (const auto &l : lambda_vector(ld)) {
        for (const auto &[mono, coef] : l.terms()) {
            REQUIRE(mono[1] + mono[2] > 0);
        }
    }
}

TEST_CASE("frame invariants are enforced")
{
    const int d = 4;
    const Jet one = Jet::constant(1, d, Rat(1)), z(1, d);
    FramedCurve constant;
    constant.n = 2;
    constant.order = d;
    constant.delta = {{one, z, z, z}, {z, z, one, z}};
    constant.gamma = {z, z, z, z};
    CHECK_THROWS_AS(ruling_map(constant), FrameError);

    FramedCurve scaled = rotation_frame(d);
    for (auto &e : scaled.delta[0]) {
        e = Rat(2) * e;
    }
    CHECK_THROWS_AS(ruling_map(scaled), FrameError);

    // delta_1 . delta_2' != 0: rotate delta_2 in the (1, 3) plane.
    FramedCurve twisted = rotation_frame(d);
    twisted.delta[1] = {sin_jet(d), z, cos_jet(d), z};
    CHECK_THROWS_AS(striction(twisted), FrameError);

    FramedCurve one_plane = rotation_frame(d);
    one_plane.n = 1;
    CHECK_THROWS_AS(ruling_map(one_plane), DimensionError);
}

TEST_CASE("striction examples")
{
    const int d = 4;
    const FramedCurve rot = rotation_frame(d);
    const StrictionResult s = striction(rot);
    CHECK(vanishes(s.u[0]));
    CHECK(vanishes(s.u[1]));
    for (int k = 0; k < 4; ++k) {
        CHECK(equal_to_order(s.sigma[static_cast<std::size_t>(k)], rot.gamma[static_cast<std::size_t>(k)].truncated(d - 1), d - 1));
    }
    CHECK(s.alpha[0].constant_term() == Rat(1));
    CHECK(s.alpha[1].constant_term() == Rat(0));
    CHECK(s.morin1_at_origin);

    std::vector<Jet> shifted;
    for (int k = 0; k < 4; ++k) {
        shifted.push_back(rot.gamma[static_cast<std::size_t>(k)] + rot.delta[0][static_cast<std::size_t>(k)]);
    }
    const StrictionResult s2 = striction(with_gamma(rot, shifted));
    CHECK(s2.u[0] == Jet::constant(1, d - 1, Rat(-1)));
    CHECK(vanishes(s2.u[1]));
    for (int k = 0; k < 4; ++k) {
        CHECK(equal_to_order(s2.sigma[static_cast<std::size_t>(k)], rot.gamma[static_cast<std::size_t>(k)].truncated(d - 1), d - 1));
    }

    const Jet z(1, d);
    const StrictionResult s3 = striction(with_gamma(rot, {z, z, z, z}));
    CHECK(vanishes(s3.u[0]));
    CHECK(vanishes(s3.u[1]));
    CHECK(vanishes(s3.alpha[0]));
    CHECK(vanishes(s3.alpha[1]));
    CHECK_FALSE(s3.morin1_at_origin);
}

TEST_CASE("ruling_morin1_check examples")
{
    const FramedCurve rot = rotation_frame(4);
    const RulingCheck c = ruling_morin1_check(rot);
    CHECK(c.classifier_morin1);
    CHECK(c.alpha_nonzero);
    CHECK(c.agree());
    // Delta(0) = det(e1, e3, e2, e4).
    CHECK(c.delta0 == Rat(-1));
    CHECK(c.eta_lambda == std::vector<Rat>{Rat(-1), Rat(0)});
    CHECK(c.identity_holds());

    const Jet z(1, 4);
    const RulingCheck flat = ruling_morin1_check(with_gamma(rot, {z, z, z, z}));
    CHECK_FALSE(flat.classifier_morin1);
    CHECK_FALSE(flat.alpha_nonzero);
    CHECK(flat.eta_lambda == std::vector<Rat>{Rat(0), Rat(0)});
    CHECK(flat.identity_holds());

    CHECK_THROWS_AS(ruling_morin1_check(rotation_frame(3)), TruncationError);
}

TEST_CASE("random frames satisfy the striction identities")
{
    for (std::uint64_t seed = 0; seed < 24; ++seed) {
        const int n = seed < 20 ? 2 : 3;
        const int d = 4;
        const bool flat = seed % 4 == 3;
        const FramedCurve fc = random_framed_curve(n, d, seed, flat);
        INFO("seed=" << seed);
        REQUIRE_NOTHROW(fc.validate());
        const StrictionResult s = striction(fc);
        const auto d_cut = fc.cut();
        const auto sp = FramedCurve::derivative(s.sigma);
        for (int i = 0; i < n; ++i) {
            const auto dp = FramedCurve::derivative(d_cut[static_cast<std::size_t>(i)]);
            const Jet proj = FramedCurve::dot(sp, dp);
            REQUIRE(vanishes(proj));
            // u is constant by construction.
            REQUIRE(s.u[static_cast<std::size_t>(i)].degree() <= 0);
        }
        for (int k = 0; k < 2 * n; ++k) {
            Jet rebuilt(1, sp[0].order());
            for (int i = 0; i < n; ++i) {
                rebuilt += s.alpha[static_cast<std::size_t>(i)] * d_cut[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            }
            REQUIRE(equal_to_order(rebuilt, sp[static_cast<std::size_t>(k)], std::min(rebuilt.order(), sp[0].order())));
        }
        REQUIRE(s.morin1_at_origin == !flat);

        const RulingCheck c = ruling_morin1_check(fc);
        REQUIRE(c.identity_holds());
        REQUIRE(c.agree());
        REQUIRE(c.alpha_nonzero == !flat);

        // Singular set of the re-based map is {u = 0}.
        const LambdaData ld = adapt_target(striction_ruling_map(fc, s));
        for (const auto &l : lambda_vector(ld)) {
            for (const auto &[mono, coef] : l.terms()) {
                int udeg = 0;
                for (int i = 1; i <= n; ++i) {
                    udeg += mono[i];
                }
                REQUIRE(udeg > 0);
            }
        }
    }
}
