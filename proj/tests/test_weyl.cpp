#include "sugop/checks.hpp"
#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sugop;

namespace {

void expect_ok(const checks::CheckResult& r) {
    INFO("expected: " << r.expected);
    INFO("actual:   " << r.actual);
    CHECK(r.ok);
}

WeylVector random_vec(testutil::Rng& rng, long long lam, long long mu, int depth) {
    WeylVector v(Alg::Two, lam, mu);
    for (int t = 0; t < 2; ++t) {
        Mono m;
        int d = (int)rng.range(0, depth);
        for (int i = 0; i < d; ++i)
            m.push_back(GenIndex{kSl2Basis[(size_t)rng.below(3)], (int)rng.range(-4, -1)});
        std::sort(m.begin(), m.end());
        v.add(m, (int)rng.range(0, lam), (int)rng.range(0, mu), Scalar(rng.rational()));
    }
    return v;
}

} // namespace

TEST_CASE("generator action on the weight space") {
    WeylVector v = WeylVector::unit(Alg::Two, 1, 1, 0, 0);
    // (h u_0) (top x top) = (1 + 1) top x top
    WeylVector w = act_gen(Sl2Elt(Gen::h), 0, v, 4);
    CHECK(w == Scalar(2) * v);
    // (h v_0) (top x top) = -a (h top) x top = -a top x top
    WeylVector w2 = act_gen(Sl2Elt(Gen::h), 1, v, 4);
    CHECK(w2 == Scalar::monomial(-1, 1) * v);
    // (x u_1) kills degree zero
    CHECK(act_gen(Sl2Elt(Gen::e), 2, v, 4).is_zero());
    CHECK(act_gen(Sl2Elt(Gen::f), 3, v, 4).is_zero());
    // negative index: creation
    WeylVector w3 = act_gen(Sl2Elt(Gen::e), -2, v, 4);
    REQUIRE(w3.terms().size() == 1);
    CHECK(w3.terms().begin()->first.first == Mono{GenIndex{Gen::e, -2}});
    // depth overflow reported
    CHECK_THROWS_AS(act_gen(Sl2Elt(Gen::e), -2, w3, 1), DepthOverflow);
    // a truncated element whose tail could reach the vector is rejected
    WeylVector deep(Alg::Two, 1, 1);
    deep.add(Mono{GenIndex{Gen::f, -8}}, 0, 0, Scalar(1));
    CHECK_THROWS_AS(act_env(sugawara2(0, 4), deep, 6), InsufficientLevel);
}

TEST_CASE("module axiom at truncated level") {
    testutil::Rng rng(71);
    for (int trial = 0; trial < 25; ++trial) {
        long long lam = rng.range(0, 2), mu = rng.range(0, 2);
        WeylVector v = random_vec(rng, lam, mu, 2);
        Gen g1 = kSl2Basis[(size_t)rng.below(3)], g2 = kSl2Basis[(size_t)rng.below(3)];
        int n1 = (int)rng.range(-2, 2), n2 = (int)rng.range(-2, 2);
        bool v1 = rng.below(2) == 1, v2 = rng.below(2) == 1;
        int a2 = 2 * n1 + (v1 ? 1 : 0), b2 = 2 * n2 + (v2 ? 1 : 0);
        int depth = 8;
        WeylVector lhs = act_gen(Sl2Elt(g1), a2, act_gen(Sl2Elt(g2), b2, v, depth), depth)
                         - act_gen(Sl2Elt(g2), b2, act_gen(Sl2Elt(g1), a2, v, depth), depth);
        // bracket action with C -> -1/2
        TwoVarFun f1 = v1 ? TwoVarFun::v(n1) : TwoVarFun::u(n1);
        TwoVarFun f2 = v2 ? TwoVarFun::v(n2) : TwoVarFun::u(n2);
        AffineElt br = affine_bracket(AffineTerm(Sl2Elt(g1), f1), AffineTerm(Sl2Elt(g2), f2));
        WeylVector rhs(Alg::Two, lam, mu);
        for (const auto& t : br) {
            rhs = rhs + (t.central * Scalar(Rational(-1, 2))) * v;
            if (t.lie.is_zero()) continue;
            for (const auto& [b, c] : t.fun.to_basis(TwoVarFun::BasisPair::UV)) {
                int g2i = b.family == BasisFamily::U ? 2 * b.n : 2 * b.n + 1;
                rhs = rhs + c * act_gen(t.lie, g2i, v, depth);
            }
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("centrality on vectors") {
    testutil::Rng rng(73);
    for (int k2 = -2; k2 <= 4; ++k2)
        for (int trial = 0; trial < 4; ++trial) {
            long long lam = rng.range(0, 2), mu = rng.range(0, 2);
            WeylVector v = random_vec(rng, lam, mu, 2);
            Gen g = kSl2Basis[(size_t)rng.below(3)];
            int rg2 = (int)rng.range(-4, 4);
            int need = v.need_level2() + std::max(0, -rg2) + 4;
            EnvElement S = sugawara2(k2, need);
            EnvElement com = commutator(S, EnvElement::gen(Alg::Two, g, rg2)).subst_critical();
            WeylVector got = act_env(com, v, 10);
            CHECK(got.is_zero());
        }
}

TEST_CASE("clebsch components") {
    auto comps = clebsch_components(1, 1);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].nu == 2);
    CHECK(comps[1].nu == 0);
    auto single = clebsch_components(0, 3);
    REQUIRE(single.size() == 1);
    CHECK(single[0].nu == 3);
    // highest vector for nu = lam + mu is top (x) top
    auto c22 = clebsch_components(2, 2);
    REQUIRE(c22.size() == 3);
    CHECK(c22[0].highest[pair_index(2, 0, 0)] == Scalar(1));
    size_t nonzero = 0;
    for (const auto& x : c22[0].highest)
        if (!x.is_zero()) ++nonzero;
    CHECK(nonzero == 1);
}

TEST_CASE("degree-0 casimir eigenvalue") {
    for (long long nu = 0; nu <= 4; ++nu) expect_ok(checks::weyl_casimir1_case(nu));
}

TEST_CASE("degree-0 blocks match hypergeometric coordinates") {
    for (long long lam = 0; lam <= 2; ++lam)
        for (long long mu = 0; mu <= 2; ++mu) expect_ok(checks::weyl_block_case(lam, mu));
}

TEST_CASE("a = 0 consistency with the one-variable action") {
    for (int k2 = -2; k2 <= 4; ++k2)
        for (long long lam = 0; lam <= 2; ++lam)
            for (long long mu = 0; mu <= 2; ++mu) expect_ok(checks::weyl_a0_case(k2, lam, mu));
}

TEST_CASE("sp-compatibility of the action") {
    // acting with Sp(X) on the a = 0 reduction matches acting with X
    testutil::Rng rng(79);
    for (int trial = 0; trial < 10; ++trial) {
        long long lam = rng.range(0, 2), mu = rng.range(0, 2);
        int k2 = (int)rng.range(-2, 3);
        WeylVector v = WeylVector::unit(Alg::Two, lam, mu, (int)rng.range(0, lam),
                                        (int)rng.range(0, mu));
        EnvElement S = sugawara2(k2, 6);
        WeylVector two = act_env(S, v, 6).degree0();
        // reduce a -> 0 and compare with the one-variable specialised action
        WeylVector one_in(Alg::One, lam, mu);
        for (const auto& [k, c] : v.terms()) one_in.add(k.first, k.second.first, k.second.second, c);
        WeylVector one = act_env(specialize_env(S), one_in, 6).degree0();
        for (const auto& [k, c] : one.terms()) {
            Scalar c2 = two.terms().count(k) ? two.terms().at(k) : Scalar();
            CHECK(Scalar(c2.specialize_a0()) == c);
        }
    }
}
