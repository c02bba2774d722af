#include "sugop/env.hpp"
#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sugop;

namespace {

// random exact low-degree element of U_2
EnvElement random_elt(testutil::Rng& rng, int maxdeg = 2, int idx2 = 4) {
    EnvElement e(Alg::Two);
    int nterms = (int)rng.range(1, 3);
    for (int t = 0; t < nterms; ++t) {
        Mono m;
        int d = (int)rng.range(0, maxdeg);
        for (int i = 0; i < d; ++i)
            m.push_back(GenIndex{kSl2Basis[(size_t)rng.below(3)], (int)rng.range(-idx2, idx2)});
        std::sort(m.begin(), m.end());
        e.add(m, CPoly(Scalar(rng.rational())));
    }
    return e;
}

EnvElement from_affine(const AffineElt& terms, int level2) {
    EnvElement out(Alg::Two, level2);
    for (const auto& t : terms) {
        if (!t.central.is_zero()) out.add(Mono{}, CPoly(t.central).shifted_by_C());
        for (Gen g : kSl2Basis) {
            if (t.lie[g].is_zero()) continue;
            for (const auto& [b, c] : t.fun.to_basis(TwoVarFun::BasisPair::UV)) {
                int g2 = b.family == BasisFamily::U ? 2 * b.n : 2 * b.n + 1;
                if (g2 >= level2) continue;
                out.add(Mono{GenIndex{g, g2}}, CPoly(t.lie[g] * c));
            }
        }
    }
    return out;
}

// commutative product of leading terms in the associated graded algebra
EnvElement gr_product(const EnvElement& x, const EnvElement& y) {
    EnvElement r(x.alg(), std::min(x.level2(), y.level2()));
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms()) {
            Mono m = mx;
            m.insert(m.end(), my.begin(), my.end());
            std::sort(m.begin(), m.end());
            r.add(m, cx * cy);
        }
    return r;
}

} // namespace

TEST_CASE("straightening basics") {
    EnvElement eu1 = EnvElement::gen(Alg::Two, Gen::e, 2);   // e u_1
    EnvElement fum1 = EnvElement::gen(Alg::Two, Gen::f, -2); // f u_-1
    EnvElement c = commutator(eu1, fum1);
    EnvElement want = EnvElement::gen(Alg::Two, Gen::h, 0) +
                      EnvElement::central(Alg::Two, Scalar(8) * CPoly::C());
    CHECK(c == want);
    // at the critical level: h u_0 - 4
    CHECK(c.subst_critical() ==
          EnvElement::gen(Alg::Two, Gen::h, 0) + EnvElement::central(Alg::Two, CPoly(-4)));

    testutil::Rng rng(9);
    EnvElement x = random_elt(rng);
    CHECK(straighten_mul(x, EnvElement::one(Alg::Two)) == x);
    CHECK(straighten_mul(EnvElement::one(Alg::Two), x) == x);
    CHECK(commutator(x, x).is_zero());

    // already ordered, equal lie parts: unchanged
    EnvElement eu2 = EnvElement::gen(Alg::Two, Gen::e, 4);
    EnvElement eu3 = EnvElement::gen(Alg::Two, Gen::e, 6);
    EnvElement p = straighten_mul(eu2, eu3);
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms().begin()->first == Mono{GenIndex{Gen::e, 4}, GenIndex{Gen::e, 6}});
}

TEST_CASE("commutators of generators match the affine bracket") {
    testutil::Rng rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        Gen g1 = kSl2Basis[(size_t)rng.below(3)], g2 = kSl2Basis[(size_t)rng.below(3)];
        int n1 = (int)rng.range(-3, 3), n2 = (int)rng.range(-3, 3);
        bool v1 = rng.below(2) == 1, v2 = rng.below(2) == 1;
        TwoVarFun f1 = v1 ? TwoVarFun::v(n1) : TwoVarFun::u(n1);
        TwoVarFun f2 = v2 ? TwoVarFun::v(n2) : TwoVarFun::u(n2);
        EnvElement x = EnvElement::gen(Alg::Two, g1, 2 * n1 + (v1 ? 1 : 0));
        EnvElement y = EnvElement::gen(Alg::Two, g2, 2 * n2 + (v2 ? 1 : 0));
        EnvElement lhs = commutator(x, y);
        EnvElement rhs =
            from_affine(affine_bracket(AffineTerm(Sl2Elt(g1), f1), AffineTerm(Sl2Elt(g2), f2)),
                        kExactLevel2);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("associativity modulo the certified level") {
    testutil::Rng rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        EnvElement x = random_elt(rng), y = random_elt(rng), z = random_elt(rng);
        CHECK(eq_mod_level(straighten_mul(straighten_mul(x, y), z),
                           straighten_mul(x, straighten_mul(y, z))));
    }
}

TEST_CASE("level certification") {
    // exact elements stay exact
    testutil::Rng rng(29);
    EnvElement x = random_elt(rng);
    CHECK(straighten_mul(x, x).exact());

    // a tailed element times a negative generator loses level
    EnvElement s(Alg::Two, 8);
    s.add(Mono{GenIndex{Gen::e, 2}}, CPoly(Scalar(1)));
    EnvElement y = EnvElement::gen(Alg::Two, Gen::f, -4);  // u_{-2}
    CHECK(straighten_mul(s, y).level2() == 4);
    // multiplying on the left by data keeps the right tail level
    CHECK(straighten_mul(y, s).level2() == 8);
    // uncontrolled: tail level too small for a very negative index
    EnvElement low(Alg::Two, 2);
    low.add(Mono{GenIndex{Gen::e, 0}}, CPoly(Scalar(1)));
    CHECK_THROWS_AS(straighten_mul(low, EnvElement::gen(Alg::Two, Gen::f, -8)),
                    ResultLevelEmpty);
    // mixed algebra tags are rejected
    CHECK_THROWS_AS(straighten_mul(EnvElement::one(Alg::Two), EnvElement::one(Alg::One)),
                    AlgebraMismatch);
}

TEST_CASE("normal ordered pairs") {
    // :(e w_2)(f w_1): = (f w_1)(e w_2)
    auto p = normal_pair_w(Gen::e, 4, Gen::f, 2);
    REQUIRE(p.size() == 1);
    CHECK(p[0].first == GenIndex{Gen::f, 2});
    CHECK(p[0].second == GenIndex{Gen::e, 4});
    // :(e w_1)(f w_1): = (e w_1)(f w_1)
    auto q = normal_pair_w(Gen::e, 2, Gen::f, 2);
    CHECK(q[0].first == GenIndex{Gen::e, 2});
    CHECK(q[0].second == GenIndex{Gen::f, 2});
    // :(e u_h)(f y_k): = (e u_h)(f y_k) for h <= k, with y expanded afterwards
    auto r = normal_pair_uy(Gen::e, 1, Gen::f, 1);
    REQUIRE(r.size() == 2);
    CHECK(r[0].first == GenIndex{Gen::e, 2});
    CHECK(r[0].c == Scalar::a());
    CHECK(r[1].second == GenIndex{Gen::f, 3});
    auto rr = normal_pair_uy(Gen::e, 2, Gen::f, 1);  // h > k: reversed
    CHECK(rr[0].second == GenIndex{Gen::e, 4});
    CHECK(rr[1].first == GenIndex{Gen::f, 3});
}

TEST_CASE("J-degree and leading terms") {
    EnvElement x = EnvElement::gen(Alg::Two, Gen::e, 10);  // e u_5
    auto l = jdeg_lt(x);
    CHECK(l.deg == 1);
    CHECK(l.jdeg == std::vector<int>{10});
    CHECK(l.lt == x);

    EnvElement y(Alg::Two);
    y.add(Mono{GenIndex{Gen::e, 2}, GenIndex{Gen::f, 4}}, CPoly(Scalar(1)));
    y.add(Mono{GenIndex{Gen::h, 14}}, CPoly(Scalar(1)));
    auto l2 = jdeg_lt(y);
    CHECK(l2.deg == 2);
    CHECK(l2.jdeg == std::vector<int>{4, 2});
    CHECK(l2.lt.terms().size() == 1);

    CHECK_THROWS_AS(jdeg_lt(EnvElement::zero(Alg::Two)), ZeroElement);

    // Jdeg(x y) = Jdeg(x) Jdeg(y) and lt(x y) = lt(x) lt(y)
    testutil::Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        EnvElement x1 = random_elt(rng), y1 = random_elt(rng);
        if (x1.is_zero() || y1.is_zero()) continue;
        EnvElement p = straighten_mul(x1, y1);
        if (p.is_zero()) continue;
        auto lx = jdeg_lt(x1), ly = jdeg_lt(y1), lp = jdeg_lt(p);
        std::vector<int> concat = lx.jdeg;
        concat.insert(concat.end(), ly.jdeg.begin(), ly.jdeg.end());
        std::sort(concat.rbegin(), concat.rend());
        CHECK(lp.deg == lx.deg + ly.deg);
        CHECK(lp.jdeg == concat);
        CHECK(lp.lt == gr_product(lx.lt, ly.lt));
    }
}

TEST_CASE("specialisation to the one-variable algebra") {
    EnvElement eu3 = EnvElement::gen(Alg::Two, Gen::e, 6);  // e u_3
    EnvElement img = specialize_env(eu3);
    CHECK(img.alg() == Alg::One);
    REQUIRE(img.terms().size() == 1);
    CHECK(img.terms().begin()->first == Mono{GenIndex{Gen::e, 12}});  // e t^6

    // ordered monomials map to ordered monomials
    testutil::Rng rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        EnvElement x = random_elt(rng);
        EnvElement sx = specialize_env(x);
        for (const auto& [m, c] : sx.terms()) CHECK(std::is_sorted(m.begin(), m.end()));
    }
    CHECK(specialize_env(Scalar::a() * eu3).is_zero());
    CHECK_THROWS_AS(specialize_env(Scalar::a(-1) * eu3), NegativePowerOfA);
    // Sp is an algebra map
    for (int trial = 0; trial < 20; ++trial) {
        EnvElement x = random_elt(rng), y = random_elt(rng);
        CHECK(specialize_env(straighten_mul(x, y)) ==
              straighten_mul(specialize_env(x), specialize_env(y)));
    }
}

TEST_CASE("expansion of generators") {
    // E(e u_n) = e((-a)^n t^n + a^n s^n) + higher
    for (int n = -3; n <= 3; ++n) {
        EnvElement img = expand_gen(GenIndex{Gen::e, 2 * n}, 2 * n + 2);
        Rational sgn = ((n % 2) + 2) % 2 == 1 ? -1 : 1;
        EnvElement want(Alg::TS, 2 * n + 2);
        want.add(Mono{GenIndex{Gen::e, 2 * n + 1}}, CPoly(Scalar::monomial(sgn, n)));
        want.add(Mono{GenIndex{Gen::e, 2 * n}}, CPoly(Scalar::monomial(1, n)));
        CHECK(img == want);
        // E(e v_n) = e((-a)^{n+1} t^n + a^n s^{n+1}) + higher
        EnvElement imgv = expand_gen(GenIndex{Gen::e, 2 * n + 1}, 2 * n + 3);
        EnvElement wantv(Alg::TS, 2 * n + 3);
        wantv.add(Mono{GenIndex{Gen::e, 2 * n + 1}}, CPoly(Scalar::monomial(-sgn, n + 1)));
        wantv.add(Mono{GenIndex{Gen::e, 2 * n + 2}}, CPoly(Scalar::monomial(1, n)));
        CHECK(imgv == wantv);
    }
    // E is an algebra map at truncated level
    testutil::Rng rng(41);
    for (int trial = 0; trial < 15; ++trial) {
        EnvElement x = random_elt(rng, 2, 3), y = random_elt(rng, 2, 3);
        EnvElement lhs = expand_env(straighten_mul(x, y), 4);
        EnvElement rhs = straighten_mul(expand_env(x, 20), expand_env(y, 20));
        int common = std::min(lhs.level2(), rhs.level2());
        CHECK(common >= 4);  // the comparison window is nonempty
        CHECK(eq_mod_level(lhs, rhs));
    }
}

TEST_CASE("derivation action") {
    // (u_1 d)(e v_-1) = e (a v_-1 - u_0)
    EnvElement x = EnvElement::gen(Alg::Two, Gen::e, -1);  // e v_-1
    EnvElement got = derivation_act(TwoVarFun::u(1), x);
    EnvElement want = EnvElement::gen(Alg::Two, Gen::e, -1, Scalar::a())
                      - EnvElement::gen(Alg::Two, Gen::e, 0);
    CHECK(got == want);

    // Leibniz rule against products
    testutil::Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        EnvElement a = random_elt(rng, 2, 3), b = random_elt(rng, 2, 3);
        TwoVarFun f = rng.below(2) ? TwoVarFun::u((int)rng.range(-2, 2))
                                   : TwoVarFun::v((int)rng.range(-2, 2));
        EnvElement lhs = derivation_act(f, straighten_mul(a, b));
        EnvElement rhs = straighten_mul(derivation_act(f, a), b) +
                         straighten_mul(a, derivation_act(f, b));
        CHECK(eq_mod_level(lhs, rhs));
    }
}
