#include "sugop/sl2.hpp"
#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sugop;

TEST_CASE("jacobi identity for sl2") {
    for (Gen a : kSl2Basis)
        for (Gen b : kSl2Basis)
            for (Gen c : kSl2Basis) {
                Sl2Elt s = sl2_bracket(Sl2Elt(a), sl2_bracket(Sl2Elt(b), Sl2Elt(c)))
                           + sl2_bracket(Sl2Elt(b), sl2_bracket(Sl2Elt(c), Sl2Elt(a)))
                           + sl2_bracket(Sl2Elt(c), sl2_bracket(Sl2Elt(a), Sl2Elt(b)));
                CHECK(s.is_zero());
            }
}

TEST_CASE("killing form against the adjoint-trace oracle") {
    CHECK(killing(Sl2Elt(Gen::e), Sl2Elt(Gen::f)) == Scalar(4));
    CHECK(killing(Sl2Elt(Gen::h), Sl2Elt(Gen::h)) == Scalar(8));
    CHECK(killing(Sl2Elt(Gen::e), Sl2Elt(Gen::e)) == Scalar());
    for (Gen a : kSl2Basis)
        for (Gen b : kSl2Basis)
            CHECK(killing(Sl2Elt(a), Sl2Elt(b)) == Scalar(killing_adjoint(a, b)));
}

TEST_CASE("dual basis") {
    auto pairs = dual_basis();
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0].second == Scalar(Rational(1, 4)) * Sl2Elt(Gen::f));
    CHECK(pairs[1].second == Scalar(Rational(1, 8)) * Sl2Elt(Gen::h));
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            CHECK(killing(pairs[i].first, pairs[j].second) == (i == j ? Scalar(1) : Scalar()));
}

TEST_CASE("casimir identities") {
    auto pairs = dual_basis();
    for (Gen xg : kSl2Basis) {
        Sl2Elt x(xg);
        // sum [J^a, [J_a, x]] = x
        Sl2Elt s;
        for (const auto& [up, down] : pairs) s = s + sl2_bracket(up, sl2_bracket(down, x));
        CHECK(s == x);
        // sum kappa([J^a, x], J_a) = 0
        Scalar k;
        for (const auto& [up, down] : pairs) k += killing(sl2_bracket(up, x), down);
        CHECK(k.is_zero());
        // sum [J^a, x] (x) J_a + J^a (x) [J_a, x] = 0, as a 3x3 coefficient matrix
        for (Gen p : kSl2Basis)
            for (Gen q : kSl2Basis) {
                Scalar entry;
                for (const auto& [up, down] : pairs) {
                    entry += sl2_bracket(up, x)[p] * down[q];
                    entry += up[p] * sl2_bracket(down, x)[q];
                }
                CHECK(entry.is_zero());
            }
    }
}

TEST_CASE("affine bracket") {
    // [e u_1, f u_-1] = h u_0 + 8 C
    AffineTerm x(Sl2Elt(Gen::e), TwoVarFun::u(1));
    AffineTerm y(Sl2Elt(Gen::f), TwoVarFun::u(-1));
    AffineElt b = affine_bracket(x, y);
    REQUIRE(b.size() == 2);
    CHECK(b[0].lie == Sl2Elt(Gen::h));
    CHECK(b[0].fun == TwoVarFun::u(0));
    CHECK(b[1].central == Scalar(8));
    // antisymmetry on the nose
    AffineTerm z(Sl2Elt(Gen::h), TwoVarFun::v(2));
    CHECK(affine_bracket(z, z).empty());
    // mismatched residue tag
    CHECK_THROWS_AS(affine_bracket(x, y, ResTag::ResT), AlgebraMismatch);
}

TEST_CASE("one-variable affine bracket") {
    // [e t, f t^-1] = h + 4 C  (res(t' t^-1) = 1, kappa(e,f) = 4)
    OneVarSeries f(Var::t, kExactOrder), g(Var::t, kExactOrder);
    f.add(1, Scalar(1));
    g.add(-1, Scalar(1));
    AffineElt b = affine_bracket1(Sl2Elt(Gen::e), f, Sl2Elt(Gen::f), g, ResTag::ResT);
    REQUIRE(b.size() == 2);
    CHECK(b[0].lie == Sl2Elt(Gen::h));
    CHECK(b[0].fun == TwoVarFun::monomial(Scalar(1), 0, 0));
    CHECK(b[1].central == Scalar(4));
    // tag must match the variable
    CHECK_THROWS_AS(affine_bracket1(Sl2Elt(Gen::e), f, Sl2Elt(Gen::f), g, ResTag::ResS),
                    AlgebraMismatch);
    OneVarSeries fs(Var::s, kExactOrder);
    fs.add(2, Scalar(1));
    CHECK_THROWS_AS(affine_bracket1(Sl2Elt(Gen::e), f, Sl2Elt(Gen::f), fs, ResTag::ResT),
                    AlgebraMismatch);
}

TEST_CASE("affine jacobi identity") {
    testutil::Rng rng(5150);
    auto rand_term = [&rng]() {
        Gen g = kSl2Basis[(size_t)rng.below(3)];
        int n = (int)rng.range(-3, 3);
        TwoVarFun f = rng.below(2) == 0 ? TwoVarFun::u(n) : TwoVarFun::v(n);
        return AffineTerm(Sl2Elt(g), f);
    };
    auto bracket_elt = [](const AffineElt& xs, const AffineTerm& y) {
        AffineElt out;
        for (const auto& x : xs) {
            if (x.lie.is_zero()) continue;  // central terms bracket to zero
            for (auto& t : affine_bracket(x, y)) out.push_back(t);
        }
        return out;
    };
    auto collapse = [](const AffineElt& xs) {
        // total coefficient of each sl2 basis element as a TwoVarFun triple
        std::array<TwoVarFun, 3> lie;
        Scalar central;
        for (const auto& t : xs) {
            for (Gen g : kSl2Basis) lie[(int)g] = lie[(int)g] + t.lie[g] * t.fun;
            central += t.central;
        }
        return std::make_pair(lie, central);
    };
    for (int trial = 0; trial < 30; ++trial) {
        AffineTerm x = rand_term(), y = rand_term(), z = rand_term();
        // cyclic sum [[x,y],z] + [[y,z],x] + [[z,x],y] must vanish
        AffineElt s = bracket_elt(affine_bracket(x, y), z);
        for (auto& t : bracket_elt(affine_bracket(y, z), x)) s.push_back(t);
        for (auto& t : bracket_elt(affine_bracket(z, x), y)) s.push_back(t);
        auto [lie, central] = collapse(s);
        for (const auto& f : lie) CHECK(f.is_zero());
        CHECK(central.is_zero());
    }
}

TEST_CASE("casimir bracket sums") {
    testutil::Rng rng(808);
    // sum_a [J^a f, J_a g] = 3 Res2(f' g) C  (= -(3/2) Res2(f' g) at C = -1/2)
    for (int trial = 0; trial < 20; ++trial) {
        TwoVarFun f = rng.fun2(3, 3), g = rng.fun2(3, 3);
        auto total = casimir_bracket_sum(f, g);
        Scalar expect = Scalar(3) * res2(mul2(deriv2(f), g));
        Scalar central;
        bool lie_nonzero = false;
        for (const auto& t : total) {
            central += t.central;
            if (!t.lie.is_zero()) lie_nonzero = true;
        }
        CHECK_FALSE(lie_nonzero);
        CHECK(central == expect);
    }

    auto crit = [](const AffineElt& xs) {  // central coefficient at C = -1/2
        Scalar c;
        for (const auto& t : xs) c += t.central * Scalar(Rational(-1, 2));
        return c;
    };
    for (int n = -4; n <= 4; ++n)
        for (int m = -4; m <= 4; ++m) {
            auto d = [](bool b) { return b ? Scalar(1) : Scalar(); };
            CHECK(crit(casimir_bracket_sum(TwoVarFun::u(n), TwoVarFun::u(m))) ==
                  Scalar(-3 * n) * d(m == -n));
            CHECK(crit(casimir_bracket_sum(TwoVarFun::u(n), TwoVarFun::v(m))) ==
                  Scalar::monomial(Rational(3 * n, 2), 1) * d(m == -n));
            CHECK(crit(casimir_bracket_sum(TwoVarFun::u(n), TwoVarFun::y(m))) ==
                  Scalar::monomial(Rational(-3 * n, 2), 1) * d(m == -n));
            CHECK(crit(casimir_bracket_sum(TwoVarFun::v(n), TwoVarFun::v(m))) ==
                  Scalar(Rational(-3 * (2 * n + 1), 2)) * d(m == -1 - n)
                      + Scalar::monomial(Rational(-3 * n, 2), 2) * d(m == -n));
        }
}
