#include "sugop/scalar.hpp"
#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sugop;

TEST_CASE("scalar ring arithmetic") {
    Scalar one(1), a = Scalar::a();
    CHECK((one + a) * (one - a) == one - a * a);
    CHECK(Scalar::a(-1) * a == one);
    CHECK((Scalar(2) * a).pow(3) == Scalar::monomial(8, 3));
    CHECK((a - a).is_zero());
}

TEST_CASE("scalar division by monomials") {
    Scalar x = Scalar::monomial(Rational(3, 2), 2) + Scalar(5);
    CHECK(x / Scalar::a() == Scalar::monomial(Rational(3, 2), 1) + Scalar::monomial(5, -1));
    CHECK_THROWS_AS(x / Scalar(), DivisionError);
    CHECK_THROWS_AS(x / (Scalar(1) + Scalar::a()), DivisionError);
}

TEST_CASE("specialize at a=0") {
    CHECK((Scalar(3) + Scalar(2) * Scalar::a()).specialize_a0() == Rational(3));
    CHECK(Scalar().specialize_a0() == Rational(0));
    CHECK_THROWS_AS(Scalar::a(-1).specialize_a0(), NegativePowerOfA);
}

TEST_CASE("generalized binomials") {
    CHECK(gen_binomial(-2, 3) == Rational(-4));
    CHECK(gen_binomial(5, 0) == Rational(1));
    CHECK(gen_binomial(0, -1) == Rational(0));
    CHECK(gen_binomial(7, 2) == Rational(21));

    // Pascal's rule on the whole grid
    for (long long i = -20; i <= 20; ++i)
        for (long long k = -20; k <= 20; ++k)
            CHECK(gen_binomial(i, k) == gen_binomial(i - 1, k) + gen_binomial(i - 1, k - 1));
}

TEST_CASE("scalar ring axioms on random elements") {
    testutil::Rng rng(20240551);
    for (int trial = 0; trial < 50; ++trial) {
        Scalar x = rng.scalar(), y = rng.scalar(), z = rng.scalar();
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
    }
}

TEST_CASE("specialization is multiplicative where defined") {
    testutil::Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        Scalar x = rng.scalar_nonneg(), y = rng.scalar_nonneg();
        CHECK((x * y).specialize_a0() == x.specialize_a0() * y.specialize_a0());
    }
}

TEST_CASE("scalar text round-trip") {
    Scalar s = Scalar::monomial(Rational(-1, 4), -2) + Scalar(3) + Scalar(2) * Scalar::a();
    CHECK(s.str() == "-1/4*a^-2 + 3 + 2*a");
    CHECK(Scalar::parse(s.str()) == s);
    CHECK(Scalar::parse("0") == Scalar());
    CHECK(Scalar().str() == "0");
    CHECK(Scalar::parse("a^2") == Scalar::a(2));
    CHECK(Scalar::parse("-a") == -Scalar::a());

    testutil::Rng rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        Scalar x = rng.scalar(4, 5);
        CHECK(Scalar::parse(x.str()) == x);
    }
}
