#ifndef SUGOP_TEST_UTIL_HPP
#define SUGOP_TEST_UTIL_HPP

#include "sugop/series.hpp"

#include <random>

namespace sugop::testutil {

// Deterministic across platforms: draw raw 64-bit words and reduce by hand.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(unsigned long long seed) : eng(seed) {}

    long long below(long long n) { return (long long)(eng() % (unsigned long long)n); }
    long long range(long long lo, long long hi) { return lo + below(hi - lo + 1); }

    Rational rational(long long m = 9) {
        long long num = range(-m, m);
        long long den = range(1, m);
        return Rational(num, den);
    }

    Scalar scalar(int nterms = 3, int emax = 3) {
        Scalar s;
        for (int i = 0; i < nterms; ++i)
            s += Scalar::monomial(rational(), (int)range(-emax, emax));
        return s;
    }

    Scalar scalar_nonneg(int nterms = 3, int emax = 3) {
        Scalar s;
        for (int i = 0; i < nterms; ++i)
            s += Scalar::monomial(rational(), (int)range(0, emax));
        return s;
    }

    TwoVarFun fun2(int nterms = 4, int emax = 4) {
        TwoVarFun f;
        for (int i = 0; i < nterms; ++i)
            f.add((int)range(-emax, emax), (int)range(-emax, emax), Scalar(rational()));
        return f;
    }
};

} // namespace sugop::testutil

#endif
