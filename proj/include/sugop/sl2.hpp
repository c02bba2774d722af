#ifndef SUGOP_SL2_HPP
#define SUGOP_SL2_HPP

#include "sugop/series.hpp"

#include <array>
#include <vector>

namespace sugop {

// Basis of sl(2) with [h,e] = 2e, [h,f] = -2f, [e,f] = h,
// totally ordered e < h < f.
enum class Gen : int { e = 0, h = 1, f = 2 };

inline constexpr std::array<Gen, 3> kSl2Basis{Gen::e, Gen::h, Gen::f};

inline char gen_letter(Gen g) {
    switch (g) {
        case Gen::e: return 'e';
        case Gen::h: return 'h';
        case Gen::f: return 'f';
    }
    return '?';
}

// Element of sl(2) with Scalar coefficients on (e, h, f).
struct Sl2Elt {
    std::array<Scalar, 3> c{};

    Sl2Elt() = default;
    Sl2Elt(Gen g) { c[(int)g] = Scalar(1); }

    Scalar& operator[](Gen g) { return c[(int)g]; }
    const Scalar& operator[](Gen g) const { return c[(int)g]; }

    bool is_zero() const {
        return c[0].is_zero() && c[1].is_zero() && c[2].is_zero();
    }

    friend Sl2Elt operator+(const Sl2Elt& x, const Sl2Elt& y) {
        Sl2Elt r;
        for (int i = 0; i < 3; ++i) r.c[i] = x.c[i] + y.c[i];
        return r;
    }
    friend Sl2Elt operator-(const Sl2Elt& x, const Sl2Elt& y) {
        Sl2Elt r;
        for (int i = 0; i < 3; ++i) r.c[i] = x.c[i] - y.c[i];
        return r;
    }
    friend Sl2Elt operator*(const Scalar& q, const Sl2Elt& x) {
        Sl2Elt r;
        for (int i = 0; i < 3; ++i) r.c[i] = q * x.c[i];
        return r;
    }
    friend bool operator==(const Sl2Elt& x, const Sl2Elt& y) { return x.c == y.c; }
};

// Bracket on basis generators, as coefficients on (e, h, f).
inline Sl2Elt sl2_bracket(Gen x, Gen y) {
    Sl2Elt r;
    if (x == y) return r;
    auto set = [&r](Gen g, int q) { r[g] = Scalar(q); };
    if (x == Gen::h && y == Gen::e) set(Gen::e, 2);
    else if (x == Gen::e && y == Gen::h) set(Gen::e, -2);
    else if (x == Gen::h && y == Gen::f) set(Gen::f, -2);
    else if (x == Gen::f && y == Gen::h) set(Gen::f, 2);
    else if (x == Gen::e && y == Gen::f) set(Gen::h, 1);
    else if (x == Gen::f && y == Gen::e) set(Gen::h, -1);
    return r;
}

inline Sl2Elt sl2_bracket(const Sl2Elt& x, const Sl2Elt& y) {
    Sl2Elt r;
    for (Gen a : kSl2Basis)
        for (Gen b : kSl2Basis) {
            if (x[a].is_zero() || y[b].is_zero()) continue;
            r = r + (x[a] * y[b]) * sl2_bracket(a, b);
        }
    return r;
}

// Killing form: trace form of the adjoint representation.
// kappa(e,f) = 4, kappa(h,h) = 8, all other basis pairs 0.
inline Scalar killing(const Sl2Elt& x, const Sl2Elt& y) {
    Scalar r;
    r += Scalar(4) * (x[Gen::e] * y[Gen::f] + x[Gen::f] * y[Gen::e]);
    r += Scalar(8) * (x[Gen::h] * y[Gen::h]);
    return r;
}

// Killing form computed from the adjoint action; used as an oracle in tests.
inline Rational killing_adjoint(Gen x, Gen y) {
    // trace of ad(x) ad(y) on the ordered basis (e, h, f)
    Rational tr = 0;
    for (Gen b : kSl2Basis) {
        Sl2Elt w = sl2_bracket(Sl2Elt(x), sl2_bracket(Sl2Elt(y), Sl2Elt(b)));
        tr += w[b].specialize_a0();
    }
    return tr;
}

// Pairs (J^alpha, J_alpha) with kappa(J^alpha, J_beta) = delta.
inline std::vector<std::pair<Sl2Elt, Sl2Elt>> dual_basis() {
    std::vector<std::pair<Sl2Elt, Sl2Elt>> out;
    out.push_back({Sl2Elt(Gen::e), Scalar(Rational(1, 4)) * Sl2Elt(Gen::f)});
    out.push_back({Sl2Elt(Gen::h), Scalar(Rational(1, 8)) * Sl2Elt(Gen::h)});
    out.push_back({Sl2Elt(Gen::f), Scalar(Rational(1, 4)) * Sl2Elt(Gen::e)});
    return out;
}

// x f + central, an element of the affine algebra g (x) K2 + A C.
struct AffineTerm {
    Sl2Elt lie;
    TwoVarFun fun;
    Scalar central;  // coefficient of C

    AffineTerm() = default;
    AffineTerm(Sl2Elt l, TwoVarFun f) : lie(std::move(l)), fun(std::move(f)) {}
};

// A finite sum of affine terms; the bracket below keeps C symbolic.
using AffineElt = std::vector<AffineTerm>;

enum class ResTag { Res2, ResT, ResS };

// [x f, y g] = [x,y] fg + res(f' g) kappa(x,y) C  (two-variable residue).
inline AffineElt affine_bracket(const AffineTerm& x, const AffineTerm& y,
                                ResTag tag = ResTag::Res2) {
    if (tag != ResTag::Res2)
        throw AlgebraMismatch("AffineTerm carries a two-variable function; use Res2");
    AffineElt out;
    AffineTerm main(sl2_bracket(x.lie, y.lie), mul2(x.fun, y.fun));
    AffineTerm cterm;
    cterm.central = res2(mul2(deriv2(x.fun), y.fun)) * killing(x.lie, y.lie);
    if (!main.lie.is_zero() && !main.fun.is_zero()) out.push_back(main);
    if (!cterm.central.is_zero()) out.push_back(cterm);
    return out;
}

// One-variable version for the algebras over Q[t^{+-1}] / Q[s^{+-1}].
inline AffineElt affine_bracket1(const Sl2Elt& x, const OneVarSeries& f,
                                 const Sl2Elt& y, const OneVarSeries& g,
                                 ResTag tag) {
    if (tag == ResTag::Res2 || (tag == ResTag::ResT) != (f.var() == Var::t))
        throw AlgebraMismatch("residue tag does not match the function variable");
    if (f.var() != g.var())
        throw AlgebraMismatch("mixed-variable one-variable bracket");
    AffineElt out;
    AffineTerm cterm;
    OneVarSeries prod = f.deriv() * g;
    cterm.central = prod.res() * killing(x, y);
    AffineTerm main;
    main.lie = sl2_bracket(x, y);
    // carry the product function over to a TwoVarFun in the single variable
    OneVarSeries prod_fun = f * g;
    for (const auto& [e, c] : prod_fun.terms()) {
        if (f.var() == Var::t)
            main.fun.add(e, 0, c);
        else
            main.fun.add(0, e, c);
    }
    if (!main.lie.is_zero() && !main.fun.is_zero()) out.push_back(main);
    if (!cterm.central.is_zero()) out.push_back(cterm);
    return out;
}

// Sum of [J^alpha f, J_alpha g] over the dual pairs; Casimir-type identity.
inline AffineElt casimir_bracket_sum(const TwoVarFun& f, const TwoVarFun& g) {
    AffineElt total;
    Sl2Elt lie_sum;
    Scalar central_sum;
    for (const auto& [up, down] : dual_basis()) {
        AffineTerm xf(up, f), yg(down, g);
        for (const auto& term : affine_bracket(xf, yg)) {
            lie_sum = lie_sum + term.lie;  // lie parts share the same function fg
            central_sum += term.central;
        }
    }
    if (!lie_sum.is_zero()) total.push_back(AffineTerm(lie_sum, mul2(f, g)));
    if (!central_sum.is_zero()) {
        AffineTerm c;
        c.central = central_sum;
        total.push_back(c);
    }
    return total;
}

} // namespace sugop

#endif
