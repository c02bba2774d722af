#ifndef SUGOP_OPERS_HPP
#define SUGOP_OPERS_HPP

#include "sugop/series.hpp"

#include <map>
#include <sstream>
#include <vector>

namespace sugop {

// Coordinate families on the spaces of opers:
//   Z (diagonal z_i), ZT/ZS (t- and s-side z^t_i, z^s_i),
//   A/B (a_i, b_i: u/v-basis coordinates), Alpha/Beta (u/y-basis), Psi.
enum class Fam { Z, ZT, ZS, A, B, Alpha, Beta, Psi };

struct CoordVar {
    Fam fam;
    int idx;
    friend bool operator==(const CoordVar&, const CoordVar&) = default;
    friend bool operator<(const CoordVar& x, const CoordVar& y) {
        if (x.fam != y.fam) return (int)x.fam < (int)y.fam;
        return x.idx < y.idx;
    }
};

inline std::string coord_name(const CoordVar& v) {
    std::ostringstream os;
    switch (v.fam) {
        case Fam::Z: os << "z"; break;
        case Fam::ZT: os << "zt"; break;
        case Fam::ZS: os << "zs"; break;
        case Fam::A: os << "a"; break;
        case Fam::B: os << "b"; break;
        case Fam::Alpha: os << "alpha"; break;
        case Fam::Beta: os << "beta"; break;
        case Fam::Psi: os << "psi"; break;
    }
    os << "[" << v.idx << "]";
    return os.str();
}

// Weighted degree of a coordinate (Definition of the grading; a itself
// carries degree -1, accounted for separately).
inline int coord_degree(const CoordVar& v) {
    switch (v.fam) {
        case Fam::Z:
        case Fam::ZT:
        case Fam::ZS: return v.idx + 2;
        case Fam::A:
        case Fam::Alpha: return 2 * v.idx + 2;
        case Fam::B:
        case Fam::Beta: return 2 * v.idx + 3;
        case Fam::Psi: return v.idx + 1;
    }
    return 0;
}

using Expo = std::map<CoordVar, int>;  // exponent vector, no zero entries

// Sparse multivariate polynomial over Q[a,a^-1] in graded coordinates.
class OperPoly {
public:
    OperPoly() = default;
    OperPoly(const Scalar& s) {
        if (!s.is_zero()) m_[{}] = s;
    }
    OperPoly(long long n) : OperPoly(Scalar(n)) {}
    static OperPoly var(CoordVar v) {
        OperPoly p;
        p.m_[{{v, 1}}] = Scalar(1);
        return p;
    }
    static OperPoly var(Fam f, int idx) { return var(CoordVar{f, idx}); }

    const std::map<Expo, Scalar>& terms() const { return m_; }
    bool is_zero() const { return m_.empty(); }

    void add(const Expo& e, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = m_.find(e);
        if (it == m_.end()) {
            m_[e] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) m_.erase(it);
        }
    }

    friend OperPoly operator+(const OperPoly& x, const OperPoly& y) {
        OperPoly r = x;
        for (const auto& [e, c] : y.m_) r.add(e, c);
        return r;
    }
    friend OperPoly operator-(const OperPoly& x, const OperPoly& y) {
        OperPoly r = x;
        for (const auto& [e, c] : y.m_) r.add(e, -c);
        return r;
    }
    friend OperPoly operator-(const OperPoly& x) { return OperPoly() - x; }
    friend OperPoly operator*(const Scalar& s, const OperPoly& x) {
        OperPoly r;
        for (const auto& [e, c] : x.m_) r.add(e, s * c);
        return r;
    }
    friend OperPoly operator*(const OperPoly& x, const OperPoly& y) {
        OperPoly r;
        for (const auto& [e1, c1] : x.m_)
            for (const auto& [e2, c2] : y.m_) {
                Expo e = e1;
                for (const auto& [v, k] : e2) {
                    auto it = e.find(v);
                    if (it == e.end())
                        e[v] = k;
                    else
                        it->second += k;
                }
                r.add(e, c1 * c2);
            }
        return r;
    }
    OperPoly pow(unsigned n) const {
        OperPoly r(1);
        for (unsigned i = 0; i < n; ++i) r = r * *this;
        return r;
    }
    friend bool operator==(const OperPoly& x, const OperPoly& y) { return x.m_ == y.m_; }

    // substitute a Scalar value for a variable
    OperPoly subst(CoordVar v, const Scalar& value) const {
        OperPoly r;
        for (const auto& [e, c] : m_) {
            auto it = e.find(v);
            if (it == e.end()) {
                r.add(e, c);
                continue;
            }
            Expo e2 = e;
            e2.erase(v);
            r.add(e2, c * value.pow((unsigned)it->second));
        }
        return r;
    }

    // substitute polynomials for variables (missing vars stay)
    OperPoly subst(const std::map<CoordVar, OperPoly>& sub) const {
        OperPoly r;
        for (const auto& [e, c] : m_) {
            OperPoly term(c);
            for (const auto& [v, k] : e) {
                auto it = sub.find(v);
                OperPoly base = it == sub.end() ? var(v) : it->second;
                term = term * base.pow((unsigned)k);
            }
            r = r + term;
        }
        return r;
    }

    // rename variables
    OperPoly rename(const std::map<CoordVar, CoordVar>& names) const {
        OperPoly r;
        for (const auto& [e, c] : m_) {
            Expo e2;
            for (const auto& [v, k] : e) {
                auto it = names.find(v);
                e2[it == names.end() ? v : it->second] += k;
            }
            r.add(e2, c);
        }
        return r;
    }

    Scalar evaluate(const std::map<CoordVar, Scalar>& point) const {
        Scalar r;
        for (const auto& [e, c] : m_) {
            Scalar t = c;
            for (const auto& [v, k] : e) {
                auto it = point.find(v);
                Scalar val = it == point.end() ? Scalar() : it->second;
                t *= val.pow((unsigned)k);
            }
            r += t;
        }
        return r;
    }

    // specialize a -> 0 in every coefficient (requires nonnegative a-powers)
    OperPoly specialize_a0() const {
        OperPoly r;
        for (const auto& [e, c] : m_) r.add(e, Scalar(c.specialize_a0()));
        return r;
    }

    std::vector<CoordVar> variables() const {
        std::vector<CoordVar> vs;
        for (const auto& [e, c] : m_)
            for (const auto& [v, k] : e)
                if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
        std::sort(vs.begin(), vs.end());
        return vs;
    }

    int degree_in(CoordVar v) const {
        int d = 0;
        for (const auto& [e, c] : m_) {
            auto it = e.find(v);
            if (it != e.end()) d = std::max(d, it->second);
        }
        return d;
    }

    // every term (including the a-exponents of its coefficient, of degree -1)
    // has the given weighted degree
    bool is_homogeneous(int target) const {
        for (const auto& [e, c] : m_) {
            int base = 0;
            for (const auto& [v, k] : e) base += coord_degree(v) * k;
            for (const auto& [aexp, q] : c.terms())
                if (base - aexp != target) return false;
        }
        return true;
    }

    std::string str() const {
        if (m_.empty()) return "0";
        // sort: weighted degree, then exponent vectors lexicographically by
        // variable order with higher power first
        std::vector<std::pair<Expo, Scalar>> items(m_.begin(), m_.end());
        auto wdeg = [](const Expo& e) {
            int d = 0;
            for (const auto& [v, k] : e) d += coord_degree(v) * k;
            return d;
        };
        std::sort(items.begin(), items.end(), [&](const auto& x, const auto& y) {
            int dx = wdeg(x.first), dy = wdeg(y.first);
            if (dx != dy) return dx < dy;
            auto ix = x.first.begin(), iy = y.first.begin();
            while (ix != x.first.end() && iy != y.first.end()) {
                if (ix->first != iy->first) return ix->first < iy->first;
                if (ix->second != iy->second) return ix->second > iy->second;
                ++ix, ++iy;
            }
            return (ix != x.first.end());
        });
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : items) {
            std::string coefs;
            bool neg = false;
            if (c.is_constant() && !c.is_zero()) {
                Rational q = c.coeff(0);
                neg = q < 0;
                Rational aq = neg ? Rational(-q) : q;
                if (aq != 1 || e.empty()) coefs = to_string(aq);
            } else {
                coefs = "(" + c.str() + ")";
            }
            if (first) {
                if (neg) os << "-";
                first = false;
            } else {
                os << (neg ? " - " : " + ");
            }
            bool star = false;
            if (!coefs.empty()) {
                os << coefs;
                star = true;
            }
            for (const auto& [v, k] : e) {
                if (star) os << "*";
                os << coord_name(v);
                if (k != 1) os << "^" << k;
                star = true;
            }
        }
        return os.str();
    }

private:
    std::map<Expo, Scalar> m_;
};

// ---------------------------------------------------------------------------
// A_lambda = lambda^2/4 + lambda/2.
inline Rational a_lambda(long long lam) {
    if (lam < 0) throw WeightConstraint("A_lambda needs a natural weight");
    return Rational(lam * lam, 4) + Rational(lam, 2);
}

// The psi-variables of the defining system, eliminated recursively:
//   psi_0 = -z_{-1}/lambda,  psi_{k+1} = (sum_{i+j=k} psi_i psi_j - z_k)/(lambda-1-k).
inline std::vector<OperPoly> plambda_psis(long long lam, Fam zfam = Fam::Z) {
    if (lam < 1) throw WeightConstraint("P_lambda needs lambda >= 1");
    std::vector<OperPoly> psi;
    psi.push_back(Scalar(Rational(-1, lam)) * OperPoly::var(zfam, -1));
    for (long long k = 0; k + 1 < lam; ++k) {
        OperPoly s;
        for (long long i = 0; i <= k; ++i) s = s + psi[i] * psi[k - i];
        s = s - OperPoly::var(zfam, (int)k);
        psi.push_back(Scalar(Rational(1, lam - 1 - k)) * s);
    }
    return psi;
}

// P_lambda(z_{-1}, ..., z_{lambda-2}) = sum_{i+j=lambda-1} psi_i psi_j.
inline OperPoly p_lambda(long long lam, Fam zfam = Fam::Z) {
    auto psi = plambda_psis(lam, zfam);
    OperPoly r;
    for (long long i = 0; i < lam; ++i) r = r + psi[i] * psi[lam - 1 - i];
    return r;
}

// ---------------------------------------------------------------------------
// Membership of a series in Op_1^lambda, by the closed equation and by the
// psi-recursion; the two routes must agree.

enum class Membership { Yes, No, UndecidableAtOrder };

inline Membership op1_member(const OneVarSeries& f, long long lam) {
    if (f.order() < lam) return Membership::UndecidableAtOrder;
    for (const auto& [e, c] : f.terms())
        if (e < -2 && !c.is_zero()) return Membership::No;
    auto z = [&f](long long n) { return f.coeff((int)n); };
    bool closed;
    if (z(-2) != Scalar(a_lambda(lam))) {
        closed = false;
    } else {
        // P_0 is the empty sum
        Scalar p;
        if (lam >= 1) {
            std::map<CoordVar, Scalar> pt;
            for (long long n = -1; n <= lam - 2; ++n) pt[{Fam::Z, (int)n}] = z(n);
            p = p_lambda(lam).evaluate(pt);
        }
        closed = z(lam - 1) == p;
    }
    // independent oracle: f = A/t^2 - (lambda/t) psi + psi^2 + psi', psi in R[[t]]
    bool recur;
    if (z(-2) != Scalar(a_lambda(lam))) {
        recur = false;
    } else {
        std::vector<Scalar> psi;
        // z_{k-1} = (k - lambda) psi_k + sum_{i+j=k-1} psi_i psi_j
        for (long long k = 0; k < lam; ++k) {
            Scalar s;
            for (long long i = 0; i + 1 <= k; ++i) s += psi[i] * psi[k - 1 - i];
            psi.push_back((z(k - 1) - s) / Scalar(k - lam));
        }
        Scalar s;
        for (long long i = 0; i < lam; ++i) s += psi[i] * psi[lam - 1 - i];
        recur = z(lam - 1) == s;
    }
    if (closed != recur)
        throw SugopError("op1_member: closed equation and psi-recursion disagree");
    return closed ? Membership::Yes : Membership::No;
}

// ---------------------------------------------------------------------------
// Coordinate changes between the z^t/z^s and the a_i/b_i coordinates:
//   E_t(z^t_n) = sum_i binom(i,n-i)(-a)^{2i-n} a_i
//              + sum_i binom(i+1,n-i)(-a)^{2i-n+1} b_i,
//   E_s(z^s_n) = sum_i binom(i,n-i) a^{2i-n} a_i
//              + sum_{i<=n-1} binom(i,n-i-1) a^{2i-n+1} b_i,
// with a_i = b_i = 0 below the floor.
inline OperPoly coord_expand(Var side, int n, int floorN) {
    OperPoly r;
    auto neg_pow = [](int e) {  // (-a)^e as a Scalar
        Rational sign = ((e % 2) + 2) % 2 == 1 ? Rational(-1) : Rational(1);
        return Scalar::monomial(sign, e);
    };
    for (int i = -floorN; i <= n; ++i) {
        Rational ba = gen_binomial(i, n - i);
        if (ba != 0) {
            Scalar coef = side == Var::t ? neg_pow(2 * i - n) : Scalar::monomial(1, 2 * i - n);
            r.add({{CoordVar{Fam::A, i}, 1}}, coef * Scalar(ba));
        }
        Rational bb = side == Var::t ? gen_binomial(i + 1, n - i) : gen_binomial(i, n - i - 1);
        if (bb != 0 && (side == Var::t || i <= n - 1)) {
            Scalar coef = side == Var::t ? neg_pow(2 * i - n + 1) : Scalar::monomial(1, 2 * i - n + 1);
            r.add({{CoordVar{Fam::B, i}, 1}}, coef * Scalar(bb));
        }
    }
    return r;
}

// Sp-pullback on diagonal coordinates: z_{2i} <-> a_i, z_{2i+1} <-> b_i.
inline CoordVar coord_diag(int n) {
    if (((n % 2) + 2) % 2 == 0) return CoordVar{Fam::A, n / 2};
    return CoordVar{Fam::B, (n - 1) / 2};
}

// ---------------------------------------------------------------------------
// f_lambda: substitute a_{-2} = a^2 A_mu, b_{-2} = a (A_mu - A_lambda) into
// a^{lambda+1} E_t(z^t_{lambda-1} - P_lambda(z^t)), specialise a to 0 and
// rewrite through the diagonal coordinates.  Univariate in z_{-2}.
inline OperPoly f_lambda(long long lam, long long mu) {
    if (lam < 0 || mu < 0) throw WeightConstraint("f_lambda needs natural weights");
    const Scalar am2 = Scalar::monomial(a_lambda(mu), 2);
    const Scalar bm2 = Scalar::monomial(a_lambda(mu) - a_lambda(lam), 1);
    // normalised expansions N_n = a^{n+2} E_t(z^t_n) with the -2 slot fixed
    auto N = [&](int n) {
        OperPoly e = coord_expand(Var::t, n, 2);
        e = e.subst(CoordVar{Fam::A, -2}, am2);
        e = e.subst(CoordVar{Fam::B, -2}, bm2);
        return Scalar::monomial(1, n + 2) * e;
    };
    OperPoly q = N((int)lam - 1);
    if (lam >= 1) {
        std::map<CoordVar, OperPoly> sub;
        for (int n = -1; n <= (int)lam - 2; ++n) sub[{Fam::Z, n}] = N(n);
        q = q - p_lambda(lam).subst(sub);
    }
    OperPoly f0 = q.specialize_a0();  // Q_lambda has coefficients in Q[a]
    // rename surviving a_i, b_i to diagonal z-coordinates
    std::map<CoordVar, CoordVar> names;
    for (const auto& v : f0.variables()) {
        if (v.fam == Fam::A) names[v] = CoordVar{Fam::Z, 2 * v.idx};
        if (v.fam == Fam::B) names[v] = CoordVar{Fam::Z, 2 * v.idx + 1};
    }
    return f0.rename(names);
}

// ---------------------------------------------------------------------------
// Hypergeometric elements of Op_2^{lambda,mu}:
//   f = a^2 A_mu u_{-2} + a (A_mu - A_lambda) v_{-2} + A_nu u_{-1}.

struct OperElement {
    std::map<int, std::pair<Scalar, Scalar>> coords;  // i -> (a_i, b_i)
    int floorN = 2;

    TwoVarFun fun() const {
        TwoVarFun f;
        for (const auto& [i, ab] : coords)
            f = f + ab.first * TwoVarFun::u(i) + ab.second * TwoVarFun::v(i);
        return f;
    }
};

inline void check_hyper_weights(long long lam, long long mu, long long nu) {
    long long lo = lam > mu ? lam - mu : mu - lam;
    if (nu < lo || nu > lam + mu || ((nu + lam + mu) % 2) != 0)
        throw WeightConstraint("nu must lie in the Clebsch-Gordan range of (lambda, mu)");
}

inline OperElement hyper_oper(long long lam, long long mu, long long nu) {
    check_hyper_weights(lam, mu, nu);
    OperElement e;
    e.coords[-2] = {Scalar::monomial(a_lambda(mu), 2),
                    Scalar::monomial(a_lambda(mu) - a_lambda(lam), 1)};
    e.coords[-1] = {Scalar(a_lambda(nu)), Scalar()};
    return e;
}

// Polynomial solution of the hypergeometric equation with singularities at
// 0, a, infinity:  phi = sum_{n=0}^{j} (alpha)_n (beta)_n / (gamma)_n t^n a^{-n} / n!
// with alpha = -j, beta = j-lambda-mu-1, gamma = -lambda, nu = lambda+mu-2j.
// The overall prefactor (-a)^{mu/2} is dropped.
inline OneVarSeries hyper_series(long long lam, long long mu, long long nu) {
    check_hyper_weights(lam, mu, nu);
    if (lam > mu) throw WeightConstraint("hyper_series needs lambda <= mu");
    long long j = (lam + mu - nu) / 2;
    if (j > lam) throw WeightConstraint("nu too small: j must be <= lambda");
    Rational alpha = Rational(-j), beta = Rational(j - lam - mu - 1), gamma = Rational(-lam);
    OneVarSeries phi(Var::t, kExactOrder);
    for (long long n = 0; n <= j; ++n) {
        Rational num = pochhammer(alpha, n) * pochhammer(beta, n);
        Rational den = pochhammer(gamma, n) * Rational(factorial(n));
        phi.add((int)n, Scalar::monomial(num / den, (int)-n));
    }
    return phi;
}

// Residual of t(t-a) phi'' - ((lambda+mu) t - a lambda) phi' + (A_{lambda+mu} - B) phi.
inline OneVarSeries hyper_ode_residual(const OneVarSeries& phi, long long lam, long long mu,
                                       const Rational& B) {
    OneVarSeries d1 = phi.deriv(), d2 = d1.deriv();
    OneVarSeries tts(Var::t, kExactOrder);  // t^2 - a t
    tts.add(2, Scalar(1));
    tts.add(1, Scalar::monomial(-1, 1));
    OneVarSeries lin(Var::t, kExactOrder);  // (lam+mu) t - a lam
    lin.add(1, Scalar(lam + mu));
    lin.add(0, Scalar::monomial(-lam, 1));
    OneVarSeries c(Var::t, kExactOrder);
    c.add(0, Scalar(a_lambda(lam + mu) - B));
    return tts * d2 - lin * d1 + c * phi;
}

// ---------------------------------------------------------------------------
// Action of vector fields on the alpha/beta coordinates, computed from the
// pairing  (u d . F)(f) = -dF_f[ 2 u' f + u f' - (1/2) u''' ]  and res2
// duality: alpha_i(g) = Res2(g v_{-i-1}),  beta_i(g) = Res2(g u_{-i-1}).

struct CoordTarget {
    bool is_beta;
    int idx;
};

// Returns the affine polynomial in alpha_j / beta_j (j in [jlo, jhi]) plus a
// constant term.
inline OperPoly der_on_coord(const TwoVarFun& field, CoordTarget target, int jlo, int jhi) {
    TwoVarFun dual = target.is_beta ? TwoVarFun::u(-target.idx - 1)
                                    : TwoVarFun::v(-target.idx - 1);
    TwoVarFun fdot = deriv2(field);
    TwoVarFun fddd = deriv2(deriv2(fdot));
    OperPoly out;
    for (int jj = jlo; jj <= jhi; ++jj) {
        for (int basis = 0; basis < 2; ++basis) {
            TwoVarFun bj = basis == 0 ? TwoVarFun::u(jj) : TwoVarFun::y(jj);
            TwoVarFun g = Scalar(2) * mul2(fdot, bj) + mul2(field, deriv2(bj));
            Scalar coef = -res2(mul2(g, dual));
            if (!coef.is_zero())
                out.add({{CoordVar{basis == 0 ? Fam::Alpha : Fam::Beta, jj}, 1}}, coef);
        }
    }
    Scalar cst = Scalar(Rational(1, 2)) * res2(mul2(fddd, dual));
    if (!cst.is_zero()) out.add({}, cst);
    return out;
}

// ---------------------------------------------------------------------------
// Feigin-Frenkel dictionary.

struct FFImage {
    int variant;  // 1 or 2
    int k2;       // doubled Sugawara index
    Rational factor = 2;
};

inline FFImage ff_dict(CoordVar v) {
    switch (v.fam) {
        case Fam::Z: return {1, 2 * (-v.idx - 1), 2};
        case Fam::Beta: return {2, 2 * (-1 - v.idx), 2};
        case Fam::Alpha: return {2, -2 * v.idx - 1, 2};
        default: throw UnsupportedFamily("ff_dict supports z, alpha, beta coordinates");
    }
}

} // namespace sugop

#endif
