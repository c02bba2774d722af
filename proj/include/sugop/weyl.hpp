#ifndef SUGOP_WEYL_HPP
#define SUGOP_WEYL_HPP

#include "sugop/env.hpp"

#include <utility>
#include <vector>

namespace sugop {

// Weight basis of V^lambda: m_i = f^i . (highest vector), i = 0..lambda, with
//   f m_i = m_{i+1},  h m_i = (lambda-2i) m_i,  e m_i = i(lambda-i+1) m_{i-1}.
inline std::vector<std::pair<int, Rational>> lie_on_weight(Gen g, long long lam, int i) {
    switch (g) {
        case Gen::e:
            if (i == 0) return {};
            return {{i - 1, Rational(i) * Rational(lam - i + 1)}};
        case Gen::h: {
            Rational w(lam - 2 * i);
            if (w == 0) return {};
            return {{i, w}};
        }
        case Gen::f:
            if (i >= lam) return {};
            return {{i + 1, Rational(1)}};
    }
    return {};
}

// Element of the depth-truncated Weyl module: map from
// (ordered negative monomial, weight pair) to Scalar.
class WeylVector {
public:
    using Key = std::pair<Mono, std::pair<int, int>>;

    WeylVector(Alg alg, long long lam, long long mu) : alg_(alg), lam_(lam), mu_(mu) {}

    static WeylVector unit(Alg alg, long long lam, long long mu, int i, int j) {
        WeylVector v(alg, lam, mu);
        v.add(Mono{}, i, j, Scalar(1));
        return v;
    }

    Alg alg() const { return alg_; }
    long long lam() const { return lam_; }
    long long mu() const { return mu_; }
    const std::map<Key, Scalar>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add(const Mono& m, int i, int j, const Scalar& c) {
        if (c.is_zero() || i < 0 || i > lam_ || j < 0 || j > mu_) return;
        Key k{m, {i, j}};
        auto it = t_.find(k);
        if (it == t_.end()) {
            t_[k] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    friend WeylVector operator+(const WeylVector& x, const WeylVector& y) {
        WeylVector r = x;
        for (const auto& [k, c] : y.t_) r.add(k.first, k.second.first, k.second.second, c);
        return r;
    }
    friend WeylVector operator-(const WeylVector& x, const WeylVector& y) {
        WeylVector r = x;
        for (const auto& [k, c] : y.t_) r.add(k.first, k.second.first, k.second.second, -c);
        return r;
    }
    friend WeylVector operator*(const Scalar& s, const WeylVector& x) {
        WeylVector r(x.alg_, x.lam_, x.mu_);
        for (const auto& [k, c] : x.t_) r.add(k.first, k.second.first, k.second.second, s * c);
        return r;
    }
    friend bool operator==(const WeylVector& x, const WeylVector& y) { return x.t_ == y.t_; }

    // Maximal PBW depth of the monomial parts.
    int depth() const {
        size_t d = 0;
        for (const auto& [k, c] : t_) d = std::max(d, k.first.size());
        return (int)d;
    }

    // Sum over terms of the total negative index spread; the tail of an
    // acting element annihilates this vector once its level exceeds this.
    int need_level2() const {
        int need = 4;
        for (const auto& [k, c] : t_) {
            int s = 4;
            for (const auto& g : k.first) s += -g.g2;
            need = std::max(need, s);
        }
        return need;
    }

    // degree-0 projection: discard all terms with a nonempty monomial part
    WeylVector degree0() const {
        WeylVector r(alg_, lam_, mu_);
        for (const auto& [k, c] : t_)
            if (k.first.empty()) r.add(k.first, k.second.first, k.second.second, c);
        return r;
    }

    std::string str() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : t_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")*";
            for (const auto& g : k.first) os << gen_text(alg_, g);
            os << "[" << k.second.first << "," << k.second.second << "]";
        }
        return os.str();
    }

private:
    Alg alg_;
    long long lam_, mu_;
    std::map<Key, Scalar> t_;
};

namespace detail {

// Evaluation of a nonnegative-index generator on the weight space.
// Two-variable algebra: u_0 acts diagonally, v_0 by -a on the first slot,
// higher indices by zero.  One-variable: t^0 diagonally, higher zero.
inline void eval_gen(Alg alg, const GenIndex& g, long long lam, long long mu, int i, int j,
                     const Scalar& c, WeylVector& out, const Mono& mono) {
    if (g.g2 >= 2) return;
    if (g.g2 == 1) {
        if (alg != Alg::Two) return;
        for (const auto& [i2, q] : lie_on_weight(g.lie, lam, i))
            out.add(mono, i2, j, Scalar::monomial(-q, 1) * c);
        return;
    }
    // g2 == 0: diagonal action
    for (const auto& [i2, q] : lie_on_weight(g.lie, lam, i)) out.add(mono, i2, j, Scalar(q) * c);
    for (const auto& [j2, q] : lie_on_weight(g.lie, mu, j)) out.add(mono, i, j2, Scalar(q) * c);
}

} // namespace detail

// Apply a single affine generator to a Weyl vector, commuting it rightward
// through the monomial; brackets are resolved exactly, C acts by -1/2.
inline WeylVector apply_gen(const GenIndex& g, const WeylVector& v, int depth);

namespace detail {

inline void apply_gen_term(Alg alg, const GenIndex& g, const Mono& m, int i, int j,
                           const Scalar& c, long long lam, long long mu, int depth,
                           WeylVector& out) {
    if (m.empty()) {
        if (g.g2 >= 0) {
            eval_gen(alg, g, lam, mu, i, j, c, out, Mono{});
            return;
        }
        if (depth < 1) throw DepthOverflow("monomial depth bound exceeded");
        out.add(Mono{g}, i, j, c);
        return;
    }
    const GenIndex x1 = m.front();
    if (!(x1 < g)) {  // g <= x1: x1 is negative, so g is negative too; prepend
        if ((int)m.size() + 1 > depth) throw DepthOverflow("monomial depth bound exceeded");
        Mono grown;
        grown.reserve(m.size() + 1);
        grown.push_back(g);
        grown.insert(grown.end(), m.begin(), m.end());
        out.add(grown, i, j, c);
        return;
    }
    Mono rest(m.begin() + 1, m.end());
    // g x1 = x1 g + [g, x1]
    WeylVector sub(out.alg(), lam, mu);
    apply_gen_term(alg, g, rest, i, j, c, lam, mu, depth, sub);
    for (const auto& [k, cc] : sub.terms()) {
        // prepend x1, re-straightening against whatever the recursion produced
        WeylVector pre(out.alg(), lam, mu);
        apply_gen_term(alg, x1, k.first, k.second.first, k.second.second, cc, lam, mu, depth,
                       pre);
        for (const auto& [k2, c2] : pre.terms())
            out.add(k2.first, k2.second.first, k2.second.second, c2);
    }
    // bracket part
    Sl2Elt br = sl2_bracket(g.lie, x1.lie);
    for (Gen gc : kSl2Basis) {
        if (br[gc].is_zero()) continue;
        for (const auto& ft : basis_product(alg, g.g2, x1.g2))
            apply_gen_term(alg, GenIndex{gc, ft.g2}, rest, i, j, br[gc] * ft.c * c, lam, mu,
                           depth, out);
    }
    Rational kap = killing_rat(g.lie, x1.lie);
    if (kap != 0) {
        Scalar res = basis_res_d(alg, g.g2, x1.g2);
        if (!res.is_zero()) {
            // central element acts by -1/2
            Scalar cc = Scalar(Rational(-1, 2) * kap) * res * c;
            WeylVector tail(out.alg(), lam, mu);
            tail.add(rest, i, j, cc);
            for (const auto& [k2, c2] : tail.terms())
                out.add(k2.first, k2.second.first, k2.second.second, c2);
        }
    }
}

} // namespace detail

inline WeylVector apply_gen(const GenIndex& g, const WeylVector& v, int depth) {
    WeylVector out(v.alg(), v.lam(), v.mu());
    for (const auto& [k, c] : v.terms())
        detail::apply_gen_term(v.alg(), g, k.first, k.second.first, k.second.second, c,
                               v.lam(), v.mu(), depth, out);
    return out;
}

// Action of (x tensor r_g2) for a general sl2 element.
inline WeylVector act_gen(const Sl2Elt& x, int g2, const WeylVector& v, int depth) {
    WeylVector out(v.alg(), v.lam(), v.mu());
    for (Gen gc : kSl2Basis) {
        if (x[gc].is_zero()) continue;
        out = out + x[gc] * apply_gen(GenIndex{gc, g2}, v, depth);
    }
    return out;
}

// Action of a truncated enveloping-algebra element at the critical level.
inline WeylVector act_env(const EnvElement& X, const WeylVector& v, int depth) {
    if (X.alg() != v.alg()) throw AlgebraMismatch("algebra tags differ");
    if (!X.exact() && X.level2() < v.need_level2())
        throw InsufficientLevel("element level " + std::to_string(X.level2())
                                + " too low for this vector (needs "
                                + std::to_string(v.need_level2()) + ")");
    WeylVector out(v.alg(), v.lam(), v.mu());
    for (const auto& [m, cpol] : X.terms()) {
        Scalar coef = cpol.subst_critical();
        if (coef.is_zero()) continue;
        WeylVector cur = v;
        for (auto it = m.rbegin(); it != m.rend(); ++it) cur = apply_gen(*it, cur, depth);
        out = out + coef * cur;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Small dense matrices over Scalar on the weight basis of V^lam (x) V^mu.

using Matrix = std::vector<std::vector<Scalar>>;

inline Matrix zero_matrix(size_t n) { return Matrix(n, std::vector<Scalar>(n)); }

inline size_t pair_index(long long mu, int i, int j) { return (size_t)i * (size_t)(mu + 1) + j; }

// Matrix of act_env(X) restricted and projected to the degree-0 subspace.
inline Matrix degree0_matrix(const EnvElement& X, long long lam, long long mu, int depth = 6) {
    size_t n = (size_t)((lam + 1) * (mu + 1));
    Matrix M = zero_matrix(n);
    for (int i = 0; i <= lam; ++i)
        for (int j = 0; j <= mu; ++j) {
            WeylVector v = WeylVector::unit(X.alg(), lam, mu, i, j);
            WeylVector w = act_env(X, v, depth).degree0();
            for (const auto& [k, c] : w.terms())
                M[pair_index(mu, k.second.first, k.second.second)][pair_index(mu, i, j)] += c;
        }
    return M;
}

inline Matrix degree0_matrix2(int k2, long long lam, long long mu, int level2 = 6) {
    return degree0_matrix(sugawara2(k2, level2), lam, mu);
}

// ---------------------------------------------------------------------------
// Clebsch-Gordan decomposition of V^lam (x) V^mu.

struct ClebschComponent {
    long long nu;
    std::vector<Scalar> highest;  // coordinates on the weight-pair basis
};

inline std::vector<Scalar> weight_vector(long long lam, long long mu,
                                         const std::vector<std::pair<std::pair<int, int>, Rational>>& terms) {
    std::vector<Scalar> v((size_t)((lam + 1) * (mu + 1)));
    for (const auto& [ij, q] : terms) v[pair_index(mu, ij.first, ij.second)] = Scalar(q);
    return v;
}

// Matrix of the diagonal action of a lie generator on V^lam (x) V^mu.
inline Matrix diag_action_matrix(Gen g, long long lam, long long mu) {
    size_t n = (size_t)((lam + 1) * (mu + 1));
    Matrix M = zero_matrix(n);
    for (int i = 0; i <= lam; ++i)
        for (int j = 0; j <= mu; ++j) {
            for (const auto& [i2, q] : lie_on_weight(g, lam, i))
                M[pair_index(mu, i2, j)][pair_index(mu, i, j)] += Scalar(q);
            for (const auto& [j2, q] : lie_on_weight(g, mu, j))
                M[pair_index(mu, i, j2)][pair_index(mu, i, j)] += Scalar(q);
        }
    return M;
}

inline std::vector<Scalar> mat_apply(const Matrix& M, const std::vector<Scalar>& v) {
    std::vector<Scalar> r(M.size());
    for (size_t row = 0; row < M.size(); ++row)
        for (size_t col = 0; col < v.size(); ++col)
            if (!M[row][col].is_zero() && !v[col].is_zero()) r[row] += M[row][col] * v[col];
    return r;
}

// Highest-weight vectors, one per nu = lam+mu, lam+mu-2, ..., |lam-mu|.
inline std::vector<ClebschComponent> clebsch_components(long long lam, long long mu) {
    std::vector<ClebschComponent> out;
    Matrix Me = diag_action_matrix(Gen::e, lam, mu);
    for (long long j = 0; j <= std::min(lam, mu); ++j) {
        long long nu = lam + mu - 2 * j;
        std::vector<std::pair<std::pair<int, int>, Rational>> terms;
        Rational c = 1;
        for (int p = 0; p <= j; ++p) {
            if (p > 0) {
                // c_p = -c_{p-1} (j-p+1)(mu-j+p) / (p (lam-p+1))
                c = -c * Rational((j - p + 1)) * Rational(mu - j + p)
                    / (Rational(p) * Rational(lam - p + 1));
            }
            terms.push_back({{p, (int)j - p}, c});
        }
        ClebschComponent comp{nu, weight_vector(lam, mu, terms)};
        // the construction must produce a genuine highest vector
        for (const auto& entry : mat_apply(Me, comp.highest))
            if (!entry.is_zero()) throw SugopError("clebsch highest vector not annihilated by e");
        out.push_back(std::move(comp));
    }
    return out;
}

// Check that M is scalar on each clebsch nu-component; returns the scalars.
// Throws if some component is not preserved scalar-wise.
inline std::vector<std::pair<long long, Scalar>> block_scalars(const Matrix& M, long long lam,
                                                               long long mu) {
    std::vector<std::pair<long long, Scalar>> out;
    Matrix Mf = diag_action_matrix(Gen::f, lam, mu);
    for (const auto& comp : clebsch_components(lam, mu)) {
        std::vector<Scalar> w = comp.highest;
        Scalar scalar;
        bool have = false;
        for (long long r = 0; r <= comp.nu; ++r) {
            std::vector<Scalar> Mw = mat_apply(M, w);
            // find the scalar from the first nonzero coordinate of w
            for (size_t idx = 0; idx < w.size(); ++idx) {
                if (w[idx].is_zero()) continue;
                if (!w[idx].is_constant())
                    throw SugopError("clebsch basis vector not rational");
                Scalar cand = Mw[idx] / w[idx];
                if (!have) {
                    scalar = cand;
                    have = true;
                }
                break;
            }
            for (size_t idx = 0; idx < w.size(); ++idx)
                if (Mw[idx] != scalar * w[idx])
                    throw SugopError("matrix not block-scalar on nu=" + std::to_string(comp.nu));
            w = mat_apply(Mf, w);
        }
        out.push_back({comp.nu, scalar});
    }
    return out;
}

} // namespace sugop

#endif
