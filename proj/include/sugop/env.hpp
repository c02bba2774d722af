#ifndef SUGOP_ENV_HPP
#define SUGOP_ENV_HPP

#include "sugop/sl2.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <vector>

namespace sugop {

// The five example algebras.  Basis functions are indexed by half-integers,
// stored doubled (g2):
//   One, T : t^n       <-> g2 = 2n
//   S      : s^n       <-> g2 = 2n
//   TS     : s^n       <-> g2 = 2n,  t^n <-> g2 = 2n+1   (index n + 1/2)
//   Two    : u_n       <-> g2 = 2n,  v_n <-> g2 = 2n+1   (index n + 1/2)
enum class Alg { One, T, S, TS, Two };

inline constexpr int kExactLevel2 = kExactOrder;

struct GenIndex {
    Gen lie;
    int g2;
    friend bool operator==(const GenIndex&, const GenIndex&) = default;
    friend bool operator<(const GenIndex& x, const GenIndex& y) {
        if (x.g2 != y.g2) return x.g2 < y.g2;
        return (int)x.lie < (int)y.lie;
    }
    friend bool operator>(const GenIndex& x, const GenIndex& y) { return y < x; }
};

using Mono = std::vector<GenIndex>;  // PBW monomial, non-decreasing factors

// Polynomial in the central element C with Scalar coefficients.
class CPoly {
public:
    CPoly() = default;
    CPoly(const Scalar& s) {
        if (!s.is_zero()) c_[0] = s;
    }
    CPoly(long long n) : CPoly(Scalar(n)) {}
    static CPoly C(int deg = 1) {
        CPoly p;
        p.c_[deg] = Scalar(1);
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    const std::map<int, Scalar>& terms() const { return c_; }

    CPoly& operator+=(const CPoly& o) {
        for (const auto& [d, s] : o.c_) add(d, s);
        return *this;
    }
    friend CPoly operator+(CPoly x, const CPoly& y) { return x += y; }
    friend CPoly operator-(const CPoly& x) {
        CPoly r;
        for (const auto& [d, s] : x.c_) r.c_[d] = -s;
        return r;
    }
    friend CPoly operator-(CPoly x, const CPoly& y) { return x += -y; }
    friend CPoly operator*(const CPoly& x, const CPoly& y) {
        CPoly r;
        for (const auto& [d1, s1] : x.c_)
            for (const auto& [d2, s2] : y.c_) r.add(d1 + d2, s1 * s2);
        return r;
    }
    friend CPoly operator*(const Scalar& s, const CPoly& x) { return CPoly(s) * x; }

    CPoly shifted_by_C() const {  // multiply by C
        CPoly r;
        for (const auto& [d, s] : c_) r.c_[d + 1] = s;
        return r;
    }

    Scalar subst(const Scalar& value) const {
        Scalar r;
        for (const auto& [d, s] : c_) r += s * value.pow((unsigned)d);
        return r;
    }
    Scalar subst_critical() const { return subst(Scalar(Rational(-1, 2))); }

    CPoly specialize_a0() const {
        CPoly r;
        for (const auto& [d, s] : c_) r.add(d, Scalar(s.specialize_a0()));
        return r;
    }

    friend bool operator==(const CPoly& x, const CPoly& y) { return x.c_ == y.c_; }

    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            if (!first) os << " + ";
            first = false;
            if (it->first == 0) {
                os << it->second.str();
                continue;
            }
            os << "(" << it->second.str() << ")*C";
            if (it->first != 1) os << "^" << it->first;
        }
        return os.str();
    }

private:
    void add(int d, const Scalar& s) {
        auto it = c_.find(d);
        if (it == c_.end()) {
            if (!s.is_zero()) c_[d] = s;
        } else {
            it->second += s;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    std::map<int, Scalar> c_;
};

// ---------------------------------------------------------------------------
// Per-algebra structure of the base ring: products, derivatives and residues
// of basis functions.  Coefficients are Scalars; results are finite basis
// combinations of (scalar, g2) pairs.

struct FTerm {
    Scalar c;
    int g2;
};

inline bool is_one_variable(Alg a) { return a == Alg::One || a == Alg::T || a == Alg::S; }

inline std::vector<FTerm> basis_product(Alg a, int x, int y) {
    switch (a) {
        case Alg::One:
        case Alg::T:
        case Alg::S:
            return {{Scalar(1), x + y}};
        case Alg::TS:
            if (x % 2 == 0 && y % 2 == 0) return {{Scalar(1), x + y}};
            if (x % 2 != 0 && y % 2 != 0) return {{Scalar(1), x + y - 1}};
            return {};
        case Alg::Two: {
            const bool vx = (((x % 2) + 2) % 2) == 1, vy = (((y % 2) + 2) % 2) == 1;
            if (!vx || !vy) return {{Scalar(1), x + y}};
            // v_n v_m = u_{n+m+1} - a v_{n+m}
            return {{Scalar(1), x + y}, {Scalar::monomial(-1, 1), x + y - 1}};
        }
    }
    return {};
}

inline std::vector<FTerm> basis_deriv(Alg a, int x) {
    auto half = [](int g2) { return g2 / 2; };  // for even g2
    switch (a) {
        case Alg::One:
        case Alg::T:
        case Alg::S: {
            int n = half(x);
            if (n == 0) return {};
            return {{Scalar(n), x - 2}};
        }
        case Alg::TS: {
            int n = (((x % 2) + 2) % 2) == 0 ? x / 2 : (x - 1) / 2;
            if (n == 0) return {};
            return {{Scalar(n), x - 2}};
        }
        case Alg::Two: {
            if ((((x % 2) + 2) % 2) == 0) {
                // u_n' = 2n v_{n-1} + n a u_{n-1}
                int n = x / 2;
                std::vector<FTerm> r;
                if (n != 0) {
                    r.push_back({Scalar(2 * n), x - 1});
                    r.push_back({Scalar::monomial(n, 1), x - 2});
                }
                return r;
            }
            // v_n' = (2n+1) u_n - n a v_{n-1}
            int n = (x - 1) / 2;
            std::vector<FTerm> r;
            r.push_back({Scalar(2 * n + 1), x - 1});
            if (n != 0) r.push_back({Scalar::monomial(-n, 1), x - 2});
            return r;
        }
    }
    return {};
}

// res(r_x' * r_y) for the algebra's residue map.
inline Scalar basis_res_d(Alg a, int x, int y) {
    switch (a) {
        case Alg::One:
        case Alg::T:
        case Alg::S:
            return (x + y == 0) ? Scalar(x / 2) : Scalar();
        case Alg::TS: {
            const bool tx = (((x % 2) + 2) % 2) == 1, ty = (((y % 2) + 2) % 2) == 1;
            if (tx != ty) return Scalar();
            if (tx) return (x + y == 2) ? Scalar((x - 1) / 2) : Scalar();
            return (x + y == 0) ? Scalar(x / 2) : Scalar();
        }
        case Alg::Two:
            return res2(mul2(deriv2(TwoVarFun::w2(x)), TwoVarFun::w2(y)));
    }
    return {};
}

// Killing form on sl2 basis generators, as a rational.
inline Rational killing_rat(Gen x, Gen y) {
    if (x == Gen::h && y == Gen::h) return 8;
    if ((x == Gen::e && y == Gen::f) || (x == Gen::f && y == Gen::e)) return 4;
    return 0;
}

inline std::string gen_text(Alg a, const GenIndex& g) {
    std::ostringstream os;
    const bool odd = (((g.g2 % 2) + 2) % 2) == 1;
    char fam = '?';
    int idx = 0;
    switch (a) {
        case Alg::One:
        case Alg::T: fam = 't'; idx = g.g2 / 2; break;
        case Alg::S: fam = 's'; idx = g.g2 / 2; break;
        case Alg::TS:
            fam = odd ? 't' : 's';
            idx = odd ? (g.g2 - 1) / 2 : g.g2 / 2;
            break;
        case Alg::Two:
            fam = odd ? 'v' : 'u';
            idx = odd ? (g.g2 - 1) / 2 : g.g2 / 2;
            break;
    }
    os << "(" << gen_letter(g.lie) << ":" << fam << ":" << idx << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// Elements of the completed enveloping algebra, truncated at a level.
//
// terms_ holds the known part in the PBW basis; level2_ records that the
// element is only known modulo \hat J(level2_/2).  kExactLevel2 means exact.
// Invariant: no stored monomial has a factor index >= level.

class EnvElement {
public:
    explicit EnvElement(Alg a = Alg::Two, int level2 = kExactLevel2)
        : alg_(a), level2_(level2) {}

    static EnvElement zero(Alg a, int level2 = kExactLevel2) { return EnvElement(a, level2); }
    static EnvElement one(Alg a, int level2 = kExactLevel2) {
        EnvElement e(a, level2);
        e.add(Mono{}, CPoly(1));
        return e;
    }
    static EnvElement gen(Alg a, Gen lie, int g2, const Scalar& c = Scalar(1),
                          int level2 = kExactLevel2) {
        EnvElement e(a, level2);
        e.add(Mono{GenIndex{lie, g2}}, CPoly(c));
        return e;
    }
    static EnvElement central(Alg a, const CPoly& p, int level2 = kExactLevel2) {
        EnvElement e(a, level2);
        e.add(Mono{}, p);
        return e;
    }

    Alg alg() const { return alg_; }
    int level2() const { return level2_; }
    bool exact() const { return level2_ >= kExactLevel2; }
    const std::map<Mono, CPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Mono& m, const CPoly& c) {
        if (c.is_zero()) return;
        if (!m.empty() && m.back().g2 >= level2_) return;  // inside the dropped ideal
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void set_level2(int l2) {
        level2_ = l2;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (!it->first.empty() && it->first.back().g2 >= level2_)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    EnvElement truncated(int l2) const {
        EnvElement r = *this;
        r.set_level2(std::min(level2_, l2));
        return r;
    }

    friend EnvElement operator+(const EnvElement& x, const EnvElement& y) {
        x.check_same(y);
        EnvElement r(x.alg_, std::min(x.level2_, y.level2_));
        for (const auto& [m, c] : x.terms_) r.add(m, c);
        for (const auto& [m, c] : y.terms_) r.add(m, c);
        return r;
    }
    friend EnvElement operator-(const EnvElement& x, const EnvElement& y) {
        x.check_same(y);
        EnvElement r(x.alg_, std::min(x.level2_, y.level2_));
        for (const auto& [m, c] : x.terms_) r.add(m, c);
        for (const auto& [m, c] : y.terms_) r.add(m, -c);
        return r;
    }
    friend EnvElement operator*(const Scalar& s, const EnvElement& x) {
        EnvElement r(x.alg_, x.level2_);
        for (const auto& [m, c] : x.terms_) r.add(m, s * c);
        return r;
    }
    friend EnvElement operator*(const CPoly& p, const EnvElement& x) {
        EnvElement r(x.alg_, x.level2_);
        for (const auto& [m, c] : x.terms_) r.add(m, p * c);
        return r;
    }

    EnvElement subst_critical() const {
        EnvElement r(alg_, level2_);
        for (const auto& [m, c] : terms_) r.add(m, CPoly(c.subst_critical()));
        return r;
    }

    friend bool operator==(const EnvElement& x, const EnvElement& y) {
        return x.alg_ == y.alg_ && x.level2_ == y.level2_ && x.terms_ == y.terms_;
    }

    // Equality modulo the common certified level.
    friend bool eq_mod_level(const EnvElement& x, const EnvElement& y) {
        int l2 = std::min(x.level2_, y.level2_);
        return x.truncated(l2).terms_ == y.truncated(l2).terms_;
    }

    std::string str() const {
        std::ostringstream os;
        if (terms_.empty()) {
            os << "0";
        } else {
            bool first = true;
            for (const auto& [m, c] : terms_) {
                if (!first) os << " + ";
                first = false;
                bool plain = c.terms().size() == 1 && c.terms().count(0) &&
                             c.terms().at(0) == Scalar(1);
                if (m.empty()) {
                    os << c.str();
                    continue;
                }
                if (!plain) os << "(" << c.str() << ")*";
                for (const auto& g : m) os << gen_text(alg_, g);
            }
        }
        if (!exact()) os << " mod J(" << level2_ << "/2)";
        return os.str();
    }

    void check_same(const EnvElement& y) const {
        if (alg_ != y.alg_) throw AlgebraMismatch("mixed algebra tags");
    }

private:
    Alg alg_;
    std::map<Mono, CPoly> terms_;
    int level2_;
};

// ---------------------------------------------------------------------------
// Exact PBW straightening of a word into ordered monomials.

inline void straighten_word(Alg alg, const Mono& word, const CPoly& coef,
                            std::map<Mono, CPoly>& out) {
    size_t inv = word.size();
    for (size_t i = 0; i + 1 < word.size(); ++i)
        if (word[i + 1] < word[i]) {
            inv = i;
            break;
        }
    if (inv >= word.size()) {
        auto it = out.find(word);
        if (it == out.end()) {
            out[word] = coef;
        } else {
            it->second += coef;
            if (it->second.is_zero()) out.erase(it);
        }
        return;
    }
    const GenIndex g1 = word[inv], g2 = word[inv + 1];
    // swap
    Mono swapped = word;
    std::swap(swapped[inv], swapped[inv + 1]);
    straighten_word(alg, swapped, coef, out);
    // lie part of [g1, g2]
    Sl2Elt br = sl2_bracket(g1.lie, g2.lie);
    for (Gen gc : kSl2Basis) {
        const Scalar& q = br[gc];
        if (q.is_zero()) continue;
        for (const auto& ft : basis_product(alg, g1.g2, g2.g2)) {
            Mono reduced;
            reduced.reserve(word.size() - 1);
            reduced.insert(reduced.end(), word.begin(), word.begin() + inv);
            reduced.push_back(GenIndex{gc, ft.g2});
            reduced.insert(reduced.end(), word.begin() + inv + 2, word.end());
            straighten_word(alg, reduced, (q * ft.c) * coef, out);
        }
    }
    // central part
    Rational kap = killing_rat(g1.lie, g2.lie);
    if (kap != 0) {
        Scalar res = basis_res_d(alg, g1.g2, g2.g2);
        if (!res.is_zero()) {
            Mono reduced;
            reduced.reserve(word.size() - 2);
            reduced.insert(reduced.end(), word.begin(), word.begin() + inv);
            reduced.insert(reduced.end(), word.begin() + inv + 2, word.end());
            straighten_word(alg, reduced, ((Scalar(kap) * res) * coef).shifted_by_C(), out);
        }
    }
}

// ---------------------------------------------------------------------------
// Level certification.
//
// A truncation tail \hat J(N) multiplied on the right by a single generator
// of index d stays inside \hat J(N + min(0, d - deficit)), provided the
// residue term provably vanishes (N + d large enough); the deficit accounts
// for basis products that lose half a step (v*v in Two, t*t in TS).

inline std::optional<int> cert_right_mono(Alg alg, int level2, const Mono& m) {
    if (level2 >= kExactLevel2) return kExactLevel2;
    long long L = level2;
    const bool halfstep = (alg == Alg::Two || alg == Alg::TS);
    for (const auto& g : m) {
        int deficit = (halfstep && (((g.g2 % 2) + 2) % 2) == 1) ? 1 : 0;
        if (L + g.g2 < 2 + deficit) return std::nullopt;  // residue uncontrolled
        L += std::min(0, g.g2 - deficit);
    }
    return (int)std::max<long long>(L, -kExactLevel2);
}

inline std::optional<int> cert_right(Alg alg, int level2, const EnvElement& data) {
    if (level2 >= kExactLevel2) return kExactLevel2;
    int best = kExactLevel2;  // no constraint when the right factor has no data
    for (const auto& [m, c] : data.terms()) {
        auto l = cert_right_mono(alg, level2, m);
        if (!l) return std::nullopt;
        best = std::min(best, *l);
    }
    return best;
}

// Product in the completed enveloping algebra, with certified output level.
inline EnvElement straighten_mul(const EnvElement& x, const EnvElement& y) {
    x.check_same(y);
    auto c = cert_right(x.alg(), x.level2(), y);
    if (!c)
        throw ResultLevelEmpty("tail of the left factor cannot be controlled by the right factor");
    int level2 = std::min(y.level2(), *c);
    EnvElement r(x.alg(), level2);
    std::map<Mono, CPoly> acc;
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms()) {
            Mono word = mx;
            word.insert(word.end(), my.begin(), my.end());
            straighten_word(x.alg(), word, cx * cy, acc);
        }
    for (const auto& [m, cc] : acc) r.add(m, cc);
    return r;
}

inline EnvElement commutator(const EnvElement& x, const EnvElement& y) {
    return straighten_mul(x, y) - straighten_mul(y, x);
}

// ---------------------------------------------------------------------------
// Normal ordering (two-variable normal ordered product).

// A pair of factors in normal order together with a scalar coefficient.
struct OrderedPair {
    Scalar c;
    GenIndex first, second;
};

// :(x w_{m1})(y w_{m2}):   indices doubled; smaller function index goes left.
inline std::vector<OrderedPair> normal_pair_w(Gen x, int m2a, Gen y, int m2b) {
    if (m2a <= m2b) return {{Scalar(1), GenIndex{x, m2a}, GenIndex{y, m2b}}};
    return {{Scalar(1), GenIndex{y, m2b}, GenIndex{x, m2a}}};
}

// :(x u_h)(y * y_k): with the y-family second factor; ordering compares h with
// k, and y_k = a u_k + v_k is expanded after ordering.
inline std::vector<OrderedPair> normal_pair_uy(Gen x, int h, Gen y, int k) {
    std::vector<OrderedPair> out;
    GenIndex gu{x, 2 * h}, gau{y, 2 * k}, gv{y, 2 * k + 1};
    if (h <= k) {
        out.push_back({Scalar::a(), gu, gau});
        out.push_back({Scalar(1), gu, gv});
    } else {
        out.push_back({Scalar::a(), gau, gu});
        out.push_back({Scalar(1), gv, gu});
    }
    return out;
}

inline EnvElement env_from_pairs(Alg alg, const std::vector<OrderedPair>& ps,
                                 const Scalar& coef, int level2) {
    EnvElement r(alg, level2);
    std::map<Mono, CPoly> acc;
    for (const auto& p : ps) {
        if (std::max(p.first.g2, p.second.g2) >= level2) continue;  // in the ideal
        straighten_word(alg, Mono{p.first, p.second}, CPoly(coef * p.c), acc);
    }
    for (const auto& [m, c] : acc) r.add(m, c);
    return r;
}

// ---------------------------------------------------------------------------
// Sugawara operators.

struct DualPair {
    Gen up, down;
    Rational q;
};

inline const std::vector<DualPair>& dual_pairs() {
    static const std::vector<DualPair> v{
        {Gen::e, Gen::f, Rational(1, 4)},
        {Gen::h, Gen::h, Rational(1, 8)},
        {Gen::f, Gen::e, Rational(1, 4)},
    };
    return v;
}

// One-variable Sugawara operator S_k = sum_n :J^a t^n J_a t^{k-n-1}: in the
// algebra One/T (variable t) or S (variable s), modulo J(level2/2).
inline EnvElement sugawara1(long long k, int level2, Alg alg = Alg::One) {
    if (!is_one_variable(alg)) throw AlgebraMismatch("sugawara1 needs a one-variable algebra");
    EnvElement r(alg, level2);
    std::map<Mono, CPoly> acc;
    long long n = (level2 + 1) / 2;  // indices m survive iff 2m < level2
    for (long long p = k - n; 2 * p < level2; ++p) {
        long long q = k - p - 1;
        if (2 * p >= level2 || 2 * q >= level2) continue;
        for (const auto& dp : dual_pairs()) {
            auto pair = normal_pair_w(dp.up, (int)(2 * p), dp.down, (int)(2 * q));
            for (const auto& op : pair)
                straighten_word(alg, Mono{op.first, op.second},
                                CPoly(Scalar(dp.q) * op.c), acc);
        }
    }
    for (const auto& [m, c] : acc) r.add(m, c);
    return r;
}

// The same operator living inside U_{t,s}: S^{(t)}_k or S^{(s)}_k.
inline EnvElement sugawara_ts(long long k, int level2, Var var) {
    EnvElement r(Alg::TS, level2);
    std::map<Mono, CPoly> acc;
    const int off = var == Var::t ? 1 : 0;
    for (long long p = k - level2; p < level2; ++p) {
        long long q = k - p - 1;
        int g2p = (int)(2 * p) + off, g2q = (int)(2 * q) + off;
        if (g2p >= level2 || g2q >= level2) continue;
        for (const auto& dp : dual_pairs()) {
            auto pair = normal_pair_w(dp.up, g2p, dp.down, g2q);
            for (const auto& op : pair)
                straighten_word(Alg::TS, Mono{op.first, op.second},
                                CPoly(Scalar(dp.q) * op.c), acc);
        }
    }
    for (const auto& [m, c] : acc) r.add(m, c);
    return r;
}

// Exponent pairs of the w/z parametrisation (doubled indices).
inline std::pair<int, int> w_exps2(int m2) {
    if ((((m2 % 2) + 2) % 2) == 0) return {m2 / 2, m2 / 2};
    return {(m2 - 1) / 2, (m2 + 1) / 2};  // v
}
inline std::pair<int, int> z_exps2(int m2) {
    if ((((m2 % 2) + 2) % 2) == 0) return {m2 / 2, m2 / 2};
    return {(m2 + 1) / 2, (m2 - 1) / 2};  // y
}

// Two-variable Sugawara operator
//   S^{(2)}_k = sum_{n in (1/2)Z} :J^a w_n  J_a z_{-n-1/2} w_k: ,
// materialised modulo J(level2/2); k given doubled.
inline EnvElement sugawara2(int k2, int level2) {
    EnvElement r(Alg::Two, level2);
    std::map<Mono, CPoly> acc;
    // surviving terms need both factor indices < level; margin of 2 half-steps
    for (int j2 = k2 - level2 - 4; j2 <= level2 + 2; ++j2) {
        auto [wi, wj] = w_exps2(j2);
        auto [zi, zj] = z_exps2(-j2 - 1);
        auto [ki, kj] = w_exps2(k2);
        int si = zi + ki, sj = zj + kj;  // exponents of z_{-j-1/2} w_k
        std::vector<OrderedPair> pairs;
        for (const auto& dp : dual_pairs()) {
            std::vector<OrderedPair> ps;
            if (si == sj) {
                ps = normal_pair_w(dp.up, j2, dp.down, 2 * si);
            } else if (sj == si + 1) {
                ps = normal_pair_w(dp.up, j2, dp.down, 2 * si + 1);
            } else {
                // y-family second factor: si == sj + 1
                ps = normal_pair_uy(dp.up, j2 / 2, dp.down, sj);
            }
            for (auto& p : ps) {
                p.c = Scalar(dp.q) * p.c;
                pairs.push_back(p);
            }
        }
        for (const auto& p : pairs) {
            if (std::max(p.first.g2, p.second.g2) >= level2) continue;
            straighten_word(Alg::Two, Mono{p.first, p.second}, CPoly(p.c), acc);
        }
    }
    for (const auto& [m, c] : acc) r.add(m, c);
    return r;
}

// Renormalised operators L_k ("storto"):
//   k integral or k = 2j+3/2 :  a^{-ceil(k)} S^{(2)}_k
//   k = 2j+1/2               :  a^{-2j-2} (S^{(2)}_{2j+1} - a S^{(2)}_{2j+1/2})
inline EnvElement lstorto(int k2, int level2) {
    auto mod4 = ((k2 % 4) + 4) % 4;
    if (mod4 == 1) {
        int j = (k2 - 1) / 4;
        EnvElement s1 = sugawara2(4 * j + 2, level2);
        EnvElement s2 = sugawara2(k2, level2);
        return Scalar::monomial(1, -2 * j - 2) * (s1 - Scalar::a() * s2);
    }
    int ceil_k = (k2 % 2 == 0) ? k2 / 2 : (k2 + 1) / 2;
    return Scalar::monomial(1, -ceil_k) * sugawara2(k2, level2);
}

// ---------------------------------------------------------------------------
// Specialisation Sp : U_2 -> U_1  (a -> 0, index doubling).

inline EnvElement specialize_env(const EnvElement& x) {
    if (x.alg() != Alg::Two) throw AlgebraMismatch("specialize_env expects the two-variable algebra");
    long long l2 = x.exact() ? kExactLevel2 : 2LL * x.level2();
    EnvElement r(Alg::One, (int)std::min<long long>(l2, kExactLevel2));
    for (const auto& [m, c] : x.terms()) {
        Mono img;
        img.reserve(m.size());
        for (const auto& g : m) img.push_back(GenIndex{g.lie, 2 * g.g2});
        r.add(img, c.specialize_a0());
    }
    return r;
}

// ---------------------------------------------------------------------------
// Expansion E : U_2[a^{-1}] -> U_{t,s}, truncated at out_level2.

inline EnvElement expand_gen(const GenIndex& g, int out_level2) {
    EnvElement r(Alg::TS, out_level2);
    TwoVarFun f = TwoVarFun::w2(g.g2);
    // t-part: coefficients of t^p with 2p+1 < out_level2
    int pt_max = (out_level2 - 2) / 2 + 1;
    OneVarSeries et = f.expand(Var::t, pt_max + 1);
    for (const auto& [p, c] : et.terms()) {
        int g2 = 2 * p + 1;
        if (g2 >= out_level2) continue;
        r.add(Mono{GenIndex{g.lie, g2}}, CPoly(c));
    }
    OneVarSeries es = f.expand(Var::s, pt_max + 1);
    for (const auto& [p, c] : es.terms()) {
        int g2 = 2 * p;
        if (g2 >= out_level2) continue;
        r.add(Mono{GenIndex{g.lie, g2}}, CPoly(c));
    }
    return r;
}

inline EnvElement expand_env(const EnvElement& x, int out_level2) {
    if (x.alg() != Alg::Two) throw AlgebraMismatch("expand_env expects the two-variable algebra");
    int base = std::min(out_level2, x.exact() ? out_level2 : x.level2());
    EnvElement total(Alg::TS, base);
    for (const auto& [m, c] : x.terms()) {
        // expand the factors at a working level high enough that the
        // certified level of the product stays at or above the request
        int drops = 0;
        for (const auto& g : m) drops += std::max(0, -(g.g2 - 1));
        int internal = out_level2 + drops + 4;
        EnvElement acc = EnvElement::one(Alg::TS);
        for (const auto& g : m) acc = straighten_mul(acc, expand_gen(g, internal));
        total = total + c * acc.truncated(out_level2);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Action of Der (vector fields f d/dt) by derivations: (f d)(x g) = x f g'.

inline EnvElement derivation_act(const std::vector<FTerm>& field, const EnvElement& x) {
    // output level: tail J(N) maps into J(N - 1 + val(field)), with a half-step
    // deficit for the odd-index components
    int out2;
    if (x.exact()) {
        out2 = kExactLevel2;
    } else {
        int val2_eff = kExactLevel2;
        for (const auto& ft : field)
            val2_eff = std::min(val2_eff,
                                ft.g2 - (((((ft.g2 % 2) + 2) % 2) == 1) ? 1 : 0));
        long long o = std::min<long long>((long long)x.level2(),
                                          (long long)x.level2() - 2 + val2_eff);
        out2 = (int)std::max<long long>(o, -kExactLevel2);
    }
    EnvElement r(x.alg(), out2);
    std::map<Mono, CPoly> acc;
    for (const auto& [m, c] : x.terms()) {
        for (size_t i = 0; i < m.size(); ++i) {
            for (const auto& fc : field)
                for (const auto& dc : basis_deriv(x.alg(), m[i].g2))
                    for (const auto& pc : basis_product(x.alg(), fc.g2, dc.g2)) {
                        Mono word = m;
                        word[i] = GenIndex{m[i].lie, pc.g2};
                        straighten_word(x.alg(), word, (fc.c * dc.c * pc.c) * c, acc);
                    }
        }
    }
    for (const auto& [m, cc] : acc) r.add(m, cc);
    return r;
}

// Convenience: vector field given as a two-variable function (algebra Two).
inline EnvElement derivation_act(const TwoVarFun& f, const EnvElement& x) {
    if (x.alg() != Alg::Two)
        throw AlgebraMismatch("TwoVarFun vector fields act on the two-variable algebra");
    std::vector<FTerm> field;
    for (const auto& [b, c] : f.to_basis(TwoVarFun::BasisPair::UV)) {
        int g2 = b.family == BasisFamily::U ? 2 * b.n : 2 * b.n + 1;
        field.push_back({c, g2});
    }
    return derivation_act(field, x);
}

// ---------------------------------------------------------------------------
// J-degree, leading term.

// Non-decreasing index sequences compared with largest entries first;
// a proper extension of an equal prefix is larger.
inline std::vector<int> jdeg_of(const Mono& m) {
    std::vector<int> v;
    v.reserve(m.size());
    for (const auto& g : m) v.push_back(g.g2);
    std::sort(v.rbegin(), v.rend());
    return v;
}

inline int jdeg_cmp(const std::vector<int>& a, const std::vector<int>& b) {
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    if (a.size() == b.size()) return 0;
    return a.size() < b.size() ? -1 : 1;
}

struct LeadingTerm {
    int deg;
    std::vector<int> jdeg;  // descending, doubled indices
    EnvElement lt;
};

inline LeadingTerm jdeg_lt(const EnvElement& x) {
    if (x.is_zero()) throw ZeroElement("leading term of zero");
    int deg = 0;
    for (const auto& [m, c] : x.terms()) deg = std::max<int>(deg, (int)m.size());
    std::optional<std::vector<int>> best;
    for (const auto& [m, c] : x.terms()) {
        if ((int)m.size() != deg) continue;
        auto j = jdeg_of(m);
        if (!best || jdeg_cmp(j, *best) < 0) best = j;
    }
    LeadingTerm out{deg, *best, EnvElement(x.alg(), x.level2())};
    for (const auto& [m, c] : x.terms())
        if ((int)m.size() == deg && jdeg_of(m) == *best) out.lt.add(m, c);
    return out;
}

// Membership of the stored part in \hat J^{<= m}[gamma] (Def-style window):
// every stored monomial has degree <= m, and the degree-m ones have
// J-degree strictly greater than gamma (given descending, doubled).
inline bool in_J_window_strict(const EnvElement& x, int m, const std::vector<int>& gamma) {
    for (const auto& [mono, c] : x.terms()) {
        if ((int)mono.size() > m) return false;
        if ((int)mono.size() < m) continue;
        if (jdeg_cmp(jdeg_of(mono), gamma) <= 0) return false;
    }
    return true;
}

// Flatten to a vector over the PBW-monomial x C-degree basis.
inline std::map<std::pair<Mono, int>, Scalar> flatten(const EnvElement& x) {
    std::map<std::pair<Mono, int>, Scalar> out;
    for (const auto& [m, c] : x.terms())
        for (const auto& [d, s] : c.terms()) out[{m, d}] = s;
    return out;
}

} // namespace sugop

#endif
