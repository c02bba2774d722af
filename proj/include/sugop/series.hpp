#ifndef SUGOP_SERIES_HPP
#define SUGOP_SERIES_HPP

#include "sugop/scalar.hpp"

#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace sugop {

// Sentinel order for exact (non-truncated) one-variable Laurent polynomials.
inline constexpr int kExactOrder = std::numeric_limits<int>::max() / 4;

enum class Var { t, s };

inline char var_letter(Var v) { return v == Var::t ? 't' : 's'; }

// Truncated one-variable Laurent series over Q[a,a^-1]: known modulo var^order.
class OneVarSeries {
public:
    OneVarSeries() : var_(Var::t), order_(kExactOrder) {}
    OneVarSeries(Var v, int order) : var_(v), order_(order) {}

    Var var() const { return var_; }
    int order() const { return order_; }
    const std::map<int, Scalar>& terms() const { return c_; }

    void set(int e, const Scalar& c) {
        if (e >= order_) return;
        if (c.is_zero())
            c_.erase(e);
        else
            c_[e] = c;
    }
    void add(int e, const Scalar& c) { set(e, coeff_unchecked(e) + c); }

    bool known(int e) const { return e < order_; }

    Scalar coeff(int e) const {
        if (!known(e))
            throw TruncationTooCoarse("coefficient of exponent " + std::to_string(e)
                                      + " hidden by truncation at order " + std::to_string(order_));
        return coeff_unchecked(e);
    }

    int val() const {  // least stored exponent (order_ if no terms)
        return c_.empty() ? order_ : c_.begin()->first;
    }

    bool is_zero_upto_order() const { return c_.empty(); }

    OneVarSeries truncated(int order) const {
        OneVarSeries r(var_, std::min(order_, order));
        for (const auto& [e, c] : c_) r.set(e, c);
        return r;
    }

    friend OneVarSeries operator+(const OneVarSeries& x, const OneVarSeries& y) {
        OneVarSeries r(x.var_, std::min(x.order_, y.order_));
        for (const auto& [e, c] : x.c_) r.add(e, c);
        for (const auto& [e, c] : y.c_) r.add(e, c);
        return r;
    }
    friend OneVarSeries operator-(const OneVarSeries& x, const OneVarSeries& y) {
        OneVarSeries r(x.var_, std::min(x.order_, y.order_));
        for (const auto& [e, c] : x.c_) r.add(e, c);
        for (const auto& [e, c] : y.c_) r.add(e, -c);
        return r;
    }
    friend OneVarSeries operator*(const OneVarSeries& x, const OneVarSeries& y) {
        long long o1 = (x.order_ >= kExactOrder && y.c_.empty() && y.order_ >= kExactOrder)
                           ? kExactOrder
                           : std::min<long long>(
                                 (long long)x.order_ + (y.c_.empty() ? 0 : y.val()),
                                 (long long)y.order_ + (x.c_.empty() ? 0 : x.val()));
        if (x.order_ >= kExactOrder && y.order_ >= kExactOrder) o1 = kExactOrder;
        OneVarSeries r(x.var_, (int)std::min<long long>(o1, kExactOrder));
        for (const auto& [e1, c1] : x.c_)
            for (const auto& [e2, c2] : y.c_) r.add(e1 + e2, c1 * c2);
        return r;
    }
    friend OneVarSeries operator*(const Scalar& c, const OneVarSeries& x) {
        OneVarSeries r(x.var_, x.order_);
        for (const auto& [e, q] : x.c_) r.set(e, c * q);
        return r;
    }

    OneVarSeries deriv() const {
        OneVarSeries r(var_, order_ >= kExactOrder ? kExactOrder : order_ - 1);
        for (const auto& [e, c] : c_) r.add(e - 1, Scalar(e) * c);
        return r;
    }

    // Classical residue: coefficient of var^-1.
    Scalar res() const {
        if (order_ < 0)
            throw TruncationTooCoarse("residue hidden by truncation");
        return coeff_unchecked(-1);
    }

    friend bool operator==(const OneVarSeries& x, const OneVarSeries& y) {
        return x.var_ == y.var_ && x.order_ == y.order_ && x.c_ == y.c_;
    }

    std::string str() const {
        std::ostringstream os;
        if (c_.empty()) {
            os << "0";
        } else {
            bool first = true;
            for (const auto& [e, c] : c_) {
                if (!first) os << " + ";
                first = false;
                os << "(" << c.str() << ")";
                if (e != 0) {
                    os << "*" << var_letter(var_);
                    if (e != 1) os << "^" << e;
                }
            }
        }
        if (order_ < kExactOrder)
            os << " mod " << var_letter(var_) << "^" << order_;
        return os.str();
    }

private:
    Scalar coeff_unchecked(int e) const {
        auto it = c_.find(e);
        return it == c_.end() ? Scalar() : it->second;
    }

    Var var_;
    std::map<int, Scalar> c_;
    int order_;
};

enum class BasisFamily { U, V, X, Y };

struct BasisIndex {
    BasisFamily family;
    int n;
    friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
};

inline char family_letter(BasisFamily f) {
    switch (f) {
        case BasisFamily::U: return 'u';
        case BasisFamily::V: return 'v';
        case BasisFamily::X: return 'x';
        case BasisFamily::Y: return 'y';
    }
    return '?';
}

// Finite Scalar-combination of monomials t^i s^j, with an optional truncation
// marker m meaning "known modulo u_m*C[[t,s]]".  Absent marker means exact.
class TwoVarFun {
public:
    TwoVarFun() = default;

    static TwoVarFun monomial(const Scalar& c, int i, int j) {
        TwoVarFun f;
        f.add(i, j, c);
        return f;
    }
    static TwoVarFun u(int n) { return monomial(Scalar(1), n, n); }
    static TwoVarFun v(int n) { return monomial(Scalar(1), n, n + 1); }
    static TwoVarFun x(int n) { return monomial(Scalar(1), n, n); }
    static TwoVarFun y(int n) { return monomial(Scalar(1), n + 1, n); }
    // w/z families of the half-integer parametrisation, index given doubled.
    static TwoVarFun w2(int m2) {
        return m2 % 2 == 0 ? u(m2 / 2) : v((m2 - 1) / 2);
    }
    static TwoVarFun z2(int m2) {
        if (m2 % 2 == 0) return x(m2 / 2);
        return y((m2 - 1) / 2);
    }
    static TwoVarFun basis(BasisIndex b) {
        switch (b.family) {
            case BasisFamily::U: return u(b.n);
            case BasisFamily::V: return v(b.n);
            case BasisFamily::X: return x(b.n);
            case BasisFamily::Y: return y(b.n);
        }
        return {};
    }

    const std::map<std::pair<int, int>, Scalar>& terms() const { return t_; }
    std::optional<int> trunc() const { return trunc_; }

    void set_trunc(std::optional<int> m) {
        trunc_ = m;
        strip();
    }

    bool is_zero() const { return t_.empty(); }

    Scalar coeff(int i, int j) const {
        auto it = t_.find({i, j});
        return it == t_.end() ? Scalar() : it->second;
    }

    // Least min(i,j) over stored terms; for an empty function returns trunc
    // (or a large sentinel when exact).
    int val() const {
        int v = trunc_ ? *trunc_ : kExactOrder;
        for (const auto& [ij, c] : t_) v = std::min(v, std::min(ij.first, ij.second));
        return v;
    }

    // Terms are kept canonical on the free A-basis {u_n, v_n}: the only
    // stored exponent pairs are (n, n) and (n, n+1).  Other monomials are
    // reduced through s = t - a (the monomials t^i s^j are not independent
    // over Q[a, a^-1]).
    void add(int i, int j, const Scalar& c) {
        if (c.is_zero()) return;
        if (j - i == 0 || j - i == 1) {
            add_raw(i, j, c);
            return;
        }
        if (j > i + 1) {
            // t^i s^j = t^{i+1} s^{j-1} - a t^i s^{j-1}
            add(i + 1, j - 1, c);
            add(i, j - 1, Scalar::monomial(-1, 1) * c);
        } else {
            // i > j + 1: t^i s^j = t^{i-1} s^{j+1} + a t^{i-1} s^j
            add(i - 1, j + 1, c);
            add(i - 1, j, Scalar::monomial(1, 1) * c);
        }
    }

    friend TwoVarFun operator+(const TwoVarFun& f, const TwoVarFun& g) {
        TwoVarFun r;
        r.trunc_ = min_trunc(f.trunc_, g.trunc_);
        for (const auto& [ij, c] : f.t_) r.add(ij.first, ij.second, c);
        for (const auto& [ij, c] : g.t_) r.add(ij.first, ij.second, c);
        return r;
    }
    friend TwoVarFun operator-(const TwoVarFun& f, const TwoVarFun& g) {
        TwoVarFun r;
        r.trunc_ = min_trunc(f.trunc_, g.trunc_);
        for (const auto& [ij, c] : f.t_) r.add(ij.first, ij.second, c);
        for (const auto& [ij, c] : g.t_) r.add(ij.first, ij.second, -c);
        return r;
    }
    friend TwoVarFun operator*(const Scalar& c, const TwoVarFun& f) {
        TwoVarFun r;
        r.trunc_ = f.trunc_;
        for (const auto& [ij, q] : f.t_) r.add(ij.first, ij.second, c * q);
        return r;
    }
    friend TwoVarFun operator-(const TwoVarFun& f) { return Scalar(-1) * f; }

    friend bool operator==(const TwoVarFun& f, const TwoVarFun& g) {
        return f.t_ == g.t_ && f.trunc_ == g.trunc_;
    }

    // Exact product; the resulting truncation is the tightest level implied
    // by the operand truncations.
    friend TwoVarFun mul2(const TwoVarFun& f, const TwoVarFun& g) {
        TwoVarFun r;
        std::optional<int> m;
        if (f.trunc_) m = clamp_level((long long)*f.trunc_ + g.val());
        if (g.trunc_) {
            int m2 = clamp_level((long long)*g.trunc_ + f.val());
            m = m ? std::min(*m, m2) : m2;
        }
        if (m && *m >= kExactOrder) m.reset();
        r.trunc_ = m;
        for (const auto& [ij1, c1] : f.t_)
            for (const auto& [ij2, c2] : g.t_)
                r.add(ij1.first + ij2.first, ij1.second + ij2.second, c1 * c2);
        return r;
    }
    friend TwoVarFun operator*(const TwoVarFun& f, const TwoVarFun& g) { return mul2(f, g); }

    // The A-linear derivation with dt = ds = 1, applied termwise.
    friend TwoVarFun deriv2(const TwoVarFun& f) {
        TwoVarFun r;
        if (f.trunc_) r.trunc_ = *f.trunc_ - 1;
        for (const auto& [ij, c] : f.t_) {
            r.add(ij.first - 1, ij.second, Scalar(ij.first) * c);
            r.add(ij.first, ij.second - 1, Scalar(ij.second) * c);
        }
        return r;
    }

    // res2(t^i s^j) = (binom(i,-j-1) + (-1)^(i+j+1) binom(j,-i-1)) a^(i+j+1).
    friend Scalar res2(const TwoVarFun& f) {
        if (f.trunc_ && *f.trunc_ < 0)
            throw TruncationTooCoarse("res2 of a function truncated below level 0");
        Scalar r;
        for (const auto& [ij, c] : f.t_) r += res2_monomial(ij.first, ij.second) * c;
        return r;
    }

    static Scalar res2_monomial(int i, int j) {
        Rational b = gen_binomial(i, -(long long)j - 1);
        Rational b2 = gen_binomial(j, -(long long)i - 1);
        if ((i + j + 1) % 2 != 0) b2 = -b2;  // (-1)^(i+j+1)
        Rational q = b + b2;
        if (q == 0) return Scalar();
        return Scalar::monomial(q, i + j + 1);
    }

    enum class BasisPair { UV, XY };

    // Coefficients of f in the {u_n, v_n} (resp. {x_n, y_n}) A-basis.
    std::map<BasisIndex, Scalar> to_basis(BasisPair fam) const {
        std::map<BasisIndex, Scalar> out;
        for (const auto& [ij, c] : t_) monomial_to_basis(ij.first, ij.second, c, fam, out);
        for (auto it = out.begin(); it != out.end();)
            it = it->second.is_zero() ? out.erase(it) : std::next(it);
        return out;
    }

    static TwoVarFun from_basis(const std::map<BasisIndex, Scalar>& m) {
        TwoVarFun f;
        for (const auto& [b, c] : m) f = f + c * basis(b);
        return f;
    }

    // Expansion map E_t (substitute s = t-a) or E_s (substitute t = s+a),
    // truncated at the requested order.
    OneVarSeries expand(Var var, int order) const {
        int eff = order;
        if (trunc_) eff = std::min(eff, *trunc_);
        OneVarSeries out(var, eff);
        for (const auto& [ij, c] : t_) {
            int i = ij.first, j = ij.second;
            if ((var == Var::t ? j : i) < 0 && eff >= kExactOrder)
                throw std::invalid_argument("expansion of a pole requires a finite order");
            // E_t(t^i s^j) = t^i (t-a)^j ; E_s(t^i s^j) = (s+a)^i s^j.
            int base = var == Var::t ? i : j;
            int pw = var == Var::t ? j : i;
            // (x -+ a)^pw = sum_k binom(pw,k) (coef-pattern) x^k, valid for
            // pw < 0 as a geometric-type series.
            for (int k = 0; base + k < eff; ++k) {
                Rational b = gen_binomial(pw, k);
                if (pw >= 0 && k > pw) break;
                if (b == 0) continue;
                int aexp = pw - k;
                Rational sgn = 1;
                if (var == Var::t) {
                    // (t-a)^pw : coefficient of t^k is binom(pw,k)(-1)^(pw-k)a^(pw-k)
                    if (((aexp % 2) + 2) % 2 == 1) sgn = -1;
                }
                out.add(base + k, c * Scalar::monomial(b * sgn, aexp));
            }
        }
        return out;
    }

    // Sp: a = 0 and s = t.  Requires every coefficient in Q[a].
    OneVarSeries specialize_diag(int order) const {
        long long eff = order;
        if (trunc_) eff = std::min<long long>(eff, 2LL * *trunc_);
        OneVarSeries out(Var::t, clamp_level(eff));
        for (const auto& [ij, c] : t_)
            out.add(ij.first + ij.second, Scalar(c.specialize_a0()));
        return out;
    }

    std::string str() const {
        std::ostringstream os;
        if (t_.empty()) {
            os << "0";
        } else {
            bool first = true;
            for (const auto& [ij, c] : t_) {
                if (!first) os << " + ";
                first = false;
                os << "(" << c.str() << ")";
                if (ij.first != 0) {
                    os << "*t";
                    if (ij.first != 1) os << "^" << ij.first;
                }
                if (ij.second != 0) {
                    os << "*s";
                    if (ij.second != 1) os << "^" << ij.second;
                }
            }
        }
        if (trunc_) os << " mod u_" << *trunc_;
        return os.str();
    }

    static TwoVarFun parse(const std::string& text);

private:
    void add_raw(int i, int j, const Scalar& c) {
        if (trunc_ && std::min(i, j) >= *trunc_) return;
        auto key = std::make_pair(i, j);
        auto it = t_.find(key);
        if (it == t_.end()) {
            if (!c.is_zero()) t_[key] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    static std::optional<int> min_trunc(std::optional<int> x, std::optional<int> y) {
        if (!x) return y;
        if (!y) return x;
        return std::min(*x, *y);
    }
    static int clamp_level(long long v) {
        if (v > kExactOrder) return kExactOrder;
        if (v < -kExactOrder) return -kExactOrder;
        return (int)v;
    }
    void strip() {
        if (!trunc_) return;
        for (auto it = t_.begin(); it != t_.end();) {
            if (std::min(it->first.first, it->first.second) >= *trunc_)
                it = t_.erase(it);
            else
                ++it;
        }
    }

    // t^i s^j in the u/v (or x/y) basis, by peeling powers of s = t-a
    // (resp. t = s+a) until a basis monomial remains.
    static void monomial_to_basis(int i, int j, const Scalar& c, BasisPair fam,
                                  std::map<BasisIndex, Scalar>& out) {
        auto emit = [&out](BasisIndex b, const Scalar& q) {
            auto& slot = out[b];
            slot += q;
        };
        if (fam == BasisPair::UV) {
            if (i == j) { emit({BasisFamily::U, i}, c); return; }
            if (j == i + 1) { emit({BasisFamily::V, i}, c); return; }
            if (j > i + 1) {
                // t^i s^j = t^(i+1) s^(j-1) - a t^i s^(j-1)
                monomial_to_basis(i + 1, j - 1, c, fam, out);
                monomial_to_basis(i, j - 1, Scalar::monomial(-1, 1) * c, fam, out);
            } else {
                // i > j: t^i s^j = t^(i-1) s^(j+1) + a t^(i-1) s^j
                monomial_to_basis(i - 1, j + 1, c, fam, out);
                monomial_to_basis(i - 1, j, Scalar::monomial(1, 1) * c, fam, out);
            }
        } else {
            if (i == j) { emit({BasisFamily::X, i}, c); return; }
            if (i == j + 1) { emit({BasisFamily::Y, j}, c); return; }
            if (i > j + 1) {
                // t^i s^j = t^(i-1) s^(j+1) + a t^(i-1) s^j
                monomial_to_basis(i - 1, j + 1, c, fam, out);
                monomial_to_basis(i - 1, j, Scalar::monomial(1, 1) * c, fam, out);
            } else {
                // j > i: t^i s^j = t^(i+1) s^(j-1) - a t^i s^(j-1)
                monomial_to_basis(i + 1, j - 1, c, fam, out);
                monomial_to_basis(i, j - 1, Scalar::monomial(-1, 1) * c, fam, out);
            }
        }
    }

    std::map<std::pair<int, int>, Scalar> t_;
    std::optional<int> trunc_;
};

inline TwoVarFun TwoVarFun::parse(const std::string& text) {
    // Accepts the output of str(): "(<scalar>)*t^i*s^j + ... [mod u_m]".
    TwoVarFun f;
    size_t p = 0;
    std::string body = text;
    std::optional<int> trunc;
    if (auto mp = text.find(" mod u_"); mp != std::string::npos) {
        trunc = std::stoi(text.substr(mp + 7));
        body = text.substr(0, mp);
    }
    detail::skip_ws(body, p);
    if (body.substr(p) == "0") {
        f.set_trunc(trunc);
        return f;
    }
    while (p < body.size()) {
        detail::skip_ws(body, p);
        bool neg = false;
        if (body[p] == '+' || body[p] == '-') {
            neg = body[p] == '-';
            ++p;
            detail::skip_ws(body, p);
        }
        Scalar coef(1);
        if (body[p] == '(') {
            size_t close = body.find(')', p);
            if (close == std::string::npos) throw std::invalid_argument("unbalanced ( in TwoVarFun text");
            coef = Scalar::parse(body.substr(p + 1, close - p - 1));
            p = close + 1;
        } else {
            size_t q0 = p;
            while (p < body.size() && (std::isdigit(static_cast<unsigned char>(body[p])) || body[p] == '/')) ++p;
            if (p > q0) coef = Scalar(parse_rational(body.substr(q0, p - q0)));
        }
        int i = 0, j = 0;
        while (p < body.size() && (body[p] == '*' || body[p] == 't' || body[p] == 's')) {
            if (body[p] == '*') { ++p; continue; }
            char v = body[p++];
            int e = 1;
            if (p < body.size() && body[p] == '^') {
                ++p;
                size_t e0 = p;
                if (p < body.size() && (body[p] == '-' || body[p] == '+')) ++p;
                while (p < body.size() && std::isdigit(static_cast<unsigned char>(body[p]))) ++p;
                e = std::stoi(body.substr(e0, p - e0));
            }
            (v == 't' ? i : j) = e;
        }
        if (neg) coef = -coef;
        f.add(i, j, coef);
        detail::skip_ws(body, p);
    }
    f.set_trunc(trunc);
    return f;
}

inline std::string basis_map_str(const std::map<BasisIndex, Scalar>& m) {
    if (m.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, c] : m) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*" << family_letter(b.family) << "_" << b.n;
    }
    return os.str();
}

} // namespace sugop

#endif
