#ifndef SUGOP_SCALAR_HPP
#define SUGOP_SCALAR_HPP

#include "sugop/errors.hpp"
#include "sugop/rational.hpp"

#include <map>
#include <sstream>
#include <string>
#include <utility>

namespace sugop {

// Element of Q[a, a^-1]: sparse map exponent -> rational, no zero entries.
// This is the coefficient ring of the whole library.
class Scalar {
public:
    Scalar() = default;
    Scalar(const Rational& r) { set(0, r); }
    Scalar(long long n) { set(0, Rational(n)); }
    Scalar(int n) { set(0, Rational(n)); }

    static Scalar a(int exp = 1) { return monomial(1, exp); }

    static Scalar monomial(const Rational& c, int exp) {
        Scalar s;
        s.set(exp, c);
        return s;
    }

    bool is_zero() const { return c_.empty(); }
    bool is_monomial() const { return c_.size() == 1; }
    bool is_constant() const {
        return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0);
    }

    const std::map<int, Rational>& terms() const { return c_; }

    Rational coeff(int exp) const {
        auto it = c_.find(exp);
        return it == c_.end() ? Rational(0) : it->second;
    }

    int min_exp() const { return c_.empty() ? 0 : c_.begin()->first; }
    int max_exp() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    Scalar& operator+=(const Scalar& o) {
        for (const auto& [e, q] : o.c_) add(e, q);
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        for (const auto& [e, q] : o.c_) add(e, -q);
        return *this;
    }
    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator-(const Scalar& x) {
        Scalar r;
        for (const auto& [e, q] : x.c_) r.set(e, -q);
        return r;
    }

    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        Scalar r;
        for (const auto& [e1, q1] : x.c_)
            for (const auto& [e2, q2] : y.c_) r.add(e1 + e2, q1 * q2);
        return r;
    }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar pow(unsigned n) const {
        Scalar r(1);
        for (unsigned i = 0; i < n; ++i) r *= *this;
        return r;
    }

    // Exact division by a monomial c*a^e.
    friend Scalar operator/(const Scalar& x, const Scalar& m) {
        if (m.is_zero()) throw DivisionError("division by zero Scalar");
        if (!m.is_monomial())
            throw DivisionError("division only by monomials in a");
        const auto [e, q] = *m.c_.begin();
        Scalar r;
        for (const auto& [e1, q1] : x.c_) r.set(e1 - e, q1 / q);
        return r;
    }

    friend bool operator==(const Scalar& x, const Scalar& y) { return x.c_ == y.c_; }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
    friend bool operator<(const Scalar& x, const Scalar& y) { return x.c_ < y.c_; }

    // Constant term; defined only on Q[a] (the ring A of the construction).
    Rational specialize_a0() const {
        if (!c_.empty() && c_.begin()->first < 0)
            throw NegativePowerOfA("specialisation at a=0 of an element with a^"
                                   + std::to_string(c_.begin()->first));
        return coeff(0);
    }

    bool a_nonnegative() const { return c_.empty() || c_.begin()->first >= 0; }

    // Canonical text form, terms in increasing exponent order,
    // e.g. "-1/4*a^-2 + 3 + 2*a".
    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, q] : c_) {
            Rational aq = q < 0 ? Rational(-q) : q;
            if (first) {
                if (q < 0) os << "-";
                first = false;
            } else {
                os << (q < 0 ? " - " : " + ");
            }
            if (e == 0) {
                os << to_string(aq);
            } else {
                if (aq != 1) os << to_string(aq) << "*";
                os << "a";
                if (e != 1) os << "^" << e;
            }
        }
        return os.str();
    }

    static Scalar parse(const std::string& text);

private:
    void set(int e, const Rational& q) {
        if (q == 0)
            c_.erase(e);
        else
            c_[e] = q;
    }
    void add(int e, const Rational& q) {
        auto it = c_.find(e);
        if (it == c_.end()) {
            if (q != 0) c_[e] = q;
        } else {
            it->second += q;
            if (it->second == 0) c_.erase(it);
        }
    }

    std::map<int, Rational> c_;
};

namespace detail {

inline void skip_ws(const std::string& s, size_t& p) {
    while (p < s.size() && s[p] == ' ') ++p;
}

// Parses one term "c", "c*a^e", "a^e", "a", "-a", ... starting at p.
inline Scalar parse_scalar_term(const std::string& s, size_t& p) {
    skip_ws(s, p);
    bool neg = false;
    if (p < s.size() && (s[p] == '+' || s[p] == '-')) {
        neg = s[p] == '-';
        ++p;
        skip_ws(s, p);
    }
    Rational coef = 1;
    bool saw_number = false;
    size_t start = p;
    while (p < s.size() && (std::isdigit(static_cast<unsigned char>(s[p])) || s[p] == '/')) ++p;
    if (p > start) {
        coef = parse_rational(s.substr(start, p - start));
        saw_number = true;
    }
    skip_ws(s, p);
    if (p < s.size() && s[p] == '*') {
        ++p;
        skip_ws(s, p);
    }
    int exp = 0;
    if (p < s.size() && s[p] == 'a') {
        ++p;
        exp = 1;
        if (p < s.size() && s[p] == '^') {
            ++p;
            size_t e0 = p;
            if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
            while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
            if (p == e0) throw std::invalid_argument("bad exponent in Scalar text");
            exp = std::stoi(s.substr(e0, p - e0));
        }
    } else if (!saw_number) {
        throw std::invalid_argument("expected term in Scalar text at '" + s.substr(start) + "'");
    }
    if (neg) coef = -coef;
    return Scalar::monomial(coef, exp);
}

} // namespace detail

inline Scalar Scalar::parse(const std::string& text) {
    size_t p = 0;
    detail::skip_ws(text, p);
    if (text.substr(p, 1) == "0" && p + 1 >= text.size()) return Scalar();
    Scalar r;
    while (p < text.size()) {
        r += detail::parse_scalar_term(text, p);
        detail::skip_ws(text, p);
        if (p < text.size() && (text[p] == '+' || text[p] == '-')) continue;
        if (p < text.size()) throw std::invalid_argument("trailing junk in Scalar text");
    }
    return r;
}

} // namespace sugop

#endif
