#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "qlab/errors.hpp"

namespace qlab {

// Dense univariate polynomial over Q, coefficients in ascending degree order.
// The zero polynomial is the empty vector; invariant: no trailing zero.
struct QPoly {
    std::vector<mpq_class> c;

    QPoly() = default;
    explicit QPoly(mpq_class c0) { c.push_back(std::move(c0)); trim(); }
    explicit QPoly(std::vector<mpq_class> cs) : c(std::move(cs)) { trim(); }

    static QPoly monomial(mpq_class a, int deg) {
        QPoly r;
        if (a == 0) return r;
        r.c.assign(deg + 1, mpq_class(0));
        r.c[deg] = std::move(a);
        return r;
    }

    int degree() const { return (int)c.size() - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }
    mpq_class lead() const { return c.empty() ? mpq_class(0) : c.back(); }
    mpq_class coeff(int d) const {
        return (d >= 0 && d < (int)c.size()) ? c[d] : mpq_class(0);
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        QPoly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), mpq_class(0));
        for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
        r.trim();
        return r;
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        QPoly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), mpq_class(0));
        for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
        r.trim();
        return r;
    }
    QPoly operator-() const {
        QPoly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return QPoly{};
        QPoly r;
        r.c.assign(a.c.size() + b.c.size() - 1, mpq_class(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
        r.trim();
        return r;
    }
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c == b.c; }

    // Euclidean division: *this = q*d + r with deg r < deg d.
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const {
        if (d.is_zero()) throw domain_error("QPoly: division by zero");
        QPoly r = *this, q;
        q.c.assign(std::max<int>(0, r.degree() - d.degree() + 1), mpq_class(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            mpq_class f = r.lead() / d.lead();
            int shift = r.degree() - d.degree();
            q.c[shift] = f;
            for (int i = 0; i <= d.degree(); ++i) r.c[i + shift] -= f * d.c[i];
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    QPoly monic() const {
        if (is_zero()) return *this;
        QPoly r = *this;
        mpq_class l = lead();
        for (auto& x : r.c) x /= l;
        return r;
    }

    mpq_class eval(const mpq_class& q) const {
        mpq_class r = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * q + *it;
        return r;
    }

    // Adams substitution q -> q^m.
    QPoly power_substitute(int m) const {
        QPoly r;
        if (is_zero()) return r;
        r.c.assign((size_t)degree() * m + 1, mpq_class(0));
        for (size_t i = 0; i < c.size(); ++i) r.c[i * m] = c[i];
        r.trim();
        return r;
    }

    bool integer_coefficients() const {
        for (const auto& x : c)
            if (x.get_den() != 1) return false;
        return true;
    }

    std::string str(const std::string& var = "q") const {
        if (is_zero()) return "0";
        std::string s;
        for (int d = degree(); d >= 0; --d) {
            if (c[d] == 0) continue;
            mpq_class a = c[d];
            if (!s.empty()) {
                s += (a < 0) ? " - " : " + ";
                if (a < 0) a = -a;
            }
            bool unit = (a == 1 && d > 0);
            if (!unit) s += a.get_str();
            if (d > 0) {
                if (!unit) s += "*";
                s += var;
                if (d > 1) s += "^" + std::to_string(d);
            }
        }
        return s;
    }
};

inline QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    while (!y.is_zero()) {
        QPoly r = x.divmod(y).second;
        x = y;
        y = r;
    }
    return x.monic();
}

// Rational function in one variable q over Q, kept reduced with monic
// denominator.  Supports exact evaluation, Adams operations and expansion as
// a power series in s = q^{-1}.
struct RatQ {
    QPoly num, den;  // den monic, gcd(num, den) = 1

    RatQ() : den(QPoly(mpq_class(1))) {}
    RatQ(QPoly n, QPoly d) : num(std::move(n)), den(std::move(d)) { reduce(); }
    explicit RatQ(QPoly n) : num(std::move(n)), den(QPoly(mpq_class(1))) {}
    explicit RatQ(mpq_class a) : num(QPoly(std::move(a))), den(QPoly(mpq_class(1))) {}
    explicit RatQ(long a) : RatQ(mpq_class(a)) {}

    static RatQ q_power(int d) {
        // q^d for d of either sign
        if (d >= 0) return RatQ(QPoly::monomial(1, d));
        return RatQ(QPoly(mpq_class(1)), QPoly::monomial(1, -d));
    }

    bool is_zero() const { return num.is_zero(); }

    void reduce() {
        if (den.is_zero()) throw domain_error("RatQ: zero denominator");
        if (num.is_zero()) { den = QPoly(mpq_class(1)); return; }
        QPoly g = gcd(num, den);
        if (g.degree() > 0) {
            num = num.divmod(g).first;
            den = den.divmod(g).first;
        }
        mpq_class l = den.lead();
        for (auto& x : num.c) x /= l;
        for (auto& x : den.c) x /= l;
    }

    friend RatQ operator+(const RatQ& a, const RatQ& b) {
        return RatQ(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatQ operator-(const RatQ& a, const RatQ& b) {
        return RatQ(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend RatQ operator*(const RatQ& a, const RatQ& b) {
        return RatQ(a.num * b.num, a.den * b.den);
    }
    friend RatQ operator/(const RatQ& a, const RatQ& b) {
        if (b.is_zero()) throw domain_error("RatQ: division by zero");
        return RatQ(a.num * b.den, a.den * b.num);
    }
    RatQ operator-() const { RatQ r = *this; r.num = -r.num; return r; }
    RatQ& operator+=(const RatQ& b) { return *this = *this + b; }
    RatQ& operator-=(const RatQ& b) { return *this = *this - b; }
    RatQ& operator*=(const RatQ& b) { return *this = *this * b; }
    friend bool operator==(const RatQ& a, const RatQ& b) {
        return a.num == b.num && a.den == b.den;
    }

    bool is_polynomial() const { return den.degree() == 0; }
    QPoly as_poly() const {
        if (!is_polynomial()) throw domain_error("RatQ: not a polynomial: " + str());
        return num;
    }

    mpq_class eval(const mpq_class& q) const {
        mpq_class d = den.eval(q);
        if (d == 0) throw domain_error("RatQ: evaluation at a pole");
        return num.eval(q) / d;
    }

    RatQ adams(int m) const {
        return RatQ(num.power_substitute(m), den.power_substitute(m));
    }

    // Coefficients of the expansion in powers of s = q^{-1}, degrees 0..K.
    // Throws if the expansion contains positive powers of q.
    std::vector<mpq_class> window(int K) const {
        std::vector<mpq_class> out((size_t)K + 1, mpq_class(0));
        if (is_zero()) return out;
        int dn = num.degree(), dd = den.degree();
        int offset = dd - dn;  // lowest s-power in the expansion
        if (offset < 0)
            throw domain_error("RatQ: expansion in q^{-1} has positive q-powers: " + str());
        // reversed coefficient sequences: num(q) = q^{dn} * A(s), den likewise
        std::vector<mpq_class> A(dn + 1), B(dd + 1);
        for (int i = 0; i <= dn; ++i) A[i] = num.c[dn - i];
        for (int i = 0; i <= dd; ++i) B[i] = den.c[dd - i];
        // series division A/B to K terms, then shift by offset
        std::vector<mpq_class> ser((size_t)K + 1, mpq_class(0));
        for (int n = 0; n <= K; ++n) {
            mpq_class acc = (n < (int)A.size()) ? A[n] : mpq_class(0);
            for (int j = 1; j <= n && j < (int)B.size(); ++j) acc -= B[j] * ser[n - j];
            ser[n] = acc / B[0];
        }
        for (int n = 0; n + offset <= K; ++n) out[n + offset] = ser[n];
        return out;
    }

    std::string str() const {
        if (is_polynomial()) return num.str();
        return "(" + num.str() + ")/(" + den.str() + ")";
    }
};

}  // namespace qlab
