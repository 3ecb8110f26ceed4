#pragma once

#include <utility>
#include <vector>

#include "qlab/qpoly.hpp"

namespace qlab {

// Polynomial in two parameters t and u over Q, stored densely as a
// polynomial in t whose coefficients are QPoly's in u.  (Throughout the
// library u plays the role of the second equivariant parameter t*.)
struct Poly2 {
    std::vector<QPoly> c;  // c[d] = coefficient of t^d; no trailing zero

    Poly2() = default;
    explicit Poly2(QPoly u_poly) { c.push_back(std::move(u_poly)); trim(); }
    explicit Poly2(mpq_class a) : Poly2(QPoly(std::move(a))) {}

    static Poly2 t_var() {
        Poly2 r;
        r.c = {QPoly{}, QPoly(mpq_class(1))};
        return r;
    }
    static Poly2 u_var() { return Poly2(QPoly::monomial(1, 1)); }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg_t() const { return (int)c.size() - 1; }
    const QPoly& lead_t() const { return c.back(); }

    friend Poly2 operator+(const Poly2& a, const Poly2& b) {
        Poly2 r;
        r.c.resize(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = r.c[i] + a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
        r.trim();
        return r;
    }
    friend Poly2 operator-(const Poly2& a, const Poly2& b) {
        Poly2 r;
        r.c.resize(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = r.c[i] + a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
        r.trim();
        return r;
    }
    Poly2 operator-() const {
        Poly2 r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        if (a.is_zero() || b.is_zero()) return Poly2{};
        Poly2 r;
        r.c.resize(a.c.size() + b.c.size() - 1);
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
        r.trim();
        return r;
    }
    friend bool operator==(const Poly2& a, const Poly2& b) { return a.c == b.c; }

    mpq_class eval(const mpq_class& t, const mpq_class& u) const {
        mpq_class r = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * t + it->eval(u);
        return r;
    }

    // gcd over Q[u] of all t-coefficients (monic); zero polynomial -> 0.
    QPoly content() const {
        QPoly g;
        for (const auto& x : c) g = gcd(g, x);
        return g;
    }

    // Divide every coefficient by the exact QPoly divisor d.
    Poly2 div_content(const QPoly& d) const {
        Poly2 r;
        r.c.reserve(c.size());
        for (const auto& x : c) {
            auto [q, rem] = x.divmod(d);
            if (!rem.is_zero()) throw consistency_error("Poly2: inexact content division");
            r.c.push_back(q);
        }
        r.trim();
        return r;
    }

    Poly2 primitive() const {
        if (is_zero()) return *this;
        return div_content(content());
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int d = deg_t(); d >= 0; --d) {
            if (c[d].is_zero()) continue;
            if (!s.empty()) s += " + ";
            if (d == 0) { s += "(" + c[d].str("u") + ")"; continue; }
            s += "(" + c[d].str("u") + ")*t";
            if (d > 1) s += "^" + std::to_string(d);
        }
        return s;
    }
};

namespace detail {
// Throwaway rational coefficients in u, used only inside exact Poly2 division.
struct RatU {
    QPoly n, d;
    RatU() : d(QPoly(mpq_class(1))) {}
    RatU(QPoly n_, QPoly d_) : n(std::move(n_)), d(std::move(d_)) { reduce(); }
    void reduce() {
        if (n.is_zero()) { d = QPoly(mpq_class(1)); return; }
        QPoly g = gcd(n, d);
        if (g.degree() > 0) { n = n.divmod(g).first; d = d.divmod(g).first; }
        mpq_class l = d.lead();
        for (auto& x : n.c) x /= l;
        for (auto& x : d.c) x /= l;
    }
};
}  // namespace detail

// Exact division in Q[t,u]; throws if b does not divide a.
inline Poly2 div_exact(const Poly2& a, const Poly2& b) {
    if (b.is_zero()) throw domain_error("Poly2: division by zero");
    if (a.is_zero()) return Poly2{};
    using detail::RatU;
    // long division in t over the field Q(u)
    std::vector<RatU> rem(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) rem[i] = RatU(a.c[i], QPoly(mpq_class(1)));
    int da = a.deg_t(), db = b.deg_t();
    if (da < db) throw consistency_error("Poly2: inexact division (degree)");
    std::vector<RatU> quo(da - db + 1);
    for (int sh = da - db; sh >= 0; --sh) {
        // f := current leading remainder coefficient divided by lead(b)
        RatU f(rem[sh + db].n, rem[sh + db].d * b.c[db]);
        quo[sh] = f;
        for (int i = 0; i <= db; ++i) {
            // rem[sh+i] -= f * b.c[i]
            RatU& r = rem[sh + i];
            QPoly nn = r.n * f.d - f.n * b.c[i] * r.d;
            QPoly dd = r.d * f.d;
            r = RatU(nn, dd);
        }
    }
    Poly2 q;
    q.c.resize(quo.size());
    for (size_t i = 0; i < quo.size(); ++i) {
        if (quo[i].d.degree() != 0)
            throw consistency_error("Poly2: inexact division (denominator)");
        QPoly n = quo[i].n;
        mpq_class s = quo[i].d.lead();
        for (auto& x : n.c) x /= s;
        q.c[i] = n;
    }
    q.trim();
    for (const auto& r : rem)
        if (!r.n.is_zero()) throw consistency_error("Poly2: inexact division (remainder)");
    return q;
}

// Pseudo-remainder of a by b in t: lead(b)^(da-db+1) * a  mod  b.
inline Poly2 pseudo_rem(Poly2 a, const Poly2& b) {
    int db = b.deg_t();
    const QPoly& lb = b.lead_t();
    while (!a.is_zero() && a.deg_t() >= db) {
        int sh = a.deg_t() - db;
        QPoly la = a.lead_t();
        Poly2 scaled;
        scaled.c.resize(a.c.size());
        for (size_t i = 0; i < a.c.size(); ++i) scaled.c[i] = a.c[i] * lb;
        for (int i = 0; i <= db; ++i) scaled.c[i + sh] = scaled.c[i + sh] - la * b.c[i];
        scaled.trim();
        a = std::move(scaled);
    }
    return a;
}

// gcd in Q[t,u] via the primitive polynomial remainder sequence; the result
// is primitive in u with monic content convention inherited from QPoly gcd.
inline Poly2 gcd(const Poly2& a, const Poly2& b) {
    if (a.is_zero()) return b.is_zero() ? b : b.div_content(QPoly(b.content().lead())).primitive();
    if (b.is_zero()) return a.primitive();
    QPoly cont = gcd(a.content(), b.content());
    Poly2 x = a.primitive(), y = b.primitive();
    if (x.deg_t() < y.deg_t()) std::swap(x, y);
    while (!y.is_zero()) {
        Poly2 r = pseudo_rem(x, y);
        x = std::move(y);
        y = r.is_zero() ? Poly2{} : r.primitive();
    }
    Poly2 g = x.primitive();
    // scale so the leading coefficient (in t, then u) is monic
    for (auto& q : g.c)
        for (auto& v : q.c) v /= g.lead_t().lead();
    Poly2 res;
    res.c.resize(g.c.size());
    for (size_t i = 0; i < g.c.size(); ++i) res.c[i] = g.c[i] * cont;
    res.trim();
    return res;
}

// Element of the fraction field Q(t,u), reduced with a lead-monic denominator.
struct RatFunc2 {
    Poly2 num, den;

    RatFunc2() : den(Poly2(mpq_class(1))) {}
    explicit RatFunc2(Poly2 n) : num(std::move(n)), den(Poly2(mpq_class(1))) {}
    explicit RatFunc2(mpq_class a) : RatFunc2(Poly2(std::move(a))) {}
    RatFunc2(Poly2 n, Poly2 d) : num(std::move(n)), den(std::move(d)) { reduce(); }

    static RatFunc2 t_var() { return RatFunc2(Poly2::t_var()); }
    static RatFunc2 u_var() { return RatFunc2(Poly2::u_var()); }

    // field-element protocol used by the generic linear algebra
    RatFunc2 zero() const { return RatFunc2{}; }
    RatFunc2 one() const { return RatFunc2(mpq_class(1)); }
    RatFunc2 inv() const {
        if (is_zero()) throw domain_error("RatFunc2: division by zero");
        return RatFunc2(den, num);
    }

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num == den; }

    // reduced fractions keep constant denominators normalized to exactly 1
    bool den_is_one() const {
        return den.deg_t() == 0 && den.lead_t().degree() == 0 && den.lead_t().lead() == 1;
    }

    void reduce() {
        if (den.is_zero()) throw domain_error("RatFunc2: zero denominator");
        if (num.is_zero()) { den = Poly2(mpq_class(1)); return; }
        if (den.deg_t() == 0 && den.lead_t().degree() == 0) {
            // constant denominator: no gcd needed, just normalize
            mpq_class l0 = den.lead_t().lead();
            if (l0 != 1)
                for (auto& q : num.c)
                    for (auto& v : q.c) v /= l0;
            den = Poly2(mpq_class(1));
            return;
        }
        Poly2 g = gcd(num, den);
        if (g.deg_t() > 0 || g.lead_t().degree() > 0) {
            num = div_exact(num, g);
            den = div_exact(den, g);
        }
        mpq_class l = den.lead_t().lead();
        for (auto& q : num.c)
            for (auto& v : q.c) v /= l;
        for (auto& q : den.c)
            for (auto& v : q.c) v /= l;
    }

    friend RatFunc2 operator+(const RatFunc2& a, const RatFunc2& b) {
        if (a.den_is_one() && b.den_is_one()) return RatFunc2(a.num + b.num);
        return RatFunc2(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatFunc2 operator-(const RatFunc2& a, const RatFunc2& b) {
        if (a.den_is_one() && b.den_is_one()) return RatFunc2(a.num - b.num);
        return RatFunc2(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend RatFunc2 operator*(const RatFunc2& a, const RatFunc2& b) {
        if (a.den_is_one() && b.den_is_one()) return RatFunc2(a.num * b.num);
        return RatFunc2(a.num * b.num, a.den * b.den);
    }
    friend RatFunc2 operator/(const RatFunc2& a, const RatFunc2& b) {
        if (b.is_zero()) throw domain_error("RatFunc2: division by zero");
        return RatFunc2(a.num * b.den, a.den * b.num);
    }
    RatFunc2 operator-() const {
        RatFunc2 r = *this;
        r.num = -r.num;
        return r;
    }
    RatFunc2& operator+=(const RatFunc2& b) { return *this = *this + b; }
    RatFunc2& operator-=(const RatFunc2& b) { return *this = *this - b; }
    RatFunc2& operator*=(const RatFunc2& b) { return *this = *this * b; }

    friend bool operator==(const RatFunc2& a, const RatFunc2& b) {
        // cross multiplication: robust against normalization differences
        return a.num * b.den == b.num * a.den;
    }
    friend bool operator!=(const RatFunc2& a, const RatFunc2& b) { return !(a == b); }

    bool is_polynomial() const { return den.deg_t() == 0 && den.lead_t().degree() == 0; }
    Poly2 as_poly() const {
        if (is_polynomial()) {
            mpq_class s = den.lead_t().lead();
            Poly2 r = num;
            for (auto& q : r.c)
                for (auto& v : q.c) v /= s;
            return r;
        }
        throw domain_error("RatFunc2: not a polynomial: " + str());
    }

    mpq_class eval(const mpq_class& t, const mpq_class& u) const {
        mpq_class d = den.eval(t, u);
        if (d == 0) throw domain_error("RatFunc2: evaluation at a pole");
        return num.eval(t, u) / d;
    }

    std::string str() const {
        if (is_polynomial()) return num.str();
        return "(" + num.str() + ") / (" + den.str() + ")";
    }
};

}  // namespace qlab
