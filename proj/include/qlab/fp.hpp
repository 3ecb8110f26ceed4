#pragma once

#include <cstdint>
#include <string>

#include "qlab/errors.hpp"

namespace qlab {

// Element of the prime field F_p.  The modulus travels with the value so that
// generic linear algebra can recover the field from any entry.  A default
// constructed element is the "universal zero" (p == 0); it combines with any
// modulus and lets us value-initialize containers.
struct Fp {
    std::int64_t v = 0;  // representative in [0, p)
    std::int64_t p = 0;  // 0 means "zero of an unspecified field"

    Fp() = default;
    Fp(std::int64_t value, std::int64_t prime) : p(prime) {
        v = value % prime;
        if (v < 0) v += prime;
    }

    static Fp zero_of(std::int64_t prime) { return Fp(0, prime); }

    Fp zero() const { return Fp{0, p}; }
    Fp one() const { return Fp(1, p ? p : throw_no_field()); }

    bool is_zero() const { return v == 0; }

    friend Fp operator+(Fp a, Fp b) {
        std::int64_t p = join(a, b);
        if (p == 0) return Fp{};
        std::int64_t s = a.v + b.v;
        if (s >= p) s -= p;
        return Fp{s, p};
    }
    friend Fp operator-(Fp a, Fp b) {
        std::int64_t p = join(a, b);
        if (p == 0) return Fp{};
        std::int64_t s = a.v - b.v;
        if (s < 0) s += p;
        return Fp{s, p};
    }
    friend Fp operator*(Fp a, Fp b) {
        std::int64_t p = join(a, b);
        if (p == 0) return Fp{};
        // moduli stay below 2^31 in practice, so the product fits in int64
        return Fp{(a.v * b.v) % p, p};
    }
    Fp operator-() const { return v == 0 ? *this : Fp{p - v, p}; }

    Fp inv() const {
        if (v == 0) throw domain_error("Fp: division by zero");
        // extended Euclid
        std::int64_t a = v, b = p, x0 = 1, x1 = 0;
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        return Fp(x0, p);
    }
    friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }

    Fp& operator+=(Fp b) { return *this = *this + b; }
    Fp& operator-=(Fp b) { return *this = *this - b; }
    Fp& operator*=(Fp b) { return *this = *this * b; }

    friend bool operator==(Fp a, Fp b) {
        join(a, b);  // field compatibility check
        return a.v == b.v;
    }
    friend bool operator!=(Fp a, Fp b) { return !(a == b); }

    std::string str() const { return std::to_string(v); }

  private:
    static std::int64_t join(const Fp& a, const Fp& b) {
        if (a.p == 0) return b.p;
        if (b.p == 0) return a.p;
        if (a.p != b.p) throw domain_error("Fp: mixed moduli");
        return a.p;
    }
    static std::int64_t throw_no_field() {
        throw domain_error("Fp: one() on a field-less zero");
    }
};

}  // namespace qlab
