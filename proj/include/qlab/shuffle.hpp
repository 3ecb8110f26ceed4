#pragma once

#include <map>
#include <string>
#include <vector>

#include "qlab/poly2.hpp"

namespace qlab {

// Polynomial in x_1..x_n with coefficients in the fraction field Q(t,u).
// Exponent vectors always have length n; zero coefficients are never stored.
struct XPoly {
    int n = 0;
    std::map<std::vector<int>, RatFunc2> c;

    XPoly() = default;
    explicit XPoly(int nvars) : n(nvars) {}

    static XPoly constant(int nvars, RatFunc2 a);
    static XPoly variable(int nvars, int i);  // x_{i+1}, 0-based index

    void add_term(const std::vector<int>& e, const RatFunc2& a);
    bool is_zero() const { return c.empty(); }
    int total_degree() const;  // -1 for the zero polynomial

    friend XPoly operator+(const XPoly& a, const XPoly& b);
    friend XPoly operator-(const XPoly& a, const XPoly& b);
    friend XPoly operator*(const XPoly& a, const XPoly& b);
    friend bool operator==(const XPoly& a, const XPoly& b);

    XPoly scaled(const RatFunc2& s) const;
    // Rename variable k to perm[k] (perm is a permutation of 0..n-1).
    XPoly permuted(const std::vector<int>& perm) const;
    // Embed into nvars >= n variables, own variables shifted by offset.
    XPoly promoted(int nvars, int offset) const;
    // Exact division by (x_i - x_j); throws consistency_error on a nonzero
    // remainder.
    XPoly divided_by_difference(int i, int j) const;

    mpq_class eval(const mpq_class& t, const mpq_class& u,
                   const std::vector<mpq_class>& x) const;
    std::string str() const;
};

// Symmetric polynomial in x_1..x_n over Q(t,u); symmetry is verified when the
// wrapper is built, so every SymPoly in flight is genuinely symmetric.
struct SymPoly {
    int n = 0;
    XPoly p;

    SymPoly() = default;
    explicit SymPoly(XPoly q);  // throws consistency_error if not symmetric

    static SymPoly one(int nvars);

    bool is_zero() const { return p.is_zero(); }
    int total_degree() const { return p.total_degree(); }
    friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.p == b.p; }
    friend SymPoly operator+(const SymPoly& a, const SymPoly& b);
    friend SymPoly operator-(const SymPoly& a, const SymPoly& b);
    SymPoly scaled(const RatFunc2& s) const;
    std::string str() const { return p.str(); }
};

// Numerator roots of the kernel zeta(z) = (z-t-u)(z+t)(z+u)/z, i.e. the z's
// where the numerator vanishes: {t+u, -t, -u}.  Their sum is zero.
std::vector<RatFunc2> zeta_numerator_roots();

// SYM(f(x_1..x_v) g(x_{v+1}..x_{v+w}) prod_{i<=v<j} zeta(x_i-x_j)) / (v! w!).
// The symmetrization runs over all (v+w)! permutations; the result is checked
// to be denominator-free (consistency_error otherwise).
SymPoly shuffle_product(const SymPoly& f, const SymPoly& g);

// Image of the l-th elementary generator: prod_{1<=i,j<=l} (t + x_i - x_j)
// (the i = j factors contribute t^l).
SymPoly x_l_image(int l);

// Image of the one-variable generator D_k: t * x_1^k.
SymPoly d_k_image(int k);

struct WheelReport {
    bool ok = false;
    bool vacuous = false;  // fewer than 3 variables: nothing to check
};

// For every ordered pair (a, b) of distinct numerator roots, substituting
// x_1 = X, x_2 = X + a, x_3 = X + a + b (remaining variables independent)
// must annihilate f identically.
WheelReport wheel_check(const SymPoly& f);

enum class MembershipStatus { Certified, NotInSpan, Undetermined };

struct MembershipTerm {
    std::vector<int> gens;  // generator indices, weakly increasing
    RatFunc2 coeff;
};

struct MembershipResult {
    MembershipStatus status = MembershipStatus::Undetermined;
    std::vector<MembershipTerm> certificate;  // nonzero terms when certified
    std::string note;
};

// Does f lie in the span of n-fold shuffle products of the given one-variable
// generators, using only products whose x-degrees sum to at most degree_cap?
// A target whose degree exceeds the cap is reported as undetermined, never as
// non-membership; a failed solve within the cap is definite non-membership
// inside the spanned window.
MembershipResult membership_in_generated(const SymPoly& f, const std::vector<SymPoly>& generators,
                                         int degree_cap);

// The generator family {D_0, ..., D_k_max}.
std::vector<SymPoly> d_generator_family(int k_max);

// Text grammar for polynomial literals, e.g. "t^2*(t^2-(x1-x2)^2)".
// Atoms: integers, t, u (the second parameter t*), x1, x2, ...; operators
// + - * ^ and parentheses.  nvars = -1 infers the variable count from the
// largest index mentioned.  The result must be symmetric.
SymPoly parse_sympoly(const std::string& text, int nvars = -1);

}  // namespace qlab
