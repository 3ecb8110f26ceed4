#include "qlab/shuffle.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "qlab/errors.hpp"
#include "qlab/matrix.hpp"

namespace qlab {

namespace {

RatFunc2 rat_one() { return RatFunc2(mpq_class(1)); }

// x_a - x_b as a polynomial in n variables.
XPoly difference(int n, int a, int b) {
    return XPoly::variable(n, a) - XPoly::variable(n, b);
}

// Numerator of zeta(x_a - x_b): (z - t - u)(z + t)(z + u) at z = x_a - x_b.
XPoly zeta_numerator(int n, int a, int b) {
    XPoly z = difference(n, a, b);
    XPoly t = XPoly::constant(n, RatFunc2::t_var());
    XPoly u = XPoly::constant(n, RatFunc2::u_var());
    return (z - t - u) * (z + t) * (z + u);
}

}  // namespace

XPoly XPoly::constant(int nvars, RatFunc2 a) {
    XPoly r(nvars);
    if (!a.is_zero()) r.c.emplace(std::vector<int>(nvars, 0), std::move(a));
    return r;
}

XPoly XPoly::variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw domain_error("XPoly: variable index out of range");
    XPoly r(nvars);
    std::vector<int> e(nvars, 0);
    e[i] = 1;
    r.c.emplace(std::move(e), rat_one());
    return r;
}

void XPoly::add_term(const std::vector<int>& e, const RatFunc2& a) {
    if ((int)e.size() != n) throw domain_error("XPoly: exponent length mismatch");
    auto it = c.find(e);
    if (it == c.end()) {
        if (!a.is_zero()) c.emplace(e, a);
        return;
    }
    it->second += a;
    if (it->second.is_zero()) c.erase(it);
}

int XPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, a] : c)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

XPoly operator+(const XPoly& a, const XPoly& b) {
    if (a.n != b.n) throw domain_error("XPoly: variable count mismatch");
    XPoly r = a;
    for (const auto& [e, v] : b.c) r.add_term(e, v);
    return r;
}

XPoly operator-(const XPoly& a, const XPoly& b) {
    if (a.n != b.n) throw domain_error("XPoly: variable count mismatch");
    XPoly r = a;
    for (const auto& [e, v] : b.c) r.add_term(e, -v);
    return r;
}

XPoly operator*(const XPoly& a, const XPoly& b) {
    if (a.n != b.n) throw domain_error("XPoly: variable count mismatch");
    XPoly r(a.n);
    std::vector<int> e(a.n);
    for (const auto& [ea, va] : a.c)
        for (const auto& [eb, vb] : b.c) {
            for (int i = 0; i < a.n; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, va * vb);
        }
    return r;
}

bool operator==(const XPoly& a, const XPoly& b) {
    if (a.n != b.n || a.c.size() != b.c.size()) return false;
    auto ia = a.c.begin();
    for (auto ib = b.c.begin(); ib != b.c.end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second != ib->second) return false;
    return true;
}

XPoly XPoly::scaled(const RatFunc2& s) const {
    XPoly r(n);
    if (s.is_zero()) return r;
    for (const auto& [e, v] : c) r.c.emplace(e, v * s);
    return r;
}

XPoly XPoly::permuted(const std::vector<int>& perm) const {
    if ((int)perm.size() != n) throw domain_error("XPoly: bad permutation length");
    XPoly r(n);
    std::vector<int> e2(n);
    for (const auto& [e, v] : c) {
        for (int k = 0; k < n; ++k) e2[perm[k]] = e[k];
        r.c.emplace(e2, v);
    }
    return r;
}

XPoly XPoly::promoted(int nvars, int offset) const {
    if (offset < 0 || offset + n > nvars) throw domain_error("XPoly: bad promotion");
    XPoly r(nvars);
    std::vector<int> e2(nvars, 0);
    for (const auto& [e, v] : c) {
        std::fill(e2.begin(), e2.end(), 0);
        for (int k = 0; k < n; ++k) e2[offset + k] = e[k];
        r.c.emplace(e2, v);
    }
    return r;
}

XPoly XPoly::divided_by_difference(int i, int j) const {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n)
        throw domain_error("XPoly: bad difference divisor");
    if (is_zero()) return XPoly(n);
    // Synthetic division in x_i with "root" x_j: P = sum_k c_k x_i^k with
    // c_k free of x_i; b_{k-1} = c_k + x_j b_k descending from the top.
    std::map<int, XPoly> coeff;  // x_i-degree -> coefficient (e[i] = 0)
    int dmax = 0;
    for (const auto& [e, v] : c) {
        int k = e[i];
        dmax = std::max(dmax, k);
        auto [it, fresh] = coeff.try_emplace(k, XPoly(n));
        std::vector<int> e0 = e;
        e0[i] = 0;
        it->second.add_term(e0, v);
    }
    auto shift_j = [&](const XPoly& q) {
        XPoly r(n);
        for (const auto& [e, v] : q.c) {
            std::vector<int> e2 = e;
            ++e2[j];
            r.c.emplace(std::move(e2), v);
        }
        return r;
    };
    auto at = [&](int k) { return coeff.count(k) ? coeff[k] : XPoly(n); };
    std::vector<XPoly> b((size_t)std::max(dmax, 1), XPoly(n));
    if (dmax >= 1) {
        b[dmax - 1] = at(dmax);
        for (int k = dmax - 1; k >= 1; --k) b[k - 1] = at(k) + shift_j(b[k]);
    }
    XPoly rem = at(0) + (dmax >= 1 ? shift_j(b[0]) : XPoly(n));
    if (!rem.is_zero())
        throw consistency_error("shuffle: denominator does not cancel after symmetrization");
    XPoly q(n);
    for (int k = 0; k < dmax; ++k)
        for (const auto& [e, v] : b[(size_t)k].c) {
            std::vector<int> e2 = e;
            e2[i] += k;
            q.add_term(e2, v);
        }
    return q;
}

mpq_class XPoly::eval(const mpq_class& t, const mpq_class& u,
                      const std::vector<mpq_class>& x) const {
    if ((int)x.size() != n) throw domain_error("XPoly: evaluation arity mismatch");
    mpq_class r = 0;
    for (const auto& [e, v] : c) {
        mpq_class m = v.eval(t, u);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < e[i]; ++k) m *= x[i];
        r += m;
    }
    return r;
}

std::string XPoly::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (const auto& [e, v] : c) {
        if (!s.empty()) s += " + ";
        s += "(" + v.str() + ")";
        for (int i = 0; i < n; ++i) {
            if (e[i] == 0) continue;
            s += "*x" + std::to_string(i + 1);
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
    }
    return s;
}

SymPoly::SymPoly(XPoly q) : n(q.n), p(std::move(q)) {
    // invariance under adjacent transpositions implies full symmetry
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = 0; k + 1 < n; ++k) {
        std::swap(perm[k], perm[k + 1]);
        if (!(p.permuted(perm) == p))
            throw consistency_error("SymPoly: polynomial is not symmetric");
        std::swap(perm[k], perm[k + 1]);
    }
}

SymPoly SymPoly::one(int nvars) { return SymPoly(XPoly::constant(nvars, rat_one())); }

SymPoly operator+(const SymPoly& a, const SymPoly& b) {
    SymPoly r;
    r.n = a.n;
    r.p = a.p + b.p;
    return r;
}

SymPoly operator-(const SymPoly& a, const SymPoly& b) {
    SymPoly r;
    r.n = a.n;
    r.p = a.p - b.p;
    return r;
}

SymPoly SymPoly::scaled(const RatFunc2& s) const {
    SymPoly r;
    r.n = n;
    r.p = p.scaled(s);
    return r;
}

std::vector<RatFunc2> zeta_numerator_roots() {
    RatFunc2 t = RatFunc2::t_var(), u = RatFunc2::u_var();
    return {t + u, -t, -u};
}

SymPoly shuffle_product(const SymPoly& f, const SymPoly& g) {
    int v = f.n, w = g.n, n = v + w;
    if (v == 0 || w == 0) {
        // empty kernel product: multiply through by the constant
        const SymPoly& poly = v == 0 ? g : f;
        const XPoly& cst = v == 0 ? f.p : g.p;
        RatFunc2 a;  // zero
        if (!cst.is_zero()) a = cst.c.begin()->second;
        return poly.scaled(a);
    }
    // Each permutation term is a rational function whose denominator divides
    // D = prod_{a<b} (x_a - x_b); accumulate numerators over D and divide out
    // at the end (the polynomiality check).
    std::vector<XPoly> znum((size_t)n * n), diff((size_t)n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) znum[(size_t)a * n + b] = zeta_numerator(n, a, b);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) diff[(size_t)a * n + b] = difference(n, a, b);
    XPoly f0 = f.p.promoted(n, 0), g0 = g.p.promoted(n, v);
    // The permuted numerator is just a relabeling of a fixed base product, so
    // the expensive kernel-numerator multiplications happen once, not per
    // permutation.
    XPoly base = f0 * g0;
    for (int i = 0; i < v; ++i)
        for (int j = v; j < n; ++j) base = base * znum[(size_t)i * n + j];
    // Both factors are symmetric, so every permutation with the same image of
    // the first block contributes the same term; summing over the C(n, v)
    // subsets cancels the 1/(v! w!) normalization exactly.
    XPoly total(n);
    std::vector<char> mask(n, 0);
    std::fill(mask.begin(), mask.begin() + v, 1);
    std::sort(mask.begin(), mask.end());  // ascending start for the enumeration
    std::vector<int> perm(n);
    std::vector<char> cross((size_t)n * n);
    do {
        int lo = 0, hi = v;
        for (int k = 0; k < n; ++k)
            if (mask[k]) perm[lo++] = k;
            else perm[hi++] = k;
        XPoly term = base.permuted(perm);
        std::fill(cross.begin(), cross.end(), 0);
        int sign = 1;
        for (int i = 0; i < v; ++i)
            for (int j = v; j < n; ++j) {
                int a = perm[i], b = perm[j];
                if (a > b) {
                    sign = -sign;
                    std::swap(a, b);
                }
                cross[(size_t)a * n + b] = 1;
            }
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (!cross[(size_t)a * n + b]) term = term * diff[(size_t)a * n + b];
        if (sign < 0) term = term.scaled(RatFunc2(mpq_class(-1)));
        total = total + term;
    } while (std::next_permutation(mask.begin(), mask.end()));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) total = total.divided_by_difference(a, b);
    return SymPoly(std::move(total));
}

SymPoly x_l_image(int l) {
    if (l < 1) throw domain_error("x_l_image: l must be positive");
    XPoly r = XPoly::constant(l, rat_one());
    XPoly t = XPoly::constant(l, RatFunc2::t_var());
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            r = r * (i == j ? t : t + difference(l, i, j));
    return SymPoly(std::move(r));
}

SymPoly d_k_image(int k) {
    if (k < 0) throw domain_error("d_k_image: k must be nonnegative");
    XPoly r(1);
    r.c.emplace(std::vector<int>{k}, RatFunc2::t_var());
    return SymPoly(std::move(r));
}

WheelReport wheel_check(const SymPoly& f) {
    if (f.n < 3) return {true, true};
    std::vector<RatFunc2> roots = zeta_numerator_roots();
    int m = f.n - 2;  // X plus the untouched x_4..x_n
    for (size_t ia = 0; ia < roots.size(); ++ia)
        for (size_t ib = 0; ib < roots.size(); ++ib) {
            if (ia == ib) continue;
            RatFunc2 shift2 = roots[ia];
            RatFunc2 shift3 = roots[ia] + roots[ib];
            XPoly X = XPoly::variable(m, 0);
            XPoly sub2 = X + XPoly::constant(m, shift2);
            XPoly sub3 = X + XPoly::constant(m, shift3);
            XPoly out(m);
            for (const auto& [e, v] : f.p.c) {
                XPoly term = XPoly::constant(m, v);
                for (int k = 0; k < e[0]; ++k) term = term * X;
                for (int k = 0; k < e[1]; ++k) term = term * sub2;
                for (int k = 0; k < e[2]; ++k) term = term * sub3;
                std::vector<int> rest(m, 0);
                for (int i = 3; i < f.n; ++i) rest[i - 2] = e[i];
                XPoly mono(m);
                mono.c.emplace(std::move(rest), rat_one());
                out = out + term * mono;
            }
            if (!out.is_zero()) return {false, false};
        }
    return {true, false};
}

std::vector<SymPoly> d_generator_family(int k_max) {
    std::vector<SymPoly> g;
    for (int k = 0; k <= k_max; ++k) g.push_back(d_k_image(k));
    return g;
}

MembershipResult membership_in_generated(const SymPoly& f, const std::vector<SymPoly>& generators,
                                         int degree_cap) {
    if (f.n < 1) throw domain_error("membership_in_generated: target needs at least one variable");
    for (const SymPoly& g : generators)
        if (g.n != 1) throw domain_error("membership_in_generated: generators must be one-variable");
    MembershipResult res;
    if (degree_cap < 0 || f.total_degree() > degree_cap) {
        res.status = MembershipStatus::Undetermined;
        res.note = "target degree exceeds the cap; enlarge the window";
        return res;
    }
    std::vector<int> gdeg(generators.size());
    for (size_t i = 0; i < generators.size(); ++i)
        gdeg[i] = std::max(generators[i].total_degree(), 0);
    // weakly increasing index tuples of length f.n with total degree <= cap
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start, int left, int budget) -> void {
        if (left == 0) {
            tuples.push_back(cur);
            return;
        }
        for (int i = start; i < (int)generators.size(); ++i) {
            if (gdeg[i] > budget) continue;
            cur.push_back(i);
            self(self, i, left - 1, budget - gdeg[i]);
            cur.pop_back();
        }
    };
    rec(rec, 0, f.n, degree_cap);
    if (tuples.empty()) {
        res.status = MembershipStatus::Undetermined;
        res.note = "no admissible generator products under the caps";
        return res;
    }
    std::vector<SymPoly> prods;
    prods.reserve(tuples.size());
    for (const auto& tup : tuples) {
        SymPoly m = generators[(size_t)tup[0]];
        for (size_t k = 1; k < tup.size(); ++k)
            m = shuffle_product(m, generators[(size_t)tup[k]]);
        prods.push_back(std::move(m));
    }
    // exact linear solve over Q(t,u) on the union of monomial supports
    std::map<std::vector<int>, int> row_of;
    for (const auto& [e, v] : f.p.c) row_of.emplace(e, 0);
    for (const SymPoly& m : prods)
        for (const auto& [e, v] : m.p.c) row_of.emplace(e, 0);
    int rows = 0;
    for (auto& [e, idx] : row_of) idx = rows++;
    Matrix<RatFunc2> A(rows, (int)prods.size());
    std::vector<RatFunc2> b((size_t)rows);
    for (size_t j = 0; j < prods.size(); ++j)
        for (const auto& [e, v] : prods[j].p.c) A.at(row_of[e], (int)j) = v;
    for (const auto& [e, v] : f.p.c) b[(size_t)row_of[e]] = v;
    auto sol = solve(A, b, rat_one());
    if (!sol) {
        res.status = MembershipStatus::NotInSpan;
        res.note = "no combination of the spanned products matches the target";
        return res;
    }
    res.status = MembershipStatus::Certified;
    for (size_t j = 0; j < prods.size(); ++j) {
        if ((*sol)[j].is_zero()) continue;
        MembershipTerm term;
        term.gens = tuples[j];
        term.coeff = (*sol)[j];
        res.certificate.push_back(std::move(term));
    }
    return res;
}

namespace {

struct LiteralParser {
    const std::string& s;
    size_t pos = 0;
    int nvars;

    explicit LiteralParser(const std::string& text, int nv) : s(text), nvars(nv) {}

    void skip() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw domain_error("parse_sympoly: " + what + " at position " + std::to_string(pos));
    }
    long integer() {
        skip();
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) fail("expected a number");
        return std::stol(s.substr(start, pos - start));
    }

    XPoly expr() {
        XPoly r = eat('-') ? XPoly(nvars) - term() : term();
        for (;;) {
            if (eat('+'))
                r = r + term();
            else if (eat('-'))
                r = r - term();
            else
                return r;
        }
    }
    XPoly term() {
        XPoly r = power();
        while (eat('*')) r = r * power();
        return r;
    }
    XPoly power() {
        XPoly base = atom();
        if (!eat('^')) return base;
        long e = integer();
        if (e < 0) fail("negative exponent");
        XPoly r = XPoly::constant(nvars, rat_one());
        for (long k = 0; k < e; ++k) r = r * base;
        return r;
    }
    XPoly atom() {
        skip();
        if (pos >= s.size()) fail("unexpected end of input");
        char ch = s[pos];
        if (ch == '(') {
            ++pos;
            XPoly r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (ch == '-') {
            ++pos;
            return XPoly(nvars) - atom();
        }
        if (std::isdigit((unsigned char)ch))
            return XPoly::constant(nvars, RatFunc2(mpq_class(integer())));
        if (ch == 't') {
            ++pos;
            return XPoly::constant(nvars, RatFunc2::t_var());
        }
        if (ch == 'u') {
            ++pos;
            return XPoly::constant(nvars, RatFunc2::u_var());
        }
        if (ch == 'x') {
            ++pos;
            long i = integer();
            if (i < 1 || i > nvars) fail("variable index out of range");
            return XPoly::variable(nvars, (int)i - 1);
        }
        fail("unexpected character");
    }
};

}  // namespace

SymPoly parse_sympoly(const std::string& text, int nvars) {
    if (nvars < 0) {
        // infer the variable count from the largest x-index mentioned
        nvars = 0;
        for (size_t i = 0; i + 1 < text.size(); ++i)
            if (text[i] == 'x' && std::isdigit((unsigned char)text[i + 1])) {
                size_t j = i + 1;
                int idx = 0;
                while (j < text.size() && std::isdigit((unsigned char)text[j]))
                    idx = idx * 10 + (text[j++] - '0');
                nvars = std::max(nvars, idx);
            }
    }
    LiteralParser p(text, nvars);
    XPoly r = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return SymPoly(std::move(r));
}

}  // namespace qlab
