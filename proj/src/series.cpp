#include "qlab/series.hpp"

#include <numeric>

namespace qlab {

static int total(const std::vector<int>& e) {
    int t = 0;
    for (int x : e) t += x;
    return t;
}

void TruncSeries::set(const std::vector<int>& e, RatQ v) {
    if ((int)e.size() != nvars) throw domain_error("TruncSeries: bad exponent length");
    if (total(e) > order) return;
    if (v.is_zero())
        c.erase(e);
    else
        c[e] = std::move(v);
}

void TruncSeries::prune() {
    for (auto it = c.begin(); it != c.end();)
        it = it->second.is_zero() ? c.erase(it) : std::next(it);
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    if (a.nvars != b.nvars) throw domain_error("TruncSeries: variable mismatch");
    TruncSeries r(a.nvars, std::min(a.order, b.order));
    for (const auto& [e, v] : a.c)
        if (total(e) <= r.order) r.c[e] = v;
    for (const auto& [e, v] : b.c)
        if (total(e) <= r.order) r.c[e] = r.coeff(e) + v;
    r.prune();
    return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    return a + b.scaled(RatQ(mpq_class(-1)));
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    if (a.nvars != b.nvars) throw domain_error("TruncSeries: variable mismatch");
    TruncSeries r(a.nvars, std::min(a.order, b.order));
    for (const auto& [ea, va] : a.c) {
        int ta = total(ea);
        if (ta > r.order) continue;
        for (const auto& [eb, vb] : b.c) {
            if (ta + total(eb) > r.order) continue;
            std::vector<int> e(ea);
            for (int i = 0; i < r.nvars; ++i) e[i] += eb[i];
            r.c[e] = r.coeff(e) + va * vb;
        }
    }
    r.prune();
    return r;
}

TruncSeries TruncSeries::scaled(const RatQ& s) const {
    TruncSeries r(nvars, order);
    for (const auto& [e, v] : c) {
        RatQ x = v * s;
        if (!x.is_zero()) r.c[e] = x;
    }
    return r;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
    if (a.nvars != b.nvars || a.order != b.order) return false;
    TruncSeries x = a, y = b;
    x.prune();
    y.prune();
    return x.c == y.c;
}

TruncSeries TruncSeries::adams(int m) const {
    TruncSeries r(nvars, order);
    for (const auto& [e, v] : c) {
        if (total(e) * m > order) continue;
        std::vector<int> em(e);
        for (int& x : em) x *= m;
        r.c[em] = v.adams(m);
    }
    r.prune();
    return r;
}

TruncSeries series_exp(const TruncSeries& f) {
    if (!f.constant_term().is_zero())
        throw domain_error("series_exp: nonzero constant term");
    TruncSeries r = TruncSeries::one(f.nvars, f.order);
    TruncSeries pw = TruncSeries::one(f.nvars, f.order);
    mpq_class fact = 1;
    for (int k = 1; k <= f.order; ++k) {
        pw = pw * f;
        fact *= k;
        r = r + pw.scaled(RatQ(mpq_class(1) / fact));
    }
    return r;
}

TruncSeries series_log(const TruncSeries& f) {
    RatQ c0 = f.constant_term();
    if (!(c0 == RatQ(mpq_class(1))))
        throw domain_error("series_log: constant term is not 1");
    TruncSeries g = f - TruncSeries::one(f.nvars, f.order);
    TruncSeries r(f.nvars, f.order);
    TruncSeries pw = TruncSeries::one(f.nvars, f.order);
    for (int k = 1; k <= f.order; ++k) {
        pw = pw * g;
        mpq_class coef = mpq_class(k % 2 ? 1 : -1) / k;
        r = r + pw.scaled(RatQ(coef));
    }
    return r;
}

TruncSeries plethystic_exp(const TruncSeries& f) {
    if (!f.constant_term().is_zero())
        throw domain_error("plethystic_exp: nonzero constant term");
    TruncSeries s(f.nvars, f.order);
    for (int m = 1; m <= f.order; ++m)
        s = s + f.adams(m).scaled(RatQ(mpq_class(1, m)));
    return series_exp(s);
}

TruncSeries plethystic_log(const TruncSeries& g) {
    TruncSeries L = series_log(g);
    // invert L = sum_m psi_m(f)/m by Moebius inversion over m
    std::vector<int> mu(g.order + 1, 0);
    if (g.order >= 1) {
        mu[1] = 1;
        for (int i = 1; i <= g.order; ++i)
            for (int j = 2 * i; j <= g.order; j += i) mu[j] -= mu[i];
    }
    TruncSeries r(g.nvars, g.order);
    for (int m = 1; m <= g.order; ++m) {
        if (mu[m] == 0) continue;
        r = r + L.adams(m).scaled(RatQ(mpq_class(mu[m], m)));
    }
    return r;
}

WindowSeries WindowSeries::one(int nvars, int order, int K) {
    WindowSeries s;
    s.nvars = nvars;
    s.order = order;
    s.K = K;
    s.c[std::vector<int>(nvars, 0)] = std::vector<mpq_class>((size_t)K + 1, mpq_class(0));
    s.c.begin()->second[0] = 1;
    return s;
}

WindowSeries operator*(const WindowSeries& a, const WindowSeries& b) {
    if (a.nvars != b.nvars || a.K != b.K)
        throw domain_error("WindowSeries: window mismatch");
    WindowSeries r;
    r.nvars = a.nvars;
    r.order = std::min(a.order, b.order);
    r.K = a.K;
    for (const auto& [ea, va] : a.c) {
        int ta = total(ea);
        if (ta > r.order) continue;
        for (const auto& [eb, vb] : b.c) {
            if (ta + total(eb) > r.order) continue;
            std::vector<int> e(ea);
            for (int i = 0; i < r.nvars; ++i) e[i] += eb[i];
            auto& dst = r.c.try_emplace(e, std::vector<mpq_class>((size_t)r.K + 1, mpq_class(0)))
                            .first->second;
            for (int i = 0; i <= r.K; ++i) {
                if (va[i] == 0) continue;
                for (int j = 0; i + j <= r.K; ++j)
                    if (vb[j] != 0) dst[i + j] += va[i] * vb[j];
            }
        }
    }
    return r;
}

bool operator==(const WindowSeries& a, const WindowSeries& b) {
    if (a.nvars != b.nvars || a.order != b.order || a.K != b.K) return false;
    auto nonzero = [](const std::vector<mpq_class>& v) {
        for (const auto& x : v)
            if (x != 0) return true;
        return false;
    };
    for (const auto& [e, v] : a.c) {
        auto it = b.c.find(e);
        if (it == b.c.end()) {
            if (nonzero(v)) return false;
        } else if (v != it->second) {
            return false;
        }
    }
    for (const auto& [e, v] : b.c)
        if (!a.c.count(e) && nonzero(v)) return false;
    return true;
}

// (1 - s^d z^v)^{-a} on the window, a of either sign.
static WindowSeries binomial_factor(const std::vector<int>& v, int d, std::int64_t a,
                                    int nvars, int N, int K) {
    WindowSeries f = WindowSeries::one(nvars, N, K);
    int tv = total(v);
    if (tv == 0) throw domain_error("product_expansion: zero dimension vector");
    if (a == 0) return f;
    // j-th term: binom(a + j - 1, j) s^{dj} z^{jv} for exponent -a with a > 0;
    // for a < 0 the series is the finite binomial expansion of (1-x)^{|a|}.
    for (int j = 1; j * tv <= N && j * d <= K; ++j) {
        mpq_class coef;
        if (a > 0) {
            mpz_class num = 1;
            for (int i = 0; i < j; ++i) num *= (a + i);
            mpz_class den = 1;
            for (int i = 1; i <= j; ++i) den *= i;
            coef = mpq_class(num) / mpq_class(den);
        } else {
            std::int64_t m = -a;
            if (j > m) break;
            mpz_class num = 1;
            for (int i = 0; i < j; ++i) num *= (m - i);
            mpz_class den = 1;
            for (int i = 1; i <= j; ++i) den *= i;
            coef = mpq_class(num) / mpq_class(den);
            if (j % 2) coef = -coef;
        }
        std::vector<int> e(v);
        for (int& x : e) x *= j;
        auto& dst = f.c.try_emplace(e, std::vector<mpq_class>((size_t)K + 1, mpq_class(0)))
                        .first->second;
        dst[(size_t)j * d] += coef;
    }
    return f;
}

WindowSeries product_expansion(
    const std::map<std::pair<std::vector<int>, int>, std::int64_t>& table, int nvars, int N,
    int K) {
    WindowSeries r = WindowSeries::one(nvars, N, K);
    for (const auto& [key, a] : table) {
        const auto& [v, rr] = key;
        if (a == 0) continue;
        if (rr < 0) throw domain_error("product_expansion: negative r");
        for (int k = 0; k + rr <= K; ++k)
            r = r * binomial_factor(v, k + rr, a, nvars, N, K);
    }
    return r;
}

WindowSeries to_window(const TruncSeries& s, int K) {
    WindowSeries w;
    w.nvars = s.nvars;
    w.order = s.order;
    w.K = K;
    for (const auto& [e, v] : s.c) w.c[e] = v.window(K);
    return w;
}

InterpolationResult interpolate_poly(const std::vector<std::pair<mpz_class, mpz_class>>& points,
                                     int degree_bound) {
    if ((int)points.size() < degree_bound + 1)
        throw domain_error("interpolate_poly: not enough points");
    int n = degree_bound + 1;
    // Lagrange on the first n points
    QPoly p;
    for (int i = 0; i < n; ++i) {
        QPoly li(mpq_class(1));
        mpq_class denom = 1;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            li = li * QPoly(std::vector<mpq_class>{mpq_class(-points[j].first), mpq_class(1)});
            denom *= mpq_class(points[i].first - points[j].first);
        }
        mpq_class scale = mpq_class(points[i].second) / denom;
        for (auto& cch : li.c) cch *= scale;
        li.trim();
        p = p + li;
    }
    InterpolationResult res;
    res.poly = p;
    res.integer_coefficients = p.integer_coefficients();
    res.consistent = true;
    for (const auto& [x, y] : points)
        if (p.eval(mpq_class(x)) != mpq_class(y)) res.consistent = false;
    return res;
}

std::vector<std::vector<QPoly>> matrix_series_inverse(const std::vector<std::vector<QPoly>>& M,
                                                      int order) {
    int n = (int)M.size();
    for (const auto& row : M)
        if ((int)row.size() != n) throw domain_error("matrix_series_inverse: not square");
    // split M into degree layers M_d
    int maxdeg = 0;
    for (const auto& row : M)
        for (const auto& p : row) maxdeg = std::max(maxdeg, p.degree());
    // invert the constant layer over Q by Gauss-Jordan
    std::vector<std::vector<mpq_class>> aug(n, std::vector<mpq_class>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = M[i][j].coeff(0);
        aug[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (aug[i][c] != 0) { piv = i; break; }
        if (piv < 0) throw domain_error("matrix_series_inverse: M(0) singular");
        std::swap(aug[c], aug[piv]);
        mpq_class s = aug[c][c];
        for (auto& x : aug[c]) x /= s;
        for (int i = 0; i < n; ++i) {
            if (i == c || aug[i][c] == 0) continue;
            mpq_class f = aug[i][c];
            for (int j = 0; j < 2 * n; ++j) aug[i][j] -= f * aug[c][j];
        }
    }
    // C_0 = M(0)^{-1}; C_k = -C_0 * sum_{d=1..k} M_d C_{k-d}
    auto layer = [&](int d) {
        std::vector<std::vector<mpq_class>> L(n, std::vector<mpq_class>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) L[i][j] = M[i][j].coeff(d);
        return L;
    };
    std::vector<std::vector<std::vector<mpq_class>>> C;
    std::vector<std::vector<mpq_class>> C0(n, std::vector<mpq_class>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) C0[i][j] = aug[i][n + j];
    C.push_back(C0);
    auto matmul = [&](const std::vector<std::vector<mpq_class>>& A,
                      const std::vector<std::vector<mpq_class>>& B) {
        std::vector<std::vector<mpq_class>> R(n, std::vector<mpq_class>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (A[i][k] == 0) continue;
                for (int j = 0; j < n; ++j) R[i][j] += A[i][k] * B[k][j];
            }
        return R;
    };
    for (int k = 1; k <= order; ++k) {
        std::vector<std::vector<mpq_class>> acc(n, std::vector<mpq_class>(n, 0));
        for (int d = 1; d <= std::min(k, maxdeg); ++d) {
            auto prod = matmul(layer(d), C[k - d]);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) acc[i][j] += prod[i][j];
        }
        auto Ck = matmul(C0, acc);
        for (auto& row : Ck)
            for (auto& x : row) x = -x;
        C.push_back(Ck);
    }
    std::vector<std::vector<QPoly>> out(n, std::vector<QPoly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<mpq_class> cs(order + 1);
            for (int k = 0; k <= order; ++k) cs[k] = C[k][i][j];
            out[i][j] = QPoly(cs);
        }
    return out;
}

}  // namespace qlab
