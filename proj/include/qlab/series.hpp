#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qlab/qpoly.hpp"

namespace qlab {

// Formal power series in z_1..z_n truncated by total z-degree, with exact
// rational-function coefficients in q.
struct TruncSeries {
    int nvars = 0;
    int order = 0;
    std::map<std::vector<int>, RatQ> c;  // exponent vector (total <= order) -> coeff

    TruncSeries() = default;
    TruncSeries(int nvars_, int order_) : nvars(nvars_), order(order_) {}

    static TruncSeries one(int nvars, int order) {
        TruncSeries s(nvars, order);
        s.c[std::vector<int>(nvars, 0)] = RatQ(mpq_class(1));
        return s;
    }

    RatQ coeff(const std::vector<int>& e) const {
        auto it = c.find(e);
        return it == c.end() ? RatQ{} : it->second;
    }
    RatQ constant_term() const { return coeff(std::vector<int>(nvars, 0)); }
    void set(const std::vector<int>& e, RatQ v);
    void prune();  // drop exact zeros

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    TruncSeries scaled(const RatQ& s) const;
    friend bool operator==(const TruncSeries& a, const TruncSeries& b);

    // q -> q^m, z^v -> z^{mv}; terms pushed beyond the order are dropped
    TruncSeries adams(int m) const;
};

TruncSeries series_exp(const TruncSeries& f);  // constant term must be 0
TruncSeries series_log(const TruncSeries& f);  // constant term must be 1

TruncSeries plethystic_exp(const TruncSeries& f);  // constant term must be 0
TruncSeries plethystic_log(const TruncSeries& g);  // constant term must be 1

// Truncated series with coefficients that are polynomials in s = q^{-1} of
// degree <= K; the exact window form used by the infinite-product expansion.
struct WindowSeries {
    int nvars = 0;
    int order = 0;
    int K = 0;
    std::map<std::vector<int>, std::vector<mpq_class>> c;

    static WindowSeries one(int nvars, int order, int K);
    friend WindowSeries operator*(const WindowSeries& a, const WindowSeries& b);
    friend bool operator==(const WindowSeries& a, const WindowSeries& b);
};

// prod_{(v,r)} prod_{k>=0} (1 - q^{-k-r} z^v)^{-a_{v,r}}, exact on the
// declared window: z-total degree <= N, powers of q^{-1} up to K.  Factors
// with k + r > K cannot touch the window and are skipped.
WindowSeries product_expansion(const std::map<std::pair<std::vector<int>, int>, std::int64_t>& table,
                               int nvars, int N, int K);

// Projection of an exact series onto the (N, K) window; throws if any
// retained coefficient has positive q-powers.
WindowSeries to_window(const TruncSeries& s, int K);

struct InterpolationResult {
    QPoly poly;
    bool integer_coefficients = false;
    bool consistent = false;  // all supplied points reproduced (over-determination)
};

// Exact Lagrange interpolation through (x_i, y_i) using degree_bound + 1
// points; remaining points verify the result.
InterpolationResult interpolate_poly(const std::vector<std::pair<mpz_class, mpz_class>>& points,
                                     int degree_bound);

// Inverse of a matrix of polynomials in t as a matrix power series truncated
// at t^order; M(0) must be invertible over Q.
std::vector<std::vector<QPoly>> matrix_series_inverse(
    const std::vector<std::vector<QPoly>>& M, int order);

}  // namespace qlab
