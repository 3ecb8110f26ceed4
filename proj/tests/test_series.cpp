#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qlab/series.hpp"

using namespace qlab;

namespace {

TruncSeries single(int nvars, std::vector<int> e, RatQ c, int order) {
    TruncSeries s(nvars, order);
    s.set(e, std::move(c));
    return s;
}

}  // namespace

TEST_CASE("exp and log are mutually inverse") {
    TruncSeries f = single(1, {1}, RatQ(QPoly::monomial(1, 2)), 4);  // q^2 z
    TruncSeries g = series_exp(f);
    CHECK(series_log(g) == f);
    CHECK(g.coeff({2}) == RatQ(QPoly::monomial(1, 4)) / RatQ(2));
}

TEST_CASE("plethystic exp of a single z-term is a geometric product") {
    // Exp(z) = 1/(1-z) = sum z^n
    TruncSeries f = single(1, {1}, RatQ(1L), 5);
    TruncSeries g = plethystic_exp(f);
    for (int n = 0; n <= 5; ++n) CHECK(g.coeff({n}) == RatQ(1L));
    CHECK(plethystic_log(g) == f);
}

TEST_CASE("plethystic exp with a q-coefficient") {
    // Exp(q z) = 1/(1 - q z): every z^n coefficient is q^n
    TruncSeries f = single(1, {1}, RatQ(QPoly::monomial(1, 1)), 3);
    TruncSeries g = plethystic_exp(f);
    CHECK(plethystic_log(g) == f);
    for (int n = 0; n <= 3; ++n) CHECK(g.coeff({n}) == RatQ(QPoly::monomial(1, n)));
}

TEST_CASE("adams substitution") {
    TruncSeries f = single(1, {1}, RatQ(QPoly::monomial(1, 1)), 4);
    TruncSeries a = f.adams(2);
    CHECK(a.coeff({2}) == RatQ(QPoly::monomial(1, 2)));
    CHECK(a.coeff({1}).is_zero());
}

TEST_CASE("window product expansion matches the exact series") {
    // prod_k (1 - q^{-k} z)^{-1} to z^3, q^{-1}-window 4
    std::map<std::pair<std::vector<int>, int>, std::int64_t> table;
    table[{{1}, 0}] = 1;
    WindowSeries w = product_expansion(table, 1, 3, 4);
    // z^1 coefficient: sum_k s^k -> all ones
    auto z1 = w.c.at({1});
    for (int m = 0; m <= 4; ++m) CHECK(z1[(size_t)m] == 1);
    // z^2 coefficient: partitions of m into at most 2 parts
    auto z2 = w.c.at({2});
    CHECK(z2[0] == 1);
    CHECK(z2[1] == 1);
    CHECK(z2[2] == 2);
    CHECK(z2[3] == 2);
    CHECK(z2[4] == 3);
}

TEST_CASE("window projection rejects positive powers of q") {
    TruncSeries f = single(1, {1}, RatQ(QPoly::monomial(1, 1)), 2);
    CHECK_THROWS_AS(to_window(f, 3), domain_error);
    TruncSeries ok = single(1, {1}, RatQ::q_power(-2), 2);
    WindowSeries w = to_window(ok, 3);
    CHECK(w.c.at({1})[2] == 1);
}

TEST_CASE("interpolation with over-determination check") {
    // y = x^2 + 1 through five points, bound 2: consistent integral fit
    std::vector<std::pair<mpz_class, mpz_class>> pts;
    for (int x = 1; x <= 5; ++x) pts.emplace_back(x, x * x + 1);
    InterpolationResult r = interpolate_poly(pts, 2);
    CHECK(r.poly == QPoly(std::vector<mpq_class>{1, 0, 1}));
    CHECK(r.integer_coefficients);
    CHECK(r.consistent);
    // a cubic cannot be explained with bound 1
    std::vector<std::pair<mpz_class, mpz_class>> bad;
    for (int x = 1; x <= 4; ++x) bad.emplace_back(x, x * x * x);
    CHECK(!interpolate_poly(bad, 1).consistent);
}

TEST_CASE("matrix series inverse") {
    // (1 - t)^{-1} = sum t^n
    std::vector<std::vector<QPoly>> m = {{QPoly(std::vector<mpq_class>{1, -1})}};
    auto inv = matrix_series_inverse(m, 5);
    for (int n = 0; n <= 5; ++n) CHECK(inv[0][0].coeff(n) == 1);
}
