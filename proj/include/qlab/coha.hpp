#pragma once

#include <cstdint>
#include <vector>

#include "qlab/kac.hpp"
#include "qlab/quiver.hpp"
#include "qlab/repenum.hpp"
#include "qlab/series.hpp"

namespace qlab {

// Graded-dimension series of the COHA: the z^v coefficient is a polynomial in
// s = q^{-1} on the verified window (z-total degree <= order, s-degree <= K).
struct CohaDimSeries {
    Quiver q;
    int tau = 0;
    int order = 0;
    WindowSeries series;
};

// (1 - q^{-1})^{-tau} * prod_{v!=0} prod_{r} prod_{k>=0}
//   (1 - q^{-k-r} z^v)^{-a_{v,r}},
// where a_{v,r} is the t^r coefficient of the table entry at v.
CohaDimSeries coha_series_from_kac(const KacTable& table, int tau, int N, int K);

// Exact per-dimension-vector evaluation of the count route at one prime:
// q^{<v,v>+tau} * stack / (q-1)^tau.
struct CohaCountEval {
    Quiver q;
    int flat = 0;
    std::int64_t prime = 0;
    int tau = 0;
    std::vector<std::pair<DimVector, mpq_class>> values;  // includes v = 0
};

CohaCountEval coha_series_from_counts(const Quiver& q, int flat, const DimVector& v_max,
                                      std::int64_t p, int tau, const CountOptions& opt = {});

// The same quantities through the Kac table (plethystic route), exactly.
std::vector<std::pair<DimVector, mpq_class>> coha_eval_from_kac(const Quiver& q,
                                                                const KacTable& table, int tau,
                                                                const DimVector& v_max,
                                                                std::int64_t p);

struct CohaCrossRow {
    DimVector v;
    std::int64_t prime = 0;
    mpq_class kac_route, count_route;
    bool equal = false;
};

// Both routes side by side; the routes share nothing but the raw counts.
std::vector<CohaCrossRow> coha_cross_check(const Quiver& q, const KacTable& table, int flat,
                                           const DimVector& v_max,
                                           const std::vector<std::int64_t>& primes, int tau,
                                           const CountOptions& opt = {});

// q^2 |(Lambda/G)(F_q)| = (2q-1) (q/(q-1))^2 for the A2 quiver at q = p.
bool check_a2_remark(std::int64_t p, const CountOptions& opt = {});

struct LangWeilResult {
    int expected_degree = 0;  // (2g-1)v^2 + 1
    int actual_degree = 0;
    mpq_class actual_leading;
    bool matches = false;  // actual degree and leading coefficient 1 as expected
};

// Interpolates the moment-map fiber count of a one-vertex g-loop quiver
// through the first expected_degree + 1 primes and reports the actual leading
// behavior (no integrality/consistency gate: the result is the diagnosis).
LangWeilResult langweil_leading(const Quiver& q, std::int64_t v, const CountOptions& opt = {});

}  // namespace qlab
