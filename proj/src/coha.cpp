#include "qlab/coha.hpp"

namespace qlab {

namespace {

using i64 = std::int64_t;

mpq_class qpow(i64 p, i64 e) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), (unsigned long)p, (unsigned long)(e < 0 ? -e : e));
    return e >= 0 ? mpq_class(z) : mpq_class(1) / mpq_class(z);
}

std::vector<DimVector> box_vectors(const DimVector& vmax) {
    std::vector<DimVector> out;
    DimVector u(vmax.size(), 0);
    for (;;) {
        size_t i = 0;
        while (i < u.size() && ++u[i] > vmax[i]) u[i++] = 0;
        if (i == u.size()) break;
        out.push_back(u);
    }
    return out;
}

}  // namespace

CohaDimSeries coha_series_from_kac(const KacTable& table, int tau, int N, int K) {
    if (tau < 0) throw domain_error("coha_series_from_kac: negative torus rank");
    int nvars = table.q.nv();
    std::map<std::pair<std::vector<int>, int>, i64> exps;
    for (const auto& [v, poly] : table.entries) {
        std::vector<int> e(v.begin(), v.end());
        for (int r = 0; r <= poly.degree(); ++r) {
            mpq_class c = poly.coeff(r);
            if (c == 0) continue;
            if (c.get_den() != 1 || !c.get_num().fits_slong_p())
                throw domain_error("coha_series_from_kac: table coefficient is not a small integer");
            exps[{e, r}] = (i64)c.get_num().get_si();
        }
    }
    CohaDimSeries out;
    out.q = table.q;
    out.tau = tau;
    out.order = N;
    out.series = product_expansion(exps, nvars, N, K);
    if (tau > 0) {
        // (1 - q^{-1})^{-tau}: z^0 coefficient binom(k + tau - 1, tau - 1)
        WindowSeries tf = WindowSeries::one(nvars, N, K);
        auto& c0 = tf.c.begin()->second;
        for (int k = 0; k <= K; ++k) {
            mpz_class num = 1, den = 1;
            for (int i = 1; i < tau; ++i) {
                num *= (k + i);
                den *= i;
            }
            c0[(size_t)k] = mpq_class(num) / mpq_class(den);
        }
        out.series = out.series * tf;
    }
    return out;
}

CohaCountEval coha_series_from_counts(const Quiver& q, int flat, const DimVector& v_max,
                                      std::int64_t p, int tau, const CountOptions& opt) {
    if (flat != 0 && flat != 1) throw domain_error("coha_series_from_counts: flat must be 0 or 1");
    if (tau < 0) throw domain_error("coha_series_from_counts: negative torus rank");
    q.check_dim(v_max, "coha_series_from_counts");
    VarietyKind kind = flat == 0 ? VarietyKind::Lambda0 : VarietyKind::Lambda1;
    CohaCountEval out;
    out.q = q;
    out.flat = flat;
    out.prime = p;
    out.tau = tau;
    // (q/(q-1))^tau, assembled once
    mpq_class tau_factor = 1;
    for (int i = 0; i < tau; ++i) tau_factor *= mpq_class(p) / mpq_class(p - 1);
    out.values.emplace_back(DimVector(v_max.size(), 0), tau_factor);
    for (const DimVector& v : box_vectors(v_max)) {
        CountRecord r = count_variety(q, v, p, kind, opt);
        mpq_class val = mpq_class(r.stack) * qpow(p, ringel_form(q, v, v) + tau);
        for (int i = 0; i < tau; ++i) val /= mpq_class(p - 1);
        val.canonicalize();
        out.values.emplace_back(v, val);
    }
    return out;
}

std::vector<std::pair<DimVector, mpq_class>> coha_eval_from_kac(const Quiver& q,
                                                                const KacTable& table, int tau,
                                                                const DimVector& v_max,
                                                                std::int64_t p) {
    auto vals = table_series_eval(q, table, v_max, p);
    mpq_class tau_factor = 1;
    for (int i = 0; i < tau; ++i) tau_factor *= mpq_class(p) / mpq_class(p - 1);
    for (auto& [v, c] : vals) {
        c *= tau_factor;
        c.canonicalize();
    }
    return vals;
}

std::vector<CohaCrossRow> coha_cross_check(const Quiver& q, const KacTable& table, int flat,
                                           const DimVector& v_max,
                                           const std::vector<std::int64_t>& primes, int tau,
                                           const CountOptions& opt) {
    std::vector<CohaCrossRow> rows;
    for (i64 p : primes) {
        auto kac_vals = coha_eval_from_kac(q, table, tau, v_max, p);
        CohaCountEval cnt = coha_series_from_counts(q, flat, v_max, p, tau, opt);
        for (size_t i = 0; i < kac_vals.size(); ++i) {
            CohaCrossRow row;
            row.v = kac_vals[i].first;
            row.prime = p;
            row.kac_route = kac_vals[i].second;
            row.count_route = cnt.values[i].second;
            row.equal = row.kac_route == row.count_route;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

bool check_a2_remark(std::int64_t p, const CountOptions& opt) {
    Quiver a2 = a2_quiver();
    CountRecord r = count_variety(a2, {1, 1}, p, VarietyKind::Lambda0, opt);
    mpq_class lhs = mpq_class(p) * p * r.stack;  // q^2 |(Lambda/G)(F_q)|
    mpq_class rhs = mpq_class(2 * p - 1) * mpq_class(p) * p / (mpq_class(p - 1) * (p - 1));
    lhs.canonicalize();
    rhs.canonicalize();
    return lhs == rhs;
}

LangWeilResult langweil_leading(const Quiver& q, std::int64_t v, const CountOptions& opt) {
    if (q.nv() != 1) throw domain_error("langweil_leading: one-vertex quiver expected");
    i64 g = q.loops(0);
    LangWeilResult res;
    res.expected_degree = (int)((2 * g - 1) * v * v + 1);
    std::vector<i64> primes;
    for (i64 p = 2; (int)primes.size() < res.expected_degree + 1; ++p)
        if ([&] {
                for (i64 d = 2; d * d <= p; ++d)
                    if (p % d == 0) return false;
                return true;
            }())
            primes.push_back(p);
    std::vector<std::pair<mpz_class, mpz_class>> pts;
    for (i64 p : primes) {
        CountRecord r = count_variety(q, {v}, p, VarietyKind::M, opt);
        pts.emplace_back(mpz_class(p), r.raw);
    }
    InterpolationResult ir = interpolate_poly(pts, res.expected_degree);
    res.actual_degree = ir.poly.degree();
    res.actual_leading = ir.poly.lead();
    res.matches = res.actual_degree == res.expected_degree && res.actual_leading == 1;
    return res;
}

}  // namespace qlab
