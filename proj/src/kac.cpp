#include "qlab/kac.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"
#include "qlab/series.hpp"

namespace qlab {

namespace {

using i64 = std::int64_t;

// p^e as an exact rational for e of either sign.
mpq_class qpow(i64 p, i64 e) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), (unsigned long)p, (unsigned long)(e < 0 ? -e : e));
    return e >= 0 ? mpq_class(z) : mpq_class(1) / mpq_class(z);
}

// All dimension vectors 0 <= u <= vmax, u != 0, ordered by total degree then
// lexicographically (the inductive extraction needs smaller totals first).
std::vector<DimVector> box_vectors(const DimVector& vmax) {
    std::vector<DimVector> out;
    DimVector u(vmax.size(), 0);
    for (;;) {
        size_t i = 0;
        while (i < u.size() && ++u[i] > vmax[i]) u[i++] = 0;
        if (i == u.size()) break;
        out.push_back(u);
    }
    std::stable_sort(out.begin(), out.end(), [](const DimVector& a, const DimVector& b) {
        i64 sa = 0, sb = 0;
        for (i64 x : a) sa += x;
        for (i64 x : b) sb += x;
        return sa < sb;
    });
    return out;
}

i64 total_of(const DimVector& u) {
    i64 s = 0;
    for (i64 x : u) s += x;
    return s;
}

bool divides(int m, const DimVector& u) {
    for (i64 x : u)
        if (x % m != 0) return false;
    return true;
}

DimVector divided(const DimVector& u, int m) {
    DimVector r = u;
    for (i64& x : r) x /= m;
    return r;
}

// Numeric multivariate series supported on the box [0, vmax], exact rational
// coefficients; multiplication drops anything outside the box.
using BoxSeries = std::map<DimVector, mpq_class>;

bool in_box(const DimVector& u, const DimVector& vmax) {
    for (size_t i = 0; i < u.size(); ++i)
        if (u[i] > vmax[i]) return false;
    return true;
}

BoxSeries box_mul(const BoxSeries& a, const BoxSeries& b, const DimVector& vmax) {
    BoxSeries r;
    for (const auto& [ua, ca] : a)
        for (const auto& [ub, cb] : b) {
            DimVector u = ua;
            for (size_t i = 0; i < u.size(); ++i) u[i] += ub[i];
            if (!in_box(u, vmax)) continue;
            r[u] += ca * cb;
        }
    return r;
}

// log(S) for S with constant term 1.
BoxSeries box_log(const BoxSeries& S, const DimVector& vmax) {
    DimVector zero(vmax.size(), 0);
    BoxSeries T = S;
    auto it = T.find(zero);
    if (it == T.end() || it->second != 1)
        throw domain_error("box_log: constant term must be 1");
    T.erase(zero);
    BoxSeries acc, pw = T;
    i64 kmax = total_of(vmax);
    for (i64 k = 1; k <= kmax && !pw.empty(); ++k) {
        mpq_class s = mpq_class((k % 2) ? 1 : -1) / mpq_class((long)k);
        for (const auto& [u, c] : pw) acc[u] += s * c;
        pw = box_mul(pw, T, vmax);
    }
    return acc;
}

// exp(c) for c with zero constant term.
BoxSeries box_exp(const BoxSeries& c, const DimVector& vmax) {
    DimVector zero(vmax.size(), 0);
    if (c.count(zero) && c.at(zero) != 0)
        throw domain_error("box_exp: constant term must be 0");
    BoxSeries r{{zero, mpq_class(1)}}, pw{{zero, mpq_class(1)}};
    mpq_class fact = 1;
    i64 kmax = total_of(vmax);
    for (i64 k = 1; k <= kmax; ++k) {
        pw = box_mul(pw, c, vmax);
        if (pw.empty()) break;
        fact *= (long)k;
        for (const auto& [u, cc] : pw) r[u] += cc / fact;
    }
    return r;
}

// Stack-count generating series at one prime: sum_u stack(u) p^{<u,u>} z^u.
BoxSeries count_series(const Quiver& q, const DimVector& vmax, i64 p, VarietyKind kind,
                       const std::vector<DimVector>& box, const CountOptions& opt) {
    BoxSeries S;
    S[DimVector(vmax.size(), 0)] = 1;
    for (const DimVector& u : box) {
        CountRecord r = count_variety(q, u, p, kind, opt);
        S[u] = mpq_class(r.stack) * qpow(p, ringel_form(q, u, u));
    }
    return S;
}

KacTable extract_impl(const Quiver& q, const DimVector& vmax,
                      const std::vector<i64>& primes, VarietyKind count_kind,
                      const std::string& table_kind, const CountOptions& opt) {
    q.check_dim(vmax, "kac extraction");
    if (primes.empty()) throw domain_error("kac extraction: no primes given");
    bool full = table_kind == "full";
    std::vector<DimVector> box = box_vectors(vmax);
    std::vector<BoxSeries> logs;
    for (i64 p : primes)
        logs.push_back(box_log(count_series(q, vmax, p, count_kind, box, opt), vmax));

    KacTable table;
    table.q = q;
    table.kind = table_kind;
    table.primes = primes;
    std::map<DimVector, QPoly> done;

    for (const DimVector& u : box) {
        int bound = (int)(1 - ringel_form(q, u, u));
        if (bound < 0) bound = 0;  // deeper vectors can only carry the zero polynomial
        if ((int)primes.size() < bound + 1)
            throw domain_error("kac extraction: need " + std::to_string(bound + 1) +
                               " primes for dimension-vector degree bound");
        std::vector<std::pair<mpz_class, mpz_class>> pts;
        for (size_t pi = 0; pi < primes.size(); ++pi) {
            i64 p = primes[pi];
            mpq_class c = 0;
            auto it = logs[pi].find(u);
            if (it != logs[pi].end()) c = it->second;
            // peel off the Adams terms of the already-extracted lower entries
            for (int m = 2; m <= total_of(u); ++m) {
                if (!divides(m, u)) continue;
                const QPoly& low = done.at(divided(u, m));
                mpq_class term;
                if (full) {
                    mpq_class pm = qpow(p, m);
                    term = low.eval(pm) * pm / ((pm - 1) * m);
                } else {
                    mpq_class sm = qpow(p, -m);
                    term = low.eval(sm) / ((1 - sm) * m);
                }
                c -= term;
            }
            mpq_class val;
            if (full) {
                // c = (p/(p-1)) A_u(p)
                val = c * mpq_class(p - 1) / mpq_class(p);
            } else {
                // c = A_u(1/p) / (1 - 1/p); interpolate p^bound A_u(1/p)
                val = c * (1 - qpow(p, -1)) * qpow(p, bound);
            }
            val.canonicalize();
            if (val.get_den() != 1)
                throw consistency_error("kac extraction: non-integer value at prime " +
                                        std::to_string(p));
            pts.emplace_back(mpz_class(p), val.get_num());
        }
        InterpolationResult ir = interpolate_poly(pts, bound);
        if (!ir.integer_coefficients)
            throw consistency_error("kac extraction: non-integer polynomial coefficients");
        if (!ir.consistent)
            throw consistency_error("kac extraction: extra primes reject the degree bound");
        QPoly poly = ir.poly;
        if (!full) {
            // undo the reversal: interpolated poly has coefficient of p^i equal
            // to the t^{bound-i} coefficient of A_u(t)
            std::vector<mpq_class> rev((size_t)bound + 1, mpq_class(0));
            for (int i = 0; i <= bound; ++i) rev[(size_t)(bound - i)] = poly.coeff(i);
            poly = QPoly(rev);
        }
        done[u] = poly;
        table.entries.emplace_back(u, poly);
    }
    return table;
}

// Numeric log-series coefficients implied by a table at a given prime.
BoxSeries table_log_series(const Quiver& q, const KacTable& table, const DimVector& vmax,
                           i64 p, bool full) {
    BoxSeries c;
    for (const auto& [v, poly] : table.entries) {
        for (int m = 1; m * total_of(v) <= total_of(vmax); ++m) {
            DimVector u = v;
            for (i64& x : u) x *= m;
            if (!in_box(u, vmax)) continue;
            mpq_class term;
            if (full) {
                mpq_class pm = qpow(p, m);
                term = poly.eval(pm) * pm / ((pm - 1) * m);
            } else {
                mpq_class sm = qpow(p, -m);
                term = poly.eval(sm) / ((1 - sm) * m);
            }
            c[u] += term;
        }
    }
    return c;
}

}  // namespace

const QPoly* KacTable::find(const DimVector& v) const {
    for (const auto& e : entries)
        if (e.first == v) return &e.second;
    return nullptr;
}

KacTable extract_full_kac(const Quiver& q, const DimVector& v_max,
                          const std::vector<std::int64_t>& primes, const CountOptions& opt) {
    return extract_impl(q, v_max, primes, VarietyKind::M, "full", opt);
}

KacTable extract_nilpotent_kac(const Quiver& q, int flat, const DimVector& v_max,
                               const std::vector<std::int64_t>& primes, const CountOptions& opt) {
    if (flat != 0 && flat != 1) throw domain_error("extract_nilpotent_kac: flat must be 0 or 1");
    return extract_impl(q, v_max, primes,
                        flat == 0 ? VarietyKind::Lambda0 : VarietyKind::Lambda1,
                        flat == 0 ? "nilpotent0" : "nilpotent1", opt);
}

std::vector<std::pair<DimVector, mpq_class>> table_series_eval(const Quiver& q,
                                                               const KacTable& table,
                                                               const DimVector& v_max,
                                                               std::int64_t p) {
    bool full = table.kind == "full";
    BoxSeries S = box_exp(table_log_series(q, table, v_max, p, full), v_max);
    std::vector<std::pair<DimVector, mpq_class>> out;
    out.emplace_back(DimVector(v_max.size(), 0), mpq_class(1));
    for (const DimVector& u : box_vectors(v_max))
        out.emplace_back(u, S.count(u) ? S.at(u) : mpq_class(0));
    return out;
}

KacSanityReport kac_sanity(const KacTable& full, const KacTable& nil0, const KacTable& nil1) {
    KacSanityReport rep;
    auto dims = [](const DimVector& v) {
        std::string s = "(";
        for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + ")";
    };
    auto check_integer_nonneg = [&](const KacTable& t) {
        for (const auto& [v, poly] : t.entries) {
            if (!poly.integer_coefficients())
                rep.failures.push_back(t.kind + " " + dims(v) + ": non-integer coefficients");
            for (const auto& c : poly.c)
                if (c < 0)
                    rep.failures.push_back(t.kind + " " + dims(v) + ": negative coefficient");
        }
    };
    check_integer_nonneg(full);
    check_integer_nonneg(nil0);
    check_integer_nonneg(nil1);
    for (const auto& [v, poly] : full.entries) {
        int expect = (int)(1 - ringel_form(full.q, v, v));
        if (poly.degree() != expect)
            rep.failures.push_back("full " + dims(v) + ": degree " +
                                   std::to_string(poly.degree()) + " != " +
                                   std::to_string(expect));
        else if (poly.lead() != 1)
            rep.failures.push_back("full " + dims(v) + ": not monic");
        const QPoly* p0 = nil0.find(v);
        const QPoly* p1 = nil1.find(v);
        mpq_class at1 = poly.eval(1);
        if (p0 && p0->eval(1) != at1)
            rep.failures.push_back(dims(v) + ": full(1) != nilpotent0(1)");
        if (p1 && p1->eval(1) != at1)
            rep.failures.push_back(dims(v) + ": full(1) != nilpotent1(1)");
    }
    return rep;
}

mpz_class predict_count(const Quiver& q, const DimVector& v, VarietyKind kind,
                        const KacTable& table, std::int64_t fresh_prime) {
    bool full = table.kind == "full";
    if (kind != VarietyKind::M && kind != VarietyKind::Lambda0 && kind != VarietyKind::Lambda1)
        throw domain_error("predict_count: only M and Lambda kinds have a generating identity");
    if ((kind == VarietyKind::M) != full)
        throw domain_error("predict_count: table kind does not match the variety kind");
    if (kind == VarietyKind::Lambda0 && table.kind == "nilpotent1")
        throw domain_error("predict_count: table kind does not match the variety kind");
    if (kind == VarietyKind::Lambda1 && table.kind == "nilpotent0")
        throw domain_error("predict_count: table kind does not match the variety kind");
    for (const DimVector& u : box_vectors(v))
        if (!table.find(u)) throw domain_error("predict_count: table is missing a lower entry");
    i64 p = fresh_prime;
    BoxSeries c = table_log_series(q, table, v, p, full);
    BoxSeries S = box_exp(c, v);
    mpq_class coeff = S.count(v) ? S.at(v) : mpq_class(0);
    mpq_class raw = coeff * mpq_class(order_G(v, p)) * qpow(p, -ringel_form(q, v, v));
    raw.canonicalize();
    if (raw.get_den() != 1)
        throw consistency_error("predict_count: predicted count is not an integer");
    return raw.get_num();
}

HilbertReport preprojective_hilbert_series(const Quiver& q, int order) {
    int n = q.nv();
    auto adj = q.adjacency();
    auto build = [&](int sign) {
        std::vector<std::vector<QPoly>> M((size_t)n, std::vector<QPoly>((size_t)n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                QPoly e;
                if (i == j) e = e + QPoly(mpq_class(1)) + QPoly::monomial(1, 2);
                e = e + QPoly::monomial(mpq_class(sign * (adj[i][j] + adj[j][i])), 1);
                M[i][j] = e;
            }
        return M;
    };
    HilbertReport rep;
    auto M = build(-1);
    rep.H = matrix_series_inverse(M, order);
    // verify H * M = Id up to the truncation order
    rep.inversion_identity_ok = true;
    for (int i = 0; i < n && rep.inversion_identity_ok; ++i)
        for (int j = 0; j < n && rep.inversion_identity_ok; ++j) {
            QPoly acc;
            for (int k = 0; k < n; ++k) acc = acc + rep.H[i][k] * M[k][j];
            for (int d = 0; d <= order; ++d)
                if (acc.coeff(d) != ((i == j && d == 0) ? mpq_class(1) : mpq_class(0)))
                    rep.inversion_identity_ok = false;
        }
    // expand the plus-sign variant; if it goes negative the printed sign
    // cannot be the dimension-counting one
    auto Hplus = matrix_series_inverse(build(+1), order);
    for (auto& row : Hplus)
        for (auto& e : row)
            for (const auto& c : e.c)
                if (c < 0) rep.printed_sign_differs = true;
    rep.note = rep.printed_sign_differs
                   ? "inverse of Id + t(Q+Q^T) + t^2 Id has negative coefficients; "
                     "the minus-sign inverse is returned"
                   : "both sign conventions stay nonnegative on this window";
    return rep;
}

std::string kac_table_to_json(const KacTable& t) {
    nlohmann::json j;
    j["kind"] = t.kind;
    j["primes"] = t.primes;
    j["entries"] = nlohmann::json::array();
    for (const auto& [v, poly] : t.entries) {
        nlohmann::json e;
        e["dim"] = nlohmann::json::parse(dimvector_to_json(t.q, v));
        // integer coefficients are an invariant of the table; big ones fall
        // back to decimal strings
        nlohmann::json cs = nlohmann::json::array();
        for (const auto& c : poly.c) {
            mpz_class z = c.get_num();
            if (z.fits_slong_p()) cs.push_back((long long)z.get_si());
            else cs.push_back(z.get_str());
        }
        e["poly"] = cs;
        j["entries"].push_back(e);
    }
    return j.dump();
}

}  // namespace qlab
