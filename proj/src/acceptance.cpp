#include "qlab/acceptance.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "qlab/coha.hpp"
#include "qlab/kac.hpp"
#include "qlab/quiver.hpp"
#include "qlab/repenum.hpp"
#include "qlab/shuffle.hpp"
#include "qlab/strata.hpp"

namespace qlab {

namespace {

using i64 = std::int64_t;

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
};

// Every assignment of double-quiver matrix entries over F_p, visited through
// an entry odometer.
template <class Fn>
void for_all_reps(const Quiver& q, const DimVector& v, i64 p, Fn&& fn) {
    Representation rep = Representation::zero(q, v, p);
    std::vector<Fp*> slots;
    for (auto& m : rep.x)
        for (Fp& e : m.a) slots.push_back(&e);
    for (auto& m : rep.xs)
        for (Fp& e : m.a) slots.push_back(&e);
    std::vector<i64> digits(slots.size(), 0);
    for (;;) {
        for (size_t i = 0; i < slots.size(); ++i) *slots[i] = Fp(digits[i], p);
        fn(rep);
        size_t i = 0;
        while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
        if (i == digits.size()) break;
    }
}

Matrix<Fp> random_invertible(int n, i64 p, std::mt19937_64& rng) {
    Fp one(1, p);
    Matrix<Fp> g(n, n, Fp::zero_of(p));
    for (;;) {
        for (Fp& e : g.a) e = Fp((i64)(rng() % (std::uint64_t)p), p);
        try {
            inverse(g, one);
            return g;
        } catch (const domain_error&) {
        }
    }
}

CriterionResult run_one(int id, const std::string& name, void (*body)(Check&)) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    r.pass = c.ok;
    r.detail = c.detail.str();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

void crit1_a2_counts(Check& c) {
    Quiver a2 = a2_quiver();
    for (VarietyKind kind : {VarietyKind::Lambda0, VarietyKind::Lambda1}) {
        for (i64 p : {2, 3, 5, 7}) {
            CountRecord r = count_variety(a2, {1, 1}, p, kind);
            c.require(r.raw == 2 * p - 1, kind_name(kind) + " count at p=" + std::to_string(p) +
                                              " is " + r.raw.get_str());
        }
        QPoly got = count_polynomial(a2, {1, 1}, kind, {2, 3, 5, 7}, 1);
        QPoly want(std::vector<mpq_class>{-1, 2});
        c.require(got == want, kind_name(kind) + " polynomial is " + got.str("q"));
    }
}

void crit2_a2_identity(Check& c) {
    for (i64 p : {2, 3, 5})
        c.require(check_a2_remark(p), "identity fails at p=" + std::to_string(p));
}

void crit3_jordan_kac(Check& c) {
    Quiver j = jordan_quiver();
    KacTable full = extract_full_kac(j, {2}, {2, 3, 5});
    QPoly t = QPoly::monomial(1, 1);
    for (const auto& [v, poly] : full.entries)
        c.require(poly == t, "full table at v=" + std::to_string(v[0]) + " is " + poly.str("t"));
    for (int flat : {0, 1}) {
        KacTable nil = extract_nilpotent_kac(j, flat, {2}, {2, 3, 5});
        for (const auto& [v, poly] : nil.entries)
            c.require(poly == QPoly(mpq_class(1)), "nilpotent" + std::to_string(flat) + " at v=" +
                                                       std::to_string(v[0]) + " is " +
                                                       poly.str("t"));
    }
}

void crit4_predict(Check& c) {
    Quiver j = jordan_quiver();
    KacTable full = extract_full_kac(j, {2}, {2, 3, 5});
    mpz_class predicted = predict_count(j, {2}, VarietyKind::M, full, 7);
    mpz_class actual = count_variety(j, {2}, 7, VarietyKind::M).raw;
    c.require(predicted == actual,
              "predicted " + predicted.get_str() + ", enumerated " + actual.get_str());
}

void crit5_leading(Check& c) {
    Quiver j = jordan_quiver();
    LangWeilResult lw = langweil_leading(j, 2);
    c.require(lw.matches, "one-loop v=2 fit: degree " + std::to_string(lw.actual_degree) +
                              " leading " + lw.actual_leading.get_str() + ", wanted monic degree " +
                              std::to_string(lw.expected_degree));
    QPoly got = count_polynomial(loop_quiver(2), {1}, VarietyKind::M, {2, 3, 5, 7, 11}, 4);
    c.require(got == QPoly::monomial(1, 4), "two-loop v=1 count is " + got.str("q"));
}

void crit6_coha(Check& c) {
    Quiver j = jordan_quiver();
    const int N = 3, K = 6;
    KacTable nil = extract_nilpotent_kac(j, 0, {3}, {2, 3, 5});
    CohaDimSeries series = coha_series_from_kac(nil, 2, N, K);
    // independent expansion of (1-s)^{-2} prod_{v>=1} prod_{k>=0} (1-s^k z^v)^{-1}
    // in s = q^{-1} by direct truncated multiplication
    std::vector<std::vector<mpq_class>> want((size_t)N + 1,
                                             std::vector<mpq_class>((size_t)K + 1, 0));
    for (int m = 0; m <= K; ++m) want[0][(size_t)m] = m + 1;  // the (1-s)^{-2} factor
    for (int v = 1; v <= N; ++v)
        for (int k = 0; k <= K; ++k) {
            // multiply by (1 - s^k z^v)^{-1} = sum_m s^{km} z^{vm}
            std::vector<std::vector<mpq_class>> next = want;
            for (int m = 1; v * m <= N; ++m) {
                if (k * m > K) break;
                for (int zv = 0; zv + v * m <= N; ++zv)
                    for (int sk = 0; sk + k * m <= K; ++sk)
                        next[(size_t)(zv + v * m)][(size_t)(sk + k * m)] += want[(size_t)zv][(size_t)sk];
            }
            want = std::move(next);
        }
    for (int v = 0; v <= N; ++v) {
        auto it = series.series.c.find({v});
        c.require(it != series.series.c.end(), "missing z^" + std::to_string(v));
        if (it == series.series.c.end()) continue;
        for (int m = 0; m <= K; ++m)
            c.require(it->second[(size_t)m] == want[(size_t)v][(size_t)m],
                      "z^" + std::to_string(v) + " q^-" + std::to_string(m) + " is " +
                          it->second[(size_t)m].get_str());
    }
    auto rows = coha_cross_check(j, nil, 0, {3}, {2, 3, 5}, 2);
    for (const CohaCrossRow& row : rows)
        c.require(row.equal, "route mismatch at v=" + std::to_string(row.v.empty() ? 0 : row.v[0]) +
                                 " p=" + std::to_string(row.prime));
}

void crit7_t1_agreement(Check& c) {
    struct Case {
        Quiver q;
        DimVector vmax;
        const char* tag;
    };
    std::vector<Case> cases = {{jordan_quiver(), {2}, "one-loop"},
                               {loop_quiver(2), {1}, "two-loop"},
                               {a2_quiver(), {1, 1}, "a2"}};
    for (const Case& cs : cases) {
        KacTable full = extract_full_kac(cs.q, cs.vmax, {2, 3, 5});
        KacTable nil0 = extract_nilpotent_kac(cs.q, 0, cs.vmax, {2, 3, 5});
        KacTable nil1 = extract_nilpotent_kac(cs.q, 1, cs.vmax, {2, 3, 5});
        KacSanityReport rep = kac_sanity(full, nil0, nil1);
        for (const std::string& f : rep.failures) c.require(false, std::string(cs.tag) + ": " + f);
    }
}

void crit8_shuffle(Check& c) {
    // (a) denominator cancellation on random symmetric inputs
    std::mt19937_64 rng(20240817);
    auto rand_scalar = [&] {
        Poly2 s(mpq_class((i64)(rng() % 7) - 3));
        if (rng() % 2) s = s * Poly2::t_var();
        if (rng() % 2) s = s + Poly2::u_var();
        return RatFunc2(s);
    };
    auto rand_sym = [&](int nvars) {
        XPoly r(nvars);
        for (int tries = 0; tries < 3; ++tries) {
            int a = (int)(rng() % 3), b = (int)(rng() % 3);
            RatFunc2 s = rand_scalar();
            if (nvars == 1) {
                XPoly m(1);
                m.add_term({a}, s);
                r = r + m;
            } else {
                XPoly m(2), m2(2);
                m.add_term({a, b}, s);
                m2.add_term({b, a}, s);
                r = r + (a == b ? m : m + m2);
            }
        }
        return SymPoly(std::move(r));
    };
    for (int trial = 0; trial < 50; ++trial) {
        int nf = 1 + (int)(rng() % 2), ng = 1 + (int)(rng() % 2);
        try {
            shuffle_product(rand_sym(nf), rand_sym(ng));
        } catch (const consistency_error& e) {
            c.require(false, std::string("cancellation failed: ") + e.what());
        }
    }
    // (b) associativity on all one-variable monomial triples of degree <= 2
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j)
            for (int k = 0; k <= 2; ++k) {
                auto mono = [](int d) {
                    XPoly m(1);
                    m.add_term({d}, RatFunc2(mpq_class(1)));
                    return SymPoly(std::move(m));
                };
                SymPoly f = mono(i), g = mono(j), h = mono(k);
                bool eq = shuffle_product(shuffle_product(f, g), h) ==
                          shuffle_product(f, shuffle_product(g, h));
                c.require(eq, "associativity fails on degrees (" + std::to_string(i) + "," +
                                  std::to_string(j) + "," + std::to_string(k) + ")");
            }
    // (c) the two-variable product of units
    SymPoly unit = SymPoly::one(1);
    c.require(shuffle_product(unit, unit) == parse_sympoly("2*((x1-x2)^2 + t*u - (t+u)^2)", 2),
              "product of units has the wrong value");
    // (d) wheel conditions
    c.require(wheel_check(x_l_image(3)).ok, "three-variable generator image fails the wheel check");
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b)
            for (int k = 0; k <= 1; ++k) {
                SymPoly prod =
                    shuffle_product(shuffle_product(d_k_image(a), d_k_image(b)), d_k_image(k));
                c.require(wheel_check(prod).ok, "wheel closure fails");
            }
    // (e) membership certificate for the two-variable generator image
    MembershipResult mem = membership_in_generated(x_l_image(2), d_generator_family(2), 2);
    c.require(mem.status == MembershipStatus::Certified,
              mem.status == MembershipStatus::NotInSpan
                  ? "x_2 image is not in the degree<=2 window of two-factor products"
                  : "membership undetermined");
}

void crit9_hilbert(Check& c) {
    HilbertReport rep = preprojective_hilbert_series(jordan_quiver(), 8);
    c.require(rep.inversion_identity_ok, "inverse identity fails");
    for (int n = 0; n <= 8; ++n) {
        // commuting monomials x^a y^b with a + b = n, counted directly
        int count = 0;
        for (int a = 0; a <= n; ++a)
            for (int b = 0; b <= n; ++b)
                if (a + b == n) ++count;
        c.require(rep.H[0][0].coeff(n) == count,
                  "t^" + std::to_string(n) + " coefficient is " + rep.H[0][0].coeff(n).get_str());
    }
    c.require(rep.printed_sign_differs, "plus-sign variant unexpectedly stays nonnegative");
}

void crit10_oracle(Check& c) {
    struct Case {
        Quiver q;
        DimVector v;
        i64 p;
        const char* tag;
    };
    std::vector<Case> cases = {
        {a2_quiver(), {1, 1}, 2, "a2"}, {jordan_quiver(), {2}, 2, "one-loop"},
        {loop_quiver(2), {1}, 3, "two-loop"}};
    for (const Case& cs : cases) {
        long long mismatches = 0, total = 0;
        for_all_reps(cs.q, cs.v, cs.p, [&](const Representation& rep) {
            ++total;
            if (is_semi_nilpotent(rep) != exhaustive_flag_oracle(rep, false)) ++mismatches;
            if (is_strongly_semi_nilpotent(rep) != exhaustive_flag_oracle(rep, true)) ++mismatches;
        });
        c.require(mismatches == 0, std::string(cs.tag) + ": " + std::to_string(mismatches) +
                                       " mismatches over " + std::to_string(total) + " reps");
    }
}

void crit11_strata(Check& c) {
    HeckeScanReport scan = hecke_stratum_scan({2, 3}, 4, 3, 3);
    for (size_t i = 0; i < scan.violations.size() && i < 5; ++i)
        c.require(false, "scan: " + scan.violations[i]);
    c.require(scan.excluded > 0, "expected boundary grid points to be excluded and logged");
    std::mt19937_64 rng(1248163264);
    struct Case {
        Quiver q;
        DimVector v, w;
        i64 p;
        int trials;
    };
    std::vector<Case> cases = {{a2_quiver(), {2, 1}, {1, 1}, 3, 500},
                               {jordan_quiver(), {2}, {1}, 5, 250},
                               {loop_quiver(2), {2}, {0}, 3, 250}};
    for (const Case& cs : cases)
        for (int trial = 0; trial < cs.trials; ++trial) {
            FramedRep r = random_m_point(cs.q, cs.v, cs.w, cs.p, rng());
            c.require(framed_moment_zero(r), "sampled point misses the moment fiber");
            std::vector<Matrix<Fp>> g;
            for (int i = 0; i < cs.q.nv(); ++i)
                g.push_back(random_invertible((int)cs.v[i], cs.p, rng));
            try {
                diamond_lift(r, g);
            } catch (const std::exception& e) {
                c.require(false, std::string("lift failed: ") + e.what());
                return;
            }
        }
}

}  // namespace

AcceptanceReport run_acceptance(bool quick) {
    AcceptanceReport rep;
    rep.results.push_back(run_one(1, "a2 flag-variety counts", crit1_a2_counts));
    rep.results.push_back(run_one(2, "a2 stack identity", crit2_a2_identity));
    rep.results.push_back(run_one(3, "one-loop table extraction", crit3_jordan_kac));
    if (!quick) {
        rep.results.push_back(run_one(4, "predict-and-verify at a fresh prime", crit4_predict));
        rep.results.push_back(run_one(5, "leading-term interpolation", crit5_leading));
    }
    rep.results.push_back(run_one(6, "one-loop graded-dimension series", crit6_coha));
    rep.results.push_back(run_one(7, "t=1 table agreement", crit7_t1_agreement));
    rep.results.push_back(run_one(8, "shuffle-algebra suite", crit8_shuffle));
    rep.results.push_back(run_one(9, "preprojective Hilbert series", crit9_hilbert));
    rep.results.push_back(run_one(10, "flag-membership oracle agreement", crit10_oracle));
    rep.results.push_back(run_one(11, "stratum dimension scan and lift", crit11_strata));
    return rep;
}

}  // namespace qlab
