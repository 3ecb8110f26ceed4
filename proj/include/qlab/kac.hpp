#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qlab/qpoly.hpp"
#include "qlab/quiver.hpp"
#include "qlab/repenum.hpp"

namespace qlab {

// Table of extracted Kac-type polynomials in t, one per dimension vector.
struct KacTable {
    Quiver q;
    std::string kind;  // "full" | "nilpotent0" | "nilpotent1"
    std::vector<std::pair<DimVector, QPoly>> entries;
    std::vector<std::int64_t> primes;

    const QPoly* find(const DimVector& v) const;
};

// Inverts the count generating identity for the moment-map fibers:
// sum_v stack(M(v)) q^{<v,v>} z^v = Exp( q/(q-1) * sum_v A_v(q) z^v ),
// working prime by prime with exact evaluation of the already-extracted
// lower polynomials inside the Adams terms, then interpolating each A_v
// with degree bound 1 - <v,v>.
KacTable extract_full_kac(const Quiver& q, const DimVector& v_max,
                          const std::vector<std::int64_t>& primes,
                          const CountOptions& opt = {});

// Same inversion for the (strongly) semi-nilpotent counts:
// sum_v stack(L^b(v)) q^{<v,v>} z^v
//   = exp( sum_{v!=0} sum_{m>=1} A^b_v(q^{-m}) z^{mv} / (m (1 - q^{-m})) ).
// The polynomials live in t = q^{-1}; interpolation goes through the
// reversed polynomial p^deg * A(1/p) at the integer nodes.
KacTable extract_nilpotent_kac(const Quiver& q, int flat, const DimVector& v_max,
                               const std::vector<std::int64_t>& primes,
                               const CountOptions& opt = {});

// z^u coefficients of the generating series a table implies at q = p (the
// stack-count * q^{<u,u>} normalization), for every u in the box [0, v_max].
// Runs the identity forward with exact rational arithmetic.
std::vector<std::pair<DimVector, mpq_class>> table_series_eval(const Quiver& q,
                                                               const KacTable& table,
                                                               const DimVector& v_max,
                                                               std::int64_t p);

struct KacSanityReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Checks: full polynomials monic of degree exactly 1 - <v,v>; all tables have
// nonnegative integer coefficients; the three kinds agree at t = 1.
KacSanityReport kac_sanity(const KacTable& full, const KacTable& nil0, const KacTable& nil1);

// Runs the generating identity forward at a fresh prime and returns the
// predicted raw point count for the requested variety.
mpz_class predict_count(const Quiver& q, const DimVector& v, VarietyKind kind,
                        const KacTable& table, std::int64_t fresh_prime);

struct HilbertReport {
    std::vector<std::vector<QPoly>> H;  // truncated entrywise at the order
    bool inversion_identity_ok = false;     // H (Id - t(Q+Q^T) + t^2 Id) = Id
    bool printed_sign_differs = false;      // the +t(Q+Q^T) variant goes negative
    std::string note;
};

// Hilbert series of the preprojective algebra as the inverse matrix series of
// Id - t(Q + Q^T) + t^2 Id.  The plus-sign variant is also expanded so the
// report can state which sign keeps the coefficients nonnegative.
HilbertReport preprojective_hilbert_series(const Quiver& q, int order);

std::string kac_table_to_json(const KacTable& t);

}  // namespace qlab
