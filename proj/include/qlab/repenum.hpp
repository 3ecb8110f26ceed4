#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "qlab/fp.hpp"
#include "qlab/matrix.hpp"
#include "qlab/qpoly.hpp"
#include "qlab/quiver.hpp"

namespace qlab {

// Representation of the double quiver over F_p: one matrix per forward arrow
// (x part) and one per reversed arrow (x* part).
struct Representation {
    Quiver q;  // base quiver; the x*-part corresponds to reversed arrows
    DimVector dim;
    std::int64_t p = 0;
    std::vector<Matrix<Fp>> x;   // x[a]: dim[target] x dim[source]
    std::vector<Matrix<Fp>> xs;  // xs[a]: dim[source] x dim[target]

    static Representation zero(const Quiver& q, const DimVector& dim, std::int64_t p);
    void check() const;
};

enum class VarietyKind { Rep, M, Lambda0, Lambda1 };

std::string kind_name(VarietyKind k);
VarietyKind kind_from_name(const std::string& s);

struct CountRecord {
    Quiver q;
    DimVector dim;
    std::int64_t prime = 0;
    VarietyKind kind = VarietyKind::Rep;
    mpz_class raw;
    mpq_class stack;  // raw / |G(v)(F_p)|
};

// Per-vertex blocks of mu(x) = sum_h [x_h, x_{h*}]; zero iff the
// representation satisfies the preprojective relation.
std::vector<Matrix<Fp>> moment_map(const Representation& rep);

bool is_semi_nilpotent(const Representation& rep);           // Lambda^0 flag test
bool is_strongly_semi_nilpotent(const Representation& rep);  // Lambda^1 flag test

// Brute-force existence check over all (restricted) flags; total dim <= 4, p <= 3.
bool exhaustive_flag_oracle(const Representation& rep, bool restricted);

// Codimension in V_i of the smallest subspace containing the images of all
// non-loop double-quiver arrows into i and stable under the loop operators.
int epsilon_i(const Representation& rep, int i);

struct CountOptions {
    unsigned long long budget = 1000000000ULL;  // membership tests / fiber evaluations
    int threads = 0;                            // 0 = library default
    bool serial_reference = false;              // force the single-threaded kernel
    bool naive_m = false;                       // kind=M: skip the linear-fiber fast path
};

CountRecord count_variety(const Quiver& q, const DimVector& v, std::int64_t p,
                          VarietyKind kind, const CountOptions& opt = {});

mpz_class order_G(const DimVector& v, std::int64_t p);
mpz_class order_T(int tau, std::int64_t p);

// Interpolates the raw counts over the given primes; integer coefficients and
// over-determined consistency are hard-checked.
QPoly count_polynomial(const Quiver& q, const DimVector& v, VarietyKind kind,
                       const std::vector<std::int64_t>& primes, int degree_bound,
                       const CountOptions& opt = {});

std::string count_record_to_json(const CountRecord& r);

}  // namespace qlab
