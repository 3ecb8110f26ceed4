// Compares the serial reference enumeration kernel against the OpenMP one on
// a couple of representative workloads and checks they agree exactly.

#include <chrono>
#include <cstdio>

#include "qlab/quiver.hpp"
#include "qlab/repenum.hpp"

using namespace qlab;

namespace {

double timed(const Quiver& q, const DimVector& v, std::int64_t p, VarietyKind kind,
             bool serial, mpz_class* raw) {
    CountOptions opt;
    opt.serial_reference = serial;
    auto t0 = std::chrono::steady_clock::now();
    CountRecord r = count_variety(q, v, p, kind, opt);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    *raw = r.raw;
    return dt;
}

void bench(const char* tag, const Quiver& q, const DimVector& v, std::int64_t p,
           VarietyKind kind) {
    mpz_class serial_raw, parallel_raw;
    double ts = timed(q, v, p, kind, true, &serial_raw);
    double tp = timed(q, v, p, kind, false, &parallel_raw);
    std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s (%s)\n", tag, ts, tp,
                tp > 0 ? ts / tp : 0.0, serial_raw == parallel_raw ? "agree" : "DISAGREE",
                serial_raw.get_str().c_str());
}

}  // namespace

int main() {
    bench("one-loop lambda0 v=2 p=5", jordan_quiver(), {2}, 5, VarietyKind::Lambda0);
    bench("one-loop lambda0 v=3 p=3", jordan_quiver(), {3}, 3, VarietyKind::Lambda0);
    bench("one-loop m v=2 p=13", jordan_quiver(), {2}, 13, VarietyKind::M);
    bench("two-loop lambda1 v=2 p=3", loop_quiver(2), {2}, 3, VarietyKind::Lambda1);
    return 0;
}
