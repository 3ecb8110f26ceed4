#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qlab/kac.hpp"

using namespace qlab;

namespace {

const QPoly& entry(const KacTable& t, const DimVector& v) {
    const QPoly* p = t.find(v);
    REQUIRE(p != nullptr);
    return *p;
}

}  // namespace

TEST_CASE("one-loop extraction: every full polynomial is t") {
    KacTable full = extract_full_kac(jordan_quiver(), {2}, {2, 3, 5});
    QPoly t = QPoly::monomial(1, 1);
    CHECK(entry(full, {1}) == t);
    CHECK(entry(full, {2}) == t);
    CHECK(full.kind == "full");
}

TEST_CASE("one-loop nilpotent extraction: every polynomial is 1") {
    QPoly one(mpq_class(1));
    for (int flat : {0, 1}) {
        KacTable t = extract_nilpotent_kac(jordan_quiver(), flat, {2}, {2, 3, 5});
        CHECK(entry(t, {1}) == one);
        CHECK(entry(t, {2}) == one);
    }
}

TEST_CASE("two-loop and two-vertex base cases") {
    KacTable g2 = extract_full_kac(loop_quiver(2), {1}, {2, 3, 5});
    CHECK(entry(g2, {1}) == QPoly::monomial(1, 2));  // t^2 for the 2-loop vertex
    KacTable a2 = extract_full_kac(a2_quiver(), {1, 1}, {2, 3});
    CHECK(entry(a2, {1, 0}) == QPoly(mpq_class(1)));
    CHECK(entry(a2, {1, 1}) == QPoly(mpq_class(1)));
}

TEST_CASE("forward prediction at a fresh prime matches enumeration") {
    KacTable full = extract_full_kac(jordan_quiver(), {2}, {2, 3, 5});
    mpz_class predicted = predict_count(jordan_quiver(), {1}, VarietyKind::M, full, 7);
    CHECK(predicted == count_variety(jordan_quiver(), {1}, 7, VarietyKind::M).raw);
}

TEST_CASE("sanity report over the one-loop tables") {
    KacTable full = extract_full_kac(jordan_quiver(), {2}, {2, 3, 5});
    KacTable n0 = extract_nilpotent_kac(jordan_quiver(), 0, {2}, {2, 3, 5});
    KacTable n1 = extract_nilpotent_kac(jordan_quiver(), 1, {2}, {2, 3, 5});
    KacSanityReport rep = kac_sanity(full, n0, n1);
    for (const auto& f : rep.failures) INFO(f);
    CHECK(rep.ok());
}

TEST_CASE("preprojective hilbert series of the one-loop quiver") {
    HilbertReport h = preprojective_hilbert_series(jordan_quiver(), 8);
    REQUIRE(h.H.size() == 1);
    // independent count: monomials in two letters of degree n modulo the
    // commutator relation leave n + 1 classes
    for (int n = 0; n <= 8; ++n) CHECK(h.H[0][0].coeff(n) == n + 1);
    CHECK(h.inversion_identity_ok);
    CHECK(h.printed_sign_differs);
}

TEST_CASE("kac table json") {
    KacTable full = extract_full_kac(jordan_quiver(), {1}, {2, 3, 5});
    std::string s = kac_table_to_json(full);
    CHECK(s.find("\"poly\"") != std::string::npos);
}
