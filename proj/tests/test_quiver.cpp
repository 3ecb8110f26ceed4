#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qlab/quiver.hpp"

using namespace qlab;

TEST_CASE("vertices are sorted and arrows resolved by name") {
    Quiver q({"b", "a"}, {{"a", "b"}, {"b", "b"}});
    CHECK(q.verts == std::vector<std::string>{"a", "b"});
    CHECK(q.arrows == std::vector<std::pair<int, int>>{{0, 1}, {1, 1}});
    CHECK(q.loops(1) == 1);
    CHECK(q.loops(0) == 0);
    CHECK(q.arrow_count(0, 1) == 1);
}

TEST_CASE("named quivers") {
    CHECK(jordan_quiver().nv() == 1);
    CHECK(jordan_quiver().loops(0) == 1);
    CHECK(loop_quiver(2).na() == 2);
    CHECK(a2_quiver().arrows == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("bilinear forms") {
    Quiver j = jordan_quiver();
    // <v,w> = vw - vw = 0 for the one-loop quiver
    CHECK(ringel_form(j, {3}, {4}) == 0);
    CHECK(euler_form(j, {2}, {2}) == 0);
    CHECK(d_v(j, {2}) == 4);
    CHECK(d_vw(j, {2}, {1}) == 4);
    CHECK(d_vw(j, {1}, {1}) == 2);

    Quiver a2 = a2_quiver();
    CHECK(ringel_form(a2, {1, 1}, {1, 1}) == 1);
    CHECK(euler_form(a2, {1, 1}, {1, 1}) == 2);

    Quiver g2 = loop_quiver(2);
    CHECK(ringel_form(g2, {1}, {1}) == -1);
    CHECK(d_v(g2, {1}) == 2);
}

TEST_CASE("framed quiver lift and pairing discrepancy") {
    Quiver a2 = a2_quiver();
    FramedQuiver fq = framed_quiver(a2, {1, 0});
    CHECK(fq.q.nv() == 3);
    DimVector u = fq.lift({1, 1}, 1);
    CHECK(u[fq.inf] == 1);
    CHECK(u[fq.vmap[0]] == 1);
    CHECK(u[fq.vmap[1]] == 1);

    // structural symmetric form vs the printed right-hand side: they differ
    // by exactly a*a' because the printed formula counts the framing
    // diagonal once instead of twice
    for (std::int64_t a = 0; a <= 2; ++a)
        for (std::int64_t ap = 0; ap <= 2; ++ap) {
            std::int64_t structural =
                euler_form(fq.q, fq.lift({1, 1}, a), fq.lift({2, 1}, ap));
            std::int64_t printed = framed_pairing_printed(a2, {1, 0}, {1, 1}, {2, 1}, a, ap);
            CHECK(structural - printed == a * ap);
        }
}

TEST_CASE("double and graded quivers") {
    Quiver d = double_quiver(a2_quiver());
    CHECK(d.na() == 2);
    CHECK(d.arrows[1] == std::pair<int, int>{1, 0});
    Quiver g = graded_quiver(a2_quiver(), 0, 1);
    CHECK(g.nv() == 4);
}

TEST_CASE("compositions") {
    auto all = compositions({2}, false);
    CHECK(all.size() == 2);  // (2) and (1)+(1)
    auto a2all = compositions({1, 1}, false);
    CHECK(a2all.size() == 3);
    auto a2res = compositions({1, 1}, true);
    CHECK(a2res.size() == 2);
    for (const auto& c : a2res) CHECK(c.restricted);
}

TEST_CASE("antidominant order") {
    auto cs = compositions({2}, false);
    const Composition* whole = nullptr;
    const Composition* split = nullptr;
    for (const auto& c : cs) (c.parts.size() == 1 ? whole : split) = &c;
    REQUIRE(whole != nullptr);
    REQUIRE(split != nullptr);
    // (2) precedes (1,1): its prefix sums dominate at every step
    CHECK(antidominant_leq(*whole, *split));
    CHECK(!antidominant_leq(*split, *whole));
}

TEST_CASE("generic characters") {
    Quiver j = jordan_quiver();
    // theta = (1): u=1 solves theta.u + theta_inf = 1 - 2 = -1 != 0, u=1
    // solves theta.u = 1 != 0 -> generic for v=2
    CHECK(is_generic_character(j, {1}, {2}, {1}));
    CHECK(!is_generic_character(j, {0}, {2}, {1}));
}

TEST_CASE("json round trip") {
    Quiver a2 = a2_quiver();
    Quiver back = quiver_from_json(quiver_to_json(a2));
    CHECK(back.verts == a2.verts);
    CHECK(back.arrows == a2.arrows);
    DimVector v = dimvector_from_json(a2, dimvector_to_json(a2, {1, 2}));
    CHECK(v == DimVector{1, 2});
}

TEST_CASE("dimension validation") {
    CHECK_THROWS_AS(ringel_form(jordan_quiver(), {1, 2}, {1}), domain_error);
}
