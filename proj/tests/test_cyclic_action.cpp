#include <doctest.h>

#include "curvedeg/cyclic_action.hpp"
#include "testutil.hpp"

using namespace curvedeg;

namespace {

// Six genus-1 vertices in a cycle of sigma, m = 6, no edges is not
// connected, so use a 3-cycle of vertices joined in a triangle, m = 6:
// vertices rotate with orbit length 3.
DegenerationType triangle_m6() {
    DegenerationType d{
        graph_with_auto_flags({{0, 1}, {1, 1}, {2, 1}}, {{0, 0, 1}, {1, 1, 2}, {2, 2, 0}}),
        CyclicAction{}, 4, {}, {}};
    d.action.m = 6;
    d.action.sigma.vertex_map = {{0, 1}, {1, 2}, {2, 0}};
    d.action.sigma.edge_map = {{0, 1}, {1, 2}, {2, 0}};
    // edge i has flags 2i, 2i+1; flag 2i sits at vertex i.
    d.action.sigma.flag_map = {{0, 2}, {2, 4}, {4, 0}, {1, 3}, {3, 5}, {5, 1}};
    for (Id f = 0; f < 6; ++f) d.action.flag_val[f] = Rat(0);
    return d;
}

} // namespace

TEST_CASE("stabilizer orders are m over orbit length") {
    const auto t = triangle_m6();
    CHECK(vertex_stabilizer_order(t.action, 0) == 2); // m=6, orbit length 3
    CHECK(edge_stabilizer_order(t.action, 1) == 2);
    CHECK(flag_stabilizer_order(t.action, 4) == 2);

    const auto s = fixtures::smooth_g2();
    CHECK(vertex_stabilizer_order(s.action, 0) == 1); // m=1

    // m=4, two edges swapped: stabilizer order 2.
    DegenerationType d{
        graph_with_auto_flags({{0, 2}}, {{0, 0, 0}, {1, 0, 0}}), CyclicAction{}, 4, {}, {}};
    d.action.m = 4;
    d.action.sigma.vertex_map = {{0, 0}};
    d.action.sigma.edge_map = {{0, 1}, {1, 0}};
    d.action.sigma.flag_map = {{0, 2}, {2, 0}, {1, 3}, {3, 1}};
    CHECK(edge_stabilizer_order(d.action, 0) == 2);

    CHECK_THROWS_AS(vertex_stabilizer_order(t.action, 99), malformed_error);
}

TEST_CASE("amphidromy is the factor-2 jump between edge and flag orbits") {
    // Loop whose flags are exchanged by the generator itself.
    const auto loop = fixtures::amphidrome_loop_m2();
    CHECK(is_amphidrome(loop.graph, loop.action, 0));

    // Everything fixed: non-amphidrome.
    const auto hyper = fixtures::two_components_m4();
    CHECK_FALSE(is_amphidrome(hyper.graph, hyper.action, 0));

    // m=4: edge orbit length 2, flag orbit length 4.
    DegenerationType d{
        graph_with_auto_flags({{0, 2}}, {{0, 0, 0}, {1, 0, 0}}), CyclicAction{}, 4, {}, {}};
    d.action.m = 4;
    d.action.sigma.vertex_map = {{0, 0}};
    d.action.sigma.edge_map = {{0, 1}, {1, 0}};
    d.action.sigma.flag_map = {{0, 2}, {2, 1}, {1, 3}, {3, 0}};
    CHECK(is_amphidrome(d.graph, d.action, 0));
}

TEST_CASE("stabilizer factor two between edge and flag happens exactly when amphidrome") {
    for (const auto& d : fixtures::all_valid()) {
        for (const auto& e : d.graph.edges()) {
            const auto m_e = edge_stabilizer_order(d.action, e.id);
            const auto m_f = flag_stabilizer_order(d.action, e.flags[0]);
            if (is_amphidrome(d.graph, d.action, e.id))
                CHECK(m_e == 2 * m_f);
            else
                CHECK(m_e == m_f);
        }
    }
}

TEST_CASE("valency from character and back") {
    CHECK(valency_from_character(5, 2) == Rat(3, 5)); // 2*3 = 6 = 1 mod 5
    CHECK(valency_from_character(2, 1) == Rat(1, 2));
    CHECK(valency_from_character(7, 3) == Rat(5, 7)); // 3*5 = 15 = 1 mod 7
    CHECK(valency_from_character(1, 0) == Rat(0));
    CHECK_THROWS_AS(valency_from_character(6, 3), std::invalid_argument);
    CHECK_THROWS_AS(valency_from_character(5, 5), std::invalid_argument);

    CHECK(character_from_valency(Rat(3, 5)) == 2);
    CHECK(character_from_valency(Rat(1, 2)) == 1);
    CHECK(character_from_valency(Rat(0)) == 0);
    CHECK_THROWS_AS(character_from_valency(Rat(3, 2)), std::invalid_argument);

    for (std::int64_t m = 1; m <= 24; ++m)
        for (std::int64_t b = (m == 1 ? 0 : 1); b < m; ++b) {
            if (m > 1 && std::gcd(b, m) != 1) continue;
            const Rat val = valency_from_character(m, b);
            CHECK(character_from_valency(val) == b);
        }
}

TEST_CASE("edge characters: non-amphidrome sums, amphidrome squares") {
    // Non-amphidrome, m_e=3, valencies 1/3 and 1/3: b1=b2=1, chi = 2/3.
    DegenerationType d{graph_with_auto_flags({{0, 1}, {1, 1}}, {{0, 0, 1}}), CyclicAction{}, 2,
                       {}, {}};
    d.action.m = 3;
    d.action.sigma.vertex_map = {{0, 0}, {1, 1}};
    d.action.sigma.edge_map = {{0, 0}};
    d.action.sigma.flag_map = {{0, 0}, {1, 1}};
    d.action.flag_val = {{0, Rat(1, 3)}, {1, Rat(1, 3)}};
    CHECK(edge_character(d.graph, d.action, 0) == Rat(2, 3));

    // Same with valencies 1/2: chi = 0.
    d.action.m = 2;
    d.action.flag_val = {{0, Rat(1, 2)}, {1, Rat(1, 2)}};
    CHECK(edge_character(d.graph, d.action, 0) == Rat(0));
    CHECK(edge_character_residue(d.graph, d.action, 0) == 0);

    // Amphidrome loop, m_f=3, valency 2/3 (b_f=2): chi = 2/3 over m_e=6.
    const auto amph = fixtures::amphidrome_loop_m6();
    CHECK(edge_character(amph.graph, amph.action, 0) == Rat(2, 3));
    CHECK(edge_character_residue(amph.graph, amph.action, 0) == 4);

    // Amphidrome with m_f=3 and valency 1/3 (b_f=1): chi = 1/3 = 2/6.
    auto amph2 = amph;
    amph2.action.flag_val = {{0, Rat(1, 3)}, {1, Rat(1, 3)}};
    CHECK(edge_character(amph2.graph, amph2.action, 0) == Rat(1, 3));
    CHECK(edge_character_residue(amph2.graph, amph2.action, 0) == 2);
}

TEST_CASE("edge character is constant on edge orbits and symmetric in flags") {
    const auto t = fixtures::theta_m2();
    CHECK(edge_character(t.graph, t.action, 0) == edge_character(t.graph, t.action, 1));
    for (const auto& d : fixtures::all_valid())
        for (const auto& e : d.graph.edges()) {
            for (Id eid : edge_orbit(d.action, e.id))
                CHECK(edge_character(d.graph, d.action, eid) ==
                      edge_character(d.graph, d.action, e.id));
        }
}

TEST_CASE("validate_action accepts the identity action") {
    const auto s = fixtures::smooth_g2();
    CHECK(validate_action(s.graph, s.action).empty());
}

TEST_CASE("validate_action rejects a valency denominator not matching the stabilizer") {
    auto d = fixtures::two_components_m4();
    d.action.m = 2; // valency 1/4 now has denominator 4, stabilizer order 2
    const auto v = validate_action(d.graph, d.action);
    CHECK(!v.empty());
    bool found = false;
    for (const auto& viol : v)
        if (viol.message.find("denominator") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("validate_action rejects orbit-dependent valencies") {
    auto d = fixtures::amphidrome_loop_m2();
    d.action.flag_val[0] = Rat(1, 2); // partner flag keeps 0
    d.action.m = 2;
    const auto v = validate_action(d.graph, d.action);
    bool found = false;
    for (const auto& viol : v)
        if (viol.message.find("orbit") != std::string::npos ||
            viol.message.find("differs") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("validate_action rejects genus-violating sigma") {
    DegenerationType d{graph_with_auto_flags({{0, 1}, {1, 2}}, {{0, 0, 1}}), CyclicAction{}, 3,
                       {}, {}};
    d.action.m = 2;
    d.action.sigma.vertex_map = {{0, 1}, {1, 0}};
    d.action.sigma.edge_map = {{0, 0}};
    d.action.sigma.flag_map = {{0, 1}, {1, 0}};
    d.action.flag_val = {{0, Rat(0)}, {1, Rat(0)}};
    const auto v = validate_action(d.graph, d.action);
    bool found = false;
    for (const auto& viol : v)
        if (viol.message.find("genus") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("validate_action accepts every fixture") {
    for (const auto& d : fixtures::all_valid()) {
        const auto v = validate_action(d.graph, d.action);
        for (const auto& viol : v) MESSAGE(viol.str());
        CHECK(v.empty());
    }
}
