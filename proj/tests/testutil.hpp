#pragma once

// Shared fixtures: small validated degenerations exercising every kind of
// edge (none, non-amphidrome fixed, amphidrome with trivial and nontrivial
// flag stabilizers) and trivial and nontrivial graph actions.

#include <vector>

#include "curvedeg/degeneration.hpp"

namespace fixtures {

using namespace curvedeg;

/// Genus 2, m=2: one fixed vertex of genus 2, no nodes, r = 6[1/2].
inline DegenerationType hyperelliptic_limit() {
    DegenerationType d{graph_with_auto_flags({{0, 2}}, {}), CyclicAction{}, 2, {}, {}};
    d.action.m = 2;
    d.action.sigma.vertex_map[0] = 0;
    d.vertex_ram[0] = RamType::make(2, {{Rat(1, 2), 6}});
    return d;
}

/// Genus 2, m=1: smooth genus 2 curve.
inline DegenerationType smooth_g2() {
    DegenerationType d{graph_with_auto_flags({{0, 2}}, {}), CyclicAction{}, 2, {}, {}};
    d.action = trivial_action(d.graph);
    d.vertex_ram[0] = RamType::make(1, {});
    return d;
}

/// Genus 2, m=4: two fixed genus-1 components joined by one fixed
/// non-amphidrome node, flag valencies 1/4 and 1/4, r_v = [1/4, 1/2] each,
/// edge character residue 2, screw N = 2.
inline DegenerationType two_components_m4() {
    DegenerationType d{graph_with_auto_flags({{0, 1}, {1, 1}}, {{0, 0, 1}}), CyclicAction{}, 2,
                       {}, {}};
    d.action.m = 4;
    d.action.sigma.vertex_map = {{0, 0}, {1, 1}};
    d.action.sigma.edge_map = {{0, 0}};
    d.action.sigma.flag_map = {{0, 0}, {1, 1}};
    d.action.flag_val = {{0, Rat(1, 4)}, {1, Rat(1, 4)}};
    d.vertex_ram[0] = RamType::make(4, {{Rat(1, 4), 1}, {Rat(1, 2), 1}});
    d.vertex_ram[1] = d.vertex_ram[0];
    d.screw[0] = 2;
    return d;
}

/// Genus 2, m=6: one genus-1 component with an amphidrome loop, flag
/// valencies 2/3, r_v = [1/2, 5/6], chi residue 4, screw N = 10.
inline DegenerationType amphidrome_loop_m6() {
    DegenerationType d{graph_with_auto_flags({{0, 1}}, {{0, 0, 0}}), CyclicAction{}, 2, {}, {}};
    d.action.m = 6;
    d.action.sigma.vertex_map = {{0, 0}};
    d.action.sigma.edge_map = {{0, 0}};
    d.action.sigma.flag_map = {{0, 1}, {1, 0}};
    d.action.flag_val = {{0, Rat(2, 3)}, {1, Rat(2, 3)}};
    d.vertex_ram[0] = RamType::make(6, {{Rat(1, 2), 1}, {Rat(5, 6), 1}});
    d.screw[0] = 10;
    return d;
}

/// Genus 3, m=4: genus-2 component with an amphidrome loop of flag valency
/// 1/2 (nontrivial flag stabilizer), r_v = [1/4, 1/2, 3/4], chi residue 2,
/// screw N = 2.
inline DegenerationType amphidrome_loop_m4_g3() {
    DegenerationType d{graph_with_auto_flags({{0, 2}}, {{0, 0, 0}}), CyclicAction{}, 3, {}, {}};
    d.action.m = 4;
    d.action.sigma.vertex_map = {{0, 0}};
    d.action.sigma.edge_map = {{0, 0}};
    d.action.sigma.flag_map = {{0, 1}, {1, 0}};
    d.action.flag_val = {{0, Rat(1, 2)}, {1, Rat(1, 2)}};
    d.vertex_ram[0] = RamType::make(4, {{Rat(1, 4), 1}, {Rat(1, 2), 1}, {Rat(3, 4), 1}});
    d.screw[0] = 2;
    return d;
}

/// Genus 2, m=2: genus-1 component with an amphidrome loop whose flags have
/// trivial stabilizer (valency 0), r_v empty, screw N = 2.
inline DegenerationType amphidrome_loop_m2() {
    DegenerationType d{graph_with_auto_flags({{0, 1}}, {{0, 0, 0}}), CyclicAction{}, 2, {}, {}};
    d.action.m = 2;
    d.action.sigma.vertex_map = {{0, 0}};
    d.action.sigma.edge_map = {{0, 0}};
    d.action.sigma.flag_map = {{0, 1}, {1, 0}};
    d.action.flag_val = {{0, Rat(0)}, {1, Rat(0)}};
    d.vertex_ram[0] = RamType::make(2, {});
    d.screw[0] = 2;
    return d;
}

/// Genus 2, m=1: theta graph, two genus-0 components joined by three nodes.
inline DegenerationType theta_m1() {
    DegenerationType d{
        graph_with_auto_flags({{0, 0}, {1, 0}}, {{0, 0, 1}, {1, 0, 1}, {2, 0, 1}}),
        CyclicAction{}, 2, {}, {}};
    d.action = trivial_action(d.graph);
    d.vertex_ram[0] = RamType::make(1, {});
    d.vertex_ram[1] = d.vertex_ram[0];
    d.screw = {{0, 1}, {1, 1}, {2, 1}};
    return d;
}

/// Genus 2, m=2: two genus-0 components with three nodes (theta graph),
/// sigma swapping two of the edges and fixing the third (amphidromically
/// swapping its flags would change the vertices, so the fixed edge keeps its
/// flags and carries valencies 1/2).
inline DegenerationType theta_m2() {
    DegenerationType d{
        graph_with_auto_flags({{0, 0}, {1, 0}}, {{0, 0, 1}, {1, 0, 1}, {2, 0, 1}}),
        CyclicAction{}, 2, {}, {}};
    d.action.m = 2;
    d.action.sigma.vertex_map = {{0, 0}, {1, 1}};
    d.action.sigma.edge_map = {{0, 1}, {1, 0}, {2, 2}};
    d.action.sigma.flag_map = {{0, 2}, {2, 0}, {1, 3}, {3, 1}, {4, 4}, {5, 5}};
    d.action.flag_val = {{0, Rat(0)}, {1, Rat(0)}, {2, Rat(0)},
                         {3, Rat(0)}, {4, Rat(1, 2)}, {5, Rat(1, 2)}};
    d.vertex_ram[0] = RamType::make(2, {{Rat(1, 2), 1}});
    d.vertex_ram[1] = d.vertex_ram[0];
    d.screw = {{0, 3}, {1, 3}, {2, 2}};
    return d;
}

inline std::vector<DegenerationType> all_valid() {
    return {hyperelliptic_limit(), smooth_g2(),          two_components_m4(),
            amphidrome_loop_m6(),  amphidrome_loop_m4_g3(), amphidrome_loop_m2(),
            theta_m1(),            theta_m2()};
}

} // namespace fixtures
