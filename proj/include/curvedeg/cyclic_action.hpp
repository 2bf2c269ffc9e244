#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "curvedeg/rational.hpp"
#include "curvedeg/stable_graph.hpp"

namespace curvedeg {

/// Permutations of one graph's vertex/edge/flag ids. All three maps are
/// total; validate_action checks that they are bijections commuting with
/// incidence and preserving genus labels.
struct GraphAutomorphism {
    std::map<Id, Id> vertex_map;
    std::map<Id, Id> edge_map;
    std::map<Id, Id> flag_map;

    Id on_vertex(Id v) const;
    Id on_edge(Id e) const;
    Id on_flag(Id f) const;
};

/// An order-m cyclic action on a stable graph. `sigma` is the distinguished
/// generator (the image of e(1/m)); `flag_val` assigns every flag the valency
/// of its special point, 0 on flags with trivial stabilizer.
struct CyclicAction {
    std::int64_t m = 1;
    GraphAutomorphism sigma;
    std::map<Id, Rat> flag_val;

    Rat val(Id flag) const;
};

/// Identity action of order 1 on a graph, all valencies 0.
CyclicAction trivial_action(const StableGraph& g);

/// Orbit of an id under repeated application of one of sigma's maps, in
/// visiting order starting at the given id.
std::vector<Id> vertex_orbit(const CyclicAction& a, Id v);
std::vector<Id> edge_orbit(const CyclicAction& a, Id e);
std::vector<Id> flag_orbit(const CyclicAction& a, Id f);

/// Stabilizer order m / orbit-length; throws std::invalid_argument when the
/// orbit length does not divide m (inconsistent action).
std::int64_t vertex_stabilizer_order(const CyclicAction& a, Id v);
std::int64_t edge_stabilizer_order(const CyclicAction& a, Id e);
std::int64_t flag_stabilizer_order(const CyclicAction& a, Id f);

/// True iff some power of sigma fixes the edge while exchanging its flags,
/// i.e. the flag orbit through its flags is twice as long as the edge orbit.
bool is_amphidrome(const StableGraph& g, const CyclicAction& a, Id e);

/// Valency a/m_p from the local character exponent b (rho maps the canonical
/// generator to e(b/m_p)); a is the inverse of b mod m_p. m_p = 1 gives 0.
Rat valency_from_character(std::int64_t m_p, std::int64_t b);

/// Inverse of valency_from_character: the character exponent b with
/// a*b == 1 (mod m_p) for val = a/m_p in [0,1) reduced. val = 0 gives 0.
std::int64_t character_from_valency(const Rat& val);

/// Character b_e in [0,1) by which the edge-smoothing coordinate transforms
/// under the distinguished generator of the edge stabilizer. Non-amphidrome
/// edges: frac((b1+b2)/m_e) from the two flag characters. Amphidrome edges:
/// b_f/m_f (the square of the generator acts on either branch).
Rat edge_character(const StableGraph& g, const CyclicAction& a, Id e);

/// Integer residue m_e * b_e in [0, m_e): the congruence class every screw
/// datum N on this edge must lie in.
std::int64_t edge_character_residue(const StableGraph& g, const CyclicAction& a, Id e);

/// Checks that sigma is a genus-preserving automorphism whose order divides
/// m, that valencies are constant on orbits, and that each flag's valency is
/// the reduced fraction with denominator exactly its stabilizer order (0 iff
/// the stabilizer is trivial). Empty result means valid.
Violations validate_action(const StableGraph& g, const CyclicAction& a);

} // namespace curvedeg
