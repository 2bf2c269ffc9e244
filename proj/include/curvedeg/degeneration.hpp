#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvedeg/cyclic_action.hpp"
#include "curvedeg/stable_graph.hpp"
#include "curvedeg/type_arith.hpp"

namespace curvedeg {

/// The complete combinatorial invariant of a minimal degeneration: stable
/// dual graph, order-m action with valencies, per-vertex smooth ramification
/// types and per-edge vanishing orders N of the smoothing parameters.
struct DegenerationType {
    StableGraph graph;
    CyclicAction action;
    std::int64_t genus = 0;              // declared total genus
    std::map<Id, RamType> vertex_ram;    // r_v per vertex, over m_v
    std::map<Id, std::int64_t> screw;    // N per edge; validation requires all edges

    std::int64_t m() const { return action.m; }
};

/// Runs every component check: graph validity, action validity, declared
/// genus, per-vertex-orbit realizedness of (g(v), m_v, r_v, tail valencies),
/// screw congruences N == m_e b_e (mod m_e), orbit constancy, and the global
/// order bookkeeping. Empty result means valid.
Violations validate_degeneration(const DegenerationType& d);

/// Exact screw number N / m_e of an edge.
Rat screw_number(const DegenerationType& d, Id edge);

/// Tail orbits of the stabilizer G(v) on the flags at v, sorted by valency.
TailOrbits vertex_tail_orbits(const StableGraph& g, const CyclicAction& a, Id v);

/// An id bijection between two degenerations (or a relabeling of one).
struct Isomorphism {
    std::map<Id, Id> vertex_map;
    std::map<Id, Id> edge_map;
    std::map<Id, Id> flag_map;
};

/// True iff `iso` is a genus-preserving graph isomorphism d1 -> d2 that
/// intertwines the distinguished generators and matches valencies, vertex
/// types and screw data.
bool is_isomorphism(const DegenerationType& d1, const DegenerationType& d2,
                    const Isomorphism& iso);

/// Decides deformation equivalence: equal order, equal genus, and an
/// isomorphism of the full data intertwining the generators. Exhaustive
/// backtracking over compatible assignments; returns a witness on success.
/// Both inputs must pass validate_degeneration (throws otherwise).
std::optional<Isomorphism> equivalent(const DegenerationType& d1, const DegenerationType& d2);

/// Relabels every id through the bijection (old id -> new id).
DegenerationType relabel(const DegenerationType& d, const Isomorphism& how);

/// Relabeling-invariant encoding: the minimum over all relabelings of a
/// deterministic serialization. Two validated degenerations are equivalent
/// iff their canonical forms are equal byte-for-byte.
std::string canonical_form(const DegenerationType& d);

} // namespace curvedeg
