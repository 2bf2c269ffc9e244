#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "curvedeg/errors.hpp"

namespace curvedeg {

using Id = std::int64_t;

struct Violation {
    std::string where;
    std::string message;
    std::string str() const { return where + ": " + message; }
};
using Violations = std::vector<Violation>;

struct VertexRec {
    Id id;
    std::int64_t genus;
};

struct FlagRec {
    Id id;
    Id vertex;
    Id edge;
};

struct EdgeRec {
    Id id;
    std::array<Id, 2> flags;
};

/// One edge as supplied to the constructor: an id plus its two half-edges,
/// each given as (flag id, vertex id).
struct EdgeSpec {
    Id id;
    std::array<std::pair<Id, Id>, 2> flags;
};

/// Dual graph of a nodal curve. Vertices carry the genus of the normalized
/// component, edges are the nodes, and every edge owns exactly two flags
/// (half-edges); a loop edge has both flags on one vertex.
///
/// Construction resolves all id cross-references and throws malformed_error
/// on duplicates or dangling ids. Semantic invariants (connectivity,
/// stability) are checked separately by validate_graph. Immutable once
/// built; safe to share across threads read-only.
class StableGraph {
public:
    StableGraph(std::vector<VertexRec> vertices, const std::vector<EdgeSpec>& edges);

    const std::vector<VertexRec>& vertices() const { return vertices_; }
    const std::vector<EdgeRec>& edges() const { return edges_; }
    const std::vector<FlagRec>& flags() const { return flags_; }

    bool has_vertex(Id v) const;
    bool has_edge(Id e) const;
    bool has_flag(Id f) const;

    const VertexRec& vertex(Id v) const;
    const EdgeRec& edge(Id e) const;
    const FlagRec& flag(Id f) const;

    std::int64_t genus_of(Id v) const { return vertex(v).genus; }

    /// Flags attached to a vertex, ascending by flag id.
    std::vector<Id> tails(Id v) const;
    std::int64_t t(Id v) const;

private:
    std::vector<VertexRec> vertices_;
    std::vector<EdgeRec> edges_;
    std::vector<FlagRec> flags_;
};

/// Checks connectivity and stability (genus-0 vertices need t(v) >= 3, a loop
/// counting twice). Empty result means valid.
Violations validate_graph(const StableGraph& g);

/// First Betti number #E - #V + 1. Meaningful on validated (connected) graphs.
std::int64_t betti1(const StableGraph& g);

/// Arithmetic genus: sum of vertex genera plus betti1.
std::int64_t total_genus(const StableGraph& g);

/// Convenience constructor: edges given as (edge id, vertex, vertex), flag
/// ids assigned as 2*edge_index and 2*edge_index+1.
StableGraph graph_with_auto_flags(const std::vector<VertexRec>& vertices,
                                  const std::vector<std::tuple<Id, Id, Id>>& edges);

} // namespace curvedeg
