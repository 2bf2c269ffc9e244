#include "curvedeg/stable_graph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace curvedeg {

namespace {

template <typename Rec>
const Rec* find_by_id(const std::vector<Rec>& recs, Id id) {
    for (const auto& r : recs)
        if (r.id == id) return &r;
    return nullptr;
}

} // namespace

StableGraph::StableGraph(std::vector<VertexRec> vertices, const std::vector<EdgeSpec>& edges)
    : vertices_(std::move(vertices)) {
    std::set<Id> vseen;
    for (const auto& v : vertices_) {
        if (v.genus < 0)
            throw malformed_error("vertex " + std::to_string(v.id) + ": negative genus");
        if (!vseen.insert(v.id).second)
            throw malformed_error("duplicate vertex id " + std::to_string(v.id));
    }
    std::set<Id> eseen, fseen;
    for (const auto& e : edges) {
        if (!eseen.insert(e.id).second)
            throw malformed_error("duplicate edge id " + std::to_string(e.id));
        EdgeRec rec{e.id, {e.flags[0].first, e.flags[1].first}};
        for (const auto& [fid, vid] : e.flags) {
            if (!fseen.insert(fid).second)
                throw malformed_error("duplicate flag id " + std::to_string(fid));
            if (!vseen.count(vid))
                throw malformed_error("flag " + std::to_string(fid) + ": unknown vertex " +
                                      std::to_string(vid));
            flags_.push_back(FlagRec{fid, vid, e.id});
        }
        edges_.push_back(rec);
    }
}

bool StableGraph::has_vertex(Id v) const { return find_by_id(vertices_, v) != nullptr; }
bool StableGraph::has_edge(Id e) const { return find_by_id(edges_, e) != nullptr; }
bool StableGraph::has_flag(Id f) const { return find_by_id(flags_, f) != nullptr; }

const VertexRec& StableGraph::vertex(Id v) const {
    const auto* r = find_by_id(vertices_, v);
    if (!r) throw malformed_error("unknown vertex id " + std::to_string(v));
    return *r;
}

const EdgeRec& StableGraph::edge(Id e) const {
    const auto* r = find_by_id(edges_, e);
    if (!r) throw malformed_error("unknown edge id " + std::to_string(e));
    return *r;
}

const FlagRec& StableGraph::flag(Id f) const {
    const auto* r = find_by_id(flags_, f);
    if (!r) throw malformed_error("unknown flag id " + std::to_string(f));
    return *r;
}

std::vector<Id> StableGraph::tails(Id v) const {
    vertex(v); // id check
    std::vector<Id> out;
    for (const auto& f : flags_)
        if (f.vertex == v) out.push_back(f.id);
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t StableGraph::t(Id v) const { return static_cast<std::int64_t>(tails(v).size()); }

Violations validate_graph(const StableGraph& g) {
    Violations out;
    if (g.vertices().empty()) {
        out.push_back({"graph", "no vertices"});
        return out;
    }

    // Connectivity over the vertex set.
    std::map<Id, std::set<Id>> adj;
    for (const auto& v : g.vertices()) adj[v.id];
    for (const auto& e : g.edges()) {
        const Id a = g.flag(e.flags[0]).vertex;
        const Id b = g.flag(e.flags[1]).vertex;
        adj[a].insert(b);
        adj[b].insert(a);
    }
    std::set<Id> seen;
    std::vector<Id> stack{g.vertices().front().id};
    while (!stack.empty()) {
        const Id v = stack.back();
        stack.pop_back();
        if (!seen.insert(v).second) continue;
        for (Id w : adj[v])
            if (!seen.count(w)) stack.push_back(w);
    }
    for (const auto& v : g.vertices())
        if (!seen.count(v.id))
            out.push_back({"vertex " + std::to_string(v.id), "graph is not connected"});

    for (const auto& v : g.vertices()) {
        if (v.genus == 0 && g.t(v.id) < 3)
            out.push_back({"vertex " + std::to_string(v.id),
                           "stability: genus 0 with t(v)=" + std::to_string(g.t(v.id)) + " < 3"});
    }
    return out;
}

std::int64_t betti1(const StableGraph& g) {
    return static_cast<std::int64_t>(g.edges().size()) -
           static_cast<std::int64_t>(g.vertices().size()) + 1;
}

std::int64_t total_genus(const StableGraph& g) {
    std::int64_t sum = 0;
    for (const auto& v : g.vertices()) sum += v.genus;
    return sum + betti1(g);
}

StableGraph graph_with_auto_flags(const std::vector<VertexRec>& vertices,
                                  const std::vector<std::tuple<Id, Id, Id>>& edges) {
    std::vector<EdgeSpec> specs;
    Id next_flag = 0;
    for (const auto& [eid, a, b] : edges) {
        specs.push_back(EdgeSpec{eid, {{{next_flag, a}, {next_flag + 1, b}}}});
        next_flag += 2;
    }
    return StableGraph(vertices, specs);
}

} // namespace curvedeg
