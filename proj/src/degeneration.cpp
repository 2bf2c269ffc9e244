#include "curvedeg/degeneration.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "curvedeg/errors.hpp"

namespace curvedeg {

TailOrbits vertex_tail_orbits(const StableGraph& g, const CyclicAction& a, Id v) {
    const auto k_v = static_cast<std::int64_t>(vertex_orbit(a, v).size());
    const std::int64_t m_v = vertex_stabilizer_order(a, v);

    // sigma^{k_v} generates G(v); orbits of the flags at v under it.
    auto step = [&](Id f) {
        for (std::int64_t i = 0; i < k_v; ++i) f = a.sigma.on_flag(f);
        return f;
    };
    std::set<Id> remaining;
    for (Id f : g.tails(v)) remaining.insert(f);

    TailOrbits out;
    while (!remaining.empty()) {
        const Id start = *remaining.begin();
        std::int64_t len = 0;
        Id cur = start;
        do {
            if (!remaining.erase(cur))
                throw inconsistency_error("stabilizer orbit of flag " + std::to_string(start) +
                                          " leaves the tails of vertex " + std::to_string(v));
            ++len;
            cur = step(cur);
        } while (cur != start);
        if (m_v % len != 0)
            throw inconsistency_error("tail orbit length " + std::to_string(len) +
                                      " does not divide the stabilizer order " +
                                      std::to_string(m_v));
        out.push_back(TailOrbit::make(m_v / len, a.val(start)));
    }
    std::sort(out.begin(), out.end(), [](const TailOrbit& x, const TailOrbit& y) {
        if (x.val != y.val) return x.val < y.val;
        return x.stab_order < y.stab_order;
    });
    return out;
}

Violations validate_degeneration(const DegenerationType& d) {
    Violations out = validate_graph(d.graph);
    {
        Violations av = validate_action(d.graph, d.action);
        out.insert(out.end(), av.begin(), av.end());
    }
    if (!out.empty()) return out; // later checks assume a valid graph+action

    if (total_genus(d.graph) != d.genus)
        out.push_back({"graph", "total genus " + std::to_string(total_genus(d.graph)) +
                                    " differs from declared genus " + std::to_string(d.genus)});

    // Per-vertex smooth ramification: present everywhere, entries nonzero
    // with denominators dividing m_v, constant on orbits, and the induced
    // pair realized on one representative per orbit.
    std::set<Id> seen;
    for (const auto& v : d.graph.vertices()) {
        if (seen.count(v.id)) continue;
        const auto orb = vertex_orbit(d.action, v.id);
        seen.insert(orb.begin(), orb.end());
        const std::int64_t m_v = vertex_stabilizer_order(d.action, v.id);

        const RamType* rep = nullptr;
        for (Id w : orb) {
            auto it = d.vertex_ram.find(w);
            if (it == d.vertex_ram.end()) {
                out.push_back({"vertex " + std::to_string(w), "no smooth ramification record"});
                continue;
            }
            const RamType& r = it->second;
            if (r.m != m_v) {
                out.push_back({"vertex " + std::to_string(w),
                               "ramification type over m=" + std::to_string(r.m) +
                                   " but the stabilizer order is " + std::to_string(m_v)});
                continue;
            }
            bool entries_ok = true;
            for (const auto& e : r.entries) {
                if (e.alpha.is_zero()) {
                    out.push_back({"vertex " + std::to_string(w),
                                   "smooth ramification entry 0 has a trivial stabilizer"});
                    entries_ok = false;
                }
            }
            if (!entries_ok) continue;
            if (!rep) {
                rep = &r;
            } else if (!(r == *rep)) {
                out.push_back({"vertex " + std::to_string(w),
                               "ramification type differs along the orbit of vertex " +
                                   std::to_string(v.id)});
            }
        }
        if (!rep) continue;

        TailOrbits tails;
        try {
            tails = vertex_tail_orbits(d.graph, d.action, v.id);
        } catch (const std::exception& ex) {
            out.push_back({"vertex " + std::to_string(v.id), ex.what()});
            continue;
        }
        const auto check = is_realized(v.genus, m_v, *rep, tails);
        if (!check.ok)
            out.push_back({"vertex " + std::to_string(v.id),
                           "component pair not realized (condition " +
                               std::to_string(check.failed_condition) + "): " + check.detail});
    }

    // Screw data: one positive N per edge, constant on orbits, congruent to
    // the edge character residue.
    seen.clear();
    for (const auto& e : d.graph.edges()) {
        if (seen.count(e.id)) continue;
        const auto orb = edge_orbit(d.action, e.id);
        seen.insert(orb.begin(), orb.end());
        const std::int64_t m_e = edge_stabilizer_order(d.action, e.id);
        const std::int64_t residue = edge_character_residue(d.graph, d.action, e.id);

        bool have_first = false;
        std::int64_t first = 0;
        for (Id eid : orb) {
            auto it = d.screw.find(eid);
            if (it == d.screw.end()) {
                out.push_back({"edge " + std::to_string(eid), "no screw datum"});
                continue;
            }
            const std::int64_t N = it->second;
            if (N < 1) {
                out.push_back({"edge " + std::to_string(eid),
                               "screw datum N=" + std::to_string(N) + " must be >= 1"});
                continue;
            }
            if ((N - residue) % m_e != 0)
                out.push_back({"edge " + std::to_string(eid),
                               "screw congruence: N=" + std::to_string(N) + " != " +
                                   std::to_string(residue) + " (mod " + std::to_string(m_e) +
                                   ")"});
            if (!have_first) {
                first = N;
                have_first = true;
            } else if (N != first) {
                out.push_back({"edge " + std::to_string(eid),
                               "screw datum differs along the orbit of edge " +
                                   std::to_string(e.id)});
            }
        }
    }
    for (const auto& [eid, N] : d.screw) {
        (void)N;
        if (!d.graph.has_edge(eid))
            out.push_back({"edge " + std::to_string(eid), "screw datum for unknown edge"});
    }
    for (const auto& [vid, r] : d.vertex_ram) {
        (void)r;
        if (!d.graph.has_vertex(vid))
            out.push_back({"vertex " + std::to_string(vid),
                           "smooth ramification record for unknown vertex"});
    }

    // Global order bookkeeping: every orbit certifies order
    // (orbit length) * (stabilizer order); their lcm must be exactly m.
    std::int64_t cert = 1;
    seen.clear();
    for (const auto& v : d.graph.vertices()) {
        if (seen.count(v.id)) continue;
        const auto orb = vertex_orbit(d.action, v.id);
        seen.insert(orb.begin(), orb.end());
        cert = std::lcm(cert, static_cast<std::int64_t>(orb.size()) *
                                  vertex_stabilizer_order(d.action, v.id));
    }
    seen.clear();
    for (const auto& e : d.graph.edges()) {
        if (seen.count(e.id)) continue;
        const auto orb = edge_orbit(d.action, e.id);
        seen.insert(orb.begin(), orb.end());
        cert = std::lcm(cert, static_cast<std::int64_t>(orb.size()) *
                                  edge_stabilizer_order(d.action, e.id));
    }
    if (cert != d.m())
        out.push_back({"action", "orbit data certifies order " + std::to_string(cert) +
                                     ", declared m=" + std::to_string(d.m())});
    return out;
}

Rat screw_number(const DegenerationType& d, Id edge) {
    auto it = d.screw.find(edge);
    if (it == d.screw.end())
        throw malformed_error("no screw datum for edge " + std::to_string(edge));
    return Rat(it->second, edge_stabilizer_order(d.action, edge));
}

namespace {

Id mapped(const std::map<Id, Id>& m, Id x) {
    auto it = m.find(x);
    if (it == m.end()) throw malformed_error("relabeling misses id " + std::to_string(x));
    return it->second;
}

} // namespace

bool is_isomorphism(const DegenerationType& d1, const DegenerationType& d2,
                    const Isomorphism& iso) {
    try {
        if (d1.m() != d2.m() || d1.genus != d2.genus) return false;
        if (d1.graph.vertices().size() != d2.graph.vertices().size() ||
            d1.graph.edges().size() != d2.graph.edges().size())
            return false;

        // Bijectivity onto d2's id sets.
        std::set<Id> vimg, eimg, fimg;
        for (const auto& v : d1.graph.vertices()) {
            const Id w = mapped(iso.vertex_map, v.id);
            if (!d2.graph.has_vertex(w) || !vimg.insert(w).second) return false;
            if (d2.graph.genus_of(w) != v.genus) return false;
        }
        for (const auto& e : d1.graph.edges()) {
            const Id w = mapped(iso.edge_map, e.id);
            if (!d2.graph.has_edge(w) || !eimg.insert(w).second) return false;
        }
        for (const auto& f : d1.graph.flags()) {
            const Id w = mapped(iso.flag_map, f.id);
            if (!d2.graph.has_flag(w) || !fimg.insert(w).second) return false;
            // Incidence.
            const auto& rec = d2.graph.flag(w);
            if (rec.vertex != mapped(iso.vertex_map, f.vertex)) return false;
            if (rec.edge != mapped(iso.edge_map, f.edge)) return false;
            // Valency match.
            if (d2.action.val(w) != d1.action.val(f.id)) return false;
            // Intertwining on flags.
            if (mapped(iso.flag_map, d1.action.sigma.on_flag(f.id)) !=
                d2.action.sigma.on_flag(w))
                return false;
        }
        for (const auto& v : d1.graph.vertices())
            if (mapped(iso.vertex_map, d1.action.sigma.on_vertex(v.id)) !=
                d2.action.sigma.on_vertex(mapped(iso.vertex_map, v.id)))
                return false;
        for (const auto& e : d1.graph.edges())
            if (mapped(iso.edge_map, d1.action.sigma.on_edge(e.id)) !=
                d2.action.sigma.on_edge(mapped(iso.edge_map, e.id)))
                return false;

        // Vertex types and screw data.
        for (const auto& [vid, r] : d1.vertex_ram) {
            auto it = d2.vertex_ram.find(mapped(iso.vertex_map, vid));
            if (it == d2.vertex_ram.end() || !(it->second == r)) return false;
        }
        if (d1.vertex_ram.size() != d2.vertex_ram.size()) return false;
        for (const auto& [eid, N] : d1.screw) {
            auto it = d2.screw.find(mapped(iso.edge_map, eid));
            if (it == d2.screw.end() || it->second != N) return false;
        }
        if (d1.screw.size() != d2.screw.size()) return false;
        return true;
    } catch (const malformed_error&) {
        return false;
    }
}

namespace {

struct VertexKey {
    std::int64_t genus;
    std::int64_t tails;
    std::int64_t orbit_len;
    std::string ram;
    friend bool operator==(const VertexKey&, const VertexKey&) = default;
};

VertexKey vertex_key(const DegenerationType& d, Id v) {
    VertexKey k;
    k.genus = d.graph.genus_of(v);
    k.tails = d.graph.t(v);
    k.orbit_len = static_cast<std::int64_t>(vertex_orbit(d.action, v).size());
    auto it = d.vertex_ram.find(v);
    k.ram = it == d.vertex_ram.end() ? "-" : it->second.str();
    return k;
}

// Backtracking over vertex assignments with sigma propagation, then over
// edge/flag matchings with full verification.
struct IsoSearch {
    const DegenerationType& d1;
    const DegenerationType& d2;
    std::vector<Id> v1;                       // d1 vertex ids in order
    std::map<Id, Id> vmap;                    // partial d1 -> d2
    std::set<Id> used;
    std::optional<Isomorphism> found;

    IsoSearch(const DegenerationType& a, const DegenerationType& b) : d1(a), d2(b) {
        for (const auto& v : d1.graph.vertices()) v1.push_back(v.id);
    }

    // Forces the sigma-orbit of from -> to; false on conflict.
    bool assign(Id from, Id to, std::vector<Id>* added) {
        Id cf = from, ct = to;
        while (true) {
            auto it = vmap.find(cf);
            if (it != vmap.end()) {
                if (it->second != ct) return false;
            } else {
                if (used.count(ct)) return false;
                if (!(vertex_key(d1, cf) == vertex_key(d2, ct))) return false;
                vmap[cf] = ct;
                used.insert(ct);
                added->push_back(cf);
            }
            cf = d1.action.sigma.on_vertex(cf);
            ct = d2.action.sigma.on_vertex(ct);
            if (cf == from) return ct == to;
        }
    }

    void undo(const std::vector<Id>& added) {
        for (Id f : added) {
            used.erase(vmap.at(f));
            vmap.erase(f);
        }
    }

    void search(std::size_t idx) {
        if (found) return;
        while (idx < v1.size() && vmap.count(v1[idx])) ++idx;
        if (idx == v1.size()) {
            match_edges();
            return;
        }
        const Id from = v1[idx];
        for (const auto& w : d2.graph.vertices()) {
            if (used.count(w.id)) continue;
            std::vector<Id> added;
            if (assign(from, w.id, &added)) search(idx + 1);
            undo(added);
            if (found) return;
        }
    }

    // With the vertex bijection fixed, enumerate edge matchings within
    // endpoint classes and flag orientations, verifying everything.
    void match_edges() {
        using Pair = std::pair<Id, Id>; // unordered endpoint pair, sorted
        auto endpoint_pair = [](const DegenerationType& d, Id e,
                                const std::map<Id, Id>* through) {
            const auto& rec = d.graph.edge(e);
            Id a = d.graph.flag(rec.flags[0]).vertex;
            Id b = d.graph.flag(rec.flags[1]).vertex;
            if (through) {
                a = through->at(a);
                b = through->at(b);
            }
            return a <= b ? Pair{a, b} : Pair{b, a};
        };

        std::map<Pair, std::vector<Id>> groups1, groups2;
        for (const auto& e : d1.graph.edges())
            groups1[endpoint_pair(d1, e.id, &vmap)].push_back(e.id);
        for (const auto& e : d2.graph.edges())
            groups2[endpoint_pair(d2, e.id, nullptr)].push_back(e.id);
        if (groups1.size() != groups2.size()) return;
        for (const auto& [key, es] : groups1) {
            auto it = groups2.find(key);
            if (it == groups2.end() || it->second.size() != es.size()) return;
        }

        std::vector<std::pair<std::vector<Id>, std::vector<Id>>> groups;
        for (auto& [key, es] : groups1) groups.push_back({es, groups2.at(key)});

        std::map<Id, Id> emap;
        try_group(0, groups, emap);
    }

    void try_group(std::size_t gi,
                   std::vector<std::pair<std::vector<Id>, std::vector<Id>>>& groups,
                   std::map<Id, Id>& emap) {
        if (found) return;
        if (gi == groups.size()) {
            try_flags(emap);
            return;
        }
        auto& [from, to] = groups[gi];
        std::sort(to.begin(), to.end());
        do {
            for (std::size_t i = 0; i < from.size(); ++i) emap[from[i]] = to[i];
            try_group(gi + 1, groups, emap);
            for (Id e : from) emap.erase(e);
            if (found) return;
        } while (std::next_permutation(to.begin(), to.end()));
    }

    void try_flags(const std::map<Id, Id>& emap) {
        // Per edge, two possible flag pairings; collect the choices and
        // verify the complete candidate.
        std::vector<Id> edge_ids;
        for (const auto& e : d1.graph.edges()) edge_ids.push_back(e.id);
        std::map<Id, Id> fmap;
        enumerate_flags(0, edge_ids, emap, fmap);
    }

    void enumerate_flags(std::size_t ei, const std::vector<Id>& edge_ids,
                         const std::map<Id, Id>& emap, std::map<Id, Id>& fmap) {
        if (found) return;
        if (ei == edge_ids.size()) {
            Isomorphism iso{vmap, emap, fmap};
            if (is_isomorphism(d1, d2, iso)) found = iso;
            return;
        }
        const auto& e1 = d1.graph.edge(edge_ids[ei]);
        const auto& e2 = d2.graph.edge(emap.at(edge_ids[ei]));
        for (int orient = 0; orient < 2; ++orient) {
            const Id t0 = e2.flags[orient];
            const Id t1 = e2.flags[1 - orient];
            if (d2.graph.flag(t0).vertex != vmap.at(d1.graph.flag(e1.flags[0]).vertex) ||
                d2.graph.flag(t1).vertex != vmap.at(d1.graph.flag(e1.flags[1]).vertex))
                continue;
            fmap[e1.flags[0]] = t0;
            fmap[e1.flags[1]] = t1;
            enumerate_flags(ei + 1, edge_ids, emap, fmap);
            fmap.erase(e1.flags[0]);
            fmap.erase(e1.flags[1]);
            if (found) return;
        }
    }
};

} // namespace

std::optional<Isomorphism> equivalent(const DegenerationType& d1, const DegenerationType& d2) {
    for (const auto* d : {&d1, &d2}) {
        const auto v = validate_degeneration(*d);
        if (!v.empty())
            throw std::invalid_argument("equivalent: input is not a valid degeneration: " +
                                        v.front().str());
    }
    if (d1.m() != d2.m() || d1.genus != d2.genus) return std::nullopt;
    if (d1.graph.vertices().size() != d2.graph.vertices().size() ||
        d1.graph.edges().size() != d2.graph.edges().size())
        return std::nullopt;

    IsoSearch search(d1, d2);
    search.search(0);
    return search.found;
}

DegenerationType relabel(const DegenerationType& d, const Isomorphism& how) {
    std::vector<VertexRec> verts;
    for (const auto& v : d.graph.vertices())
        verts.push_back({mapped(how.vertex_map, v.id), v.genus});
    std::vector<EdgeSpec> edges;
    for (const auto& e : d.graph.edges()) {
        EdgeSpec spec;
        spec.id = mapped(how.edge_map, e.id);
        for (int i = 0; i < 2; ++i) {
            const auto& f = d.graph.flag(e.flags[i]);
            spec.flags[i] = {mapped(how.flag_map, f.id), mapped(how.vertex_map, f.vertex)};
        }
        edges.push_back(spec);
    }

    DegenerationType out{StableGraph(verts, edges), CyclicAction{}, d.genus, {}, {}};
    out.action.m = d.action.m;
    for (const auto& [from, to] : d.action.sigma.vertex_map)
        out.action.sigma.vertex_map[mapped(how.vertex_map, from)] = mapped(how.vertex_map, to);
    for (const auto& [from, to] : d.action.sigma.edge_map)
        out.action.sigma.edge_map[mapped(how.edge_map, from)] = mapped(how.edge_map, to);
    for (const auto& [from, to] : d.action.sigma.flag_map)
        out.action.sigma.flag_map[mapped(how.flag_map, from)] = mapped(how.flag_map, to);
    for (const auto& [f, v] : d.action.flag_val)
        out.action.flag_val[mapped(how.flag_map, f)] = v;
    for (const auto& [vid, r] : d.vertex_ram) out.vertex_ram[mapped(how.vertex_map, vid)] = r;
    for (const auto& [eid, N] : d.screw) out.screw[mapped(how.edge_map, eid)] = N;
    return out;
}

namespace {

/// Deterministic encoding of a degeneration whose ids are already
/// contiguous: vertices 0..nv-1, edges 0..ne-1, flags (2e, 2e+1).
std::string encode_contiguous(const DegenerationType& d) {
    std::string s;
    s += "m=" + std::to_string(d.m()) + ";g=" + std::to_string(d.genus) + "\n";
    const auto nv = static_cast<Id>(d.graph.vertices().size());
    const auto ne = static_cast<Id>(d.graph.edges().size());
    s += "v:";
    for (Id v = 0; v < nv; ++v) s += " " + std::to_string(d.graph.genus_of(v));
    s += "\nr:";
    for (Id v = 0; v < nv; ++v) {
        auto it = d.vertex_ram.find(v);
        s += " " + (it == d.vertex_ram.end() ? std::string("-") : it->second.str());
    }
    s += "\ne:";
    for (Id e = 0; e < ne; ++e) {
        s += " (" + std::to_string(d.graph.flag(2 * e).vertex) + "," +
             std::to_string(d.graph.flag(2 * e + 1).vertex) + ")";
    }
    s += "\nn:";
    for (Id e = 0; e < ne; ++e) {
        auto it = d.screw.find(e);
        s += " " + (it == d.screw.end() ? std::string("-") : std::to_string(it->second));
    }
    s += "\nfv:";
    for (Id f = 0; f < 2 * ne; ++f) s += " " + d.action.val(f).str();
    s += "\nsv:";
    for (Id v = 0; v < nv; ++v) s += " " + std::to_string(d.action.sigma.on_vertex(v));
    s += "\nse:";
    for (Id e = 0; e < ne; ++e) s += " " + std::to_string(d.action.sigma.on_edge(e));
    s += "\nsf:";
    for (Id f = 0; f < 2 * ne; ++f) s += " " + std::to_string(d.action.sigma.on_flag(f));
    s += "\n";
    return s;
}

} // namespace

std::string canonical_form(const DegenerationType& d) {
    const auto nv = d.graph.vertices().size();
    const auto ne = d.graph.edges().size();
    double cost = 1;
    for (std::size_t i = 2; i <= nv; ++i) cost *= static_cast<double>(i);
    for (std::size_t i = 2; i <= ne; ++i) cost *= static_cast<double>(i);
    for (std::size_t i = 0; i < ne; ++i) cost *= 2;
    if (cost > 1e7)
        throw std::invalid_argument("degeneration too large for canonical form search");

    std::vector<Id> vids, eids;
    for (const auto& v : d.graph.vertices()) vids.push_back(v.id);
    for (const auto& e : d.graph.edges()) eids.push_back(e.id);
    std::sort(vids.begin(), vids.end());
    std::sort(eids.begin(), eids.end());

    std::string best;
    std::vector<Id> vperm = vids;
    do {
        std::vector<Id> eperm = eids;
        do {
            for (std::uint64_t orient = 0; orient < (std::uint64_t{1} << ne); ++orient) {
                Isomorphism how;
                for (std::size_t i = 0; i < nv; ++i) how.vertex_map[vperm[i]] = static_cast<Id>(i);
                for (std::size_t i = 0; i < ne; ++i) {
                    how.edge_map[eperm[i]] = static_cast<Id>(i);
                    const auto& rec = d.graph.edge(eperm[i]);
                    const bool swap = (orient >> i) & 1;
                    how.flag_map[rec.flags[swap ? 1 : 0]] = static_cast<Id>(2 * i);
                    how.flag_map[rec.flags[swap ? 0 : 1]] = static_cast<Id>(2 * i + 1);
                }
                const std::string enc = encode_contiguous(relabel(d, how));
                if (best.empty() || enc < best) best = enc;
            }
        } while (std::next_permutation(eperm.begin(), eperm.end()));
    } while (std::next_permutation(vperm.begin(), vperm.end()));
    return best;
}

} // namespace curvedeg
