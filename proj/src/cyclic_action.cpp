#include "curvedeg/cyclic_action.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace curvedeg {

namespace {

Id map_at(const std::map<Id, Id>& m, Id x, const char* kind) {
    auto it = m.find(x);
    if (it == m.end())
        throw malformed_error(std::string("sigma has no image for ") + kind + " " +
                              std::to_string(x));
    return it->second;
}

std::vector<Id> orbit_of(const std::map<Id, Id>& m, Id x, const char* kind) {
    std::vector<Id> out{x};
    Id cur = map_at(m, x, kind);
    while (cur != x) {
        out.push_back(cur);
        if (out.size() > m.size())
            throw malformed_error(std::string("sigma is not a permutation on ") + kind + "s");
        cur = map_at(m, cur, kind);
    }
    return out;
}

std::int64_t stab_order(std::int64_t m, std::size_t orbit_len, const char* kind, Id x) {
    const auto len = static_cast<std::int64_t>(orbit_len);
    if (len == 0 || m % len != 0)
        throw std::invalid_argument(std::string(kind) + " " + std::to_string(x) +
                                    ": orbit length " + std::to_string(len) +
                                    " does not divide m=" + std::to_string(m));
    return m / len;
}

// b in [0, m) with a*b == 1 (mod m); -1 if gcd(a, m) != 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t t = 0, new_t = 1, r = m, new_r = a % m;
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) return -1;
    return ((t % m) + m) % m;
}

} // namespace

Id GraphAutomorphism::on_vertex(Id v) const { return map_at(vertex_map, v, "vertex"); }
Id GraphAutomorphism::on_edge(Id e) const { return map_at(edge_map, e, "edge"); }
Id GraphAutomorphism::on_flag(Id f) const { return map_at(flag_map, f, "flag"); }

Rat CyclicAction::val(Id flag) const {
    auto it = flag_val.find(flag);
    if (it == flag_val.end())
        throw malformed_error("no valency stored for flag " + std::to_string(flag));
    return it->second;
}

CyclicAction trivial_action(const StableGraph& g) {
    CyclicAction a;
    a.m = 1;
    for (const auto& v : g.vertices()) a.sigma.vertex_map[v.id] = v.id;
    for (const auto& e : g.edges()) a.sigma.edge_map[e.id] = e.id;
    for (const auto& f : g.flags()) {
        a.sigma.flag_map[f.id] = f.id;
        a.flag_val[f.id] = Rat(0);
    }
    return a;
}

std::vector<Id> vertex_orbit(const CyclicAction& a, Id v) {
    return orbit_of(a.sigma.vertex_map, v, "vertex");
}
std::vector<Id> edge_orbit(const CyclicAction& a, Id e) {
    return orbit_of(a.sigma.edge_map, e, "edge");
}
std::vector<Id> flag_orbit(const CyclicAction& a, Id f) {
    return orbit_of(a.sigma.flag_map, f, "flag");
}

std::int64_t vertex_stabilizer_order(const CyclicAction& a, Id v) {
    return stab_order(a.m, vertex_orbit(a, v).size(), "vertex", v);
}
std::int64_t edge_stabilizer_order(const CyclicAction& a, Id e) {
    return stab_order(a.m, edge_orbit(a, e).size(), "edge", e);
}
std::int64_t flag_stabilizer_order(const CyclicAction& a, Id f) {
    return stab_order(a.m, flag_orbit(a, f).size(), "flag", f);
}

bool is_amphidrome(const StableGraph& g, const CyclicAction& a, Id e) {
    const auto& rec = g.edge(e);
    const auto eolen = edge_orbit(a, e).size();
    const auto folen = flag_orbit(a, rec.flags[0]).size();
    if (folen == 2 * eolen) return true;
    if (folen == eolen) return false;
    throw inconsistency_error("edge " + std::to_string(e) +
                              ": flag orbit length is neither the edge orbit length nor twice it");
}

Rat valency_from_character(std::int64_t m_p, std::int64_t b) {
    if (m_p < 1) throw std::invalid_argument("stabilizer order must be positive");
    if (m_p == 1) return Rat(0);
    if (b <= 0 || b >= m_p)
        throw std::invalid_argument("character exponent " + std::to_string(b) +
                                    " out of range (0," + std::to_string(m_p) + ")");
    const std::int64_t a = inverse_mod(b, m_p);
    if (a < 0)
        throw std::invalid_argument("character exponent " + std::to_string(b) +
                                    " not coprime to " + std::to_string(m_p) +
                                    "; local representation must be injective");
    return Rat(a, m_p);
}

std::int64_t character_from_valency(const Rat& val) {
    if (val < Rat(0) || val >= Rat(1))
        throw std::invalid_argument("valency " + val.str() + " outside [0,1)");
    if (val.is_zero()) return 0;
    const std::int64_t b = inverse_mod(val.num(), val.den());
    if (b < 0)
        throw std::invalid_argument("valency " + val.str() + " not a reduced fraction");
    return b;
}

Rat edge_character(const StableGraph& g, const CyclicAction& a, Id e) {
    const auto& rec = g.edge(e);
    const std::int64_t m_e = edge_stabilizer_order(a, e);
    if (is_amphidrome(g, a, e)) {
        const std::int64_t m_f = flag_stabilizer_order(a, rec.flags[0]);
        if (m_f == 1) return Rat(0);
        const Rat v = a.val(rec.flags[0]);
        const std::int64_t b_f = character_from_valency(v);
        return Rat(b_f, m_f);
    }
    const Rat v1 = a.val(rec.flags[0]);
    const Rat v2 = a.val(rec.flags[1]);
    for (const Rat& v : {v1, v2}) {
        const std::int64_t d = v.is_zero() ? 1 : v.den();
        if (d != m_e)
            throw inconsistency_error("edge " + std::to_string(e) + ": flag valency " + v.str() +
                                      " does not live in the edge stabilizer of order " +
                                      std::to_string(m_e));
    }
    const std::int64_t b1 = character_from_valency(v1);
    const std::int64_t b2 = character_from_valency(v2);
    return Rat(b1 + b2, m_e).frac();
}

std::int64_t edge_character_residue(const StableGraph& g, const CyclicAction& a, Id e) {
    const std::int64_t m_e = edge_stabilizer_order(a, e);
    const Rat b_e = edge_character(g, a, e);
    return b_e.num() * (m_e / b_e.den());
}

Violations validate_action(const StableGraph& g, const CyclicAction& a) {
    Violations out;
    if (a.m < 1) {
        out.push_back({"action", "order m must be positive"});
        return out;
    }

    // The three maps must be bijections on exactly the graph's id sets.
    auto check_map = [&out](const std::map<Id, Id>& m, const std::set<Id>& ids,
                            const char* kind) {
        std::set<Id> images;
        for (Id id : ids) {
            auto it = m.find(id);
            if (it == m.end()) {
                out.push_back({std::string(kind) + " " + std::to_string(id), "no sigma image"});
                continue;
            }
            if (!ids.count(it->second))
                out.push_back({std::string(kind) + " " + std::to_string(id),
                               "sigma image " + std::to_string(it->second) + " is unknown"});
            else if (!images.insert(it->second).second)
                out.push_back({std::string(kind) + " " + std::to_string(id),
                               "sigma image " + std::to_string(it->second) + " repeated"});
        }
        for (const auto& [from, to] : m)
            if (!ids.count(from))
                out.push_back({std::string(kind) + " " + std::to_string(from),
                               "sigma defined on unknown id"});
    };
    std::set<Id> vids, eids, fids;
    for (const auto& v : g.vertices()) vids.insert(v.id);
    for (const auto& e : g.edges()) eids.insert(e.id);
    for (const auto& f : g.flags()) fids.insert(f.id);
    check_map(a.sigma.vertex_map, vids, "vertex");
    check_map(a.sigma.edge_map, eids, "edge");
    check_map(a.sigma.flag_map, fids, "flag");
    if (!out.empty()) return out; // incidence checks need total bijections

    // Incidence: sigma commutes with flag->vertex and flag->edge, and the
    // two flags of an edge map onto the two flags of the image edge.
    for (const auto& f : g.flags()) {
        const Id img = a.sigma.on_flag(f.id);
        const auto& frec = g.flag(img);
        if (frec.vertex != a.sigma.on_vertex(f.vertex))
            out.push_back({"flag " + std::to_string(f.id),
                           "sigma does not commute with the flag-to-vertex map"});
        if (frec.edge != a.sigma.on_edge(f.edge))
            out.push_back({"flag " + std::to_string(f.id),
                           "sigma does not commute with the flag-to-edge map"});
    }

    // Genus labels are preserved.
    for (const auto& v : g.vertices()) {
        const Id img = a.sigma.on_vertex(v.id);
        if (g.genus_of(img) != v.genus)
            out.push_back({"vertex " + std::to_string(v.id),
                           "genus not preserved: " + std::to_string(v.genus) + " -> " +
                               std::to_string(g.genus_of(img))});
    }

    // Orbit lengths must divide m (equivalently ord(sigma) | m).
    std::set<Id> visited;
    for (const auto& v : g.vertices()) {
        if (visited.count(v.id)) continue;
        const auto orb = vertex_orbit(a, v.id);
        visited.insert(orb.begin(), orb.end());
        if (a.m % static_cast<std::int64_t>(orb.size()) != 0)
            out.push_back({"vertex " + std::to_string(v.id),
                           "orbit length " + std::to_string(orb.size()) + " does not divide m=" +
                               std::to_string(a.m)});
    }
    visited.clear();
    for (const auto& e : g.edges()) {
        if (visited.count(e.id)) continue;
        const auto orb = edge_orbit(a, e.id);
        visited.insert(orb.begin(), orb.end());
        if (a.m % static_cast<std::int64_t>(orb.size()) != 0)
            out.push_back({"edge " + std::to_string(e.id),
                           "orbit length " + std::to_string(orb.size()) + " does not divide m=" +
                               std::to_string(a.m)});
    }

    // Per flag orbit: valency stored for every flag, constant along the
    // orbit, in [0,1), and reduced with denominator exactly the stabilizer
    // order (an injective local character forces both directions).
    visited.clear();
    for (const auto& f : g.flags()) {
        if (visited.count(f.id)) continue;
        const auto orb = flag_orbit(a, f.id);
        visited.insert(orb.begin(), orb.end());
        if (a.m % static_cast<std::int64_t>(orb.size()) != 0) {
            out.push_back({"flag " + std::to_string(f.id),
                           "orbit length " + std::to_string(orb.size()) + " does not divide m=" +
                               std::to_string(a.m)});
            continue;
        }
        const std::int64_t m_f = a.m / static_cast<std::int64_t>(orb.size());
        bool have_first = false;
        Rat first;
        for (Id fid : orb) {
            auto it = a.flag_val.find(fid);
            if (it == a.flag_val.end()) {
                out.push_back({"flag " + std::to_string(fid), "no valency stored"});
                continue;
            }
            const Rat v = it->second;
            if (!have_first) {
                first = v;
                have_first = true;
            } else if (v != first) {
                out.push_back({"flag " + std::to_string(fid),
                               "valency " + v.str() + " differs from " + first.str() +
                                   " on the same orbit"});
            }
            if (v < Rat(0) || v >= Rat(1)) {
                out.push_back({"flag " + std::to_string(fid),
                               "valency " + v.str() + " outside [0,1)"});
                continue;
            }
            if (m_f == 1) {
                if (!v.is_zero())
                    out.push_back({"flag " + std::to_string(fid),
                                   "trivial stabilizer forces valency 0, got " + v.str()});
            } else if (v.is_zero() || v.den() != m_f) {
                out.push_back({"flag " + std::to_string(fid),
                               "valency " + v.str() + ": denominator must equal the stabilizer order " +
                                   std::to_string(m_f)});
            }
        }
    }
    for (const auto& [fid, v] : a.flag_val) {
        (void)v;
        if (!fids.count(fid))
            out.push_back({"flag " + std::to_string(fid), "valency stored for unknown flag"});
    }
    return out;
}

} // namespace curvedeg
