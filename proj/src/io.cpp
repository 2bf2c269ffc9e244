#include "curvedeg/io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "curvedeg/errors.hpp"
#include "curvedeg/resolution.hpp"

namespace curvedeg {

namespace {

using json = nlohmann::ordered_json;

constexpr std::int64_t kFormatVersion = 1;

void expect_keys(const json& obj, const std::string& where,
                 const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw parse_error(where, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key)) throw parse_error(where, "unknown field '" + key + "'");
    }
}

std::int64_t get_int(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) throw parse_error(where, "missing field '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw parse_error(where + "." + key, "expected an integer");
    return v.get<std::int64_t>();
}

const json& get_array(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) throw parse_error(where, "missing field '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_array()) throw parse_error(where + "." + key, "expected an array");
    return v;
}

/// Reduced rational in [0,1) given as numerator/denominator fields.
Rat get_valency(const json& obj, const std::string& where) {
    const std::int64_t num = get_int(obj, where, "numerator");
    const std::int64_t den = get_int(obj, where, "denominator");
    if (den < 1) throw parse_error(where, "denominator must be positive");
    if (num < 0 || num >= den) throw parse_error(where, "rational must lie in [0,1)");
    if (std::gcd(num, den) != 1) throw parse_error(where, "rational must be reduced");
    return Rat(num, den);
}

std::map<Id, Id> parse_map(const json& arr, const std::string& where) {
    std::map<Id, Id> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& item = arr[i];
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
            !item[1].is_number_integer())
            throw parse_error(at, "expected a [from, to] integer pair");
        const Id from = item[0].get<Id>();
        if (out.count(from)) throw parse_error(at, "duplicate source id " + std::to_string(from));
        out[from] = item[1].get<Id>();
    }
    return out;
}

} // namespace

DegenerationType parse_degeneration(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error("document", std::string("invalid JSON: ") + e.what());
    }
    expect_keys(doc, "document",
                {"format_version", "genus", "order_m", "vertices", "edges", "sigma",
                 "flag_valencies", "vertex_smooth_ram", "screw"});

    const std::int64_t version = get_int(doc, "document", "format_version");
    if (version != kFormatVersion)
        throw parse_error("format_version", "unsupported version " + std::to_string(version) +
                                                " (expected " + std::to_string(kFormatVersion) +
                                                ")");
    const std::int64_t genus = get_int(doc, "document", "genus");
    const std::int64_t order_m = get_int(doc, "document", "order_m");
    if (order_m < 1) throw parse_error("order_m", "order must be positive");

    std::vector<VertexRec> verts;
    {
        const auto& arr = get_array(doc, "document", "vertices");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "vertices[" + std::to_string(i) + "]";
            expect_keys(arr[i], where, {"id", "genus"});
            const std::int64_t vg = get_int(arr[i], where, "genus");
            if (vg < 0) throw parse_error(where, "genus must be non-negative");
            verts.push_back({get_int(arr[i], where, "id"), vg});
        }
    }

    std::vector<EdgeSpec> edges;
    {
        const auto& arr = get_array(doc, "document", "edges");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "edges[" + std::to_string(i) + "]";
            expect_keys(arr[i], where, {"id", "flags"});
            EdgeSpec spec;
            spec.id = get_int(arr[i], where, "id");
            const auto& flags = get_array(arr[i], where, "flags");
            if (flags.size() != 2) throw parse_error(where + ".flags", "an edge has exactly two flags");
            for (int k = 0; k < 2; ++k) {
                const std::string fw = where + ".flags[" + std::to_string(k) + "]";
                expect_keys(flags[k], fw, {"id", "vertex"});
                spec.flags[k] = {get_int(flags[k], fw, "id"), get_int(flags[k], fw, "vertex")};
            }
            edges.push_back(spec);
        }
    }

    DegenerationType d{[&]() {
                           try {
                               return StableGraph(verts, edges);
                           } catch (const malformed_error& e) {
                               throw parse_error("document", e.what());
                           }
                       }(),
                       CyclicAction{}, genus, {}, {}};
    d.action.m = order_m;

    // Sigma: omitted entries are identity.
    {
        std::map<Id, Id> vmap, emap, fmap;
        if (doc.contains("sigma")) {
            const auto& sigma = doc.at("sigma");
            expect_keys(sigma, "sigma", {"vertex_map", "edge_map", "flag_map"});
            if (sigma.contains("vertex_map"))
                vmap = parse_map(get_array(sigma, "sigma", "vertex_map"), "sigma.vertex_map");
            if (sigma.contains("edge_map"))
                emap = parse_map(get_array(sigma, "sigma", "edge_map"), "sigma.edge_map");
            if (sigma.contains("flag_map"))
                fmap = parse_map(get_array(sigma, "sigma", "flag_map"), "sigma.flag_map");
        }
        for (const auto& v : d.graph.vertices())
            d.action.sigma.vertex_map[v.id] = vmap.count(v.id) ? vmap[v.id] : v.id;
        for (const auto& e : d.graph.edges())
            d.action.sigma.edge_map[e.id] = emap.count(e.id) ? emap[e.id] : e.id;
        for (const auto& f : d.graph.flags())
            d.action.sigma.flag_map[f.id] = fmap.count(f.id) ? fmap[f.id] : f.id;
        for (const auto& [from, to] : vmap) {
            (void)to;
            if (!d.graph.has_vertex(from))
                throw parse_error("sigma.vertex_map", "unknown vertex " + std::to_string(from));
        }
        for (const auto& [from, to] : emap) {
            (void)to;
            if (!d.graph.has_edge(from))
                throw parse_error("sigma.edge_map", "unknown edge " + std::to_string(from));
        }
        for (const auto& [from, to] : fmap) {
            (void)to;
            if (!d.graph.has_flag(from))
                throw parse_error("sigma.flag_map", "unknown flag " + std::to_string(from));
        }
    }

    // Valencies: omitted flags get 0.
    {
        std::map<Id, Rat> vals;
        if (doc.contains("flag_valencies")) {
            const auto& arr = get_array(doc, "document", "flag_valencies");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const std::string where = "flag_valencies[" + std::to_string(i) + "]";
                expect_keys(arr[i], where, {"flag", "numerator", "denominator"});
                const Id fid = get_int(arr[i], where, "flag");
                if (!d.graph.has_flag(fid))
                    throw parse_error(where, "unknown flag " + std::to_string(fid));
                if (vals.count(fid))
                    throw parse_error(where, "duplicate valency for flag " + std::to_string(fid));
                vals[fid] = get_valency(arr[i], where);
            }
        }
        for (const auto& f : d.graph.flags())
            d.action.flag_val[f.id] = vals.count(f.id) ? vals[f.id] : Rat(0);
    }

    // Smooth ramification: omitted vertices get the empty type over their
    // stabilizer order (derived later during validation; stored over m_v
    // when the orbit data is consistent, else over 1).
    {
        std::map<Id, std::vector<RamEntry>> raw;
        if (doc.contains("vertex_smooth_ram")) {
            const auto& arr = get_array(doc, "document", "vertex_smooth_ram");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const std::string where = "vertex_smooth_ram[" + std::to_string(i) + "]";
                expect_keys(arr[i], where, {"vertex", "entries"});
                const Id vid = get_int(arr[i], where, "vertex");
                if (!d.graph.has_vertex(vid))
                    throw parse_error(where, "unknown vertex " + std::to_string(vid));
                if (raw.count(vid))
                    throw parse_error(where, "duplicate record for vertex " + std::to_string(vid));
                std::vector<RamEntry> entries;
                const auto& ea = get_array(arr[i], where, "entries");
                for (std::size_t k = 0; k < ea.size(); ++k) {
                    const std::string ew = where + ".entries[" + std::to_string(k) + "]";
                    expect_keys(ea[k], ew, {"numerator", "denominator", "multiplicity"});
                    const std::int64_t mult = get_int(ea[k], ew, "multiplicity");
                    if (mult < 1) throw parse_error(ew, "multiplicity must be positive");
                    entries.push_back({get_valency(ea[k], ew), mult});
                }
                raw[vid] = std::move(entries);
            }
        }
        for (const auto& v : d.graph.vertices()) {
            std::vector<RamEntry> entries;
            if (auto it = raw.find(v.id); it != raw.end()) entries = it->second;
            std::int64_t m_v = 1;
            try {
                m_v = vertex_stabilizer_order(d.action, v.id);
            } catch (const std::exception&) {
                m_v = 1; // validation will flag the orbit itself
            }
            std::int64_t span = 1;
            for (const auto& e : entries) span = std::lcm(span, e.alpha.den());
            try {
                d.vertex_ram[v.id] = RamType::make(std::lcm(span, m_v) == m_v ? m_v : span,
                                                   std::move(entries));
            } catch (const std::invalid_argument& e) {
                throw parse_error("vertex_smooth_ram", e.what());
            }
        }
    }

    // Screw data: structural only (any integer); validation enforces N >= 1
    // and the congruence.
    if (doc.contains("screw")) {
        const auto& arr = get_array(doc, "document", "screw");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "screw[" + std::to_string(i) + "]";
            expect_keys(arr[i], where, {"edge", "N"});
            const Id eid = get_int(arr[i], where, "edge");
            if (!d.graph.has_edge(eid))
                throw parse_error(where, "unknown edge " + std::to_string(eid));
            if (d.screw.count(eid))
                throw parse_error(where, "duplicate screw datum for edge " + std::to_string(eid));
            d.screw[eid] = get_int(arr[i], where, "N");
        }
    }

    return d;
}

DegenerationType load_degeneration_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("document", "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_degeneration(buf.str());
}

std::string serialize_degeneration(const DegenerationType& d) {
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["genus"] = d.genus;
    doc["order_m"] = d.m();

    std::vector<Id> vids, eids, fids;
    for (const auto& v : d.graph.vertices()) vids.push_back(v.id);
    for (const auto& e : d.graph.edges()) eids.push_back(e.id);
    for (const auto& f : d.graph.flags()) fids.push_back(f.id);
    std::sort(vids.begin(), vids.end());
    std::sort(eids.begin(), eids.end());
    std::sort(fids.begin(), fids.end());

    doc["vertices"] = json::array();
    for (Id v : vids) doc["vertices"].push_back({{"id", v}, {"genus", d.graph.genus_of(v)}});

    doc["edges"] = json::array();
    for (Id e : eids) {
        const auto& rec = d.graph.edge(e);
        auto f0 = rec.flags[0], f1 = rec.flags[1];
        if (f0 > f1) std::swap(f0, f1);
        doc["edges"].push_back(
            {{"id", e},
             {"flags", json::array({{{"id", f0}, {"vertex", d.graph.flag(f0).vertex}},
                                    {{"id", f1}, {"vertex", d.graph.flag(f1).vertex}}})}});
    }

    auto map_to_json = [](const std::map<Id, Id>& m) {
        json arr = json::array();
        for (const auto& [from, to] : m) arr.push_back(json::array({from, to}));
        return arr;
    };
    doc["sigma"] = {{"vertex_map", map_to_json(d.action.sigma.vertex_map)},
                    {"edge_map", map_to_json(d.action.sigma.edge_map)},
                    {"flag_map", map_to_json(d.action.sigma.flag_map)}};

    doc["flag_valencies"] = json::array();
    for (Id f : fids) {
        const Rat v = d.action.val(f);
        doc["flag_valencies"].push_back(
            {{"flag", f}, {"numerator", v.num()}, {"denominator", v.den()}});
    }

    doc["vertex_smooth_ram"] = json::array();
    for (Id v : vids) {
        json entries = json::array();
        if (auto it = d.vertex_ram.find(v); it != d.vertex_ram.end())
            for (const auto& e : it->second.entries)
                entries.push_back({{"numerator", e.alpha.num()},
                                   {"denominator", e.alpha.den()},
                                   {"multiplicity", e.mult}});
        doc["vertex_smooth_ram"].push_back({{"vertex", v}, {"entries", entries}});
    }

    doc["screw"] = json::array();
    for (Id e : eids)
        if (auto it = d.screw.find(e); it != d.screw.end())
            doc["screw"].push_back({{"edge", e}, {"N", it->second}});

    return doc.dump(2) + "\n";
}

std::string export_dot(const StableGraph& g) {
    std::vector<Id> vids, eids;
    for (const auto& v : g.vertices()) vids.push_back(v.id);
    for (const auto& e : g.edges()) eids.push_back(e.id);
    std::sort(vids.begin(), vids.end());
    std::sort(eids.begin(), eids.end());

    std::string out = "graph dual_graph {\n";
    for (Id v : vids)
        out += "  v" + std::to_string(v) + " [label=\"v" + std::to_string(v) +
               " g=" + std::to_string(g.genus_of(v)) + "\"];\n";
    for (Id e : eids) {
        const auto& rec = g.edge(e);
        out += "  v" + std::to_string(g.flag(rec.flags[0]).vertex) + " -- v" +
               std::to_string(g.flag(rec.flags[1]).vertex) + " [label=\"" + std::to_string(e) +
               "\"];\n";
    }
    return out + "}\n";
}

namespace {

std::string join_ids(const std::vector<Id>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(ids[i]);
    }
    return out;
}

std::vector<std::vector<Id>> sorted_orbits(const std::vector<Id>& ids,
                                           const std::function<std::vector<Id>(Id)>& orbit) {
    std::set<Id> seen;
    std::vector<std::vector<Id>> out;
    std::vector<Id> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    for (Id id : sorted) {
        if (seen.count(id)) continue;
        auto orb = orbit(id);
        seen.insert(orb.begin(), orb.end());
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

} // namespace

std::string invariants_report(const DegenerationType& d) {
    std::ostringstream out;
    out << "genus " << d.genus << "\n";
    out << "order_m " << d.m() << "\n";

    std::vector<Id> vids, eids;
    for (const auto& v : d.graph.vertices()) vids.push_back(v.id);
    for (const auto& e : d.graph.edges()) eids.push_back(e.id);

    for (const auto& orb : sorted_orbits(vids, [&](Id v) { return vertex_orbit(d.action, v); })) {
        const Id rep = orb.front();
        const std::int64_t m_v = vertex_stabilizer_order(d.action, rep);
        const auto tails = vertex_tail_orbits(d.graph, d.action, rep);
        const RamType& r = d.vertex_ram.at(rep);
        const RealizedPair pair = RealizedPair::make(d.graph.genus_of(rep), m_v, r, tails);
        out << "vertex_orbit {" << join_ids(orb) << "} genus " << d.graph.genus_of(rep)
            << " m_v " << m_v << " gbar " << pair.gbar << " r " << r.str() << "\n";
        const std::int64_t l = choose_prime_l(m_v, pair.g);
        const LevelModule mod = build_level_module(pair, l);
        out << "  level l " << l << " dim " << mod.dim() << "\n";
        for (std::int64_t t = 1; t < m_v; ++t)
            out << "  t " << t << " h01 " << mod.dims[t - 1][0] << " h10 " << mod.dims[t - 1][1]
                << "\n";
    }

    for (const auto& orb : sorted_orbits(eids, [&](Id e) { return edge_orbit(d.action, e); })) {
        const Id rep = orb.front();
        const std::int64_t m_e = edge_stabilizer_order(d.action, rep);
        const bool amph = is_amphidrome(d.graph, d.action, rep);
        const Rat chi = edge_character(d.graph, d.action, rep);
        const std::int64_t N = d.screw.at(rep);
        out << "edge_orbit {" << join_ids(orb) << "} m_e " << m_e << " amphidrome "
            << (amph ? "yes" : "no") << " chi " << chi.str() << " N " << N << " screw "
            << screw_number(d, rep).str() << "\n";
    }
    return out.str();
}

std::string resolve_report(const DegenerationType& d) {
    json doc;
    doc["smooth_points"] = json::array();
    doc["edges"] = json::array();

    std::vector<Id> vids, eids;
    for (const auto& v : d.graph.vertices()) vids.push_back(v.id);
    for (const auto& e : d.graph.edges()) eids.push_back(e.id);

    for (const auto& orb : sorted_orbits(vids, [&](Id v) { return vertex_orbit(d.action, v); })) {
        const Id rep = orb.front();
        const RamType& r = d.vertex_ram.at(rep);
        for (const auto& entry : r.entries) {
            const CyclicSing s = smooth_point_sing(entry.alpha.den(), entry.alpha);
            json rec;
            rec["vertex_orbit"] = rep;
            rec["valency"] = {{"numerator", entry.alpha.num()},
                              {"denominator", entry.alpha.den()}};
            rec["multiplicity"] = entry.mult;
            rec["sing"] = {{"n", s.n}, {"q", s.q}};
            rec["chain"] = resolve_sing(s);
            doc["smooth_points"].push_back(rec);
        }
    }

    for (const auto& orb : sorted_orbits(eids, [&](Id e) { return edge_orbit(d.action, e); })) {
        const Id rep = orb.front();
        const std::int64_t m_e = edge_stabilizer_order(d.action, rep);
        const std::int64_t N = d.screw.at(rep);
        json rec;
        rec["edge_orbit"] = rep;
        rec["m_e"] = m_e;
        rec["N"] = N;
        if (is_amphidrome(d.graph, d.action, rep)) {
            // The invariant tuple determines the local model, but no chain is
            // computed for the nonabelian amphidrome quotient.
            rec["model"] = "amphidrome";
            rec["chi_residue"] = edge_character_residue(d.graph, d.action, rep);
        } else {
            rec["model"] = "non-amphidrome";
            const auto& erec = d.graph.edge(rep);
            const std::int64_t b1 = character_from_valency(d.action.val(erec.flags[0]));
            const std::int64_t b2 = character_from_valency(d.action.val(erec.flags[1]));
            const EdgeModel model = edge_model_singularities(m_e, b1, b2, N);
            rec["sing"] = {{"n", model.sing.n}, {"q", model.sing.q}};
            rec["chain"] = model.chain;
            rec["reflections"] = json::array({model.refl_u1, model.refl_u2});
        }
        doc["edges"].push_back(rec);
    }
    return doc.dump(2) + "\n";
}

std::string realized_pair_record(const RealizedPair& p) {
    json rec;
    rec["genus"] = p.g;
    rec["order"] = p.m;
    rec["quotient_genus"] = p.gbar;
    rec["ram"] = json::array();
    for (const auto& e : p.r.entries)
        rec["ram"].push_back({{"numerator", e.alpha.num()},
                              {"denominator", e.alpha.den()},
                              {"multiplicity", e.mult}});
    rec["tails"] = json::array();
    for (const auto& t : p.tails)
        rec["tails"].push_back({{"numerator", t.val.num()}, {"denominator", t.val.den()}});
    return rec.dump();
}

std::string degeneration_record(const DegenerationType& d) {
    json rec;
    rec["degeneration"] = json::parse(serialize_degeneration(d));
    rec["screw_families"] = json::array();

    std::vector<Id> eids;
    for (const auto& e : d.graph.edges()) eids.push_back(e.id);
    for (const auto& orb : sorted_orbits(eids, [&](Id e) { return edge_orbit(d.action, e); })) {
        const Id rep = orb.front();
        rec["screw_families"].push_back(
            {{"edge_orbit", rep},
             {"modulus", edge_stabilizer_order(d.action, rep)},
             {"residue", edge_character_residue(d.graph, d.action, rep)}});
    }
    return rec.dump();
}

} // namespace curvedeg
