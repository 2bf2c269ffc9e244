#include "curvedeg/enumerate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "curvedeg/errors.hpp"

namespace curvedeg {

namespace {

/// Nonzero classes a/d with d | m, d > 1, reduced, ascending.
std::vector<Rat> candidate_classes(std::int64_t m) {
    std::vector<Rat> out;
    for (std::int64_t d = 2; d <= m; ++d) {
        if (m % d != 0) continue;
        for (std::int64_t a = 1; a < d; ++a)
            if (std::gcd(a, d) == 1) out.push_back(Rat(a, d));
    }
    std::sort(out.begin(), out.end());
    return out;
}

void search_ram(std::int64_t g, std::int64_t m, const TailOrbits& tails,
                const std::vector<Rat>& classes, std::size_t idx, const Rat& budget,
                std::vector<RamEntry>& acc, std::vector<RealizedPair>& out) {
    {
        const RamType r = RamType::make(m, acc);
        if (is_realized(g, m, r, tails).ok)
            out.push_back(RealizedPair::make(g, m, r, tails));
    }
    for (std::size_t i = idx; i < classes.size(); ++i) {
        const Rat c = cor(classes[i]);
        if (c > budget) continue;
        if (!acc.empty() && acc.back().alpha == classes[i])
            ++acc.back().mult;
        else
            acc.push_back({classes[i], 1});
        search_ram(g, m, tails, classes, i, budget - c, acc, out);
        if (acc.back().mult > 1)
            --acc.back().mult;
        else
            acc.pop_back();
    }
}

} // namespace

std::vector<RealizedPair> enumerate_realized(std::int64_t g, std::int64_t m,
                                             const TailOrbits& tails) {
    if (g < 0) throw std::invalid_argument("genus must be non-negative");
    if (m < 1) throw std::invalid_argument("order must be positive");

    // Non-negative quotient genus bounds the total correction.
    Rat budget = Rat(2 * g - 2, m) + Rat(2);
    for (const auto& t : tails) budget -= cor(t.val);
    std::vector<RealizedPair> out;
    if (budget < Rat(0)) return out;

    const auto classes = candidate_classes(m);
    std::vector<RamEntry> acc;
    search_ram(g, m, tails, classes, 0, budget, acc, out);

    std::sort(out.begin(), out.end(), [](const RealizedPair& a, const RealizedPair& b) {
        if (a.gbar != b.gbar) return a.gbar > b.gbar;
        return a.r < b.r;
    });
    return out;
}

MaxOrderResult max_order(std::int64_t g) {
    if (g < 2) throw std::invalid_argument("max_order needs genus >= 2");
    MaxOrderResult res;
    res.g = g;
    res.cap = 12 * g;
    for (std::int64_t m = 1; m <= res.cap; ++m) {
        auto pairs = enumerate_realized(g, m);
        if (!pairs.empty()) {
            res.max_m = m;
            res.witness = pairs.front();
            res.cap_bound = (m == res.cap);
        }
    }
    return res;
}

namespace {

// ---- labeled stable graph enumeration ----------------------------------

struct LabeledGraph {
    std::int64_t nv = 0;
    std::vector<std::pair<Id, Id>> edges; // sorted pairs (a <= b), lex ordered
    std::vector<std::int64_t> genus;      // per vertex
};

bool connected(const LabeledGraph& g) {
    if (g.nv == 0) return false;
    std::vector<char> seen(g.nv, 0);
    std::vector<Id> stack{0};
    while (!stack.empty()) {
        const Id v = stack.back();
        stack.pop_back();
        if (seen[v]) continue;
        seen[v] = 1;
        for (const auto& [a, b] : g.edges) {
            if (a == v && !seen[b]) stack.push_back(b);
            if (b == v && !seen[a]) stack.push_back(a);
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

std::int64_t tails_at(const LabeledGraph& g, Id v) {
    std::int64_t t = 0;
    for (const auto& [a, b] : g.edges) t += (a == v) + (b == v);
    return t;
}

void genus_assignments(std::int64_t remaining, std::int64_t slots,
                       std::vector<std::int64_t>& acc,
                       std::vector<std::vector<std::int64_t>>& out) {
    if (slots == 1) {
        acc.push_back(remaining);
        out.push_back(acc);
        acc.pop_back();
        return;
    }
    for (std::int64_t gi = 0; gi <= remaining; ++gi) {
        acc.push_back(gi);
        genus_assignments(remaining - gi, slots - 1, acc, out);
        acc.pop_back();
    }
}

std::vector<LabeledGraph> stable_labeled_graphs(std::int64_t g, std::int64_t max_edges) {
    std::vector<LabeledGraph> out;
    for (std::int64_t ne = 0; ne <= max_edges; ++ne) {
        for (std::int64_t nv = 1; nv <= ne + 1; ++nv) {
            const std::int64_t b1 = ne - nv + 1;
            if (b1 < 0 || g - b1 < 0) continue;

            // All sorted multisets of ne unordered vertex pairs.
            std::vector<std::pair<Id, Id>> pairs;
            for (Id a = 0; a < nv; ++a)
                for (Id b = a; b < nv; ++b) pairs.push_back({a, b});
            std::vector<std::size_t> pick;
            auto emit = [&]() {
                LabeledGraph lg;
                lg.nv = nv;
                for (auto i : pick) lg.edges.push_back(pairs[i]);
                if (!connected(lg)) return;
                std::vector<std::vector<std::int64_t>> gens;
                std::vector<std::int64_t> acc;
                genus_assignments(g - b1, nv, acc, gens);
                for (auto& assignment : gens) {
                    lg.genus = assignment;
                    bool stable = true;
                    for (Id v = 0; v < nv; ++v)
                        if (lg.genus[v] == 0 && tails_at(lg, v) < 3) { stable = false; break; }
                    if (stable) out.push_back(lg);
                }
            };
            // Choose ne indices with repetition, non-decreasing.
            std::vector<std::size_t> stack;
            auto rec = [&](auto&& self, std::size_t start, std::int64_t left) -> void {
                if (left == 0) {
                    pick = stack;
                    emit();
                    return;
                }
                for (std::size_t i = start; i < pairs.size(); ++i) {
                    stack.push_back(i);
                    self(self, i, left - 1);
                    stack.pop_back();
                }
            };
            rec(rec, 0, ne);
        }
    }
    return out;
}

// ---- automorphism enumeration -------------------------------------------

struct RawAutomorphism {
    std::vector<Id> vperm;                 // vertex i -> vperm[i]
    std::vector<Id> eperm;                 // edge i -> eperm[i]
    std::vector<std::array<Id, 2>> fmap;   // edge i's flags (2i, 2i+1) -> these flag ids
};

std::int64_t perm_order(const std::vector<Id>& vperm, const std::vector<Id>& eperm,
                        const std::vector<std::array<Id, 2>>& fmap) {
    std::int64_t ord = 1;
    auto cycle_lcm = [&ord](const std::vector<Id>& p) {
        std::vector<char> seen(p.size(), 0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (seen[i]) continue;
            std::int64_t len = 0;
            std::size_t cur = i;
            while (!seen[cur]) {
                seen[cur] = 1;
                ++len;
                cur = static_cast<std::size_t>(p[cur]);
            }
            ord = std::lcm(ord, len);
        }
    };
    cycle_lcm(vperm);
    cycle_lcm(eperm);
    std::vector<Id> flat(fmap.size() * 2);
    for (std::size_t e = 0; e < fmap.size(); ++e) {
        flat[2 * e] = fmap[e][0];
        flat[2 * e + 1] = fmap[e][1];
    }
    cycle_lcm(flat);
    return ord;
}

void edge_bijections(const LabeledGraph& lg, const std::vector<Id>& vperm,
                     std::vector<RawAutomorphism>& out) {
    const auto ne = lg.edges.size();
    // Group edges by unordered endpoint pair; sigma must map a group onto the
    // group with permuted endpoints.
    std::map<std::pair<Id, Id>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < ne; ++i) groups[lg.edges[i]].push_back(i);

    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> tasks;
    for (const auto& [key, members] : groups) {
        std::pair<Id, Id> image{vperm[key.first], vperm[key.second]};
        if (image.first > image.second) std::swap(image.first, image.second);
        auto it = groups.find(image);
        if (it == groups.end() || it->second.size() != members.size()) return;
        tasks.push_back({members, it->second});
    }

    std::vector<Id> eperm(ne, -1);
    auto rec = [&](auto&& self, std::size_t ti) -> void {
        if (ti == tasks.size()) {
            // Flag assignments: forced on non-loops whose endpoints are
            // distinguished by vperm; two choices otherwise.
            std::vector<std::size_t> free_edges;
            std::vector<std::array<Id, 2>> fmap(ne);
            for (std::size_t e = 0; e < ne; ++e) {
                const auto [a, b] = lg.edges[e];
                const Id target = eperm[e];
                const auto [ta, tb] = lg.edges[static_cast<std::size_t>(target)];
                // flags of e are 2e (at a) and 2e+1 (at b)
                if (vperm[a] == ta && vperm[b] == tb && ta != tb) {
                    fmap[e] = {2 * target, 2 * target + 1};
                } else if (vperm[a] == tb && vperm[b] == ta && ta != tb) {
                    fmap[e] = {2 * target + 1, 2 * target};
                } else if (ta == tb && vperm[a] == ta && vperm[b] == tb) {
                    free_edges.push_back(e); // loop -> loop, both orders valid
                    fmap[e] = {2 * target, 2 * target + 1};
                } else {
                    return; // endpoint mismatch
                }
            }
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_edges.size());
                 ++mask) {
                auto fm = fmap;
                for (std::size_t i = 0; i < free_edges.size(); ++i)
                    if ((mask >> i) & 1) std::swap(fm[free_edges[i]][0], fm[free_edges[i]][1]);
                out.push_back({vperm, eperm, fm});
            }
            return;
        }
        auto& [from, to] = tasks[ti];
        std::vector<std::size_t> target = to;
        std::sort(target.begin(), target.end());
        do {
            for (std::size_t i = 0; i < from.size(); ++i)
                eperm[from[i]] = static_cast<Id>(target[i]);
            self(self, ti + 1);
        } while (std::next_permutation(target.begin(), target.end()));
    };
    rec(rec, 0);
}

std::vector<RawAutomorphism> graph_automorphisms(const LabeledGraph& lg, std::int64_t m) {
    std::vector<RawAutomorphism> out;
    std::vector<Id> vperm(lg.nv);
    std::iota(vperm.begin(), vperm.end(), 0);
    do {
        bool genus_ok = true;
        for (Id v = 0; v < lg.nv; ++v)
            if (lg.genus[static_cast<std::size_t>(vperm[v])] !=
                lg.genus[static_cast<std::size_t>(v)]) {
                genus_ok = false;
                break;
            }
        if (!genus_ok) continue;
        edge_bijections(lg, vperm, out);
    } while (std::next_permutation(vperm.begin(), vperm.end()));

    std::vector<RawAutomorphism> filtered;
    for (auto& a : out)
        if (m % perm_order(a.vperm, a.eperm, a.fmap) == 0) filtered.push_back(std::move(a));
    return filtered;
}

// ---- assembling degenerations -------------------------------------------

DegenerationType assemble(const LabeledGraph& lg, const RawAutomorphism& aut, std::int64_t m,
                          std::int64_t g) {
    std::vector<VertexRec> verts;
    for (Id v = 0; v < lg.nv; ++v) verts.push_back({v, lg.genus[static_cast<std::size_t>(v)]});
    std::vector<std::tuple<Id, Id, Id>> edges;
    for (std::size_t e = 0; e < lg.edges.size(); ++e)
        edges.push_back({static_cast<Id>(e), lg.edges[e].first, lg.edges[e].second});

    DegenerationType d{graph_with_auto_flags(verts, edges), CyclicAction{}, g, {}, {}};
    d.action.m = m;
    for (Id v = 0; v < lg.nv; ++v) d.action.sigma.vertex_map[v] = aut.vperm[v];
    for (std::size_t e = 0; e < lg.edges.size(); ++e) {
        d.action.sigma.edge_map[static_cast<Id>(e)] = aut.eperm[e];
        d.action.sigma.flag_map[static_cast<Id>(2 * e)] = aut.fmap[e][0];
        d.action.sigma.flag_map[static_cast<Id>(2 * e + 1)] = aut.fmap[e][1];
    }
    return d;
}

void fill_screw_representatives(DegenerationType& d) {
    std::set<Id> seen;
    for (const auto& e : d.graph.edges()) {
        if (seen.count(e.id)) continue;
        const auto orb = edge_orbit(d.action, e.id);
        seen.insert(orb.begin(), orb.end());
        const std::int64_t m_e = edge_stabilizer_order(d.action, e.id);
        const std::int64_t residue = edge_character_residue(d.graph, d.action, e.id);
        const std::int64_t N = residue == 0 ? m_e : residue;
        for (Id eid : orb) d.screw[eid] = N;
    }
}

} // namespace

std::vector<DegenerationType> enumerate_degenerations(std::int64_t g, std::int64_t m,
                                                      std::int64_t max_edges) {
    if (g < 2 || g > 3)
        throw std::invalid_argument("enumerate_degenerations supports 2 <= genus <= 3");
    if (max_edges < 0 || max_edges > 3)
        throw std::invalid_argument("enumerate_degenerations supports at most 3 edges");
    if (m < 1 || m > 24)
        throw std::invalid_argument("enumerate_degenerations supports order m <= 24");

    std::vector<DegenerationType> result;
    std::set<std::string> seen_forms;
    // Cache realized-r searches per (genus, order, tails).
    std::map<std::string, std::vector<RamType>> ram_cache;

    auto realized_types = [&](std::int64_t gv, std::int64_t mv,
                              const TailOrbits& tails) -> const std::vector<RamType>& {
        std::string key = std::to_string(gv) + "|" + std::to_string(mv);
        for (const auto& t : tails) key += "|" + t.val.str();
        auto it = ram_cache.find(key);
        if (it == ram_cache.end()) {
            std::vector<RamType> types;
            for (const auto& p : enumerate_realized(gv, mv, tails)) types.push_back(p.r);
            it = ram_cache.emplace(key, std::move(types)).first;
        }
        return it->second;
    };

    for (const auto& lg : stable_labeled_graphs(g, max_edges)) {
        for (const auto& aut : graph_automorphisms(lg, m)) {
            DegenerationType base = assemble(lg, aut, m, g);

            // Flag orbits and their admissible valencies.
            std::set<Id> visited;
            std::vector<std::vector<Id>> forbits;
            for (const auto& f : base.graph.flags()) {
                if (visited.count(f.id)) continue;
                auto orb = flag_orbit(base.action, f.id);
                visited.insert(orb.begin(), orb.end());
                forbits.push_back(std::move(orb));
            }
            std::vector<std::vector<Rat>> choices;
            for (const auto& orb : forbits) {
                const std::int64_t m_f = m / static_cast<std::int64_t>(orb.size());
                std::vector<Rat> vals;
                if (m_f == 1) {
                    vals.push_back(Rat(0));
                } else {
                    for (std::int64_t a = 1; a < m_f; ++a)
                        if (std::gcd(a, m_f) == 1) vals.push_back(Rat(a, m_f));
                }
                choices.push_back(std::move(vals));
            }

            std::vector<std::size_t> pick(forbits.size(), 0);
            auto flag_rec = [&](auto&& self, std::size_t oi) -> void {
                if (oi == forbits.size()) {
                    DegenerationType cand = base;
                    for (std::size_t i = 0; i < forbits.size(); ++i)
                        for (Id fid : forbits[i]) cand.action.flag_val[fid] = choices[i][pick[i]];

                    // Vertex-orbit representatives and their realized types.
                    std::set<Id> vseen;
                    std::vector<std::vector<Id>> vorbits;
                    std::vector<const std::vector<RamType>*> options;
                    for (const auto& v : cand.graph.vertices()) {
                        if (vseen.count(v.id)) continue;
                        auto orb = vertex_orbit(cand.action, v.id);
                        vseen.insert(orb.begin(), orb.end());
                        const std::int64_t m_v = vertex_stabilizer_order(cand.action, v.id);
                        const auto tails = vertex_tail_orbits(cand.graph, cand.action, v.id);
                        const auto& types = realized_types(v.genus, m_v, tails);
                        if (types.empty()) return; // prune this valency choice
                        vorbits.push_back(std::move(orb));
                        options.push_back(&types);
                    }

                    std::vector<std::size_t> rpick(vorbits.size(), 0);
                    auto vertex_rec = [&](auto&& vself, std::size_t vi) -> void {
                        if (vi == vorbits.size()) {
                            DegenerationType full = cand;
                            for (std::size_t i = 0; i < vorbits.size(); ++i)
                                for (Id vid : vorbits[i])
                                    full.vertex_ram[vid] = (*options[i])[rpick[i]];
                            fill_screw_representatives(full);
                            if (!validate_degeneration(full).empty())
                                throw inconsistency_error(
                                    "enumerated degeneration failed validation");
                            std::string form = canonical_form(full);
                            if (seen_forms.insert(std::move(form)).second)
                                result.push_back(std::move(full));
                            return;
                        }
                        for (rpick[vi] = 0; rpick[vi] < options[vi]->size(); ++rpick[vi])
                            vself(vself, vi + 1);
                    };
                    vertex_rec(vertex_rec, 0);
                    return;
                }
                for (pick[oi] = 0; pick[oi] < choices[oi].size(); ++pick[oi])
                    self(self, oi + 1);
            };
            flag_rec(flag_rec, 0);
        }
    }

    std::sort(result.begin(), result.end(),
              [](const DegenerationType& a, const DegenerationType& b) {
                  return canonical_form(a) < canonical_form(b);
              });
    return result;
}

} // namespace curvedeg
