#include "curvedeg/type_arith.hpp"

#include <algorithm>
#include <map>

#include "curvedeg/errors.hpp"

namespace curvedeg {

RamType RamType::make(std::int64_t m, std::vector<RamEntry> raw) {
    if (m < 1) throw std::invalid_argument("ram type: m must be positive");
    std::map<Rat, std::int64_t> merged;
    for (const auto& e : raw) {
        if (e.mult <= 0) throw std::invalid_argument("ram type: multiplicity must be positive");
        if (e.alpha < Rat(0) || e.alpha >= Rat(1))
            throw std::invalid_argument("ram type: entry " + e.alpha.str() + " outside [0,1)");
        if (m % e.alpha.den() != 0)
            throw std::invalid_argument("ram type: denominator of " + e.alpha.str() +
                                        " does not divide m=" + std::to_string(m));
        merged[e.alpha] += e.mult;
    }
    RamType r;
    r.m = m;
    for (const auto& [alpha, mult] : merged) r.entries.push_back({alpha, mult});
    return r;
}

std::int64_t RamType::point_orbit_count() const {
    std::int64_t n = 0;
    for (const auto& e : entries) n += e.mult;
    return n;
}

std::string RamType::str() const {
    std::string out = "[";
    bool first = true;
    for (const auto& e : entries) {
        if (!first) out += ", ";
        first = false;
        out += e.alpha.str();
        if (e.mult != 1) out += " x" + std::to_string(e.mult);
    }
    return out + "]";
}

bool operator<(const RamType& a, const RamType& b) {
    if (a.m != b.m) return a.m < b.m;
    return std::lexicographical_compare(
        a.entries.begin(), a.entries.end(), b.entries.begin(), b.entries.end(),
        [](const RamEntry& x, const RamEntry& y) {
            if (x.alpha != y.alpha) return x.alpha < y.alpha;
            return x.mult < y.mult;
        });
}

TailOrbit TailOrbit::of(const Rat& val) {
    TailOrbit t;
    t.val = val;
    t.stab_order = val.is_zero() ? 1 : val.den();
    return t;
}

TailOrbit TailOrbit::make(std::int64_t stab_order, const Rat& val) {
    if (val < Rat(0) || val >= Rat(1))
        throw std::invalid_argument("tail valency " + val.str() + " outside [0,1)");
    const std::int64_t expected = val.is_zero() ? 1 : val.den();
    if (stab_order != expected)
        throw std::invalid_argument("tail orbit: stabilizer order " + std::to_string(stab_order) +
                                    " does not match valency " + val.str());
    TailOrbit t;
    t.stab_order = stab_order;
    t.val = val;
    return t;
}

Rat angle_sum(const RamType& r) {
    Rat s(0);
    for (const auto& e : r.entries) s += e.alpha * Rat(e.mult);
    return s;
}

RamType scale(const RamType& r, std::int64_t t) {
    std::vector<RamEntry> out;
    for (const auto& e : r.entries) out.push_back({(e.alpha * Rat(t)).frac(), e.mult});
    return RamType::make(r.m, std::move(out));
}

Rat cor(const Rat& alpha) {
    if (alpha < Rat(0)) throw std::invalid_argument("cor of a negative rational");
    return Rat(1) - Rat(1, alpha.den());
}

Rat cor_sum(const RamType& r) {
    Rat s(0);
    for (const auto& e : r.entries) s += cor(e.alpha) * Rat(e.mult);
    return s;
}

Rat quotient_genus(std::int64_t g, std::int64_t m, const RamType& r, const TailOrbits& tails) {
    Rat tail_cor(0);
    for (const auto& t : tails) tail_cor += cor(t.val);
    const Rat inner = Rat(2 * g - 2, m) - cor_sum(r) - tail_cor;
    return inner * Rat(1, 2) + Rat(1);
}

RealizedCheck is_realized(std::int64_t g, std::int64_t m, const RamType& r,
                          const TailOrbits& tails) {
    RealizedCheck out;
    if (r.m != m) {
        out.failed_condition = 1;
        out.detail = "ram type is over m=" + std::to_string(r.m) + ", expected " +
                     std::to_string(m);
        return out;
    }

    Rat val_sum = angle_sum(r);
    for (const auto& t : tails) val_sum += t.val;
    if (!val_sum.is_integer()) {
        out.failed_condition = 1;
        out.detail = "valency sum " + val_sum.str() + " is not an integer";
        return out;
    }

    const Rat gbar = quotient_genus(g, m, r, tails);
    if (!gbar.is_integer() || gbar < Rat(0)) {
        out.failed_condition = 2;
        out.detail = "quotient genus " + gbar.str() + " is not a non-negative integer";
        return out;
    }

    if (gbar.is_zero()) {
        for (std::int64_t mp = 1; mp < m; ++mp) {
            if (m % mp != 0) continue;
            bool contained = true;
            for (const auto& e : r.entries)
                if (mp % e.alpha.den() != 0) { contained = false; break; }
            if (contained)
                for (const auto& t : tails)
                    if (mp % (t.val.is_zero() ? 1 : t.val.den()) != 0) { contained = false; break; }
            if (contained) {
                out.failed_condition = 3;
                out.witness_divisor = mp;
                out.detail = "all data lives over the proper divisor m'=" + std::to_string(mp);
                return out;
            }
        }
    }

    out.ok = true;
    return out;
}

RealizedPair RealizedPair::make(std::int64_t g, std::int64_t m, RamType r, TailOrbits tails) {
    const auto check = is_realized(g, m, r, tails);
    if (!check.ok)
        throw std::invalid_argument("pair is not realized (condition " +
                                    std::to_string(check.failed_condition) + "): " + check.detail);
    RealizedPair p;
    p.g = g;
    p.m = m;
    p.r = std::move(r);
    p.tails = std::move(tails);
    p.gbar = quotient_genus(g, m, p.r, p.tails).num();
    return p;
}

HDims h_dims(std::int64_t gbar, std::int64_t m, const RamType& r, const TailOrbits& tails) {
    HDims out;
    for (std::int64_t t = 1; t < m; ++t) {
        std::array<std::int64_t, 2> h{};
        for (int side = 0; side < 2; ++side) {
            const std::int64_t s = side == 0 ? t : -t;
            Rat v = Rat(gbar - 1) + angle_sum(scale(r, s));
            for (const auto& tail : tails) v += (tail.val * Rat(s)).frac();
            if (!v.is_integer() || v < Rat(0))
                throw inconsistency_error("h" + std::string(side == 0 ? "01" : "10") + "(" +
                                          std::to_string(t) + ") = " + v.str() +
                                          " is not a non-negative integer; input is not realized");
            h[side] = v.num();
        }
        out.by_char.push_back(h);
    }
    return out;
}

namespace {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
    std::int64_t acc = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) acc = acc * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return acc;
}

std::int64_t order_mod(std::int64_t x, std::int64_t l) {
    std::int64_t acc = x % l, ord = 1;
    while (acc != 1) {
        acc = acc * (x % l) % l;
        ++ord;
        if (ord > l) throw inconsistency_error("element order search ran past the group size");
    }
    return ord;
}

} // namespace

std::int64_t choose_prime_l(std::int64_t m, std::int64_t g) {
    if (m < 1) throw std::invalid_argument("order m must be positive");
    if (g < 0) throw std::invalid_argument("genus must be non-negative");
    for (std::int64_t l = 5;; ++l)
        if (l % m == 1 && is_prime(l)) return l;
}

LevelModule build_level_module(const RealizedPair& pair, std::int64_t l) {
    if (!is_prime(l) || l < 5 || l % pair.m != 1)
        throw std::invalid_argument("l=" + std::to_string(l) +
                                    " is not an admissible prime for m=" + std::to_string(pair.m));

    LevelModule mod;
    mod.l = l;
    mod.m = pair.m;
    mod.g = pair.g;
    mod.gbar = pair.gbar;
    mod.dims = h_dims(pair.gbar, pair.m, pair.r, pair.tails).by_char;

    std::int64_t total = 2 * pair.gbar;
    for (std::int64_t t = 1; t < pair.m; ++t) {
        const auto [h01, h10] = mod.dims[t - 1];
        if (h01 != mod.dims[pair.m - t - 1][1])
            throw inconsistency_error("h01(" + std::to_string(t) + ") != h10(" +
                                      std::to_string(pair.m - t) + ")");
        total += h01 + h10;
    }
    if (total != 2 * pair.g)
        throw inconsistency_error("dimension sum " + std::to_string(total) + " != 2g = " +
                                  std::to_string(2 * pair.g));

    // Smallest primitive m-th root of unity mod l.
    mod.zeta = 1;
    if (pair.m > 1) {
        for (std::int64_t x = 2; x < l; ++x)
            if (pow_mod(x, pair.m, l) == 1 && order_mod(x, l) == pair.m) { mod.zeta = x; break; }
    }

    // Basis: invariant a_i, b_i pairs, then per character t the V01 vectors,
    // then per character t the V10 vectors.
    std::vector<std::size_t> v01_start(pair.m, 0), v10_start(pair.m, 0);
    for (std::int64_t i = 1; i <= pair.gbar; ++i) {
        mod.basis.push_back("a" + std::to_string(i));
        mod.character.push_back(0);
    }
    for (std::int64_t i = 1; i <= pair.gbar; ++i) {
        mod.basis.push_back("b" + std::to_string(i));
        mod.character.push_back(0);
    }
    for (std::int64_t t = 1; t < pair.m; ++t) {
        v01_start[t] = mod.basis.size();
        for (std::int64_t i = 1; i <= mod.dims[t - 1][0]; ++i) {
            mod.basis.push_back("u" + std::to_string(t) + "_" + std::to_string(i));
            mod.character.push_back(t);
        }
    }
    for (std::int64_t t = 1; t < pair.m; ++t) {
        v10_start[t] = mod.basis.size();
        for (std::int64_t i = 1; i <= mod.dims[t - 1][1]; ++i) {
            mod.basis.push_back("w" + std::to_string(t) + "_" + std::to_string(i));
            mod.character.push_back(t);
        }
    }
    const std::size_t n = mod.basis.size();

    mod.pairing.assign(n, std::vector<std::int64_t>(n, 0));
    for (std::int64_t i = 0; i < pair.gbar; ++i) {
        mod.pairing[i][pair.gbar + i] = 1;
        mod.pairing[pair.gbar + i][i] = l - 1;
    }
    for (std::int64_t t = 1; t < pair.m; ++t) {
        const std::int64_t h = mod.dims[t - 1][0]; // = h10(m-t)
        for (std::int64_t i = 0; i < h; ++i) {
            const std::size_t row = v01_start[t] + i;
            const std::size_t col = v10_start[pair.m - t] + i;
            mod.pairing[row][col] = 1;
            mod.pairing[col][row] = l - 1;
        }
    }

    for (std::size_t i = 0; i < n; ++i)
        mod.action.push_back(pow_mod(mod.zeta, mod.character[i], l));
    return mod;
}

} // namespace curvedeg
