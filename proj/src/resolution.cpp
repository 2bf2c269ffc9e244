#include "curvedeg/resolution.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "curvedeg/errors.hpp"

namespace curvedeg {

ExceptionalChain hj_expand(std::int64_t n, std::int64_t q) {
    if (n < 2 || q <= 0 || q >= n)
        throw std::invalid_argument("hj_expand: need 0 < q < n, got n=" + std::to_string(n) +
                                    " q=" + std::to_string(q));
    if (std::gcd(n, q) != 1)
        throw std::invalid_argument("hj_expand: n=" + std::to_string(n) + " and q=" +
                                    std::to_string(q) + " are not coprime");
    ExceptionalChain chain;
    while (q > 0) {
        const std::int64_t c = (n + q - 1) / q; // ceil(n/q)
        chain.push_back(c);
        const std::int64_t next_q = c * q - n;
        n = q;
        q = next_q;
    }
    return chain;
}

ExceptionalChain resolve_sing(const CyclicSing& s) {
    if (s.smooth()) return {};
    return hj_expand(s.n, s.q);
}

CyclicSing smooth_point_sing(std::int64_t m_p, const Rat& val) {
    if (m_p < 1) throw std::invalid_argument("stabilizer order must be positive");
    if (m_p == 1) {
        if (!val.is_zero())
            throw std::invalid_argument("trivial stabilizer with nonzero valency " + val.str());
        return CyclicSing{1, 0};
    }
    if (val.is_zero() || val.den() != m_p || std::gcd(val.num(), m_p) != 1)
        throw std::invalid_argument("valency " + val.str() +
                                    " is not reduced with denominator " + std::to_string(m_p));
    return CyclicSing{m_p, val.num()};
}

namespace {

using Elt = std::pair<Rat, Rat>; // both coordinates in [0,1)

Elt add_elt(const Elt& a, const Elt& b) {
    return {(a.first + b.first).frac(), (a.second + b.second).frac()};
}

constexpr std::size_t kMaxGroupSize = 1 << 20;

std::set<Elt> closure(const std::vector<Elt>& gens) {
    std::set<Elt> group{{Rat(0), Rat(0)}};
    std::vector<Elt> frontier(group.begin(), group.end());
    while (!frontier.empty()) {
        std::vector<Elt> next;
        for (const auto& e : frontier)
            for (const auto& g : gens) {
                const Elt s = add_elt(e, g);
                if (group.insert(s).second) next.push_back(s);
            }
        if (group.size() > kMaxGroupSize)
            throw std::invalid_argument("diagonal group is too large");
        frontier = std::move(next);
    }
    return group;
}

std::int64_t elt_order(const Elt& e) {
    const std::int64_t dx = e.first.is_zero() ? 1 : e.first.den();
    const std::int64_t dy = e.second.is_zero() ? 1 : e.second.den();
    return std::lcm(dx, dy);
}

} // namespace

QuotientNormalForm abelian_quotient_type(const AbelianDiagGroup& group) {
    std::vector<Elt> gens;
    for (const auto& g : group.gens) {
        const Elt e{g.x_weight.frac(), g.y_weight.frac()};
        if (e.first.is_zero() && e.second.is_zero()) continue; // no-op generator
        gens.push_back(e);
    }

    const std::set<Elt> full = closure(gens);

    QuotientNormalForm out;
    out.group_order = static_cast<std::int64_t>(full.size());

    // Pseudo-reflections: the subgroups acting on a single axis. Dividing by
    // them is the coordinate change x -> x^k1, y -> y^k2.
    std::int64_t k1 = 0, k2 = 0;
    for (const auto& e : full) {
        if (e.second.is_zero()) ++k1; // subgroup {(x,0)}, identity included
        if (e.first.is_zero()) ++k2;  // subgroup {(0,y)}
    }
    out.refl_x = k1;
    out.refl_y = k2;

    std::set<Elt> reduced;
    for (const auto& e : full)
        reduced.insert({(e.first * Rat(k1)).frac(), (e.second * Rat(k2)).frac()});

    const auto n = static_cast<std::int64_t>(reduced.size());
    if (n * k1 * k2 != out.group_order)
        throw inconsistency_error("reflection reduction changed the order inconsistently");
    if (n == 1) {
        out.sing = CyclicSing{1, 0};
        return out;
    }

    // The residual group has no pseudo-reflections, so both coordinate
    // projections are injective and the group is cyclic of order n.
    for (const auto& e : reduced) {
        if (elt_order(e) != n) continue;
        const std::int64_t a = e.first.num() * (n / e.first.den());
        const std::int64_t b = e.second.num() * (n / e.second.den());
        if (std::gcd(a, n) != 1 || std::gcd(b, n) != 1)
            throw inconsistency_error("residual group is not in small form");
        // Power the generator so that the first weight becomes 1/n.
        std::int64_t ainv = 0;
        for (std::int64_t x = 1; x < n; ++x)
            if (a * x % n == 1) { ainv = x; break; }
        out.sing = CyclicSing{n, ainv * b % n};
        return out;
    }
    throw inconsistency_error("residual diagonal group has no generator");
}

EdgeModel edge_model_singularities(std::int64_t m_e, std::int64_t b1, std::int64_t b2,
                                   std::int64_t N) {
    if (m_e < 1) throw std::invalid_argument("edge stabilizer order must be positive");
    if (N < 1) throw std::invalid_argument("vanishing order N must be >= 1");
    for (std::int64_t b : {b1, b2}) {
        if (b < 0 || b >= m_e || (m_e > 1 && std::gcd(b, m_e) != 1) || (m_e == 1 && b != 0))
            throw std::invalid_argument("character exponent " + std::to_string(b) +
                                        " invalid for m_e=" + std::to_string(m_e));
    }
    if (((N - b1 - b2) % m_e + m_e) % m_e != 0)
        throw std::invalid_argument("N=" + std::to_string(N) +
                                    " violates the screw congruence mod " + std::to_string(m_e));

    AbelianDiagGroup group;
    if (N >= 2) group.gens.push_back({Rat(1, N), Rat(N - 1, N)});
    if (m_e >= 2) group.gens.push_back({Rat(b1, m_e), Rat(b2, m_e)});

    const auto nf = abelian_quotient_type(group);
    EdgeModel out;
    out.sing = nf.sing;
    out.chain = resolve_sing(nf.sing);
    out.refl_u1 = nf.refl_x;
    out.refl_u2 = nf.refl_y;
    return out;
}

} // namespace curvedeg
