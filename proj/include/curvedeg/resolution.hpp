#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curvedeg/rational.hpp"

namespace curvedeg {

/// Cyclic quotient singularity C^2 / (1/n)(1,q), gcd(n,q)=1, 0 <= q < n.
/// n = 1 is the smooth sentinel (1,0); callers treat it as a first-class
/// value, never an error.
struct CyclicSing {
    std::int64_t n = 1;
    std::int64_t q = 0;
    bool smooth() const { return n == 1; }
    std::string str() const { return "1/" + std::to_string(n) + "(1," + std::to_string(q) + ")"; }
    friend bool operator==(const CyclicSing&, const CyclicSing&) = default;
};

/// Self-intersection sequence [c1,...,ck], all c_i >= 2, of the exceptional
/// chain; empty iff the source was smooth.
using ExceptionalChain = std::vector<std::int64_t>;

/// The unique chain with n/q = c1 - 1/(c2 - 1/(... - 1/ck)), c_i >= 2.
/// Requires 0 < q < n, gcd(n,q) = 1.
ExceptionalChain hj_expand(std::int64_t n, std::int64_t q);

/// Chain of the singularity; empty for the smooth sentinel.
ExceptionalChain resolve_sing(const CyclicSing& s);

/// Quotient type at a smooth ramification point of valency a/m_p: the
/// stabilizer acts on (curve direction, base direction) with weights
/// (b/m_p, 1/m_p); normalizing the first weight to 1 gives 1/m_p(1, a).
CyclicSing smooth_point_sing(std::int64_t m_p, const Rat& val);

/// One diagonal generator (x,y) -> (e(x_weight) x, e(y_weight) y).
struct DiagGen {
    Rat x_weight;
    Rat y_weight;
};

/// Finite diagonal abelian group acting on C^2, given by generators.
struct AbelianDiagGroup {
    std::vector<DiagGen> gens;
};

struct QuotientNormalForm {
    CyclicSing sing;
    std::int64_t refl_x = 1;    // order of the divided-out x-axis pseudo-reflections
    std::int64_t refl_y = 1;    // same for the y-axis
    std::int64_t group_order = 1;
};

/// Normal form of C^2 modulo the group: pseudo-reflections are divided out
/// (their orders reported), the residual action is cyclic and is normalized
/// to 1/n(1,q) with the first weight fixed to 1.
QuotientNormalForm abelian_quotient_type(const AbelianDiagGroup& group);

/// Local model of a non-amphidrome edge orbit: the total-space chart
/// u1 u2 = t^N is the A_{N-1} quotient C^2/(1/N)(1,N-1); the stabilizer
/// weights (b1/m_e, b2/m_e) are adjoined and the combined diagonal group is
/// put in normal form. Requires N == b1 + b2 (mod m_e).
struct EdgeModel {
    CyclicSing sing;
    ExceptionalChain chain;
    std::int64_t refl_u1 = 1;
    std::int64_t refl_u2 = 1;
};

EdgeModel edge_model_singularities(std::int64_t m_e, std::int64_t b1, std::int64_t b2,
                                   std::int64_t N);

} // namespace curvedeg
