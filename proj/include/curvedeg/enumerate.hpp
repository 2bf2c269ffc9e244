#pragma once

#include <cstdint>
#include <vector>

#include "curvedeg/degeneration.hpp"
#include "curvedeg/type_arith.hpp"

namespace curvedeg {

/// All realized pairs (r, val) for the given genus, order and fixed tail
/// orbits. Finite because the quotient-genus bound caps the correction sum
/// and every nonzero entry contributes at least 1/2 to it. Output is sorted
/// and duplicate-free.
std::vector<RealizedPair> enumerate_realized(std::int64_t g, std::int64_t m,
                                             const TailOrbits& tails = {});

struct MaxOrderResult {
    std::int64_t g = 0;
    std::int64_t max_m = 1;
    RealizedPair witness;
    std::int64_t cap = 0;
    bool cap_bound = false; // the search cap itself admitted a realized pair
};

/// Largest m with a realized tail-free pair, searched up to the cap 12g.
MaxOrderResult max_order(std::int64_t g);

/// All validated degeneration types of the given total genus and order with
/// at most max_edges edges, up to canonical-form equivalence. Screw data is
/// filled with the smallest admissible representative of each congruence
/// class; the residues themselves are forced by the valencies. Supported
/// bounds: g <= 3, max_edges <= 3, m <= 24 (throws std::invalid_argument
/// beyond them).
std::vector<DegenerationType> enumerate_degenerations(std::int64_t g, std::int64_t m,
                                                      std::int64_t max_edges);

} // namespace curvedeg
