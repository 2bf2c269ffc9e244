#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "curvedeg/rational.hpp"

namespace curvedeg {

struct RamEntry {
    Rat alpha;          // class in [0,1), denominator dividing m
    std::int64_t mult;  // u_alpha > 0
    friend bool operator==(const RamEntry&, const RamEntry&) = default;
};

/// Finite multiset of valency classes with multiplicities over a fixed group
/// order m. Canonical: entries sorted by alpha, duplicates merged.
struct RamType {
    std::int64_t m = 1;
    std::vector<RamEntry> entries;

    /// Canonicalizes and checks positivity of multiplicities and that all
    /// denominators divide m. Throws std::invalid_argument otherwise.
    static RamType make(std::int64_t m, std::vector<RamEntry> raw);

    std::int64_t point_orbit_count() const;
    std::string str() const; // "[1/2 x6, 1/3]"
    friend bool operator==(const RamType&, const RamType&) = default;
    friend bool operator<(const RamType& a, const RamType& b);
};

/// One orbit of tails (marked points): valency plus the stabilizer order of
/// the underlying points. The local character is injective, so the reduced
/// denominator of val equals the stabilizer order (1 exactly when val = 0).
struct TailOrbit {
    std::int64_t stab_order = 1;
    Rat val;

    static TailOrbit of(const Rat& val);
    static TailOrbit make(std::int64_t stab_order, const Rat& val); // checks the invariant
    friend bool operator==(const TailOrbit&, const TailOrbit&) = default;
};
using TailOrbits = std::vector<TailOrbit>;

Rat angle_sum(const RamType& r);
RamType scale(const RamType& r, std::int64_t t);
Rat cor(const Rat& alpha);
Rat cor_sum(const RamType& r);

/// The quotient-genus formula value, as an exact rational. Integrality and
/// non-negativity are checked separately by is_realized.
Rat quotient_genus(std::int64_t g, std::int64_t m, const RamType& r, const TailOrbits& tails);

struct RealizedCheck {
    bool ok = false;
    int failed_condition = 0;       // 1, 2 or 3 when !ok
    std::int64_t witness_divisor = 0; // for condition 3
    std::string detail;
};

/// The three realizability conditions: integral valency sum, non-negative
/// integral quotient genus, and (when the quotient genus is 0) no proper
/// divisor of m containing all the data.
RealizedCheck is_realized(std::int64_t g, std::int64_t m, const RamType& r,
                          const TailOrbits& tails);

/// A type that passed is_realized, with the quotient genus cached.
struct RealizedPair {
    std::int64_t g = 0;
    std::int64_t m = 1;
    RamType r;
    TailOrbits tails;
    std::int64_t gbar = 0;

    /// Throws std::invalid_argument when the data is not realized.
    static RealizedPair make(std::int64_t g, std::int64_t m, RamType r, TailOrbits tails);
};

/// Eigenspace dimension table: by_char[t-1] = {h01(t), h10(t)} for t=1..m-1.
struct HDims {
    std::vector<std::array<std::int64_t, 2>> by_char;
};

/// Dimensions h01(t) = gbar-1+<t r>+sum <t val> and the mirrored h10(t).
/// Throws inconsistency_error on a negative or non-integral value (the input
/// cannot come from an actual action).
HDims h_dims(std::int64_t gbar, std::int64_t m, const RamType& r, const TailOrbits& tails);

/// Smallest prime l >= 5 with l == 1 (mod m).
std::int64_t choose_prime_l(std::int64_t m, std::int64_t g);

/// Symplectic F_l-module of dimension 2g with mu_m-action: the invariant
/// summand of dimension 2*gbar with the standard form, and for each t a
/// character-t eigenspace of V01 dually paired with the character-(m-t)
/// eigenspace of V10.
struct LevelModule {
    std::int64_t l = 5;
    std::int64_t m = 1;
    std::int64_t g = 0;
    std::int64_t gbar = 0;
    std::int64_t zeta = 1; // chosen primitive m-th root of unity mod l
    std::vector<std::array<std::int64_t, 2>> dims; // index t-1

    std::vector<std::string> basis;          // 2g labels
    std::vector<std::int64_t> character;     // per basis vector; 0 = invariant
    std::vector<std::vector<std::int64_t>> pairing; // (2g)x(2g) over F_l
    std::vector<std::int64_t> action;        // diagonal of the generator, zeta^character

    std::int64_t dim() const { return static_cast<std::int64_t>(basis.size()); }
};

/// Builds the module for a realized pair; throws inconsistency_error if the
/// dimension bookkeeping (sum rule, h-symmetry) fails.
LevelModule build_level_module(const RealizedPair& pair, std::int64_t l);

} // namespace curvedeg
