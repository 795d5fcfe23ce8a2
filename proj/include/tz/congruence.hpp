#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tz/integer.hpp"

namespace tz {

struct CongruenceEntry {
    std::size_t n = 0;
    Integer mobius_sum;                 ///< P_n = sum_{d | n} mu(d) a_{n/d}
    Integer residue;                    ///< P_n mod n, in [0, n)
    std::optional<Integer> orbit_count; ///< P_n / n when n | P_n
    bool pass = false;
};

struct CongruenceReport {
    std::vector<CongruenceEntry> entries;  ///< n = 1..N
    bool all_pass = false;
    std::optional<std::size_t> first_failure;
};

/// Gauss congruences for a_1..a_N. Failures are reported, never thrown;
/// throws std::invalid_argument only for an empty sequence.
CongruenceReport gauss_check(std::span<const Integer> a);

struct OrbitCounts {
    std::vector<Integer> counts;  ///< P_n / n for n = 1..N
    std::vector<bool> negative;
    bool any_negative = false;
};

/// Numbers of orbits of each length. Throws MathError when the sequence
/// fails the Gauss congruences.
OrbitCounts orbit_counts(std::span<const Integer> a);

}  // namespace tz
