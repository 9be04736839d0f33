#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pgfl {

/// Canonical storage key for a symmetric argument tuple: sorted
/// (state index, multiplicity) entries with strictly increasing indices
/// and multiplicities >= 1.
struct Multiset {
    std::vector<std::pair<int, int>> entries;

    static Multiset from_points(std::span<const int> points);

    int size() const; // total multiplicity
    bool empty() const { return entries.empty(); }

    /// Sorted tuple of points with repetition, e.g. {a:2, b:1} -> a,a,b.
    std::vector<int> expand() const;

    /// Copy with one extra occurrence of `state`.
    Multiset inserting(int state) const;

    friend bool operator==(const Multiset&, const Multiset&) = default;

    /// Lexicographic on the expanded tuple, so {a,a} < {a,b} < {b,b}.
    friend bool operator<(const Multiset& lhs, const Multiset& rhs);
};

struct CanonicalTuple {
    Multiset multiset;
    std::uint64_t permutation_multiplicity; // n! / prod_i m_i!
};

/// Sort an ordered tuple of state indices into its multiset and count the
/// distinct orderings that map to it. Tuple length is capped at 20 so the
/// count stays exact in 64 bits.
CanonicalTuple canonicalize(std::span<const int> points);

/// All multisets of size n over states {0..state_count-1}, in increasing
/// Multiset order (combinations with repetition).
std::vector<Multiset> enumerate_multisets(int state_count, int n);

} // namespace pgfl
