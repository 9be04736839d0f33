#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace pgfl {

/// Ground-set sizes above this are a configuration error for the
/// enumerators below: the partition count B(13) already exceeds 27 million.
inline constexpr int kMaxGroundSize = 12;

/// Default truncation-order cap used by front ends; callers opt in to more.
inline constexpr int kDefaultMaxOrder = 10;

/// Strictly increasing indices drawn from {0..n-1}.
struct IndexSubset {
    std::vector<int> indices;

    static IndexSubset full(int n);
    static IndexSubset from_mask(std::uint32_t mask);

    int size() const { return static_cast<int>(indices.size()); }
    bool empty() const { return indices.empty(); }

    friend auto operator<=>(const IndexSubset&, const IndexSubset&) = default;
};

/// Disjoint nonempty blocks covering a ground set, blocks ordered by their
/// smallest element.
struct SetPartition {
    std::vector<IndexSubset> blocks;

    int block_count() const { return static_cast<int>(blocks.size()); }

    friend auto operator<=>(const SetPartition&, const SetPartition&) = default;
};

/// All 2^n subsets of {0..n-1}, ordered by ascending bitmask value.
std::vector<IndexSubset> enumerate_subsets(int n);

/// All set partitions of `ground`, each with blocks in canonical order.
/// The empty ground set yields exactly one partition with zero blocks.
/// Enumeration order is lexicographic on restricted-growth strings.
std::vector<SetPartition> enumerate_partitions(const IndexSubset& ground);

/// B(n) via the Bell triangle; n <= 25 (B(26) overflows 64 bits).
std::uint64_t bell_number(int n);

/// Visit every subset of {0..n-1} as a bitmask, mask = 0 .. 2^n-1.
template <typename Visitor>
void for_each_subset_mask(int n, Visitor&& visit)
{
    if (n < 0 || n > kMaxGroundSize)
        throw std::invalid_argument("for_each_subset_mask: ground size out of range");
    const std::uint32_t end = std::uint32_t{1} << n;
    for (std::uint32_t mask = 0; mask < end; ++mask)
        visit(mask);
}

/// Visit every set partition of `ground` in the order of enumerate_partitions.
/// Partitions are generated by stepping restricted-growth strings: element i
/// may join any block already opened before it, or open a new one.
template <typename Visitor>
void for_each_partition(const IndexSubset& ground, Visitor&& visit)
{
    const int n = ground.size();
    if (n > kMaxGroundSize)
        throw std::invalid_argument("for_each_partition: ground size out of range");
    if (n == 0) {
        visit(SetPartition{});
        return;
    }

    std::vector<int> rgs(n, 0);      // rgs[i]: block label of element i
    std::vector<int> prefix_max(n, 0); // max label among rgs[0..i-1]
    for (;;) {
        SetPartition partition;
        int block_count = 0;
        for (int i = 0; i < n; ++i)
            block_count = std::max(block_count, rgs[i] + 1);
        partition.blocks.resize(block_count);
        for (int i = 0; i < n; ++i)
            partition.blocks[rgs[i]].indices.push_back(ground.indices[i]);
        visit(std::move(partition));

        // Successor: bump the rightmost position that can still grow.
        int i = n - 1;
        while (i > 0 && rgs[i] > prefix_max[i])
            --i;
        if (i == 0)
            return;
        ++rgs[i];
        for (int j = i + 1; j < n; ++j) {
            prefix_max[j] = std::max(prefix_max[j - 1], rgs[j - 1]);
            rgs[j] = 0;
        }
    }
}

} // namespace pgfl
