#include "pgfl/combinatorics.hpp"

#include <numeric>

namespace pgfl {

IndexSubset IndexSubset::full(int n)
{
    IndexSubset s;
    s.indices.resize(static_cast<std::size_t>(n));
    std::iota(s.indices.begin(), s.indices.end(), 0);
    return s;
}

IndexSubset IndexSubset::from_mask(std::uint32_t mask)
{
    IndexSubset s;
    for (int i = 0; mask != 0; ++i, mask >>= 1)
        if (mask & 1u)
            s.indices.push_back(i);
    return s;
}

std::vector<IndexSubset> enumerate_subsets(int n)
{
    if (n < 0 || n > kMaxGroundSize)
        throw std::invalid_argument("enumerate_subsets: ground size out of range");
    std::vector<IndexSubset> subsets;
    subsets.reserve(std::size_t{1} << n);
    for_each_subset_mask(n, [&](std::uint32_t mask) { subsets.push_back(IndexSubset::from_mask(mask)); });
    return subsets;
}

std::vector<SetPartition> enumerate_partitions(const IndexSubset& ground)
{
    std::vector<SetPartition> partitions;
    for_each_partition(ground, [&](SetPartition p) { partitions.push_back(std::move(p)); });
    return partitions;
}

std::uint64_t bell_number(int n)
{
    if (n < 0 || n > 25)
        throw std::invalid_argument("bell_number: n out of [0,25]");
    // Bell triangle: row r starts with the last entry of row r-1, then
    // each entry adds its left neighbour and the entry above it.
    std::vector<std::uint64_t> row{1};
    for (int r = 1; r <= n; ++r) {
        std::vector<std::uint64_t> next;
        next.reserve(row.size() + 1);
        next.push_back(row.back());
        for (std::uint64_t above : row)
            next.push_back(next.back() + above);
        row = std::move(next);
    }
    return row.front();
}

} // namespace pgfl
