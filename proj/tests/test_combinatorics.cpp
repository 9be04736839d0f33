#include <doctest.h>

#include <set>

#include "pgfl/combinatorics.hpp"
#include "pgfl/multiset.hpp"
#include "test_support.hpp"

using namespace pgfl;

TEST_CASE("enumerate_subsets yields the full power set in mask order")
{
    CHECK(enumerate_subsets(0) == std::vector<IndexSubset>{IndexSubset{}});

    const auto two = enumerate_subsets(2);
    REQUIRE(two.size() == 4);
    CHECK(two[0].indices.empty());
    CHECK(two[1].indices == std::vector<int>{0});
    CHECK(two[2].indices == std::vector<int>{1});
    CHECK(two[3].indices == std::vector<int>{0, 1});

    const auto five = enumerate_subsets(5);
    std::set<std::vector<int>> seen;
    for (const IndexSubset& subset : five)
        seen.insert(subset.indices);
    CHECK(five.size() == 32);
    CHECK(seen == testing::brute_force_subsets(5));

    for (int n = 0; n <= 12; ++n)
        CHECK(enumerate_subsets(n).size() == (std::size_t{1} << n));

    CHECK_THROWS_AS(enumerate_subsets(-1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_subsets(13), std::invalid_argument);
}

TEST_CASE("enumerate_partitions emits restricted-growth order on three elements")
{
    const auto partitions = enumerate_partitions(IndexSubset::full(3));
    REQUIRE(partitions.size() == 5);
    const auto blocks_of = [](const SetPartition& p) {
        std::vector<std::vector<int>> blocks;
        for (const IndexSubset& b : p.blocks)
            blocks.push_back(b.indices);
        return blocks;
    };
    CHECK(blocks_of(partitions[0]) == std::vector<std::vector<int>>{{0, 1, 2}});
    CHECK(blocks_of(partitions[1]) == std::vector<std::vector<int>>{{0, 1}, {2}});
    CHECK(blocks_of(partitions[2]) == std::vector<std::vector<int>>{{0, 2}, {1}});
    CHECK(blocks_of(partitions[3]) == std::vector<std::vector<int>>{{0}, {1, 2}});
    CHECK(blocks_of(partitions[4]) == std::vector<std::vector<int>>{{0}, {1}, {2}});
}

TEST_CASE("empty ground set has exactly one partition with zero blocks")
{
    const auto partitions = enumerate_partitions(IndexSubset{});
    REQUIRE(partitions.size() == 1);
    CHECK(partitions[0].block_count() == 0);
}

TEST_CASE("partition enumeration agrees with brute force and Bell numbers")
{
    // Full set equality against the naive recursive oracle.
    for (int n = 0; n <= 6; ++n) {
        std::set<testing::BlockSet> seen;
        for_each_partition(IndexSubset::full(n), [&](const SetPartition& p) {
            testing::BlockSet blocks;
            for (const IndexSubset& b : p.blocks)
                blocks.insert(b.indices);
            CHECK(blocks.size() == static_cast<std::size_t>(p.block_count()));
            seen.insert(std::move(blocks));
        });
        CHECK(seen == testing::brute_force_partitions(IndexSubset::full(n).indices));
    }

    // Counts up the configured cap.
    for (int n = 0; n <= 10; ++n) {
        std::size_t count = 0;
        for_each_partition(IndexSubset::full(n), [&](const SetPartition&) { ++count; });
        CHECK(count == bell_number(n));
    }

    // Works on sparse ground sets, not just {0..n-1}.
    const IndexSubset ground{{2, 5, 9}};
    const auto sparse = enumerate_partitions(ground);
    CHECK(sparse.size() == 5);
    CHECK(sparse[2].blocks[0].indices == std::vector<int>{2, 9});
}

TEST_CASE("every emitted partition is a partition in canonical block order")
{
    for (int n = 0; n <= 7; ++n) {
        const IndexSubset ground = IndexSubset::full(n);
        for_each_partition(ground, [&](const SetPartition& p) {
            std::vector<int> covered;
            int previous_min = -1;
            for (const IndexSubset& block : p.blocks) {
                REQUIRE(!block.empty());
                CHECK(std::is_sorted(block.indices.begin(), block.indices.end()));
                CHECK(block.indices.front() > previous_min); // blocks ordered by smallest element
                previous_min = block.indices.front();
                covered.insert(covered.end(), block.indices.begin(), block.indices.end());
            }
            std::sort(covered.begin(), covered.end());
            CHECK(covered == ground.indices); // disjoint (no duplicates) and covering
        });
    }
}

TEST_CASE("bell_number follows the triangle recurrence")
{
    const std::uint64_t expected[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570};
    for (int n = 0; n < 12; ++n)
        CHECK(bell_number(n) == expected[n]);
    CHECK_THROWS_AS(bell_number(26), std::invalid_argument);
    CHECK_THROWS_AS(bell_number(-1), std::invalid_argument);
}

TEST_CASE("binomial transform of Bell numbers gives the next Bell number")
{
    // sum_k C(n,k) B(k) = B(n+1): the term count of the quotient rule's
    // double sum at order n.
    for (int n = 0; n <= 9; ++n) {
        std::uint64_t total = 0;
        for (int k = 0; k <= n; ++k)
            total += testing::binomial_u64(n, k) * bell_number(k);
        CHECK(total == bell_number(n + 1));
    }
}

TEST_CASE("canonicalize folds tuples and counts orderings")
{
    // (b, a) on states a=0, b=1
    const std::vector<int> ba{1, 0};
    const auto canonical_ba = canonicalize(ba);
    CHECK(canonical_ba.multiset.entries == std::vector<std::pair<int, int>>{{0, 1}, {1, 1}});
    CHECK(canonical_ba.permutation_multiplicity == 2);

    const std::vector<int> aaa{0, 0, 0};
    CHECK(canonicalize(aaa).permutation_multiplicity == 1);

    const std::vector<int> aabc{0, 0, 1, 2};
    const auto canonical = canonicalize(aabc);
    CHECK(canonical.permutation_multiplicity == 12);
    CHECK(canonical.permutation_multiplicity == testing::brute_force_ordering_count(aabc));

    CHECK(canonicalize(std::vector<int>{}).multiset.empty());
    CHECK(canonicalize(std::vector<int>{}).permutation_multiplicity == 1);
}

TEST_CASE("ordering counts over all multisets of size n sum to M^n")
{
    for (int M = 1; M <= 4; ++M) {
        for (int n = 0; n <= 6; ++n) {
            std::uint64_t total = 0;
            for (const Multiset& m : enumerate_multisets(M, n))
                total += canonicalize(m.expand()).permutation_multiplicity;
            std::uint64_t expected = 1;
            for (int i = 0; i < n; ++i)
                expected *= static_cast<std::uint64_t>(M);
            CHECK(total == expected);
        }
    }
}

TEST_CASE("multiset ordering is lexicographic on expanded tuples")
{
    const auto multisets = enumerate_multisets(3, 2);
    REQUIRE(multisets.size() == 6);
    CHECK(std::is_sorted(multisets.begin(), multisets.end(),
                         [](const Multiset& a, const Multiset& b) { return a < b; }));
    CHECK(multisets[0].expand() == std::vector<int>{0, 0});
    CHECK(multisets[1].expand() == std::vector<int>{0, 1});
    CHECK(multisets[5].expand() == std::vector<int>{2, 2});

    Multiset grown = multisets[0].inserting(1);
    CHECK(grown.expand() == std::vector<int>{0, 0, 1});
    CHECK(grown.size() == 3);
}
