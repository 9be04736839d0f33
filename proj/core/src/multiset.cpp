#include "pgfl/multiset.hpp"

#include <algorithm>
#include <stdexcept>

#include "pgfl/scalar.hpp"

namespace pgfl {

Multiset Multiset::from_points(std::span<const int> points)
{
    std::vector<int> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    Multiset m;
    for (int p : sorted) {
        if (!m.entries.empty() && m.entries.back().first == p)
            ++m.entries.back().second;
        else
            m.entries.emplace_back(p, 1);
    }
    return m;
}

int Multiset::size() const
{
    int total = 0;
    for (const auto& [state, mult] : entries)
        total += mult;
    return total;
}

std::vector<int> Multiset::expand() const
{
    std::vector<int> points;
    points.reserve(static_cast<std::size_t>(size()));
    for (const auto& [state, mult] : entries)
        points.insert(points.end(), static_cast<std::size_t>(mult), state);
    return points;
}

Multiset Multiset::inserting(int state) const
{
    Multiset m = *this;
    auto it = std::lower_bound(m.entries.begin(), m.entries.end(), state,
                               [](const auto& entry, int s) { return entry.first < s; });
    if (it != m.entries.end() && it->first == state)
        ++it->second;
    else
        m.entries.insert(it, {state, 1});
    return m;
}

bool operator<(const Multiset& lhs, const Multiset& rhs)
{
    // (index ascending, multiplicity descending) per entry reproduces
    // lexicographic order of the expanded tuples.
    const auto key = [](const std::pair<int, int>& e) { return std::pair(e.first, -e.second); };
    return std::lexicographical_compare(
        lhs.entries.begin(), lhs.entries.end(), rhs.entries.begin(), rhs.entries.end(),
        [&](const auto& a, const auto& b) { return key(a) < key(b); });
}

CanonicalTuple canonicalize(std::span<const int> points)
{
    const int n = static_cast<int>(points.size());
    if (n > 20)
        throw std::invalid_argument("canonicalize: tuple longer than 20");
    CanonicalTuple result{Multiset::from_points(points), factorial_u64(n)};
    for (const auto& [state, mult] : result.multiset.entries)
        result.permutation_multiplicity /= factorial_u64(mult);
    return result;
}

std::vector<Multiset> enumerate_multisets(int state_count, int n)
{
    if (state_count < 0 || n < 0)
        throw std::invalid_argument("enumerate_multisets: negative argument");
    std::vector<Multiset> result;
    if (n == 0) {
        result.emplace_back();
        return result;
    }
    if (state_count == 0)
        return result;

    std::vector<int> tuple(static_cast<std::size_t>(n), 0);
    // Odometer over nondecreasing tuples in lexicographic order.
    for (;;) {
        result.push_back(Multiset::from_points(tuple));
        int i = n - 1;
        while (i >= 0 && tuple[static_cast<std::size_t>(i)] == state_count - 1)
            --i;
        if (i < 0)
            return result;
        const int next = tuple[static_cast<std::size_t>(i)] + 1;
        for (int j = i; j < n; ++j)
            tuple[static_cast<std::size_t>(j)] = next;
    }
}

} // namespace pgfl
