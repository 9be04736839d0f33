#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pgfl/errors.hpp"
#include "pgfl/multiset.hpp"
#include "pgfl/scalar.hpp"

namespace pgfl {

/// Finite labeled state space with a positive quadrature weight per point.
/// Unit weights give the counting measure; other weights let a discrete
/// space stand in for a continuous one.
template <typename T>
struct StateSpace {
    static_assert(is_scalar_v<T>);

    std::vector<std::string> labels;
    std::vector<T> weights;

    static StateSpace counting(std::vector<std::string> names)
    {
        StateSpace space;
        space.weights.assign(names.size(), T(1));
        space.labels = std::move(names);
        return space;
    }

    int size() const { return static_cast<int>(labels.size()); }

    void validate() const
    {
        if (labels.empty())
            throw std::invalid_argument("StateSpace: at least one point required");
        if (labels.size() != weights.size())
            throw std::invalid_argument("StateSpace: labels/weights size mismatch");
        for (const T& w : weights)
            if (!(w > T(0)))
                throw std::invalid_argument("StateSpace: weights must be positive");
        std::vector<std::string> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("StateSpace: labels must be distinct");
    }

    friend bool operator==(const StateSpace&, const StateSpace&) = default;
};

/// Values of a test function, one per state-space point.
template <typename T>
struct TestFunction {
    std::vector<T> values;

    static TestFunction constant(const T& value, int point_count)
    {
        return TestFunction{std::vector<T>(static_cast<std::size_t>(point_count), value)};
    }
};

/// A finite point process stored by its void probability p0 and symmetric
/// Janossy density values on multisets of sizes 1..max_order. Densities are
/// stored once per multiset; tuple formulas multiply by the permutation
/// multiplicity. Entries are kept dense (zeros included) so serialized
/// processes are canonical. `tail_mass_allowed` marks processes whose mass
/// beyond max_order is intentionally missing (e.g. Poisson truncations).
template <typename T>
struct JanossyProcess {
    static_assert(is_scalar_v<T>);

    StateSpace<T> space;
    int max_order = 0;
    T p0{};
    std::map<Multiset, T> densities;
    bool tail_mass_allowed = false;

    /// Stored density; the empty multiset reads p0, absent keys read 0.
    T density(const Multiset& m) const
    {
        if (m.empty())
            return p0;
        auto it = densities.find(m);
        return it == densities.end() ? T(0) : it->second;
    }

    void set_density(Multiset m, T value)
    {
        if (m.empty())
            p0 = std::move(value);
        else
            densities[std::move(m)] = std::move(value);
    }
};

template <typename T>
void require_compatible(const JanossyProcess<T>& a, const JanossyProcess<T>& b, const char* what)
{
    if (!(a.space == b.space))
        throw CompatibilityError(std::string(what) + ": state spaces differ");
}

namespace detail {

/// 1 / prod_i m_i!  ==  (permutation multiplicity) / n!
template <typename T>
T symmetry_factor(const Multiset& m)
{
    std::uint64_t product = 1;
    for (const auto& [state, mult] : m.entries)
        product *= factorial_u64(mult);
    return T(1) / T(static_cast<unsigned long>(product));
}

template <typename T>
T weight_product(const StateSpace<T>& space, const Multiset& m)
{
    T product(1);
    for (const auto& [state, mult] : m.entries)
        product *= pow_int(space.weights[static_cast<std::size_t>(state)], mult);
    return product;
}

} // namespace detail

/// Total probability mass p0 + sum_n (1/n!) sum_tuples p_n * prod weights,
/// folded over multisets. Equals 1 for a normalized exact-support process.
template <typename T>
T normalization_mass(const JanossyProcess<T>& process)
{
    T mass = process.p0;
    for (const auto& [multiset, value] : process.densities)
        mass += value * detail::weight_product(process.space, multiset) * detail::symmetry_factor<T>(multiset);
    return mass;
}

/// Probability generating functional at a test function psi:
/// p0 + sum_n (1/n!) sum_tuples p_n(x_1..x_n) prod_i psi(x_i) w(x_i).
template <typename T>
T pgfl_eval(const JanossyProcess<T>& process, const TestFunction<T>& psi)
{
    if (static_cast<int>(psi.values.size()) != process.space.size())
        throw CompatibilityError("pgfl_eval: test function does not match state space");
    T total = process.p0;
    for (const auto& [multiset, value] : process.densities) {
        T factor(1);
        for (const auto& [state, mult] : multiset.entries) {
            const auto s = static_cast<std::size_t>(state);
            factor *= pow_int(T(psi.values[s] * process.space.weights[s]), mult);
        }
        total += value * factor * detail::symmetry_factor<T>(multiset);
    }
    return total;
}

/// Process with no points: p0 = 1 and zero densities up to `order`.
template <typename T>
JanossyProcess<T> empty_process(StateSpace<T> space, int order)
{
    JanossyProcess<T> process;
    process.space = std::move(space);
    process.max_order = order;
    process.p0 = T(1);
    for (int n = 1; n <= order; ++n)
        for (Multiset& m : enumerate_multisets(process.space.size(), n))
            process.densities.emplace(std::move(m), T(0));
    return process;
}

/// Poisson process with per-point intensity lambda: p_n(x_1..x_n) =
/// p0 * prod_i lambda(x_i), truncated at `order`. In float mode
/// p0 = exp(-Lambda) with Lambda = sum lambda(x) w(x); in rational mode the
/// irrational normalizing factor is dropped (p0 = 1), which preserves all
/// density ratios exactly.
template <typename T>
JanossyProcess<T> poisson_process(StateSpace<T> space, const std::vector<T>& intensity, int order)
{
    if (static_cast<int>(intensity.size()) != space.size())
        throw std::invalid_argument("poisson_process: intensity does not match state space");
    bool any_positive = false;
    T total_rate(0);
    for (int i = 0; i < space.size(); ++i) {
        const T& rate = intensity[static_cast<std::size_t>(i)];
        if (rate < T(0))
            throw std::invalid_argument("poisson_process: negative intensity");
        if (rate > T(0))
            any_positive = true;
        total_rate += rate * space.weights[static_cast<std::size_t>(i)];
    }

    JanossyProcess<T> process;
    process.space = std::move(space);
    process.max_order = order;
    if constexpr (is_rational_v<T>)
        process.p0 = T(1);
    else
        process.p0 = std::exp(-total_rate);
    process.tail_mass_allowed = any_positive;

    for (int n = 1; n <= order; ++n) {
        for (Multiset& m : enumerate_multisets(process.space.size(), n)) {
            T value = process.p0;
            for (const auto& [state, mult] : m.entries)
                value *= pow_int(intensity[static_cast<std::size_t>(state)], mult);
            process.densities.emplace(std::move(m), std::move(value));
        }
    }
    return process;
}

/// Seeded random process with nonnegative rational densities, p0 > 0, and
/// normalization mass exactly 1. Densities above `support_order` are zero,
/// so the declared max_order can exceed the true support. Identical seeds
/// give identical processes.
inline JanossyProcess<Rational> random_process(StateSpace<Rational> space, int max_order,
                                               std::uint64_t seed, int support_order = -1)
{
    if (support_order < 0 || support_order > max_order)
        support_order = max_order;
    std::mt19937_64 rng(seed);

    JanossyProcess<Rational> process;
    process.space = std::move(space);
    process.max_order = max_order;
    // p0 in [1, 2] keeps the void probability dominant, densities in
    // [0, 1/4]; the common rescale below cannot disturb either ratio.
    process.p0 = Rational(8 + static_cast<int>(rng() % 9), 8);
    process.p0.canonicalize();
    for (int n = 1; n <= max_order; ++n) {
        for (Multiset& m : enumerate_multisets(process.space.size(), n)) {
            Rational value(0);
            if (n <= support_order) {
                value = Rational(static_cast<int>(rng() % 9), 32);
                value.canonicalize();
            }
            process.densities.emplace(std::move(m), std::move(value));
        }
    }

    const Rational mass = normalization_mass(process);
    process.p0 /= mass;
    for (auto& [multiset, value] : process.densities)
        value /= mass;
    return process;
}

/// Deterministic test function with values in [0, 1] (sixteenths).
inline TestFunction<Rational> random_test_function(const StateSpace<Rational>& space, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    TestFunction<Rational> psi;
    psi.values.reserve(static_cast<std::size_t>(space.size()));
    for (int i = 0; i < space.size(); ++i) {
        Rational value(static_cast<int>(rng() % 17), 16);
        value.canonicalize();
        psi.values.push_back(std::move(value));
    }
    return psi;
}

template <typename To, typename From>
JanossyProcess<To> convert_process(const JanossyProcess<From>& input)
{
    JanossyProcess<To> output;
    output.space.labels = input.space.labels;
    output.space.weights.reserve(input.space.weights.size());
    for (const From& w : input.space.weights)
        output.space.weights.push_back(scalar_cast<To>(w));
    output.max_order = input.max_order;
    output.p0 = scalar_cast<To>(input.p0);
    for (const auto& [multiset, value] : input.densities)
        output.densities.emplace(multiset, scalar_cast<To>(value));
    output.tail_mass_allowed = input.tail_mass_allowed;
    return output;
}

template <typename T>
TestFunction<T> convert_test_function(const TestFunction<Rational>& psi)
{
    TestFunction<T> out;
    out.values.reserve(psi.values.size());
    for (const Rational& v : psi.values)
        out.values.push_back(scalar_cast<T>(v));
    return out;
}

/// k-th directional differential of the p.g.fl. at psi = 0 with increments
/// xi_1..xi_k, by direct expansion: only the k-point term survives, and it
/// contributes (1/k!) sum over ordered k-tuples y of p_k(y) times
/// sum over assignments sigma of prod_i xi_sigma(i)(y_i) w(y_i).
template <typename T>
T pgfl_differential_at_zero(const JanossyProcess<T>& process, const std::vector<TestFunction<T>>& increments)
{
    const int k = static_cast<int>(increments.size());
    if (k == 0)
        return process.p0;
    if (k > process.max_order)
        throw std::invalid_argument("pgfl_differential_at_zero: differential order exceeds max_order");
    if (k > 6)
        throw std::invalid_argument("pgfl_differential_at_zero: order capped at 6 (k! expansion)");
    for (const TestFunction<T>& xi : increments)
        if (static_cast<int>(xi.values.size()) != process.space.size())
            throw CompatibilityError("pgfl_differential_at_zero: increment does not match state space");

    const int M = process.space.size();
    std::vector<int> tuple(static_cast<std::size_t>(k), 0);
    std::vector<int> assignment(static_cast<std::size_t>(k));
    T total(0);
    for (;;) {
        const T density = process.density(Multiset::from_points(tuple));
        if (!(density == T(0))) {
            // Sum the increment products over all k! assignments of
            // increments to tuple positions.
            std::iota(assignment.begin(), assignment.end(), 0);
            T assignment_sum(0);
            do {
                T product(1);
                for (int i = 0; i < k; ++i) {
                    const auto point = static_cast<std::size_t>(tuple[static_cast<std::size_t>(i)]);
                    product *= increments[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])].values[point]
                               * process.space.weights[point];
                }
                assignment_sum += product;
            } while (std::next_permutation(assignment.begin(), assignment.end()));
            total += density * assignment_sum;
        }
        // Odometer over ordered tuples in {0..M-1}^k.
        int i = k - 1;
        while (i >= 0 && tuple[static_cast<std::size_t>(i)] == M - 1)
            --i;
        if (i < 0)
            break;
        ++tuple[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            tuple[static_cast<std::size_t>(j)] = 0;
    }
    return T(total / factorial<T>(k));
}

/// Recover a stored density through the generating functional: differentiate
/// at psi = 0 along discrete Dirac increments (indicator of x_i divided by
/// its weight). For a consistently stored process the result equals the
/// density at `points` exactly.
template <typename T>
T janossy_consistency_check(const JanossyProcess<T>& process, std::span<const int> points)
{
    if (static_cast<int>(points.size()) > process.max_order)
        throw std::invalid_argument("janossy_consistency_check: tuple longer than max_order");
    std::vector<TestFunction<T>> increments;
    increments.reserve(points.size());
    for (int point : points) {
        if (point < 0 || point >= process.space.size())
            throw std::invalid_argument("janossy_consistency_check: point outside state space");
        TestFunction<T> dirac = TestFunction<T>::constant(T(0), process.space.size());
        const auto s = static_cast<std::size_t>(point);
        dirac.values[s] = T(T(1) / process.space.weights[s]);
        increments.push_back(std::move(dirac));
    }
    return pgfl_differential_at_zero(process, increments);
}

} // namespace pgfl
