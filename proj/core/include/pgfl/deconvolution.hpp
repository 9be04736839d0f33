#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "pgfl/combinatorics.hpp"
#include "pgfl/errors.hpp"
#include "pgfl/process.hpp"

namespace pgfl {

/// Diagnostics for a deconvolution output. The quotient of two generating
/// functionals need not be a probability process; instead of rejecting such
/// outputs the operation quantifies how far they fall outside the class.
template <typename T>
struct DeconvolutionReport {
    T min_density{};                 // most negative recovered value, 0 if none negative
    std::int64_t negative_count = 0; // values (including r0) below zero
    std::uint64_t term_count = 0;    // (subset, partition) pairs across all targets
    T mass{};                        // normalization mass of the output
    bool valid_process = false;      // densities >= 0 and mass = 1 within mode tolerance
};

template <typename T>
struct DeconvolutionResult {
    JanossyProcess<T> process;
    DeconvolutionReport<T> report;
};

namespace detail {

template <typename T>
bool mass_is_unit(const T& mass)
{
    if constexpr (is_rational_v<T>) {
        return mass == T(1);
    } else {
        return std::abs(mass - 1.0) <= kFloatMassTolerance;
    }
}

/// Multiset of the expanded points selected by `mask`.
inline Multiset subset_points(const std::vector<int>& points, std::uint32_t mask)
{
    Multiset m;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (mask & (std::uint32_t{1} << i))
            m = m.inserting(points[i]);
    return m;
}

} // namespace detail

/// Superposition of two independent processes: the p.g.fl.s multiply, so
/// each density is a product-rule sum over labeled subsets,
/// p_n(x_1..x_n) = sum_{Phi} q(points of Phi) * r(points of complement),
/// and p0 = q0 * r0. Output truncation order is min of the input orders;
/// if mass escapes that order the output is flagged tail_mass_allowed.
template <typename T>
JanossyProcess<T> superpose(const JanossyProcess<T>& q_process, const JanossyProcess<T>& r_process)
{
    require_compatible(q_process, r_process, "superpose");
    const int order = std::min(q_process.max_order, r_process.max_order);

    JanossyProcess<T> out;
    out.space = q_process.space;
    out.max_order = order;
    out.p0 = T(q_process.p0 * r_process.p0);

    for (int n = 1; n <= order; ++n) {
        for (const Multiset& target : enumerate_multisets(out.space.size(), n)) {
            const std::vector<int> points = target.expand();
            T acc(0);
            for_each_subset_mask(n, [&](std::uint32_t mask) {
                const Multiset q_part = detail::subset_points(points, mask);
                const Multiset r_part = detail::subset_points(points, ~mask);
                acc += q_process.density(q_part) * r_process.density(r_part);
            });
            out.densities.emplace(target, std::move(acc));
        }
    }

    out.tail_mass_allowed = q_process.tail_mass_allowed || r_process.tail_mass_allowed
                            || !detail::mass_is_unit(normalization_mass(out));
    return out;
}

/// Deconvolution: recover the Janossy densities of the factor G2 = G / G1
/// from the superposed process (densities p) and one component (densities
/// q). For each target tuple x_1..x_n,
///
///   r(x_1..x_n) = sum over subsets Pi of the labels of
///                   [ sum over set partitions pi of Pi:
///                       (-1)^|pi| |pi|! / q0^(|pi|+1)
///                       * prod over blocks w of q(points of w) ]
///                 * p(points outside Pi),
///
/// and r0 = p0 / q0. The empty subset contributes p(x_1..x_n) / q0 through
/// the zero-block partition. Inner partition sums depend only on the
/// multiset of Pi's points and are memoized on it. Subsets are enumerated
/// in ascending mask order and partitions in restricted-growth order, which
/// pins the float-mode accumulation order; the report's term_count counts
/// every (subset, partition) pair of the double sum whether or not the
/// memo short-circuits its evaluation.
template <typename T>
DeconvolutionResult<T> deconvolve(const JanossyProcess<T>& p_process, const JanossyProcess<T>& q_process)
{
    require_compatible(p_process, q_process, "deconvolve");
    if (q_process.p0 == T(0))
        throw ZeroConstantTermError("deconvolve: divisor process has q0 = 0");

    const T& q0 = q_process.p0;
    const int order = std::min(p_process.max_order, q_process.max_order);

    DeconvolutionResult<T> result;
    JanossyProcess<T>& out = result.process;
    DeconvolutionReport<T>& report = result.report;

    out.space = p_process.space;
    out.max_order = order;
    out.p0 = T(p_process.p0 / q0);

    std::map<Multiset, T> inner_cache; // partition sum keyed by Pi's points
    const auto inner_sum = [&](const Multiset& pi_points) -> const T& {
        auto it = inner_cache.find(pi_points);
        if (it != inner_cache.end())
            return it->second;
        const std::vector<int> sub_points = pi_points.expand();
        T inner(0);
        for_each_partition(IndexSubset::full(static_cast<int>(sub_points.size())), [&](const SetPartition& pi) {
            const int blocks = pi.block_count();
            T term = T(factorial<T>(blocks) / pow_int(q0, blocks + 1));
            if (blocks % 2 != 0)
                term = -term;
            for (const IndexSubset& block : pi.blocks) {
                Multiset block_points;
                for (int index : block.indices)
                    block_points = block_points.inserting(sub_points[static_cast<std::size_t>(index)]);
                term *= q_process.density(block_points);
            }
            inner += term;
        });
        return inner_cache.emplace(pi_points, std::move(inner)).first->second;
    };

    report.term_count = 1; // n = 0: the empty subset's empty partition
    for (int n = 1; n <= order; ++n) {
        for (const Multiset& target : enumerate_multisets(out.space.size(), n)) {
            const std::vector<int> points = target.expand();
            T acc(0);
            for_each_subset_mask(n, [&](std::uint32_t mask) {
                const Multiset pi_points = detail::subset_points(points, mask);
                const Multiset p_points = detail::subset_points(points, ~mask);
                report.term_count += bell_number(pi_points.size());
                acc += inner_sum(pi_points) * p_process.density(p_points);
            });
            out.densities.emplace(target, std::move(acc));
        }
    }

    report.min_density = T(0);
    report.negative_count = 0;
    const auto scan = [&](const T& value) {
        if (value < T(0)) {
            ++report.negative_count;
            if (value < report.min_density)
                report.min_density = value;
        }
    };
    scan(out.p0);
    for (const auto& [multiset, value] : out.densities)
        scan(value);
    report.mass = normalization_mass(out);
    report.valid_process = report.negative_count == 0 && detail::mass_is_unit(report.mass);
    out.tail_mass_allowed = p_process.tail_mass_allowed || q_process.tail_mass_allowed
                            || !detail::mass_is_unit(report.mass);
    return result;
}

/// Max absolute residual of the factorization identity G(psi) =
/// G1(psi) * G2(psi) over a list of test functions. Zero (exactly, in
/// rational mode) whenever `r_process` is a complete quotient of exact-
/// support inputs.
template <typename T>
T pointwise_quotient_check(const JanossyProcess<T>& p_process, const JanossyProcess<T>& q_process,
                           const JanossyProcess<T>& r_process, const std::vector<TestFunction<T>>& samples)
{
    require_compatible(p_process, q_process, "pointwise_quotient_check");
    require_compatible(p_process, r_process, "pointwise_quotient_check");
    T worst(0);
    for (const TestFunction<T>& psi : samples) {
        T residual = T(pgfl_eval(p_process, psi) - pgfl_eval(q_process, psi) * pgfl_eval(r_process, psi));
        if (residual < T(0))
            residual = -residual;
        if (residual > worst)
            worst = residual;
    }
    return worst;
}

} // namespace pgfl
