#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "pgfl/combinatorics.hpp"
#include "pgfl/errors.hpp"
#include "pgfl/scalar.hpp"

namespace pgfl {

/// Truncated formal power series: coeffs[k] = f^(k)(0) / k!, closed at a
/// fixed truncation order (inclusive).
template <typename T>
struct PowerSeries {
    static_assert(is_scalar_v<T>);

    std::vector<T> coeffs; // size = order + 1

    PowerSeries() = default;
    explicit PowerSeries(std::vector<T> c) : coeffs(std::move(c)) {}

    static PowerSeries zero(int order) { return PowerSeries(std::vector<T>(static_cast<std::size_t>(order) + 1, T(0))); }

    static PowerSeries constant(const T& value, int order)
    {
        PowerSeries s = zero(order);
        s.coeffs[0] = value;
        return s;
    }

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    const T& at0() const { return coeffs[0]; }

    friend bool operator==(const PowerSeries&, const PowerSeries&) = default;
};

/// d[k] = k-th derivative of a function at a fixed point, k = 0..n.
template <typename T>
using DerivativeVector = std::vector<T>;

namespace detail {

template <typename T>
void require_same_order(const PowerSeries<T>& a, const PowerSeries<T>& b, const char* what)
{
    if (a.order() != b.order())
        throw std::invalid_argument(std::string(what) + ": order mismatch");
}

template <typename T>
void require_length(const DerivativeVector<T>& d, int n, const char* what)
{
    if (static_cast<int>(d.size()) < n + 1)
        throw std::invalid_argument(std::string(what) + ": derivative vector shorter than n+1");
}

} // namespace detail

template <typename T>
PowerSeries<T> series_add(const PowerSeries<T>& a, const PowerSeries<T>& b)
{
    detail::require_same_order(a, b, "series_add");
    PowerSeries<T> sum = a;
    for (std::size_t k = 0; k < sum.coeffs.size(); ++k)
        sum.coeffs[k] += b.coeffs[k];
    return sum;
}

template <typename T>
PowerSeries<T> series_scale(const T& factor, const PowerSeries<T>& a)
{
    PowerSeries<T> scaled = a;
    for (T& c : scaled.coeffs)
        c *= factor;
    return scaled;
}

/// Cauchy product truncated at the common order.
template <typename T>
PowerSeries<T> series_mul(const PowerSeries<T>& a, const PowerSeries<T>& b)
{
    detail::require_same_order(a, b, "series_mul");
    PowerSeries<T> product = PowerSeries<T>::zero(a.order());
    for (int k = 0; k <= a.order(); ++k) {
        T acc(0);
        for (int j = 0; j <= k; ++j)
            acc += a.coeffs[static_cast<std::size_t>(j)] * b.coeffs[static_cast<std::size_t>(k - j)];
        product.coeffs[static_cast<std::size_t>(k)] = acc;
    }
    return product;
}

/// Long division: the unique h with h*g = f at the truncation order,
/// h_k = (f_k - sum_{j<k} h_j g_{k-j}) / g_0. This is the independent
/// oracle against which the combinatorial quotient rule is checked.
template <typename T>
PowerSeries<T> series_div(const PowerSeries<T>& f, const PowerSeries<T>& g)
{
    detail::require_same_order(f, g, "series_div");
    if (g.at0() == T(0))
        throw ZeroConstantTermError("series_div: divisor has zero constant term");
    PowerSeries<T> h = PowerSeries<T>::zero(f.order());
    for (int k = 0; k <= f.order(); ++k) {
        T acc = f.coeffs[static_cast<std::size_t>(k)];
        for (int j = 0; j < k; ++j)
            acc -= h.coeffs[static_cast<std::size_t>(j)] * g.coeffs[static_cast<std::size_t>(k - j)];
        h.coeffs[static_cast<std::size_t>(k)] = T(acc / g.coeffs[0]);
    }
    return h;
}

/// n-th derivative of a product from the derivatives of its factors,
/// evaluated as the sum over all 2^n subsets of n equal increments: each
/// subset Phi contributes f^(|Phi|) * g^(n-|Phi|). In exact mode the
/// result is cross-checked against the collapsed binomial form
/// sum_k C(n,k) f^(k) g^(n-k).
template <typename T>
T leibniz_nth(const DerivativeVector<T>& f, const DerivativeVector<T>& g, int n)
{
    detail::require_length(f, n, "leibniz_nth");
    detail::require_length(g, n, "leibniz_nth");
    T subset_sum(0);
    for_each_subset_mask(n, [&](std::uint32_t mask) {
        const int k = std::popcount(mask);
        subset_sum += f[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(n - k)];
    });
    if constexpr (is_rational_v<T>) {
        T binomial_form(0);
        T coeff(1);
        for (int k = 0; k <= n; ++k) {
            binomial_form += coeff * f[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(n - k)];
            coeff = T(coeff * T(n - k) / T(k + 1));
        }
        if (subset_sum != binomial_form)
            throw std::logic_error("leibniz_nth: subset sum disagrees with binomial form");
    }
    return subset_sum;
}

/// n-th derivative of a composition f(g(y)) via the partition sum: each set
/// partition pi of the n increments contributes f^(|pi|)(g(y)) times the
/// product over blocks w of g^(|w|)(y). f[k] must hold f^(k) evaluated at
/// g(y), g[k] the k-th derivative of g at y.
template <typename T>
T faadibruno_nth(const DerivativeVector<T>& f, const DerivativeVector<T>& g, int n)
{
    detail::require_length(f, n, "faadibruno_nth");
    detail::require_length(g, n, "faadibruno_nth");
    T total(0);
    for_each_partition(IndexSubset::full(n), [&](const SetPartition& pi) {
        T term = f[static_cast<std::size_t>(pi.block_count())];
        for (const IndexSubset& block : pi.blocks)
            term *= g[static_cast<std::size_t>(block.size())];
        total += term;
    });
    return total;
}

/// n-th derivative of 1/g(y): sum over set partitions pi of the increments
/// of (-1)^|pi| |pi|! / g0^(|pi|+1) times the product of block derivatives
/// of g. Composes the scalar base case d^k(1/x) = (-1)^k k! / x^(k+1)
/// through the partition (chain) rule.
template <typename T>
T reciprocal_nth(const DerivativeVector<T>& g, int n)
{
    detail::require_length(g, n, "reciprocal_nth");
    if (g[0] == T(0))
        throw ZeroConstantTermError("reciprocal_nth: zero constant term");
    T total(0);
    for_each_partition(IndexSubset::full(n), [&](const SetPartition& pi) {
        const int blocks = pi.block_count();
        T term = T(factorial<T>(blocks) / pow_int(g[0], blocks + 1));
        if (blocks % 2 != 0)
            term = -term;
        for (const IndexSubset& block : pi.blocks)
            term *= g[static_cast<std::size_t>(block.size())];
        total += term;
    });
    return total;
}

/// Higher-order quotient rule: the n-th derivative of f/g as a double sum
/// over subsets Pi of the n increments and set partitions pi of Pi,
///
///   sum_{Pi} [ sum_{pi of Pi} (-1)^|pi| |pi|! / g0^(|pi|+1)
///              * prod_{blocks w in pi} g^(|w|) ] * f^(n-|Pi|).
///
/// The empty subset carries one empty partition (empty product = 1,
/// prefactor 1/g0), so the n = 0 value is f0/g0. Subsets are visited in
/// ascending mask order and partitions in restricted-growth order, which
/// fixes the accumulation order in float mode.
template <typename T>
T quotient_nth(const DerivativeVector<T>& f, const DerivativeVector<T>& g, int n)
{
    detail::require_length(f, n, "quotient_nth");
    detail::require_length(g, n, "quotient_nth");
    if (g[0] == T(0))
        throw ZeroConstantTermError("quotient_nth: zero constant term");
    T total(0);
    for_each_subset_mask(n, [&](std::uint32_t mask) {
        const IndexSubset subset = IndexSubset::from_mask(mask);
        T inner(0);
        for_each_partition(subset, [&](const SetPartition& pi) {
            const int blocks = pi.block_count();
            T term = T(factorial<T>(blocks) / pow_int(g[0], blocks + 1));
            if (blocks % 2 != 0)
                term = -term;
            for (const IndexSubset& block : pi.blocks)
                term *= g[static_cast<std::size_t>(block.size())];
            inner += term;
        });
        total += inner * f[static_cast<std::size_t>(n - subset.size())];
    });
    return total;
}

/// First-order forward difference (Psi(psi + eps*xi) - Psi(psi)) / eps,
/// the finite-eps approximation of the directional derivative of a series
/// functional. Float mode only.
template <typename Functional>
double finite_difference_differential(Functional&& functional, const PowerSeries<double>& psi,
                                      const PowerSeries<double>& xi, double eps)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("finite_difference_differential: eps must be positive");
    const PowerSeries<double> shifted = series_add(psi, series_scale(eps, xi));
    return (functional(shifted) - functional(psi)) / eps;
}

/// d[k] = k! * coeffs[k]: the derivatives at 0 of the function the series
/// represents.
template <typename T>
DerivativeVector<T> series_to_derivatives(const PowerSeries<T>& s)
{
    DerivativeVector<T> d(s.coeffs.size());
    for (int k = 0; k <= s.order(); ++k)
        d[static_cast<std::size_t>(k)] = T(s.coeffs[static_cast<std::size_t>(k)] * factorial<T>(k));
    return d;
}

template <typename T>
PowerSeries<T> derivatives_to_series(const DerivativeVector<T>& d)
{
    PowerSeries<T> s = PowerSeries<T>::zero(static_cast<int>(d.size()) - 1);
    for (std::size_t k = 0; k < d.size(); ++k)
        s.coeffs[k] = T(d[k] / factorial<T>(static_cast<int>(k)));
    return s;
}

/// Deterministic fixture: coefficients k/4 with k drawn uniformly from
/// [-12, 12], so values lie in [-3, 3]. With `nonzero_constant` the
/// constant term is redrawn until it is nonzero.
inline PowerSeries<Rational> random_series(int order, std::uint64_t seed, bool nonzero_constant)
{
    std::mt19937_64 rng(seed);
    const auto draw = [&] {
        const int numerator = static_cast<int>(rng() % 25) - 12;
        Rational value(numerator, 4);
        value.canonicalize();
        return value;
    };
    PowerSeries<Rational> s = PowerSeries<Rational>::zero(order);
    for (int k = 0; k <= order; ++k)
        s.coeffs[static_cast<std::size_t>(k)] = draw();
    if (nonzero_constant)
        while (s.coeffs[0] == 0)
            s.coeffs[0] = draw();
    return s;
}

} // namespace pgfl
