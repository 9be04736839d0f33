#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace pgfl {

/// Exact rational scalar (arbitrary-precision numerator/denominator).
/// GMP keeps values in lowest terms with a positive denominator after
/// every arithmetic operation.
using Rational = mpq_class;

template <typename T>
inline constexpr bool is_rational_v = std::is_same_v<T, Rational>;

/// A computation runs uniformly in one of two numeric modes: exact
/// rational or IEEE double ("float" in file headers).
template <typename T>
inline constexpr bool is_scalar_v = is_rational_v<T> || std::is_same_v<T, double>;

template <typename T>
const char* mode_name()
{
    static_assert(is_scalar_v<T>);
    return is_rational_v<T> ? "rational" : "float";
}

/// Absolute normalization slack accepted in float mode; rational mode is exact.
inline constexpr double kFloatMassTolerance = 1e-9;

/// Parse "p/q" or "p" (base 10). Throws ParseError on malformed input or a
/// zero denominator.
Rational rational_from_string(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" when q = 1.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }
inline double to_double(double value) { return value; }

template <typename To, typename From>
To scalar_cast(const From& value)
{
    static_assert(is_scalar_v<To> && is_scalar_v<From>);
    if constexpr (std::is_same_v<To, From>) {
        return value;
    } else if constexpr (std::is_same_v<To, double>) {
        return to_double(value);
    } else {
        return Rational(value); // exact: doubles are dyadic rationals
    }
}

/// n! for n <= 20 (fits in 64 bits).
std::uint64_t factorial_u64(int n);

template <typename T>
T factorial(int n)
{
    static_assert(is_scalar_v<T>);
    T result(1);
    for (int k = 2; k <= n; ++k)
        result *= T(k);
    return result;
}

/// base^k for k >= 0.
template <typename T>
T pow_int(const T& base, int k)
{
    T result(1);
    for (int i = 0; i < k; ++i)
        result *= base;
    return result;
}

} // namespace pgfl
