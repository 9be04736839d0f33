#include "pgfl/scalar.hpp"

#include <cctype>
#include <stdexcept>

#include "pgfl/errors.hpp"

namespace pgfl {

namespace {

bool looks_like_integer(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

} // namespace

Rational rational_from_string(std::string_view text)
{
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    if (!looks_like_integer(num))
        throw ParseError("malformed rational: '" + std::string(text) + "'");
    if (slash != std::string_view::npos) {
        const std::string_view den = text.substr(slash + 1);
        if (!looks_like_integer(den))
            throw ParseError("malformed rational: '" + std::string(text) + "'");
        Rational value(std::string(num), 10);
        Rational denominator(std::string(den), 10);
        if (denominator == 0)
            throw ParseError("zero denominator in rational: '" + std::string(text) + "'");
        return Rational(value / denominator);
    }
    return Rational(std::string(num), 10);
}

std::string to_string(const Rational& value)
{
    return value.get_str();
}

std::uint64_t factorial_u64(int n)
{
    if (n < 0 || n > 20)
        throw std::invalid_argument("factorial_u64: n out of [0,20]");
    std::uint64_t result = 1;
    for (int k = 2; k <= n; ++k)
        result *= static_cast<std::uint64_t>(k);
    return result;
}

} // namespace pgfl
