#include <doctest.h>

#include <cmath>
#include <variant>

#include "pgfl/errors.hpp"
#include "pgfl/process.hpp"
#include "pgfl/process_io.hpp"
#include "test_support.hpp"

using namespace pgfl;

namespace {

StateSpace<Rational> two_point_space()
{
    return StateSpace<Rational>::counting({"a", "b"});
}

} // namespace

TEST_CASE("normalization mass of reference processes")
{
    const auto empty = empty_process(two_point_space(), 3);
    CHECK(normalization_mass(empty) == Rational(1));

    const auto bernoulli = testing::bernoulli_process(Rational(1, 2), Rational(1, 2), 2);
    CHECK(normalization_mass(bernoulli) == Rational(1));
    CHECK(!bernoulli.tail_mass_allowed);
}

TEST_CASE("poisson truncation mass equals one minus the tail")
{
    auto space = StateSpace<double>::counting({"a", "b"});
    const int order = 12;
    const auto process = poisson_process(space, {1.0, 2.0}, order);
    CHECK(process.tail_mass_allowed);

    const double rate = 3.0;
    double tail = 0.0;
    double term = std::exp(-rate);
    for (int n = 1; n <= 200; ++n) {
        term *= rate / n;
        if (n > order)
            tail += term;
    }
    CHECK(normalization_mass(process) == doctest::Approx(1.0 - tail).epsilon(1e-12));
}

TEST_CASE("pgfl evaluation specializations")
{
    for (std::uint64_t seed = 40; seed <= 50; ++seed) {
        const auto process = random_process(two_point_space(), 4, seed);
        CHECK(pgfl_eval(process, TestFunction<Rational>::constant(Rational(1), 2)) == normalization_mass(process));
        CHECK(pgfl_eval(process, TestFunction<Rational>::constant(Rational(0), 2)) == process.p0);
    }

    const auto process = random_process(two_point_space(), 4, 42);
    CHECK_THROWS_AS(pgfl_eval(process, TestFunction<Rational>::constant(Rational(1), 3)), CompatibilityError);
}

TEST_CASE("poisson pgfl at constant test functions matches the closed form")
{
    auto space = StateSpace<double>::counting({"a", "b"});
    const int order = 14;
    const auto process = poisson_process(space, {1.0, 2.0}, order);
    const double rate = 3.0;
    const double s = 0.5;

    // Independent truncated closed form: sum_{n<=N} e^-L (L s)^n / n!.
    double expected = 0.0;
    double term = std::exp(-rate);
    for (int n = 0; n <= order; ++n) {
        expected += term;
        term *= rate * s / (n + 1);
    }
    const double value = pgfl_eval(process, TestFunction<double>::constant(s, 2));
    CHECK(value == doctest::Approx(expected).epsilon(1e-12));

    // And the untruncated closed form up to the tail.
    double tail = 0.0;
    double tail_term = std::exp(-rate);
    for (int n = 1; n <= 200; ++n) {
        tail_term *= rate * s / n;
        if (n > order)
            tail += tail_term;
    }
    CHECK(std::abs(value - std::exp(rate * (s - 1.0))) <= tail + 1e-13);
}

TEST_CASE("poisson process densities")
{
    SUBCASE("zero intensity gives the empty process")
    {
        const auto process = poisson_process(two_point_space(), {Rational(0), Rational(0)}, 3);
        CHECK(process.p0 == Rational(1));
        CHECK(normalization_mass(process) == Rational(1));
        CHECK(!process.tail_mass_allowed);
    }

    SUBCASE("float mode carries the exponential factor")
    {
        auto space = StateSpace<double>::counting({"a", "b"});
        const auto process = poisson_process(space, {1.0, 2.0}, 3);
        Multiset ab;
        ab.entries = {{0, 1}, {1, 1}};
        CHECK(process.density(ab) == doctest::Approx(2.0 * std::exp(-3.0)).epsilon(1e-14));

        // Appending a point multiplies by its intensity; the exponential
        // factor cancels in the ratio.
        for (int n = 1; n < 3; ++n) {
            for (const Multiset& t : enumerate_multisets(2, n)) {
                for (int x = 0; x < 2; ++x)
                    CHECK(process.density(t.inserting(x)) / process.density(t)
                          == doctest::Approx(x == 0 ? 1.0 : 2.0).epsilon(1e-12));
            }
        }
    }

    SUBCASE("rational mode preserves density ratios exactly")
    {
        const auto process = poisson_process(two_point_space(), {Rational(1), Rational(2)}, 4);
        CHECK(process.tail_mass_allowed);
        Multiset a, b;
        a.entries = {{0, 1}};
        b.entries = {{1, 1}};
        CHECK(process.density(b) / process.density(a) == Rational(2));

        // p_{n+1}(t + x) / p_n(t) = lambda(x) for every stored pair.
        for (int n = 1; n < 4; ++n) {
            for (const Multiset& t : enumerate_multisets(2, n)) {
                for (int x = 0; x < 2; ++x) {
                    const Rational ratio(process.density(t.inserting(x)) / process.density(t));
                    CHECK(ratio == (x == 0 ? Rational(1) : Rational(2)));
                }
            }
        }
    }

    SUBCASE("negative intensity is rejected")
    {
        CHECK_THROWS_AS(poisson_process(two_point_space(), {Rational(-1), Rational(0)}, 2), std::invalid_argument);
    }
}

TEST_CASE("random processes are normalized, positive and reproducible")
{
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const auto process = random_process(two_point_space(), 4, seed);
        CHECK(normalization_mass(process) == Rational(1));
        CHECK(process.p0 > Rational(0));
        for (const auto& [multiset, value] : process.densities)
            CHECK(value >= Rational(0));
    }

    const auto first = random_process(two_point_space(), 3, 7);
    const auto second = random_process(two_point_space(), 3, 7);
    CHECK(process_to_text(first) == process_to_text(second));
    CHECK(process_to_text(first) != process_to_text(random_process(two_point_space(), 3, 8)));
}

TEST_CASE("support_order caps the nonzero densities")
{
    const auto process = random_process(two_point_space(), 5, 11, 2);
    for (const auto& [multiset, value] : process.densities) {
        if (multiset.size() > 2)
            CHECK(value == Rational(0));
    }
    CHECK(normalization_mass(process) == Rational(1));
}

TEST_CASE("janossy consistency check reproduces stored densities")
{
    SUBCASE("zeroth differential is evaluation at zero")
    {
        const auto process = random_process(two_point_space(), 3, 5);
        CHECK(janossy_consistency_check(process, std::vector<int>{}) == process.p0);
    }

    SUBCASE("bernoulli single point")
    {
        const auto bernoulli = testing::bernoulli_process(Rational(1, 2), Rational(1, 2), 2);
        const std::vector<int> point{0};
        CHECK(janossy_consistency_check(bernoulli, point) == Rational(1, 2));
    }

    SUBCASE("random processes, all tuples of size <= 3, including weighted spaces")
    {
        for (std::uint64_t seed = 1; seed <= 8; ++seed) {
            StateSpace<Rational> space;
            const int M = 1 + static_cast<int>(seed % 3);
            for (int i = 0; i < M; ++i)
                space.labels.push_back(std::string(1, static_cast<char>('a' + i)));
            // Half the seeds use non-unit quadrature weights.
            for (int i = 0; i < M; ++i) {
                Rational w = (seed % 2 == 0) ? Rational(i + 1, 2) : Rational(1);
                space.weights.push_back(w);
            }
            const auto process = random_process(space, 3, 100 + seed);
            for (int n = 0; n <= 3; ++n) {
                for (const Multiset& m : enumerate_multisets(M, n)) {
                    const auto points = m.expand();
                    CHECK(janossy_consistency_check(process, points) == process.density(m));
                }
            }
        }
    }

    SUBCASE("order above max_order is rejected")
    {
        const auto process = random_process(two_point_space(), 2, 3);
        const std::vector<int> points{0, 0, 1};
        CHECK_THROWS_AS(janossy_consistency_check(process, points), std::invalid_argument);
    }
}

TEST_CASE("pgfl differentials are multilinear in their increments")
{
    const auto process = random_process(two_point_space(), 3, 77);
    const auto xi1 = random_test_function(process.space, 1);
    const auto xi1_alt = random_test_function(process.space, 2);
    const auto xi2 = random_test_function(process.space, 3);

    const Rational alpha(3, 7);
    const Rational beta(-2, 5);
    TestFunction<Rational> combined;
    for (std::size_t i = 0; i < xi1.values.size(); ++i)
        combined.values.push_back(Rational(alpha * xi1.values[i] + beta * xi1_alt.values[i]));

    const Rational lhs = pgfl_differential_at_zero(process, {combined, xi2});
    const Rational rhs(alpha * pgfl_differential_at_zero(process, {xi1, xi2})
                       + beta * pgfl_differential_at_zero(process, {xi1_alt, xi2}));
    CHECK(lhs == rhs);
}

TEST_CASE("process files round-trip bit-exactly")
{
    SUBCASE("rational mode")
    {
        StateSpace<Rational> space;
        space.labels = {"a", "b"};
        space.weights = {Rational(1, 2), Rational(2)};
        const auto process = random_process(space, 3, 13);
        const std::string text = process_to_text(process);
        const AnyProcess parsed = parse_process_text(text);
        REQUIRE(std::holds_alternative<JanossyProcess<Rational>>(parsed));
        CHECK(process_to_text(parsed) == text);
    }

    SUBCASE("float mode")
    {
        const auto process = convert_process<double>(random_process(two_point_space(), 3, 17));
        const std::string text = process_to_text(process);
        const AnyProcess parsed = parse_process_text(text);
        REQUIRE(std::holds_alternative<JanossyProcess<double>>(parsed));
        CHECK(process_to_text(parsed) == text);
        CHECK(std::get<JanossyProcess<double>>(parsed).p0 == process.p0);
    }
}

TEST_CASE("malformed process documents are rejected")
{
    const char* valid = R"({
      "labels": ["a"], "weights": ["1"], "max_order": 1,
      "p0": "1/2", "densities": {"a": "1/2"}, "mode": "rational",
      "tail_mass_allowed": false})";
    CHECK_NOTHROW(parse_process_text(valid));

    CHECK_THROWS_AS(parse_process_text("not json"), ParseError);
    CHECK_THROWS_AS(parse_process_text(R"({"mode": "octal"})"), ParseError);

    const char* bad_rational = R"({
      "labels": ["a"], "weights": [1], "max_order": 1,
      "p0": 0.5, "densities": {}, "mode": "rational"})";
    CHECK_THROWS_AS(parse_process_text(bad_rational), ParseError);

    const char* zero_denominator = R"({
      "labels": ["a"], "weights": ["1"], "max_order": 1,
      "p0": "1/0", "densities": {}, "mode": "rational"})";
    CHECK_THROWS_AS(parse_process_text(zero_denominator), ParseError);

    const char* unknown_label = R"({
      "labels": ["a"], "weights": ["1"], "max_order": 1,
      "p0": "1", "densities": {"z": "1"}, "mode": "rational"})";
    CHECK_THROWS_AS(parse_process_text(unknown_label), ParseError);

    const char* oversized_key = R"({
      "labels": ["a"], "weights": ["1"], "max_order": 1,
      "p0": "1", "densities": {"a,a": "1"}, "mode": "rational"})";
    CHECK_THROWS_AS(parse_process_text(oversized_key), ParseError);

    const char* duplicate_key = R"({
      "labels": ["a", "b"], "weights": ["1", "1"], "max_order": 2,
      "p0": "1", "densities": {"a,b": "1", "b,a": "2"}, "mode": "rational"})";
    CHECK_THROWS_AS(parse_process_text(duplicate_key), ParseError);

    const char* negative_weight = R"({
      "labels": ["a"], "weights": ["-1"], "max_order": 1,
      "p0": "1", "densities": {}, "mode": "rational"})";
    CHECK_THROWS_AS(parse_process_text(negative_weight), ParseError);
}
