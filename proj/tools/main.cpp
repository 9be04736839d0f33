// pgfl: batch calculator for finite point processes stored as Janossy
// densities. Subcommands wrap the library's superposition, deconvolution
// and verification operations; all output is deterministic for fixed
// inputs and flags.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "pgfl/combinatorics.hpp"
#include "pgfl/deconvolution.hpp"
#include "pgfl/errors.hpp"
#include "pgfl/process.hpp"
#include "pgfl/process_io.hpp"
#include "pgfl/series.hpp"

namespace {

using namespace pgfl;

// Exit codes: 0 success/valid output, 1 completed with flags or check
// failure, 2 parse/configuration error, 3 incompatible inputs,
// 4 violated mathematical precondition (zero constant term).
constexpr int kExitOk = 0;
constexpr int kExitFlagged = 1;
constexpr int kExitParse = 2;
constexpr int kExitIncompatible = 3;
constexpr int kExitPrecondition = 4;

struct CommonOptions {
    std::string mode;      // "", "rational" or "float"
    int max_order = -1;    // <0: keep file order
};

void add_common(CLI::App* cmd, CommonOptions& opts)
{
    cmd->add_option("--mode", opts.mode, "Numeric mode override (rational|float); float inputs cannot be promoted")
        ->check(CLI::IsMember({"rational", "float"}));
    cmd->add_option("--max-order", opts.max_order, "Truncate loaded processes to this order")
        ->check(CLI::Range(0, kDefaultMaxOrder));
}

template <typename T>
void truncate_process(JanossyProcess<T>& process, int order)
{
    if (order >= process.max_order)
        return;
    bool dropped_mass = false;
    for (auto it = process.densities.begin(); it != process.densities.end();) {
        if (it->first.size() > order) {
            dropped_mass = dropped_mass || !(it->second == T(0));
            it = process.densities.erase(it);
        } else {
            ++it;
        }
    }
    process.max_order = order;
    process.tail_mass_allowed = process.tail_mass_allowed || dropped_mass;
}

AnyProcess load_process(const std::string& path, const CommonOptions& opts)
{
    AnyProcess process = read_process_file(path);
    if (opts.mode == "float" && std::holds_alternative<JanossyProcess<Rational>>(process))
        process = convert_process<double>(std::get<JanossyProcess<Rational>>(process));
    else if (opts.mode == "rational" && std::holds_alternative<JanossyProcess<double>>(process))
        throw CompatibilityError(path + ": float file cannot be promoted to rational mode");
    if (opts.max_order > std::visit([](const auto& p) { return p.max_order; }, process))
        throw CompatibilityError(path + ": --max-order exceeds the file's max_order");
    if (opts.max_order >= 0)
        std::visit([&](auto& p) { truncate_process(p, opts.max_order); }, process);
    return process;
}

template <typename F>
int visit_same_mode(AnyProcess& first, AnyProcess& second, F&& action)
{
    if (first.index() != second.index())
        throw CompatibilityError("inputs use different numeric modes");
    if (std::holds_alternative<JanossyProcess<Rational>>(first))
        return action(std::get<JanossyProcess<Rational>>(first), std::get<JanossyProcess<Rational>>(second));
    return action(std::get<JanossyProcess<double>>(first), std::get<JanossyProcess<double>>(second));
}

int run_superpose(const std::string& q_path, const std::string& r_path, const std::string& out_path,
                  const CommonOptions& opts)
{
    AnyProcess q = load_process(q_path, opts);
    AnyProcess r = load_process(r_path, opts);
    return visit_same_mode(q, r, [&](auto& q_proc, auto& r_proc) {
        write_process_file(out_path, AnyProcess(superpose(q_proc, r_proc)));
        return kExitOk;
    });
}

int run_deconvolve(const std::string& p_path, const std::string& q_path, const std::string& out_path,
                   const CommonOptions& opts)
{
    AnyProcess p = load_process(p_path, opts);
    AnyProcess q = load_process(q_path, opts);
    return visit_same_mode(p, q, [&](auto& p_proc, auto& q_proc) {
        using T = std::decay_t<decltype(p_proc.p0)>;
        auto result = deconvolve(p_proc, q_proc);
        write_process_file(out_path, AnyProcess(result.process));
        std::cout << report_to_text(result.report);
        if constexpr (is_rational_v<T>)
            std::cerr << "r0 = p0/q0 = " << to_string(result.process.p0) << "\n";
        else
            std::cerr << "r0 = p0/q0 = " << float_to_text(result.process.p0) << "\n";
        return result.report.valid_process ? kExitOk : kExitFlagged;
    });
}

/// "p/q", "p", or an exact decimal like "0.5" (= 1/2).
Rational rational_from_cli(const std::string& text)
{
    try {
        return rational_from_string(text);
    } catch (const ParseError&) {
        const auto dot = text.find('.');
        if (dot == std::string::npos)
            throw;
        std::string head = text.substr(0, dot);
        const std::string tail = text.substr(dot + 1);
        const bool negative = !head.empty() && head[0] == '-';
        if (negative)
            head.erase(0, 1);
        if (head.empty())
            head = "0";
        if (tail.empty() || head.find_first_not_of("0123456789") != std::string::npos
            || tail.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("'" + text + "' is not a rational or decimal number");
        const Rational scaled(head + tail, 10);
        Rational value(scaled / pow_int(Rational(10), static_cast<int>(tail.size())));
        return negative ? Rational(-value) : value;
    }
}

template <typename T>
TestFunction<T> parse_psi(const std::string& spec, const StateSpace<T>& space)
{
    TestFunction<T> psi = TestFunction<T>::constant(T(1), space.size());
    if (spec.empty())
        return psi;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t comma = std::min(spec.find(',', start), spec.size());
        const std::string item = spec.substr(start, comma - start);
        const std::size_t equals = item.find('=');
        if (equals == std::string::npos)
            throw ParseError("--psi entry '" + item + "' is not label=value");
        const std::string label = item.substr(0, equals);
        const std::string value = item.substr(equals + 1);
        const auto found = std::find(space.labels.begin(), space.labels.end(), label);
        if (found == space.labels.end())
            throw CompatibilityError("--psi names unknown label '" + label + "'");
        const auto index = static_cast<std::size_t>(found - space.labels.begin());
        if constexpr (is_rational_v<T>) {
            psi.values[index] = rational_from_cli(value);
        } else {
            try {
                psi.values[index] = to_double(rational_from_cli(value));
            } catch (const ParseError&) {
                std::size_t used = 0;
                double parsed = 0.0;
                try {
                    parsed = std::stod(value, &used);
                } catch (const std::exception&) {
                    throw ParseError("--psi value '" + value + "' is not a number");
                }
                if (used != value.size())
                    throw ParseError("--psi value '" + value + "' is not a number");
                psi.values[index] = parsed;
            }
        }
        start = comma + 1;
        if (comma == spec.size())
            break;
    }
    return psi;
}

int run_eval(const std::string& p_path, const std::string& psi_spec, const CommonOptions& opts)
{
    AnyProcess p = load_process(p_path, opts);
    std::visit(
        [&](const auto& process) {
            using T = std::decay_t<decltype(process.p0)>;
            const auto psi = parse_psi<T>(psi_spec, process.space);
            const T value = pgfl_eval(process, psi);
            if constexpr (is_rational_v<T>)
                std::cout << to_string(value) << "\n";
            else
                std::cout << float_to_text(value) << "\n";
        },
        p);
    return kExitOk;
}

std::vector<Rational> parse_coefficients(const std::string& spec)
{
    std::vector<Rational> coeffs;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t comma = std::min(spec.find(',', start), spec.size());
        coeffs.push_back(rational_from_cli(spec.substr(start, comma - start)));
        if (comma == spec.size())
            break;
        start = comma + 1;
    }
    return coeffs;
}

template <typename T>
int scalar_quotient_impl(const std::vector<Rational>& f_coeffs, const std::vector<Rational>& g_coeffs, int n)
{
    const int order = std::max({n, static_cast<int>(f_coeffs.size()) - 1, static_cast<int>(g_coeffs.size()) - 1});
    PowerSeries<T> f_series = PowerSeries<T>::zero(order);
    PowerSeries<T> g_series = PowerSeries<T>::zero(order);
    for (std::size_t k = 0; k < f_coeffs.size(); ++k)
        f_series.coeffs[k] = scalar_cast<T>(f_coeffs[k]);
    for (std::size_t k = 0; k < g_coeffs.size(); ++k)
        g_series.coeffs[k] = scalar_cast<T>(g_coeffs[k]);

    const T value = quotient_nth(series_to_derivatives(f_series), series_to_derivatives(g_series), n);
    const T oracle = T(series_div(f_series, g_series).coeffs[static_cast<std::size_t>(n)] * factorial<T>(n));

    const auto print = [](const char* name, const T& v) {
        if constexpr (is_rational_v<T>)
            std::cout << name << to_string(v) << "\n";
        else
            std::cout << name << float_to_text(v) << "\n";
    };
    print("quotient_nth: ", value);
    print("series_div oracle: ", oracle);
    if constexpr (is_rational_v<T>) {
        if (!(value == oracle)) {
            std::cerr << "internal inconsistency: quotient rule disagrees with long division\n";
            return kExitFlagged;
        }
    }
    return kExitOk;
}

int run_scalar_quotient(const std::string& f_spec, const std::string& g_spec, int n, const CommonOptions& opts)
{
    const auto f_coeffs = parse_coefficients(f_spec);
    const auto g_coeffs = parse_coefficients(g_spec);
    if (g_coeffs.empty() || g_coeffs[0] == 0)
        throw ZeroConstantTermError("scalar-quotient: g has zero constant term");
    if (opts.mode == "float")
        return scalar_quotient_impl<double>(f_coeffs, g_coeffs, n);
    return scalar_quotient_impl<Rational>(f_coeffs, g_coeffs, n);
}

struct CheckOptions {
    std::uint64_t seed = 1;
    int trials = 25;
    int points = 3;
    int max_order = 5;
    std::string mode = "rational";
    std::string dump_dir = ".";
};

struct RoundTripCase {
    JanossyProcess<Rational> q;
    JanossyProcess<Rational> r;
};

StateSpace<Rational> check_space(int M)
{
    std::vector<std::string> labels;
    for (int i = 0; i < M; ++i)
        labels.push_back(std::string(1, static_cast<char>('a' + i)));
    return StateSpace<Rational>::counting(std::move(labels));
}

RoundTripCase make_round_trip_case(std::uint64_t seed, int max_points, int max_order)
{
    const int M = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(max_points));
    int s_q = static_cast<int>(seed / 3 % 3);
    int s_r = 1 + static_cast<int>(seed / 9 % 3);
    while (s_q + s_r > max_order)
        (s_q > 0 ? s_q : s_r) -= 1;
    const int order = std::max(1, s_q + s_r);
    return RoundTripCase{
        random_process(check_space(M), order, 2 * seed + 1, s_q),
        random_process(check_space(M), order, 2 * seed + 2, s_r),
    };
}

void dump_failure(const CheckOptions& opts, const JanossyProcess<Rational>& q, const JanossyProcess<Rational>& r,
                  const JanossyProcess<Rational>& p, const JanossyProcess<Rational>& recovered)
{
    const std::filesystem::path dir(opts.dump_dir);
    write_process_file(dir / "fail_q.json", AnyProcess(q));
    write_process_file(dir / "fail_r.json", AnyProcess(r));
    write_process_file(dir / "fail_p.json", AnyProcess(p));
    write_process_file(dir / "fail_recovered.json", AnyProcess(recovered));
    std::cerr << "failing instance dumped to " << (dir / "fail_*.json").string() << "\n";
}

/// Count the (subset, partition) pairs of the quotient rule at order n by
/// literal enumeration.
std::uint64_t enumerate_pair_count(int n)
{
    std::uint64_t pairs = 0;
    for_each_subset_mask(n, [&](std::uint32_t mask) {
        for_each_partition(IndexSubset::from_mask(mask), [&](const SetPartition&) { ++pairs; });
    });
    return pairs;
}

int run_check(const CheckOptions& opts, bool corrupt_one_instance)
{
    // Suite 1: partition counts against Bell numbers, and the pair-count
    // identity sum_k C(n,k) B(k) = B(n+1) by literal enumeration.
    for (int n = 0; n <= std::min(opts.max_order + 1, 8); ++n) {
        std::uint64_t count = 0;
        for_each_partition(IndexSubset::full(n), [&](const SetPartition&) { ++count; });
        if (count != bell_number(n)) {
            std::cerr << "partition count mismatch at n=" << n << "\n";
            return kExitFlagged;
        }
    }
    std::cout << "partition counts match Bell numbers through n=" << std::min(opts.max_order + 1, 8) << "\n";
    for (int n = 0; n <= opts.max_order; ++n) {
        const std::uint64_t pairs = enumerate_pair_count(n);
        if (pairs != bell_number(n + 1)) {
            std::cerr << "pair count mismatch at n=" << n << "\n";
            return kExitFlagged;
        }
        std::cout << "order " << n << ": " << pairs << " (subset,partition) pairs per target\n";
    }

    // Suite 2: scalar quotient rule against long division.
    int oracle_ok = 0;
    for (int t = 0; t < opts.trials; ++t) {
        const auto seed = opts.seed + static_cast<std::uint64_t>(t);
        const auto f_series = random_series(8, 10000 + seed, false);
        const auto g_series = random_series(8, 20000 + seed, true);
        const auto f = series_to_derivatives(f_series);
        const auto g = series_to_derivatives(g_series);
        const auto oracle = series_div(f_series, g_series);
        DerivativeVector<Rational> one(9, Rational(0));
        one[0] = Rational(1);
        DerivativeVector<Rational> reciprocal_derivs(9); // d^k(1/x) at g0
        for (int k = 0; k <= 8; ++k) {
            Rational v(factorial<Rational>(k) / pow_int(g[0], k + 1));
            reciprocal_derivs[static_cast<std::size_t>(k)] = (k % 2 != 0) ? Rational(-v) : v;
        }
        for (int n = 0; n <= 8; ++n) {
            if (quotient_nth(f, g, n)
                != Rational(oracle.coeffs[static_cast<std::size_t>(n)] * factorial<Rational>(n))) {
                std::cerr << "quotient rule disagrees with long division (seed " << seed << ", n=" << n << ")\n";
                return kExitFlagged;
            }
            const Rational reciprocal = reciprocal_nth(g, n);
            if (reciprocal != quotient_nth(one, g, n) || reciprocal != faadibruno_nth(reciprocal_derivs, g, n)) {
                std::cerr << "reciprocal rule routes disagree (seed " << seed << ", n=" << n << ")\n";
                return kExitFlagged;
            }
        }
        ++oracle_ok;
    }
    std::cout << "scalar quotient oracle: " << oracle_ok << "/" << opts.trials << " polynomial pairs exact\n";

    // Suite 3: superpose/deconvolve round trips.
    int trips_ok = 0;
    for (int t = 0; t < opts.trials; ++t) {
        const auto seed = opts.seed + static_cast<std::uint64_t>(t);
        auto instance = make_round_trip_case(seed, opts.points, opts.max_order);
        auto superposed = superpose(instance.q, instance.r);
        if (corrupt_one_instance && t == 0) {
            auto it = superposed.densities.begin();
            if (it != superposed.densities.end())
                it->second += Rational(1);
        }
        const auto result = deconvolve(superposed, instance.q);

        bool mismatch = false;
        if (opts.mode == "rational") {
            mismatch = process_to_text(result.process) != process_to_text(instance.r)
                       || !result.report.valid_process;
        } else {
            const auto q_f = convert_process<double>(instance.q);
            const auto r_f = convert_process<double>(instance.r);
            const auto recovered_f = deconvolve(superpose(q_f, r_f), q_f).process;
            double worst = std::abs(recovered_f.p0 - to_double(result.process.p0));
            for (const auto& [multiset, value] : recovered_f.densities)
                worst = std::max(worst, std::abs(value - to_double(result.process.density(multiset))));
            mismatch = worst > 1e-10 || process_to_text(result.process) != process_to_text(instance.r);
        }
        if (mismatch) {
            std::cerr << "round trip failed at seed " << seed << "\n";
            dump_failure(opts, instance.q, instance.r, superposed, result.process);
            return kExitFlagged;
        }
        ++trips_ok;
    }
    std::cout << "round trips: " << trips_ok << "/" << opts.trials << " recovered exactly\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite point-process calculator on Janossy densities"};
    app.require_subcommand(1);

    CommonOptions common;
    std::string in_a, in_b, out_path, psi_spec, f_spec, g_spec;
    int quotient_order = 0;
    CheckOptions check_opts;

    auto* superpose_cmd = app.add_subcommand("superpose", "Combine two independent processes");
    superpose_cmd->add_option("q_file", in_a)->required();
    superpose_cmd->add_option("r_file", in_b)->required();
    superpose_cmd->add_option("--out", out_path, "Output process file")->required();
    add_common(superpose_cmd, common);

    auto* deconvolve_cmd = app.add_subcommand("deconvolve", "Divide a superposed process by one component");
    deconvolve_cmd->add_option("p_file", in_a)->required();
    deconvolve_cmd->add_option("q_file", in_b)->required();
    deconvolve_cmd->add_option("--out", out_path, "Output process file")->required();
    add_common(deconvolve_cmd, common);

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate the generating functional at a test function");
    eval_cmd->add_option("p_file", in_a)->required();
    eval_cmd->add_option("--psi", psi_spec, "Per-label values, e.g. \"a=1/2,b=1\"; unlisted labels read 1");
    add_common(eval_cmd, common);

    auto* quotient_cmd = app.add_subcommand("scalar-quotient", "n-th derivative of f/g from series coefficients");
    quotient_cmd->add_option("--f", f_spec, "Comma-separated coefficients of f")->required();
    quotient_cmd->add_option("--g", g_spec, "Comma-separated coefficients of g")->required();
    quotient_cmd->add_option("--n", quotient_order, "Differential order")->required()->check(CLI::Range(0, 10));
    add_common(quotient_cmd, common);

    auto* check_cmd = app.add_subcommand("check", "Run the invariant suites");
    auto* selftest_cmd = app.add_subcommand("selftest", "Exercise the failure path with a corrupted instance");
    for (auto* cmd : {check_cmd, selftest_cmd}) {
        cmd->add_option("--seed", check_opts.seed, "Base seed");
        cmd->add_option("--trials", check_opts.trials, "Trials per suite")->check(CLI::Range(1, 10000));
        cmd->add_option("--points", check_opts.points, "Max state-space size")->check(CLI::Range(1, 4));
        cmd->add_option("--max-order", check_opts.max_order, "Max truncation order")->check(CLI::Range(1, 6));
        cmd->add_option("--mode", check_opts.mode, "rational|float")->check(CLI::IsMember({"rational", "float"}));
        cmd->add_option("--out", check_opts.dump_dir, "Directory for failure dumps");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return kExitParse;
    }

    try {
        if (superpose_cmd->parsed())
            return run_superpose(in_a, in_b, out_path, common);
        if (deconvolve_cmd->parsed())
            return run_deconvolve(in_a, in_b, out_path, common);
        if (eval_cmd->parsed())
            return run_eval(in_a, psi_spec, common);
        if (quotient_cmd->parsed())
            return run_scalar_quotient(f_spec, g_spec, quotient_order, common);
        if (check_cmd->parsed())
            return run_check(check_opts, false);
        if (selftest_cmd->parsed()) {
            const int status = run_check(check_opts, true);
            std::cerr << (status == kExitFlagged
                              ? "selftest: corruption detected as intended\n"
                              : "selftest: corruption was NOT detected; the checker is broken\n");
            return status == kExitFlagged ? kExitFlagged : kExitOk;
        }
    } catch (const ZeroConstantTermError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const CompatibilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIncompatible;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}
