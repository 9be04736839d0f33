#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "pgfl/deconvolution.hpp"
#include "pgfl/process.hpp"

namespace pgfl {

/// A process file in either numeric mode. The file's "mode" field selects
/// the alternative.
using AnyProcess = std::variant<JanossyProcess<Rational>, JanossyProcess<double>>;

/// Process file format, shared by the library and the CLI. A JSON document:
///   labels            array of distinct point names (no commas)
///   weights           array, one positive weight per point
///   max_order         truncation order N
///   p0                void probability
///   densities         object: comma-joined sorted label key -> value,
///                     one entry per multiset of sizes 1..N (dense)
///   mode              "rational" | "float"
///   tail_mass_allowed boolean (optional, default false)
/// Scalars are "p/q" strings (exact) in rational mode and JSON numbers
/// (shortest round-trip doubles) in float mode; integers are accepted as
/// numbers in both modes. Throws ParseError on malformed input.
AnyProcess parse_process_text(const std::string& text);
AnyProcess read_process_file(const std::filesystem::path& path);

/// Canonical serialization: dense density table, sorted keys, 2-space
/// indent, trailing newline. Byte-identical for equal processes.
std::string process_to_text(const JanossyProcess<Rational>& process);
std::string process_to_text(const JanossyProcess<double>& process);
std::string process_to_text(const AnyProcess& process);
void write_process_file(const std::filesystem::path& path, const AnyProcess& process);

std::string report_to_text(const DeconvolutionReport<Rational>& report);
std::string report_to_text(const DeconvolutionReport<double>& report);

/// Shortest decimal text that round-trips to the same double.
std::string float_to_text(double value);

} // namespace pgfl
