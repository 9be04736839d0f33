#include "pgfl/process_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "pgfl/errors.hpp"

namespace pgfl {

namespace {

using nlohmann::json;

template <typename T>
T scalar_from_json(const json& value, const char* field)
{
    if (value.is_string()) {
        const Rational exact = rational_from_string(value.get<std::string>());
        return scalar_cast<T>(exact);
    }
    if (value.is_number_integer())
        return T(value.get<long>());
    if (value.is_number_unsigned())
        return T(static_cast<long>(value.get<unsigned long>()));
    if (value.is_number_float()) {
        if constexpr (is_rational_v<T>)
            throw ParseError(std::string(field) + ": non-integer numbers are ambiguous in rational mode, use \"p/q\" strings");
        else
            return value.get<double>();
    }
    throw ParseError(std::string(field) + ": expected a number or rational string");
}

json scalar_to_json(const Rational& value)
{
    return to_string(value);
}

json scalar_to_json(double value)
{
    if (!std::isfinite(value))
        throw std::invalid_argument("cannot serialize non-finite value");
    return value;
}

std::vector<std::string> split_key(const std::string& key)
{
    std::vector<std::string> parts;
    std::string part;
    std::istringstream stream(key);
    while (std::getline(stream, part, ','))
        parts.push_back(part);
    return parts;
}

template <typename T>
JanossyProcess<T> load_process(const json& doc)
{
    JanossyProcess<T> process;

    const json& labels = doc.at("labels");
    const json& weights = doc.at("weights");
    if (!labels.is_array() || !weights.is_array() || labels.size() != weights.size())
        throw ParseError("labels/weights must be arrays of equal length");
    for (const json& label : labels) {
        if (!label.is_string())
            throw ParseError("labels must be strings");
        const auto text = label.get<std::string>();
        if (text.empty() || text.find(',') != std::string::npos)
            throw ParseError("label '" + text + "' is empty or contains a comma");
        process.space.labels.push_back(text);
    }
    for (const json& weight : weights)
        process.space.weights.push_back(scalar_from_json<T>(weight, "weights"));
    try {
        process.space.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }

    process.max_order = doc.at("max_order").get<int>();
    if (process.max_order < 0)
        throw ParseError("max_order must be nonnegative");
    process.p0 = scalar_from_json<T>(doc.at("p0"), "p0");
    process.tail_mass_allowed = doc.value("tail_mass_allowed", false);

    std::map<std::string, int> index_of;
    for (int i = 0; i < process.space.size(); ++i)
        index_of[process.space.labels[static_cast<std::size_t>(i)]] = i;

    for (const auto& [key, value] : doc.at("densities").items()) {
        std::vector<int> points;
        for (const std::string& label : split_key(key)) {
            auto it = index_of.find(label);
            if (it == index_of.end())
                throw ParseError("density key '" + key + "' names unknown label '" + label + "'");
            points.push_back(it->second);
        }
        if (points.empty() || static_cast<int>(points.size()) > process.max_order)
            throw ParseError("density key '" + key + "' has size outside 1..max_order");
        Multiset multiset = Multiset::from_points(points);
        if (!process.densities.emplace(std::move(multiset), scalar_from_json<T>(value, "densities")).second)
            throw ParseError("density key '" + key + "' duplicates another key");
    }
    return process;
}

/// Key for a multiset: its points' labels, sorted as strings, comma-joined.
template <typename T>
std::string density_key(const JanossyProcess<T>& process, const Multiset& multiset)
{
    std::vector<std::string> names;
    for (int point : multiset.expand())
        names.push_back(process.space.labels[static_cast<std::size_t>(point)]);
    std::sort(names.begin(), names.end());
    std::string key;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i > 0)
            key += ',';
        key += names[i];
    }
    return key;
}

template <typename T>
std::string dump_process(const JanossyProcess<T>& process)
{
    json doc;
    doc["labels"] = process.space.labels;
    json weights = json::array();
    for (const T& w : process.space.weights)
        weights.push_back(scalar_to_json(w));
    doc["weights"] = weights;
    doc["max_order"] = process.max_order;
    doc["p0"] = scalar_to_json(process.p0);
    doc["mode"] = mode_name<T>();
    doc["tail_mass_allowed"] = process.tail_mass_allowed;

    json densities = json::object();
    for (int n = 1; n <= process.max_order; ++n)
        for (const Multiset& multiset : enumerate_multisets(process.space.size(), n))
            densities[density_key(process, multiset)] = scalar_to_json(process.density(multiset));
    doc["densities"] = densities;

    return doc.dump(2) + "\n";
}

template <typename T>
std::string dump_report(const DeconvolutionReport<T>& report)
{
    json doc;
    doc["min_density"] = scalar_to_json(report.min_density);
    doc["negative_count"] = report.negative_count;
    doc["term_count"] = report.term_count;
    doc["mass"] = scalar_to_json(report.mass);
    doc["valid_process"] = report.valid_process;
    return doc.dump(2) + "\n";
}

} // namespace

AnyProcess parse_process_text(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        const auto mode = doc.at("mode").get<std::string>();
        if (mode == "rational")
            return load_process<Rational>(doc);
        if (mode == "float")
            return load_process<double>(doc);
        throw ParseError("mode must be \"rational\" or \"float\"");
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid process document: ") + e.what());
    }
}

AnyProcess read_process_file(const std::filesystem::path& path)
{
    std::ifstream input(path);
    if (!input)
        throw ParseError("cannot open file: " + path.string());
    std::ostringstream buffer;
    buffer << input.rdbuf();
    return parse_process_text(buffer.str());
}

std::string process_to_text(const JanossyProcess<Rational>& process) { return dump_process(process); }
std::string process_to_text(const JanossyProcess<double>& process) { return dump_process(process); }

std::string process_to_text(const AnyProcess& process)
{
    return std::visit([](const auto& p) { return dump_process(p); }, process);
}

void write_process_file(const std::filesystem::path& path, const AnyProcess& process)
{
    std::ofstream output(path);
    if (!output)
        throw ParseError("cannot open file for writing: " + path.string());
    output << process_to_text(process);
}

std::string report_to_text(const DeconvolutionReport<Rational>& report) { return dump_report(report); }
std::string report_to_text(const DeconvolutionReport<double>& report) { return dump_report(report); }

std::string float_to_text(double value)
{
    return json(value).dump();
}

} // namespace pgfl
