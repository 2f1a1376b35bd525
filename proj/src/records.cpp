#include "rtm/records.hpp"

#include <charconv>

#include "rtm/error.hpp"

namespace rtm {

using nlohmann::json;

std::int64_t SampleRecord::total_genus() const {
    std::int64_t g = 0;
    for (const auto x : genus_list) g += x;
    return g;
}

std::int64_t SampleRecord::edges_of_length(std::int64_t k) const {
    for (const auto& row : edge_histogram)
        if (row.k == k) return row.count;
    return 0;
}

std::int64_t SampleRecord::simple_edges_of_length(std::int64_t k) const {
    for (const auto& row : edge_histogram)
        if (row.k == k) return row.simple;
    return 0;
}

namespace {

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->get<T>();
}

// Small factors as JSON integers, huge ones as decimal strings.
json factor_json(const std::string& s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size()) return json(v);
    return json(s);
}

} // namespace

json to_json(const SampleRecord& r) {
    json j;
    j["n"] = r.n;
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    j["wall_time_ms"] = r.wall_time_ms;
    j["conditioning"] = r.conditioning;
    j["attempts"] = r.attempts;
    j["V"] = r.V;
    j["E"] = r.E;
    j["chi_boundary"] = r.chi_boundary;
    j["boundary_components"] = r.boundary_components;
    j["genus_list"] = r.genus_list;
    json hist = json::array();
    for (const auto& row : r.edge_histogram) hist.push_back({row.k, row.count, row.simple});
    j["edge_histogram"] = std::move(hist);
    j["cutoff"] = r.cutoff;
    j["E_KL"] = r.E_KL;
    j["genericity"] = {{"dual_simple", r.generic_dual_simple},
                       {"all_short_edges_simple", r.generic_short_edges_simple},
                       {"no_adjacent_short_edges", r.generic_no_adjacent_short_edges}};
    j["cusp"] = {{"largest", r.cusp_largest}, {"second", r.cusp_second}, {"parts", r.cusp_parts}};
    j["homology_skipped"] = r.homology_skipped;
    j["b1_rel"] = optional_json(r.b1_rel);
    j["b1_abs"] = optional_json(r.b1_abs);
    j["b1_double"] = optional_json(r.b1_double);
    json factors = json::array();
    for (const auto& f : r.torsion_factors) factors.push_back(factor_json(f));
    j["torsion_factors"] = std::move(factors);
    j["heegaard_lower"] = optional_json(r.heegaard_lower);
    j["heegaard_upper"] = optional_json(r.heegaard_upper);
    j["dual_simple"] = optional_json(r.dual_simple);
    j["dual_connected"] = optional_json(r.dual_connected);
    j["dual_diameter"] = optional_json(r.dual_diameter);
    j["lambda1"] = optional_json(r.lambda1);
    j["lambda1_double"] = optional_json(r.lambda1_double);
    j["peel_E"] = optional_json(r.peel_E);
    j["peel_max_singular"] = optional_json(r.peel_max_singular);
    j["errors"] = r.errors;
    return j;
}

SampleRecord record_from_json(const json& j) {
    try {
        SampleRecord r;
        r.n = j.at("n").get<std::int64_t>();
        r.trial = j.at("trial").get<std::int64_t>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.wall_time_ms = j.at("wall_time_ms").get<double>();
        r.conditioning = j.at("conditioning").get<std::string>();
        r.attempts = j.at("attempts").get<std::int64_t>();
        r.V = j.at("V").get<std::int64_t>();
        r.E = j.at("E").get<std::int64_t>();
        r.chi_boundary = j.at("chi_boundary").get<std::int64_t>();
        r.boundary_components = j.at("boundary_components").get<std::int64_t>();
        r.genus_list = j.at("genus_list").get<std::vector<std::int64_t>>();
        for (const auto& row : j.at("edge_histogram"))
            r.edge_histogram.push_back({row.at(0).get<std::int64_t>(), row.at(1).get<std::int64_t>(),
                                        row.at(2).get<std::int64_t>()});
        r.cutoff = j.at("cutoff").get<std::int64_t>();
        r.E_KL = j.at("E_KL").get<std::int64_t>();
        const auto& g = j.at("genericity");
        r.generic_dual_simple = g.at("dual_simple").get<bool>();
        r.generic_short_edges_simple = g.at("all_short_edges_simple").get<bool>();
        r.generic_no_adjacent_short_edges = g.at("no_adjacent_short_edges").get<bool>();
        const auto& c = j.at("cusp");
        r.cusp_largest = c.at("largest").get<double>();
        r.cusp_second = c.at("second").get<double>();
        r.cusp_parts = c.at("parts").get<std::int64_t>();
        r.homology_skipped = j.at("homology_skipped").get<bool>();
        r.b1_rel = optional_from<std::int64_t>(j, "b1_rel");
        r.b1_abs = optional_from<std::int64_t>(j, "b1_abs");
        r.b1_double = optional_from<std::int64_t>(j, "b1_double");
        for (const auto& f : j.at("torsion_factors"))
            r.torsion_factors.push_back(f.is_string() ? f.get<std::string>() : std::to_string(f.get<std::int64_t>()));
        r.heegaard_lower = optional_from<std::int64_t>(j, "heegaard_lower");
        r.heegaard_upper = optional_from<std::int64_t>(j, "heegaard_upper");
        r.dual_simple = optional_from<bool>(j, "dual_simple");
        r.dual_connected = optional_from<bool>(j, "dual_connected");
        r.dual_diameter = optional_from<std::int64_t>(j, "dual_diameter");
        r.lambda1 = optional_from<double>(j, "lambda1");
        r.lambda1_double = optional_from<double>(j, "lambda1_double");
        r.peel_E = optional_from<std::int64_t>(j, "peel_E");
        r.peel_max_singular = optional_from<std::int64_t>(j, "peel_max_singular");
        r.errors = j.at("errors").get<std::vector<std::string>>();
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::IoError, std::string("malformed sample record: ") + e.what());
    }
}

std::string to_jsonl_line(const SampleRecord& r) { return to_json(r).dump(); }

} // namespace rtm
