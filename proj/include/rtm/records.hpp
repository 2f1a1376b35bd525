#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace rtm {

// One row of an edge histogram: length k, E_k and the number of simple
// edges of length k.
struct HistogramRow {
    std::int64_t k = 0;
    std::int64_t count = 0;
    std::int64_t simple = 0;
    friend bool operator==(const HistogramRow&, const HistogramRow&) = default;
};

// Everything measured on one sampled instance. Optional fields belong to
// panels that can be switched off or skipped.
struct SampleRecord {
    std::int64_t n = 0;
    std::int64_t trial = 0;
    std::uint64_t seed = 0;
    double wall_time_ms = 0.0;
    std::string conditioning = "uniform";
    std::int64_t attempts = 1;

    // Edges and boundary, always present.
    std::int64_t V = 0;
    std::int64_t E = 0;
    std::int64_t chi_boundary = 0;
    std::int64_t boundary_components = 0;
    std::vector<std::int64_t> genus_list;
    std::vector<HistogramRow> edge_histogram;
    std::int64_t cutoff = 1;
    std::int64_t E_KL = 0;
    bool generic_dual_simple = false;
    bool generic_short_edges_simple = false;
    bool generic_no_adjacent_short_edges = false;
    double cusp_largest = 0.0;
    double cusp_second = 0.0;
    std::int64_t cusp_parts = 0;

    // Homology.
    bool homology_skipped = true;
    std::optional<std::int64_t> b1_rel;
    std::optional<std::int64_t> b1_abs;
    std::optional<std::int64_t> b1_double;
    std::vector<std::string> torsion_factors;  // decimal, may exceed 64 bits
    std::optional<std::int64_t> heegaard_lower;
    std::optional<std::int64_t> heegaard_upper;

    // Dual graph.
    std::optional<bool> dual_simple;
    std::optional<bool> dual_connected;
    std::optional<std::int64_t> dual_diameter;  // absent when disconnected
    std::optional<double> lambda1;
    std::optional<double> lambda1_double;

    // Peeling (an independent run of the sequential sampler).
    std::optional<std::int64_t> peel_E;
    std::optional<std::int64_t> peel_max_singular;

    std::vector<std::string> errors;

    std::int64_t total_genus() const;
    std::int64_t edges_of_length(std::int64_t k) const;
    std::int64_t simple_edges_of_length(std::int64_t k) const;

    friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

nlohmann::json to_json(const SampleRecord& r);
SampleRecord record_from_json(const nlohmann::json& j);

// Single-line JSON text.
std::string to_jsonl_line(const SampleRecord& r);

} // namespace rtm
