#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "rtm/records.hpp"

namespace rtm {

enum class Conditioning { Uniform, Simple };
enum class Panel { Edges, Boundary, Homology, Dual, Peeling };

std::string to_string(Conditioning c);
std::string to_string(Panel p);
Conditioning parse_conditioning(const std::string& s);
Panel parse_panel(const std::string& s);

// Pass/fail brackets used by compare_theory.
struct TheoryTolerances {
    double slope_low = 0.4;
    double slope_high = 0.6;
    std::int64_t simple_edge_k_max = 10;
    double simple_edge_low = 0.8;   // bracket for mean(E_k simple) * 2k
    double simple_edge_high = 1.2;
    double sigma = 2.0;             // slack for the P[V=1] trend
    double genus_low = 0.95;
    double genus_high = 1.0;
    double small_cusp_max = 0.5;    // mean E_KL
    double genericity_min = 0.9;
    double diameter_fraction = 0.95;
    double lambda1_threshold = 0.05;
    double lambda1_fraction = 0.95;
    double heegaard_fraction = 0.9;
};

struct ExperimentConfig {
    std::vector<std::int64_t> n_list;
    std::int64_t trials = 1;
    std::uint64_t master_seed = 0;
    Conditioning conditioning = Conditioning::Uniform;
    // Edge and boundary statistics are always recorded; they feed the
    // per-record conservation checks.
    std::vector<Panel> panels{Panel::Edges, Panel::Boundary};
    std::string records_path;    // JSONL, skipped when empty
    std::string aggregate_path;  // CSV, skipped when empty
    std::string report_path;     // theory report, skipped when empty
    std::int64_t homology_max_n = 500;
    std::int64_t homology_nonzero_cap = 20000;
    int max_retries = 1000;
    int workers = 0;  // 0: one per hardware thread
    TheoryTolerances tolerances;

    bool has(Panel p) const;
    // Throws InvalidArgument.
    void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);

// Samples and measures trial `trial` at size n. Throws ConservationViolation
// if an identity that must hold on every instance fails.
SampleRecord run_trial(const ExperimentConfig& config, std::int64_t n, std::int64_t trial);
void check_conservation(const SampleRecord& r);

struct SummaryStat {
    std::int64_t count = 0;
    double mean = 0.0;
    double variance = 0.0;  // sample variance (n - 1 denominator)
    double min = 0.0;
    double q25 = 0.0;
    double median = 0.0;
    double q75 = 0.0;
    double max = 0.0;
};

// Linearly interpolated quantiles of unsorted values.
SummaryStat summarize_values(std::vector<double> values);

struct Regression {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

Regression fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct AggregateStats {
    std::map<std::int64_t, std::map<std::string, SummaryStat>> by_n;
    std::optional<Regression> edge_regression;  // mean E against ln n

    const SummaryStat* find(std::int64_t n, const std::string& name) const;
    std::vector<std::int64_t> n_values() const;
};

// Statistics are reduced in record order, so the result only depends on the
// multiset of records once they are sorted by (n, trial).
AggregateStats aggregate(std::vector<SampleRecord> records);

// Columns: n,statistic,count,mean,variance,min,q25,median,q75,max
void write_aggregate_csv(std::ostream& out, const AggregateStats& stats);

struct SweepResult {
    std::vector<SampleRecord> records;
    AggregateStats stats;
};

// Runs every (n, trial) pair, writes the configured outputs, and returns the
// records in (n, trial) order.
SweepResult run_sweep(const ExperimentConfig& config);

std::vector<SampleRecord> read_records(std::istream& in);
std::vector<SampleRecord> read_records_file(const std::string& path);
void write_records(std::ostream& out, const std::vector<SampleRecord>& records);

struct LawCheck {
    std::string law;
    std::int64_t n = 0;  // size the check was evaluated at (0: across sizes)
    double observed = 0.0;
    std::string comparator;
    bool pass = false;
};

struct TheoryReport {
    std::vector<LawCheck> checks;
    bool all_pass() const;
};

// Throws InsufficientData unless the stats cover at least three sizes
// spanning a factor of ten.
TheoryReport compare_theory(const AggregateStats& stats, const TheoryTolerances& tol = {});
void write_theory_report(std::ostream& out, const TheoryReport& report, const AggregateStats& stats);

using Rational = boost::multiprecision::cpp_rational;

// Statistic-level atom of the exact distribution.
struct AtomKey {
    std::int64_t V = 0;
    std::int64_t E = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> histogram;  // (k, E_k)
    std::int64_t dual_loops = 0;
    std::int64_t dual_extra_parallel = 0;  // edges beyond the first between a vertex pair
    bool dual_connected = false;
    friend auto operator<=>(const AtomKey&, const AtomKey&) = default;
};

struct ExactDistribution {
    std::int64_t n = 0;
    std::uint64_t instances = 0;
    std::map<AtomKey, Rational> atoms;

    Rational total() const;
};

// Throws TooLarge for n > 2.
ExactDistribution exact_distribution(std::int64_t n);

// Uniform measure on instances keyed by their canonical text form.
std::map<std::string, Rational> exact_instance_distribution(std::int64_t n);

// Exact law of the instance produced by the sequential peeling sampler,
// obtained by following every random path. Throws TooLarge for n > 2.
std::map<std::string, Rational> peel_pushforward(std::int64_t n);

Rational total_variation(const std::map<std::string, Rational>& a, const std::map<std::string, Rational>& b);

} // namespace rtm
