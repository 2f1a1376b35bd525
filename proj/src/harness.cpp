#include "rtm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "rtm/complex.hpp"
#include "rtm/dual_graph.hpp"
#include "rtm/error.hpp"
#include "rtm/homology.hpp"
#include "rtm/peeling.hpp"
#include "rtm/rng.hpp"

namespace rtm {

using nlohmann::json;

std::string to_string(Conditioning c) { return c == Conditioning::Uniform ? "uniform" : "simple"; }

std::string to_string(Panel p) {
    switch (p) {
    case Panel::Edges: return "edges";
    case Panel::Boundary: return "boundary";
    case Panel::Homology: return "homology";
    case Panel::Dual: return "dual";
    case Panel::Peeling: return "peeling";
    }
    return "unknown";
}

Conditioning parse_conditioning(const std::string& s) {
    if (s == "uniform") return Conditioning::Uniform;
    if (s == "simple") return Conditioning::Simple;
    throw Error(ErrorCode::InvalidArgument, "unknown conditioning '" + s + "'");
}

Panel parse_panel(const std::string& s) {
    for (const Panel p : {Panel::Edges, Panel::Boundary, Panel::Homology, Panel::Dual, Panel::Peeling})
        if (to_string(p) == s) return p;
    throw Error(ErrorCode::InvalidArgument, "unknown panel '" + s + "'");
}

bool ExperimentConfig::has(Panel p) const { return std::find(panels.begin(), panels.end(), p) != panels.end(); }

void ExperimentConfig::validate() const {
    if (n_list.empty()) throw Error(ErrorCode::InvalidArgument, "n_list is empty");
    for (const auto n : n_list) {
        if (n < 1) throw Error(ErrorCode::InvalidArgument, "n_list entries must be positive");
        if (conditioning == Conditioning::Simple && n < 5)
            throw Error(ErrorCode::InvalidArgument, "simple conditioning needs n >= 5");
    }
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
    if (panels.empty()) throw Error(ErrorCode::InvalidArgument, "panels must be nonempty");
    if (homology_max_n < 0 || homology_nonzero_cap < 1) throw Error(ErrorCode::InvalidArgument, "invalid homology caps");
    if (max_retries < 1) throw Error(ErrorCode::InvalidArgument, "max_retries must be positive");
    if (workers < 0) throw Error(ErrorCode::InvalidArgument, "workers must be non-negative");
}

namespace {

void tolerances_from_json(const json& j, TheoryTolerances& t) {
    auto read = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    read("slope_low", t.slope_low);
    read("slope_high", t.slope_high);
    read("simple_edge_k_max", t.simple_edge_k_max);
    read("simple_edge_low", t.simple_edge_low);
    read("simple_edge_high", t.simple_edge_high);
    read("sigma", t.sigma);
    read("genus_low", t.genus_low);
    read("genus_high", t.genus_high);
    read("small_cusp_max", t.small_cusp_max);
    read("genericity_min", t.genericity_min);
    read("diameter_fraction", t.diameter_fraction);
    read("lambda1_threshold", t.lambda1_threshold);
    read("lambda1_fraction", t.lambda1_fraction);
    read("heegaard_fraction", t.heegaard_fraction);
}

json tolerances_to_json(const TheoryTolerances& t) {
    return {{"slope_low", t.slope_low},
            {"slope_high", t.slope_high},
            {"simple_edge_k_max", t.simple_edge_k_max},
            {"simple_edge_low", t.simple_edge_low},
            {"simple_edge_high", t.simple_edge_high},
            {"sigma", t.sigma},
            {"genus_low", t.genus_low},
            {"genus_high", t.genus_high},
            {"small_cusp_max", t.small_cusp_max},
            {"genericity_min", t.genericity_min},
            {"diameter_fraction", t.diameter_fraction},
            {"lambda1_threshold", t.lambda1_threshold},
            {"lambda1_fraction", t.lambda1_fraction},
            {"heegaard_fraction", t.heegaard_fraction}};
}

} // namespace

ExperimentConfig config_from_json(const json& j) {
    try {
        ExperimentConfig c;
        c.n_list = j.at("n_list").get<std::vector<std::int64_t>>();
        c.trials = j.at("trials").get<std::int64_t>();
        if (j.contains("master_seed")) c.master_seed = j.at("master_seed").get<std::uint64_t>();
        if (j.contains("conditioning")) c.conditioning = parse_conditioning(j.at("conditioning").get<std::string>());
        if (j.contains("panels")) {
            c.panels.clear();
            for (const auto& p : j.at("panels")) c.panels.push_back(parse_panel(p.get<std::string>()));
        }
        if (j.contains("outputs")) {
            const auto& o = j.at("outputs");
            if (o.contains("records")) c.records_path = o.at("records").get<std::string>();
            if (o.contains("aggregate")) c.aggregate_path = o.at("aggregate").get<std::string>();
            if (o.contains("report")) c.report_path = o.at("report").get<std::string>();
        }
        if (j.contains("homology_max_n")) c.homology_max_n = j.at("homology_max_n").get<std::int64_t>();
        if (j.contains("homology_nonzero_cap")) c.homology_nonzero_cap = j.at("homology_nonzero_cap").get<std::int64_t>();
        if (j.contains("max_retries")) c.max_retries = j.at("max_retries").get<int>();
        if (j.contains("workers")) c.workers = j.at("workers").get<int>();
        if (j.contains("tolerances")) tolerances_from_json(j.at("tolerances"), c.tolerances);
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed config: ") + e.what());
    }
}

json to_json(const ExperimentConfig& c) {
    json panels = json::array();
    for (const auto p : c.panels) panels.push_back(to_string(p));
    return {{"n_list", c.n_list},
            {"trials", c.trials},
            {"master_seed", c.master_seed},
            {"conditioning", to_string(c.conditioning)},
            {"panels", panels},
            {"outputs", {{"records", c.records_path}, {"aggregate", c.aggregate_path}, {"report", c.report_path}}},
            {"homology_max_n", c.homology_max_n},
            {"homology_nonzero_cap", c.homology_nonzero_cap},
            {"max_retries", c.max_retries},
            {"workers", c.workers},
            {"tolerances", tolerances_to_json(c.tolerances)}};
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::IoError, "cannot parse config " + path + ": " + e.what());
    }
    return config_from_json(j);
}

void check_conservation(const SampleRecord& r) {
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::ConservationViolation,
                    "n = " + std::to_string(r.n) + ", trial " + std::to_string(r.trial) + ": " + what);
    };
    std::int64_t weighted = 0;
    std::int64_t edges = 0;
    for (const auto& row : r.edge_histogram) {
        weighted += row.k * row.count;
        edges += row.count;
    }
    if (weighted != 6 * r.n) fail("sum k E_k = " + std::to_string(weighted) + " != 6n");
    if (edges != r.E) fail("histogram does not add up to E");
    if (r.chi_boundary != 2 * r.E - 2 * r.n) fail("chi(boundary) != 2E - 2n");
    if (r.boundary_components != r.V) fail("boundary components != V");
    if (static_cast<std::int64_t>(r.genus_list.size()) != r.boundary_components) fail("genus list size");
    std::int64_t chi = 0;
    for (const auto g : r.genus_list) chi += 2 - 2 * g;
    if (chi != r.chi_boundary) fail("genera do not match chi(boundary)");
}

SampleRecord run_trial(const ExperimentConfig& config, std::int64_t n, std::int64_t trial) {
    const auto start = std::chrono::steady_clock::now();
    SampleRecord r;
    r.n = n;
    r.trial = trial;
    r.seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial));
    r.conditioning = to_string(config.conditioning);

    GluingInstance instance;
    if (config.conditioning == Conditioning::Uniform) {
        instance = sample_uniform(n, Seed{r.seed});
    } else {
        SimpleSample s = sample_simple(n, Seed{r.seed}, config.max_retries);
        instance = std::move(s.instance);
        r.attempts = s.attempts;
    }

    const EdgeOrbits orbits = build_edge_orbits(instance);
    const VertexPartition vertices = vertex_orbits(instance);
    const BoundarySurface surface = build_boundary_surface(instance, orbits);
    const BoundaryInvariants inv = boundary_invariants(surface);
    const EdgeHistogram hist = edge_histogram(orbits);

    r.V = vertices.count;
    r.E = orbits.count();
    r.chi_boundary = surface.euler_characteristic();
    r.boundary_components = inv.component_count;
    r.genus_list = inv.genera;
    for (const auto& [k, count] : hist.all) r.edge_histogram.push_back({k, count, hist.simple_count(k)});
    r.cutoff = default_cutoff(n);
    r.E_KL = pair_statistic(orbits, r.cutoff, r.cutoff);
    const GenericityReport gen = genericity_check(instance, orbits, r.cutoff);
    r.generic_dual_simple = gen.dual_simple;
    r.generic_short_edges_simple = gen.all_short_edges_simple;
    r.generic_no_adjacent_short_edges = gen.no_adjacent_short_edges;
    const CuspSpectrum cusp = cusp_spectrum(orbits);
    r.cusp_largest = cusp.largest();
    r.cusp_second = cusp.second_largest();
    r.cusp_parts = static_cast<std::int64_t>(cusp.parts());
    if (!components_match_vertex_orbits(surface, vertices))
        throw Error(ErrorCode::ConservationViolation, "boundary components do not match vertex orbits");

    auto note = [&](const Error& e) { r.errors.push_back(std::string(to_string(e.code())) + ": " + e.what()); };

    if (config.has(Panel::Homology)) {
        if (n <= config.homology_max_n) {
            try {
                const HomologyPanel h =
                    homology_panel(instance, orbits, surface, static_cast<std::size_t>(config.homology_nonzero_cap));
                const auto violation = [&](const std::string& what) {
                    throw Error(ErrorCode::ConservationViolation,
                                "n = " + std::to_string(n) + ", trial " + std::to_string(trial) + ": " + what);
                };
                if (h.absolute.euler_characteristic() != r.E - n) violation("chi(M) != E - n");
                if (h.relative.euler_characteristic() != n - r.E) violation("chi(M, dM) != n - E");
                if (h.doubled.euler_characteristic() != 0) violation("chi(DM) != 0");
                r.homology_skipped = false;
                r.b1_rel = h.b1_rel();
                r.b1_abs = h.b1_abs();
                r.b1_double = h.b1_double();
                for (const auto& f : h.absolute.torsion) r.torsion_factors.push_back(f.str());
                r.heegaard_lower = h.heegaard.lower;
                r.heegaard_upper = h.heegaard.upper;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::SizeLimitExceeded) throw;
                note(e);
            }
        }
    }

    if (config.has(Panel::Dual)) {
        const MultiGraph g = build_dual(instance);
        r.dual_simple = is_simple(g);
        const DiameterResult d = diameter(g);
        r.dual_connected = d.connected;
        if (d.connected) r.dual_diameter = d.diameter;
        if (d.connected && n >= 2) {
            try {
                r.lambda1 = spectral_gap(g).lambda1;
                r.lambda1_double = spectral_gap(double_graph(g)).lambda1;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NoConvergence) throw;
                note(e);
            }
        }
    }

    if (config.has(Panel::Peeling)) {
        const PeelResult p = peel_algorithm1(n, Seed{r.seed});
        r.peel_E = p.trace.total_closed();
        std::int64_t worst = 0;
        for (const auto& s : p.trace.steps) worst = std::max(worst, s.singular_before);
        r.peel_max_singular = worst;
        if (*r.peel_E != build_edge_orbits(p.instance).count())
            throw Error(ErrorCode::ConservationViolation, "peeling closed a different number of edges than the result has");
    }

    r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    check_conservation(r);
    return r;
}

SummaryStat summarize_values(std::vector<double> v) {
    SummaryStat s;
    s.count = static_cast<std::int64_t>(v.size());
    if (v.empty()) return s;
    double sum = 0.0;
    for (const double x : v) sum += x;
    s.mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (const double x : v) ss += (x - s.mean) * (x - s.mean);
    s.variance = v.size() > 1 ? ss / static_cast<double>(v.size() - 1) : 0.0;
    std::sort(v.begin(), v.end());
    auto q = [&](double p) {
        const double pos = p * static_cast<double>(v.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, v.size() - 1);
        return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
    };
    s.min = v.front();
    s.q25 = q(0.25);
    s.median = q(0.5);
    s.q75 = q(0.75);
    s.max = v.back();
    return s;
}

Regression fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::InsufficientData, "regression needs two points");
    const double m = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) throw Error(ErrorCode::InsufficientData, "regression needs distinct x values");
    Regression r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    r.r_squared = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return r;
}

const SummaryStat* AggregateStats::find(std::int64_t n, const std::string& name) const {
    const auto it = by_n.find(n);
    if (it == by_n.end()) return nullptr;
    const auto jt = it->second.find(name);
    return jt == it->second.end() ? nullptr : &jt->second;
}

std::vector<std::int64_t> AggregateStats::n_values() const {
    std::vector<std::int64_t> out;
    for (const auto& [n, _] : by_n) out.push_back(n);
    return out;
}

namespace {

double log_squared(std::int64_t n) {
    const double l = std::log(static_cast<double>(n));
    return l * l;
}

// Per-record values of every aggregated statistic.
std::map<std::string, double> statistics_of(const SampleRecord& r) {
    std::map<std::string, double> s;
    const double n = static_cast<double>(r.n);
    auto flag = [](bool b) { return b ? 1.0 : 0.0; };
    s["E"] = static_cast<double>(r.E);
    s["V"] = static_cast<double>(r.V);
    s["V_is_1"] = flag(r.V == 1);
    s["chi_boundary"] = static_cast<double>(r.chi_boundary);
    s["boundary_components"] = static_cast<double>(r.boundary_components);
    s["genus_total"] = static_cast<double>(r.total_genus());
    s["genus_over_n"] = static_cast<double>(r.total_genus()) / n;
    if (r.boundary_components == 1) s["genus_formula_holds"] = flag(r.total_genus() == r.n + 1 - r.E);
    for (std::int64_t k = 1; k <= 10; ++k) {
        s["E_k_" + std::to_string(k)] = static_cast<double>(r.edges_of_length(k));
        s["E_simple_" + std::to_string(k)] = static_cast<double>(r.simple_edges_of_length(k));
    }
    s["E_KL"] = static_cast<double>(r.E_KL);
    s["generic_dual_simple"] = flag(r.generic_dual_simple);
    s["generic_short_edges_simple"] = flag(r.generic_short_edges_simple);
    s["generic_no_adjacent_short_edges"] = flag(r.generic_no_adjacent_short_edges);
    s["generic_all"] =
        flag(r.generic_dual_simple && r.generic_short_edges_simple && r.generic_no_adjacent_short_edges);
    s["cusp_largest"] = r.cusp_largest;
    s["cusp_second"] = r.cusp_second;
    s["cusp_parts"] = static_cast<double>(r.cusp_parts);
    s["attempts"] = static_cast<double>(r.attempts);
    if (!r.homology_skipped && r.b1_rel && r.b1_abs && r.b1_double) {
        s["b1_rel"] = static_cast<double>(*r.b1_rel);
        s["b1_abs"] = static_cast<double>(*r.b1_abs);
        s["b1_double"] = static_cast<double>(*r.b1_double);
        s["torsion_trivial"] = flag(r.torsion_factors.empty());
        s["heegaard_lower"] = static_cast<double>(*r.heegaard_lower);
        s["heegaard_upper"] = static_cast<double>(*r.heegaard_upper);
        s["heegaard_ordered"] = flag(*r.heegaard_lower <= *r.heegaard_upper);
        s["heegaard_lower_near_n"] = flag(static_cast<double>(*r.heegaard_lower) >= n - log_squared(r.n));
        s["b1_rel_le_log2"] = flag(static_cast<double>(*r.b1_rel) <= log_squared(r.n));
        if (r.boundary_components == 1) s["half_lives_holds"] = flag(*r.b1_abs == r.total_genus() + *r.b1_rel);
    }
    if (r.dual_simple) s["dual_simple"] = flag(*r.dual_simple);
    if (r.dual_connected) s["dual_connected"] = flag(*r.dual_connected);
    if (r.dual_connected) {
        const double bound = 2.0 * std::log(n) / std::log(3.0);
        s["diameter_within_2log3"] = flag(r.dual_diameter && static_cast<double>(*r.dual_diameter) <= bound);
    }
    if (r.dual_diameter) s["dual_diameter"] = static_cast<double>(*r.dual_diameter);
    if (r.lambda1) {
        s["lambda1"] = *r.lambda1;
        s["lambda1_ge_0.05"] = flag(*r.lambda1 >= 0.05);
    }
    if (r.lambda1_double) s["lambda1_double"] = *r.lambda1_double;
    if (r.peel_E) s["peel_E"] = static_cast<double>(*r.peel_E);
    if (r.peel_max_singular) s["peel_max_singular"] = static_cast<double>(*r.peel_max_singular);
    return s;
}

} // namespace

AggregateStats aggregate(std::vector<SampleRecord> records) {
    std::sort(records.begin(), records.end(),
              [](const SampleRecord& a, const SampleRecord& b) { return std::tie(a.n, a.trial) < std::tie(b.n, b.trial); });
    std::map<std::int64_t, std::map<std::string, std::vector<double>>> values;
    for (const auto& r : records)
        for (const auto& [name, v] : statistics_of(r)) values[r.n][name].push_back(v);
    AggregateStats out;
    for (auto& [n, stats] : values)
        for (auto& [name, v] : stats) out.by_n[n][name] = summarize_values(std::move(v));
    if (out.by_n.size() >= 2) {
        std::vector<double> x, y;
        for (const auto& [n, stats] : out.by_n) {
            x.push_back(std::log(static_cast<double>(n)));
            y.push_back(stats.at("E").mean);
        }
        out.edge_regression = fit_line(x, y);
    }
    return out;
}

void write_aggregate_csv(std::ostream& out, const AggregateStats& stats) {
    out << "n,statistic,count,mean,variance,min,q25,median,q75,max\n";
    out << std::setprecision(12);
    for (const auto& [n, by_name] : stats.by_n)
        for (const auto& [name, s] : by_name)
            out << n << ',' << name << ',' << s.count << ',' << s.mean << ',' << s.variance << ',' << s.min << ','
                << s.q25 << ',' << s.median << ',' << s.q75 << ',' << s.max << '\n';
}

void write_records(std::ostream& out, const std::vector<SampleRecord>& records) {
    for (const auto& r : records) out << to_jsonl_line(r) << '\n';
}

std::vector<SampleRecord> read_records(std::istream& in) {
    std::vector<SampleRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(ErrorCode::IoError, std::string("malformed JSONL line: ") + e.what());
        }
        out.push_back(record_from_json(j));
    }
    return out;
}

std::vector<SampleRecord> read_records_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    return read_records(in);
}

namespace {

template <class Write>
void write_file(const std::string& path, Write&& write) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    write(out);
    if (!out) throw Error(ErrorCode::IoError, "error while writing " + path);
}

} // namespace

SweepResult run_sweep(const ExperimentConfig& config) {
    config.validate();
    std::vector<std::pair<std::int64_t, std::int64_t>> jobs;
    for (const auto n : config.n_list)
        for (std::int64_t t = 0; t < config.trials; ++t) jobs.emplace_back(n, t);

    SweepResult result;
    result.records.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (!failed) {
            const std::size_t i = next++;
            if (i >= jobs.size()) return;
            try {
                result.records[i] = run_trial(config, jobs[i].first, jobs[i].second);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers =
        std::min<std::size_t>(config.workers > 0 ? static_cast<std::size_t>(config.workers) : hw, jobs.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    std::sort(result.records.begin(), result.records.end(),
              [](const SampleRecord& a, const SampleRecord& b) { return std::tie(a.n, a.trial) < std::tie(b.n, b.trial); });
    result.stats = aggregate(result.records);
    if (!config.records_path.empty())
        write_file(config.records_path, [&](std::ostream& o) { write_records(o, result.records); });
    if (!config.aggregate_path.empty())
        write_file(config.aggregate_path, [&](std::ostream& o) { write_aggregate_csv(o, result.stats); });
    if (!config.report_path.empty()) {
        write_file(config.report_path, [&](std::ostream& o) {
            try {
                write_theory_report(o, compare_theory(result.stats, config.tolerances), result.stats);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::InsufficientData) throw;
                o << "theory comparison skipped: " << e.what() << '\n';
            }
        });
    }
    return result;
}

bool TheoryReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const LawCheck& c) { return c.pass; });
}

namespace {

std::string bracket(double lo, double hi) {
    std::ostringstream os;
    os << "in [" << lo << ", " << hi << "]";
    return os.str();
}

std::string at_least(double x) {
    std::ostringstream os;
    os << ">= " << x;
    return os.str();
}

// Largest n carrying statistic `name`, if any.
std::optional<std::int64_t> largest_with(const AggregateStats& stats, const std::string& name) {
    std::optional<std::int64_t> best;
    for (const auto& [n, by_name] : stats.by_n)
        if (by_name.count(name)) best = n;
    return best;
}

} // namespace

TheoryReport compare_theory(const AggregateStats& stats, const TheoryTolerances& tol) {
    const auto ns = stats.n_values();
    if (ns.size() < 3) throw Error(ErrorCode::InsufficientData, "need at least three values of n");
    if (static_cast<double>(ns.back()) < 10.0 * static_cast<double>(ns.front()))
        throw Error(ErrorCode::InsufficientData, "values of n must span at least a decade");
    TheoryReport report;
    const std::int64_t top = ns.back();

    const Regression reg = *stats.edge_regression;
    report.checks.push_back({"slope of mean E against ln n", 0, reg.slope, "target 0.5, " + bracket(tol.slope_low, tol.slope_high),
                             reg.slope >= tol.slope_low && reg.slope <= tol.slope_high});

    for (std::int64_t k = 1; k <= tol.simple_edge_k_max; ++k) {
        const SummaryStat* s = stats.find(top, "E_simple_" + std::to_string(k));
        if (!s) continue;
        const double v = s->mean * 2.0 * static_cast<double>(k);
        report.checks.push_back({"mean simple E_k times 2k, k = " + std::to_string(k), top, v,
                                 "1/(2k) law, " + bracket(tol.simple_edge_low, tol.simple_edge_high),
                                 v >= tol.simple_edge_low && v <= tol.simple_edge_high});
    }

    {
        bool monotone = true;
        for (std::size_t i = 1; i < ns.size(); ++i) {
            const SummaryStat* a = stats.find(ns[i - 1], "V_is_1");
            const SummaryStat* b = stats.find(ns[i], "V_is_1");
            const double va = a->mean * (1 - a->mean) / static_cast<double>(a->count);
            const double vb = b->mean * (1 - b->mean) / static_cast<double>(b->count);
            if (b->mean < a->mean - tol.sigma * std::sqrt(va + vb)) monotone = false;
        }
        report.checks.push_back({"P[V = 1] non-decreasing in n", 0, stats.find(top, "V_is_1")->mean,
                                 "no drop beyond " + std::to_string(tol.sigma).substr(0, 4) + " sigma", monotone});
    }

    {
        const double g = stats.find(top, "genus_over_n")->mean;
        report.checks.push_back({"mean boundary genus / n", top, g, bracket(tol.genus_low, tol.genus_high),
                                 g >= tol.genus_low && g <= tol.genus_high});
    }
    {
        const double e = stats.find(top, "E_KL")->mean;
        report.checks.push_back({"mean E_KL at K = L = ceil(n^1/4)", top, e, "<= " + std::to_string(tol.small_cusp_max).substr(0, 4),
                                 e <= tol.small_cusp_max});
        const double gen = stats.find(top, "generic_all")->mean;
        report.checks.push_back({"fraction generic", top, gen, at_least(tol.genericity_min), gen >= tol.genericity_min});
    }
    if (const auto n = largest_with(stats, "diameter_within_2log3")) {
        const double f = stats.find(*n, "diameter_within_2log3")->mean;
        report.checks.push_back({"fraction with diameter <= 2 log_3 n", *n, f, at_least(tol.diameter_fraction),
                                 f >= tol.diameter_fraction});
    }
    if (const auto n = largest_with(stats, "lambda1_ge_0.05")) {
        const double f = stats.find(*n, "lambda1_ge_0.05")->mean;
        report.checks.push_back({"fraction with lambda1 >= 0.05", *n, f, at_least(tol.lambda1_fraction),
                                 f >= tol.lambda1_fraction});
    }
    if (const auto n = largest_with(stats, "heegaard_ordered")) {
        const double ordered = stats.find(*n, "heegaard_ordered")->mean;
        report.checks.push_back({"Heegaard bracket lower <= upper", *n, ordered, "= 1", ordered == 1.0});
        const double near = stats.find(*n, "heegaard_lower_near_n")->mean;
        report.checks.push_back({"fraction with b1(DM) >= n - (ln n)^2", *n, near, at_least(tol.heegaard_fraction),
                                 near >= tol.heegaard_fraction});
    }
    return report;
}

void write_theory_report(std::ostream& out, const TheoryReport& report, const AggregateStats& stats) {
    out << "Theory comparison\n=================\n\n";
    if (stats.edge_regression) {
        const auto& r = *stats.edge_regression;
        out << "mean E = " << r.slope << " * ln n + " << r.intercept << "  (R^2 = " << r.r_squared << ")\n\n";
    }
    out << "per-size means:\n";
    for (const auto& [n, by_name] : stats.by_n) {
        out << "  n = " << n << ": trials " << by_name.at("E").count << ", E " << by_name.at("E").mean << ", P[V=1] "
            << by_name.at("V_is_1").mean << ", genus/n " << by_name.at("genus_over_n").mean << '\n';
    }
    out << '\n';
    for (const auto& c : report.checks) {
        out << (c.pass ? "PASS  " : "FAIL  ") << c.law;
        if (c.n > 0) out << " (n = " << c.n << ")";
        out << ": observed " << c.observed << ", expected " << c.comparator << '\n';
    }
    out << '\n' << (report.all_pass() ? "all laws within tolerance" : "some laws outside tolerance") << '\n';
}

Rational ExactDistribution::total() const {
    Rational s = 0;
    for (const auto& [_, p] : atoms) s += p;
    return s;
}

namespace {

AtomKey atom_of(const GluingInstance& instance) {
    AtomKey key;
    const EdgeOrbits orbits = build_edge_orbits(instance);
    key.V = vertex_orbits(instance).count;
    key.E = orbits.count();
    for (const auto& [k, c] : edge_histogram(orbits).all) key.histogram.emplace_back(k, c);
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> multiplicity;
    for (const auto& p : instance.pairs()) {
        if (p.first.tet == p.second.tet)
            ++key.dual_loops;
        else
            ++multiplicity[{p.first.tet, p.second.tet}];
    }
    for (const auto& [_, m] : multiplicity) key.dual_extra_parallel += m - 1;
    key.dual_connected = is_connected(build_dual(instance));
    return key;
}

} // namespace

ExactDistribution exact_distribution(std::int64_t n) {
    if (n > 2) throw Error(ErrorCode::TooLarge, "exact distribution is limited to n <= 2");
    ExactDistribution d;
    d.n = n;
    d.instances = instance_count(n);
    const Rational weight(1, static_cast<long long>(d.instances));
    for_each_instance(n, [&](const GluingInstance& g) { d.atoms[atom_of(g)] += weight; });
    return d;
}

std::map<std::string, Rational> exact_instance_distribution(std::int64_t n) {
    if (n > 2) throw Error(ErrorCode::TooLarge, "exact distribution is limited to n <= 2");
    const Rational weight(1, static_cast<long long>(instance_count(n)));
    std::map<std::string, Rational> out;
    for_each_instance(n, [&](const GluingInstance& g) { out[to_text(g)] += weight; });
    return out;
}

std::map<std::string, Rational> peel_pushforward(std::int64_t n) {
    if (n < 1) throw Error(ErrorCode::InvalidN, "n must be positive");
    if (n > 2) throw Error(ErrorCode::TooLarge, "path enumeration is limited to n <= 2");
    std::map<std::string, Rational> out;
    PathEnumerator paths;
    do {
        const PeelResult r = peel_algorithm1(n, paths.chooser());
        BigInt denominator = 1;
        for (const auto a : paths.arities()) denominator *= a;
        out[to_text(r.instance)] += Rational(BigInt(1), denominator);
    } while (paths.advance());
    return out;
}

Rational total_variation(const std::map<std::string, Rational>& a, const std::map<std::string, Rational>& b) {
    std::set<std::string> keys;
    for (const auto& [k, _] : a) keys.insert(k);
    for (const auto& [k, _] : b) keys.insert(k);
    Rational sum = 0;
    for (const auto& k : keys) {
        const auto ia = a.find(k);
        const auto ib = b.find(k);
        const Rational pa = ia == a.end() ? Rational(0) : ia->second;
        const Rational pb = ib == b.end() ? Rational(0) : ib->second;
        sum += pa > pb ? Rational(pa - pb) : Rational(pb - pa);
    }
    return sum / 2;
}

} // namespace rtm
