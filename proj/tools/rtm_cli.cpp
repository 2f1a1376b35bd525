// Command-line front end: sampling, sweeps, peeling traces, exact tables,
// homology and theory reports.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rtm/complex.hpp"
#include "rtm/error.hpp"
#include "rtm/harness.hpp"
#include "rtm/homology.hpp"
#include "rtm/peeling.hpp"
#include "rtm/rng.hpp"

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw rtm::Error(rtm::ErrorCode::IoError, "cannot write " + path);
    return out;
}

int cmd_sample(std::int64_t n, std::uint64_t seed, bool simple, const std::string& out_path) {
    rtm::GluingInstance instance;
    std::int64_t attempts = 1;
    if (simple) {
        auto s = rtm::sample_simple(n, rtm::Seed{seed});
        instance = std::move(s.instance);
        attempts = s.attempts;
    } else {
        instance = rtm::sample_uniform(n, rtm::Seed{seed});
    }
    auto out = open_out(out_path);
    rtm::write_instance(out, instance);
    const auto summary = rtm::summarize(instance);
    std::cout << "n=" << n << " V=" << summary.V << " E=" << summary.edges.total
              << " boundary_components=" << summary.boundary_components
              << " chi_boundary=" << summary.boundary_euler_characteristic << " attempts=" << attempts << '\n';
    return 0;
}

int cmd_sweep(const std::string& config_path, int workers) {
    auto config = rtm::load_config(config_path);
    if (workers > 0) config.workers = workers;
    const auto result = rtm::run_sweep(config);
    std::cout << "records: " << result.records.size() << '\n';
    if (result.stats.edge_regression)
        std::cout << "mean E vs ln n slope: " << result.stats.edge_regression->slope << '\n';
    return 0;
}

int cmd_peel(int algorithm, std::int64_t n, std::int64_t trials, std::uint64_t seed, const std::string& trace_path) {
    std::vector<rtm::PeelTrace> traces;
    double mean_len_e = 0, mean_len_e2 = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        const rtm::Seed s{rtm::derive_seed(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t))};
        if (algorithm == 1) {
            traces.push_back(rtm::peel_algorithm1(n, s).trace);
        } else {
            auto r = rtm::peel_algorithm2(n, s, {0, 1}, {2, 3});
            mean_len_e += static_cast<double>(r.length_e);
            mean_len_e2 += static_cast<double>(r.length_e_prime);
            traces.push_back(std::move(r.trace));
        }
    }
    auto out = open_out(trace_path);
    rtm::write_trace_csv(out, traces, true);
    const auto report = rtm::trace_report(traces);
    std::cout << "algorithm " << algorithm << ", n=" << n << ", trials=" << trials << '\n'
              << "mean edges closed: " << report.mean_total_closed << '\n';
    if (algorithm == 2)
        std::cout << "mean length of e: " << mean_len_e / static_cast<double>(trials)
                  << ", of e': " << mean_len_e2 / static_cast<double>(trials) << '\n';
    std::cout << "t,mean_E_t,mean_F_sing,regular_comparator,singular_comparator,singular_bound\n";
    for (std::size_t t = 0; t < report.mean_closed.size(); ++t)
        std::cout << t << ',' << report.mean_closed[t] << ',' << report.mean_singular[t] << ','
                  << report.regular_comparator[t] << ',' << report.singular_comparator[t] << ','
                  << report.singular_bound[t] << '\n';
    return 0;
}

int cmd_enumerate(std::int64_t n, const std::string& out_path) {
    const auto d = rtm::exact_distribution(n);
    auto out = open_out(out_path);
    out << "V,E,histogram,dual_loops,dual_extra_parallel,dual_connected,probability\n";
    for (const auto& [key, p] : d.atoms) {
        out << key.V << ',' << key.E << ',';
        for (std::size_t i = 0; i < key.histogram.size(); ++i)
            out << (i ? ";" : "") << key.histogram[i].first << ':' << key.histogram[i].second;
        out << ',' << key.dual_loops << ',' << key.dual_extra_parallel << ',' << (key.dual_connected ? 1 : 0) << ','
            << p << '\n';
    }
    std::cout << "instances: " << d.instances << ", atoms: " << d.atoms.size() << ", total probability: " << d.total()
              << '\n';
    return 0;
}

int cmd_homology(std::int64_t n, std::int64_t trials, std::uint64_t seed) {
    std::cout << "trial,E,b1_rel,b1_abs,b1_double,torsion,heegaard_lower,heegaard_upper\n";
    for (std::int64_t t = 0; t < trials; ++t) {
        const auto instance =
            rtm::sample_uniform(n, rtm::Seed{rtm::derive_seed(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t))});
        const auto orbits = rtm::build_edge_orbits(instance);
        const auto surface = rtm::build_boundary_surface(instance, orbits);
        const auto h = rtm::homology_panel(instance, orbits, surface);
        std::cout << t << ',' << orbits.count() << ',' << h.b1_rel() << ',' << h.b1_abs() << ',' << h.b1_double() << ',';
        for (std::size_t i = 0; i < h.absolute.torsion.size(); ++i) std::cout << (i ? ";" : "") << h.absolute.torsion[i];
        std::cout << ',' << h.heegaard.lower << ',' << h.heegaard.upper << '\n';
    }
    return 0;
}

int cmd_theory_report(const std::string& in_dir, const std::string& out_path) {
    std::vector<rtm::SampleRecord> records;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(in_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        auto part = rtm::read_records_file(f.string());
        records.insert(records.end(), part.begin(), part.end());
    }
    if (records.empty()) throw rtm::Error(rtm::ErrorCode::InsufficientData, "no records found in " + in_dir);
    const auto stats = rtm::aggregate(records);
    const auto report = rtm::compare_theory(stats);
    auto out = open_out(out_path);
    rtm::write_theory_report(out, report, stats);
    std::cout << (report.all_pass() ? "all laws within tolerance" : "some laws outside tolerance") << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random tetrahedral gluings: sampling, invariants and experiments"};
    app.require_subcommand(1);

    std::int64_t n = 0;
    std::uint64_t seed = 0;
    bool simple = false;
    std::string out_path;
    auto* sample = app.add_subcommand("sample", "Sample one instance and write it to a file");
    sample->add_option("--n", n, "Number of tetrahedra")->required();
    sample->add_option("--seed", seed, "Seed")->required();
    sample->add_flag("--simple", simple, "Condition on a simple dual graph");
    sample->add_option("--out", out_path, "Output file")->required();

    std::string config_path;
    int workers = 0;
    auto* sweep = app.add_subcommand("sweep", "Run a configured experiment sweep");
    sweep->add_option("--config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
    sweep->add_option("--workers", workers, "Override the worker count");

    int algorithm = 1;
    std::int64_t trials = 1;
    std::string trace_path;
    auto* peel = app.add_subcommand("peel", "Run the sequential peeling sampler and record traces");
    peel->add_option("--algorithm", algorithm, "1 (uniform peeling) or 2 (edge-following)")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    peel->add_option("--n", n, "Number of tetrahedra")->required();
    peel->add_option("--trials", trials, "Number of runs")->required();
    peel->add_option("--seed", seed, "Master seed");
    peel->add_option("--trace-out", trace_path, "CSV trace output")->required();

    auto* enumerate = app.add_subcommand("enumerate", "Write the exact distribution table for n = 1 or 2");
    enumerate->add_option("--n", n, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
    enumerate->add_option("--out", out_path, "CSV output")->required();

    auto* homology = app.add_subcommand("homology", "Homology panel for sampled instances");
    homology->add_option("--n", n, "Number of tetrahedra")->required();
    homology->add_option("--trials", trials, "Number of samples")->required();
    homology->add_option("--seed", seed, "Master seed");

    std::string in_dir;
    auto* theory = app.add_subcommand("theory-report", "Compare sweep records with the asymptotic laws");
    theory->add_option("--in", in_dir, "Directory of JSONL record files")->required()->check(CLI::ExistingDirectory);
    theory->add_option("--out", out_path, "Report output")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sample) return cmd_sample(n, seed, simple, out_path);
        if (*sweep) return cmd_sweep(config_path, workers);
        if (*peel) return cmd_peel(algorithm, n, trials, seed, trace_path);
        if (*enumerate) return cmd_enumerate(n, out_path);
        if (*homology) return cmd_homology(n, trials, seed);
        if (*theory) return cmd_theory_report(in_dir, out_path);
    } catch (const rtm::Error& e) {
        std::cerr << "error (" << rtm::to_string(e.code()) << "): " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
