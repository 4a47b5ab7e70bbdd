// Command-line driver: every experiment, table reproduction, and checker is a
// subcommand with machine-readable CSV/JSON output. All subcommands honor
// --seed and are deterministic given it; EVIDENT_THREADS caps the worker
// count (0 = auto) without changing any output byte.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "evident/algebra.hpp"
#include "evident/boundary.hpp"
#include "evident/codes.hpp"
#include "evident/eprocess.hpp"
#include "evident/extras.hpp"
#include "evident/harness.hpp"
#include "evident/io.hpp"
#include "evident/process_spec.hpp"
#include "evident/rng.hpp"
#include "evident/scoring.hpp"

namespace {

using namespace evident;

struct GlobalOptions {
    std::uint64_t seed = 42;
    std::string reps_tier = "smoke";
    std::string out_dir;
    std::string format = "csv";
    bool expect_pass = false;

    bool full() const { return reps_tier == "full"; }

    void maybe_write(const std::string& filename, const std::string& content) const {
        if (out_dir.empty()) return;
        atomic_write_file(std::filesystem::path(out_dir) / filename, content);
    }
};

int run_table2(const GlobalOptions& opt) {
    const std::size_t reps = opt.full() ? kTable2FullReps : kTable2SmokeReps;
    const auto reports = verify_table2(opt.seed, reps);
    std::ostringstream csv;
    write_stopping_csv(reports, csv);
    if (opt.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : reports)
            rows.push_back({{"b", r.threshold_b},
                            {"predicted_mean", r.predicted_mean},
                            {"mean", r.mean},
                            {"sd", r.sd},
                            {"censor_rate", r.censor_rate},
                            {"normalized_residual", r.normalized_residual}});
        const std::string text = rows.dump(2) + "\n";
        std::cout << text;
        opt.maybe_write("table2.json", text);
    } else {
        std::cout << csv.str();
        opt.maybe_write("table2.csv", csv.str());
    }
    return 0;
}

int run_nml_constants(const GlobalOptions& opt, int n) {
    std::ostringstream os;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) os << ' ';
        os << k << ':' << nml_normalizer(k).str();
    }
    os << '\n';
    std::cout << os.str();
    opt.maybe_write("nml_constants.txt", os.str());
    return 0;
}

int run_nml_horizon(const GlobalOptions& opt, int n_min, int n_max) {
    std::ostringstream os;
    os << "N,q2_of_0_given_0\n";
    const std::vector<int> history{0};
    os.precision(10);
    for (int N = n_min; N <= n_max; ++N)
        os << N << ',' << nml_horizon_conditional(N, 2, history, 0) << '\n';
    std::cout << os.str();
    opt.maybe_write("nml_horizon.csv", os.str());
    return 0;
}

int run_liftability(const GlobalOptions& opt, const std::string& family_name, int depth) {
    CodeLengthFamily family = [&] {
        if (family_name == "kt") return CodeLengthFamily::prequential_kt(depth);
        if (family_name == "laplace") return CodeLengthFamily::prequential_laplace(depth);
        if (family_name == "nml-seq") return CodeLengthFamily::nml_sequence(depth);
        if (family_name == "iid-half") return CodeLengthFamily::iid_measure(Rational(1, 2), depth);
        throw DomainError("unknown family '" + family_name +
                          "' (expected kt|laplace|nml-seq|iid-half)");
    }();
    const LiftabilityReport report = liftability_check(family, depth);
    const std::string text = report.to_json().dump(2) + "\n";
    std::cout << text;
    opt.maybe_write("liftability_" + family_name + ".json", text);
    return (!report.pass && opt.expect_pass) ? 2 : 0;
}

int run_experiment(const GlobalOptions& opt, const std::string& which) {
    ExperimentResult result;
    if (which == "accumulation") {
        result = experiment_accumulation(opt.seed, opt.full() ? 500 : 50, 200);
    } else if (which == "type1") {
        result = experiment_type1(opt.seed, opt.full() ? 10000 : 1000, 500, 20.0);
    } else if (which == "misspec") {
        result = experiment_misspec(opt.seed, opt.full() ? 500 : 50, 300);
    } else {
        throw DomainError("unknown experiment '" + which +
                          "' (expected accumulation|type1|misspec)");
    }
    const std::string text = result.to_json().dump(2) + "\n";
    std::cout << text;
    opt.maybe_write("experiment_" + which + ".json", text);
    if (!result.trajectories.empty()) {
        std::ostringstream traj;
        write_trajectories_csv(result, traj);
        opt.maybe_write("experiment_" + which + "_trajectories.csv", traj.str());
    }
    return 0;
}

int run_scoring_decay(const GlobalOptions& opt, double p1, double p0, int n_max) {
    const auto curve = decay_curve(ScoringRule::brier_rule(), Distribution::bernoulli(p1),
                                   Distribution::bernoulli(p0), n_max);
    std::ostringstream os;
    write_decay_csv(curve, os);
    std::cout << os.str();
    opt.maybe_write("scoring_decay.csv", os.str());
    return 0;
}

int run_conformal_check(const GlobalOptions& opt) {
    // Exhaustive validity: for every binary bag of size <= 5 with both
    // symbols present, the position-averaged e-value equals 1.
    const NonconformityScorer scorer = distance_to_bag_mean();
    double max_dev = 0.0;
    int bags = 0;
    for (int total = 2; total <= 5; ++total) {
        for (int mask = 1; mask < (1 << total) - 1; ++mask) {
            std::vector<Example> pool;
            for (int i = 0; i < total; ++i) pool.push_back((mask >> i) & 1 ? 1.0 : 0.0);
            double avg = 0.0;
            for (int test = 0; test < total; ++test) {
                std::vector<Example> calib;
                for (int i = 0; i < total; ++i)
                    if (i != test) calib.push_back(pool[static_cast<std::size_t>(i)]);
                avg += conformal_e_value(scorer, calib, pool[static_cast<std::size_t>(test)])
                           .e_value;
            }
            avg /= total;
            max_dev = std::max(max_dev, std::abs(avg - 1.0));
            ++bags;
        }
    }
    const bool pass = max_dev <= 1e-12;

    // One worked example for the report.
    const std::vector<Example> calib{0.0, 1.0, 0.0};
    const ConformalResult example = conformal_e_value(scorer, calib, 1.0);

    nlohmann::json j = {{"bags_checked", bags},
                        {"max_position_average_deviation", max_dev},
                        {"pass", pass},
                        {"example", example.to_json()}};
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    opt.maybe_write("conformal_check.json", text);
    return (!pass && opt.expect_pass) ? 2 : 0;
}

int run_pacbayes_check(const GlobalOptions& opt, int instances) {
    RngStream rng(opt.seed, 0);
    const std::vector<Distribution> grid = {
        Distribution::bernoulli(0.2), Distribution::bernoulli(0.35),
        Distribution::bernoulli(0.5), Distribution::bernoulli(0.65),
        Distribution::bernoulli(0.8)};
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < instances; ++i) {
        PacBayesInstance inst{grid,
                              {0.2, 0.2, 0.2, 0.2, 0.2},
                              Distribution::bernoulli(0.5),
                              SamplePath::generate(rng.next_u64(), Distribution::bernoulli(0.5),
                                                   10)};
        const auto ratios = cumulative_log_ratios(inst);
        std::vector<double> posterior(grid.size(), 0.0);
        const std::size_t best = static_cast<std::size_t>(
            std::max_element(ratios.begin(), ratios.end()) - ratios.begin());
        posterior[best] = 1.0;
        min_gap = std::min(min_gap, pac_bayes_check(inst, posterior).gap);
    }
    const bool pass = min_gap >= -1e-10;
    nlohmann::json j = {{"instances", instances}, {"min_gap", min_gap}, {"pass", pass}};
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    opt.maybe_write("pacbayes_check.json", text);
    return (!pass && opt.expect_pass) ? 2 : 0;
}

int run_validity(const GlobalOptions& opt, const std::string& spec, double null_p, int depth) {
    const ProcessFactory factory = parse_process_spec(spec);
    const IidKernel null_kernel(Distribution::bernoulli(null_p));
    const ValidityReport report = validity_check(factory, null_kernel, depth, spec);
    const std::string text = report.to_json().dump(2) + "\n";
    std::cout << text;
    opt.maybe_write("validity.json", text);
    return (!report.pass && opt.expect_pass) ? 2 : 0;
}

int run_sample_complexity(const GlobalOptions& opt, double alpha, double mu) {
    std::ostringstream os;
    os.precision(6);
    os << sample_complexity(alpha, mu) << '\n';
    std::cout << os.str();
    opt.maybe_write("sample_complexity.txt", os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"evident: anytime-valid sequential evidence toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions opt;
    app.add_option("--seed", opt.seed, "master RNG seed")->capture_default_str();
    app.add_option("--reps-tier", opt.reps_tier, "replication tier")
        ->check(CLI::IsMember({"smoke", "full"}))
        ->capture_default_str();
    app.add_option("--out", opt.out_dir, "output directory (files written atomically)");
    app.add_option("--format", opt.format, "table output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_flag("--expect-pass", opt.expect_pass, "exit 2 when a check FAILs");

    auto* table2 = app.add_subcommand("table2", "stopping-time table for b in {10..200}");

    int nml_n = 3;
    auto* nml_constants = app.add_subcommand("nml-constants", "exact normalizers C_1..C_n");
    nml_constants->add_option("--n", nml_n, "largest horizon")->check(CLI::Range(1, 30))
        ->capture_default_str();

    int horizon_min = 2, horizon_max = 7;
    auto* nml_horizon =
        app.add_subcommand("nml-horizon", "horizon dependence of the NML conditional q2(0|0)");
    nml_horizon->add_option("--n-min", horizon_min)->check(CLI::Range(2, 16))
        ->capture_default_str();
    nml_horizon->add_option("--n-max", horizon_max)->check(CLI::Range(2, 16))
        ->capture_default_str();

    std::string family = "nml-seq";
    int lift_depth = 4;
    auto* liftability =
        app.add_subcommand("liftability", "sub-probability check of a code family");
    liftability->add_option("family", family, "kt|laplace|nml-seq|iid-half")->required();
    liftability->add_option("--depth", lift_depth)->check(CLI::Range(1, 12))
        ->capture_default_str();

    std::string which_experiment;
    auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiment drivers");
    experiment->add_option("which", which_experiment, "accumulation|type1|misspec")->required();

    double decay_p1 = 0.75, decay_p0 = 0.5;
    int decay_n = 100;
    auto* scoring_decay =
        app.add_subcommand("scoring-decay", "expected-evidence decay of the Brier-induced process");
    scoring_decay->add_option("--p1", decay_p1)->capture_default_str();
    scoring_decay->add_option("--p0", decay_p0)->capture_default_str();
    scoring_decay->add_option("--n-max", decay_n)->check(CLI::Range(1, 100000))
        ->capture_default_str();

    auto* conformal = app.add_subcommand("conformal-check", "exhaustive conformal e-value validity");

    int pacbayes_instances = 100;
    auto* pacbayes = app.add_subcommand("pacbayes-check", "variational-gap check on random instances");
    pacbayes->add_option("--instances", pacbayes_instances)->check(CLI::Range(1, 100000))
        ->capture_default_str();

    std::string process_spec;
    double null_p = 0.5;
    int validity_depth = 5;
    auto* validity = app.add_subcommand("validity", "enumerate one-step expectations of a process");
    validity->add_option("spec", process_spec,
                         "process expression, e.g. mix(0.5:lr(0.65,0.5), 0.5:lr(0.35,0.5))")
        ->required();
    validity->add_option("--null", null_p, "null Bernoulli parameter")->capture_default_str();
    validity->add_option("--depth", validity_depth)->check(CLI::Range(1, 12))
        ->capture_default_str();

    double sc_alpha = 0.0, sc_mu = 0.0;
    auto* sample_complexity_cmd =
        app.add_subcommand("sample-complexity", "expected detections per log(1/alpha)/mu");
    sample_complexity_cmd->add_option("--alpha", sc_alpha)->required();
    sample_complexity_cmd->add_option("--mu", sc_mu)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (table2->parsed()) return run_table2(opt);
        if (nml_constants->parsed()) return run_nml_constants(opt, nml_n);
        if (nml_horizon->parsed()) return run_nml_horizon(opt, horizon_min, horizon_max);
        if (liftability->parsed()) return run_liftability(opt, family, lift_depth);
        if (experiment->parsed()) return run_experiment(opt, which_experiment);
        if (scoring_decay->parsed()) return run_scoring_decay(opt, decay_p1, decay_p0, decay_n);
        if (conformal->parsed()) return run_conformal_check(opt);
        if (pacbayes->parsed()) return run_pacbayes_check(opt, pacbayes_instances);
        if (validity->parsed())
            return run_validity(opt, process_spec, null_p, validity_depth);
        if (sample_complexity_cmd->parsed()) return run_sample_complexity(opt, sc_alpha, sc_mu);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
