#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gtscore/objective.hpp"
#include "gtscore/search.hpp"
#include "gtscore/serialize.hpp"

namespace gtscore::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kUsageError = 1, kDataError = 2, kInvariantFailure = 3 };

struct RunConfig {
    std::string data_dir = "data";
    std::vector<std::string> assets;  // empty: every *.csv in data_dir
    std::vector<StrategyKind> strategies{std::begin(kAllStrategies), std::end(kAllStrategies)};
    std::vector<ObjectiveKind> objectives{std::begin(kAllObjectives), std::end(kAllObjectives)};
    WalkforwardConfig wf;
    MonteCarloConfig mc;
    int budget = 25;
    double cost_bps = 0.0;
    ObjectiveConfig objective;
    std::vector<double> cost_sweep_bps{0, 2, 4, 6, 8, 10};
    std::string out_dir = "out";
};

Json to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const Json& j);
RunConfig load_run_config(const std::string& path);

/// "a..b" inclusive.
std::vector<std::uint64_t> parse_seed_range(std::string_view text);

std::vector<PriceSeries> load_assets(const RunConfig& cfg);

/// Writes one CSV per asset in the synthetic spec file; returns written paths.
std::vector<std::string> cmd_synth(const std::string& spec_path, const std::string& out_dir);

struct StudySummary {
    std::size_t trials = 0;
    std::vector<std::string> warnings;
    std::vector<std::string> files;
};

StudySummary cmd_walkforward(const RunConfig& cfg, int jobs);
StudySummary cmd_montecarlo(const RunConfig& cfg, int jobs);

/// Writes cost_sensitivity.csv next to the trials file (or into out_dir).
std::string cmd_costsweep(const std::string& trials_path, const std::vector<double>& bps, const std::string& out_dir);

/// Prints aligned tables and writes fig1/fig2/fig3 plot data into out_dir.
void cmd_report(const std::string& out_dir, std::ostream& os);

/// Recomputes every aggregate file in out_dir from trials.csv; returns mismatching files.
std::vector<std::string> cmd_verify(const std::string& out_dir);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace gtscore::cli
