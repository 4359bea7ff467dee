#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "numrange/convexgeom.hpp"
#include "numrange/ensembles.hpp"

namespace numrange {

struct ExperimentConfig {
    std::string scenario;  // fig1, fig3_radial, fig3_circle, fig4_nonnormal,
                           // fig5_beta, bound_check, poly_certify, prob_verify
    MatrixSpec matrix;
    int m_lo = 1;
    int m_hi = 1;
    std::vector<std::uint64_t> seeds;
    SweepConfig sweep{1024};
    double alpha = 1.0;
    std::string output_dir = ".";
    unsigned jobs = 0;
    bool timestamp = true;
    long trials = 100000;
    std::string bound_name = "thm_main";
    nlohmann::json extra;  // scenario-specific knobs

    static ExperimentConfig from_json(const nlohmann::json& j);
    // .toml goes through the bundled TOML subset reader; anything else is
    // parsed as JSON (the canonical format).
    static ExperimentConfig from_file(const std::string& path);
};

struct TrialRecord {
    std::uint64_t seed = 0;
    int m = 0;
    std::map<std::string, double> measured;
    std::map<std::string, double> bounds;
    double wall_time = 0.0;
};

struct ScenarioResult {
    std::vector<TrialRecord> records;
    nlohmann::json summary;
    std::vector<std::string> files;
    bool pass = true;
};

// Runs the configured scenario and writes results.csv, results.json and the
// plot-*.svg files into output_dir. Byte-identical outputs for identical
// configs (SVG timestamp comment aside, which `timestamp=false` suppresses).
ScenarioResult run_scenario(const ExperimentConfig& cfg);

void to_json(nlohmann::json& j, const TrialRecord& r);

}  // namespace numrange
