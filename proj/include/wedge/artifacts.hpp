// Experiment outputs: samples.csv, summary.json, hist_<edge>.csv and the run
// manifest.  All floating-point output uses 10 significant digits with
// locale-independent formatting; identical results serialize to identical
// bytes.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "wedge/harness.hpp"

namespace wedge {

inline constexpr const char* kToolVersion = "0.1.0";

std::string format_g10(double v);

std::uint64_t fnv1a64(std::string_view s);

// Canonical JSON echo of an experiment configuration (sorted keys, no
// whitespace when dumped); the manifest hash is FNV-1a over this.
nlohmann::json experiment_config_json(const ExperimentConfig& cfg);

// Parse the simulate configuration schema.  Throws std::invalid_argument
// with a field-anchored message on semantic problems.
struct SimulateSpec {
    ExperimentConfig config;
    std::filesystem::path out_dir;
    double ks_threshold = 0.05; // used by --check
};
SimulateSpec parse_simulate_config(const nlohmann::json& j);

nlohmann::json summary_json(const ExperimentResult& result);

void write_samples_csv(const std::filesystem::path& path,
                       const ExperimentResult& result);
void write_histogram_csv(const std::filesystem::path& path,
                         const EdgeResult& edge, const TWDistribution& dist);
void write_summary_json(const std::filesystem::path& path,
                        const ExperimentResult& result);
void write_manifest(const std::filesystem::path& path,
                    const ExperimentConfig& cfg,
                    const std::string& config_path_display);

} // namespace wedge
