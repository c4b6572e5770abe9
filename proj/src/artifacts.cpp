#include "wedge/artifacts.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace wedge {

std::string format_g10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace {

nlohmann::json spectrum_json(const SpectrumSpec& s) {
    nlohmann::json j;
    switch (s.kind) {
    case SpectrumSpec::Kind::identity:
        j["kind"] = "identity";
        break;
    case SpectrumSpec::Kind::explicit_list:
        j["kind"] = "explicit";
        j["values"] = s.values;
        break;
    case SpectrumSpec::Kind::uniform:
        j["kind"] = "uniform";
        j["mean"] = s.mean;
        j["var_exponent"] = s.var_exponent;
        break;
    }
    return j;
}

SpectrumSpec parse_spectrum(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("config field 'spectrum.kind' is required");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "identity") return SpectrumSpec::identity();
    if (kind == "explicit") {
        if (!j.contains("values"))
            throw std::invalid_argument(
                "config field 'spectrum.values' is required for explicit kind");
        return SpectrumSpec::explicit_list(
            j.at("values").get<std::vector<double>>());
    }
    if (kind == "uniform") {
        SpectrumSpec s = SpectrumSpec::uniform(j.value("mean", 1.0),
                                               j.value("var_exponent", 1.75));
        return s;
    }
    throw std::invalid_argument("config field 'spectrum.kind' must be one of "
                                "identity/explicit/uniform");
}

ScalingMode parse_mode(const std::string& m) {
    if (m == "paper") return ScalingMode::paper;
    if (m == "adjusted") return ScalingMode::adjusted;
    if (m == "fitted") return ScalingMode::fitted;
    throw std::invalid_argument(
        "config field 'scaling_mode' must be paper/adjusted/fitted");
}

nlohmann::json edge_json(const EdgeResult& e) {
    nlohmann::json j;
    j["edge"] = to_string(e.edge);
    j["mode"] = to_string(e.params.mode);
    j["gamma"] = e.params.gamma;
    j["mu"] = e.params.mu;
    j["sigma"] = e.params.sigma;
    j["nu"] = e.params.nu;
    j["mu_paper"] = e.params_paper.mu;
    j["sigma_paper"] = e.params_paper.sigma;
    j["ks"] = e.ks;
    j["ks_paper"] = e.ks_paper;
    j["delta"] = e.delta;
    j["kappa"] = e.kappa;
    j["delta_bound"] = e.delta_bound;
    j["kappa_halfwidth"] = e.kappa_halfwidth;
    j["boundary_warning"] = e.fit_boundary_warning;
    return j;
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc;
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

} // namespace

nlohmann::json experiment_config_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["beta"] = cfg.ensemble.beta;
    j["p"] = cfg.ensemble.p;
    j["n"] = cfg.ensemble.n;
    j["trials"] = cfg.trials;
    j["spectrum"] = spectrum_json(cfg.ensemble.spectrum);
    nlohmann::json edges = nlohmann::json::array();
    if (cfg.edge_max) edges.push_back("max");
    if (cfg.edge_min) edges.push_back("min");
    j["edges"] = edges;
    j["scaling_mode"] = to_string(cfg.scaling_mode);
    j["seed"] = cfg.ensemble.seed;
    j["histogram_bins"] = cfg.histogram_bins;
    return j;
}

SimulateSpec parse_simulate_config(const nlohmann::json& j) {
    SimulateSpec out;
    for (const char* field : {"beta", "p", "n", "trials", "spectrum", "seed"})
        if (!j.contains(field))
            throw std::invalid_argument(std::string("config field '") + field +
                                        "' is required");
    out.config.ensemble.beta = j.at("beta").get<int>();
    out.config.ensemble.p = j.at("p").get<int>();
    out.config.ensemble.n = j.at("n").get<int>();
    out.config.trials = j.at("trials").get<long>();
    out.config.ensemble.spectrum = parse_spectrum(j.at("spectrum"));
    out.config.ensemble.seed = j.at("seed").get<std::uint64_t>();
    out.config.edge_max = false;
    out.config.edge_min = false;
    if (j.contains("edges")) {
        for (const auto& e : j.at("edges")) {
            const std::string name = e.get<std::string>();
            if (name == "max")
                out.config.edge_max = true;
            else if (name == "min")
                out.config.edge_min = true;
            else
                throw std::invalid_argument(
                    "config field 'edges' entries must be 'max' or 'min'");
        }
    } else {
        out.config.edge_max = true;
    }
    out.config.scaling_mode =
        parse_mode(j.value("scaling_mode", std::string("adjusted")));
    out.config.histogram_bins = j.value("histogram_bins", 60);
    if (j.contains("out_dir"))
        out.out_dir = j.at("out_dir").get<std::string>();
    out.ks_threshold = j.value("ks_threshold", 0.05);
    out.config.validate();
    return out;
}

nlohmann::json summary_json(const ExperimentResult& r) {
    nlohmann::json j;
    j["version"] = kToolVersion;
    j["config"] = experiment_config_json(r.config);
    j["seed"] = r.config.ensemble.seed;
    const double gamma =
        std::sqrt(static_cast<double>(r.config.ensemble.p) / r.config.ensemble.n);
    j["gamma"] = gamma;
    j["gamma_squared"] = gamma * gamma;
    j["p_over_n"] =
        static_cast<double>(r.config.ensemble.p) / r.config.ensemble.n;
    j["lambda_bar"] = r.lambda_bar;
    j["f4_convention"] = to_string(r.f4_convention);
    j["condition"] = {{"var_s", r.condition.var_s},
                      {"alpha_eff", r.condition.alpha_eff},
                      {"decay_factor", r.condition.decay_factor},
                      {"n23_var", r.condition.n23_var},
                      {"pass", r.condition.pass}};
    nlohmann::json edges;
    if (r.has_max) edges["max"] = edge_json(r.max_edge);
    if (r.has_min) edges["min"] = edge_json(r.min_edge);
    j["edges"] = edges;
    j["resampled_trials"] = r.resampled_trials;
    return j;
}

void write_samples_csv(const std::filesystem::path& path,
                       const ExperimentResult& r) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "trial,x_max,x_min,chi_max,chi_min\n";
    const long trials = r.config.trials;
    for (long t = 0; t < trials; ++t) {
        out << t << ',' << format_g10(r.x_max[t]) << ',' << format_g10(r.x_min[t])
            << ',' << (r.has_max ? format_g10(r.max_edge.chi[t]) : "nan") << ','
            << (r.has_min ? format_g10(r.min_edge.chi[t]) : "nan") << '\n';
    }
}

void write_histogram_csv(const std::filesystem::path& path,
                         const EdgeResult& edge, const TWDistribution& dist) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "bin_center,density,tw_pdf\n";
    for (std::size_t i = 0; i < edge.histogram.centers.size(); ++i) {
        const double c = edge.histogram.centers[i];
        out << format_g10(c) << ',' << format_g10(edge.histogram.density[i])
            << ',' << format_g10(dist.pdf(c)) << '\n';
    }
}

void write_summary_json(const std::filesystem::path& path,
                        const ExperimentResult& result) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << summary_json(result).dump(2) << '\n';
}

void write_manifest(const std::filesystem::path& path,
                    const ExperimentConfig& cfg,
                    const std::string& config_path_display) {
    const nlohmann::json canonical = experiment_config_json(cfg);
    char hash[24];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical.dump())));
    nlohmann::json j;
    j["config_hash"] = hash;
    j["version"] = kToolVersion;
    j["created_utc"] = utc_timestamp();
    j["config_path"] = config_path_display;
    j["out_dir"] = path.parent_path().string();
    j["seed"] = cfg.ensemble.seed;
    j["config"] = canonical;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

} // namespace wedge
