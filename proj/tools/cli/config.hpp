#pragma once

// Experiment configuration: a JSON document with the blocks
//
//   family      tag plus the parameters of that family (all required)
//   grid        s_min, s_max, s_count, t_min, t_max, t_count
//   tolerances  causal, nondegenerate, mean_curvature, quadrature (defaults)
//   verify      tol, C (override), bump (relative normal bump)
//   flow        dt (number or list), steps, mode (euler | replay), perturb, threshold
//   outputs     list of {kind: mesh | residuals | flow_report | profile, path, format}
//   seed
//
// Unknown keys are errors. Command-line flags are merged into the document
// before it is parsed, so they override file values.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "imcf/families.hpp"

namespace imcf::cli {

struct GridConfig {
    double s_min = 0.0, s_max = 0.0;
    int s_count = 0;
    double t_min = 0.0, t_max = 0.0;
    int t_count = 0;

    Interval s_interval() const { return {s_min, s_max}; }
    Interval t_interval() const { return {t_min, t_max}; }
    double s_at(int i) const;
    double t_at(int j) const;
};

struct Tolerances {
    double causal = kDefaultCausalTol;
    double nondegenerate = kDefaultNondegTol;
    double mean_curvature = kDefaultMeanCurvatureTol;
    double quadrature = kDefaultQuadTol;
};

struct VerifyConfig {
    double tol = 1e-7;
    std::optional<double> C;  // evaluate residuals with this C instead of the family's
    double bump = 0.0;        // relative amplitude of a normal bump on gamma
};

enum class FlowMode { Euler, Replay };

struct FlowConfig {
    std::vector<double> dt;
    int steps = 0;
    FlowMode mode = FlowMode::Euler;
    double perturb = 0.0;
    double threshold = 1e-2;  // terminal deviation above which the run is flagged NON-SOLITON
};

enum class OutputKind { Mesh, Residuals, FlowReport, Profile };

struct OutputSpec {
    OutputKind kind = OutputKind::Mesh;
    std::string path;
    std::string format;
};

/// Family description as read from the config; the director and free
/// functions are kept as text until the family is built.
struct FamilyConfig {
    FamilyTag tag = FamilyTag::CylTimelikeRuling;
    double C = 0.0;
    double k = 0.0, k1 = 0.0, k2 = 0.0;
    int delta = 1, sign_t = 1, sign_r = 1;
    std::string director;  // quadratic | circular | circular-reversed
    double a0 = 0.0;
    std::string a, b;
};

struct ExperimentConfig {
    FamilyConfig family;
    GridConfig grid;
    Tolerances tolerances;
    VerifyConfig verify;
    std::optional<FlowConfig> flow;
    std::vector<OutputSpec> outputs;
    std::uint64_t seed = 0;
};

/// Strict parse; throws ConfigError naming the offending key.
ExperimentConfig parse_config(const nlohmann::json& doc);

/// Reads a JSON file; throws IoError / ConfigError.
nlohmann::json load_config_file(const std::string& path);

/// "SMIN:SMAX:N,TMIN:TMAX:N" into a grid block.
nlohmann::json parse_grid_flag(const std::string& text);

/// FamilySpec for the family block, building director and free functions.
FamilySpec to_family_spec(const FamilyConfig& fc, Interval director_domain);

/// The first output of the given kind, if any.
const OutputSpec* find_output(const ExperimentConfig& cfg, OutputKind kind);

} // namespace imcf::cli
