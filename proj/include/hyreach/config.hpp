#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "hyreach/levelset.hpp"
#include "hyreach/model.hpp"
#include "hyreach/profile.hpp"
#include "hyreach/synth.hpp"

namespace hyreach {

// Everything one solver run needs, assembled from an INI-style file plus
// command-line overrides. Sections and keys are strict: unknown names are
// configuration errors, not silent no-ops.
struct RunConfig {
    // [model]
    std::string model_type = "constant";  // "constant" | "table"
    VehicleParams params;
    ParametricParams table;

    // [levelset]
    GridSpec grid;
    BoxSet box;

    // [profile] — either a CSV path or a constant route; sub-stepped afterwards.
    std::string profile_path;
    int profile_count = 0;
    double profile_distance_m = 0.0;
    double profile_speed_mps = 0.0;
    double max_step_s = 0.0;  // <= 0 keeps links as given

    // [dp]
    bool parallel = true;
    int threads = 0;
    bool stop_when_empty = true;

    // [synth]
    int target_stage = -1;  // -1 targets the last reachable stage
    bool has_target = false;
    HybridPoint target;
    double value_slack = 0.0;

    // [output]
    std::string output_dir = "out";
};

RunConfig parse_config(std::istream& in, const std::string& origin);
RunConfig load_config(const std::filesystem::path& path);

// "section.key=value", the same names the file uses (e.g. "dp.threads=4").
void apply_override(RunConfig& cfg, const std::string& assignment);

// Route described by the config, already sub-stepped per max_step_s.
// `base_dir` anchors a relative profile path (use the config file's directory).
DrivingProfile build_profile(const RunConfig& cfg, const std::filesystem::path& base_dir = {});

// Vehicle described by [model]; validates parameters (hard errors throw).
std::unique_ptr<HybridSystemModel> build_model(const RunConfig& cfg);

}  // namespace hyreach
