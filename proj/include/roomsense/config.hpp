#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "roomsense/channel.hpp"
#include "roomsense/control.hpp"
#include "roomsense/dataset.hpp"
#include "roomsense/forest.hpp"
#include "roomsense/radio.hpp"
#include "roomsense/tree.hpp"

namespace roomsense {

struct ClassifierConfig {
    std::string kind = "tree"; // tree | gnb | forest
    TrainConfig tree;
    ForestConfig forest;
    double nb_variance_floor = 1e-6;
};

// Everything a CLI run needs; JSON file plus flag overrides (flags win).
struct RunConfig {
    RadioEnvironment env;
    std::uint64_t seed = 42; // master seed, sub-streams derived by name
    std::filesystem::path out_dir = "out";
    int samples_per_room = 50;
    std::filesystem::path dataset_csv; // defaults to <out_dir>/fingerprints.csv
    std::filesystem::path model_file;  // defaults to <out_dir>/model.json
    SplitSpec split;
    ClassifierConfig classifier;
    ScenarioConfig scenario;
    Trajectory trajectory;

    std::filesystem::path dataset_path() const {
        return dataset_csv.empty() ? out_dir / "fingerprints.csv" : dataset_csv;
    }
    std::filesystem::path model_path() const {
        return model_file.empty() ? out_dir / "model.json" : model_file;
    }
};

// Environment JSON: {"rooms":[{"id":1,"rect":[x0,y0,x1,y1]},...],
// "aps":[{"mac":"..","x":..,"y":..,"tx_power":..},...],
// "path_loss":{"pl0":..,"exponent":..,"shadow_sigma":..,"floor":..,"ceiling":..},
// "seed":42}. Validated on load.
RadioEnvironment load_environment(const std::filesystem::path& path);
RadioEnvironment environment_from_json(const std::string& text);
std::string environment_to_json(const RadioEnvironment& env);

// Run config JSON; the environment comes inline ("environment": {...}) or by
// reference ("environment_file": "path", resolved relative to the config).
RunConfig load_run_config(const std::filesystem::path& path);

// The built-in default: criterion environment (3 rooms of 4x4 m, 3 APs at the
// room centers, sigma 2 dB, seed 42) and the three-room walk scenario.
RadioEnvironment default_environment();
Trajectory default_trajectory();
RunConfig default_run_config();

} // namespace roomsense
