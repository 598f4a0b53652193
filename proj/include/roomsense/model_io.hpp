#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <variant>

#include "roomsense/bayes.hpp"
#include "roomsense/forest.hpp"
#include "roomsense/tree.hpp"

namespace roomsense {

using AnyModel = std::variant<DecisionTreeModel, GaussianNBModel, RandomForestModel>;

std::size_t model_ap_count(const AnyModel& model);
const std::vector<RoomId>& model_classes(const AnyModel& model);
std::string model_kind(const AnyModel& model); // "tree" | "gnb" | "forest"

RoomId model_predict(const AnyModel& model, const RssiVector& rssi);
std::map<RoomId, double> model_proba(const AnyModel& model, const RssiVector& rssi);

// JSON document with a "kind" discriminator plus "version", "ap_count",
// "classes" and the kind-specific parameters. load(save(m)) reproduces
// identical predictions on all inputs.
std::string model_to_json(const AnyModel& model);
AnyModel model_from_json(const std::string& text);

void save_model(const AnyModel& model, const std::filesystem::path& path);
AnyModel load_model(const std::filesystem::path& path);

} // namespace roomsense
