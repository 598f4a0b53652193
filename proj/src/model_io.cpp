#include "roomsense/model_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "roomsense/errors.hpp"

namespace roomsense {

using nlohmann::json;

std::size_t model_ap_count(const AnyModel& model) {
    return std::visit([](const auto& m) { return m.ap_count; }, model);
}

const std::vector<RoomId>& model_classes(const AnyModel& model) {
    return std::visit([](const auto& m) -> const std::vector<RoomId>& { return m.classes; },
                      model);
}

std::string model_kind(const AnyModel& model) {
    struct Kind {
        std::string operator()(const DecisionTreeModel&) const { return "tree"; }
        std::string operator()(const GaussianNBModel&) const { return "gnb"; }
        std::string operator()(const RandomForestModel&) const { return "forest"; }
    };
    return std::visit(Kind{}, model);
}

RoomId model_predict(const AnyModel& model, const RssiVector& rssi) {
    return argmax_class(model_proba(model, rssi));
}

std::map<RoomId, double> model_proba(const AnyModel& model, const RssiVector& rssi) {
    struct Proba {
        const RssiVector& rssi;
        std::map<RoomId, double> operator()(const DecisionTreeModel& m) const {
            return predict_proba(m, rssi);
        }
        std::map<RoomId, double> operator()(const GaussianNBModel& m) const {
            return predict_proba_gnb(m, rssi);
        }
        std::map<RoomId, double> operator()(const RandomForestModel& m) const {
            return predict_proba_forest(m, rssi);
        }
    };
    return std::visit(Proba{rssi}, model);
}

namespace {

json counts_to_json(const std::map<RoomId, std::size_t>& counts) {
    json j = json::object();
    for (const auto& [label, count] : counts) j[std::to_string(label)] = count;
    return j;
}

std::map<RoomId, std::size_t> counts_from_json(const json& j) {
    std::map<RoomId, std::size_t> counts;
    for (const auto& [key, value] : j.items()) {
        counts[std::stoi(key)] = value.get<std::size_t>();
    }
    return counts;
}

json node_to_json(const TreeNode& node) {
    json j;
    j["counts"] = counts_to_json(node.counts);
    if (!node.is_leaf()) {
        j["feature"] = node.feature;
        j["threshold"] = node.threshold;
        j["left"] = node_to_json(*node.left);
        j["right"] = node_to_json(*node.right);
    }
    return j;
}

std::unique_ptr<TreeNode> node_from_json(const json& j) {
    auto node = std::make_unique<TreeNode>();
    node->counts = counts_from_json(j.at("counts"));
    if (j.contains("feature")) {
        node->feature = j.at("feature").get<int>();
        node->threshold = j.at("threshold").get<double>();
        node->left = node_from_json(j.at("left"));
        node->right = node_from_json(j.at("right"));
    }
    return node;
}

json tree_to_json(const DecisionTreeModel& m) { return json{{"root", node_to_json(*m.root)}}; }

DecisionTreeModel tree_from_json(const json& j, std::size_t ap_count,
                                 std::vector<RoomId> classes) {
    DecisionTreeModel m;
    m.ap_count = ap_count;
    m.classes = std::move(classes);
    m.root = node_from_json(j.at("root"));
    return m;
}

} // namespace

std::string model_to_json(const AnyModel& model) {
    json j;
    j["kind"] = model_kind(model);
    j["version"] = 1;
    j["ap_count"] = model_ap_count(model);
    j["classes"] = model_classes(model);

    if (const auto* tree = std::get_if<DecisionTreeModel>(&model)) {
        j["tree"] = tree_to_json(*tree);
    } else if (const auto* gnb = std::get_if<GaussianNBModel>(&model)) {
        j["gnb"] = json{{"priors", gnb->priors},
                        {"means", gnb->means},
                        {"variances", gnb->variances},
                        {"variance_floor", gnb->variance_floor}};
    } else if (const auto* forest = std::get_if<RandomForestModel>(&model)) {
        json trees = json::array();
        for (const auto& t : forest->trees) trees.push_back(tree_to_json(t));
        j["forest"] = json{{"trees", std::move(trees)}};
    }
    return j.dump(2);
}

AnyModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("model JSON: ") + e.what());
    }

    try {
        const auto kind = j.at("kind").get<std::string>();
        const auto version = j.at("version").get<int>();
        if (version != 1) {
            throw ParseError("unsupported model version " + std::to_string(version));
        }
        const auto ap_count = j.at("ap_count").get<std::size_t>();
        auto classes = j.at("classes").get<std::vector<RoomId>>();

        if (kind == "tree") {
            return tree_from_json(j.at("tree"), ap_count, std::move(classes));
        }
        if (kind == "gnb") {
            GaussianNBModel m;
            m.ap_count = ap_count;
            m.classes = std::move(classes);
            const auto& g = j.at("gnb");
            m.priors = g.at("priors").get<std::vector<double>>();
            m.means = g.at("means").get<std::vector<std::vector<double>>>();
            m.variances = g.at("variances").get<std::vector<std::vector<double>>>();
            m.variance_floor = g.at("variance_floor").get<double>();
            return m;
        }
        if (kind == "forest") {
            RandomForestModel m;
            m.ap_count = ap_count;
            m.classes = classes;
            for (const auto& t : j.at("forest").at("trees")) {
                m.trees.push_back(tree_from_json(t, ap_count, classes));
            }
            return m;
        }
        throw ParseError("unknown model kind \"" + kind + "\"");
    } catch (const json::exception& e) {
        throw ParseError(std::string("model JSON: ") + e.what());
    }
}

void save_model(const AnyModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << model_to_json(model) << '\n';
}

AnyModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string() + " for reading");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return model_from_json(text);
}

} // namespace roomsense
