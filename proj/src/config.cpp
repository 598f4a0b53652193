#include "roomsense/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "roomsense/errors.hpp"

namespace roomsense {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string() + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

RadioEnvironment environment_from(const json& j) {
    try {
        RadioEnvironment env;
        for (const auto& r : j.at("rooms")) {
            Room room;
            room.id = r.at("id").get<RoomId>();
            const auto rect = r.at("rect").get<std::array<double, 4>>();
            room.bounds = {{rect[0], rect[1]}, {rect[2], rect[3]}};
            env.rooms.push_back(room);
        }
        int index = 0;
        for (const auto& a : j.at("aps")) {
            AccessPoint ap;
            ap.index = index++;
            ap.mac = MacAddress::parse(a.at("mac").get<std::string>());
            ap.position = {a.at("x").get<double>(), a.at("y").get<double>()};
            if (a.contains("tx_power")) ap.tx_power_dbm = a.at("tx_power").get<double>();
            env.aps.push_back(ap);
        }
        if (j.contains("path_loss")) {
            const auto& p = j.at("path_loss");
            if (p.contains("pl0")) env.params.pl0_db = p.at("pl0").get<double>();
            if (p.contains("exponent")) {
                env.params.exponent = p.at("exponent").get<double>();
            }
            if (p.contains("shadow_sigma")) {
                env.params.shadow_sigma_db = p.at("shadow_sigma").get<double>();
            }
            if (p.contains("floor")) env.params.floor_dbm = p.at("floor").get<int>();
            if (p.contains("ceiling")) env.params.ceiling_dbm = p.at("ceiling").get<int>();
        }
        if (j.contains("seed")) env.seed = j.at("seed").get<std::uint64_t>();
        env.validate();
        return env;
    } catch (const json::exception& e) {
        throw ParseError(std::string("environment JSON: ") + e.what());
    }
}

} // namespace

RadioEnvironment environment_from_json(const std::string& text) {
    return environment_from(parse(text, "environment JSON"));
}

RadioEnvironment load_environment(const std::filesystem::path& path) {
    return environment_from_json(read_file(path));
}

std::string environment_to_json(const RadioEnvironment& env) {
    json j;
    j["rooms"] = json::array();
    for (const auto& room : env.rooms) {
        j["rooms"].push_back({{"id", room.id},
                              {"rect", {room.bounds.min.x, room.bounds.min.y, room.bounds.max.x,
                                        room.bounds.max.y}}});
    }
    j["aps"] = json::array();
    for (const auto& ap : env.aps) {
        j["aps"].push_back(
            {{"mac", ap.mac.str()}, {"x", ap.position.x}, {"y", ap.position.y},
             {"tx_power", ap.tx_power_dbm}});
    }
    j["path_loss"] = {{"pl0", env.params.pl0_db},
                      {"exponent", env.params.exponent},
                      {"shadow_sigma", env.params.shadow_sigma_db},
                      {"floor", env.params.floor_dbm},
                      {"ceiling", env.params.ceiling_dbm}};
    j["seed"] = env.seed;
    return j.dump(2);
}

RunConfig load_run_config(const std::filesystem::path& path) {
    const auto j = parse(read_file(path), "run config JSON");

    RunConfig cfg = default_run_config();
    try {
        if (j.contains("environment_file")) {
            cfg.env = load_environment(path.parent_path() /
                                       j.at("environment_file").get<std::string>());
        } else if (j.contains("environment")) {
            cfg.env = environment_from(j.at("environment"));
        }
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
        if (j.contains("samples_per_room")) {
            cfg.samples_per_room = j.at("samples_per_room").get<int>();
        }
        if (j.contains("dataset_csv")) cfg.dataset_csv = j.at("dataset_csv").get<std::string>();
        if (j.contains("model_file")) cfg.model_file = j.at("model_file").get<std::string>();

        if (j.contains("split")) {
            const auto& s = j.at("split");
            if (s.contains("train_fraction")) {
                cfg.split.train_fraction = s.at("train_fraction").get<double>();
            }
            if (s.contains("stratified")) cfg.split.stratified = s.at("stratified").get<bool>();
        }

        if (j.contains("classifier")) {
            const auto& c = j.at("classifier");
            if (c.contains("kind")) cfg.classifier.kind = c.at("kind").get<std::string>();
            if (c.contains("max_depth")) {
                cfg.classifier.tree.max_depth = c.at("max_depth").get<std::size_t>();
            }
            if (c.contains("min_samples_leaf")) {
                cfg.classifier.tree.min_samples_leaf = c.at("min_samples_leaf").get<std::size_t>();
            }
            if (c.contains("min_gain")) {
                cfg.classifier.tree.min_gain = c.at("min_gain").get<double>();
            }
            if (c.contains("n_trees")) {
                cfg.classifier.forest.n_trees = c.at("n_trees").get<std::size_t>();
            }
            if (c.contains("feature_subsample")) {
                cfg.classifier.forest.feature_subsample =
                    c.at("feature_subsample").get<std::size_t>();
            }
            if (c.contains("variance_floor")) {
                cfg.classifier.nb_variance_floor = c.at("variance_floor").get<double>();
            }
        }

        if (j.contains("scenario")) {
            const auto& s = j.at("scenario");
            if (s.contains("duration")) cfg.scenario.duration = s.at("duration").get<double>();
            if (s.contains("sample_period")) {
                cfg.scenario.sample_period = s.at("sample_period").get<double>();
            }
            if (s.contains("reliable")) cfg.scenario.reliable = s.at("reliable").get<bool>();
            if (s.contains("retries")) cfg.scenario.retries = s.at("retries").get<int>();
            if (s.contains("ack_timeout")) {
                cfg.scenario.ack_timeout = s.at("ack_timeout").get<double>();
            }
            if (s.contains("loss_prob")) {
                cfg.scenario.channel.loss_prob = s.at("loss_prob").get<double>();
            }
            if (s.contains("latency")) cfg.scenario.channel.latency = s.at("latency").get<double>();
            if (s.contains("bit_rate")) {
                cfg.scenario.channel.bit_rate = s.at("bit_rate").get<double>();
            }
        }

        if (j.contains("trajectory")) {
            cfg.trajectory.waypoints.clear();
            for (const auto& w : j.at("trajectory")) {
                cfg.trajectory.waypoints.push_back(
                    {w.at("t").get<double>(),
                     {w.at("x").get<double>(), w.at("y").get<double>()}});
            }
            cfg.trajectory.validate();
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("run config JSON: ") + e.what());
    }
    return cfg;
}

RadioEnvironment default_environment() {
    // Three 4x4 m rooms along a hallway, 1.5 m walls between them, one AP at
    // each room center. The wall gaps keep the equal-distance surfaces of
    // neighboring APs out of the room interiors.
    RadioEnvironment env;
    env.rooms = {{1, {{0, 0}, {4, 4}}}, {2, {{5.5, 0}, {9.5, 4}}}, {3, {{11, 0}, {15, 4}}}};
    env.aps = {{0, MacAddress::parse("02:AA:00:00:00:01"), {2, 2}, 20.0},
               {1, MacAddress::parse("02:AA:00:00:00:02"), {7.5, 2}, 20.0},
               {2, MacAddress::parse("02:AA:00:00:00:03"), {13, 2}, 20.0}};
    env.seed = 42;
    return env;
}

Trajectory default_trajectory() {
    // Dwell at each room center, with 4 s walks between rooms.
    return {{{0, {2, 2}},
             {56, {2, 2}},
             {60, {7.5, 2}},
             {116, {7.5, 2}},
             {120, {13, 2}},
             {180, {13, 2}}}};
}

RunConfig default_run_config() {
    RunConfig cfg;
    cfg.env = default_environment();
    cfg.trajectory = default_trajectory();
    return cfg;
}

} // namespace roomsense
