#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "roomsense/commands.hpp"
#include "roomsense/errors.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir;
    int samples = 0;
    std::string dataset;
    std::string model;
    std::string classifier;
    std::size_t max_depth = 0;
    std::size_t min_samples_leaf = 0;
    std::size_t trees = 0;
    double duration = 0.0;
    double period = 0.0;
    double loss = 0.0;
    double latency = 0.0;
    bool reliable = false;
    int retries = 0;
    double ack_timeout = 0.0;
    double abstain = 0.0;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"roomsense: RSSI fingerprinting, room classification, and an "
                 "authenticated wireless control loop over virtual time"};
    app.require_subcommand(1);
    app.fallthrough();

    Overrides ov;
    auto* o_config = app.add_option("--config", ov.config_path, "run config JSON file");
    auto* o_seed = app.add_option("--seed", ov.seed, "master seed");
    auto* o_out = app.add_option("--out", ov.out_dir, "output directory");
    auto* o_dataset = app.add_option("--dataset", ov.dataset, "fingerprint CSV path");
    auto* o_model = app.add_option("--model", ov.model, "model JSON path");

    auto* fingerprint = app.add_subcommand("fingerprint", "synthesize the fingerprint database");
    auto* o_samples = fingerprint->add_option("--samples", ov.samples, "samples per room");

    auto* train = app.add_subcommand("train", "split, fit, and evaluate a classifier");
    auto* o_classifier =
        train->add_option("--classifier", ov.classifier, "tree | gnb | forest");
    auto* o_depth = train->add_option("--max-depth", ov.max_depth, "tree depth cap, 0 = none");
    auto* o_leaf = train->add_option("--min-samples-leaf", ov.min_samples_leaf,
                                     "minimum samples per leaf");
    auto* o_trees = train->add_option("--trees", ov.trees, "forest size");

    auto* eval = app.add_subcommand("eval", "evaluate a saved model on a dataset");

    auto* compare = app.add_subcommand("compare", "fit all classifiers on one split");

    auto* simulate = app.add_subcommand("simulate", "run the walk scenario end to end");
    auto* o_duration = simulate->add_option("--duration", ov.duration, "scenario seconds");
    auto* o_period = simulate->add_option("--period", ov.period, "sample period seconds");
    auto* o_loss = simulate->add_option("--loss", ov.loss, "frame loss probability");
    auto* o_latency = simulate->add_option("--latency", ov.latency, "channel latency seconds");
    auto* o_reliable = simulate->add_flag("--reliable", ov.reliable,
                                          "stop-and-wait acks instead of fire-and-forget");
    auto* o_retries = simulate->add_option("--retries", ov.retries, "retransmissions per signal");
    auto* o_ack = simulate->add_option("--ack-timeout", ov.ack_timeout, "ack wait seconds");
    auto* o_abstain = simulate->add_option("--abstain", ov.abstain,
                                           "probability floor below which the wearable sends 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            return app.exit(e);
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        roomsense::RunConfig cfg = o_config->count()
                                       ? roomsense::load_run_config(ov.config_path)
                                       : roomsense::default_run_config();
        if (o_seed->count()) cfg.seed = ov.seed;
        if (o_out->count()) cfg.out_dir = ov.out_dir;
        if (o_dataset->count()) cfg.dataset_csv = ov.dataset;
        if (o_model->count()) cfg.model_file = ov.model;
        if (o_samples->count()) cfg.samples_per_room = ov.samples;
        if (o_classifier->count()) cfg.classifier.kind = ov.classifier;
        if (o_depth->count()) cfg.classifier.tree.max_depth = ov.max_depth;
        if (o_leaf->count()) cfg.classifier.tree.min_samples_leaf = ov.min_samples_leaf;
        if (o_trees->count()) cfg.classifier.forest.n_trees = ov.trees;
        if (o_duration->count()) cfg.scenario.duration = ov.duration;
        if (o_period->count()) cfg.scenario.sample_period = ov.period;
        if (o_loss->count()) cfg.scenario.channel.loss_prob = ov.loss;
        if (o_latency->count()) cfg.scenario.channel.latency = ov.latency;
        if (o_reliable->count()) cfg.scenario.reliable = ov.reliable;
        if (o_retries->count()) cfg.scenario.retries = ov.retries;
        if (o_ack->count()) cfg.scenario.ack_timeout = ov.ack_timeout;
        if (o_abstain->count()) cfg.scenario.abstain_threshold = ov.abstain;

        if (fingerprint->parsed()) return roomsense::cmd_fingerprint(cfg, std::cout);
        if (train->parsed()) return roomsense::cmd_train(cfg, std::cout);
        if (eval->parsed()) return roomsense::cmd_eval(cfg, std::cout);
        if (compare->parsed()) return roomsense::cmd_compare(cfg, std::cout);
        if (simulate->parsed()) return roomsense::cmd_simulate(cfg, std::cout);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const roomsense::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
