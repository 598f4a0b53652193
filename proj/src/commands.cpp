#include "roomsense/commands.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "roomsense/errors.hpp"
#include "roomsense/metrics.hpp"
#include "roomsense/model_io.hpp"

namespace roomsense {

namespace {

using nlohmann::ordered_json;

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << text;
}

FingerprintDatabase load_dataset(const RunConfig& cfg) {
    const auto path = cfg.dataset_path();
    if (!std::filesystem::exists(path)) {
        throw ConfigError("no dataset at " + path.string() + "; run `fingerprint` first");
    }
    return load_csv(path);
}

AnyModel fit_model(const std::string& kind, const FingerprintDatabase& train,
                   const RunConfig& cfg) {
    if (kind == "tree") return fit_tree(train, cfg.classifier.tree);
    if (kind == "gnb") return fit_gnb(train, cfg.classifier.nb_variance_floor);
    if (kind == "forest") {
        auto fc = cfg.classifier.forest;
        fc.tree = cfg.classifier.tree;
        fc.seed = derive_stream_seed(cfg.seed, "forest");
        return fit_forest(train, fc);
    }
    throw ConfigError("unknown classifier kind \"" + kind + "\"");
}

struct EvalReport {
    ConfusionMatrix cm;
    double acc = 0.0;
    std::vector<RocCurve> per_class; // aligned with cm.classes
    RocCurve micro;
    RocCurve macro;
};

EvalReport evaluate(const AnyModel& model, const FingerprintDatabase& test) {
    if (test.samples.empty()) throw EmptyDataset("test set is empty");
    if (test.ap_count() != model_ap_count(model)) {
        throw ShapeError("dataset width does not match the model");
    }

    std::vector<RoomId> truths;
    std::vector<RoomId> preds;
    std::vector<std::map<RoomId, double>> scores;
    truths.reserve(test.samples.size());
    preds.reserve(test.samples.size());
    scores.reserve(test.samples.size());
    for (const auto& s : test.samples) {
        truths.push_back(s.room);
        auto proba = model_proba(model, s.rssi);
        preds.push_back(argmax_class(proba));
        scores.push_back(std::move(proba));
    }

    EvalReport report;
    report.cm = confusion(truths, preds, model_classes(model));
    report.acc = accuracy(report.cm);
    for (const auto label : report.cm.classes) {
        report.per_class.push_back(roc_ovr(scores, truths, label));
    }
    report.micro = roc_micro(scores, truths, report.cm.classes);
    report.macro = roc_macro(report.per_class);
    return report;
}

ordered_json report_to_json(const EvalReport& report) {
    ordered_json j;
    j["accuracy"] = report.acc;
    j["n_test"] = report.cm.total();
    j["confusion"] = {{"classes", report.cm.classes}, {"counts", report.cm.counts}};
    ordered_json per_class = ordered_json::object();
    for (std::size_t i = 0; i < report.cm.classes.size(); ++i) {
        per_class[std::to_string(report.cm.classes[i])] = report.per_class[i].auc;
    }
    j["roc_auc"] = {{"per_class", std::move(per_class)},
                    {"micro", report.micro.auc},
                    {"macro", report.macro.auc}};
    return j;
}

std::string roc_csv(const EvalReport& report) {
    std::ostringstream out;
    out << "curve,fpr,tpr\n";
    out << std::setprecision(17);
    const auto emit = [&](const std::string& name, const RocCurve& curve) {
        for (const auto& p : curve.points) out << name << ',' << p.fpr << ',' << p.tpr << '\n';
    };
    for (std::size_t i = 0; i < report.cm.classes.size(); ++i) {
        emit("class-" + std::to_string(report.cm.classes[i]), report.per_class[i]);
    }
    emit("micro", report.micro);
    emit("macro", report.macro);
    return out.str();
}

void print_report(const EvalReport& report, std::ostream& out) {
    out << "accuracy " << report.acc << " on " << report.cm.total() << " samples\n";
    out << render(report.cm);
    out << "auc";
    for (std::size_t i = 0; i < report.cm.classes.size(); ++i) {
        out << " class-" << report.cm.classes[i] << "=" << report.per_class[i].auc;
    }
    out << " micro=" << report.micro.auc << " macro=" << report.macro.auc << "\n";
}

} // namespace

int cmd_fingerprint(const RunConfig& cfg, std::ostream& out) {
    std::filesystem::create_directories(cfg.out_dir);
    RandomStream rng(derive_stream_seed(cfg.seed, "fingerprint"));
    const auto db = collect_fingerprints(cfg.env, cfg.samples_per_room, rng);
    save_csv(db, cfg.dataset_path());
    out << "wrote " << db.samples.size() << " fingerprints (" << cfg.env.rooms.size()
        << " rooms x " << cfg.samples_per_room << " samples, " << db.ap_count() << " APs) to "
        << cfg.dataset_path().string() << "\n";
    return 0;
}

int cmd_train(const RunConfig& cfg, std::ostream& out) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto db = load_dataset(cfg);

    SplitSpec spec = cfg.split;
    spec.seed = cfg.seed;
    const auto parts = split(db, spec);

    const auto model = fit_model(cfg.classifier.kind, parts.train, cfg);
    save_model(model, cfg.model_path());

    const auto report = evaluate(model, parts.test);
    auto j = report_to_json(report);
    j["classifier"] = cfg.classifier.kind;
    j["n_train"] = parts.train.samples.size();
    write_text(cfg.out_dir / "metrics.json", j.dump(2) + "\n");
    write_text(cfg.out_dir / "roc.csv", roc_csv(report));

    out << "trained " << cfg.classifier.kind << " on " << parts.train.samples.size()
        << " samples, model at " << cfg.model_path().string() << "\n";
    print_report(report, out);
    return 0;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto model = load_model(cfg.model_path());
    const auto db = load_dataset(cfg);

    const auto report = evaluate(model, db);
    auto j = report_to_json(report);
    j["classifier"] = model_kind(model);
    write_text(cfg.out_dir / "eval_metrics.json", j.dump(2) + "\n");

    out << "evaluated " << model_kind(model) << " model on " << db.samples.size()
        << " samples from " << cfg.dataset_path().string() << "\n";
    print_report(report, out);
    return 0;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto db = load_dataset(cfg);

    SplitSpec spec = cfg.split;
    spec.seed = cfg.seed;
    const auto parts = split(db, spec);

    ordered_json j = ordered_json::object();
    std::ostringstream table;
    table << std::left << std::setw(8) << "kind" << std::right << std::setw(10) << "accuracy"
          << std::setw(12) << "micro-auc" << std::setw(12) << "macro-auc" << "\n";

    for (const std::string kind : {"tree", "gnb", "forest"}) {
        const auto model = fit_model(kind, parts.train, cfg);
        const auto report = evaluate(model, parts.test);
        j[kind] = report_to_json(report);
        table << std::left << std::setw(8) << kind << std::right << std::fixed
              << std::setprecision(4) << std::setw(10) << report.acc << std::setw(12)
              << report.micro.auc << std::setw(12) << report.macro.auc << "\n";
        table.unsetf(std::ios::fixed);
        table << std::setprecision(6);
    }

    write_text(cfg.out_dir / "compare.json", j.dump(2) + "\n");
    const auto text = table.str();
    write_text(cfg.out_dir / "compare.txt", text);
    out << text;
    return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    std::filesystem::create_directories(cfg.out_dir);
    if (!std::filesystem::exists(cfg.model_path())) {
        throw ConfigError("no model at " + cfg.model_path().string() + "; run `train` first");
    }
    const auto model = load_model(cfg.model_path());

    const ModelLocalizer localizer(model, cfg.scenario.abstain_threshold);
    const auto log = run_scenario(cfg.env, localizer, cfg.trajectory, cfg.scenario, cfg.seed);

    write_text(cfg.out_dir / "ticks.jsonl", scenario_to_jsonl(log));
    write_text(cfg.out_dir / "channel_events.jsonl", events_to_jsonl(log.channel_events));
    write_text(cfg.out_dir / "summary.json", summary_to_json(log.summary) + "\n");

    out << "simulated " << log.summary.ticks << " ticks: tracking "
        << log.summary.tracking_accuracy << " over " << log.summary.post_warmup_ticks
        << " post-warmup ticks, " << log.summary.frames_lost << "/" << log.summary.frames_sent
        << " frames lost, mean actuation latency " << log.summary.mean_actuation_latency
        << " s\n";
    return 0;
}

} // namespace roomsense
