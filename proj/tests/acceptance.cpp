// Acceptance gate: ten checks, one PASS/FAIL line each, nonzero exit on any
// failure. Oracles here are computed independently of the library code under
// test (exhaustive searches, pair counting, recomputed sums, byte compares).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "roomsense/channel.hpp"
#include "roomsense/config.hpp"
#include "roomsense/control.hpp"
#include "roomsense/dataset.hpp"
#include "roomsense/errors.hpp"
#include "roomsense/link.hpp"
#include "roomsense/metrics.hpp"
#include "roomsense/radio.hpp"
#include "roomsense/rng.hpp"
#include "roomsense/tree.hpp"

#ifndef ROOMSENSE_CLI_PATH
#error "ROOMSENSE_CLI_PATH must point at the CLI binary"
#endif

using namespace roomsense;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int index, bool ok, const std::string& detail) {
    std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", index, detail.c_str());
    if (!ok) ++failures;
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::vector<std::uint8_t> bytes(std::initializer_list<std::uint8_t> list) { return list; }

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

// Train-side pipeline shared by criteria 1, 2, and 9: synthesize the radio
// map, split 70/30, fit the tree.
struct Fitted {
    SplitResult parts;
    DecisionTreeModel model;
};

Fitted fit_pipeline(const RadioEnvironment& env, int samples_per_room, std::uint64_t seed) {
    RandomStream rng(derive_stream_seed(seed, "fingerprint"));
    const auto db = collect_fingerprints(env, samples_per_room, rng);
    SplitSpec spec;
    spec.seed = seed;
    Fitted out{split(db, spec), {}};
    out.model = fit_tree(out.parts.train);
    return out;
}

double test_accuracy(const Fitted& fitted) {
    std::size_t hits = 0;
    for (const auto& s : fitted.parts.test.samples) {
        hits += predict(fitted.model, s.rssi) == s.room;
    }
    return static_cast<double>(hits) / static_cast<double>(fitted.parts.test.samples.size());
}

void criterion_1() {
    const Stopwatch clock;
    const auto env = default_environment();

    const double acc42 = test_accuracy(fit_pipeline(env, 50, 42));

    double mean = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        mean += test_accuracy(fit_pipeline(env, 50, seed));
    }
    mean /= 10.0;

    const double elapsed = clock.seconds();
    const bool ok = acc42 >= 0.95 && mean >= 0.93 && elapsed < 5.0;
    report(1, ok,
           fmt("tree accuracy: seed42 %.4f (need >= 0.95), mean seeds 1..10 %.4f "
               "(need >= 0.93), %.2f s (need < 5)",
               acc42, mean, elapsed));
}

void criterion_2() {
    // 63 samples per room -> 189 total -> 132 train -> exactly 19 test
    // samples per class.
    const auto fitted = fit_pipeline(default_environment(), 63, 7);

    std::vector<RoomId> truths;
    std::vector<RoomId> preds;
    for (const auto& s : fitted.parts.test.samples) {
        truths.push_back(s.room);
        preds.push_back(predict(fitted.model, s.rssi));
    }
    const auto cm = confusion(truths, preds, fitted.model.classes);

    const auto room1 = static_cast<std::size_t>(
        std::find(cm.classes.begin(), cm.classes.end(), 1) - cm.classes.begin());
    const auto row1_total =
        std::accumulate(cm.counts[room1].begin(), cm.counts[room1].end(), std::size_t{0});
    const auto diag1 = cm.counts[room1][room1];

    // Reconcile row/column sums against counts recomputed from the raw labels.
    bool sums_ok = true;
    const auto rows = cm.row_sums();
    const auto cols = cm.col_sums();
    for (std::size_t k = 0; k < cm.classes.size(); ++k) {
        const auto t = static_cast<std::size_t>(
            std::count(truths.begin(), truths.end(), cm.classes[k]));
        const auto p = static_cast<std::size_t>(
            std::count(preds.begin(), preds.end(), cm.classes[k]));
        sums_ok = sums_ok && rows[k] == t && cols[k] == p;
    }
    sums_ok = sums_ok && cm.total() == truths.size();

    const bool ok = row1_total == 19 && diag1 >= 18 && sums_ok;
    report(2, ok,
           fmt("room-1 test row: %zu samples (need 19), diagonal %zu (need >= 18), "
               "row/col sums %s",
               row1_total, diag1, sums_ok ? "reconcile" : "DISAGREE"));
}

void criterion_3() {
    const Stopwatch clock;
    bool ok = true;
    int checked = 0;
    std::string first_bad;

    for (std::size_t n = 10; n <= 300; ++n) {
        FingerprintDatabase db;
        db.ap_macs.push_back(MacAddress::parse("02:AA:00:00:00:01"));
        for (std::size_t i = 0; i < n; ++i) {
            db.samples.push_back(
                {{static_cast<int>(i) - 100}, static_cast<RoomId>(1 + i % 3)});
        }

        SplitSpec spec;
        spec.seed = 1000 + n;
        const auto parts = split(db, spec);
        ++checked;

        const auto train_n = parts.train.samples.size();
        const auto lo = static_cast<std::size_t>(std::floor(0.7 * static_cast<double>(n)));
        const auto hi = static_cast<std::size_t>(std::ceil(0.7 * static_cast<double>(n)));
        bool this_ok = (train_n == lo || train_n == hi) &&
                       parts.train.samples.size() + parts.test.samples.size() == n;

        const auto totals = class_counts(db.samples);
        const auto trains = class_counts(parts.train.samples);
        for (const auto& [label, total] : totals) {
            const auto in_train =
                trains.count(label) ? static_cast<double>(trains.at(label)) : 0.0;
            this_ok = this_ok && std::abs(in_train - 0.7 * static_cast<double>(total)) <= 1.0 + 1e-9;
        }
        if (!this_ok && first_bad.empty()) first_bad = fmt(" (first failure at n=%zu)", n);
        ok = ok && this_ok;
    }

    const double elapsed = clock.seconds();
    ok = ok && elapsed < 1.0;
    report(3, ok,
           fmt("split contract over n=10..300: %d sizes, train size in {floor,ceil}(0.7n), "
               "per-class within 1, %.3f s (need < 1)%s",
               checked, elapsed, first_bad.c_str()));
}

// Independent exhaustive split search ranking by SL/nL + SR/nR through
// 128-bit cross multiplication, first candidate wins ties (features ascending,
// thresholds ascending), zero-gain splits rejected exactly.
std::optional<SplitChoice> brute_force_split(const std::vector<LabeledSample>& samples,
                                             std::size_t n_features) {
    using i128 = __int128;
    const std::size_t n = samples.size();

    i128 parent_sq = 0;
    {
        std::map<RoomId, std::size_t> counts;
        for (const auto& s : samples) ++counts[s.room];
        for (const auto& [label, c] : counts) {
            parent_sq += static_cast<i128>(c) * static_cast<i128>(c);
        }
    }

    std::optional<SplitChoice> best;
    i128 best_num = 0;
    i128 best_den = 1;

    for (std::size_t f = 0; f < n_features; ++f) {
        std::set<int> values;
        for (const auto& s : samples) values.insert(s.rssi[f]);
        std::vector<int> sorted(values.begin(), values.end());
        for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
            const double thr = (static_cast<double>(sorted[k]) + sorted[k + 1]) / 2.0;
            std::map<RoomId, std::size_t> left;
            std::map<RoomId, std::size_t> right;
            std::size_t nl = 0;
            std::size_t nr = 0;
            for (const auto& s : samples) {
                if (s.rssi[f] <= thr) {
                    ++left[s.room];
                    ++nl;
                } else {
                    ++right[s.room];
                    ++nr;
                }
            }
            i128 sl = 0;
            i128 sr = 0;
            for (const auto& [label, c] : left) sl += static_cast<i128>(c) * static_cast<i128>(c);
            for (const auto& [label, c] : right) sr += static_cast<i128>(c) * static_cast<i128>(c);
            const i128 num = sl * static_cast<i128>(nr) + sr * static_cast<i128>(nl);
            const i128 den = static_cast<i128>(nl) * static_cast<i128>(nr);
            if (!best || num * best_den > best_num * den) {
                best_num = num;
                best_den = den;
                best = SplitChoice{static_cast<int>(f), thr, 0.0};
            }
        }
    }

    if (!best) return std::nullopt;
    if (static_cast<i128>(n) * best_num <= parent_sq * best_den) return std::nullopt;
    return best;
}

void criterion_4() {
    const Stopwatch clock;
    RandomStream rng(0xACCE97);
    int agreements = 0;
    int splits_seen = 0;
    bool ok = true;

    for (int round = 0; round < 200; ++round) {
        const auto n = 2 + rng.below(19);
        const auto f = 1 + rng.below(3);
        const auto k = 1 + rng.below(3);
        std::vector<LabeledSample> samples;
        for (std::size_t i = 0; i < n; ++i) {
            RssiVector v;
            for (std::size_t j = 0; j < f; ++j) {
                v.push_back(-50 - static_cast<int>(rng.below(7)));
            }
            samples.push_back({v, static_cast<RoomId>(1 + rng.below(k))});
        }

        FingerprintDatabase db;
        for (std::size_t j = 0; j < f; ++j) {
            auto mac = MacAddress::parse("02:AA:00:00:00:01");
            mac.octets[5] = static_cast<std::uint8_t>(j + 1);
            db.ap_macs.push_back(mac);
        }
        db.samples = samples;
        const auto model = fit_tree(db);
        const auto want = brute_force_split(samples, f);

        bool match = false;
        if (!want.has_value()) {
            match = model.root->is_leaf();
        } else if (!model.root->is_leaf()) {
            match = model.root->feature == want->feature &&
                    model.root->threshold == want->threshold;
            ++splits_seen;
        }
        agreements += match;
        ok = ok && match;
    }

    const double elapsed = clock.seconds();
    ok = ok && elapsed < 5.0;
    report(4, ok,
           fmt("root split vs exhaustive oracle: %d/200 agree (%d splittable), %.2f s (need < 5)",
               agreements, splits_seen, elapsed));
}

double pair_count_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    double wins = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!labels[i]) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j]) continue;
            ++pairs;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

void criterion_5() {
    RandomStream rng(0xAC5);
    bool ok = true;
    double worst = 0.0;

    for (int round = 0; round < 200; ++round) {
        const auto n = 2 + rng.below(49);
        std::vector<double> scores;
        std::vector<int> labels;
        for (std::size_t i = 0; i < n; ++i) {
            scores.push_back(static_cast<double>(rng.below(10)) / 10.0);
            labels.push_back(static_cast<int>(rng.below(2)));
        }
        labels.front() = 0;
        labels.back() = 1;

        const auto curve = roc_binary(scores, labels);
        const auto oracle = pair_count_auc(scores, labels);
        worst = std::max(worst, std::abs(curve.auc - oracle));
        ok = ok && std::abs(curve.auc - oracle) <= 1e-12;
    }

    const std::vector<double> perfect_scores{0.9, 0.8, 0.7, 0.3, 0.2, 0.1};
    const std::vector<int> perfect_labels{1, 1, 1, 0, 0, 0};
    const bool perfect_exact = roc_binary(perfect_scores, perfect_labels).auc == 1.0;

    const std::vector<double> flat_scores(8, 0.25);
    const std::vector<int> flat_labels{1, 0, 1, 0, 1, 0, 1, 0};
    const bool flat_exact = roc_binary(flat_scores, flat_labels).auc == 0.5;

    ok = ok && perfect_exact && flat_exact;
    report(5, ok,
           fmt("AUC vs pair counting on 200 sets: max |diff| %.2e (need <= 1e-12), "
               "perfect == 1.0 %s, constant == 0.5 %s",
               worst, perfect_exact ? "exact" : "FALSE", flat_exact ? "exact" : "FALSE"));
}

void criterion_6() {
    const Stopwatch clock;
    const PeerKey key{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
    const auto src = MacAddress::parse("02:00:00:00:00:01");
    const auto dst = MacAddress::parse("02:00:00:00:00:02");

    bool round_trips = true;
    std::uint64_t counter = 0;
    ReplayState rt_state;
    for (const std::size_t len : {std::size_t{0}, std::size_t{1}, std::size_t{249},
                                  std::size_t{250}}) {
        std::vector<std::uint8_t> payload(len);
        for (std::size_t i = 0; i < len; ++i) payload[i] = static_cast<std::uint8_t>(i * 7 + 1);
        const auto wire = encode_frame(src, dst, payload, key, ++counter);
        const auto frame = decode_frame(wire, key, rt_state);
        round_trips = round_trips && frame.ok() && frame.payload == payload &&
                      frame.src == src && frame.dst == dst && frame.counter == counter;
    }

    bool too_large = false;
    try {
        encode_frame(src, dst, std::vector<std::uint8_t>(251, 0), key, 99);
    } catch (const PayloadTooLarge&) {
        too_large = true;
    }

    const auto wire = encode_frame(src, dst, bytes({1, 2, 3, 4, 5, 6}), key, 77);
    int flips = 0;
    int auth_failures = 0;
    ReplayState flip_state;
    for (std::size_t byte = 0; byte < wire.size(); ++byte) {
        for (int bit = 0; bit < 8; ++bit) {
            auto bad = wire;
            bad[byte] ^= static_cast<std::uint8_t>(1 << bit);
            ++flips;
            auth_failures += decode_frame(bad, key, flip_state).status == DecodeStatus::AuthFailure;
        }
    }

    ReplayState replay_state;
    const bool first_ok = decode_frame(wire, key, replay_state).ok();
    const bool replay_rejected =
        decode_frame(wire, key, replay_state).status == DecodeStatus::ReplayRejected;

    const double elapsed = clock.seconds();
    const bool ok = round_trips && too_large && wire.size() == 45 && flips == 360 &&
                    auth_failures == 360 && first_ok && replay_rejected && elapsed < 5.0;
    report(6, ok,
           fmt("round-trips {0,1,249,250} %s, 251 rejected %s, bit flips %d/%d auth failures, "
               "replay rejected %s, %.2f s (need < 5)",
               round_trips ? "ok" : "FALSE", too_large ? "ok" : "FALSE", auth_failures, flips,
               replay_rejected ? "ok" : "FALSE", elapsed));
}

void criterion_7() {
    ChannelConfig cfg;
    Channel probe(cfg);
    const double airtime = probe.airtime(39);
    const bool exact = airtime == 312e-6;

    const auto run = [](std::uint64_t seed) {
        ChannelConfig c;
        c.loss_prob = 0.3;
        c.latency = 0.0017;
        c.seed = seed;
        Channel ch(c);
        const PeerKey key{};
        const auto a = MacAddress::parse("02:00:00:00:00:01");
        const auto b = MacAddress::parse("02:00:00:00:00:02");
        ch.add_endpoint(a, Endpoint::Role::Initiator, key);
        ch.add_endpoint(b, Endpoint::Role::Responder, key);
        std::vector<double> stamps;
        for (int i = 0; i < 200; ++i) {
            const auto wire = encode_frame(a, b, bytes({static_cast<std::uint8_t>(i)}), key,
                                           static_cast<std::uint64_t>(i) + 1);
            for (const auto& d : ch.send(wire, 0.05 * i).deliveries) {
                stamps.push_back(d.delivered ? d.time : -1.0);
            }
        }
        for (const auto& arrival : ch.advance(1e9)) stamps.push_back(arrival.t);
        return stamps;
    };

    const auto a = run(4242);
    const auto b = run(4242);
    const bool identical =
        a.size() == b.size() &&
        std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;

    const bool ok = exact && identical;
    report(7, ok,
           fmt("39-octet airtime %.1f us %s 312 us exactly, %zu timestamps bit-identical "
               "across same-seed runs: %s",
               airtime * 1e6, exact ? "==" : "!=", a.size(), identical ? "yes" : "NO"));
}

void criterion_8() {
    bool table_ok = true;
    bool exclusion_ok = true;
    bool idempotent_ok = true;

    ActuatorBank messy;
    messy.lights = {true, false, true};
    messy.fans = {false, true, true};

    for (std::uint8_t code = 0; code <= 3; ++code) {
        const auto bank = apply_signal(messy, {code});
        int on_pairs = 0;
        for (int r = 0; r < kRoomCount; ++r) {
            const bool expect_on = code != 0 && r == code - 1;
            table_ok = table_ok && bank.lights[r] == expect_on && bank.fans[r] == expect_on;
            on_pairs += bank.lights[r] && bank.fans[r];
        }
        exclusion_ok = exclusion_ok && on_pairs == (code == 0 ? 0 : 1);
        idempotent_ok = idempotent_ok && apply_signal(bank, {code}) == bank;
        if (code == 0) {
            exclusion_ok = exclusion_ok && !bank.active_room().has_value();
        } else {
            exclusion_ok = exclusion_ok && bank.active_room() == RoomId{code};
        }
    }

    bool rejects = false;
    try {
        apply_signal(messy, {4});
    } catch (const InvalidCode&) {
        rejects = true;
    }

    const bool ok = table_ok && exclusion_ok && idempotent_ok && rejects;
    report(8, ok,
           fmt("codes 0..3: table %s, mutual exclusion %s, idempotence %s, code 4 rejected %s",
               table_ok ? "ok" : "FALSE", exclusion_ok ? "ok" : "FALSE",
               idempotent_ok ? "ok" : "FALSE", rejects ? "ok" : "FALSE"));
}

void criterion_9() {
    const Stopwatch clock;
    const auto env = default_environment();
    const auto traj = default_trajectory();

    auto fitted = fit_pipeline(env, 50, 42);
    AnyModel model = std::move(fitted.model);
    const ModelLocalizer localizer(model);

    ScenarioConfig cfg;
    cfg.duration = 180.0;
    cfg.channel.loss_prob = 0.05;
    const auto log = run_scenario(env, localizer, traj, cfg, 42);
    const double tracking = log.summary.tracking_accuracy;

    OracleLocalizer oracle;
    ScenarioConfig clean;
    clean.duration = 180.0;
    clean.channel.loss_prob = 0.0;
    const auto oracle_log = run_scenario(env, oracle, traj, clean, 42);
    const bool oracle_perfect = oracle_log.summary.tracking_accuracy == 1.0 &&
                                oracle_log.summary.post_warmup_ticks == oracle_log.summary.ticks;

    const double elapsed = clock.seconds();
    const bool ok = tracking >= 0.95 && oracle_perfect && elapsed < 10.0;
    report(9, ok,
           fmt("walk tracking %.4f over %zu post-warmup ticks (need >= 0.95), oracle+lossless "
               "%s 100%%, %.2f s (need < 10)",
               tracking, log.summary.post_warmup_ticks, oracle_perfect ? "==" : "!=", elapsed));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void criterion_10() {
    const Stopwatch clock;
    const auto base = fs::temp_directory_path() / "roomsense_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);

    const auto run_into = [&](const fs::path& dir) {
        const std::string common =
            std::string(ROOMSENSE_CLI_PATH) + " --seed 42 --out " + dir.string();
        bool ok = true;
        ok = ok && std::system((common + " fingerprint > /dev/null 2>&1").c_str()) == 0;
        ok = ok && std::system((common + " train > /dev/null 2>&1").c_str()) == 0;
        ok = ok &&
             std::system(
                 (common + " simulate --duration 60 --loss 0.05 > /dev/null 2>&1").c_str()) == 0;
        return ok;
    };

    const bool ran = run_into(base / "run1") && run_into(base / "run2");

    const std::vector<std::string> artifacts{
        "fingerprints.csv", "model.json",          "metrics.json", "roc.csv",
        "ticks.jsonl",      "channel_events.jsonl", "summary.json"};
    bool identical = ran;
    std::string first_diff;
    for (const auto& name : artifacts) {
        const auto a = slurp(base / "run1" / name);
        const auto b = slurp(base / "run2" / name);
        if (a.empty() || a != b) {
            identical = false;
            if (first_diff.empty()) first_diff = name;
        }
    }
    fs::remove_all(base);

    const bool ok = ran && identical;
    report(10, ok,
           fmt("fingerprint+train+simulate reruns: commands %s, %zu artifacts byte-identical: "
               "%s%s%s, %.1f s",
               ran ? "succeeded" : "FAILED", artifacts.size(), identical ? "yes" : "NO",
               first_diff.empty() ? "" : ", first diff ", first_diff.c_str(), clock.seconds()));
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();

    if (failures == 0) {
        std::printf("acceptance: all 10 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", failures);
    return 1;
}
