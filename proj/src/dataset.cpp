#include "roomsense/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "roomsense/errors.hpp"
#include "roomsense/rng.hpp"

namespace roomsense {

std::map<RoomId, std::size_t> class_counts(std::span<const LabeledSample> samples) {
    std::map<RoomId, std::size_t> counts;
    for (const auto& s : samples) ++counts[s.room];
    return counts;
}

std::vector<RoomId> class_labels(std::span<const LabeledSample> samples) {
    const auto counts = class_counts(samples);
    std::vector<RoomId> labels;
    labels.reserve(counts.size());
    for (const auto& [label, count] : counts) labels.push_back(label);
    return labels;
}

namespace {

// Per-class train quotas via largest-remainder apportionment. The grand
// total is pinned to round(fraction * n) and every class with at least two
// samples keeps one on each side of the split.
std::map<RoomId, std::size_t> train_quotas(const std::map<RoomId, std::size_t>& counts,
                                           double fraction, std::size_t n) {
    const auto total = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 0.5));

    struct Entry {
        RoomId label;
        std::size_t quota;
        std::size_t lo;
        std::size_t hi;
        double remainder;
    };
    std::vector<Entry> entries;
    entries.reserve(counts.size());
    std::size_t allocated = 0;
    for (const auto& [label, count] : counts) {
        const double exact = fraction * static_cast<double>(count);
        Entry e;
        e.label = label;
        e.lo = count >= 2 ? 1 : 0;
        e.hi = count >= 2 ? count - 1 : count;
        e.quota = std::clamp(static_cast<std::size_t>(std::floor(exact)), e.lo, e.hi);
        e.remainder = exact - std::floor(exact);
        allocated += e.quota;
        entries.push_back(e);
    }

    while (allocated < total) {
        Entry* pick = nullptr;
        for (auto& e : entries) {
            if (e.quota >= e.hi) continue;
            if (!pick || e.remainder > pick->remainder) pick = &e;
        }
        if (!pick) break;
        ++pick->quota;
        pick->remainder -= 1.0;
        ++allocated;
    }
    while (allocated > total) {
        Entry* pick = nullptr;
        for (auto& e : entries) {
            if (e.quota <= e.lo) continue;
            if (!pick || e.remainder < pick->remainder) pick = &e;
        }
        if (!pick) break;
        --pick->quota;
        pick->remainder += 1.0;
        --allocated;
    }

    std::map<RoomId, std::size_t> quotas;
    for (const auto& e : entries) quotas[e.label] = e.quota;
    return quotas;
}

} // namespace

SplitResult split(const FingerprintDatabase& db, const SplitSpec& spec) {
    if (db.samples.empty()) throw EmptyDataset("cannot split an empty dataset");
    if (spec.train_fraction <= 0.0 || spec.train_fraction >= 1.0) {
        throw ConfigError("train fraction must lie strictly between 0 and 1");
    }
    for (const auto& s : db.samples) {
        if (s.rssi.size() != db.ap_count()) {
            throw ShapeError("sample width does not match access point count");
        }
    }

    SplitResult result;
    result.train.ap_macs = db.ap_macs;
    result.test.ap_macs = db.ap_macs;

    RandomStream stream(derive_stream_seed(spec.seed, "split"));
    const auto n = db.samples.size();
    std::vector<bool> in_train(n, false);

    if (!spec.stratified) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        stream.shuffle(order);
        const auto t = static_cast<std::size_t>(
            std::floor(spec.train_fraction * static_cast<double>(n) + 0.5));
        for (std::size_t i = 0; i < t; ++i) in_train[order[i]] = true;
    } else {
        std::map<RoomId, std::vector<std::size_t>> by_class;
        for (std::size_t i = 0; i < n; ++i) by_class[db.samples[i].room].push_back(i);
        std::map<RoomId, std::size_t> counts;
        for (const auto& [label, idx] : by_class) counts[label] = idx.size();
        const auto quotas = train_quotas(counts, spec.train_fraction, n);

        for (auto& [label, idx] : by_class) {
            stream.shuffle(idx);
            const std::size_t t = quotas.at(label);
            for (std::size_t i = 0; i < t; ++i) in_train[idx[i]] = true;
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        auto& side = in_train[i] ? result.train : result.test;
        side.samples.push_back(db.samples[i]);
    }
    return result;
}

void save_csv(const FingerprintDatabase& db, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < db.ap_macs.size(); ++i) {
        if (i) out << ',';
        out << db.ap_macs[i].str();
    }
    out << ",room\n";
    for (const auto& s : db.samples) {
        if (s.rssi.size() != db.ap_count()) {
            throw ShapeError("sample width does not match access point count");
        }
        for (const auto v : s.rssi) out << v << ',';
        out << s.room << '\n';
    }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

int parse_int(const std::string& text, const char* what) {
    int value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError(std::string("bad ") + what + " value \"" + text + "\"");
    }
    return value;
}

} // namespace

FingerprintDatabase load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string() + " for reading");

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string() + " is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_fields(line);
    if (header.size() < 2 || header.back() != "room") {
        throw ParseError(path.string() + ": header must end with \"room\"");
    }

    FingerprintDatabase db;
    for (std::size_t i = 0; i + 1 < header.size(); ++i) {
        db.ap_macs.push_back(MacAddress::parse(header[i]));
    }

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": expected " + std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        LabeledSample s;
        s.rssi.reserve(fields.size() - 1);
        for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
            s.rssi.push_back(parse_int(fields[i], "rssi"));
        }
        s.room = parse_int(fields.back(), "room");
        db.samples.push_back(std::move(s));
    }
    if (db.samples.empty()) throw EmptyDataset(path.string() + " has no sample rows");
    return db;
}

} // namespace roomsense
