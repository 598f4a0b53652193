#pragma once

#include <iosfwd>

#include "roomsense/config.hpp"

namespace roomsense {

// Subcommand bodies behind the CLI; each is a pure function of (config, seed)
// to output bytes. They write their artifacts under cfg.out_dir and report
// progress on `out`. Throw ConfigError for usage problems (exit 2), anything
// else is a runtime failure (exit 1).

// Offline phase: synthesize the radio map and write the fingerprint CSV.
int cmd_fingerprint(const RunConfig& cfg, std::ostream& out);

// Split, fit the selected classifier on train, evaluate on test; writes the
// model JSON, metrics JSON, and ROC points CSV.
int cmd_train(const RunConfig& cfg, std::ostream& out);

// Evaluate an existing model file on a dataset CSV (treated as a test set).
int cmd_eval(const RunConfig& cfg, std::ostream& out);

// Tree vs GNB vs forest on the identical split; JSON + aligned text table.
int cmd_compare(const RunConfig& cfg, std::ostream& out);

// End-to-end walk scenario; writes the JSON-lines tick log, the channel event
// log, and the summary JSON.
int cmd_simulate(const RunConfig& cfg, std::ostream& out);

} // namespace roomsense
