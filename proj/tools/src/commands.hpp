#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "run_support.hpp"

namespace madkit::cli {

/// Options shared by every subcommand.
struct Common {
  std::string out;
  std::uint64_t seed = 1;
  unsigned jobs = 1;

  /// Command bodies run after parsing, once the shared options are stored.
  void on_run(const CLI::App* cmd, std::function<void()> body) { actions_[cmd] = std::move(body); }
  void dispatch(const CLI::App& app) const {
    for (const auto* sub : app.get_subcommands()) actions_.at(sub)();
  }

 private:
  std::map<const CLI::App*, std::function<void()>> actions_;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

void add_synth(CLI::App& app, Common& common, Streams io);
void add_protocol(CLI::App& app, Common& common, Streams io);
void add_morph(CLI::App& app, Common& common, Streams io);
void add_demorph(CLI::App& app, Common& common, Streams io);
void add_degrade(CLI::App& app, Common& common, Streams io);
void add_features(CLI::App& app, Common& common, Streams io);
void add_train(CLI::App& app, Common& common, Streams io);
void add_score(CLI::App& app, Common& common, Streams io);
void add_eval(CLI::App& app, Common& common, Streams io);
void add_vuln(CLI::App& app, Common& common, Streams io);
void add_mds(CLI::App& app, Common& common, Streams io);

// Helpers shared by the command implementations.

/// Writes run_record.json, moves staged outputs into place and reports.
void finish(OutputStage& stage, const RunRecord& record, Streams io);

/// "# run_record=<hash>" line for CSV outputs.
std::string record_comment(const std::string& hash);

/// First `<dir>/<id><ext>` that exists; ErrorCode::Io otherwise.
std::filesystem::path locate(const std::vector<std::string>& dirs, const std::string& id,
                             const std::string& ext);

std::vector<std::filesystem::path> as_paths(const std::vector<std::string>& names);

std::string format_double(double v);

}  // namespace madkit::cli
