#include "madkit_cli/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <set>

#include "commands.hpp"

namespace madkit::cli {

namespace fs = std::filesystem;

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return kInvalidArgument;
    case ErrorCode::Parse: return kParse;
    case ErrorCode::Validation: return kValidation;
    case ErrorCode::EmptyClass: return kEmptyClass;
    case ErrorCode::DimensionMismatch: return kDimensionMismatch;
    case ErrorCode::Io: return kIo;
    case ErrorCode::CorruptModel: return kCorruptModel;
    case ErrorCode::Unreachable: return kUnreachable;
    case ErrorCode::Numeric: return kNumeric;
  }
  return kInternal;
}

void finish(OutputStage& stage, const RunRecord& record, Streams io) {
  stage.write_text("run_record.json", record.text());
  stage.commit();
  io.out << "run_record " << record.hash() << "\n";
}

std::string record_comment(const std::string& hash) { return "run_record=" + hash; }

fs::path locate(const std::vector<std::string>& dirs, const std::string& id, const std::string& ext) {
  for (const auto& d : dirs) {
    fs::path p = fs::path(d) / (id + ext);
    if (fs::is_regular_file(p)) return p;
  }
  throw Error(ErrorCode::Io, "no file " + id + ext + " in the given directories");
}

std::vector<fs::path> as_paths(const std::vector<std::string>& names) {
  return {names.begin(), names.end()};
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace {

const std::set<std::string> kCommands = {"synth", "protocol", "morph", "demorph", "degrade", "features",
                                         "train", "score", "eval", "vuln", "mds"};

bool is_option_token(const std::string& t) {
  if (t.size() < 2 || t[0] != '-') return false;
  return !(std::isdigit(static_cast<unsigned char>(t[1])) || t[1] == '.');
}

std::optional<std::string> find_config(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a file");
      return args[i + 1];
    }
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw Error(ErrorCode::Parse, "config values must be strings, numbers, booleans or arrays of those");
}

// Config entries replace any occurrence of the same option on the command
// line and are appended after it.
std::vector<std::string> merge_config(const std::vector<std::string>& args, const fs::path& path) {
  json cfg;
  try {
    cfg = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what(), std::nullopt);
  }
  if (!cfg.is_object()) throw ParseError("config must be a JSON object", 1);
  std::vector<std::string> merged = args;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "config") throw Error(ErrorCode::InvalidArgument, "config files cannot nest");
    const std::string flag = "--" + key;
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < merged.size(); ++i) {
      if (merged[i] == flag) {
        while (i + 1 < merged.size() && !is_option_token(merged[i + 1]) && !kCommands.count(merged[i + 1])) ++i;
        continue;
      }
      if (merged[i].rfind(flag + "=", 0) == 0) continue;
      kept.push_back(merged[i]);
    }
    merged = std::move(kept);
    if (value.is_boolean()) {
      merged.push_back(flag + "=" + scalar_text(value));
    } else if (value.is_array()) {
      merged.push_back(flag);
      for (const auto& item : value) merged.push_back(scalar_text(item));
    } else {
      merged.push_back(flag);
      merged.push_back(scalar_text(value));
    }
  }
  return merged;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differential morphing attack detection toolkit.", "madkit"};
  Common common;
  std::string config_path;
  try {
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", MADKIT_VERSION);
    app.add_option("--out", common.out, "Output directory for this run")->required();
    app.add_option("--seed", common.seed, "Top-level seed; every random stream derives from it")
        ->capture_default_str();
    app.add_option("--jobs", common.jobs, "Worker threads; outputs do not depend on it")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--config", config_path,
                   "JSON object of option values (keys without dashes); entries override the command line");

    const Streams io{out, err};
    add_synth(app, common, io);
    add_protocol(app, common, io);
    add_morph(app, common, io);
    add_demorph(app, common, io);
    add_degrade(app, common, io);
    add_features(app, common, io);
    add_train(app, common, io);
    add_score(app, common, io);
    add_eval(app, common, io);
    add_vuln(app, common, io);
    add_mds(app, common, io);

    std::vector<std::string> argv = args;
    if (const auto cfg = find_config(args)) argv = merge_config(args, *cfg);
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
    common.dispatch(app);
    return kOk;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const ParseError& e) {
    err << "error (parse): " << e.what();
    if (e.line()) err << " at line " << *e.line();
    if (!e.field().empty()) err << " in field " << e.field();
    err << "\n";
    return kParse;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace madkit::cli
