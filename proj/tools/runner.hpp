#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace lvis::app {

enum ExitCode : int { ok = 0, usage_error = 1, config_error = 2, step_cap_error = 3, io_error = 4 };

struct RunOutput {
    std::string name;      // file name inside the output directory
    std::string content;
};

/// Runs the configured mode and returns every artifact (manifest.json first).
/// Throws StepCapExceeded in strict mode.
[[nodiscard]] std::vector<RunOutput> execute(const RunConfig& cfg, std::ostream& log);

/// Writes each artifact to a temporary name and renames it into place.
void write_outputs(const std::filesystem::path& dir, const std::vector<RunOutput>& outputs);

/// execute() plus write_outputs(), mapping failures to exit codes with a
/// diagnostic on `err`. Nothing is written when the run fails.
[[nodiscard]] int run(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& log, std::ostream& err);

/// Extracts the configuration text from a manifest.json written by run().
[[nodiscard]] std::string config_from_manifest(const std::string& manifest_json);

}  // namespace lvis::app
