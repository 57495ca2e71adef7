#pragma once

#include "swarmkit/geom.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace swarmkit {

/// Exit statuses shared by every command.
enum ExitCode { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

/// Entry point behind the swarmkit binary; args excludes argv[0].
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_run(const std::string& spec_path, const std::string& trace_path, std::ostream& out, std::ostream& err);
int cmd_analyze(const std::string& config_path, const std::string& query, const ToleranceConfig& cfg,
                std::ostream& out, std::ostream& err);
int cmd_suite(const std::string& filter, std::ostream& out, std::ostream& err);
int cmd_render(const std::string& trace_path, const std::string& svg_path, std::ostream& err);

/// Configuration file: "[x,y]" entries, '#' comments.
std::vector<Point> read_config_file(const std::string& path);

/// Shell-style match: '*' any run, '?' one character.
bool glob_match(const std::string& pattern, const std::string& name);

} // namespace swarmkit
