#pragma once

#include <string>

#include "oeb/acceptance.hpp"

namespace oeb::cli {

// Exit codes: 0 ok, 1 verification failure, 2 config error, 3 runtime error,
// 4 figure sub-run failure.
int cmd_run(const std::string& config_path);
int cmd_figure(const std::string& figure_id, const std::string& out_dir);
int cmd_verify(accept::Level level);
int cmd_catalog();

} // namespace oeb::cli
