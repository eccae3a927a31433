#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace spinlimit::cli {

/// Rewrites a command line so that settings from a TOML config file become
/// ordinary flags. Top-level keys map to global flags, keys of a section
/// named after the subcommand to its flags, and nested sections to dotted
/// names ([bell-scan.model] q = 0.2 becomes --model.q=0.2). A top-level
/// `command` key selects the subcommand when none is given. Flags already on
/// the command line take precedence over the file.
std::vector<std::string> splice_config(const std::vector<std::string>& args,
                                       const std::set<std::string>& subcommands);

/// Value of --config in args, if any.
std::optional<std::string> find_config_path(const std::vector<std::string>& args);

}  // namespace spinlimit::cli
