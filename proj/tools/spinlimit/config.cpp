#include "spinlimit/config.hpp"

#include <CLI11.hpp>
#include <algorithm>

namespace spinlimit::cli {

namespace {

std::string flag_name(const std::string& token) {
  if (token.size() < 3 || token.compare(0, 2, "--") != 0) return {};
  return token.substr(2, token.find('=') - 2);
}

std::set<std::string> flags_in(std::vector<std::string>::const_iterator first,
                               std::vector<std::string>::const_iterator last) {
  std::set<std::string> names;
  for (auto it = first; it != last; ++it) {
    const std::string name = flag_name(*it);
    if (!name.empty()) names.insert(name);
  }
  return names;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

std::vector<std::string> splice_config(const std::vector<std::string>& args,
                                       const std::set<std::string>& subcommands) {
  const auto path = find_config_path(args);
  if (!path) return args;
  const std::vector<CLI::ConfigItem> items = CLI::ConfigTOML().from_file(*path);

  auto sub_it = std::find_if(args.begin(), args.end(),
                             [&](const std::string& a) { return subcommands.count(a) > 0; });
  std::string command = sub_it == args.end() ? std::string() : *sub_it;
  for (const auto& item : items) {
    if (command.empty() && item.parents.empty() && item.name == "command" &&
        !item.inputs.empty()) {
      command = item.inputs.front();
    }
  }
  if (!command.empty() && subcommands.count(command) == 0) {
    throw CLI::ValidationError("config", "unknown command '" + command + "' in " + *path);
  }

  const std::set<std::string> cli_global = flags_in(args.begin(), sub_it);
  const std::set<std::string> cli_local =
      sub_it == args.end() ? std::set<std::string>{} : flags_in(sub_it + 1, args.end());

  std::vector<std::string> global_flags;
  std::vector<std::string> local_flags;
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--" || item.inputs.empty()) continue;
    if (item.parents.empty()) {
      if (item.name == "command" || item.name == "config") continue;
      if (cli_global.count(item.name) == 0) {
        global_flags.push_back("--" + item.name + "=" + join(item.inputs, ','));
      }
      continue;
    }
    if (item.parents.front() != command) continue;
    std::vector<std::string> path_parts(item.parents.begin() + 1, item.parents.end());
    path_parts.push_back(item.name);
    const std::string name = join(path_parts, '.');
    if (cli_local.count(name) == 0) {
      local_flags.push_back("--" + name + "=" + join(item.inputs, ','));
    }
  }

  std::vector<std::string> out(args.begin(), sub_it);
  out.insert(out.end(), global_flags.begin(), global_flags.end());
  if (!command.empty()) {
    out.push_back(command);
    out.insert(out.end(), local_flags.begin(), local_flags.end());
    if (sub_it != args.end()) out.insert(out.end(), sub_it + 1, args.end());
  }
  return out;
}

}  // namespace spinlimit::cli
