#include "spinlimit/app.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <set>

#include "spinlimit/commands.hpp"
#include "spinlimit/config.hpp"
#include "spinlimit/errors.hpp"
#include "spinlimit/version.hpp"

namespace spinlimit::cli {

namespace {

int dispatch(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum and classical statistics of two spin-j particles in the singlet state",
               "spinlimit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  app.add_option("--config", config_path, "TOML config file; flags on the command line win");
  app.add_option("--out-dir", out_dir,
                 "Directory for relative output paths (default: $SPINLIMIT_OUTPUT_DIR or .)");

  auto commands = make_commands([&](const std::vector<std::string>& args) {
    std::vector<std::string> full;
    if (!out_dir.empty()) full = {"--out-dir", out_dir};
    full.insert(full.end(), args.begin(), args.end());
    return dispatch(full, out, err);
  });

  std::set<std::string> names;
  std::vector<std::pair<CLI::App*, Command*>> subs;
  for (auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd->name(), cmd->description());
    cmd->configure(*sub);
    names.insert(cmd->name());
    subs.emplace_back(sub, cmd.get());
  }

  std::vector<std::string> args;
  try {
    args = splice_config(raw_args, names);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kConfigError;
  } catch (const Error& e) {
    err << "spinlimit: " << e.what() << '\n';
    return kConfigError;
  }

  if (out_dir.empty()) {
    const char* env = std::getenv("SPINLIMIT_OUTPUT_DIR");
    out_dir = (env && *env) ? env : ".";
  }
  Context ctx{std::filesystem::path(out_dir), out, err};

  for (auto& [sub, cmd] : subs) {
    if (!sub->parsed()) continue;
    try {
      cmd->execute(ctx, *sub);
      return kOk;
    } catch (const CapacityError& e) {
      err << "spinlimit " << cmd->name() << ": capacity: " << e.what() << '\n';
      return kCapacityError;
    } catch (const DomainError& e) {
      err << "spinlimit " << cmd->name() << ": domain: " << e.what() << '\n';
      return kDomainError;
    } catch (const ConsistencyError& e) {
      err << "spinlimit " << cmd->name() << ": numerical: " << e.what() << '\n';
      return kDomainError;
    } catch (const InvalidInputError& e) {
      err << "spinlimit " << cmd->name() << ": " << e.what() << '\n';
      return kConfigError;
    } catch (const std::exception& e) {
      err << "spinlimit " << cmd->name() << ": " << e.what() << '\n';
      return kFailure;
    }
  }
  return kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return dispatch(args, out, err);
}

}  // namespace spinlimit::cli
