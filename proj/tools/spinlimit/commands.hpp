#pragma once

#include <CLI11.hpp>
#include <filesystem>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "spinlimit/bell.hpp"
#include "spinlimit/io.hpp"
#include "spinlimit/spin.hpp"

namespace spinlimit::cli {

struct Context {
  std::filesystem::path out_dir;
  std::ostream& out;
  std::ostream& err;
};

/// One subcommand: binds its flags to members, then runs on the parsed values.
class Command {
 public:
  virtual ~Command() = default;
  virtual std::string name() const = 0;
  virtual std::string description() const = 0;
  virtual void configure(CLI::App& sub) = 0;
  virtual void execute(const Context& ctx, const CLI::App& sub) = 0;
};

/// Runs a nested command line in the caller's context; returns its exit code.
using Dispatch = std::function<int(const std::vector<std::string>&)>;

std::vector<std::unique_ptr<Command>> make_commands(Dispatch dispatch);
std::unique_ptr<Command> make_figures_command(Dispatch dispatch);

/// Ordered key = value summary, printed as a TOML table.
class Report {
 public:
  explicit Report(std::string section) : section_(std::move(section)) {}
  Report& add(const std::string& key, const std::string& value);
  Report& add(const std::string& key, double value);
  Report& add(const std::string& key, long long value);
  Report& add_text(const std::string& key, const std::string& value);
  void write(std::ostream& out) const;

 private:
  std::string section_;
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Command name plus every flag of `sub` with its resolved value. Output
/// locations are left out so that identical configs give identical files.
RunHeader resolved_header(const CLI::App& sub);

/// Writes to `target` resolved against ctx.out_dir, or to ctx.out for "-".
void emit_csv(const Context& ctx, const std::string& target, const CsvTable& table,
              const RunHeader& header);
void emit_report(const Context& ctx, const std::string& target, const Report& report);

std::filesystem::path resolve_output(const Context& ctx, const std::string& target);

/// "10:90:10" (inclusive range), "4,9,15,21" or a single value; entries may be
/// half-integers ("7/2", "0.5").
std::vector<SpinNumber> parse_spin_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);
/// "3", "-5/2" or "2.5".
MagneticIndex parse_magnetic(const std::string& text);

std::string spin_label(MagneticIndex m);

/// Shared by the bell commands: j, the four planar angles and the tensor
/// source (a named preset or a CSV file of r,s,m1,m2,c rows).
struct BellSetup {
  std::string j = "1/2";
  std::vector<double> alice;
  std::vector<double> bob;
  std::string preset = "chsh";
  std::string tensor_file;
  int max_two_j = BellLimits{}.max_two_j;

  void add_geometry(CLI::App& sub);
  void add_tensor(CLI::App& sub);
  SpinNumber spin() const;
  PlanarSettings settings() const;
  BellInequality inequality() const;
};

}  // namespace spinlimit::cli
