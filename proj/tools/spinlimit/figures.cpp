#include <fmt/format.h>

#include <numbers>

#include "spinlimit/commands.hpp"
#include "spinlimit/errors.hpp"

namespace spinlimit::cli {

namespace {

std::string real(double x) { return format_real(x); }

class FiguresCommand final : public Command {
 public:
  explicit FiguresCommand(Dispatch dispatch) : dispatch_(std::move(dispatch)) {}

  std::string name() const override { return "figures"; }
  std::string description() const override {
    return "Regenerate the data behind every figure into one directory";
  }
  void configure(CLI::App& sub) override {
    sub.add_option("--dir", dir_, "Destination directory (relative to the output dir)")
        ->capture_default_str();
  }
  void execute(const Context& ctx, const CLI::App&) override {
    using std::numbers::pi;
    const std::vector<int> panels{10, 50, 90};
    const std::vector<std::pair<std::string, double>> angles{
        {"pi6", pi / 6}, {"pi2", pi / 2}, {"5pi6", 5 * pi / 6}};

    for (int j : panels) {
      const std::string js = std::to_string(j);
      step(ctx, {"joint", "--j", js, "--beta", real(pi / 2), "--out", path("fig1_quantum_j" + js),
                 "--report", path("fig1_quantum_j" + js, ".toml")});
      step(ctx, {"classical", "--j", js, "--beta", real(pi / 2), "--out",
                 path("fig1_classical_j" + js), "--report",
                 path("fig1_classical_j" + js, ".toml")});
      step(ctx, {"wkb", "--j", js, "--k", "0.1", "--l", "-0.66", "--steps", "800", "--out",
                 path("fig2_sweep_j" + js)});
      for (const auto& [tag, beta] : angles) {
        const std::string stem = "histo_j" + js + "_" + tag;
        step(ctx, {"corrections", "--j", js, "--beta", real(beta), "--out",
                   path("corrections_j" + js + "_" + tag), "--histogram-out", path(stem),
                   "--report", path(stem, ".toml")});
      }
    }
    step(ctx, {"classical", "--beta", real(pi / 2), "--density-points", "201", "--out",
               path("fig1_density"), "--report", path("fig1_density", ".toml")});
    step(ctx, {"scaling", "--j", "10:90:10", "--beta",
               real(pi / 6) + "," + real(pi / 2) + "," + real(5 * pi / 6), "--out",
               path("averdp"), "--report", path("averdp", ".toml")});
    step(ctx, {"cjbeta", "--j", "4,9,15,21", "--beta-min", "0", "--beta-max", "3.1",
               "--steps", "311", "--out", path("correl")});
  }

 private:
  std::string path(const std::string& stem, const char* ext = ".csv") const {
    return dir_ + "/" + stem + ext;
  }

  void step(const Context& ctx, const std::vector<std::string>& args) {
    ctx.err << "figures: " << args.front() << " -> " << args[args.size() - 1] << '\n';
    const int code = dispatch_(args);
    if (code != 0) {
      throw Error(fmt::format("figures: step '{}' failed with exit code {}", args.front(), code));
    }
  }

  Dispatch dispatch_;
  std::string dir_ = "figures";
};

}  // namespace

std::unique_ptr<Command> make_figures_command(Dispatch dispatch) {
  return std::make_unique<FiguresCommand>(std::move(dispatch));
}

}  // namespace spinlimit::cli
