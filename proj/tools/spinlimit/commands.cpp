#include "spinlimit/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "spinlimit/classical.hpp"
#include "spinlimit/errors.hpp"
#include "spinlimit/semiclassical.hpp"
#include "spinlimit/singlet.hpp"
#include "spinlimit/statistics.hpp"
#include "spinlimit/wigner.hpp"

namespace spinlimit::cli {

namespace fs = std::filesystem;
using std::numbers::pi;

// ---------------------------------------------------------------------------
// Shared helpers

Report& Report::add(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
  return *this;
}

Report& Report::add(const std::string& key, double value) { return add(key, format_real(value)); }

Report& Report::add(const std::string& key, long long value) {
  return add(key, std::to_string(value));
}

Report& Report::add_text(const std::string& key, const std::string& value) {
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') quoted += '\\';
    quoted += c;
  }
  return add(key, quoted + "\"");
}

void Report::write(std::ostream& out) const {
  out << '[' << section_ << "]\n";
  for (const auto& [key, value] : entries_) out << key << " = " << value << '\n';
}

RunHeader resolved_header(const CLI::App& sub) {
  RunHeader header{sub.get_name(), {}};
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt == sub.get_help_ptr()) continue;
    const auto& names = opt->get_lnames();
    if (names.empty()) continue;
    const std::string& key = names.front();
    if (key == "report" || key.ends_with("out")) continue;
    std::string value;
    if (opt->count() > 0) {
      const auto& results = opt->results();
      for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
    } else {
      value = opt->get_default_str();
    }
    header.add(key, value);
  }
  return header;
}

fs::path resolve_output(const Context& ctx, const std::string& target) {
  fs::path p(target);
  if (p.is_relative()) p = ctx.out_dir / p;
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

namespace {

template <class Writer>
void write_target(const Context& ctx, const std::string& target, Writer&& writer) {
  if (target.empty()) return;
  if (target == "-") {
    writer(ctx.out);
    return;
  }
  const fs::path path = resolve_output(ctx, target);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidInputError("cannot open '" + path.string() + "' for writing");
  writer(file);
  if (!file) throw InvalidInputError("failed writing '" + path.string() + "'");
}

}  // namespace

void emit_csv(const Context& ctx, const std::string& target, const CsvTable& table,
              const RunHeader& header) {
  write_target(ctx, target, [&](std::ostream& os) { table.write(os, header); });
}

void emit_report(const Context& ctx, const std::string& target, const Report& report) {
  write_target(ctx, target, [&](std::ostream& os) { report.write(os); });
}

std::vector<SpinNumber> parse_spin_list(const std::string& text) {
  std::vector<SpinNumber> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw InvalidInputError("j range must be start:stop:step, got '" + text + "'");
    const SpinNumber start = SpinNumber::parse(parts[0]);
    const SpinNumber stop = SpinNumber::parse(parts[1]);
    const SpinNumber step = SpinNumber::parse(parts[2]);
    if (step.two_j() == 0) throw InvalidInputError("j range step must be positive");
    for (int t = start.two_j(); t <= stop.two_j(); t += step.two_j()) out.emplace_back(t);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(SpinNumber::parse(part));
  }
  if (out.empty()) throw InvalidInputError("empty j list '" + text + "'");
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) {
      throw InvalidInputError("cannot parse '" + part + "' as a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw InvalidInputError("empty number list");
  return out;
}

MagneticIndex parse_magnetic(const std::string& text) {
  if (text.empty()) throw InvalidInputError("empty magnetic number");
  const bool negative = text.front() == '-';
  const SpinNumber magnitude = SpinNumber::parse(negative ? text.substr(1) : text);
  return MagneticIndex(negative ? -magnitude.two_j() : magnitude.two_j());
}

std::string spin_label(MagneticIndex m) {
  const int t = m.two_m();
  if (t % 2 == 0) return std::to_string(t / 2);
  return std::to_string(t) + "/2";
}

void BellSetup::add_geometry(CLI::App& sub) {
  alice = {0.0, pi / 2};
  bob = {pi / 4, -pi / 4};
  sub.add_option("--j", j, "Spin (integer or half-integer)")->capture_default_str();
  sub.add_option("--alice", alice, "Alice's two axis angles (radians)")
      ->expected(2)
      ->delimiter(',')
      ->default_str(format_real(alice[0]) + "," + format_real(alice[1]));
  sub.add_option("--bob", bob, "Bob's two axis angles (radians)")
      ->expected(2)
      ->delimiter(',')
      ->default_str(format_real(bob[0]) + "," + format_real(bob[1]));
  sub.add_option("--max-two-j", max_two_j, "Enumeration cap on 2j")->capture_default_str();
}

void BellSetup::add_tensor(CLI::App& sub) {
  sub.add_option("--preset", preset, "Coefficient tensor: chsh, ch or ch-mirrored")
      ->check(CLI::IsMember({"chsh", "ch", "ch-mirrored"}))
      ->capture_default_str();
  sub.add_option("--tensor", tensor_file,
                 "CSV of r,s,m1,m2,c rows (r, s in {1,2}); overrides --preset");
}

SpinNumber BellSetup::spin() const { return SpinNumber::parse(j); }

PlanarSettings BellSetup::settings() const {
  if (alice.size() != 2 || bob.size() != 2) {
    throw InvalidInputError("bell: --alice and --bob need exactly two angles each");
  }
  return PlanarSettings{{alice[0], alice[1]}, {bob[0], bob[1]}};
}

namespace {

CoefficientTensor read_tensor(SpinNumber j, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("bell: cannot read tensor file '" + path + "'");
  CoefficientTensor t(j);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.rfind("r,", 0) == 0) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string part; std::getline(ss, part, ',');) f.push_back(part);
    auto bad = [&](const std::string& why) {
      return InvalidInputError("bell: " + path + ":" + std::to_string(line_no) + ": " + why);
    };
    if (f.size() != 5) throw bad("expected r,s,m1,m2,c");
    const int r = std::stoi(f[0]);
    const int s = std::stoi(f[1]);
    if (r < 1 || r > 2 || s < 1 || s > 2) throw bad("setting indices must be 1 or 2");
    const MagneticIndex m1 = parse_magnetic(f[2]);
    const MagneticIndex m2 = parse_magnetic(f[3]);
    if (!j.contains(m1) || !j.contains(m2)) throw bad("magnetic number out of range for j");
    const long long c = std::stoll(f[4]);
    t(r - 1, s - 1, j.index_of(m1), j.index_of(m2)) += c;
  }
  return t;
}

}  // namespace

BellInequality BellSetup::inequality() const {
  const SpinNumber spin_j = spin();
  if (spin_j.two_j() > max_two_j) {
    throw CapacityError("bell: 2j=" + std::to_string(spin_j.two_j()) + " exceeds the cap " +
                        std::to_string(max_two_j) +
                        "; exact local bounds are exponentially hard in general");
  }
  CoefficientTensor coeffs(spin_j);
  if (!tensor_file.empty()) {
    coeffs = read_tensor(spin_j, tensor_file);
  } else if (preset == "chsh") {
    coeffs = chsh_tensor(spin_j);
  } else {
    if (spin_j.two_j() != 1) throw InvalidInputError("bell: the CH presets are defined for j = 1/2");
    coeffs = clauser_horne_tensor(preset == "ch-mirrored");
  }
  return BellInequality{spin_j, settings(), std::move(coeffs), std::nullopt};
}

namespace {

// ---------------------------------------------------------------------------
// Commands

std::vector<std::string> magnetic_labels(SpinNumber j) {
  std::vector<std::string> labels;
  for (int i = 0; i < j.dim(); ++i) labels.push_back(spin_label(j.at(i)));
  return labels;
}

const char* region_name(WkbRegion r) {
  switch (r) {
    case WkbRegion::allowed: return "allowed";
    case WkbRegion::turning_zone: return "turning";
    case WkbRegion::forbidden: return "forbidden";
  }
  return "?";
}

const char* cell_name(CellKind k) {
  switch (k) {
    case CellKind::interior: return "interior";
    case CellKind::boundary: return "boundary";
    case CellKind::outside: return "outside";
  }
  return "?";
}

class DMatrixCommand final : public Command {
 public:
  std::string name() const override { return "dmatrix"; }
  std::string description() const override { return "Wigner d-matrix d^j_{m,m'}(beta) as CSV"; }
  void configure(CLI::App& sub) override {
    sub.add_option("--j", j_, "Spin")->required();
    sub.add_option("--beta", beta_, "Rotation angle in [0, pi] (radians)")->required();
    sub.add_option("--out", out_, "Output CSV ('-' for stdout)")->capture_default_str();
  }
  void execute(const Context& ctx, const CLI::App& sub) override {
    const SpinNumber j = SpinNumber::parse(j_);
    const DMatrix d = d_matrix(j, beta_);
    const auto labels = magnetic_labels(j);
    emit_csv(ctx, out_, grid_table(d.elements(), labels, labels, "m\\m'"), resolved_header(sub));
  }

 private:
  std::string j_;
  double beta_ = 0.0;
  std::string out_ = "dmatrix.csv";
};

class JointCommand final : public Command {
 public:
  std::string name() const override { return "joint"; }
  std::string description() const override {
    return "Singlet joint distribution p(m1, m2) at angle beta";
  }
  void configure(CLI::App& sub) override {
    sub.add_option("--j", j_, "Spin")->required();
    sub.add_option("--beta", beta_, "Angle between the axes in [0, pi] (radians)")->required();
    sub.add_option("--out", out_, "Output CSV ('-' for stdout)")->capture_default_str();
    sub.add_option("--report", report_, "Summary destination ('-' for stdout, empty to skip)")->capture_default_str();
  }
  void execute(const Context& ctx, const CLI::App& sub) override {
    const SpinNumber j = SpinNumber::parse(j_);
    const auto geom = MeasurementGeometry::from_angle(beta_);
    const auto dist = joint_distribution(j, geom);
    const auto labels = magnetic_labels(j);
    emit_csv(ctx, out_, grid_table(dist.p, labels, labels, "m1\\m2"), resolved_header(sub));
    double total = 0.0;
    for (double v : dist.p.flat()) total += v;
    Report rep("joint");
    rep.add_text("j", j.to_string()).add("beta", beta_).add("total", total)
        .add("correlation", quantum_correlation(j, geom));
    emit_report(ctx, report_, rep);
  }

 private:
  std::string j_;
  double beta_ = 0.0;
  std::string out_ = "joint.csv";
  std::string report_ = "-";
};

class ClassicalCommand final : public Command {
 public:
  std::string name() const override { return "classical"; }
  std::string description() const override {
    return "Classical tops: cell probabilities, or a Monte Carlo histogram with --samples";
  }
  void configure(CLI::App& sub) override {
    sub.add_option("--beta", beta_, "Angle between the axes in (0, pi) (radians)")->required();
    sub.add_option("--j", j_, "Spin fixing the cell size 1/j")->capture_default_str();
    sub.add_option("--samples", samples_, "Monte Carlo sample count (0: cell grid only)")
        ->capture_default_str();
    sub.add_option("--seed", seed_, "Sampler seed")->capture_default_str();
    sub.add_option("--bins", bins_, "Histogram bins per axis")->capture_default_str()
        ->check(CLI::Range(2, 1000));
    sub.add_option("--density-points", density_points_,
                   "Sample the continuous density on an N x N (k, l) grid instead")
        ->capture_default_str();
    sub.add_option("--out", out_, "Output CSV ('-' for stdout)")->capture_default_str();
    sub.add_option("--report", report_, "Summary destination ('-' for stdout, empty to skip)")->capture_default_str();
  }
  void execute(const Context& ctx, const CLI::App& sub) override {
    Report rep("classical");
    rep.add("beta", beta_).add("normalization", classical_normalization(beta_))
        .add("correlation", classical_correlation(beta_));
    if (density_points_ > 1) {
      CsvTable table({"k", "l", "rho", "region"});
      for (int a = 0; a < density_points_; ++a) {
        for (int b = 0; b < density_points_; ++b) {
          const double k = -1.0 + 2.0 * a / (density_points_ - 1);
          const double l = -1.0 + 2.0 * b / (density_points_ - 1);
          const auto rho = classical_density(beta_, k, l);
          const char* region = rho.region == DensityRegion::inside     ? "inside"
                               : rho.region == DensityRegion::boundary ? "boundary"
                                                                       : "outside";
          table.add_row({format_real(k), format_real(l), format_real(rho.value), region});
        }
      }
      emit_csv(ctx, out_, table, resolved_header(sub));
    } else if (samples_ == 0) {
      const SpinNumber j = SpinNumber::parse(j_);
      const auto grid = classical_cell_grid(beta_, j);
      CsvTable table({"m1", "m2", "k", "l", "p_c", "kind"});
      double total = 0.0;
      for (int r = 0; r < j.dim(); ++r) {
        for (int c = 0; c < j.dim(); ++c) {
          table.add_row({spin_label(j.at(r)), spin_label(j.at(c)),
                         format_real(j.at(r).value() / j.value()),
                         format_real(j.at(c).value() / j.value()), format_real(grid.p(r, c)),
                         cell_name(grid.kind(r, c))});
          total += grid.p(r, c);
        }
      }
      emit_csv(ctx, out_, table, resolved_header(sub));
      rep.add_text("j", j.to_string()).add("cell_total", total);
    } else {
      const double w = 2.0 / bins_;
      std::vector<std::size_t> counts(static_cast<std::size_t>(bins_) * bins_, 0);
      double kl = 0.0;
      for_each_classical_sample(beta_, samples_, seed_, [&](const ClassicalSample& s) {
        const int a = std::min(bins_ - 1, static_cast<int>((s.k + 1.0) / w));
        const int b = std::min(bins_ - 1, static_cast<int>((s.l + 1.0) / w));
        ++counts[static_cast<std::size_t>(a) * bins_ + b];
        kl += s.k * s.l;
      });
      CsvTable table({"k_lo", "k_hi", "l_lo", "l_hi", "count", "expected", "kind"});
      for (int a = 0; a < bins_; ++a) {
        for (int b = 0; b < bins_; ++b) {
          const double k0 = -1.0 + a * w;
          const double l0 = -1.0 + b * w;
          const double mass = classical_rectangle_probability(beta_, k0, k0 + w, l0, l0 + w);
          table.add_row({format_real(k0), format_real(k0 + w), format_real(l0), format_real(l0 + w),
                         std::to_string(counts[static_cast<std::size_t>(a) * bins_ + b]),
                         format_real(mass * static_cast<double>(samples_)),
                         cell_name(classify_rectangle(beta_, k0, k0 + w, l0, l0 + w))});
        }
      }
      emit_csv(ctx, out_, table, resolved_header(sub));
      rep.add("samples", static_cast<long long>(samples_))
          .add("seed", static_cast<long long>(seed_))
          .add("sample_correlation", kl / static_cast<double>(samples_));
    }
    emit_report(ctx, report_, rep);
  }

 private:
  double beta_ = 0.0;
  std::string j_ = "10";
  std::size_t samples_ = 0;
  std::uint64_t seed_ = 1;
  int bins_ = 40;
  int density_points_ = 0;
  std::string out_ = "classical.csv";
  std::string report_ = "-";
};

/// Nearest allowed magnetic number to x j.
MagneticIndex nearest_magnetic(SpinNumber j, double x) {
  const double target = x * j.value();
  int best = j.two_j();
  for (int i = 0; i < j.dim(); ++i) {
    if (std::abs(j.at(i).value() - target) < std::abs(MagneticIndex(best).value() - target)) {
      best = j.at(i).two_m();
    }
  }
  return MagneticIndex(best);
}

class WkbCommand final : public Command {
 public:
  std::string name() const override { return "wkb"; }
  std::string description() const override {
    return "Beta sweep of exact and semiclassical p(m1, m2) with the classical density";
  }
  void configure(CLI::App& sub) override {
    sub.add_option("--j", j_, "Integer spin")->required();
    sub.add_option("--m1", m1_, "Alice's outcome (default: nearest to k j)");
    sub.add_option("--m2", m2_, "Bob's outcome (default: nearest to l j)");
    sub.add_option("--k", k_, "Scaled classical projection for Alice")
        ->default_str(format_real(k_));
    sub.add_option("--l", l_, "Scaled classical projection for Bob")->default_str(format_real(l_));
    sub.add_option("--beta-min", lo_, "Sweep start (radians)")->default_str(format_real(lo_));
    sub.add_option("--beta-max", hi_, "Sweep end (radians)")->default_str(format_real(hi_));
    sub.add_option("--steps", steps_, "Number of sweep points")->capture_default_str()
        ->check(CLI::Range(2, 1000000));
    sub.add_option("--out", out_, "Output CSV ('-' for stdout)")->capture_default_str();
  }
  void execute(const Context& ctx, const CLI::App& sub) override {
    const SpinNumber j = SpinNumber::parse(j_);
    if (j.two_j() == 0) throw DomainError("wkb: needs j > 0");
    const MagneticIndex m1 = m1_.empty() ? nearest_magnetic(j, k_) : parse_magnetic(m1_);
    const MagneticIndex m2 = m2_.empty() ? nearest_magnetic(j, l_) : parse_magnetic(m2_);
    j.require(m1);
    j.require(m2);
    if (!(lo_ > 0.0 && hi_ < pi && lo_ < hi_)) {
      throw DomainError("wkb: sweep must satisfy 0 < beta-min < beta-max < pi");
    }
    const double n = j.dim();
    const double k = m1.value() / j.value();
    const double l = m2.value() / j.value();
    CsvTable table({"beta", "p_exact", "p_envelope", "p_classical", "d_exact", "d_wkb",
                    "envelope2", "region"});
    for (int i = 0; i < steps_; ++i) {
      const double beta = lo_ + (hi_ - lo_) * i / (steps_ - 1);
      const double d = d_element(j, -m1, m2, beta);
      const WkbEvaluation w = wkb_d(j, -m1, m2, beta);
      const auto rho = classical_density(beta, k, l);
      table.add_row({format_real(beta), format_real(d * d / n),
                     format_real(w.envelope * w.envelope / (2.0 * n)),
                     format_real(rho.value / (j.value() * j.value())), format_real(d),
                     w.value ? format_real(*w.value) : std::string("nan"),
                     format_real(w.envelope * w.envelope), region_name(w.region)});
    }
    RunHeader header = resolved_header(sub);
    header.add("m1_resolved", spin_label(m1)).add("m2_resolved", spin_label(m2));
    emit_csv(ctx, out_, table, header);
  }

 private:
  std::string j_;
  std::string m1_;
  std::string m2_;
  double k_ = 0.1;
  double l_ = -0.66;
  double lo_ = 0.05;
  double hi_ = pi - 0.05;
  int steps_ = 400;
  std::string out_ = "wkb.csv";
};

class CorrectionsCommand final : public Command {
 public:
  std::string name() const override { return "corrections"; }
  std::string description() const override {
    return "Quantum corrections delta_p = p - p_c on the cell grid, with summary statistics";
  }
  void configure(CLI::App& sub) override {
    sub.add_option("--j", j_, "Spin")->required();
    sub.add_option("--beta", beta_, "Angle in (0, pi) (radians)")->required();
    sub.add_option("--bins", bins_, "Histogram bins")->capture_default_str();
    sub.add_flag("--include-boundary", include_boundary_,
                 "Keep boundary and outside cells in the statistics")
        ->default_str("false");
    sub.add_option("--out", out_, "Cell CSV ('-' for stdout)")->capture_default_str();
    sub.add_option("--histogram-out", hist_out_, "Histogram CSV")->capture_default_str();
    sub.add_option("--report", report_, "Summary destination ('-' for stdout, empty to skip)")->capture_default_str();
  }
  void execute(const Context& ctx, const CLI::App& sub) override {
    const SpinNumber j = SpinNumber::parse(j_);
    const auto grid = correction_grid(j, MeasurementGeometry::from_angle(beta_));
    const auto st = correction_stats(grid, bins_, !include_boundary_);
    const double big_n = static_cast<double>(j.dim()) * j.dim();
    const RunHeader header = resolved_header(sub);

    CsvTable cells({"m1", "m2", "delta_p", "n_delta_p", "masked"});
    for (int r = 0; r < j.dim(); ++r)
      for (int c = 0; c < j.dim(); ++c)
        cells.add_row({spin_label(j.at(r)), spin_label(j.at(c)), format_real(grid.delta_p(r, c)),
                       format_real(big_n * grid.delta_p(r, c)),
                       std::to_string(grid.boundary_mask(r, c))});
    emit_csv(ctx, out_, cells, header);

    CsvTable hist({"bin_lo", "bin_hi", "count"});
    for (std::size_t b = 0; b < st.histogram.counts.size(); ++b)
      hist.add_row({format_real(st.histogram.edges[b]), format_real(st.histogram.edges[b + 1]),
                    std::to_string(st.histogram.counts[b])});
    emit_csv(ctx, hist_out_, hist, header);

    Report rep("corrections");
    rep.add_text("j", j.to_string()).add("beta", beta_)
        .add("sample_count", static_cast<long long>(st.sample_count))
        .add("dp_av", st.dp_av).add("dp2_av", st.dp2_av).add("skewness", st.skewness)
        .add("median", st.median).add("iqr", st.iqr).add("tail_fraction", st.tail_fraction)
        .add("classical_total", grid.classical_total);
    emit_report(ctx, report_, rep);
  }

 private:
  std::string j_;
  double beta_ = 0.0;
  int bins_ = kDefaultHistogramBins;
  bool include_boundary_ = false;
  std::string out_ = "corrections.csv";
  std::string hist_out_ = "corrections_histogram.csv";
  std::string report_ = "-";
};

class ScalingCommand final : public Command {
 public:
  std::string name() const override { return "scaling"; }
  std::string description() const override {
    return "dp_av and dp2_av versus j with log-log fits";
  }
  void configure(CLI::App& sub) override {
    sub.add_option("--j", js_, "j list: start:stop:step or comma separated")
        ->capture_default_str();
    sub.add_option("--beta", betas_, "Comma separated angles (radians)")->capture_default_str();
    sub.add_flag("--exclude-boundary", exclude_boundary_,
                 "Drop boundary and outside cells from the averages")
        ->default_str("false");
    sub.add_option("--out", out_, "Output CSV ('-' for stdout)")->capture_default_str();
    sub.add_option("--report", report_, "Summary destination ('-' for stdout, empty to skip)")->capture_default_str();
  }
  void execute(const Context& ctx, const CLI::App& sub) override {
    const auto js = parse_spin_list(js_);
    const auto betas = parse_real_list(betas_);
    CsvTable table({"beta", "j", "dp_av", "abs_dp_av", "dp2_av", "scaled_dp2", "slope_dp2",
                    "intercept_dp2", "r2_dp2", "slope_dp_av"});
    Report rep("scaling");
    for (double beta : betas) {
      std::vector<CorrectionStats> stats;
      for (const auto& j : js) {
        stats.push_back(correction_stats(correction_grid(j, MeasurementGeometry::from_angle(beta)),
                                         kDefaultHistogramBins, exclude_boundary_));
      }
      const ScalingFit fit2 = scaling_fit(stats, StatField::dp2_av);
      const ScalingFit fit1 = scaling_fit(stats, StatField::dp_av);
      for (const auto& st : stats) {
        const double n = static_cast<double>(st.j.dim()) * st.j.dim();
        table.add_row({format_real(beta), st.j.to_string(), format_real(st.dp_av),
                       format_real(std::abs(st.dp_av)), format_real(st.dp2_av),
                       format_real(st.dp2_av * st.j.value() * st.j.value() * n),
                       format_real(fit2.slope), format_real(fit2.intercept),
                       format_real(fit2.r_squared), format_real(fit1.slope)});
      }
      const std::string tag = "beta_" + format_real(beta);
      rep.add(tag + ".slope_dp2", fit2.slope).add(tag + ".r2_dp2", fit2.r_squared)
          .add(tag + ".slope_dp_av", fit1.slope);
    }
    emit_csv(ctx, out_, table, resolved_header(sub));
    emit_report(ctx, report_, rep);
  }

 private:
  std::string js_ = "10:90:10";
  std::string betas_ = "1.5707963267948966";
  bool exclude_boundary_ = false;
  std::string out_ = "scaling.csv";
  std::string report_ = "-";
};

class CjBetaCommand final : public Command {
 public:
  std::string name() const override { return "cjbeta"; }
  std::string description() const override {
    return "Cross-angle correlation C_j(beta) curves";
  }
  void configure(CLI::App& sub) override {
    sub.add_option("--j", js_, "j list")->capture_default_str();
    sub.add_option("--beta-min", lo_, "Sweep start (radians)")->default_str(format_real(lo_));
    sub.add_option("--beta-max", hi_, "Sweep end, below pi (radians)")
        ->default_str(format_real(hi_));
    sub.add_option("--steps", steps_, "Number of sweep points")->capture_default_str()
        ->check(CLI::Range(2, 1000000));
    sub.add_option("--out", out_, "Output CSV ('-' for stdout)")->capture_default_str();
  }
  void execute(const Context& ctx, const CLI::App& sub) override {
    const auto js = parse_spin_list(js_);
    CsvTable table({"j", "beta", "c_raw", "c_normalized"});
    for (const auto& j : js) {
      for (int i = 0; i < steps_; ++i) {
        const double beta = lo_ + (hi_ - lo_) * i / (steps_ - 1);
        const double c = cross_angle_correlation(j, beta);
        table.add_row({j.to_string(), format_real(beta), format_real(c),
                       format_real(c / j.dim())});
      }
    }
    emit_csv(ctx, out_, table, resolved_header(sub));
  }

 private:
  std::string js_ = "4,9,15,21";
  double lo_ = 0.0;
  double hi_ = 3.0;
  int steps_ = 301;
  std::string out_ = "cjbeta.csv";
};

class BellBoundsCommand final : public Command {
 public:
  std::string name() const override { return "bell-bounds"; }
  std::string description() const override {
    return "Local bounds and quantum value of one Bell inequality";
  }
  void configure(CLI::App& sub) override {
    setup_.add_geometry(sub);
    setup_.add_tensor(sub);
    sub.add_option("--out", out_, "Output CSV ('-' for stdout)")->capture_default_str();
    sub.add_option("--report", report_, "Summary destination ('-' for stdout, empty to skip)")->capture_default_str();
  }
  void execute(const Context& ctx, const CLI::App& sub) override {
    const BellInequality ineq = setup_.inequality();
    const ClassicalBounds b = classical_bounds(ineq, BellLimits{setup_.max_two_j});
    const double q = quantum_value(ineq);
    CsvTable table({"M1", "M2", "quantum", "raw_excess", "normalized_excess", "violates"});
    table.add_row({std::to_string(b.lower), std::to_string(b.upper), format_real(q),
                   format_real(raw_excess(q, b)), format_real(normalized_excess(q, b)),
                   violates(q, b) ? "1" : "0"});
    emit_csv(ctx, out_, table, resolved_header(sub));
    Report rep("bell-bounds");
    rep.add_text("j", ineq.j.to_string())
        .add("M1", static_cast<long long>(b.lower))
        .add("M2", static_cast<long long>(b.upper))
        .add("quantum", q)
        .add("normalized_excess", normalized_excess(q, b))
        .add("violates", std::string(violates(q, b) ? "true" : "false"));
    if (ineq.j.two_j() > 0) rep.add("chsh_correlation", chsh_correlation_value(ineq.j, ineq.settings));
    emit_report(ctx, report_, rep);
  }

 private:
  BellSetup setup_;
  std::string out_ = "bell_bounds.csv";
  std::string report_ = "-";
};

class BellScanCommand final : public Command {
 public:
  std::string name() const override { return "bell-scan"; }
  std::string description() const override {
    return "Random coefficient tensors: violation statistics";
  }
  void configure(CLI::App& sub) override {
    setup_.add_geometry(sub);
    sub.add_option("--samples", samples_, "Number of tensors")->capture_default_str();
    sub.add_option("--seed", seed_, "Master seed")->capture_default_str();
    sub.add_option("--model.q", model_.q, "Probability that an entry is non-zero")
        ->default_str(format_real(model_.q))
        ->check(CLI::Range(0.0, 1.0));
    sub.add_option("--model.cmax", model_.cmax, "Largest coefficient magnitude")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub.add_option("--out", out_, "Per-sample CSV ('-' for stdout)")->capture_default_str();
    sub.add_option("--report", report_, "Summary destination ('-' for stdout, empty to skip)")->capture_default_str();
  }
  void execute(const Context& ctx, const CLI::App& sub) override {
    const SpinNumber j = setup_.spin();
    const ScanReport rep = scan_random(j, setup_.settings(), model_, samples_, seed_,
                                       BellLimits{setup_.max_two_j});
    CsvTable table({"index", "M1", "M2", "quantum", "excess", "violates"});
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
      const auto& s = rep.samples[i];
      table.add_row({std::to_string(i), std::to_string(s.bounds.lower),
                     std::to_string(s.bounds.upper), format_real(s.quantum),
                     format_real(s.excess), violates(s.quantum, s.bounds) ? "1" : "0"});
    }
    emit_csv(ctx, out_, table, resolved_header(sub));
    Report out("bell-scan");
    out.add_text("j", j.to_string())
        .add_text("model", model_.descriptor())
        .add("seed", static_cast<long long>(seed_))
        .add("num_samples", static_cast<long long>(rep.num_samples))
        .add("violations", static_cast<long long>(rep.violations))
        .add("violation_rate", rep.num_samples ? static_cast<double>(rep.violations) / rep.num_samples : 0.0)
        .add("max_excess", rep.max_excess)
        .add("median_excess", rep.median_excess);
    emit_report(ctx, report_, out);
  }

 private:
  BellSetup setup_;
  std::size_t samples_ = 10000;
  std::uint64_t seed_ = 1;
  CoefficientModel model_;
  std::string out_ = "bell_scan.csv";
  std::string report_ = "-";
};

class BellSensitivityCommand final : public Command {
 public:
  std::string name() const override { return "bell-sensitivity"; }
  std::string description() const override {
    return "Survival of a violation under random angle perturbations";
  }
  void configure(CLI::App& sub) override {
    setup_.add_geometry(sub);
    setup_.add_tensor(sub);
    sub.add_option("--delta", delta_, "Perturbation half-width (radians; default pi/(2j+1))");
    sub.add_option("--trials", trials_, "Number of perturbed trials")->capture_default_str();
    sub.add_option("--seed", seed_, "Master seed")->capture_default_str();
    sub.add_option("--out", out_, "Per-trial CSV ('-' for stdout)")->capture_default_str();
    sub.add_option("--report", report_, "Summary destination ('-' for stdout, empty to skip)")->capture_default_str();
  }
  void execute(const Context& ctx, const CLI::App& sub) override {
    BellInequality ineq = setup_.inequality();
    ineq.bounds = classical_bounds(ineq, BellLimits{setup_.max_two_j});
    const double delta = delta_ ? *delta_ : default_sensitivity_delta(ineq.j);
    const SensitivityReport rep = angle_sensitivity(ineq, delta, trials_, seed_);
    CsvTable table({"trial", "value", "shift"});
    for (std::size_t t = 0; t < rep.shifts.size(); ++t) {
      table.add_row({std::to_string(t), format_real(rep.base_value + rep.shifts[t]),
                     format_real(rep.shifts[t])});
    }
    RunHeader header = resolved_header(sub);
    header.add("delta_resolved", delta);
    emit_csv(ctx, out_, table, header);
    Report out("bell-sensitivity");
    out.add_text("j", ineq.j.to_string())
        .add("delta", delta)
        .add("trials", static_cast<long long>(rep.trials))
        .add("surviving", static_cast<long long>(rep.surviving))
        .add("survival_fraction", rep.survival_fraction)
        .add("base_value", rep.base_value)
        .add("base_margin", rep.base_margin)
        .add("median_abs_shift", rep.median_abs_shift);
    emit_report(ctx, report_, out);
  }

 private:
  BellSetup setup_;
  std::optional<double> delta_;
  std::size_t trials_ = 1000;
  std::uint64_t seed_ = 1;
  std::string out_ = "bell_sensitivity.csv";
  std::string report_ = "-";
};

}  // namespace

std::vector<std::unique_ptr<Command>> make_commands(Dispatch dispatch) {
  std::vector<std::unique_ptr<Command>> cmds;
  cmds.push_back(std::make_unique<DMatrixCommand>());
  cmds.push_back(std::make_unique<JointCommand>());
  cmds.push_back(std::make_unique<ClassicalCommand>());
  cmds.push_back(std::make_unique<WkbCommand>());
  cmds.push_back(std::make_unique<CorrectionsCommand>());
  cmds.push_back(std::make_unique<ScalingCommand>());
  cmds.push_back(std::make_unique<CjBetaCommand>());
  cmds.push_back(std::make_unique<BellBoundsCommand>());
  cmds.push_back(std::make_unique<BellScanCommand>());
  cmds.push_back(std::make_unique<BellSensitivityCommand>());
  cmds.push_back(make_figures_command(std::move(dispatch)));
  return cmds;
}

}  // namespace spinlimit::cli
