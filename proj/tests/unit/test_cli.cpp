#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "bell_oracle.hpp"
#include "spinlimit/app.hpp"
#include "spinlimit/bell.hpp"

namespace fs = std::filesystem;
using spinlimit::cli::run;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("spinlimit_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) fields.push_back(field);
  return fields;
}

struct Csv {
  std::vector<std::string> header_lines;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw std::runtime_error("missing column " + name);
  }
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.starts_with("#")) {
      csv.header_lines.push_back(line);
    } else if (csv.columns.empty()) {
      csv.columns = split(line);
    } else {
      csv.rows.push_back(split(line));
    }
  }
  return csv;
}

std::string config(const std::string& name) { return std::string(SPINLIMIT_CONFIG_DIR) + "/" + name; }

bool has_header(const Csv& csv, const std::string& line) {
  for (const auto& h : csv.header_lines)
    if (h == line) return true;
  return false;
}

}  // namespace

TEST(Cli, HelpExitsZero) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("bell-bounds"), std::string::npos);
}

TEST(Cli, JointGridIsNormalisedDistribution) {
  TempDir dir;
  const auto r = invoke({"--out-dir", dir.str(), "joint", "--j", "10", "--beta",
                         "1.5707963267948966", "--out", "joint.csv", "--report", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Csv csv = parse_csv(slurp(dir.path() / "joint.csv"));
  ASSERT_EQ(csv.columns.size(), 22u);
  ASSERT_EQ(csv.rows.size(), 21u);
  EXPECT_EQ(csv.rows.front().front(), "10");
  EXPECT_EQ(csv.rows.back().front(), "-10");
  double total = 0.0;
  for (const auto& row : csv.rows) {
    ASSERT_EQ(row.size(), 22u);
    for (std::size_t c = 1; c < row.size(); ++c) {
      const double p = std::stod(row[c]);
      EXPECT_GE(p, 0.0);
      total += p;
    }
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_TRUE(has_header(csv, "# command: joint"));
  EXPECT_TRUE(has_header(csv, "# j = 10"));
}

TEST(Cli, ScalingSlopeNearMinusFour) {
  const auto r = invoke({"scaling", "--beta", "1.5707963267948966", "--out", "-", "--report", ""});
  ASSERT_EQ(r.code, 0) << r.err;
  const Csv csv = parse_csv(r.out);
  ASSERT_EQ(csv.rows.size(), 9u);
  const double slope = std::stod(csv.rows.front()[csv.column("slope_dp2")]);
  EXPECT_GE(slope, -4.5);
  EXPECT_LE(slope, -3.5);
}

TEST(Cli, BellBoundsFromBundledChshConfig) {
  TempDir dir;
  const auto r = invoke({"--config", config("chsh_spin_half.toml"), "--out-dir", dir.str()});
  ASSERT_EQ(r.code, 0) << r.err;
  const Csv csv = parse_csv(slurp(dir.path() / "bell_bounds.csv"));
  ASSERT_EQ(csv.rows.size(), 1u);
  const auto& row = csv.rows.front();

  const auto tensor = spinlimit::chsh_tensor(spinlimit::SpinNumber(1));
  const auto [lo, hi] = spinlimit::oracle::naive_bell_bounds(tensor.values(), 2);
  EXPECT_EQ(std::stod(row[csv.column("M1")]), lo);
  EXPECT_EQ(std::stod(row[csv.column("M2")]), hi);
  EXPECT_EQ(lo, -2.0);
  EXPECT_EQ(hi, 2.0);
  EXPECT_NEAR(std::stod(row[csv.column("quantum")]), -2.0 * std::numbers::sqrt2, 1e-9);
  EXPECT_EQ(row[csv.column("violates")], "1");
}

TEST(Cli, CommandLineOverridesConfig) {
  TempDir dir;
  const auto r = invoke({"--config", config("chsh_spin_half.toml"), "--out-dir", dir.str(),
                         "bell-bounds", "--preset", "ch-mirrored"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Csv csv = parse_csv(slurp(dir.path() / "bell_bounds.csv"));
  EXPECT_TRUE(has_header(csv, "# preset = ch-mirrored"));
  EXPECT_TRUE(has_header(csv, "# j = 1/2"));
  EXPECT_EQ(std::stod(csv.rows.front()[csv.column("M1")]), -1.0);
  EXPECT_EQ(std::stod(csv.rows.front()[csv.column("M2")]), 0.0);
}

TEST(Cli, NestedConfigSectionReachesSubcommand) {
  TempDir dir;
  const auto r = invoke({"--config", config("bell_scan.toml"), "--out-dir", dir.str(),
                         "bell-scan", "--samples", "50", "--report", ""});
  ASSERT_EQ(r.code, 0) << r.err;
  const Csv csv = parse_csv(slurp(dir.path() / "bell_scan.csv"));
  EXPECT_EQ(csv.rows.size(), 50u);
  EXPECT_TRUE(has_header(csv, "# model.q = 0.1"));
  EXPECT_TRUE(has_header(csv, "# model.cmax = 3"));
  EXPECT_TRUE(has_header(csv, "# samples = 50"));
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  TempDir dir;
  ::setenv("SPINLIMIT_OUTPUT_DIR", dir.str().c_str(), 1);
  const auto r = invoke({"dmatrix", "--j", "3/2", "--beta", "0.5", "--out", "sub/d.csv"});
  ::unsetenv("SPINLIMIT_OUTPUT_DIR");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir.path() / "sub" / "d.csv"));
}

TEST(Cli, HeaderRecordsResolvedDefaults) {
  const auto r = invoke({"wkb", "--j", "50", "--m1", "0", "--m2", "0", "--out", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Csv csv = parse_csv(r.out);
  EXPECT_TRUE(has_header(csv, "# command: wkb"));
  EXPECT_TRUE(has_header(csv, "# steps = 400"));
  bool found = false;
  for (const auto& h : csv.header_lines) {
    if (h.starts_with("# beta-max = ")) {
      found = true;
      EXPECT_EQ(std::stod(h.substr(13)), std::numbers::pi - 0.05);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  TempDir a, b;
  const std::vector<std::string> tail = {"bell-scan", "--j", "1", "--samples", "200",
                                         "--seed", "7", "--report", ""};
  std::vector<std::string> args_a = {"--out-dir", a.str()};
  std::vector<std::string> args_b = {"--out-dir", b.str()};
  args_a.insert(args_a.end(), tail.begin(), tail.end());
  args_b.insert(args_b.end(), tail.begin(), tail.end());
  ASSERT_EQ(invoke(args_a).code, 0);
  ASSERT_EQ(invoke(args_b).code, 0);
  const std::string first = slurp(a.path() / "bell_scan.csv");
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, slurp(b.path() / "bell_scan.csv"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"joint", "--j", "2", "--beta", "0.3", "--bogus"}).code,
            spinlimit::cli::kConfigError);
  EXPECT_EQ(invoke({"joint", "--j", "abc", "--beta", "0.3", "--out", "-"}).code,
            spinlimit::cli::kConfigError);
  EXPECT_EQ(invoke({"--config", "/nonexistent/spinlimit.toml"}).code,
            spinlimit::cli::kConfigError);
  EXPECT_EQ(invoke({"bell-bounds", "--j", "8", "--out", "-", "--report", ""}).code,
            spinlimit::cli::kCapacityError);
  EXPECT_EQ(invoke({"joint", "--j", "2", "--beta", "4.0", "--out", "-"}).code,
            spinlimit::cli::kDomainError);
  EXPECT_EQ(invoke({"wkb", "--j", "5/2", "--m1", "1/2", "--m2", "1/2", "--out", "-"}).code,
            spinlimit::cli::kDomainError);
}
