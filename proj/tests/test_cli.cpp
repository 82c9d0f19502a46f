// Command-line driver: subcommand outputs (JSON, CSV, SVG, tables), exit
// codes, frequency-reduction notices, warnings, and byte-level determinism of
// the band sweep under different thread budgets.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "amo/cli.hpp"
#include "amo/io.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace amo;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int rc = 0;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.rc = cli_run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path tmp_file(const std::string& name) {
  return fs::temp_directory_path() / name;
}

}  // namespace

// ---- spectrum ----------------------------------------------------------------

TEST_CASE("spectrum_emits_a_json_report_and_a_reduction_notice") {
  const RunResult r = run({"spectrum", "--p0", "2", "--q0", "4"});
  CHECK(r.rc == 0);
  CHECK(r.err.find("reduced 2/4 to 1/2") != std::string::npos);

  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("p0").get<int>() == 1);
  CHECK(j.at("q0").get<int>() == 2);
  REQUIRE(j.at("bands").size() == 1);  // the two half-flux bands touch at zero
  const double lo = j.at("bands")[0][0].get<double>();
  const double hi = j.at("bands")[0][1].get<double>();
  CHECK(lo == doctest::Approx(-2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(hi == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(j.at("measure").get<double>() == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(j.at("lower_bound").get<double>() < j.at("measure").get<double>());
  CHECK(j.at("measure").get<double>() < j.at("upper_bound").get<double>());
  CHECK(j.at("thouless_ratio").get<double>() ==
        doctest::Approx(2.0 * j.at("measure").get<double>()).epsilon(1e-15));
  const nlohmann::json& flags = j.at("flags");
  REQUIRE(flags.size() == 5);
  for (const char* name : {"bounds_hold", "representations_agree", "nesting_holds",
                           "per_theta_bound_holds", "shift_pattern_holds"}) {
    CHECK(flags.at(name).get<bool>());
  }
}

TEST_CASE("spectrum_chiral_band_list_matches_the_standard_one") {
  const RunResult std_r = run({"spectrum", "--p0", "1", "--q0", "5", "--rep", "std"});
  const RunResult chi_r = run({"spectrum", "--p0", "1", "--q0", "5", "--rep", "chiral"});
  REQUIRE(std_r.rc == 0);
  REQUIRE(chi_r.rc == 0);
  CHECK(std_r.err.empty());
  const nlohmann::json a = nlohmann::json::parse(std_r.out);
  const nlohmann::json b = nlohmann::json::parse(chi_r.out);
  REQUIRE(a.at("bands").size() == 5);
  REQUIRE(b.at("bands").size() == 5);
  for (size_t i = 0; i < 5; ++i) {
    for (int side = 0; side < 2; ++side) {
      CHECK(a.at("bands")[i][side].get<double>() ==
            doctest::Approx(b.at("bands")[i][side].get<double>()).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("spectrum_csv_format_lists_one_band_per_row") {
  const RunResult r = run({"spectrum", "--p0", "1", "--q0", "5", "--format", "csv"});
  REQUIRE(r.rc == 0);
  std::istringstream lines(r.out);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "p0,q0,band_index,e_lo,e_hi");
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.rfind("1,5," + std::to_string(rows) + ",", 0) == 0);
    ++rows;
  }
  CHECK(rows == 5);
}

// ---- verify ------------------------------------------------------------------

TEST_CASE("verify_prints_a_suite_table_and_exits_zero_on_success") {
  const RunResult r =
      run({"verify", "--suite", "bounds", "--qmax", "6", "--seed", "7"});
  CHECK(r.rc == 0);
  CHECK(r.out.find("suite") != std::string::npos);
  CHECK(r.out.find("worst_residual") != std::string::npos);
  CHECK(r.out.find("bounds") != std::string::npos);
  CHECK(r.out.find("n/a") != std::string::npos);
}

TEST_CASE("verify_rejects_unknown_suites") {
  const RunResult r = run({"verify", "--suite", "bogus"});
  CHECK(r.rc == 2);
  CHECK(r.err.find("unknown verify suite") != std::string::npos);
}

// ---- thouless ----------------------------------------------------------------

TEST_CASE("thouless_reports_ratios_and_skips_non_coprime_denominators") {
  const RunResult r = run({"thouless", "--p0", "2", "--q0-list", "4,5,6,9"});
  CHECK(r.rc == 0);
  CHECK(r.err.find("warning: q0=4: not coprime with p0=2; skipped") != std::string::npos);
  CHECK(r.err.find("warning: q0=6: not coprime with p0=2; skipped") != std::string::npos);

  std::istringstream lines(r.out);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line.rfind("thouless_constant,9.32994", 0) == 0);
  REQUIRE(std::getline(lines, line));
  CHECK(line == "q0,measure,ratio,deviation");
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].rfind("5,", 0) == 0);
  CHECK(rows[1].rfind("9,", 0) == 0);
}

TEST_CASE("thouless_rejects_malformed_denominator_lists") {
  const RunResult r = run({"thouless", "--p0", "1", "--q0-list", "5,x,7"});
  CHECK(r.rc == 2);
  CHECK(r.err.find("bad integer list entry") != std::string::npos);
}

// ---- butterfly ----------------------------------------------------------------

TEST_CASE("butterfly_writes_csv_and_svg_that_match_the_row_helper") {
  const fs::path csv_path = tmp_file("amo_cli_butterfly.csv");
  const fs::path svg_path = tmp_file("amo_cli_butterfly.svg");
  const RunResult r = run({"butterfly", "--qmax", "6", "--out", csv_path.string(),
                           "--svg", svg_path.string()});
  REQUIRE(r.rc == 0);
  CHECK(r.err.find("wrote") != std::string::npos);

  const std::string csv = slurp(csv_path);
  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "p0,q0,band_index,e_lo,e_hi");

  const std::vector<ButterflyRow> rows = butterfly_rows(6);
  size_t i = 0;
  while (std::getline(lines, line)) {
    REQUIRE(i < rows.size());
    const std::string want = std::to_string(rows[i].p0) + "," +
                             std::to_string(rows[i].q0) + "," +
                             std::to_string(rows[i].band_index) + "," +
                             fmt17(rows[i].e_lo) + "," + fmt17(rows[i].e_hi);
    CHECK(line == want);
    ++i;
  }
  CHECK(i == rows.size());

  const std::string svg = slurp(svg_path);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<rect") != std::string::npos);
  CHECK(svg.find("<line") != std::string::npos);
  CHECK(svg.rfind("</svg>\n") == svg.size() - 7);

  fs::remove(csv_path);
  fs::remove(svg_path);
}

TEST_CASE("butterfly_bytes_are_identical_across_runs_and_thread_budgets") {
  const fs::path a = tmp_file("amo_cli_det_a.csv");
  const fs::path b = tmp_file("amo_cli_det_b.csv");
  REQUIRE(run({"butterfly", "--qmax", "8", "--out", a.string()}).rc == 0);
  REQUIRE(run({"butterfly", "--qmax", "8", "--out", b.string()}).rc == 0);
  const std::string bytes_a = slurp(a);
  CHECK(bytes_a == slurp(b));
  CHECK(!bytes_a.empty());

  setenv("AMO_THREADS", "3", 1);
  const fs::path c = tmp_file("amo_cli_det_c.csv");
  const int rc = run({"butterfly", "--qmax", "8", "--out", c.string()}).rc;
  unsetenv("AMO_THREADS");
  REQUIRE(rc == 0);
  CHECK(bytes_a == slurp(c));

  fs::remove(a);
  fs::remove(b);
  fs::remove(c);
}

TEST_CASE("butterfly_reports_unwritable_output_paths") {
  const RunResult r =
      run({"butterfly", "--qmax", "3", "--out", "/nonexistent_dir/x.csv"});
  CHECK(r.rc == 2);
  CHECK(r.err.find("cannot open") != std::string::npos);
}

// ---- parsing and exit codes ------------------------------------------------------

TEST_CASE("usage_errors_exit_with_code_two") {
  CHECK(run({}).rc == 2);                                    // missing subcommand
  CHECK(run({"spectrum", "--p0", "1"}).rc == 2);             // missing --q0
  CHECK(run({"spectrum", "--p0", "1", "--q0", "0"}).rc == 2);  // q0 not positive
  CHECK(run({"spectrum", "--p0", "1", "--q0", "3", "--rep", "dense"}).rc == 2);
  CHECK(run({"butterfly", "--qmax", "4"}).rc == 2);          // missing --out
  CHECK(run({"nonsense"}).rc == 2);
}

TEST_CASE("help_exits_zero_and_prints_subcommands") {
  const RunResult r = run({"--help"});
  CHECK(r.rc == 0);
  CHECK(r.out.find("spectrum") != std::string::npos);
  CHECK(r.out.find("butterfly") != std::string::npos);
  CHECK(r.out.find("verify") != std::string::npos);
  CHECK(r.out.find("thouless") != std::string::npos);
}
