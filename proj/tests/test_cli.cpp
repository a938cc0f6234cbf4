#include <catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include "attoclock/dataset.hpp"
#include "attoclock/fitting.hpp"
#include "attoclock/model.hpp"
#include "attoclock/units.hpp"
#include "cli_harness.hpp"
#include "xml_check.hpp"

using namespace attoclock;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace {

std::vector<std::vector<double>> rows_of(const std::string& csv) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'f') continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

const std::vector<std::string> kHeGrid{"--fmin", "0.06", "--fmax", "0.12", "--n", "2", "--grid", "linear"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_CASE("model table for helium", "[cli]") {
  const auto r = run_cli(with({"model"}, kHeGrid));
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.rfind("# time_unit: au\nf_au,delta_z,d_b,tau_a,tau_dion,tau_db,tau_td,tau_ti,xi,lambda\n", 0) == 0);
  const auto rows = rows_of(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == 0.06);
  CHECK_THAT(rows[0][1], WithinRel(0.63639610306789277, 1e-12));
  CHECK_THAT(rows[0][2], WithinRel(10.606601717798213, 1e-12));
  CHECK_THAT(rows[0][4], WithinRel(1.1111111111111111, 1e-12));
  CHECK_THAT(rows[0][5], WithinRel(0.78567420131838614, 1e-12));
  CHECK_THAT(rows[0][6], WithinRel(1.8967853124294972, 1e-12));
  CHECK_THAT(rows[0][7], WithinRel(0.32543690979272497, 1e-12));
  CHECK(rows[1][0] == 0.12);
  CHECK(rows[1][1] == 0.0);
  CHECK(rows[1][5] == 0.0);
  CHECK(rows[1][6] == rows[1][3]);
  CHECK(rows[1][7] == rows[1][3]);

  const auto as = run_cli(with({"model", "--units", "as"}, kHeGrid));
  REQUIRE(as.code == cli::kExitOk);
  CHECK(as.out.rfind("# time_unit: as\n", 0) == 0);
  const auto as_rows = rows_of(as.out);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c : {0u, 1u, 2u, 8u, 9u}) CHECK(as_rows[i][c] == rows[i][c]);
    for (std::size_t c = 3; c <= 7; ++c) {
      CHECK_THAT(as_rows[i][c], WithinRel(rows[i][c] * units::kAttosecondsPerAtomicTime, 1e-15));
    }
  }
  CHECK_THAT(as_rows[0][3], WithinRel(13.43825, 1e-6));
}

TEST_CASE("model rejects fields above the atomic field", "[cli]") {
  const auto r = run_cli({"model", "--fmin", "0.06", "--fmax", "0.2", "--n", "2"});
  CHECK(r.code == cli::kExitUserError);
  CHECK_THAT(r.err, ContainsSubstring("exceeds atomic field strength 0.12"));
  CHECK(r.out.empty());

  CHECK(run_cli({"model", "--ip", "-1"}).code == cli::kExitUserError);
  CHECK(run_cli({"model", "--fmin", "0.1", "--fmax", "0.05"}).code == cli::kExitUserError);
  CHECK(run_cli({"model", "--grid", "cubic"}).code == cli::kExitUserError);
  CHECK(run_cli({"model", "--bogus"}).code == cli::kExitUserError);
  CHECK(run_cli({}).code == cli::kExitUserError);
  CHECK(run_cli({"--help"}).code == cli::kExitOk);
}

TEST_CASE("fit errors and exit codes", "[cli]") {
  TempDir tmp;
  spit(tmp / "one.csv", "f_au,delay\n0.05,1.0\n");
  const auto one = run_cli({"fit", "--in", tmp / "one.csv"});
  CHECK(one.code == cli::kExitUserError);
  CHECK_FALSE(one.err.empty());

  spit(tmp / "bad.csv", "f_au,delay\n0.05,1.0\n0.06,oops\n");
  const auto bad = run_cli({"fit", "--in", tmp / "bad.csv"});
  CHECK(bad.code == cli::kExitUserError);
  CHECK_THAT(bad.err, ContainsSubstring("line 3"));

  CHECK(run_cli({"fit", "--in", tmp / "missing.csv"}).code == cli::kExitIoError);
  CHECK(run_cli({"fit"}).code == cli::kExitUserError);
  CHECK(run_cli({"fit", "--in", tmp / "bad.csv", "--config", tmp / "nope.json"}).code == cli::kExitIoError);

  spit(tmp / "two.csv", "f_au,delay\n0.05,2.0\n0.1,1.0\n");
  const auto ok = run_cli({"fit", "--in", tmp / "two.csv", "--basis", "inv_f"});
  REQUIRE(ok.code == cli::kExitOk);
  const auto parsed = parse_fit_json(ok.out);
  CHECK(parsed.basis == FitBasis::inv_f);
  CHECK_THAT(parsed.a, WithinRel(0.1, 1e-12));

  const auto unwritable = run_cli({"fit", "--in", tmp / "two.csv", "--out", tmp / "no/such/dir/fit.json"});
  CHECK(unwritable.code == cli::kExitIoError);
}

TEST_CASE("synth is deterministic per seed", "[cli]") {
  const auto base = with({"synth", "--model", "nonadiabatic", "--noise", "0.01", "--n", "12"}, {});
  const auto a = run_cli(with(base, {"--seed", "7"}));
  const auto b = run_cli(with(base, {"--seed", "7"}));
  const auto c = run_cli(with(base, {"--seed", "8"}));
  REQUIRE(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  const auto ds = parse_dataset(a.out);
  CHECK(ds.samples.size() == 12);
  CHECK(ds.calibration == Calibration::synthetic);
  CHECK(ds.time_unit == TimeUnit::atomic);
  CHECK(run_cli(with(base, {"--model", "nope"})).code == cli::kExitUserError);
}

TEST_CASE("config file supplies defaults and flags override it", "[cli]") {
  TempDir tmp;
  spit(tmp / "cfg.json", R"({"fmin": 0.06, "fmax": 0.12, "n": 2, "grid": "linear", "units": "as"})");
  const auto from_file = run_cli({"model", "--config", tmp / "cfg.json"});
  REQUIRE(from_file.code == cli::kExitOk);
  CHECK(from_file.out.rfind("# time_unit: as\n", 0) == 0);
  CHECK(rows_of(from_file.out).size() == 2);

  const auto overridden = run_cli({"model", "--config", tmp / "cfg.json", "--units", "au", "--n", "3"});
  REQUIRE(overridden.code == cli::kExitOk);
  CHECK(overridden.out.rfind("# time_unit: au\n", 0) == 0);
  const auto rows = rows_of(overridden.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][0] == 0.09);

  spit(tmp / "unknown.json", R"({"colour": "red"})");
  CHECK(run_cli({"model", "--config", tmp / "unknown.json"}).code == cli::kExitUserError);
  spit(tmp / "broken.json", "{");
  CHECK(run_cli({"model", "--config", tmp / "broken.json"}).code == cli::kExitUserError);
}

TEST_CASE("pipeline from synthetic data to a report", "[cli]") {
  TempDir tmp;
  const std::vector<std::string> grid{"--fmin", "0.04", "--fmax", "0.115", "--n", "15", "--grid", "linear"};
  REQUIRE(run_cli(with({"synth", "--model", "adiabatic", "--out", tmp / "ad.csv", "--units", "as"}, grid)).code == 0);
  REQUIRE(run_cli(with({"synth", "--model", "nonadiabatic", "--out", tmp / "nad.csv", "--units", "as"}, grid))
              .code == 0);
  REQUIRE(run_cli(with({"fit", "--in", tmp / "ad.csv", "--out", tmp / "ad.json"}, {})).code == 0);
  REQUIRE(run_cli(with({"fit", "--in", tmp / "nad.csv", "--out", tmp / "nad.json"}, {})).code == 0);

  const std::vector<std::string> eval{"--fmin", "0.04", "--fmax", "0.115", "--n", "20"};
  const auto sub = run_cli(
      with({"subtract", "--minuend", tmp / "ad.json", "--subtrahend", tmp / "nad.json", "--out", tmp / "bar.csv"},
           eval));
  REQUIRE(sub.code == 0);
  const auto barrier = read_curve(tmp / "bar.csv");
  REQUIRE(barrier.f_grid.size() == 20);
  CHECK(barrier.time_unit == TimeUnit::attosecond);
  const AtomicSystem he = helium();
  for (std::size_t i = 0; i < barrier.f_grid.size(); ++i) {
    const double expect = barrier_delay(he, barrier.f_grid[i]) * units::kAttosecondsPerAtomicTime;
    CHECK(barrier.values[i] == Catch::Approx(expect).epsilon(0.6));
    CHECK_FALSE(barrier.extrapolated[i]);
  }

  const auto cmp = run_cli(with({"compare", "--adiabatic", tmp / "ad.csv", "--nonadiabatic", tmp / "nad.csv", "--lc",
                                 tmp / "ad.csv", "--out", tmp / "report", "--z-list", "1,1.344,1.6875"},
                                eval));
  REQUIRE(cmp.code == 0);
  CHECK_THAT(cmp.out, ContainsSubstring("Z_eff=1.6875 rmse"));
  for (const char* name : {"report.json", "manifest.json", "barrier_exp.csv", "lc.csv", "fit_adiabatic.json",
                           "fit_nonadiabatic.json"}) {
    CHECK(std::filesystem::exists(tmp.path() / "report" / name));
  }
  const auto report = nlohmann::json::parse(slurp(tmp.path() / "report" / "report.json"));
  CHECK(report.contains("metrics"));
  const auto manifest = nlohmann::json::parse(slurp(tmp.path() / "report" / "manifest.json"));
  CHECK(manifest.size() >= 5);

  CHECK(run_cli(with({"compare", "--adiabatic", tmp / "ad.csv", "--nonadiabatic", tmp / "nad.csv"}, eval)).code ==
        cli::kExitUserError);

  const auto svg = run_cli({"plot", (tmp.path() / "report" / "barrier_exp.csv").string(),
                            (tmp.path() / "report" / "lc.csv").string(), "--label", "barrier", "--label", "LC",
                            "--title", "helium"});
  REQUIRE(svg.code == 0);
  CHECK(well_formed_xml(svg.out));
  CHECK_THAT(svg.out, ContainsSubstring(">barrier<"));
  CHECK_THAT(svg.out, ContainsSubstring(">LC<"));
}

TEST_CASE("subtract rejects mismatched curves", "[cli]") {
  TempDir tmp;
  spit(tmp / "a.csv", "# time_unit: au\nf_au,value,extrapolated\n0.05,1,0\n0.1,2,0\n");
  spit(tmp / "b.csv", "# time_unit: au\nf_au,value,extrapolated\n0.05,1,0\n0.11,2,0\n");
  spit(tmp / "c.csv", "# time_unit: as\nf_au,value,extrapolated\n0.05,1,0\n0.1,2,0\n");
  CHECK(run_cli({"subtract", "--minuend", tmp / "a.csv", "--subtrahend", tmp / "b.csv"}).code ==
        cli::kExitUserError);
  CHECK(run_cli({"subtract", "--minuend", tmp / "a.csv", "--subtrahend", tmp / "c.csv"}).code ==
        cli::kExitUserError);
  const auto ok = run_cli({"subtract", "--minuend", tmp / "a.csv", "--subtrahend", tmp / "c.csv", "--units", "as"});
  REQUIRE(ok.code == 0);
  const auto diff = parse_curve(ok.out);
  CHECK_THAT(diff.values[0], WithinRel(units::kAttosecondsPerAtomicTime - 1.0, 1e-14));
}

TEST_CASE("plot of a model table", "[cli]") {
  TempDir tmp;
  REQUIRE(run_cli(with({"model", "--out", tmp / "he.csv"}, {"--n", "50"})).code == 0);
  const auto a = run_cli({"plot", tmp / "he.csv", "--columns", "tau_td,tau_ti"});
  const auto b = run_cli({"plot", tmp / "he.csv", "--columns", "tau_td,tau_ti"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(well_formed_xml(a.out));
  CHECK(count_of(a.out, "<polyline") == 2);
  CHECK_THAT(a.out, ContainsSubstring(">delay (au)<"));
  CHECK(run_cli({"plot"}).code == cli::kExitUserError);
  CHECK(run_cli({"plot", tmp / "he.csv", "--columns", "nope"}).code == cli::kExitUserError);
  CHECK(run_cli({"plot", tmp / "absent.csv"}).code == cli::kExitIoError);
}
