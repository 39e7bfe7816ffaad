// end-to-end checks of the command line tool: spawns the built binary,
// parses its csv/json output, and verifies exit codes

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef HYPKG_BIN
#error "HYPKG_BIN must point at the built cli binary"
#endif

#include <sys/wait.h>

namespace {

using json = nlohmann::ordered_json;

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args, const std::string& tag) {
  std::string path = "cli_capture_" + tag + ".tmp";
  std::string cmd = std::string(HYPKG_BIN) + " " + args + " > " + path + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  CliResult res;
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  res.out = ss.str();
  return res;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (!cells.empty()) rows.push_back(std::move(cells));
  }
  return rows;
}

const std::vector<std::string>* find_row(
    const std::vector<std::vector<std::string>>& rows, double first_col) {
  for (size_t i = 1; i < rows.size(); ++i)
    if (std::abs(std::stod(rows[i][0]) - first_col) < 1e-12) return &rows[i];
  return nullptr;
}

}  // namespace

TEST_CASE("spherical subcommand matches the three dimensional closed form") {
  CliResult res =
      run_cli("--n 3 spherical --lambda 2 --r-min 0 --r-max 2 --r-step 0.5", "sph");
  REQUIRE(res.code == 0);
  auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 6);  // header + 5 grid points
  REQUIRE(rows[0][0] == "r");
  REQUIRE(rows[0][1] == "re_phi");

  const auto* at1 = find_row(rows, 1.0);
  REQUIRE(at1 != nullptr);
  double expect = std::sin(2.0) / (2.0 * std::sinh(1.0));
  CHECK(std::stod((*at1)[1]) == Catch::Approx(expect).margin(1e-12));
  CHECK(std::abs(std::stod((*at1)[2])) < 1e-14);
  CHECK(std::stod((*at1)[3]) == Catch::Approx(1.0 / std::sinh(1.0)).margin(1e-12));
  // envelope column carries the shape (1 + r) e^{-rho r}
  CHECK(std::stod((*at1)[4]) == Catch::Approx(2.0 * std::exp(-1.0)).margin(1e-12));

  const auto* at0 = find_row(rows, 0.0);
  REQUIRE(at0 != nullptr);
  CHECK(std::stod((*at0)[1]) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("kernel subcommand row count and time reversal") {
  std::string base = "--n 3 kernel --part w0 --sigma 1 --r-min 0 --r-max 2 --r-step 0.5";
  CliResult fwd = run_cli(base + " --t 2", "kfwd");
  CliResult bwd = run_cli(base + " --t -2", "kbwd");
  REQUIRE(fwd.code == 0);
  REQUIRE(bwd.code == 0);
  auto rf = parse_csv(fwd.out);
  auto rb = parse_csv(bwd.out);
  REQUIRE(rf.size() == 6);
  REQUIRE(rb.size() == 6);
  for (size_t i = 1; i < rf.size(); ++i) {
    // reversing time conjugates the kernel
    CHECK(std::stod(rf[i][2]) == Catch::Approx(std::stod(rb[i][2])).margin(1e-13));
    CHECK(std::stod(rf[i][3]) == Catch::Approx(-std::stod(rb[i][3])).margin(1e-13));
  }
}

TEST_CASE("json output round trips byte identically") {
  CliResult res = run_cli("--format json exponents", "json");
  REQUIRE(res.code == 0);
  json doc = json::parse(res.out);
  CHECK(doc.dump(2) + "\n" == res.out);
  REQUIRE(doc["rows"].size() == 4);
  CHECK(doc["rows"][0]["n"] == 3);
  CHECK(doc["rows"][0]["gamma4"].get<double>() == Catch::Approx(5.0).margin(1e-14));
}

TEST_CASE("exponents --check-table exits cleanly") {
  CliResult res = run_cli("exponents --check-table", "chk");
  CHECK(res.code == 0);
}

TEST_CASE("regularity reports the conformal window branch") {
  CliResult res = run_cli("--n 3 regularity --gamma 2.5", "reg");
  REQUIRE(res.code == 0);
  json doc = json::parse(res.out);
  CHECK(doc["branch"] == "sigma2");
  CHECK(doc["sigma_min"].get<double>() == Catch::Approx(1.0 / 3.0).margin(1e-12));
  CHECK(doc["witness_feasible"] == true);
  CHECK(doc["witness"].contains("inv_p_tilde"));
}

TEST_CASE("regularity rejects powers outside the treated range") {
  CliResult res = run_cli("--n 3 regularity --gamma 6", "regbad");
  CHECK(res.code != 0);
}

TEST_CASE("figure datasets include the admissibility corner") {
  CliResult res = run_cli("figure \"admissibility n=4\"", "fig");
  REQUIRE(res.code == 0);
  auto rows = parse_csv(res.out);
  bool corner = false;
  for (size_t i = 1; i < rows.size(); ++i)
    if (std::abs(std::stod(rows[i][0]) - 0.5) < 1e-15 &&
        std::abs(std::stod(rows[i][1]) - 1.0 / 6.0) < 1e-15)
      corner = true;
  CHECK(corner);

  CliResult bad = run_cli("figure nonsense", "figbad");
  CHECK(bad.code != 0);
}

TEST_CASE("gwp figure is continuous and carries the marker rows") {
  CliResult res = run_cli("figure \"gwp n=3\"", "gwp");
  REQUIRE(res.code == 0);
  auto rows = parse_csv(res.out);
  REQUIRE(rows.size() > 240);
  int markers = 0;
  for (size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 4);
    if (!rows[i][3].empty()) ++markers;
    double s = std::stod(rows[i][1]);
    CHECK(s > -1.0);
    CHECK(s < 1.5);
  }
  CHECK(markers == 4);
}

TEST_CASE("decay subcommand emits the small time report as json") {
  CliResult res = run_cli("--n 3 decay --regime small --q 4 --format json", "dec");
  REQUIRE(res.code == 0);
  json doc = json::parse(res.out);
  CHECK(doc.dump(2) + "\n" == res.out);
  CHECK(doc["regime"] == "small");
  CHECK(doc["sigma_low"].get<double>() == Catch::Approx(1.0).margin(1e-14));
  CHECK(doc["sigma_high"]["re"].get<double>() == Catch::Approx(2.0).margin(1e-14));
  CHECK(doc["log_corrected"] == false);
  REQUIRE(doc["rows"].size() == 5);
  CHECK(doc["expected"]["sup"].get<double>() == Catch::Approx(-0.5).margin(1e-14));
  CHECK(doc["slopes"].contains("combined"));
  CHECK(doc["pass"]["sup"].is_boolean());
}

TEST_CASE("seed check runs the full acceptance harness") {
  CliResult res = run_cli("--seed-check", "seed");
  CHECK(res.out.find("/13 criteria passed") != std::string::npos);
  int lines = 0;
  std::istringstream is(res.out);
  std::string line;
  while (std::getline(is, line))
    if (line.rfind("[PASS]", 0) == 0 || line.rfind("[FAIL]", 0) == 0) ++lines;
  CHECK(lines == 13);
}
