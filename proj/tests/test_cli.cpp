#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(UNRUH_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("unruh_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

const std::string kHeader = "u,delta,k_cut,i_norm,i_err,v_bar,v_err,snr_gain,v_c,note";

}  // namespace

TEST_CASE("point: far-field limit") {
  const auto r = run("point --u -100 --delta 10 --kcut 0.1");
  REQUIRE(r.status == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["i_norm"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(doc["v_bar"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(doc["v_c"].get<double>()) < 2e-3);
  CHECK(doc["inputs"]["u"] == -100.0);
  CHECK(doc["diagnostics"]["evaluations"].get<int>() > 0);
  for (const char* key : {"i_norm", "x_bar", "v_bar", "snr_gain", "v_c", "i_err", "v_err"}) CHECK(doc.contains(key));
}

TEST_CASE("point: suppression point variance near one") {
  const auto r = run("point --u 1.5707963 --delta 10 --kcut 0.001");
  REQUIRE(r.status == 0);
  CHECK(json::parse(r.out)["v_bar"].get<double>() == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("exit-code contract") {
  auto r = run("point --u 0 --delta 0.5 --kcut 0.1");
  CHECK(r.status == 2);
  auto doc = json::parse(r.out);
  CHECK(doc["error"]["code"] == "usage_error");
  CHECK(doc["error"]["status"] == 8);

  CHECK(run("point --bogus 3").status == 2);
  CHECK(run("").status == 2);
  CHECK(run("sweep --steps 1").status == 2);
  CHECK(run("sweep --axis kcut --scale log --min 0 --max 1").status == 2);
  CHECK(run("figure --id 7").status == 2);
  CHECK(run("optimize").status == 2);
  CHECK(run("optimize --metric bogus").status == 2);

  r = run("point --u 400 --delta 1 --kcut 0.1");
  CHECK(r.status == 1);
  CHECK(json::parse(r.out)["error"]["code"] == "degenerate_channel");

  r = run("sweep --steps 3 --out /nonexistent/dir/out.csv");
  CHECK(r.status == 1);
  CHECK(json::parse(r.out)["error"]["code"] == "io_error");
}

TEST_CASE("sweep: schema, row count, order and determinism") {
  const std::string args = "sweep --axis u --min -30 --max 10 --steps 41 --kcut 0.1 --delta 10";
  const auto a = run(args);
  REQUIRE(a.status == 0);
  const auto rows = lines(a.out);
  REQUIRE(rows.size() == 42);
  CHECK(rows[0] == kHeader);
  CHECK(rows[1].rfind("-30,10,0.10000000000000001,", 0) == 0);
  CHECK(rows.back().rfind("10,10,", 0) == 0);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].back() == ',');  // empty note

  const auto b = run(args);
  CHECK(a.out == b.out);

  SUBCASE("failed rows carry nan and a note") {
    const auto r = run("sweep --axis u --min -10 --max 5000 --steps 2 --delta 1");
    REQUIRE(r.status == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 3);
    CHECK(l[2].find("nan") != std::string::npos);
    CHECK(l[2].back() != ',');
  }
  SUBCASE("json format") {
    const auto r = run("sweep --axis kcut --min 0.01 --max 1 --steps 5 --scale log --format json --u 3.14159265");
    REQUIRE(r.status == 0);
    const auto doc = json::parse(r.out);
    REQUIRE(doc["rows"].size() == 5);
    CHECK(doc["rows"][0]["k_cut"] == 0.01);
    CHECK(doc["rows"][4]["k_cut"] == 1.0);
  }
}

TEST_CASE("sweep: unimodal SNR at u = pi") {
  const auto r = run("sweep --axis kcut --min 0.01 --max 1 --steps 50 --scale log --u 3.14159265 --delta 10");
  REQUIRE(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 51);
  std::vector<double> k, snr;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> cols;
    std::istringstream in(rows[i]);
    for (std::string c; std::getline(in, c, ',');) cols.push_back(c);
    k.push_back(std::stod(cols[2]));
    snr.push_back(std::stod(cols[7]));
  }
  std::size_t peak = 0;
  for (std::size_t i = 1; i < snr.size(); ++i)
    if (snr[i] > snr[peak]) peak = i;
  CHECK(k[peak] >= 0.1);
  CHECK(k[peak] <= 0.2);
  for (std::size_t i = 1; i <= peak; ++i) CHECK(snr[i] > snr[i - 1]);
  for (std::size_t i = peak + 1; i < snr.size(); ++i) CHECK(snr[i] < snr[i - 1]);
}

TEST_CASE("optimize") {
  auto r = run("optimize --u 3.14159265 --delta 10 --metric snr");
  REQUIRE(r.status == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["k_opt"].get<double>() >= 0.1);
  CHECK(doc["k_opt"].get<double>() <= 0.2);
  CHECK(doc["converged"] == true);
  CHECK(doc["status"] == "converged");
  CHECK(doc.contains("unruh_ratio"));

  r = run("optimize --u 0 --delta 10 --metric cv");
  REQUIRE(r.status == 0);
  doc = json::parse(r.out);
  CHECK(doc["k_opt"].get<double>() >= 0.1);
  CHECK(doc["k_opt"].get<double>() <= 0.4);
  CHECK(!doc.contains("unruh_ratio"));

  r = run("optimize --u -100 --delta 10 --metric snr --scan-points 10");
  REQUIRE(r.status == 0);
  doc = json::parse(r.out);
  CHECK(doc["converged"] == false);
  CHECK(doc["status"] == "plateau");
  CHECK(doc["note"].get<std::string>().find("plateau") != std::string::npos);
}

TEST_CASE("run-spec file with flag override") {
  const fs::path dir = scratch("spec");
  fs::create_directories(dir);
  const fs::path spec = dir / "run.json";
  std::ofstream(spec) << R"({"u": -100, "delta": 10, "k_cut": 0.1, "sweep_axis": "u", "axis_min": -100,
                           "axis_max": -90, "axis_steps": 3})";
  auto r = run("sweep --spec " + spec.string());
  REQUIRE(r.status == 0);
  CHECK(lines(r.out).size() == 4);
  r = run("sweep --spec " + spec.string() + " --steps 5");
  REQUIRE(r.status == 0);
  CHECK(lines(r.out).size() == 6);

  std::ofstream(dir / "bad.json") << R"({"u": 1, "not_a_key": 2})";
  CHECK(run("point --spec " + (dir / "bad.json").string()).status == 2);
  std::ofstream(dir / "broken.json") << "{";
  CHECK(run("point --spec " + (dir / "broken.json").string()).status == 2);
  CHECK(run("point --spec " + (dir / "missing.json").string()).status == 2);
  fs::remove_all(dir);
}

TEST_CASE("output file and thread cap do not change bytes") {
  const fs::path dir = scratch("out");
  fs::create_directories(dir);
  const std::string args = "sweep --axis kcut --min 0.01 --max 1 --steps 7 --scale log --u 1";
  REQUIRE(run(args + " --out " + (dir / "a.csv").string()).status == 0);
  std::ifstream in(dir / "a.csv");
  const std::string file((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(file == run(args).out);
  CHECK(file == run(args, "UNRUH_THREADS=1").out);
  CHECK(file == run(args, "UNRUH_THREADS=3").out);
  fs::remove_all(dir);
}

TEST_CASE("oracle report") {
  const auto r = run("oracle --u 1.5707963267948966 --delta 10 --kcut 0.01");
  REQUIRE(r.status == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["pass"] == true);
  CHECK(doc["deviation"]["reduced_vs_triple_i_norm"].get<double>() <= 1e-4);
  CHECK(doc["exact"].size() == 1);
  CHECK(doc["threshold"] == 1e-4);

  const auto coarse = run("oracle --grid-s 41 --grid-d 201");
  CHECK(coarse.status == 1);
  CHECK(json::parse(coarse.out)["error"]["code"] == "resolution_error");
}

TEST_CASE("figure writes one CSV per curve") {
  const fs::path dir = scratch("fig");
  const auto r = run("figure --id 4 --out " + dir.string());
  REQUIRE(r.status == 0);
  const auto doc = json::parse(r.out);
  REQUIRE(doc["files"].size() == 3);
  for (int c = 1; c <= 3; ++c) {
    const fs::path f = dir / ("fig4_curve" + std::to_string(c) + ".csv");
    REQUIRE(fs::exists(f));
    std::ifstream in(f);
    std::string header;
    std::getline(in, header);
    CHECK(header == kHeader);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) ++n;
    CHECK(n == 60);
  }
  fs::remove_all(dir);
}
