#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cli.hpp"
#include "doctest.h"

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

std::string sys(const std::string& name) { return (fs::path(PDREGION_DATA_DIR) / "systems" / (name + ".json")).string(); }

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = pdregion::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "pdregion_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("check exit codes follow the verdict") {
    Result r = run({"check", sys("g3"), "--sigma", "0.3333333", "--freq", "5", "--mode", "siso"});
    CHECK(r.code == 0);
    CHECK(r.json()["holds"] == true);
    CHECK(r.json()["result"]["margin"].get<double>() > 0.0);

    r = run({"check", sys("g2"), "--sigma", "0", "--freq", "1"});
    CHECK(r.code == 1);
    CHECK(r.json()["holds"] == false);

    r = run({"check", sys("g4"), "--sigma-matrix", "[[0.333,0],[0,0.333]]", "--freq", "5.0119", "--mode",
             "mimo-estimated"});
    CHECK(r.code == 1);

    r = run({"check", sys("g4"), "--sigma-matrix", "[[0.333,0],[0,0.333]]", "--freq", "1.9953", "--mode",
             "mimo-estimated"});
    CHECK(r.code == 0);
    CHECK(run({"check", sys("g4"), "--sigma", "0.3333", "--freq", "0", "--mode", "mimo-exact"}).code == 0);
    CHECK(run({"check", sys("g1"), "--sigma", "0.4", "--freq", "0", "--mode", "if"}).code == 0);
    CHECK(run({"check", sys("g3"), "--sigma", "0.4", "--freq", "3", "--mode", "generalized", "--r", "s"}).code == 0);
  }

  TEST_CASE("band table reproduces the grid-point convention") {
    const Result r = run({"band", sys("g3"), "--sigma-list", "-0.5,-0.2,0,0.2,0.5", "--ppd", "100",
                          "--report-grid-point", "--format", "table"});
    CHECK(r.code == 0);
    for (const char* v : {"13.1826", "10.9648", "9.3325", "7.0795", "0.0000"}) {
      CHECK(r.out.find(v) != std::string::npos);
    }
    const Result j = run({"band", sys("g3"), "--sigma", "0.3333333333333333"});
    const auto iv = j.json()["bands"][0]["band"]["intervals"];
    REQUIRE(iv.size() == 1);
    CHECK(iv[0]["hi"]["w"].get<double>() == doctest::Approx(5.27046).epsilon(1e-6));
    CHECK(iv[0]["hi"]["provenance"] == "refined");
    CHECK(run({"band", sys("g2"), "--sigma", "0"}).code == 1);
  }

  TEST_CASE("passivize, robust and waterbed") {
    Result r = run({"passivize", sys("g1"), "--sigma", "0.3333333"});
    CHECK(r.code == 0);
    CHECK(r.json()["report"]["verdict"] == "passive");
    CHECK(run({"passivize", sys("g1"), "--sigma", "1"}).code == 1);
    CHECK(run({"passivize", sys("g3"), "--sigma", "0.4", "--mode", "generalized"}).code == 0);
    CHECK(run({"passivize", sys("g3"), "--sigma", "0.6", "--mode", "generalized"}).code == 1);

    r = run({"waterbed", sys("g1"), "--a", "1"});
    CHECK(r.code == 0);
    CHECK(r.json()["identity"]["lhs"].get<double>() == doctest::Approx(0.5));
    CHECK(r.json()["identity"]["rhs_quadrature"].get<double>() == doctest::Approx(0.5).epsilon(1e-6));
    r = run({"waterbed", sys("g1"), "--a", "1", "--sigma", "0.4", "--wc", "10"});
    CHECK(r.code == 0);
    CHECK(r.json()["bound"]["satisfied"] == true);

    r = run({"robust", sys("g1"), "--sigma", "0.3333333", "--wmax", "10", "--delta", "0.01"});
    CHECK(r.code == 0);
    CHECK(r.json()["result"]["d_min"].get<double>() > 0.01);
    CHECK(run({"robust", sys("g1"), "--sigma", "1"}).code == 1);
  }

  TEST_CASE("numerical-range command") {
    Result r = run({"range", sys("g4"), "--sigma", "0.3333333", "--freq", "1.9953"});
    CHECK(r.code == 0);
    r = run({"range", sys("g4"), "--sigma", "0.3333333", "--freq", "1.9953,5.0119"});
    CHECK(r.code == 1);
  }

  TEST_CASE("plot formats") {
    Result r = run({"plot", sys("g3"), "--kind", "nyquist", "--sigma-list", "0.2,0.5", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("name,w,re,im,extra\n", 0) == 0);
    r = run({"plot", sys("g3"), "--kind", "nichols", "--sigma", "0.1", "--format", "svg"});
    CHECK(r.code == 0);
    CHECK(r.out.find("<svg") != std::string::npos);
    CHECK(r.out.find("</svg>") != std::string::npos);
    r = run({"plot", sys("g4"), "--kind", "range", "--sigma", "0.3333333", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.json().contains("curves"));
    for (const char* kind : {"band", "generalized", "derivative-output"}) {
      CHECK(run({"plot", sys("g3"), "--kind", kind, "--sigma", "0.1", "--format", "csv"}).code == 0);
    }
  }

  TEST_CASE("identical invocations produce identical bytes") {
    const std::vector<std::vector<std::string>> cmds{
        {"plot", sys("g3"), "--kind", "nyquist", "--sigma-list", "0.2,0.5", "--format", "csv"},
        {"plot", sys("g3"), "--kind", "nyquist", "--sigma-list", "0.2,0.5", "--format", "svg"},
        {"plot", sys("g4"), "--kind", "range", "--sigma", "0.3333333", "--format", "json"},
        {"band", sys("g3"), "--sigma-list", "-0.5,0,0.5"},
        {"passivize", sys("g1"), "--sigma", "0.3333333"},
    };
    for (const auto& c : cmds) {
      const Result a = run(c), b = run(c);
      CHECK(a.code == b.code);
      CHECK(a.out == b.out);
    }
  }

  TEST_CASE("precision and output file") {
    const Result six = run({"check", sys("g3"), "--sigma", "0.3333333333333333", "--freq", "5"});
    const Result full = run({"--precision", "17", "check", sys("g3"), "--sigma", "0.3333333333333333", "--freq", "5"});
    CHECK(six.json()["sigma"].get<double>() == 0.333333);
    CHECK(full.json()["sigma"].get<double>() == 1.0 / 3.0);

    const fs::path path = scratch("check.json");
    const Result r = run({"--out", path.string(), "check", sys("g3"), "--sigma", "0.3333333", "--freq", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    CHECK(nlohmann::json::parse(in)["holds"] == true);
  }

  TEST_CASE("index matrix from a file") {
    const fs::path path = scratch("sigma.json");
    std::ofstream(path) << "[[0.333, 0], [0, 0.333]]";
    CHECK(run({"check", sys("g4"), "--sigma-matrix", path.string(), "--freq", "5.0119", "--mode", "mimo-estimated"})
              .code == 1);
  }

  TEST_CASE("errors are structured") {
    Result r = run({"check", "nosuch.json", "--sigma", "0", "--freq", "1"});
    CHECK(r.code == 2);
    CHECK(r.json()["error"]["type"] == "domain_error");
    CHECK_FALSE(r.err.empty());

    r = run({"check", "1/(s+1", "--sigma", "0", "--freq", "1"});
    CHECK(r.code == 2);
    CHECK(r.json()["error"]["type"] == "parse_error");
    CHECK(r.json()["error"]["offset"] == 6);

    r = run({"check", sys("g4"), "--sigma-matrix", "[[1,0.5],[0.4,1]]", "--freq", "1", "--mode", "mimo-exact"});
    CHECK(r.code == 2);
    CHECK(run({"check", sys("g2"), "--sigma", "0", "--freq", "0"}).code == 2);
    CHECK(run({"check", sys("g3"), "--sigma", "0"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("inline expressions stand in for system files") {
    const Result r = run({"check", "1/(0.1*s+0.5)", "--sigma", "0.3333333", "--freq", "1"});
    CHECK(r.code == 0);
  }

  TEST_CASE("case-study suite") {
    const auto start = std::chrono::steady_clock::now();
    const Result r = run({"--reproduce-paper", "--format", "json"});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(r.code == 0);
    CHECK(r.json()["all_ok"] == true);
    CHECK(r.json()["rows"].size() >= 20);
    CHECK(seconds < 60.0);

    const fs::path dir = scratch("figures");
    fs::remove_all(dir);
    CHECK(run({"--reproduce-paper", "--figure-dir", dir.string()}).code == 0);
    CHECK(fs::exists(dir / "nyquist_g3.svg"));
    CHECK(fs::exists(dir / "range_g4.csv"));
  }
}
