#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "smpcert/cli.hpp"
#include "support.hpp"

using namespace smpcert;
using test::cli;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& contents = "") {
  const auto path = std::filesystem::temp_directory_path() / name;
  if (!contents.empty()) std::ofstream(path) << contents;
  return path;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("certify exit codes") {
    const auto ok = cli({"certify", "--family", "main", "--c", "11/10", "--mu", "5/4"});
    CHECK(ok.code == kExitOk);
    CHECK(ok.out.find("ρ̄ = 121/100") != std::string::npos);
    CHECK(ok.out.find("{AAB}") != std::string::npos);
    CHECK(ok.out.find("{ABB}") != std::string::npos);
    CHECK(ok.err.empty());

    const auto bad = cli({"certify", "--family", "main", "--c", "11/10", "--mu", "34/25"});
    CHECK(bad.code == kExitCheckFailed);
    CHECK(bad.out.find("[FAIL] B~-inclusion of b3") != std::string::npos);

    const auto low = cli({"certify", "--family", "main", "--kappa", "1.331", "--mu", "1.04"});
    CHECK(low.code == kExitCheckFailed);
    CHECK(low.out.find("[FAIL] convexity at v1") != std::string::npos);
    CHECK(low.err.find("warning: float backend") != std::string::npos);
  }

  TEST_CASE("usage errors exit with 2") {
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    CHECK(cli({"certify", "--c", "11/10", "--kappa", "1331/1000", "--mu", "5/4"}).code == kExitUsage);
    CHECK(cli({"certify", "--c", "1.1", "--backend", "exact", "--mu", "5/4"}).code == kExitUsage);
    CHECK(cli({"certify", "--c", "11/10", "--mu", "five"}).code == kExitUsage);
    CHECK(cli({"certify", "--c", "11/10"}).code == kExitUsage);
    CHECK(cli({"certify", "--family", "nope", "--mu", "5/4"}).code == kExitUsage);
    CHECK(cli({"certify", "--family", "custom", "--mu", "5/4"}).code == kExitUsage);
    CHECK(cli({"bounds", "--max-n", "0"}).code == kExitUsage);
    CHECK(cli({"bounds", "--max-n", "21"}).code == kExitUsage);
    CHECK(cli({"bounds", "--norm", "polygon"}).code == kExitUsage);
    CHECK(cli({"bounds", "--norm", "euclid"}).code == kExitUsage);
    CHECK(cli({"figure"}).code == kExitUsage);
    CHECK(cli({"certify", "--c", "1/2", "--mu", "5/4"}).code == kExitUsage);
  }

  TEST_CASE("bounds") {
    const auto table = cli({"bounds", "--family", "main", "--c", "11/10", "--max-n", "6"});
    CHECK(table.code == kExitOk);
    CHECK(table.out.find("AAB ABB") != std::string::npos);
    const auto csv = cli({"bounds", "--c", "11/10", "--max-n", "4", "--format", "csv"});
    CHECK(csv.code == kExitOk);
    CHECK(csv.out.find("n,rho_bar_n,rho_n,maximizers") != std::string::npos);
    const auto polygon =
        cli({"bounds", "--family", "main", "--c", "11/10", "--norm", "polygon", "--mu", "5/4", "--max-n", "6"});
    CHECK(polygon.code == kExitOk);
    std::istringstream lines(polygon.out);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
      std::istringstream fields(line);
      int n;
      double rho_bar, rho;
      if (fields >> n >> rho_bar >> rho) {
        ++rows;
        CHECK(rho == doctest::Approx(1.21).epsilon(1e-9));
        CHECK(rho_bar <= 1.21 + 1e-12);
      }
    }
    CHECK(rows == 6);
    const auto nonconvex = cli({"bounds", "--c", "11/10", "--norm", "polygon", "--mu", "1"});
    CHECK(nonconvex.code == kExitCheckFailed);
  }

  TEST_CASE("scan") {
    const auto main = cli({"scan", "--family", "main", "--kappa", "1.331"});
    CHECK(main.code == kExitOk);
    CHECK(main.out.find("1.2997570532") != std::string::npos);
    CHECK(main.out.find("1.57270603437") != std::string::npos);
    CHECK(main.out.find("1.44789227") != std::string::npos);
    CHECK(main.out.find("agree with thresholds solved from the polygon: yes") != std::string::npos);
    const auto exact = cli({"scan", "--c", "11/10", "--format", "csv"});
    CHECK(exact.out.find("mu1,121/100,\"1.21\"") != std::string::npos);
    CHECK(exact.out.find("mu2,7681550376721/5909989376721,") != std::string::npos);
    const auto alt = cli({"scan", "--family", "alt", "--kappa", "1.331"});
    CHECK(alt.code == kExitOk);
    CHECK(alt.out.find("0.87453873895") != std::string::npos);
    CHECK(alt.out.find("1.52857962") != std::string::npos);
    CHECK(cli({"scan", "--family", "custom"}).code == kExitUsage);
  }

  TEST_CASE("permutable") {
    const auto main = cli({"permutable", "--family", "main", "--c", "11/10"});
    CHECK(main.code == kExitOk);
    CHECK(main.out.find("permutable    true") != std::string::npos);
    const auto config = temp_file("smpcert_reducible.txt", "1 0 0 2\n2 0 0 1\n");
    const auto reducible = cli({"permutable", "--family", "custom", "--config", config.string()});
    CHECK(reducible.code == kExitCheckFailed);
    CHECK((reducible.out + reducible.err).find("criterion inapplicable (reducible)") != std::string::npos);
    std::filesystem::remove(config);
    CHECK(cli({"permutable", "--family", "custom", "--config", "/nonexistent/set.txt"}).code == kExitUsage);
  }

  TEST_CASE("custom sets from a config file") {
    const auto config = temp_file("smpcert_custom.txt",
                                  "# A then B\n0 -1000/1331 1331/1000 -1\n0 -1331/1000 1000/1331 -1\n");
    const auto run = cli({"certify", "--family", "custom", "--config", config.string(), "--mu", "5/4"});
    CHECK(run.code == kExitOk);
    std::filesystem::remove(config);
  }

  TEST_CASE("figure") {
    const auto path = temp_file("smpcert_cli_figure.svg");
    const auto run = cli({"figure", "--c", "11/10", "--mu", "5/4", "--out", path.string()});
    CHECK(run.code == kExitOk);
    const std::string first = slurp(path);
    CHECK(first.find("<svg") != std::string::npos);
    CHECK(cli({"figure", "--c", "11/10", "--mu", "5/4", "--out", path.string()}).code == kExitOk);
    CHECK(slurp(path) == first);
    std::filesystem::remove(path);
  }

  TEST_CASE("identical invocations give identical output") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"certify", "--c", "11/10", "--mu", "5/4", "--format", "kv"},
          {"bounds", "--c", "11/10", "--max-n", "7"},
          {"scan", "--family", "alt", "--kappa", "1.331", "--format", "csv"},
          {"permutable", "--family", "alt", "--kappa", "1.331"}}) {
      const auto a = cli(args), b = cli(args);
      CHECK(a.code == b.code);
      CHECK(a.out == b.out);
    }
  }

  TEST_CASE("selftest passes") {
    const auto run = cli({"selftest"});
    CHECK(run.code == kExitOk);
    CHECK(run.out.find("[FAIL]") == std::string::npos);
  }
}
