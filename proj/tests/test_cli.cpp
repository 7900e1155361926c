#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "metriq/cli.hpp"
#include "metriq/perturbation.hpp"

namespace fs = std::filesystem;
using metriq::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("metriq_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("soccer ball build and spectrum") {
  TempDir d;
  const auto sb = d / "sb.json";
  auto r = call({"build", "--family", "goldberg", "--ops", "t", "-o", sb});
  CHECK(r.code == 0);
  CHECK(fs::exists(sb));
  CHECK(r.out.find("|V|=60") != std::string::npos);

  r = call({"spectrum", "-g", sb, "--kmin", "0.1", "--kmax", "7.6", "--boundary", "free", "-o", d / "s.csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("14 roots, 59 with multiplicity") != std::string::npos);

  // past the first pole at pi / l the next branch of every level appears
  int expected = 0;
  for (const auto& l : metriq::soccer_ball_exact_roots(0.1, 12.0)) expected += l.multiplicity;
  r = call({"spectrum", "-g", sb, "--kmin", "0.1", "--kmax", "12", "--boundary", "free"});
  CHECK(r.code == 0);
  CHECK(r.out.find(std::to_string(expected) + " with multiplicity") != std::string::npos);
}

TEST_CASE("exit codes") {
  TempDir d;
  auto r = call({"build", "--family", "hexagon", "-o", d / "x.json"});
  CHECK(r.code == metriq::cli::kConfigError);
  CHECK(r.err.find("ConfigError") != std::string::npos);

  r = call({"spectrum", "-g", d / "missing.json"});
  CHECK(r.code == metriq::cli::kIoError);
  CHECK(r.err.find("IoError") != std::string::npos);

  r = call({"build", "--family", "path", "--edges", "1", "-o", d / "p.json"});
  REQUIRE(r.code == 0);
  r = call({"spectrum", "-g", d / "p.json"});
  CHECK(r.code == metriq::cli::kDomainError);
  CHECK(r.err.find("error: NoRootsFound") != std::string::npos);

  r = call({"convergence", "--family", "spider", "--densities", "12x"});
  CHECK(r.code == metriq::cli::kConfigError);

  CHECK(call({"--version"}).code == 0);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("config file round trip") {
  TempDir d;
  const auto g = d / "sq.json";
  REQUIRE(call({"build", "--family", "square", "--n", "8", "-o", g}).code == 0);
  const auto cfg = d / "run.ini";
  auto a = call({"--write-config", cfg, "spectrum", "-g", g, "--kmin", "2", "--kmax", "7", "--seed-density", "25", "-o",
                 d / "a.csv"});
  REQUIRE(a.code == 0);
  REQUIRE(fs::exists(cfg));
  const std::string text = slurp(cfg);
  CHECK(text.find("seed-density") != std::string::npos);

  // rerun from the file, overriding only the output path
  auto b = call({"--config", cfg, "spectrum", "-o", d / "b.csv"});
  REQUIRE(b.code == 0);
  CHECK(slurp(d / "a.csv") == slurp(d / "b.csv"));

  // write it again from the reloaded run: identical apart from the output path
  auto c = call({"--config", cfg, "--write-config", d / "again.ini", "spectrum", "-o", d / "a.csv"});
  REQUIRE(c.code == 0);
  CHECK(slurp(d / "again.ini") == text);
}

TEST_CASE("torus, dispersion and fields") {
  TempDir d;
  const auto t = d / "t.json";
  REQUIRE(call({"build", "--family", "torus", "--nx", "16", "--ny", "16", "-o", t}).code == 0);
  auto r = call({"dispersion", "--connectivity", "cardinal", "--ell", "0.1", "--kx", "1", "--ky", "0", "-o",
                 d / "disp.csv"});
  CHECK(r.code == 0);
  CHECK(slurp(d / "disp.csv").find("0.7069") != std::string::npos);
  r = call({"fields", "-g", t, "-o", d / "f.csv"});
  CHECK(r.code == 0);
  CHECK(fs::exists(d / "f.csv"));
}

TEST_CASE("compare and convergence outputs") {
  TempDir d;
  auto r = call({"convergence", "--family", "path", "--densities", "2,4", "-o", d / "conv.csv", "--plot-data",
                 d / "plots"});
  CHECK(r.code == 0);
  const auto csv = slurp(d / "conv.csv");
  CHECK(csv.rfind("family,|V|,alpha_index,label,k,k_tilde,eta,chi", 0) == 0);
  CHECK(fs::exists(d.path / "plots" / "path_comparison_eig.csv"));
  CHECK(fs::exists(d.path / "plots" / "path_comparison_ef.csv"));

  REQUIRE(call({"build", "--family", "goldberg", "--ops", "t", "-o", d / "sb.json"}).code == 0);
  r = call({"perturb", "-g", d / "sb.json", "--jmax", "3", "-o", d / "p.csv"});
  CHECK(r.code == 0);
  CHECK(slurp(d / "p.csv").find("lambda1") != std::string::npos);
}

}
