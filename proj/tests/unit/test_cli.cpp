#include <cstdlib>
#include <stdexcept>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "oscillat/io.hpp"

using namespace oscillat;
using oscillat::cli::Command;
using oscillat::cli::RunConfig;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "oscillat_cli_test") {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& contents) const {
    const std::string p = (path / name).string();
    write_file(p, contents);
    return p;
  }
};

std::string run_ok(const RunConfig& c, int expect = 0) {
  std::ostringstream out, err;
  const int status = cli::run(c, out, err);
  INFO(err.str());
  CHECK(status == expect);
  return out.str();
}

}  // namespace

TEST_CASE("validate reports a clean interval space and rejects a broken cloud") {
  TempDir dir;
  RunConfig c;
  c.command = Command::validate;
  c.space_path = dir.file("s.json", R"({"engine": "interval-1d", "interval": {"a": 0, "b": 2}, "grid": 65})");
  const std::string ok = run_ok(c);
  CHECK(ok.find("\"digest\"") != std::string::npos);
  CHECK(ok.find("\"usable\": true") != std::string::npos);

  c.space_path = dir.file("bad.json", R"({"engine": "point-cloud", "weights": [1, 1, 1],
    "distances": [[0, 1, 5], [1, 0, 1], [5, 1, 0]]})");
  run_ok(c, 2);

  c.space_path = (dir.path / "missing.json").string();
  run_ok(c, 2);
}

TEST_CASE("maximal CSV starts with the digest line and reruns are byte-identical") {
  TempDir dir;
  RunConfig c;
  c.command = Command::maximal;
  c.alpha = 0.5;
  c.space_path = dir.file("s.json", R"({"engine": "interval-1d", "interval": {"a": 0, "b": 2}, "grid": 33})");
  c.function_path = dir.file("f.json", R"({"knots": [0, 1, 2], "values": [1, -1, 2]})");
  const std::string a = run_ok(c), b = run_ok(c);
  CHECK(a == b);
  CHECK(a.rfind("# config_digest=", 0) == 0);
  CHECK(a.find("x,maximal,argmax_center,argmax_radius\r\n") != std::string::npos);

  RunConfig d = c;
  d.alpha = 0.25;
  CHECK(run_ok(d).substr(0, 40) != a.substr(0, 40));
}

TEST_CASE("output does not depend on the thread count") {
  TempDir dir;
  RunConfig c;
  c.command = Command::oscillation;
  c.space_path = dir.file("s.json", R"({"engine": "interval-1d", "interval": {"a": 0, "b": 2}, "grid": 65})");
  c.function_path = dir.file("f.json", R"({"knots": [0, 0.5, 2], "values": [0, 1, -1]})");
  setenv("OSCILLAT_THREADS", "1", 1);
  const std::string one = run_ok(c);
  setenv("OSCILLAT_THREADS", "3", 1);
  const std::string three = run_ok(c);
  unsetenv("OSCILLAT_THREADS");
  CHECK(one == three);
}

TEST_CASE("convolve on a point cloud writes f and f_delta") {
  TempDir dir;
  RunConfig c;
  c.command = Command::convolve;
  c.delta = 1.5;
  c.space_path = dir.file("s.json", R"({"engine": "point-cloud", "points": [0, 1, 2, 3, 4],
    "weights": [1, 1, 1, 1, 1], "distances": "euclidean-1d"})");
  c.function_path = dir.file("f.json", R"({"values": [1, 1, 1, 1, 1]})");
  const std::string csv = run_ok(c);
  CHECK(csv.find("point_id,f,f_delta") != std::string::npos);
  c.format = "json";
  CHECK(run_ok(c).find("\"digest\"") != std::string::npos);
}

TEST_CASE("verify and gallery subcommands") {
  RunConfig v;
  v.command = Command::verify;
  v.suite = "sublinearity";
  v.N = 129;
  const std::string report = run_ok(v);
  CHECK(report.find("\"digest\"") != std::string::npos);

  RunConfig g;
  g.command = Command::gallery;
  g.name = "bounded-discont-M";
  g.N = 256;
  const std::string csv = run_ok(g);
  CHECK(csv.rfind("# config_digest=", 0) == 0);
  g.format = "svg";
  CHECK(run_ok(g).rfind("<!-- config_digest=", 0) == 0);
  g.name = "nope";
  run_ok(g, 2);
}

TEST_CASE("config checks reject out-of-range parameters") {
  RunConfig c;
  c.command = Command::maximal;
  c.alpha = -1.0;
  CHECK_THROWS_AS(cli::check_config(c), std::invalid_argument);
  c.alpha = 0.0;
  c.p = 0.5;
  CHECK_THROWS_AS(cli::check_config(c), std::invalid_argument);
  c.p = 1.0;
  c.convention = "sideways";
  CHECK_THROWS_AS(cli::check_config(c), std::invalid_argument);
}

TEST_CASE("the seed changes the digest") {
  RunConfig a, b;
  a.command = b.command = Command::verify;
  b.seed = 2;
  CHECK(cli::canonical_config(a) != cli::canonical_config(b));
}
