#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helson/dispatch.hpp"
#include "helson/errors.hpp"
#include "helson/run_config.hpp"

using namespace helson;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("helson-cli-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("curve a values are log-spaced") {
    const RunConfig c = parse_config({"curve", "--a-min", "0.05", "--a-max", "2.0", "--a-steps", "40"});
    CHECK(c.command == Command::Curve);
    const auto a = c.a_values();
    REQUIRE(a.size() == 40);
    CHECK(a.front() == 0.05);
    CHECK(a.back() == 2.0);
    const double ratio = a[1] / a[0];
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i] / a[i - 1] == doctest::Approx(ratio).epsilon(1e-12));
  }

  TEST_CASE("critical-a tolerance") {
    const RunConfig c = parse_config({"critical-a", "--tol", "0.02"});
    CHECK(c.command == Command::CriticalA);
    CHECK(c.tol == 0.02);
    CHECK_THROWS_AS(parse_config({"critical-a", "--tol", "1e-4"}), ConfigError);
  }

  TEST_CASE("defaults") {
    const RunConfig c = parse_config({"spectrum"});
    CHECK(c.N == 512);
    CHECK(c.grid == kReferenceGrid);
    CHECK(c.family == "mult-hilbert");
    CHECK(c.n_min == 2);
    CHECK_FALSE(c.a);
    const RunConfig h = parse_config({"spectrum", "--family", "helson"});
    CHECK(h.a == 1.0);
    CHECK(h.n_min == 1);
  }

  TEST_CASE("usage errors carry a field path") {
    auto message = [](std::vector<std::string> args) {
      try {
        parse_config(args);
      } catch (const ConfigError& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(message({"matrix", "--family", "helson", "--a", "0"}) == "kernel.a: a = 0 requires family mult-hilbert");
    CHECK(message({"spectrum", "--t-min", "-1"}).rfind("grid.t_min", 0) == 0);
    CHECK(message({"spectrum", "--format", "xml"}).rfind("output.format", 0) == 0);
    CHECK(message({"spectrum", "--family", "carleman", "--a", "1"}).rfind("kernel.a", 0) == 0);
    CHECK(message({"spectrum", "--N", "x12"}).rfind("N: expected an integer", 0) == 0);
    CHECK(message({"residual", "--k", "0"}).rfind("residual.k", 0) == 0);
    CHECK_FALSE(message({"bogus"}).empty());
    CHECK_FALSE(message({"spectrum", "--no-such-flag", "1"}).empty());
  }

  TEST_CASE("config file with flag override") {
    const fs::path dir = scratch("file");
    const fs::path file = dir / "run.cfg";
    std::ofstream(file) << "# run\nfamily = helson\na = 0.25\nN = 64   # small\n";
    const RunConfig c = parse_config({"spectrum", "--config", file.string(), "--N", "32"});
    CHECK(c.family == "helson");
    CHECK(c.a == 0.25);
    CHECK(c.N == 32);
    CHECK_THROWS_AS(parse_key_values("nonsense = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_key_values("N 5\n"), ConfigError);
    CHECK_THROWS_AS(parse_key_values("N = 5\nN = 6\n"), ConfigError);
  }

  TEST_CASE("JSON echo round-trip and cache keys") {
    const RunConfig c = parse_config({"curve", "--a-min", "0.1", "--a-max", "0.7", "--a-steps", "3", "--t-min", "1e-9"});
    CHECK(config_from_json(to_json(c)) == c);
    CHECK(cache_key(c) == cache_key(parse_config({"curve", "--a-min", "0.1", "--a-max", "0.7", "--a-steps", "3",
                                                  "--t-min", "1e-9"})));
    CHECK(cache_key(c).size() == 16);
    RunConfig d = c;
    d.a_steps = 4;
    CHECK(cache_key(d) != cache_key(c));
    d = c;
    d.grid.t_min = 1e-10;
    CHECK(cache_key(d) != cache_key(c));
    CHECK(canonical_text(c).find("a_min=0.10000000000000001\n") != std::string::npos);
  }

  TEST_CASE("spectrum command output and cache hit") {
    const fs::path dir = scratch("spectrum");
    const std::vector<std::string> args{"spectrum", "--family", "mult-hilbert", "--N", "512",
                                        "--path", (dir / "out").string(), "--cache-dir", (dir / "cache").string()};
    const Run first = cli(args);
    REQUIRE(first.code == 0);
    const auto files = lines(first.out);
    REQUIRE(files.size() == 2);
    const std::string csv = slurp(files[0]);
    const std::string json = slurp(files[1]);
    const auto rows = lines(csv);
    CHECK(rows.front() == "index,eigenvalue");
    CHECK(rows.size() == 512);
    CHECK(json.find("\"count_above_pi\": 0") != std::string::npos);
    CHECK(fs::path(files[0]).filename().string().rfind("spectrum-", 0) == 0);

    fs::remove(files[0]);
    fs::remove(files[1]);
    const Run second = cli(args);
    REQUIRE(second.code == 0);
    CHECK(second.err.find("cache hit") != std::string::npos);
    CHECK(slurp(files[0]) == csv);
    CHECK(slurp(files[1]) == json);
  }

  TEST_CASE("cache directory from the environment") {
    const fs::path dir = scratch("env");
    ::setenv("HELSON_CACHE_DIR", (dir / "envcache").string().c_str(), 1);
    const Run r = cli({"spectrum", "--family", "helson", "--a", "0.5", "--N", "16", "--path", dir.string()});
    ::unsetenv("HELSON_CACHE_DIR");
    CHECK(r.code == 0);
    CHECK(!fs::is_empty(dir / "envcache"));
  }

  TEST_CASE("residual command writes one row") {
    const fs::path dir = scratch("residual");
    const Run r = cli({"residual", "--k", "0.5", "--path", dir.string(), "--cache-dir", (dir / "c").string()});
    REQUIRE(r.code == 0);
    const auto rows = lines(slurp(lines(r.out)[0]));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "k,lambda,residual");
  }

  TEST_CASE("curve command header") {
    const fs::path dir = scratch("curve");
    const Run r = cli({"curve", "--a-min", "0.5", "--a-max", "2", "--a-steps", "2", "--N", "32", "--t-min", "1e-8",
                       "--t-max", "1e8", "--path", dir.string(), "--cache-dir", (dir / "c").string()});
    REQUIRE(r.code == 0);
    const auto rows = lines(slurp(lines(r.out)[0]));
    CHECK(rows[0] == "a,lambda_nystrom,lambda_trunc_N,lambda_lower_bound,lambda_upper_bound,above_pi");
    CHECK(rows.size() == 3);
  }

  TEST_CASE("matrix command writes a dump") {
    const fs::path dir = scratch("matrix");
    const Run r = cli({"matrix", "--family", "helson", "--a", "1", "--N", "10", "--format", "json", "--path",
                       dir.string(), "--cache-dir", (dir / "c").string()});
    REQUIRE(r.code == 0);
    const auto files = lines(r.out);
    REQUIRE(files.size() == 2);
    std::ifstream in(files[1], std::ios::binary);
    const SymmetricMatrix m = read_matrix_dump(in);
    CHECK(m.dim() == 10);
    CHECK(m(0, 0) == 1.0);
  }

  TEST_CASE("exit codes") {
    CHECK(cli({"matrix", "--family", "helson", "--a", "0"}).code == 2);
    CHECK(cli({}).code == 2);
    const fs::path dir = scratch("exit");
    const fs::path blocker = dir / "file";
    std::ofstream(blocker) << "x";
    // Output directory is a regular file: filesystem error.
    CHECK(cli({"spectrum", "--family", "helson", "--N", "4", "--path", (blocker / "sub").string(), "--cache-dir",
               (dir / "c").string()})
              .code == 1);
    CHECK(fs::is_empty(dir / "c") == false);
  }

  TEST_CASE("no output on validation failure") {
    const fs::path dir = scratch("invalid");
    CHECK(cli({"spectrum", "--format", "xml", "--path", dir.string()}).code == 2);
    CHECK(fs::is_empty(dir));
  }

  TEST_CASE("version") { CHECK(version() == HELSON_VERSION); }
}
