// Black-box contract tests for the command-line tool: exit codes, on-disk
// artifacts, JSON report shapes, and byte-level determinism.  The binary
// under test is passed as argv[1].
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string g_cli;      // path to the binary under test
fs::path g_scratch;     // per-run scratch directory

/// Run the tool with `args`, returning its exit code (-1 on spawn failure).
int run_cli(const std::string& args) {
  const std::string cmd =
      "'" + g_cli + "' " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json slurp_json(const fs::path& p) { return json::parse(slurp(p)); }

void write_text(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  f << content;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = g_scratch / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

const char* kSmallConfig = R"({
  "schema_version": 1,
  "grid": {"n": 8, "L": 6.283185307179586, "dim": 3},
  "epsilon": 1e-3,
  "init": {"kmax": 1, "seed": 42},
  "dt": 0.01,
  "t_end": 0.1,
  "snapshot_stride": 0.05
})";

}  // namespace

TEST_CASE("symbol verification subcommand") {
  const fs::path dir = fresh_dir("verify");

  SUBCASE("default suites pass with exit 0 and a full report") {
    REQUIRE(run_cli("verify-symbols --samples 10 --out '" + dir.string() +
                    "'") == 0);
    const json report = slurp_json(dir / "symbol_checks.json");
    CHECK(report.at("all_pass").get<bool>());
    CHECK(report.at("propagator_comparisons").size() == 10 * 3);
    for (const auto& sec : report.at("sections"))
      CHECK(sec.at("pass").get<bool>());
    const json man = slurp_json(dir / "manifest.json");
    CHECK(man.at("subcommand") == "verify-symbols");
    CHECK(man.at("error").is_null());
    CHECK(man.at("outputs") == json::array({"symbol_checks.json"}));
  }

  SUBCASE("injected sign flip is caught: exit 1, checks red") {
    CHECK(run_cli("verify-symbols --samples 5 --inject-sign-flip --out '" +
                  dir.string() + "'") == 1);
    const json report = slurp_json(dir / "symbol_checks.json");
    CHECK_FALSE(report.at("all_pass").get<bool>());
    CHECK(report.at("injected_sign_flip").get<bool>());
    bool det_failed = false, oracle_failed = false, eigen_ok = false;
    for (const auto& sec : report.at("sections")) {
      const std::string name = sec.at("name");
      if (name == "volume_contraction") det_failed = !sec.at("pass");
      if (name == "ode_oracle_comparison") oracle_failed = !sec.at("pass");
      if (name == "eigenvalue_identities") eigen_ok = sec.at("pass");
    }
    CHECK(det_failed);     // the flip breaks det = e^{-t}
    CHECK(oracle_failed);  // and disagrees with the ODE integration
    CHECK(eigen_ok);       // eigenvalue identities never touch the assembly
    const json man = slurp_json(dir / "manifest.json");
    CHECK(man.at("error").is_null());  // checks failed, the tool did not
  }
}

TEST_CASE("linear decay subcommand") {
  const fs::path dir = fresh_dir("decay");

  SUBCASE("algebraic block fits the predicted exponents") {
    REQUIRE(run_cli("linear-decay --kind euler --k 0 --out '" + dir.string() +
                    "'") == 0);
    const std::string csv = slurp(dir / "decay_euler_k0.csv");
    CHECK(csv.rfind("t,n_norm,w_norm\n", 0) == 0);
    int lines = 0;
    for (char c : csv) lines += c == '\n';
    CHECK(lines == 1 + 25);
    const json fit = slurp_json(dir / "decay_fit.json");
    CHECK(fit.at("all_pass").get<bool>());
    REQUIRE(fit.at("rows").size() == 2);
    CHECK(fit["rows"][0].at("predicted").get<double>() == -0.75);
    CHECK(fit["rows"][1].at("predicted").get<double>() == -1.25);
    for (const auto& row : fit.at("rows"))
      CHECK(std::abs(row.at("fitted").get<double>() -
                     row.at("predicted").get<double>()) <=
            row.at("tolerance").get<double>());
  }

  SUBCASE("oscillatory block fits rate one half") {
    REQUIRE(run_cli("linear-decay --kind euler-poisson --k 0 --out '" +
                    dir.string() + "'") == 0);
    const json fit = slurp_json(dir / "decay_fit.json");
    CHECK(fit.at("all_pass").get<bool>());
    for (const auto& row : fit.at("rows")) {
      CHECK(row.at("fit_kind") == "exponential");
      CHECK(std::abs(row.at("fitted").get<double>() - 0.5) <= 0.02);
    }
    const json man = slurp_json(dir / "manifest.json");
    CHECK(man.at("outputs").size() == 2);
  }
}

TEST_CASE("simulate subcommand") {
  const fs::path dir = fresh_dir("sim");
  const fs::path cfg = dir / "config.json";
  write_text(cfg, kSmallConfig);

  SUBCASE("runs, writes the norm-table CSV and the manifest") {
    const fs::path out = dir / "run";
    REQUIRE(run_cli("simulate --config '" + cfg.string() + "' --out '" +
                    out.string() + "'") == 0);
    const std::string csv = slurp(out / "trajectory.csv");
    CHECK(csv.rfind("t,n1,Dn1,w1,Dw1,nw2,Dnw2,D2n1,D2w1,D2n2,D2w2,"
                    "D3n1,D3w1,D3n2,D3w2,M\n",
                    0) == 0);
    int lines = 0;
    for (char c : csv) lines += c == '\n';
    CHECK(lines == 1 + 3);  // t = 0, 0.05, 0.1
    const json man = slurp_json(out / "manifest.json");
    CHECK(man.at("subcommand") == "simulate");
    CHECK(man.at("seed").get<std::uint64_t>() == 42);
    CHECK(man.at("error").is_null());
    CHECK(man.at("config").at("grid").at("n").get<int>() == 8);
    CHECK(man.at("diagnostics").at("steps").get<long>() == 10);
  }

  SUBCASE("identical config and seed give byte-identical CSV") {
    const fs::path a = dir / "a", b = dir / "b";
    REQUIRE(run_cli("simulate --config '" + cfg.string() + "' --out '" +
                    a.string() + "'") == 0);
    REQUIRE(run_cli("simulate --config '" + cfg.string() + "' --out '" +
                    b.string() + "'") == 0);
    CHECK(slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv"));
  }

  SUBCASE("quiet background: every norm column is exactly zero") {
    json quiet = json::parse(kSmallConfig);
    quiet["epsilon"] = 0.0;
    const fs::path qcfg = dir / "quiet.json";
    write_text(qcfg, quiet.dump());
    const fs::path out = dir / "quiet_run";
    REQUIRE(run_cli("simulate --config '" + qcfg.string() + "' --out '" +
                    out.string() + "'") == 0);
    std::istringstream csv(slurp(out / "trajectory.csv"));
    std::string line;
    std::getline(csv, line);  // header
    while (std::getline(csv, line)) {
      const std::size_t first_comma = line.find(',');
      REQUIRE(first_comma != std::string::npos);
      // every column after t must be exactly "0"
      std::istringstream rest(line.substr(first_comma + 1));
      std::string cell;
      while (std::getline(rest, cell, ',')) CHECK(cell == "0");
    }
  }

  SUBCASE("dual-form run agrees and reports the gap column") {
    json both = json::parse(kSmallConfig);
    both["form"] = "both";
    both["dt"] = 5e-3;
    const fs::path bcfg = dir / "both.json";
    write_text(bcfg, both.dump());
    const fs::path out = dir / "both_run";
    REQUIRE(run_cli("simulate --config '" + bcfg.string() + "' --out '" +
                    out.string() + "'") == 0);
    const std::string csv = slurp(out / "trajectory.csv");
    CHECK(csv.find(",equiv_rel_err\n") != std::string::npos);
    const json man = slurp_json(out / "manifest.json");
    CHECK(man.at("max_equiv_rel_err").get<double>() <= 1e-6);
  }

  SUBCASE("unknown config key is rejected fail-closed") {
    json bad = json::parse(kSmallConfig);
    bad["grid"]["points"] = 64;  // typo for "n": must not be ignored
    const fs::path bcfg = dir / "bad.json";
    write_text(bcfg, bad.dump());
    const fs::path out = dir / "bad_run";
    CHECK(run_cli("simulate --config '" + bcfg.string() + "' --out '" +
                  out.string() + "'") == 2);
    const json man = slurp_json(out / "manifest.json");
    CHECK(man.at("error").at("type") == "validation");
    CHECK(std::string(man.at("error").at("message"))
              .find("grid.points") != std::string::npos);
    CHECK_FALSE(fs::exists(out / "trajectory.csv"));
  }

  SUBCASE("syntactically broken config exits 2 with a manifest") {
    const fs::path bcfg = dir / "broken.json";
    write_text(bcfg, "{ \"schema_version\": 1, ");
    const fs::path out = dir / "broken_run";
    CHECK(run_cli("simulate --config '" + bcfg.string() + "' --out '" +
                  out.string() + "'") == 2);
    const json man = slurp_json(out / "manifest.json");
    CHECK(man.at("error").at("type") == "validation");
  }

  SUBCASE("guard trip exits 1 and records the failing time") {
    json wild = json::parse(kSmallConfig);
    wild["epsilon"] = 1.5;  // densities leave the admissible box
    const fs::path wcfg = dir / "wild.json";
    write_text(wcfg, wild.dump());
    const fs::path out = dir / "wild_run";
    CHECK(run_cli("simulate --config '" + wcfg.string() + "' --out '" +
                  out.string() + "'") == 1);
    const json man = slurp_json(out / "manifest.json");
    REQUIRE_FALSE(man.at("error").is_null());
    CHECK(man.at("error").contains("t"));
    CHECK(man.at("error").at("type") == "inadmissible_state");
  }
}

TEST_CASE("usage errors exit 2, help exits 0") {
  CHECK(run_cli("") == 2);                    // a subcommand is required
  CHECK(run_cli("no-such-subcommand") == 2);
  CHECK(run_cli("simulate") == 2);            // --config is required
  CHECK(run_cli("linear-decay --kind nonsense") == 2);
  CHECK(run_cli("--help") == 0);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_tests <path-to-bepcli> [doctest args]\n");
    return 64;
  }
  g_cli = argv[1];
  if (!fs::exists(g_cli)) {
    std::fprintf(stderr, "cli_tests: no binary at '%s'\n", g_cli.c_str());
    return 64;
  }
  g_scratch = fs::temp_directory_path() / "bepcli_contract_tests";
  fs::create_directories(g_scratch);
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  const int rc = ctx.run();
  fs::remove_all(g_scratch);
  return rc;
}
