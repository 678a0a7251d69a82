#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kScratch = HYBRIDFLUX_TEST_SCRATCH;

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string("\"") + HYBRIDFLUX_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh(const std::string& name) {
  const fs::path dir = kScratch / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char ch : text) n += ch == '\n';
  return n;
}

}  // namespace

TEST_CASE("sample-dissipation") {
  const fs::path dir = fresh("sample");
  CHECK(run_cli("sample-dissipation --out-dir " + dir.string() +
                " --nu-min -0.5 --nu-max 0.8 --samples 11") == 0);
  const std::string csv = slurp(dir / "dissipation.csv");
  CHECK(csv.rfind("kind,omega,nu,d\n", 0) == 0);
  CHECK(line_count(csv) == 1 + 7 * 11);

  CHECK(run_cli("sample-dissipation --solvers \"\" --out " + (dir / "empty.csv").string()) == 0);
  CHECK(slurp(dir / "empty.csv") == "kind,omega,nu,d\n");

  CHECK(run_cli("sample-dissipation --solvers Godunov --out-dir " + dir.string()) == 2);
  CHECK(run_cli("sample-dissipation --nu-min 1 --nu-max -1 --out-dir " + dir.string()) == 2);
  CHECK(run_cli("sample-dissipation --samples 1 --out-dir " + dir.string()) == 2);
  CHECK(run_cli("no-such-command") == 2);
}

TEST_CASE("run-scalar writes profile, timeseries and manifest deterministically") {
  const fs::path a = fresh("scalar_a");
  const fs::path b = fresh("scalar_b");
  CHECK(run_cli("run-scalar --omega 0.4 --out-dir " + a.string()) == 0);
  CHECK(run_cli("run-scalar --solver DOmega --omega 0.4 --workers 1 --out-dir " + b.string()) == 0);
  for (const char* f : {"scalar_DOmega_w0.4_profile.csv", "scalar_DOmega_w0.4_timeseries.csv"}) {
    CAPTURE(f);
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  const std::string ts = slurp(a / "scalar_DOmega_w0.4_timeseries.csv");
  CHECK(ts.rfind("step,t,max_u\n", 0) == 0);
  CHECK(line_count(ts) == 51);
  CHECK(line_count(slurp(a / "scalar_DOmega_w0.4_profile.csv")) == 201);
  const std::string manifest = slurp(a / "manifest.txt");
  CHECK(manifest.find("scalar_DOmega_w0.4_profile.csv\t") != std::string::npos);
  CHECK(manifest.find("steps=50") != std::string::npos);

  CHECK(run_cli("run-scalar --omega 1.5 --out-dir " + a.string()) == 2);
  CHECK(run_cli("run-scalar --cfl 2 --out-dir " + a.string()) == 2);
  CHECK(run_cli("run-scalar --cells abc --out-dir " + a.string()) == 2);
}

TEST_CASE("config file merges under flags") {
  const fs::path dir = fresh("config");
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "# short run\nsolver = HLL\ncells = 40\nt_end = 0.1\n";
  }
  CHECK(run_cli("run-scalar --config " + (dir / "run.cfg").string() + " --cells 20 --out-dir " +
                dir.string()) == 0);
  CHECK(line_count(slurp(dir / "scalar_HLL_profile.csv")) == 21);

  {
    std::ofstream cfg(dir / "bad.cfg");
    cfg << "solver HLL\n";
  }
  CHECK(run_cli("run-scalar --config " + (dir / "bad.cfg").string() + " --out-dir " +
                dir.string()) == 2);
}

TEST_CASE("run-mhd and sweep-omega") {
  const fs::path dir = fresh("mhd");
  CHECK(run_cli("run-mhd --solvers \"HLL,P2Omega(0.3)\" --cells 100 --dt 0.02 --t-end 0.2 --out-dir " +
                dir.string()) == 0);
  const std::string csv = slurp(dir / "mhd_HLL_profile.csv");
  CHECK(csv.rfind("x,rho,vx,vy,vz,By,Bz,E,p\n", 0) == 0);
  CHECK(line_count(csv) == 101);
  CHECK(fs::exists(dir / "mhd_P2Omega_w0.3_profile.csv"));

  // A step far past the Courant limit is a numeric failure.
  CHECK(run_cli("run-mhd --solver HLL --dt 1 --out-dir " + dir.string()) == 1);

  const fs::path sweep = fresh("sweep");
  CHECK(run_cli("sweep-omega --scenario scalar --omegas 0,0.5,1 --cells 50 --out-dir " +
                sweep.string()) == 0);
  CHECK(fs::exists(sweep / "scalar_DOmega_w0.5_timeseries.csv"));
  CHECK(run_cli("sweep-omega --scenario mhd --omegas 0.3 --cells 60 --dt 0.02 --t-end 0.1 "
                "--out-dir " + sweep.string()) == 0);
  CHECK(fs::exists(sweep / "mhd_P2Omega_w0.3_profile.csv"));
  CHECK(run_cli("sweep-omega --scenario plasma --out-dir " + sweep.string()) == 2);
}
