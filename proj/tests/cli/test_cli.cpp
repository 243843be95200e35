#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "kerrqnd/sweep.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::map<std::string, std::string> kv;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(KERRQND_CLI) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  // key=value block follows the first blank line.
  std::istringstream in(r.out);
  std::string line;
  bool in_block = false;
  while (std::getline(in, line)) {
    if (line.empty()) {
      in_block = true;
      continue;
    }
    const auto eq = line.find('=');
    if (in_block && eq != std::string::npos) r.kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return r;
}

std::string config(const std::string& name) { return std::string(KERRQND_CONFIG_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("kerrqnd_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

double num(const CliRun& r, const std::string& key) {
  EXPECT_TRUE(r.kv.count(key)) << key << "\n" << r.out;
  return r.kv.count(key) ? std::stod(r.kv.at(key)) : 0.0;
}

}  // namespace

TEST(Cli, ErrorBaseline) {
  const CliRun r = run("error --config " + config("baseline.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NEAR(num(r, "dns_analytic"), 140.0, 0.5);
  EXPECT_NEAR(num(r, "dns_chain"), num(r, "dns_analytic"), 1e-9 * 140.0);
  EXPECT_NEAR(num(r, "n_p"), 3.92e5, 1e3);
}

TEST(Cli, ErrorFullWithOptimizer) {
  const CliRun r = run("error --config " + config("full.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NEAR(num(r, "dns_analytic"), 7.88, 0.05);
  EXPECT_NEAR(num(r, "dns_optimizer"), num(r, "dns_analytic"), 1e-6 * 7.88);
  EXPECT_EQ(r.kv.at("optimizer_converged"), "true");
  EXPECT_NE(r.out.find("numeric optimizer"), std::string::npos);
}

TEST(Cli, FlagsOverrideConfig) {
  const CliRun r = run("error --config " + config("full.json") + " --amplification-db 0 --probe-photons 1e6");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(num(r, "big_r"), 0.0);
  EXPECT_EQ(num(r, "n_p"), 1e6);
}

TEST(Cli, DegenerateConfigReportsNoFiniteOptimum) {
  const CliRun r = run("error --config " + config("degenerate.json"));
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("no finite optimum"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("set probe_photons"), std::string::npos);
  EXPECT_EQ(run("error --config " + config("degenerate.json") + " --probe-photons 1e6").code, 0);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("error --eta 1.5").code, 2);
  EXPECT_EQ(run("error --no-such-flag").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("error --probe-photons many").code, 2);
  EXPECT_EQ(run("sweep --preset fig4").code, 2);
  EXPECT_EQ(run("thresholds --config " + config("full.json")).code, 2);
  EXPECT_EQ(run("error --config /nonexistent/x.json").code, 4);
  EXPECT_EQ(run("resonator --preset /nonexistent/x.preset").code, 4);
  EXPECT_EQ(run("error --angles fixed").code, 2);
  EXPECT_EQ(run("--version").code, 0);
  // zeta = phi = 0 with R > 0: the homodyne sees no signal
  const fs::path dir = scratch("zerogain");
  fs::create_directories(dir);
  std::ofstream(dir / "blind.json") << R"({"amplification_db": 10, "probe_photons": 1e6,
      "angles": {"theta": 0, "phi": 0, "zeta": 0}})";
  const CliRun z = run("error --config " + (dir / "blind.json").string());
  EXPECT_EQ(z.code, 3) << z.out;
  fs::remove_all(dir);
}

TEST(Cli, ConfigErrorNamesTheField) {
  const fs::path dir = scratch("badfield");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.json") << R"({"eta": 0.9, "squeeze_db": "ten"})";
  const CliRun r = run("error --config " + (dir / "bad.json").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("field 'squeeze_db'"), std::string::npos) << r.out;
  std::ofstream(dir / "syntax.json") << "{\"eta\": ";
  EXPECT_EQ(run("error --config " + (dir / "syntax.json").string()).code, 2);
  fs::remove_all(dir);
}

TEST(Cli, Thresholds) {
  const CliRun r = run("thresholds --config " + config("thresholds.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NEAR(num(r, "ns_star"), 296.3, 0.05);
  EXPECT_NEAR(num(r, "dns_max"), 3.85, 0.005);
  EXPECT_EQ(r.kv.at("single_photon_feasible"), "true");
  EXPECT_EQ(r.kv.at("order_of_magnitude"), "true");
  EXPECT_EQ(run("thresholds --mu 0.9 --dns 140").kv.at("non_gaussian_feasible"), "false");
}

TEST(Cli, Resonator) {
  const CliRun r = run("resonator --config " + config("resonator.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NEAR(num(r, "gamma_x"), 0.85e-5, 0.01 * 0.85e-5);
  EXPECT_EQ(r.kv.at("loading"), "PASS");
  const CliRun d = run("resonator");
  ASSERT_EQ(d.code, 0) << d.out;
  EXPECT_EQ(d.kv.at("gamma_x"), r.kv.at("gamma_x"));
}

TEST(Cli, MonteCarloDeterministicPerSeed) {
  const std::string args = "mc --config " + config("mc.json") + " --samples 200000 --seed 42";
  const CliRun a = run(args + " --threads 1");
  const CliRun b = run(args + " --threads 6");
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.kv.at("empirical_dns"), b.kv.at("empirical_dns"));
  EXPECT_EQ(a.kv.at("empirical_gain"), b.kv.at("empirical_gain"));
  EXPECT_EQ(a.kv.at("seed"), "42");
  EXPECT_NEAR(num(a, "empirical_dns"), num(a, "analytic_dns"), 3 * num(a, "stderr_dns"));
  const CliRun c = run("mc --config " + config("mc.json") + " --samples 200000 --seed 43");
  EXPECT_NE(a.kv.at("empirical_dns"), c.kv.at("empirical_dns"));
}

TEST(Cli, SweepPresetsMatchFixtures) {
  const fs::path dir = scratch("sweep");
  for (const std::string name : {"fig3", "fig5"}) {
    const CliRun r = run("sweep --preset " + name + " --svg --out " + dir.string());
    ASSERT_EQ(r.code, 0) << r.out;
    std::ifstream got_in(dir / (name + ".csv"));
    std::ifstream want_in(std::string(KERRQND_FIXTURE_DIR) + "/" + name + ".csv");
    const kerrqnd::SweepResult got = kerrqnd::read_csv(got_in);
    const kerrqnd::SweepResult want = kerrqnd::read_csv(want_in);
    ASSERT_EQ(got.labels, want.labels);
    ASSERT_EQ(got.axis.size(), want.axis.size());
    for (std::size_t i = 0; i < want.axis.size(); ++i) {
      EXPECT_NEAR(got.axis[i], want.axis[i], 1e-9 * std::abs(want.axis[i]));
      for (std::size_t k = 0; k < want.dns.size(); ++k) {
        EXPECT_NEAR(got.dns[k][i], want.dns[k][i], 1e-9 * want.dns[k][i]);
      }
    }
    EXPECT_TRUE(fs::exists(dir / (name + ".svg")));
    std::ifstream meta_in(dir / (name + ".meta.json"));
    const nlohmann::json meta = nlohmann::json::parse(meta_in);
    EXPECT_EQ(meta["parameters"]["preset"], name);
  }
  fs::remove_all(dir);
}

TEST(Cli, SweepMetadataReproducesTheRun) {
  const fs::path dir = scratch("replay");
  ASSERT_EQ(run("sweep --preset fig5 --points 9 --eta 0.95 --out " + (dir / "a").string()).code, 0);
  std::ifstream meta_in(dir / "a" / "fig5.meta.json");
  const nlohmann::json meta = nlohmann::json::parse(meta_in);
  std::ofstream(dir / "replay.json") << meta["parameters"].dump();
  ASSERT_EQ(run("sweep --config " + (dir / "replay.json").string() + " --out " + (dir / "b").string()).code, 0);
  std::ifstream a(dir / "a" / "fig5.csv"), b(dir / "b" / "fig5.csv");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_NE(sa.str().find("axis,sq10dB\n"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, OutWritesRunRecord) {
  const fs::path dir = scratch("record");
  ASSERT_EQ(run("error --config " + config("full.json") + " --out " + dir.string()).code, 0);
  std::ifstream in(dir / "error.json");
  const nlohmann::json doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc["parameters"]["squeeze_db"], 10.0);
  EXPECT_NEAR(doc["results"]["dns_chain"].get<double>(), 7.8743535808996, 1e-9);
  fs::remove_all(dir);
}
