#include "lab/suites.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <atomic>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;

namespace {

void setup_logging() {
  auto log = spdlog::stderr_color_mt("lab");
  spdlog::set_default_logger(log);
  spdlog::set_pattern("[%H:%M:%S] %^%l%$ %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("LAB_LOG_LEVEL")) {
    std::string v = env;
    if (v == "error" || v == "warn" || v == "info" || v == "debug")
      spdlog::set_level(spdlog::level::from_str(v));
    else
      spdlog::warn("LAB_LOG_LEVEL='{}' ignored (expected error, warn, info or debug)", v);
  }
}

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  char b[32];
  std::strftime(b, sizeof b, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return b;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"labctl: numerical checks for the (k,a)-generalized Laguerre semigroup"};
  std::string config_path, suite, out_dir;
  int jobs = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "config file (sectioned key=value)");
  app.add_option("--suite", suite, "run a single suite (overrides run.suites)");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "output directory (overrides output.dir)");
  app.add_option("--seed", seed, "base seed (overrides ensemble.seed)");
  app.add_option("--override", overrides, "section.key=value, repeatable");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  setup_logging();

  if (!suite.empty()) overrides.push_back("run.suites=" + suite);
  if (app.count("--seed")) overrides.push_back("ensemble.seed=" + std::to_string(seed));
  if (!out_dir.empty()) overrides.push_back("output.dir=" + out_dir);

  lab::RunConfig rc;
  std::vector<std::string> suites;
  try {
    rc = config_path.empty() ? lab::parse_run_config("", overrides) : lab::load_run_config(config_path, overrides);
    suites = lab::expand_suites(rc.suites);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  spdlog::info("geometry {} config {}", lab::geometry_of(rc).describe(), lab::config_hash(rc));

  std::vector<lab::SuiteResult> results(suites.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < suites.size();) {
      spdlog::info("suite {} started", suites[i]);
      results[i] = lab::run_suite(suites[i], rc);
      spdlog::info("suite {} finished in {:.2f}s", suites[i], results[i].seconds);
      for (auto& c : results[i].checks)
        if (!c.passed) spdlog::debug("check {} failed: {}", c.id, c.value);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int j = 0; j < std::min<int>(jobs, int(suites.size())); ++j) pool.emplace_back(worker);
  }

  try {
    fs::path dir = rc.out_dir;
    fs::create_directories(dir);
    if (rc.write_json) write_file(dir / "report.json", lab::build_report(rc, results, timestamp()).dump(2) + "\n");
    if (rc.write_csv) {
      fs::create_directories(dir / "tables");
      for (auto& r : results)
        for (auto& t : r.tables) write_file(dir / "tables" / (r.suite + "_" + t.name + ".csv"), t.text);
    }
    auto summary = lab::human_summary(rc, results);
    write_file(dir / "summary.txt", summary);
    std::cout << summary;
  } catch (const std::exception& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return 1;
  }

  std::vector<std::string> failed;
  for (auto& r : results)
    for (auto& c : r.checks)
      if (!c.passed) failed.push_back(c.id);
  if (failed.empty()) return 0;
  for (auto& f : failed) std::cerr << "failed: " << f << "\n";
  return 1;
}
