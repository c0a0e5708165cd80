#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ocea/harness/experiment.hpp"
#include "ocea/harness/output.hpp"
#include "ocea/harness/spec.hpp"

using namespace ocea;
using namespace ocea::harness;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ocea_harness_" + name);
  fs::remove_all(dir);
  return dir;
}

bool has_diagnostic(const ParsedSpec& p, const std::string& where) {
  for (const auto& d : p.diagnostics)
    if (d.where.find(where) != std::string::npos) return true;
  return false;
}

const char* kSmall = R"(
spec_version: ocea-experiment/1
name: small
algorithms: [ocea]
problems: [SCH]
runs: 3
base_seed: 11
parameters:
  all: {N: 10, T: 5, K_max: 3}
)";
}  // namespace

TEST_CASE("seed rule") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(derive_seed(5, "ocea", "ZDT1", 2) == (5ULL ^ fnv1a("ocea|ZDT1|2")));
}

TEST_CASE("spec parsing and resolution") {
  const auto parsed = parse_spec(kSmall);
  REQUIRE(parsed.ok());
  const auto& spec = parsed.spec;
  CHECK(spec.runs == 3);
  CHECK(spec.reference_algorithm == "ocea");
  const auto problem = resolve_problem(spec, "SCH");
  const auto cfg = resolve_config(spec, "ocea", problem);
  CHECK(cfg.N == 10);
  CHECK(cfg.T == 5);
  CHECK(cfg.K_max == 3);
  CHECK(cfg.variation.p_m == 1.0);  // 1/n with n = 1
  CHECK(spec.source_hash == fnv1a_hex(kSmall));
}

TEST_CASE("spec diagnostics") {
  const auto bad = parse_spec(R"(
spec_version: ocea-experiment/9
algorithms: [ocea, moead]
problems: [ZDT1, DTLZ2]
runs: many
colour: blue
parameters:
  ocea: {K_max: 500, beta: 2, gamma: 1}
problem_settings:
  ZDT1: {n: 1}
)");
  CHECK_FALSE(bad.ok());
  CHECK(has_diagnostic(bad, "spec_version"));
  CHECK(has_diagnostic(bad, "algorithms"));
  CHECK(has_diagnostic(bad, "problems"));
  CHECK(has_diagnostic(bad, "runs"));
  CHECK(has_diagnostic(bad, "colour"));
  CHECK(has_diagnostic(bad, "parameters.ocea.gamma"));
  CHECK(has_diagnostic(bad, "problem_settings.ZDT1"));
  bool lists_names = false;
  for (const auto& d : bad.diagnostics) lists_names = lists_names || d.message.find("GLT1") != std::string::npos;
  CHECK(lists_names);

  const auto range = parse_spec("algorithms: [ocea]\nproblems: [ZDT1]\nparameters:\n  ocea: {K_max: 500}\n");
  CHECK(has_diagnostic(range, "parameters(ocea, ZDT1)"));
  CHECK_FALSE(parse_spec("[1, 2").ok());
  CHECK_FALSE(load_spec("/nonexistent/spec.yaml").ok());
}

TEST_CASE("shipped presets validate") {
  const char* dir = std::getenv("OCEA_PRESETS");
  REQUIRE(dir != nullptr);
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".yaml") continue;
    const auto parsed = load_spec(entry.path());
    CAPTURE(entry.path().string());
    for (const auto& d : parsed.diagnostics) MESSAGE(d.where << ": " << d.message);
    CHECK(parsed.ok());
    ++count;
  }
  CHECK(count >= 4);
}

TEST_CASE("task planning") {
  auto spec = parse_spec(kSmall).spec;
  const auto tasks = plan_tasks(spec, Mode::kRun);
  REQUIRE(tasks.size() == 3);
  CHECK(tasks[2].config.seed == derive_seed(11, "ocea", "SCH", 2));

  const auto sweep = parse_spec(std::string(kSmall) + "sweep:\n  runs: 2\n  axes:\n    K_max: [2, 4]\n    beta: [0.5]\n");
  REQUIRE(sweep.ok());
  const auto st = plan_tasks(sweep.spec, Mode::kSweep);
  REQUIRE(st.size() == 6);
  CHECK(st[0].label == "ocea[K_max=2]");
  CHECK(st[0].config.K_max == 2);
  CHECK(st[2].config.K_max == 4);
  CHECK(st[4].label == "ocea[beta=0.5]");
  CHECK(st[4].config.beta == 0.5);
  CHECK(st[4].config.K_max == 3);
}

TEST_CASE("one algorithm, one problem, three runs") {
  auto spec = parse_spec(kSmall).spec;
  const auto dir = scratch("accounting");
  const auto results = run_experiment(spec, Mode::kRun);
  write_outputs(results, dir);
  std::size_t traces = 0;
  for (const auto& e : fs::directory_iterator(dir / "traces")) traces += e.path().extension() == ".tsv";
  CHECK(traces == 3);
  const auto table = format_table(recompute_stats(dir).table);
  // header + IGD row + HV row for the single cell
  CHECK(std::count(table.begin(), table.end(), '\n') == 3);

  const auto trace = slurp(dir / "traces" / "ocea__SCH__r00.tsv");
  CHECK(trace.rfind("# generation\tigd\thv\twall_time\n", 0) == 0);
  CHECK(parse_trace(trace).size() == 6);

  const auto front = read_front(dir / "fronts" / "ocea__SCH__r00.txt").points;
  CHECK(front == results.results[0].trace->final_objectives());

  std::ifstream jl(dir / "summary.jsonl");
  std::string line;
  std::getline(jl, line);
  const auto row = nlohmann::json::parse(line);
  CHECK(row["algorithm"] == "ocea");
  CHECK(row["igd"]["values"].size() == 3);

  const auto prov = nlohmann::json::parse(slurp(dir / "provenance.json"));
  CHECK(prov["generator"] == "mt19937_64");
  CHECK(prov["spec_version"] == "ocea-experiment/1");
  CHECK(prov["spec_hash"] == spec.source_hash);
  CHECK(prov["runs"].size() == 3);

  const auto summary = slurp(dir / "summary.tsv");
  CHECK(summary.find("# spec_hash: " + spec.source_hash) != std::string::npos);
  CHECK(summary.find("# generator: mt19937_64") != std::string::npos);
  CHECK(summary.find("# seeds ocea SCH: " + std::to_string(derive_seed(11, "ocea", "SCH", 0))) != std::string::npos);

  const auto check = recompute_stats(dir);
  CHECK(check.runs_consistent);
  CHECK(check.summary_matches);
  fs::remove_all(dir);
}

TEST_CASE("a failing cell leaves the others intact") {
  auto spec = parse_spec(std::string(kSmall) + "cluster_snapshots: true\n").spec;
  spec.algorithms = {"ocea", "nsga2"};
  spec.parameters["nsga2"].N = 1;  // invalid; bypasses validation on purpose
  const auto results = run_experiment(spec, Mode::kRun);
  const auto dir = scratch("failure");
  write_outputs(results, dir);
  std::size_t ok = 0, failed = 0;
  for (const auto& r : results.results) (r.ok() ? ok : failed)++;
  CHECK(ok == 3);
  CHECK(failed == 3);
  const auto failures = slurp(dir / "failures.tsv");
  CHECK(std::count(failures.begin(), failures.end(), '\n') == 4);
  CHECK(fs::exists(dir / "clusters" / "ocea__SCH__r01.jsonl"));
  CHECK(recompute_stats(dir).summary_matches);
  fs::remove_all(dir);
}

TEST_CASE("unwritable output directory fails before computing") {
  CHECK_THROWS_AS(prepare_output_directory("/proc/ocea_cannot_write_here"), OutputError);
}

TEST_CASE("summary marks compare the reference with each competitor") {
  std::vector<RunRecord> records;
  for (std::size_t r = 0; r < 10; ++r) {
    records.push_back({"a", "P", r, 0, true, 0.1 + 0.001 * static_cast<double>(r), 5.0 + 0.01 * static_cast<double>(r), 0});
    records.push_back({"b", "P", r, 0, true, 0.5 + 0.001 * static_cast<double>(r), 4.0 + 0.01 * static_cast<double>(r), 0});
    records.push_back({"c", "P", r, 0, true, 0.1 + 0.001 * static_cast<double>(r), 5.0 + 0.01 * static_cast<double>(r), 0});
  }
  const auto t = summarize({"a", "b", "c"}, {"P"}, "a", records);
  CHECK(t.find("P", Metric::kIgd, "a")->rank == 1);
  CHECK(t.find("P", Metric::kIgd, "b")->rank == 3);
  CHECK(t.find("P", Metric::kIgd, "c")->rank == 2);
  CHECK(*t.find("P", Metric::kIgd, "b")->comparison == Comparison::kBetter);
  CHECK(*t.find("P", Metric::kHv, "b")->comparison == Comparison::kBetter);
  CHECK(*t.find("P", Metric::kIgd, "c")->comparison == Comparison::kSimilar);
  CHECK_FALSE(t.find("P", Metric::kIgd, "a")->comparison.has_value());
  const auto text = format_table(t);
  CHECK(text.find("1.045e-01(3.028e-03)[1]\t5.045e-01(3.028e-03)[3]†\t1.045e-01(3.028e-03)[2]≈") != std::string::npos);
}
