#include "ocea/harness/output.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ocea::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kTraceHeader = "# generation\tigd\thv\twall_time";
constexpr const char* kRunsHeader =
    "label\tproblem\trun\tseed\tstatus\tfinal_igd\tfinal_hv\tevaluations\ttrace";
constexpr const char* kSeedRule = "base_seed XOR fnv1a(\"<label>|<problem>|<run>\")";

std::string sci(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw OutputError("cannot write " + path.string());
  out << text;
  if (!out) throw OutputError("write failed for " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw OutputError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::optional<Real> parse_optional(const std::string& text) {
  if (text == "NA") return std::nullopt;
  std::size_t used = 0;
  const Real v = std::stod(text, &used);
  if (used != text.size()) throw OutputError("bad number '" + text + "'");
  return v;
}

std::string single_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\t' || c == '\r') c = ' ';
  }
  return text;
}

std::optional<Real> final_value(const RunTrace& trace, Metric metric) {
  if (trace.metrics.empty()) return std::nullopt;
  const auto& last = trace.metrics.back();
  return metric == Metric::kIgd ? last.igd : last.hv;
}

json cell_json(const MetricCell* cell) {
  if (cell == nullptr) return nullptr;
  json j{{"mean", cell->mean}, {"std", cell->std_dev}, {"rank", cell->rank},
         {"values", cell->values}};
  if (cell->comparison) {
    j["comparison"] = *cell->comparison == Comparison::kBetter  ? "better"
                      : *cell->comparison == Comparison::kWorse ? "worse"
                                                                : "similar";
    j["mark"] = mark(*cell->comparison);
  } else {
    j["comparison"] = nullptr;
  }
  return j;
}

}  // namespace

void prepare_output_directory(const fs::path& dir) {
  std::error_code ec;
  for (const char* sub : {"", "traces", "fronts", "clusters", "reference_fronts"}) {
    fs::create_directories(dir / sub, ec);
    if (ec) throw OutputError("cannot create " + (dir / sub).string() + ": " + ec.message());
  }
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out || !(out << "probe")) throw OutputError("output directory not writable: " + dir.string());
  }
  fs::remove(probe, ec);
}

std::string run_stem(const std::string& label, const std::string& problem, std::size_t run) {
  auto clean = [](std::string s) {
    for (char& c : s) {
      const bool safe = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' ||
                        c == '_' || c == '=' || c == '[' || c == ']';
      if (!safe) c = '_';
    }
    return s;
  };
  char num[24];
  std::snprintf(num, sizeof num, "r%02zu", run);
  return clean(label) + "__" + clean(problem) + "__" + num;
}

std::string format_exact(std::optional<Real> value) {
  if (!value) return "NA";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", *value);
  return buf;
}

std::string format_trace(const std::vector<MetricReport>& metrics) {
  std::string out = std::string(kTraceHeader) + "\n";
  for (const auto& r : metrics) {
    out += std::to_string(r.generation) + "\t" + format_exact(r.igd) + "\t" + format_exact(r.hv) +
           "\t" + format_exact(r.wall_time) + "\n";
  }
  return out;
}

std::vector<MetricReport> parse_trace(const std::string& text) {
  std::vector<MetricReport> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 4) throw OutputError("trace row needs 4 fields: '" + line + "'");
    MetricReport r;
    r.generation = std::stoul(fields[0]);
    r.igd = parse_optional(fields[1]);
    r.hv = parse_optional(fields[2]);
    r.wall_time = parse_optional(fields[3]).value_or(0.0);
    out.push_back(r);
  }
  return out;
}

std::string to_string(Metric metric) { return metric == Metric::kIgd ? "IGD" : "HV"; }

std::vector<RunRecord> run_records(const ExperimentResults& results) {
  std::vector<RunRecord> out;
  for (const auto& r : results.results) {
    RunRecord rec{r.task.label, r.task.problem, r.task.run, r.task.config.seed, r.ok()};
    if (r.ok()) {
      rec.igd = final_value(*r.trace, Metric::kIgd);
      rec.hv = final_value(*r.trace, Metric::kHv);
      rec.evaluations = r.trace->evaluations;
    }
    out.push_back(rec);
  }
  return out;
}

const MetricCell* SummaryTable::find(const std::string& problem, Metric metric,
                                     const std::string& label) const {
  auto it = cells.find({problem, metric, label});
  return it == cells.end() ? nullptr : &it->second;
}

SummaryTable summarize(const std::vector<std::string>& labels,
                       const std::vector<std::string>& problems, const std::string& reference_label,
                       const std::vector<RunRecord>& records, Real alpha) {
  SummaryTable table{labels, problems, reference_label, {}};
  for (const auto& problem : problems) {
    for (Metric metric : {Metric::kIgd, Metric::kHv}) {
      std::vector<std::string> present;
      std::vector<Real> means;
      for (const auto& label : labels) {
        MetricCell cell;
        for (const auto& rec : records) {
          if (!rec.ok || rec.label != label || rec.problem != problem) continue;
          const auto v = metric == Metric::kIgd ? rec.igd : rec.hv;
          if (v) cell.values.push_back(*v);
        }
        if (cell.values.empty()) continue;
        cell.mean = mean(cell.values);
        cell.std_dev = sample_std(cell.values);
        means.push_back(cell.mean);
        present.push_back(label);
        table.cells[{problem, metric, label}] = std::move(cell);
      }
      const Sense sense = metric == Metric::kIgd ? Sense::kMinimize : Sense::kMaximize;
      const auto ranks = rank_by_mean(means, sense);
      for (std::size_t i = 0; i < present.size(); ++i) {
        table.cells[{problem, metric, present[i]}].rank = ranks[i];
      }
      const MetricCell* ref = table.find(problem, metric, reference_label);
      if (ref == nullptr || ref->values.size() < 2) continue;
      for (const auto& label : present) {
        if (label == reference_label) continue;
        auto& cell = table.cells[{problem, metric, label}];
        if (cell.values.size() < 2) continue;
        cell.comparison = wilcoxon_rank_sum(ref->values, cell.values, alpha, sense);
      }
    }
  }
  return table;
}

std::string format_table(const SummaryTable& table) {
  std::string out = "problem\tmetric";
  for (const auto& label : table.labels) out += "\t" + label;
  out += "\n";
  for (const auto& problem : table.problems) {
    for (Metric metric : {Metric::kIgd, Metric::kHv}) {
      bool any = false;
      std::string row = problem + "\t" + to_string(metric);
      for (const auto& label : table.labels) {
        const MetricCell* cell = table.find(problem, metric, label);
        if (cell == nullptr) {
          row += "\tNA";
          continue;
        }
        any = true;
        row += "\t" + sci(cell->mean) + "(" + sci(cell->std_dev) + ")[" +
               std::to_string(cell->rank) + "]";
        if (cell->comparison) row += mark(*cell->comparison);
      }
      if (any) out += row + "\n";
    }
  }
  return out;
}

void write_outputs(const ExperimentResults& results, const fs::path& dir) {
  prepare_output_directory(dir);
  const auto& spec = results.spec;

  std::string runs = std::string(kRunsHeader) + "\n";
  std::string failures = "label\tproblem\trun\tseed\tmessage\n";
  json tasks = json::array();
  for (const auto& r : results.results) {
    const auto& t = r.task;
    const std::string stem = run_stem(t.label, t.problem, t.run);
    tasks.push_back({{"label", t.label}, {"problem", t.problem}, {"run", t.run},
                     {"seed", t.config.seed}});
    const std::string prefix = t.label + "\t" + t.problem + "\t" + std::to_string(t.run) + "\t" +
                               std::to_string(t.config.seed);
    if (!r.ok()) {
      runs += prefix + "\tfailed\tNA\tNA\t0\t-\n";
      failures += prefix + "\t" + single_line(r.error) + "\n";
      continue;
    }
    const RunTrace& trace = *r.trace;
    const std::string trace_file = "traces/" + stem + ".tsv";
    write_file(dir / trace_file, format_trace(trace.metrics));
    write_front(dir / "fronts" / (stem + ".txt"), trace.final_objectives());
    if (!trace.cluster_snapshots.empty()) {
      write_file(dir / "clusters" / (stem + ".jsonl"), trace.cluster_snapshots);
    }
    runs += prefix + "\tok\t" + format_exact(final_value(trace, Metric::kIgd)) + "\t" +
            format_exact(final_value(trace, Metric::kHv)) + "\t" +
            std::to_string(trace.evaluations) + "\t" + trace_file + "\n";
  }
  for (const auto& [name, front] : results.reference_fronts) {
    write_front(dir / "reference_fronts" / (name + ".txt"), front.points);
  }
  write_file(dir / "runs.tsv", runs);
  write_file(dir / "failures.tsv", failures);

  json provenance{{"spec_name", spec.name},
                  {"spec_version", kSpecVersion},
                  {"spec_hash", spec.source_hash},
                  {"generator", RandomSource::kGeneratorName},
                  {"base_seed", spec.base_seed},
                  {"seed_rule", kSeedRule},
                  {"reference", results.reference_label},
                  {"labels", results.labels},
                  {"problems", spec.problems},
                  {"runs", tasks}};
  write_file(dir / "provenance.json", provenance.dump(2) + "\n");

  const auto records = run_records(results);
  const SummaryTable table =
      summarize(results.labels, spec.problems, results.reference_label, records);

  std::string summary = "# spec_name: " + spec.name + "\n# spec_version: " +
                        std::string(kSpecVersion) + "\n# spec_hash: " + spec.source_hash +
                        "\n# generator: " + std::string(RandomSource::kGeneratorName) +
                        "\n# base_seed: " + std::to_string(spec.base_seed) +
                        "\n# seed_rule: " + kSeedRule + "\n# reference: " +
                        results.reference_label +
                        "\n# marks: reference vs column, rank-sum test at 5%: "
                        "† better, § worse, ≈ similar\n";
  for (const auto& problem : spec.problems) {
    for (const auto& label : results.labels) {
      std::string seeds;
      for (const auto& r : results.results) {
        if (r.task.label == label && r.task.problem == problem) {
          seeds += (seeds.empty() ? "" : ",") + std::to_string(r.task.config.seed);
        }
      }
      summary += "# seeds " + label + " " + problem + ": " + seeds + "\n";
    }
  }
  summary += format_table(table);
  write_file(dir / "summary.tsv", summary);

  std::string jsonl;
  for (const auto& problem : spec.problems) {
    for (const auto& label : results.labels) {
      std::size_t ok = 0, failed = 0;
      for (const auto& rec : records) {
        if (rec.label == label && rec.problem == problem) (rec.ok ? ok : failed)++;
      }
      json row{{"algorithm", label},
               {"problem", problem},
               {"reference", label == results.reference_label},
               {"runs", ok},
               {"failures", failed},
               {"igd", cell_json(table.find(problem, Metric::kIgd, label))},
               {"hv", cell_json(table.find(problem, Metric::kHv, label))}};
      jsonl += row.dump() + "\n";
    }
  }
  write_file(dir / "summary.jsonl", jsonl);
}

StatsCheck recompute_stats(const fs::path& dir) {
  StatsCheck check;
  const json provenance = json::parse(read_file(dir / "provenance.json"));
  const auto labels = provenance.at("labels").get<std::vector<std::string>>();
  const auto problems = provenance.at("problems").get<std::vector<std::string>>();
  const auto reference = provenance.at("reference").get<std::string>();

  std::vector<RunRecord> records;
  std::istringstream runs(read_file(dir / "runs.tsv"));
  std::string line;
  std::getline(runs, line);
  if (line != kRunsHeader) throw OutputError("runs.tsv: unexpected header");
  while (std::getline(runs, line)) {
    if (line.empty()) continue;
    const auto f = split(line, '\t');
    if (f.size() != 9) throw OutputError("runs.tsv: malformed row '" + line + "'");
    RunRecord rec{f[0], f[1], std::stoul(f[2]), std::stoull(f[3]), f[4] == "ok"};
    if (rec.ok) {
      const auto trace = parse_trace(read_file(dir / f[8]));
      if (trace.empty()) throw OutputError(f[8] + ": empty trace");
      rec.igd = trace.back().igd;
      rec.hv = trace.back().hv;
      rec.evaluations = std::stoul(f[7]);
      if (format_exact(rec.igd) != f[5] || format_exact(rec.hv) != f[6]) {
        check.runs_consistent = false;
        check.issues.push_back(f[8] + ": final row disagrees with runs.tsv");
      }
    }
    records.push_back(rec);
  }

  check.table = summarize(labels, problems, reference, records);
  check.table_text = format_table(check.table);

  std::istringstream stored(read_file(dir / "summary.tsv"));
  std::string stored_table;
  while (std::getline(stored, line)) {
    if (!line.empty() && line.front() != '#') stored_table += line + "\n";
  }
  check.summary_matches = stored_table == check.table_text;
  if (!check.summary_matches) check.issues.push_back("summary.tsv differs from the recomputation");
  return check;
}

}  // namespace ocea::harness
