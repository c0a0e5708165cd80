#ifndef OCEA_HARNESS_OUTPUT_HPP_
#define OCEA_HARNESS_OUTPUT_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ocea/harness/experiment.hpp"
#include "ocea/harness/statistics.hpp"

namespace ocea::harness {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Creates `dir` and its subdirectories and checks that files can be written
/// there. Throws OutputError otherwise.
void prepare_output_directory(const std::filesystem::path& dir);

/// "<label>__<problem>__rNN" with characters unsafe in file names replaced.
std::string run_stem(const std::string& label, const std::string& problem, std::size_t run);

/// Decimal with 17 significant digits, "NA" when absent.
std::string format_exact(std::optional<Real> value);

/// Trace rows "generation igd hv wall_time", tab separated, after a header.
std::string format_trace(const std::vector<MetricReport>& metrics);
/// Reads a trace back. Throws OutputError on malformed rows.
std::vector<MetricReport> parse_trace(const std::string& text);

/// Final indicator values of one run, the unit of the statistics.
struct RunRecord {
  std::string label;
  std::string problem;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::optional<Real> igd;
  std::optional<Real> hv;
  std::size_t evaluations = 0;
};

std::vector<RunRecord> run_records(const ExperimentResults& results);

enum class Metric { kIgd, kHv };
std::string to_string(Metric metric);

struct MetricCell {
  std::vector<Real> values;
  Real mean = 0.0;
  Real std_dev = 0.0;
  std::size_t rank = 0;
  /// Reference configuration versus this one; absent for the reference itself.
  std::optional<Comparison> comparison;
};

struct SummaryTable {
  std::vector<std::string> labels;
  std::vector<std::string> problems;
  std::string reference_label;
  /// Keyed by (problem, metric, label). Metrics without values are absent.
  std::map<std::tuple<std::string, Metric, std::string>, MetricCell> cells;

  [[nodiscard]] const MetricCell* find(const std::string& problem, Metric metric,
                                       const std::string& label) const;
};

/// Mean, sample std and rank per (problem, metric) over configurations (IGD
/// ascending, HV descending, ties by table order), plus rank-sum marks of the
/// reference against every other configuration.
SummaryTable summarize(const std::vector<std::string>& labels,
                       const std::vector<std::string>& problems, const std::string& reference_label,
                       const std::vector<RunRecord>& records, Real alpha = 0.05);

/// One row per (problem, metric): "mean(std)[rank]mark" per configuration,
/// %.3e numbers, tab separated.
std::string format_table(const SummaryTable& table);

/// Writes traces, final fronts, cluster snapshots, reference fronts,
/// runs.tsv, failures.tsv, summary.tsv, summary.jsonl and provenance.json.
void write_outputs(const ExperimentResults& results, const std::filesystem::path& dir);

struct StatsCheck {
  SummaryTable table;
  std::string table_text;
  /// Final values in runs.tsv agree with the last trace rows.
  bool runs_consistent = true;
  /// The recomputed table equals the one stored in summary.tsv.
  bool summary_matches = true;
  std::vector<std::string> issues;
};

/// Recomputes the summary from the persisted traces of a results directory.
StatsCheck recompute_stats(const std::filesystem::path& dir);

}  // namespace ocea::harness

#endif  // OCEA_HARNESS_OUTPUT_HPP_
