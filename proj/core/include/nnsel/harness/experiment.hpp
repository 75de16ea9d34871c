#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "nnsel/fol/problem.hpp"
#include "nnsel/guidance/guidance.hpp"
#include "nnsel/harness/corpus.hpp"
#include "nnsel/neural/training.hpp"
#include "nnsel/premsel/premsel.hpp"

namespace nnsel::harness {

/// One column of an experiment: a guidance configuration, optionally run
/// inside a premise-selection cascade.
struct Method {
  std::string id;
  guide::GuidanceConfig guidance;
  /// Cascade levels; unset runs on the full premise set.
  std::optional<std::vector<std::size_t>> cascade_levels;
  /// Ranks premises for the cascade.
  premsel::PremiseScorer premise_scorer;
};

/// Limits shared by every cell of a run.
struct RunOptions {
  guide::Budget budget{guide::BudgetUnit::ProcessedClauses, 20000};
  std::uint64_t max_generated = 1'000'000;
  /// Wall-clock guard applied on top of a clause budget.
  std::optional<std::uint64_t> max_wall_ms = 60000;
  std::size_t workers = 1;
};

struct ProblemRecord {
  std::string problem;
  std::string method;
  /// SZS status name, or "Error" when the cell threw.
  std::string status;
  std::string limit;
  std::uint64_t processed = 0;
  std::uint64_t generated = 0;
  std::uint64_t wall_ms = 0;
  std::string mode;
  /// Cascade level that produced the proof.
  std::optional<std::size_t> level;
  /// Unset when no proof was returned.
  std::optional<bool> verified;
  std::uint64_t network_evaluations = 0;
  std::string error;

  bool proved() const { return status == "Unsatisfiable"; }
  friend bool operator==(const ProblemRecord&, const ProblemRecord&) = default;
};

inline constexpr std::uint64_t kUnbounded = 0;
/// PC buckets 1e3, 1e4, 1e5 and unbounded (0).
const std::vector<std::uint64_t>& pc_buckets();

struct MethodSummary {
  std::string method;
  std::size_t problems = 0;
  /// bucket limit -> proved count with processed <= limit (0 = unbounded).
  std::map<std::uint64_t, std::size_t> proved;
  std::map<std::uint64_t, double> percent;
  friend bool operator==(const MethodSummary&, const MethodSummary&) = default;
};

struct UnionStats {
  std::vector<std::string> methods;
  std::map<std::string, std::set<std::string>> proved;
  /// |A union B| for every ordered pair.
  std::map<std::string, std::map<std::string, std::size_t>> pairwise;
  std::size_t total = 0;
  /// Problems proved by this method only.
  std::map<std::string, std::size_t> unique;
  friend bool operator==(const UnionStats&, const UnionStats&) = default;
};

struct ExperimentReport {
  /// Resolved configuration as JSON text, embedded verbatim.
  std::string config;
  std::vector<std::string> problems;
  std::vector<std::string> methods;
  /// Sorted by (method order, problem order).
  std::vector<ProblemRecord> records;
  std::vector<MethodSummary> summaries;
  UnionStats unions;
  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// Runs every (problem, method) cell under `options` on a worker pool.
/// Exceptions inside a cell become Error records.
ExperimentReport run_corpus(std::span<const CorpusProblem> corpus, std::span<const Method> methods,
                            const RunOptions& options, const std::string& config_json = "{}");

/// One cell, exposed for tools and tests.
ProblemRecord run_cell(const fol::Problem& problem, const Method& method, const RunOptions& options);

std::vector<MethodSummary> summarize(std::span<const ProblemRecord> records, std::span<const std::string> methods,
                                     std::size_t problem_count);

/// Per-method proved sets, pairwise unions, total union and uniques. Throws
/// when the methods were not run on the same problems.
UnionStats union_stats(std::span<const ProblemRecord> records);

/// Recomputes every aggregate from the records; returns the mismatches.
std::vector<std::string> check_report(const ExperimentReport& report);

/// JSON lines: one record per cell, then a summary line. Wall times are
/// left out so that reports are byte-stable; see write_timings.
void write_report(std::ostream& out, const ExperimentReport& report);
ExperimentReport read_report(std::istream& in);
/// `problem<TAB>method<TAB>wall_ms` per record.
void write_timings(std::ostream& out, const ExperimentReport& report);

/// Fraction of unproved problems in percent at processed-clause limits
/// 1, 2, 5, 10, ... up to `max_limit`.
std::vector<std::pair<std::uint64_t, double>> pc_curve(const ExperimentReport& report, const std::string& method,
                                                       std::uint64_t max_limit = 100000);
/// Writes `<dir>/<method>.curve` two-column tables. Returns the paths.
std::vector<std::filesystem::path> emit_curves(const ExperimentReport& report, const std::filesystem::path& dir,
                                               std::uint64_t max_limit = 100000);

/// Fraction of examples with (score > 0.5) == label.
double accuracy_eval(const nn::Model& model, std::span<const nn::Example> balanced);

}  // namespace nnsel::harness
