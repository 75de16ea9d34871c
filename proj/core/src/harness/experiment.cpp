#include "nnsel/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "nnsel/error.hpp"
#include "nnsel/saturation/proof.hpp"

namespace nnsel::harness {

using nlohmann::json;

namespace {

std::string bucket_key(std::uint64_t limit) { return limit == kUnbounded ? "inf" : std::to_string(limit); }

std::uint64_t parse_bucket_key(const std::string& s) { return s == "inf" ? kUnbounded : std::stoull(s); }

guide::GuidanceConfig cell_config(const Method& method, const RunOptions& options) {
  guide::GuidanceConfig c = method.guidance;
  c.total_budget = options.budget;
  c.limits.max_generated = options.max_generated;
  c.limits.max_wall_ms = options.max_wall_ms;
  if (c.phase1_budget && c.phase1_budget->unit != options.budget.unit)
    throw Error("phase-1 budget unit differs from the run budget unit");
  return c;
}

json record_json(const ProblemRecord& r) {
  json j = {{"type", "record"},
            {"problem", r.problem},
            {"method", r.method},
            {"status", r.status},
            {"limit", r.limit},
            {"processed", r.processed},
            {"generated", r.generated},
            {"mode", r.mode},
            {"level", r.level ? json(*r.level) : json(nullptr)},
            {"verified", r.verified ? json(*r.verified) : json(nullptr)},
            {"network_evaluations", r.network_evaluations}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

ProblemRecord record_from(const json& j) {
  ProblemRecord r;
  r.problem = j.at("problem").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.limit = j.at("limit").get<std::string>();
  r.processed = j.at("processed").get<std::uint64_t>();
  r.generated = j.at("generated").get<std::uint64_t>();
  r.mode = j.at("mode").get<std::string>();
  if (!j.at("level").is_null()) r.level = j.at("level").get<std::size_t>();
  if (!j.at("verified").is_null()) r.verified = j.at("verified").get<bool>();
  r.network_evaluations = j.at("network_evaluations").get<std::uint64_t>();
  if (j.contains("error")) r.error = j.at("error").get<std::string>();
  return r;
}

json summary_json(const MethodSummary& s) {
  json proved = json::object(), percent = json::object();
  for (const auto& [limit, n] : s.proved) proved[bucket_key(limit)] = n;
  for (const auto& [limit, p] : s.percent) percent[bucket_key(limit)] = p;
  return {{"method", s.method}, {"problems", s.problems}, {"proved", proved}, {"percent", percent}};
}

MethodSummary summary_from(const json& j) {
  MethodSummary s;
  s.method = j.at("method").get<std::string>();
  s.problems = j.at("problems").get<std::size_t>();
  for (const auto& [k, v] : j.at("proved").items()) s.proved[parse_bucket_key(k)] = v.get<std::size_t>();
  for (const auto& [k, v] : j.at("percent").items()) s.percent[parse_bucket_key(k)] = v.get<double>();
  return s;
}

json unions_json(const UnionStats& u) {
  json proved = json::object();
  for (const auto& [m, set] : u.proved) proved[m] = std::vector<std::string>(set.begin(), set.end());
  return {{"methods", u.methods}, {"proved", proved}, {"pairwise", u.pairwise}, {"total", u.total}, {"unique", u.unique}};
}

UnionStats unions_from(const json& j) {
  UnionStats u;
  u.methods = j.at("methods").get<std::vector<std::string>>();
  for (const auto& [m, v] : j.at("proved").items()) {
    auto names = v.get<std::vector<std::string>>();
    u.proved[m] = std::set<std::string>(names.begin(), names.end());
  }
  u.pairwise = j.at("pairwise").get<std::map<std::string, std::map<std::string, std::size_t>>>();
  u.total = j.at("total").get<std::size_t>();
  u.unique = j.at("unique").get<std::map<std::string, std::size_t>>();
  return u;
}

std::string file_safe(const std::string& id) {
  std::string out = id;
  for (char& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') c = '_';
  return out;
}

}  // namespace

const std::vector<std::uint64_t>& pc_buckets() {
  static const std::vector<std::uint64_t> buckets{1000, 10000, 100000, kUnbounded};
  return buckets;
}

ProblemRecord run_cell(const fol::Problem& problem, const Method& method, const RunOptions& options) {
  ProblemRecord r;
  r.problem = problem.name;
  r.method = method.id;
  r.mode = std::string(guide::mode_name(method.guidance.mode));
  const auto start = std::chrono::steady_clock::now();
  try {
    const guide::GuidanceConfig config = cell_config(method, options);
    if (!method.cascade_levels) {
      guide::GuidedResult g = guide::guided_prove(problem, config);
      r.status = sat::status_name(g.result.status);
      r.limit = sat::limit_name(g.result.limit);
      r.processed = g.result.processed_count;
      r.generated = g.result.generated_count;
      r.network_evaluations = g.network_evaluations;
      if (g.result.proof) r.verified = sat::verify_proof(*g.result.proof, problem).ok;
    } else {
      if (!method.premise_scorer) throw Error("cascade method " + method.id + " has no premise scorer");
      const premsel::RankedPremises ranking = premsel::rank_premises(problem, method.premise_scorer);
      premsel::CascadeConfig cc;
      cc.levels = *method.cascade_levels;
      cc.guidance = config;
      premsel::CascadeResult c = premsel::cascade_prove(problem, ranking, cc);
      for (const premsel::LevelRecord& l : c.transcript) {
        r.processed += l.processed;
        r.generated += l.generated;
        r.network_evaluations += l.network_evaluations;
      }
      const sat::ProveResult& last = c.result.result;
      r.limit = sat::limit_name(last.limit);
      if (c.proved_level) {
        r.status = sat::status_name(sat::ProveStatus::Unsatisfiable);
        r.level = c.proved_level;
        r.verified = last.proof && sat::verify_proof(*last.proof, problem).ok;
      } else {
        // Saturating a premise subset says nothing about the full problem.
        const bool complete = c.transcript.back().level == ranking.size();
        r.status = sat::status_name(complete ? last.status : sat::ProveStatus::ResourceOut);
      }
    }
  } catch (const std::exception& e) {
    r.status = "Error";
    r.limit = sat::limit_name(sat::LimitKind::None);
    r.error = e.what();
  }
  r.wall_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
  return r;
}

ExperimentReport run_corpus(std::span<const CorpusProblem> corpus, std::span<const Method> methods,
                            const RunOptions& options, const std::string& config_json) {
  ExperimentReport report;
  report.config = config_json;
  for (const CorpusProblem& p : corpus) report.problems.push_back(p.name);
  for (const Method& m : methods) report.methods.push_back(m.id);
  {
    std::set<std::string> ids(report.methods.begin(), report.methods.end());
    if (ids.size() != report.methods.size()) throw Error("duplicate method id");
  }

  const std::size_t cells = corpus.size() * methods.size();
  std::vector<ProblemRecord> records(cells);
  std::vector<std::optional<fol::Problem>> parsed(corpus.size());
  std::vector<std::string> parse_errors(corpus.size());
  std::vector<std::once_flag> parse_once(corpus.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      const std::size_t m = cell / corpus.size(), p = cell % corpus.size();
      std::call_once(parse_once[p], [&]() {
        try {
          parsed[p] = parse(corpus[p]);
        } catch (const std::exception& e) {
          parse_errors[p] = e.what();
        }
      });
      if (!parsed[p]) {
        ProblemRecord r;
        r.problem = corpus[p].name;
        r.method = methods[m].id;
        r.status = "Error";
        r.limit = sat::limit_name(sat::LimitKind::None);
        r.mode = std::string(guide::mode_name(methods[m].guidance.mode));
        r.error = parse_errors[p];
        records[cell] = std::move(r);
        continue;
      }
      records[cell] = run_cell(*parsed[p], methods[m], options);
      records[cell].problem = corpus[p].name;
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(options.workers, cells));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  report.records = std::move(records);
  report.summaries = summarize(report.records, report.methods, corpus.size());
  report.unions = union_stats(report.records);
  return report;
}

std::vector<MethodSummary> summarize(std::span<const ProblemRecord> records, std::span<const std::string> methods,
                                     std::size_t problem_count) {
  std::vector<MethodSummary> out;
  for (const std::string& m : methods) {
    MethodSummary s;
    s.method = m;
    s.problems = problem_count;
    for (std::uint64_t b : pc_buckets()) s.proved[b] = 0;
    for (const ProblemRecord& r : records) {
      if (r.method != m || !r.proved()) continue;
      for (std::uint64_t b : pc_buckets())
        if (b == kUnbounded || r.processed <= b) ++s.proved[b];
    }
    for (const auto& [b, n] : s.proved)
      s.percent[b] = problem_count == 0 ? 0.0 : 100.0 * static_cast<double>(n) / static_cast<double>(problem_count);
    out.push_back(std::move(s));
  }
  return out;
}

UnionStats union_stats(std::span<const ProblemRecord> records) {
  UnionStats u;
  std::map<std::string, std::set<std::string>> attempted;
  for (const ProblemRecord& r : records) {
    if (!attempted.contains(r.method)) u.methods.push_back(r.method);
    attempted[r.method].insert(r.problem);
    u.proved[r.method];
    if (r.proved()) u.proved[r.method].insert(r.problem);
  }
  for (const auto& [m, set] : attempted)
    if (set != attempted.begin()->second) throw Error("methods were run on different problems: " + m);

  std::set<std::string> all;
  for (const auto& [m, set] : u.proved) all.insert(set.begin(), set.end());
  u.total = all.size();
  for (const std::string& a : u.methods) {
    for (const std::string& b : u.methods) {
      std::set<std::string> both = u.proved[a];
      both.insert(u.proved[b].begin(), u.proved[b].end());
      u.pairwise[a][b] = both.size();
    }
    std::size_t unique = 0;
    for (const std::string& p : u.proved[a]) {
      bool other = false;
      for (const std::string& b : u.methods)
        if (b != a && u.proved[b].contains(p)) other = true;
      if (!other) ++unique;
    }
    u.unique[a] = unique;
  }
  return u;
}

std::vector<std::string> check_report(const ExperimentReport& report) {
  std::vector<std::string> issues;
  if (report.records.size() != report.problems.size() * report.methods.size())
    issues.push_back("record count " + std::to_string(report.records.size()) + " is not problems x methods");
  std::set<std::pair<std::string, std::string>> cells;
  for (const ProblemRecord& r : report.records)
    if (!cells.emplace(r.problem, r.method).second) issues.push_back("duplicate cell " + r.problem + "/" + r.method);
  const std::vector<MethodSummary> summaries = summarize(report.records, report.methods, report.problems.size());
  if (summaries != report.summaries) issues.push_back("stored bucket aggregates differ from the records");
  try {
    if (union_stats(report.records) != report.unions) issues.push_back("stored union statistics differ from the records");
  } catch (const Error& e) {
    issues.push_back(e.what());
  }
  return issues;
}

void write_report(std::ostream& out, const ExperimentReport& report) {
  for (const ProblemRecord& r : report.records) out << record_json(r).dump() << "\n";
  json summaries = json::array();
  for (const MethodSummary& s : report.summaries) summaries.push_back(summary_json(s));
  json summary = {{"type", "summary"},
                  {"config", json::parse(report.config)},
                  {"problems", report.problems},
                  {"methods", report.methods},
                  {"buckets", summaries},
                  {"unions", unions_json(report.unions)}};
  out << summary.dump() << "\n";
}

ExperimentReport read_report(std::istream& in) {
  ExperimentReport report;
  std::string line;
  bool summary = false;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error("report line " + std::to_string(n) + ": " + e.what());
    }
    const std::string type = j.at("type").get<std::string>();
    if (type == "record") {
      report.records.push_back(record_from(j));
    } else if (type == "summary") {
      summary = true;
      report.config = j.at("config").dump();
      report.problems = j.at("problems").get<std::vector<std::string>>();
      report.methods = j.at("methods").get<std::vector<std::string>>();
      for (const json& s : j.at("buckets")) report.summaries.push_back(summary_from(s));
      report.unions = unions_from(j.at("unions"));
    } else {
      throw Error("report line " + std::to_string(n) + ": unknown record type " + type);
    }
  }
  if (!summary) throw Error("report has no summary line");
  return report;
}

void write_timings(std::ostream& out, const ExperimentReport& report) {
  for (const ProblemRecord& r : report.records) out << r.problem << "\t" << r.method << "\t" << r.wall_ms << "\n";
}

std::vector<std::pair<std::uint64_t, double>> pc_curve(const ExperimentReport& report, const std::string& method,
                                                       std::uint64_t max_limit) {
  std::vector<std::uint64_t> proved_at;
  for (const ProblemRecord& r : report.records)
    if (r.method == method && r.proved()) proved_at.push_back(r.processed);
  std::sort(proved_at.begin(), proved_at.end());
  const double total = static_cast<double>(report.problems.size());
  std::vector<std::pair<std::uint64_t, double>> curve;
  for (std::uint64_t decade = 1; decade <= max_limit; decade *= 10) {
    for (std::uint64_t m : {1, 2, 5}) {
      const std::uint64_t limit = decade * m;
      if (limit > max_limit) break;
      const auto solved = static_cast<double>(std::upper_bound(proved_at.begin(), proved_at.end(), limit) - proved_at.begin());
      curve.emplace_back(limit, total == 0 ? 0.0 : 100.0 * (total - solved) / total);
    }
    if (decade > max_limit / 10) break;
  }
  return curve;
}

std::vector<std::filesystem::path> emit_curves(const ExperimentReport& report, const std::filesystem::path& dir,
                                               std::uint64_t max_limit) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> out;
  for (const std::string& m : report.methods) {
    std::filesystem::path path = dir / (file_safe(m) + ".curve");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path.string());
    f << "# pc_limit percent_unproved\n";
    for (const auto& [limit, pct] : pc_curve(report, m, max_limit)) f << limit << " " << pct << "\n";
    out.push_back(path);
  }
  return out;
}

double accuracy_eval(const nn::Model& model, std::span<const nn::Example> balanced) {
  return nn::accuracy(model, balanced);
}

}  // namespace nnsel::harness
