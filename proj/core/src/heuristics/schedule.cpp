#include "nnsel/heuristics/schedule.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "nnsel/error.hpp"

namespace nnsel::heur {

namespace {

const char* kind_name(WeightKind k) {
  switch (k) {
    case WeightKind::Fifo: return "fifo";
    case WeightKind::SymbolCount: return "symcount";
    case WeightKind::ConjectureRelative: return "conjrel";
    case WeightKind::NeuralScore: return "nn";
  }
  return "?";
}

const char* priority_name(Priority p) {
  switch (p) {
    case Priority::None: return "";
    case Priority::SimulateSos: return "sos";
    case Priority::PreferNonGoals: return "nongoals";
    case Priority::ConstPrio: return "constprio";
    case Priority::PreferProcessed: return "preferprocessed";
  }
  return "";
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

class SpecParser {
 public:
  explicit SpecParser(std::string_view s) : s_(s) {}

  ScheduleSpec run() {
    ScheduleSpec spec;
    skip_ws();
    if (s_.empty()) fail("empty schedule");
    for (;;) {
      spec.entries.push_back(entry());
      skip_ws();
      if (pos_ >= s_.size()) break;
      expect(',');
    }
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("schedule: " + msg, 1, pos_ + 1);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(s_.substr(start, pos_ - start));
  }
  double number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                                s_[pos_] == '-' || s_[pos_] == '+' || s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
    }
    try {
      return std::stod(std::string(s_.substr(start, pos_ - start)));
    } catch (...) {
      fail("expected number");
    }
  }

  ScheduleEntrySpec entry() {
    ScheduleEntrySpec e;
    double w = number();
    if (w < 1 || w != static_cast<std::uint32_t>(w)) fail("entry weight must be a positive integer");
    e.weight = static_cast<std::uint32_t>(w);
    expect('*');
    std::string name = word();
    if (name == "fifo") e.fn.kind = WeightKind::Fifo;
    else if (name == "symcount") e.fn.kind = WeightKind::SymbolCount;
    else if (name == "conjrel") e.fn.kind = WeightKind::ConjectureRelative;
    else if (name == "nn") e.fn.kind = WeightKind::NeuralScore;
    else fail("unknown weight function '" + name + "'");
    if (accept('[')) {
      std::string p = word();
      if (p == "sos") e.fn.priority = Priority::SimulateSos;
      else if (p == "nongoals") e.fn.priority = Priority::PreferNonGoals;
      else if (p == "constprio") e.fn.priority = Priority::ConstPrio;
      else if (p == "preferprocessed") e.fn.priority = Priority::PreferProcessed;
      else fail("unknown priority '" + p + "'");
      expect(']');
    }
    if (accept('(')) {
      if (!accept(')')) {
        do {
          e.fn.params.push_back(number());
        } while (accept(','));
        expect(')');
      }
    }
    std::size_t want = 0;
    switch (e.fn.kind) {
      case WeightKind::SymbolCount: want = 2; break;
      case WeightKind::ConjectureRelative: want = 3; break;
      default: want = 0;
    }
    if (e.fn.params.empty() && e.fn.kind == WeightKind::SymbolCount) e.fn.params = {2, 1};
    if (e.fn.params.size() != want) fail("'" + name + "' takes " + std::to_string(want) + " parameters");
    for (double p : e.fn.params) {
      if (!(p > 0)) fail("weight parameters must be positive");
    }
    if (e.fn.kind == WeightKind::ConjectureRelative && e.fn.params[2] > 1) {
      fail("conjecture multiplier must lie in (0, 1]");
    }
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string WeightFnSpec::to_string() const {
  std::string s = kind_name(kind);
  if (priority != Priority::None) s += std::string("[") + priority_name(priority) + "]";
  if (!params.empty()) {
    s += '(';
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i > 0) s += ',';
      s += format_number(params[i]);
    }
    s += ')';
  }
  return s;
}

ScheduleSpec ScheduleSpec::parse(std::string_view text) {
  if (text == "auto208") return auto208_spec();
  if (text == "auto200") return auto200_spec();
  if (text == "fifo") return fifo_spec();
  return SpecParser(text).run();
}

std::string ScheduleSpec::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(entries[i].weight) + "*" + entries[i].fn.to_string();
  }
  return s;
}

std::vector<std::uint32_t> ScheduleSpec::weights() const {
  std::vector<std::uint32_t> w;
  for (const auto& e : entries) w.push_back(e.weight);
  return w;
}

std::uint32_t ScheduleSpec::cycle_length() const {
  std::uint32_t n = 0;
  for (const auto& e : entries) n += e.weight;
  return n;
}

bool ScheduleSpec::uses_neural() const {
  for (const auto& e : entries) {
    if (e.fn.kind == WeightKind::NeuralScore) return true;
  }
  return false;
}

namespace {

ScheduleSpec auto_replica(std::uint32_t w_sos, std::uint32_t w_const, std::uint32_t w_fifo,
                          std::uint32_t w_nongoals, std::uint32_t w_refined, double refined_f,
                          double refined_v) {
  // ConjectureRelativeSymbolWeight(prio, mult, 100, 100, ...) keeps the
  // multiplier and the first two weights; Refinedweight becomes a
  // symbol count with its function/variable weights.
  ScheduleSpec s;
  s.entries.push_back({w_sos, {WeightKind::ConjectureRelative, Priority::SimulateSos, {100, 100, 0.5}}});
  s.entries.push_back({w_const, {WeightKind::ConjectureRelative, Priority::ConstPrio, {100, 100, 0.1}}});
  s.entries.push_back({w_fifo, {WeightKind::Fifo, Priority::PreferProcessed, {}}});
  s.entries.push_back({w_nongoals, {WeightKind::ConjectureRelative, Priority::PreferNonGoals, {100, 100, 0.5}}});
  s.entries.push_back({w_refined, {WeightKind::SymbolCount, Priority::SimulateSos, {refined_f, refined_v}}});
  return s;
}

}  // namespace

ScheduleSpec auto208_spec() { return auto_replica(1, 4, 1, 1, 4, 3, 2); }
ScheduleSpec auto200_spec() { return auto_replica(1, 6, 2, 1, 8, 1, 1); }
ScheduleSpec fifo_spec() { return ScheduleSpec{{{1, {WeightKind::Fifo, Priority::None, {}}}}}; }

void SelectionSchedule::add_entry(std::uint32_t weight, std::shared_ptr<WeightFunction> fn,
                                  Priority priority) {
  if (weight == 0) throw Error("schedule entry weight must be positive");
  if (!fn) throw Error("schedule entry without weight function");
  if (live_count_ != 0) throw Error("cannot add schedule entries after clauses were inserted");
  entries_.push_back(Entry{weight, std::move(fn), priority, {}, 0});
}

void SelectionSchedule::insert(std::span<const fol::Clause* const> batch) {
  if (entries_.empty()) throw Error("schedule has no entries");
  for (auto& e : entries_) e.fn->prepare(batch);
  for (const fol::Clause* c : batch) {
    const std::uint32_t id = fol::index(c->id);
    if (id >= live_.size()) live_.resize(std::max<std::size_t>(id + 1, live_.size() * 2), 0);
    if (live_[id]) continue;
    live_[id] = 1;
    ++live_count_;
    for (auto& e : entries_) {
      e.heap.push(Key{priority_tier(e.priority, *c), e.fn->evaluate(*c), id});
    }
  }
}

std::optional<fol::ClauseId> SelectionSchedule::select_next() {
  if (live_count_ == 0) return std::nullopt;
  if (!started_) {
    started_ = true;
    cursor_ = 0;
    remaining_ = entries_[0].weight;
  }
  for (std::size_t tries = 0; tries <= entries_.size(); ++tries) {
    if (remaining_ == 0) {
      cursor_ = (cursor_ + 1) % entries_.size();
      remaining_ = entries_[cursor_].weight;
    }
    Entry& e = entries_[cursor_];
    while (!e.heap.empty() && !live_[e.heap.top().id]) e.heap.pop();
    if (e.heap.empty()) {
      remaining_ = 0;  // skip this entry for the current round
      continue;
    }
    const std::uint32_t id = e.heap.top().id;
    e.heap.pop();
    live_[id] = 0;
    --live_count_;
    --remaining_;
    ++e.picks;
    ++total_picks_;
    last_entry_ = cursor_;
    return static_cast<fol::ClauseId>(id);
  }
  throw Error("schedule rankings out of sync with live set");
}

std::vector<fol::ClauseId> SelectionSchedule::live_ids() const {
  std::vector<fol::ClauseId> out;
  out.reserve(live_count_);
  for (std::uint32_t i = 0; i < live_.size(); ++i) {
    if (live_[i]) out.push_back(static_cast<fol::ClauseId>(i));
  }
  return out;
}

SelectionSchedule instantiate(const ScheduleSpec& spec, const fol::Problem& problem,
                              const NeuralFactory& neural) {
  SelectionSchedule s;
  std::shared_ptr<WeightFunction> nn;
  std::optional<SymbolSet> conj;
  for (const auto& e : spec.entries) {
    std::shared_ptr<WeightFunction> fn;
    switch (e.fn.kind) {
      case WeightKind::Fifo:
        fn = std::make_shared<FifoWeight>();
        break;
      case WeightKind::SymbolCount:
        fn = std::make_shared<SymbolCountWeight>(e.fn.params.at(0), e.fn.params.at(1));
        break;
      case WeightKind::ConjectureRelative:
        if (!conj) conj = conjecture_symbols(problem);
        fn = std::make_shared<ConjectureRelativeWeight>(*conj, e.fn.params.at(0), e.fn.params.at(1),
                                                        e.fn.params.at(2));
        break;
      case WeightKind::NeuralScore:
        if (!neural) throw Error("schedule uses 'nn' but no neural scorer was configured");
        if (!nn) nn = neural(problem);
        fn = nn;
        break;
    }
    s.add_entry(e.weight, std::move(fn), e.fn.priority);
  }
  return s;
}

}  // namespace nnsel::heur
