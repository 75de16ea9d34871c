#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nnsel/heuristics/weight.hpp"

namespace nnsel::heur {

enum class WeightKind : std::uint8_t { Fifo, SymbolCount, ConjectureRelative, NeuralScore };

struct WeightFnSpec {
  WeightKind kind = WeightKind::Fifo;
  Priority priority = Priority::None;
  std::vector<double> params;

  std::string to_string() const;
  friend bool operator==(const WeightFnSpec&, const WeightFnSpec&) = default;
};

struct ScheduleEntrySpec {
  std::uint32_t weight = 1;
  WeightFnSpec fn;
  friend bool operator==(const ScheduleEntrySpec&, const ScheduleEntrySpec&) = default;
};

/// Declarative weighted round-robin schedule.
///
/// Text form: `entry (',' entry)*` with
/// `entry := INT '*' name ['[' priority ']'] ['(' number (',' number)* ')']`,
/// names `fifo`, `symcount(fw,vw)`, `conjrel(fw,vw,mult)`, `nn`, and
/// priorities `sos`, `nongoals`, `constprio`, `preferprocessed`. The whole
/// string may also be one of the presets `auto208`, `auto200`, `fifo`.
struct ScheduleSpec {
  std::vector<ScheduleEntrySpec> entries;

  static ScheduleSpec parse(std::string_view text);
  std::string to_string() const;
  std::vector<std::uint32_t> weights() const;
  std::uint32_t cycle_length() const;
  bool uses_neural() const;

  friend bool operator==(const ScheduleSpec&, const ScheduleSpec&) = default;
};

/// Structural replica of E's Auto208 hybrid heuristic (weights 1,4,1,1,4).
ScheduleSpec auto208_spec();
/// Structural replica of Auto200 (weights 1,6,2,1,8).
ScheduleSpec auto200_spec();
ScheduleSpec fifo_spec();

/// Multi-queue container over the unprocessed clauses. Every entry ranks all
/// live clauses by (tier, weight, id); removal is by tombstone.
class SelectionSchedule {
 public:
  void add_entry(std::uint32_t weight, std::shared_ptr<WeightFunction> fn,
                 Priority priority = Priority::None);

  void insert(std::span<const fol::Clause* const> batch);
  void insert(const fol::Clause& c) {
    const fol::Clause* p = &c;
    insert(std::span<const fol::Clause* const>(&p, 1));
  }

  /// Pops the next clause in round-robin order; nullopt when nothing is live.
  std::optional<fol::ClauseId> select_next();

  bool empty() const noexcept { return live_count_ == 0; }
  std::size_t live_count() const noexcept { return live_count_; }
  bool is_live(fol::ClauseId id) const noexcept {
    return fol::index(id) < live_.size() && live_[fol::index(id)] != 0;
  }
  std::vector<fol::ClauseId> live_ids() const;

  std::size_t entry_count() const noexcept { return entries_.size(); }
  std::uint32_t entry_weight(std::size_t i) const { return entries_.at(i).weight; }
  const WeightFunction& function(std::size_t i) const { return *entries_.at(i).fn; }
  std::uint64_t picks(std::size_t i) const { return entries_.at(i).picks; }
  std::uint64_t total_picks() const noexcept { return total_picks_; }
  /// Entry that served the most recent selection.
  std::size_t last_entry() const noexcept { return last_entry_; }

 private:
  struct Key {
    int tier;
    double weight;
    std::uint32_t id;
    friend bool operator>(const Key& a, const Key& b) {
      if (a.tier != b.tier) return a.tier > b.tier;
      if (a.weight != b.weight) return a.weight > b.weight;
      return a.id > b.id;
    }
  };
  struct Entry {
    std::uint32_t weight;
    std::shared_ptr<WeightFunction> fn;
    Priority priority;
    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap;
    std::uint64_t picks = 0;
  };

  std::vector<Entry> entries_;
  std::vector<char> live_;
  std::size_t live_count_ = 0;
  std::size_t cursor_ = 0;
  std::uint32_t remaining_ = 0;
  bool started_ = false;
  std::uint64_t total_picks_ = 0;
  std::size_t last_entry_ = 0;
};

/// Builds the neural weight function for a problem; supplied by the guidance layer.
using NeuralFactory = std::function<std::shared_ptr<WeightFunction>(const fol::Problem&)>;

SelectionSchedule instantiate(const ScheduleSpec& spec, const fol::Problem& problem,
                              const NeuralFactory& neural = {});

}  // namespace nnsel::heur
