#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "knets/net.hpp"

namespace knets {

/// A parallel comparison plan: rounds of ascending compare-exchange pairs.
/// Within one round no line appears twice, so a round executes in unit time
/// on width/2 comparators.
struct RoundSchedule {
  int width = 0;
  std::vector<std::vector<std::pair<int, int>>> rounds;

  std::size_t round_count() const { return rounds.size(); }
  std::size_t comparison_count() const;

  /// Lowers to a 2-sorter network with one round mark per round boundary.
  /// Schedules with fewer than two rounds lower to unmarked networks.
  Network to_network() const;

  /// Throws StructuralError on out-of-range or non-ascending pairs, a line
  /// reused within a round, or an empty round.
  void validate() const;
};

/// Applies the schedule: each pair (i, j) puts the smaller key on line i.
template <class T, class Less = std::less<T>>
void apply_schedule_inplace(std::span<T> seq, const RoundSchedule& sched, Less less = {}) {
  sched.validate();
  if (static_cast<int>(seq.size()) != sched.width)
    throw StructuralError("sequence length does not match schedule width");
  for (const auto& round : sched.rounds)
    for (auto [i, j] : round)
      if (less(seq[static_cast<std::size_t>(j)], seq[static_cast<std::size_t>(i)]))
        std::swap(seq[static_cast<std::size_t>(i)], seq[static_cast<std::size_t>(j)]);
}

KeySequence apply_schedule(KeySequence seq, const RoundSchedule& sched);

/// A valley merge instance: lines [base, base+a_len) hold a nonincreasing
/// run and lines [base+a_len, base+a_len+b_len) a nondecreasing run, so the
/// whole span is valley-shaped (falls, then rises). width 0 means exactly
/// the two runs.
struct MergeSpec {
  int a_len = 0;
  int b_len = 0;
  int base = 0;
  int width = 0;
};

/// Merges a valley span of m = a_len + b_len lines in ceil(log2 m) rounds.
/// Requires a_len >= 1, b_len >= a_len. Each level pairs lines d apart,
/// d being half the next power of two above the span, then recurses into
/// the two halves; both halves are again valleys, the left one exactly
/// d long.
RoundSchedule valley_merge_schedule(const MergeSpec& spec);

/// A full sorting schedule for n lines: runs of length 2^j are pairwise
/// merged bottom up, each merge stage j running in j rounds (one junction
/// round that reverses the left run's role, then the valley levels). For
/// n = 2^t the total is t(t+1)/2 rounds on at most n/2 comparators per
/// round.
RoundSchedule parallel_merge_sort_schedule(int n);

/// Stage-by-stage account of parallel_merge_sort_schedule for n = 2^t:
/// row j holds the run length after stage j, how many runs remain, and the
/// rounds stage j costs. Row 0 is the initial state (runs of 1, 0 rounds).
struct StageTable {
  struct Row {
    std::int64_t run_length = 0;
    std::int64_t run_count = 0;
    int rounds = 0;
  };
  std::vector<Row> rows;
  int total_rounds() const;
};

StageTable schedule_stage_table(int n);

}  // namespace knets
