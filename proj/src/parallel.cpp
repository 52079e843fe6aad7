#include "knets/parallel.hpp"

#include <bit>
#include <string>

namespace knets {

namespace {

// ceil(log2 x) for x >= 1.
int ceil_log2(int x) {
  return x <= 1 ? 0 : static_cast<int>(std::bit_width(static_cast<unsigned>(x - 1)));
}

// Levels of a valley span: pair lines d apart, d = half the enclosing power
// of two, then recurse. The left half is exactly d lines, so its levels form
// a full half-cleaner cascade and every depth below gets pairs. One level
// per depth; blocks at the same depth never overlap.
void emit_valley(int base, int len, std::size_t depth,
                 std::vector<std::vector<std::pair<int, int>>>& rounds) {
  if (len <= 1) return;
  const int d = static_cast<int>(std::bit_ceil(static_cast<unsigned>(len)) >> 1);
  auto& round = rounds[depth];
  for (int i = 0; i < len - d; ++i) round.emplace_back(base + i, base + i + d);
  emit_valley(base, d, depth + 1, rounds);
  emit_valley(base + d, len - d, depth + 1, rounds);
}

}  // namespace

std::size_t RoundSchedule::comparison_count() const {
  std::size_t total = 0;
  for (const auto& round : rounds) total += round.size();
  return total;
}

void RoundSchedule::validate() const {
  if (width < 0) throw StructuralError("negative width");
  std::vector<char> used(static_cast<std::size_t>(width));
  for (const auto& round : rounds) {
    if (round.empty()) throw StructuralError("empty round");
    std::fill(used.begin(), used.end(), 0);
    for (auto [i, j] : round) {
      if (i < 0 || j >= width || i >= j)
        throw StructuralError("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") is not ascending inside [0, " + std::to_string(width) + ")");
      if (used[static_cast<std::size_t>(i)] || used[static_cast<std::size_t>(j)])
        throw StructuralError("line used twice in one round");
      used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = 1;
    }
  }
}

Network RoundSchedule::to_network() const {
  validate();
  Network net;
  net.width = width;
  std::vector<std::size_t> marks;
  for (const auto& round : rounds) {
    if (!net.comparators.empty()) marks.push_back(net.comparators.size());
    for (auto [i, j] : round) net.comparators.push_back(Comparator{{i, j}});
  }
  if (!marks.empty()) net.round_marks = std::move(marks);
  return net;
}

KeySequence apply_schedule(KeySequence seq, const RoundSchedule& sched) {
  apply_schedule_inplace(std::span<Key>(seq), sched);
  return seq;
}

RoundSchedule valley_merge_schedule(const MergeSpec& spec) {
  if (spec.a_len < 1 || spec.b_len < spec.a_len)
    throw ParameterError("valley merge requires 1 <= a_len <= b_len");
  if (spec.base < 0) throw ParameterError("negative base");
  const int m = spec.a_len + spec.b_len;
  const int width = spec.width == 0 ? spec.base + m : spec.width;
  if (width < spec.base + m) throw ParameterError("width too small for the merge span");
  RoundSchedule sched;
  sched.width = width;
  sched.rounds.resize(static_cast<std::size_t>(ceil_log2(m)));
  emit_valley(spec.base, m, 0, sched.rounds);
  return sched;
}

RoundSchedule parallel_merge_sort_schedule(int n) {
  if (n < 1) throw ParameterError("n must be >= 1");
  RoundSchedule sched;
  sched.width = n;
  for (int run = 1; run < n; run *= 2) {
    // Stage: merge pairs of ascending runs of length `run` (the trailing
    // run may be shorter). One junction round folds each right run against
    // the end of its left run, leaving the left block closed under rotation
    // of its bitonic form and the right block a valley; the valley levels
    // finish both. Costs 1 + ceil(log2 run) rounds.
    const std::size_t base_round = sched.rounds.size();
    sched.rounds.resize(base_round + 1 + static_cast<std::size_t>(ceil_log2(run)));
    for (int base = 0; base + run < n; base += 2 * run) {
      const int q = std::min(run, n - (base + run));
      auto& junction = sched.rounds[base_round];
      for (int t = 0; t < q; ++t) junction.emplace_back(base + run - 1 - t, base + run + t);
      emit_valley(base, run, base_round + 1, sched.rounds);
      emit_valley(base + run, q, base_round + 1, sched.rounds);
    }
  }
  return sched;
}

int StageTable::total_rounds() const {
  int total = 0;
  for (const Row& row : rows) total += row.rounds;
  return total;
}

StageTable schedule_stage_table(int n) {
  if (n < 1 || !std::has_single_bit(static_cast<unsigned>(n)))
    throw ParameterError("stage table requires n to be a power of two");
  StageTable table;
  table.rows.push_back({1, n, 0});
  int stage = 1;
  for (int run = 2; run <= n; run *= 2, ++stage)
    table.rows.push_back({run, n / run, stage});
  return table;
}

}  // namespace knets
