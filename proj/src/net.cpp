#include "knets/net.hpp"

#include <bit>
#include <string>

namespace knets {

void Comparator::validate(int width) const {
  if (lines.size() < 2) throw StructuralError("comparator has fewer than 2 lines");
  int prev = -1;
  for (int line : lines) {
    if (line < 0 || line >= width)
      throw StructuralError("comparator line " + std::to_string(line) +
                            " outside [0, " + std::to_string(width) + ")");
    if (line <= prev) throw StructuralError("comparator lines not strictly increasing");
    prev = line;
  }
}

int Network::arity() const {
  int a = 0;
  for (const Comparator& c : comparators) a = std::max(a, c.size());
  return a;
}

std::size_t Network::round_count() const {
  if (comparators.empty() && (!round_marks || round_marks->empty())) return 0;
  return (round_marks ? round_marks->size() : 0) + 1;
}

std::vector<std::pair<std::size_t, std::size_t>> Network::rounds() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (comparators.empty() && (!round_marks || round_marks->empty())) return out;
  std::size_t begin = 0;
  if (round_marks) {
    for (std::size_t mark : *round_marks) {
      out.emplace_back(begin, mark);
      begin = mark;
    }
  }
  out.emplace_back(begin, comparators.size());
  return out;
}

void Network::validate() const {
  if (width < 0) throw StructuralError("negative width");
  for (const Comparator& c : comparators) c.validate(width);
  if (!round_marks) return;
  std::size_t prev = 0;
  for (std::size_t mark : *round_marks) {
    if (mark == 0 || mark >= comparators.size() || mark <= prev)
      throw StructuralError("round marks must be strictly increasing inside (0, size)");
    prev = mark;
  }
  // No line may be touched twice within a round.
  std::vector<char> used(static_cast<std::size_t>(width));
  for (auto [begin, end] : rounds()) {
    std::fill(used.begin(), used.end(), 0);
    for (std::size_t i = begin; i < end; ++i) {
      for (int line : comparators[i].lines) {
        if (used[static_cast<std::size_t>(line)])
          throw StructuralError("line " + std::to_string(line) + " used twice in one round");
        used[static_cast<std::size_t>(line)] = 1;
      }
    }
  }
}

KeySequence apply_comparator(KeySequence seq, const Comparator& c) {
  apply_comparator_inplace(std::span<Key>(seq), c);
  return seq;
}

KeySequence apply_network(KeySequence seq, const Network& net) {
  apply_network_inplace(std::span<Key>(seq), net);
  return seq;
}

std::uint64_t mask_from_sequence(const KeySequence& seq) {
  const int w = static_cast<int>(seq.size());
  if (w > kMaxMaskWidth) throw ParameterError("sequence too wide for mask encoding");
  std::uint64_t mask = 0;
  for (int i = 0; i < w; ++i) {
    Key v = seq[static_cast<std::size_t>(i)];
    if (v != 0 && v != 1) throw ParameterError("sequence is not 0-1");
    if (v) mask |= std::uint64_t{1} << (w - 1 - i);
  }
  return mask;
}

KeySequence sequence_from_mask(std::uint64_t mask, int width) {
  if (width < 0 || width > kMaxMaskWidth) throw ParameterError("bad mask width");
  KeySequence seq(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i)
    seq[static_cast<std::size_t>(i)] = (mask >> (width - 1 - i)) & 1;
  return seq;
}

MaskNetwork::MaskNetwork(const Network& net) : width_(net.width) {
  net.validate();
  if (net.width > kMaxMaskWidth) throw ParameterError("network too wide for mask evaluation");
  windows_.reserve(net.comparators.size());
  for (const Comparator& c : net.comparators) {
    Window w{0, {0}};
    // Lines ascend, so their bit positions descend; accumulate from the
    // last line up to get the c lowest positions first.
    w.low.reserve(c.lines.size() + 1);
    for (auto it = c.lines.rbegin(); it != c.lines.rend(); ++it) {
      std::uint64_t bit = std::uint64_t{1} << (width_ - 1 - *it);
      w.all |= bit;
      w.low.push_back(w.low.back() | bit);
    }
    windows_.push_back(std::move(w));
  }
}

std::uint64_t MaskNetwork::apply(std::uint64_t mask) const {
  for (const Window& w : windows_) {
    int ones = std::popcount(mask & w.all);
    mask = (mask & ~w.all) | w.low[static_cast<std::size_t>(ones)];
  }
  return mask;
}

}  // namespace knets
