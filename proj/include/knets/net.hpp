#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "knets/errors.hpp"

namespace knets {

using Key = std::int64_t;
using KeySequence = std::vector<Key>;

/// One k-sorter. Applying it sorts the values on `lines` ascending (the
/// smallest value moves to the first listed line) and leaves every other
/// line untouched. Lines are 0-based, strictly increasing, and there are
/// at least two of them.
struct Comparator {
  std::vector<int> lines;

  int size() const { return static_cast<int>(lines.size()); }

  /// Throws StructuralError unless the comparator is well formed and all
  /// lines fall in [0, width).
  void validate(int width) const;

  bool operator==(const Comparator&) const = default;
};

/// A comparator network: a fixed width and an ordered list of comparators.
///
/// `round_marks` is the optional parallel structure. Disengaged means the
/// network is a plain sequence. Engaged means positions in it split the
/// comparator list into rounds: a mark at p starts a new round at
/// comparators[p]. Within a round no two comparators may share a line.
struct Network {
  int width = 0;
  std::vector<Comparator> comparators;
  std::optional<std::vector<std::size_t>> round_marks;

  std::size_t size() const { return comparators.size(); }

  /// Largest comparator size, or 0 for the empty network.
  int arity() const;

  /// Number of rounds; 1 for any nonempty unmarked network, 0 when empty.
  std::size_t round_count() const;

  /// Round boundaries as [begin, end) index pairs into `comparators`.
  std::vector<std::pair<std::size_t, std::size_t>> rounds() const;

  /// Throws StructuralError on any malformed piece: width < 0, bad
  /// comparator, marks not strictly increasing inside (0, size()), or a
  /// line touched twice within one round.
  void validate() const;

  bool operator==(const Network&) const = default;
};

/// Result of a verification run. `valid` means no counterexample was found
/// in the space that was examined; for exhaustive verifiers that is a proof.
/// `inputs_tested` counts inputs examined in canonical (sequential) order,
/// including the failing one.
struct VerificationReport {
  bool valid = false;
  std::uint64_t inputs_tested = 0;
  std::optional<KeySequence> counterexample_input;
  std::optional<KeySequence> counterexample_output;
};

namespace detail {

// Sorts the window values ascending, stably in original position order.
// Small gather/scatter buffer; comparator sizes are tiny in practice.
template <class T, class Less>
void sort_window(std::span<T> seq, const Comparator& c, Less&& less) {
  std::vector<T> buf;
  buf.reserve(c.lines.size());
  for (int line : c.lines) buf.push_back(std::move(seq[static_cast<std::size_t>(line)]));
  std::stable_sort(buf.begin(), buf.end(), less);
  std::size_t i = 0;
  for (int line : c.lines) seq[static_cast<std::size_t>(line)] = std::move(buf[i++]);
}

}  // namespace detail

/// Applies one comparator in place. Throws StructuralError if a line falls
/// outside the sequence.
template <class T, class Less = std::less<T>>
void apply_comparator_inplace(std::span<T> seq, const Comparator& c, Less less = {}) {
  c.validate(static_cast<int>(seq.size()));
  detail::sort_window(seq, c, less);
}

/// Applies a whole network in place. The sequence length must equal the
/// network width.
template <class T, class Less = std::less<T>>
void apply_network_inplace(std::span<T> seq, const Network& net, Less less = {}) {
  net.validate();
  if (static_cast<int>(seq.size()) != net.width)
    throw StructuralError("sequence length " + std::to_string(seq.size()) +
                          " does not match network width " + std::to_string(net.width));
  for (const Comparator& c : net.comparators) detail::sort_window(seq, c, less);
}

/// Value-returning conveniences over the in-place forms.
KeySequence apply_comparator(KeySequence seq, const Comparator& c);
KeySequence apply_network(KeySequence seq, const Network& net);

// ---------------------------------------------------------------------------
// Bit-parallel evaluation on 0-1 inputs.
//
// A 0-1 sequence of length w is packed into a mask with line 0 in the most
// significant of the w bits, so ascending mask order equals lexicographic
// order on sequences, and the sorted sequence with p ones is the mask
// (1 << p) - 1. Width is capped at 62 so counts fit comfortably in 64 bits.

inline constexpr int kMaxMaskWidth = 62;

std::uint64_t mask_from_sequence(const KeySequence& seq);
KeySequence sequence_from_mask(std::uint64_t mask, int width);

inline bool mask_sorted(std::uint64_t mask) {
  // Sorted ascending = all ones packed into the low bits.
  return (mask & (mask + 1)) == 0;
}

/// A network precompiled for mask evaluation. Applying a comparator to a
/// 0-1 input replaces the window bits with the bottom-justified pattern
/// holding the same number of ones.
class MaskNetwork {
 public:
  explicit MaskNetwork(const Network& net);

  int width() const { return width_; }
  std::uint64_t input_count() const { return std::uint64_t{1} << width_; }

  std::uint64_t apply(std::uint64_t mask) const;
  bool sorts(std::uint64_t mask) const { return mask_sorted(apply(mask)); }

 private:
  struct Window {
    std::uint64_t all;                   // union of the window's bit positions
    std::vector<std::uint64_t> low;      // low[c] = c lowest positions of the window
  };
  int width_;
  std::vector<Window> windows_;
};

}  // namespace knets
