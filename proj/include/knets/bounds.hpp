#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "knets/errors.hpp"
#include "knets/net.hpp"

namespace knets {

/// Worst-case comparison counts for sorting n keys: the information-theoretic
/// floor ceil(log2 n!) computed exactly, and the merge-insertion ceiling
/// sum over k = 2..n of ceil(log2 (3k/4)).
struct BoundsReport {
  int n = 0;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
};

BoundsReport comparison_bounds(int n);

/// One merge-insertion run over integer keys: the sorted output and the
/// number of key comparisons spent.
struct CountingSortRun {
  KeySequence input;
  KeySequence output;
  std::uint64_t comparisons = 0;
};

CountingSortRun merge_insertion_sort(const KeySequence& input);

/// Sortedness check by one left-to-right scan. Returns whether the span is
/// nondecreasing and the comparisons used: max(len-1, 0) on success, the
/// count through the first inversion otherwise.
std::pair<bool, std::uint64_t> is_sorted_scan(std::span<const Key> seq);

namespace detail {

// Insertion group boundaries 1, 3, 5, 11, 21, ... : each group, inserted
// highest index first, keeps every binary insertion inside a window of
// 2^k - 1 slots.
std::uint64_t jacobsthal(int k);

// Merge-insertion over indices into `keys`. Pair up items, order the pair
// maxima recursively, then binary-insert each pair minimum (and the unpaired
// straggler) in groups, highest index first, so each insertion searches a
// window known to cost at most k comparisons.
template <class T, class Less>
std::vector<std::size_t> fj_order(const std::vector<T>& keys, std::vector<std::size_t> items,
                                  Less& less) {
  if (items.size() <= 1) return items;
  const std::size_t pairs = items.size() / 2;
  const bool straggler = items.size() % 2 != 0;
  const std::size_t odd_item = straggler ? items.back() : 0;

  std::vector<std::size_t> maxima;
  maxima.reserve(pairs);
  std::vector<std::size_t> min_of(keys.size());
  for (std::size_t p = 0; p < pairs; ++p) {
    std::size_t a = items[2 * p], b = items[2 * p + 1];
    if (less(keys[b], keys[a])) std::swap(a, b);  // a <= b, ties keep order
    maxima.push_back(b);
    min_of[b] = a;
  }

  maxima = fj_order(keys, std::move(maxima), less);
  const std::size_t m = maxima.size();

  std::vector<std::size_t> chain;
  chain.reserve(items.size());
  chain.push_back(min_of[maxima[0]]);  // the smallest pair minimum is free
  chain.push_back(maxima[0]);
  std::vector<std::size_t> max_pos(m);  // position of maxima[i] in the chain
  max_pos[0] = 1;
  for (std::size_t i = 1; i < m; ++i) {
    chain.push_back(maxima[i]);
    max_pos[i] = chain.size() - 1;
  }

  const std::size_t pending = m - 1 + (straggler ? 1 : 0);  // minima 2..m, maybe the straggler
  std::uint64_t prev_t = 1;
  for (int k = 2; prev_t < pending + 1; ++k) {
    const std::uint64_t t = jacobsthal(k);
    std::size_t hi = static_cast<std::size_t>(std::min<std::uint64_t>(t, pending + 1));
    for (std::size_t i = hi; i > prev_t; --i) {
      // Pending item i: the minimum under maxima[i-1], or the straggler
      // (treated as item m+1, searched against the whole chain).
      std::size_t value;
      std::size_t window_end;
      if (i == m + 1) {
        value = odd_item;
        window_end = chain.size();
      } else {
        value = min_of[maxima[i - 1]];
        window_end = max_pos[i - 1];
      }
      std::size_t lo = 0, h = window_end;
      while (lo < h) {
        const std::size_t mid = (lo + h) / 2;
        if (less(keys[value], keys[chain[mid]]))
          h = mid;
        else
          lo = mid + 1;
      }
      chain.insert(chain.begin() + static_cast<std::ptrdiff_t>(lo), value);
      for (std::size_t j = 0; j < m; ++j)
        if (max_pos[j] >= lo) ++max_pos[j];
    }
    prev_t = t;
  }
  return chain;
}

}  // namespace detail

/// Generic merge-insertion sort; counts every call of `less`.
template <class T, class Less = std::less<T>>
std::vector<T> merge_insertion_sorted(std::vector<T> keys, std::uint64_t& comparisons,
                                      Less less = {}) {
  comparisons = 0;
  std::vector<std::size_t> items(keys.size());
  std::iota(items.begin(), items.end(), std::size_t{0});
  auto counting = [&comparisons, &less](const T& a, const T& b) {
    ++comparisons;
    return less(a, b);
  };
  const auto order = detail::fj_order(keys, std::move(items), counting);
  std::vector<T> out;
  out.reserve(keys.size());
  for (std::size_t i : order) out.push_back(std::move(keys[i]));
  return out;
}

}  // namespace knets
