#include "knets/bounds.hpp"

#include <bit>
#include <string>

namespace knets {

namespace detail {

std::uint64_t jacobsthal(int k) {
  // 1, 3, 5, 11, 21, ... : t(k) = t(k-1) + 2 t(k-2) = (2^(k+1) + (-1)^k) / 3.
  std::uint64_t prev = 1, cur = 1;  // t(0) = t(1) = 1
  for (int i = 2; i <= k; ++i) {
    const std::uint64_t next = cur + 2 * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace detail

namespace {

// Just enough unsigned bignum for bit_length(n! - 1).
struct BigNat {
  std::vector<std::uint32_t> limbs;  // little-endian base 2^32, no leading zeros

  static BigNat one() { return BigNat{{1}}; }

  void mul(std::uint32_t m) {
    std::uint64_t carry = 0;
    for (std::uint32_t& limb : limbs) {
      const std::uint64_t v = std::uint64_t{limb} * m + carry;
      limb = static_cast<std::uint32_t>(v);
      carry = v >> 32;
    }
    while (carry) {
      limbs.push_back(static_cast<std::uint32_t>(carry));
      carry >>= 32;
    }
  }

  void sub_one() {  // requires value >= 1
    for (std::uint32_t& limb : limbs) {
      if (limb-- != 0) break;  // no borrow once a limb was nonzero
    }
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
  }

  std::int64_t bit_length() const {  // bits needed for the value; 0 for 0
    if (limbs.empty()) return 0;
    return static_cast<std::int64_t>(limbs.size() - 1) * 32 + std::bit_width(limbs.back());
  }
};

}  // namespace

BoundsReport comparison_bounds(int n) {
  if (n < 1 || n > 100'000) throw ParameterError("comparison_bounds requires 1 <= n <= 100000");
  BoundsReport rep;
  rep.n = n;

  // ceil(log2 n!) = bit_length(n! - 1).
  BigNat fact = BigNat::one();
  for (int k = 2; k <= n; ++k) fact.mul(static_cast<std::uint32_t>(k));
  fact.sub_one();
  rep.lower = fact.bit_length();

  // Sum of ceil(log2 (3k/4)), one term per k; each term is
  // bit_length(3k - 1) - 2. The k = 1 term would be 0, so start at 2.
  std::int64_t upper = 0;
  for (int k = 2; k <= n; ++k)
    upper += std::bit_width(static_cast<std::uint64_t>(3 * static_cast<std::int64_t>(k) - 1)) - 2;
  rep.upper = upper;
  return rep;
}

CountingSortRun merge_insertion_sort(const KeySequence& input) {
  CountingSortRun run;
  run.input = input;
  run.output = merge_insertion_sorted(input, run.comparisons);
  return run;
}

std::pair<bool, std::uint64_t> is_sorted_scan(std::span<const Key> seq) {
  std::uint64_t comparisons = 0;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    ++comparisons;
    if (seq[i] < seq[i - 1]) return {false, comparisons};
  }
  return {true, comparisons};
}

}  // namespace knets
