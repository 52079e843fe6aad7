#pragma once

#include <vector>

#include "knets/net.hpp"

namespace knets {

/// Exact rational, reduced, denominator > 0.
struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational reduced(long long num, long long den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

/// Triangle network on n lines built from k-sorters, 2 <= k <= n.
///
/// For each prefix length p = n down to k it lays a chain of contiguous
/// windows over [0, p): full k-windows advancing by k-1 so consecutive
/// windows share one line, then a final window ending at p (possibly
/// shorter, never shorter than 2). Each chain carries the prefix maximum
/// to line p-1, so the chains select maxima one line at a time; the last
/// chain is the single window [0, k). Size is sum over p of
/// ceil((p-1)/(k-1)).
Network triangle(int n, int k);

/// The size the triangle would have if every chain cost exactly
/// (p-1)/(k-1) windows: (n(n-1) - (k-1)(k-2)) / (2(k-1)) as an exact
/// rational. Matches triangle(n, k).size() precisely when k == 2, and is
/// a lower bound otherwise (ceilings round each chain up).
Rational triangle_size_formula(int n, int k);

/// A sequence of equal-width sorting passes over one row of n lines: pass
/// i sorts the window [offsets[i], offsets[i] + window).
struct PassScheme {
  int n = 0;
  int window = 0;
  std::vector<int> offsets;

  bool operator==(const PassScheme&) const = default;
};

enum class StoogeOrder {
  FirstLastFirst,  // offsets {0, n/3, 0}
  LastFirstLast,   // offsets {n/3, 0, n/3}
};

/// Three passes of window 2n/3. Requires n >= 3 divisible by 3. The overlap
/// of two thirds between consecutive passes is what lets three passes sort;
/// both pass orders work.
PassScheme stooge_scheme(int n, StoogeOrder order = StoogeOrder::FirstLastFirst);

/// Lowers a pass scheme to a network of one comparator per pass. Throws
/// ParameterError if the scheme is malformed (window outside [2, n] or an
/// offset putting a window out of bounds).
Network pass_scheme_to_network(const PassScheme& scheme);

}  // namespace knets
