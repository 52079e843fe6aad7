#include "knets/construct.hpp"

#include <numeric>
#include <string>

namespace knets {

Rational Rational::reduced(long long num, long long den) {
  if (den == 0) throw ParameterError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

namespace {

Comparator window(int begin, int end) {
  Comparator c;
  c.lines.resize(static_cast<std::size_t>(end - begin));
  std::iota(c.lines.begin(), c.lines.end(), begin);
  return c;
}

}  // namespace

Network triangle(int n, int k) {
  if (k < 2 || k > n)
    throw ParameterError("triangle requires 2 <= k <= n, got n=" + std::to_string(n) +
                         " k=" + std::to_string(k));
  Network net;
  net.width = n;
  for (int p = n; p >= k; --p) {
    int start = 0;
    while (start + k < p) {
      net.comparators.push_back(window(start, start + k));
      start += k - 1;
    }
    net.comparators.push_back(window(start, p));
  }
  return net;
}

Rational triangle_size_formula(int n, int k) {
  if (k < 2 || k > n)
    throw ParameterError("triangle_size_formula requires 2 <= k <= n");
  long long nn = n, kk = k;
  return Rational::reduced(nn * (nn - 1) - (kk - 1) * (kk - 2), 2 * (kk - 1));
}

PassScheme stooge_scheme(int n, StoogeOrder order) {
  if (n < 3 || n % 3 != 0)
    throw ParameterError("stooge_scheme requires n >= 3 divisible by 3, got " +
                         std::to_string(n));
  const int third = n / 3;
  if (order == StoogeOrder::LastFirstLast) return PassScheme{n, 2 * third, {third, 0, third}};
  return PassScheme{n, 2 * third, {0, third, 0}};
}

Network pass_scheme_to_network(const PassScheme& scheme) {
  if (scheme.window < 2 || scheme.window > scheme.n)
    throw ParameterError("pass window must lie in [2, n]");
  Network net;
  net.width = scheme.n;
  net.comparators.reserve(scheme.offsets.size());
  for (int off : scheme.offsets) {
    if (off < 0 || off + scheme.window > scheme.n)
      throw ParameterError("pass offset " + std::to_string(off) + " out of bounds");
    net.comparators.push_back(window(off, off + scheme.window));
  }
  return net;
}

}  // namespace knets
