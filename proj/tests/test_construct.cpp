#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "knets/construct.hpp"
#include "knets/verify.hpp"

using namespace knets;

namespace {

// Independent size oracle: one chain per prefix length p = n..k, each chain
// ceil((p-1)/(k-1)) windows.
long long triangle_size_oracle(int n, int k) {
  long long total = 0;
  for (int p = k; p <= n; ++p) total += (p - 1 + (k - 2)) / (k - 1);
  return total;
}

}  // namespace

TEST_CASE("triangle parameter domain") {
  CHECK_THROWS_AS(triangle(1, 2), ParameterError);
  CHECK_THROWS_AS(triangle(3, 1), ParameterError);
  CHECK_THROWS_AS(triangle(3, 4), ParameterError);
  CHECK_NOTHROW(triangle(2, 2));
}

TEST_CASE("triangle(3,2) is the documented 3-comparator network") {
  const Network net = triangle(3, 2);
  REQUIRE(net.size() == 3);
  CHECK(net.comparators[0] == Comparator{{0, 1}});
  CHECK(net.comparators[1] == Comparator{{1, 2}});
  CHECK(net.comparators[2] == Comparator{{0, 1}});
  CHECK(apply_network({3, 2, 1}, net) == KeySequence{1, 2, 3});
}

TEST_CASE("triangle window layout: chains overlap by one line") {
  const Network net = triangle(5, 3);
  // p=5: [0,3),[2,5); p=4: [0,3),[2,4); p=3: [0,3)
  REQUIRE(net.size() == 5);
  CHECK(net.comparators[0] == Comparator{{0, 1, 2}});
  CHECK(net.comparators[1] == Comparator{{2, 3, 4}});
  CHECK(net.comparators[2] == Comparator{{0, 1, 2}});
  CHECK(net.comparators[3] == Comparator{{2, 3}});
  CHECK(net.comparators[4] == Comparator{{0, 1, 2}});
}

TEST_CASE("triangle sizes match the chain-count oracle") {
  for (int n = 2; n <= 14; ++n)
    for (int k = 2; k <= n; ++k) {
      const Network net = triangle(n, k);
      CHECK(static_cast<long long>(net.size()) == triangle_size_oracle(n, k));
      CHECK(net.width == n);
      CHECK(net.arity() == k);
      CHECK_NOTHROW(net.validate());
    }
}

TEST_CASE("triangle k=2 size is n(n-1)/2 and k=n is a single sorter") {
  for (int n = 2; n <= 16; ++n)
    CHECK(triangle(n, 2).size() == static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int k = 2; k <= 10; ++k) {
    const Network net = triangle(k, k);
    CHECK(net.size() == 1);
    CHECK(net.comparators[0].size() == k);
  }
}

TEST_CASE("triangle k=3 size is floor(n^2/4) - 1") {
  // Chains cost ceil((p-1)/2) = floor(p/2), so the sum telescopes to
  // floor(n^2/4) - 1 exactly; the density target n^2/4 is approached from
  // below, never reached.
  for (int n = 3; n <= 40; ++n) {
    const auto size = static_cast<long long>(triangle(n, 3).size());
    CHECK(size == static_cast<long long>(n) * n / 4 - 1);
    const double ratio = static_cast<double>(size) / (static_cast<double>(n) * n / 4.0);
    if (n >= 4) CHECK(ratio > 0.5);  // n=3 sits at 1/2.25, below the trend
    CHECK(ratio < 1.5);
  }
}

TEST_CASE("triangle sorts: exhaustive 0-1 verification at small sizes") {
  for (int n = 2; n <= 10; ++n)
    for (int k = 2; k <= n; ++k) {
      const VerificationReport rep = zero_one_verify(triangle(n, k));
      CHECK(rep.valid);
      CHECK(rep.inputs_tested == (std::uint64_t{1} << n));
    }
}

TEST_CASE("triangle_size_formula is exact for k=2 and a lower bound otherwise") {
  CHECK(triangle_size_formula(8, 3) == Rational{27, 2});
  CHECK(triangle_size_formula(4, 2) == Rational{6, 1});
  CHECK(triangle_size_formula(3, 3) == Rational{1, 1});
  for (int n = 2; n <= 32; ++n) {
    const Rational r2 = triangle_size_formula(n, 2);
    CHECK(r2.den == 1);
    CHECK(r2.num == static_cast<long long>(n) * (n - 1) / 2);
  }
  for (int n = 3; n <= 32; ++n)
    for (int k = 3; k <= n; ++k) {
      const double formula = triangle_size_formula(n, k).value();
      const double size = static_cast<double>(triangle(n, k).size());
      CHECK(formula <= size + 1e-9);
      // each of the n-k+1 chains rounds up by less than 1
      CHECK(size < formula + (n - k + 1));
    }
}

TEST_CASE("Rational reduces and normalizes sign") {
  CHECK(Rational::reduced(6, 4) == Rational{3, 2});
  CHECK(Rational::reduced(-6, 4) == Rational{-3, 2});
  CHECK(Rational::reduced(6, -4) == Rational{-3, 2});
  CHECK(Rational::reduced(0, 7) == Rational{0, 1});
  CHECK_THROWS_AS(Rational::reduced(1, 0), ParameterError);
  CHECK(Rational{3, 2}.value() == doctest::Approx(1.5));
}

TEST_CASE("stooge scheme shapes") {
  const PassScheme s9 = stooge_scheme(9);
  CHECK(s9.n == 9);
  CHECK(s9.window == 6);
  CHECK(s9.offsets == std::vector<int>{0, 3, 0});

  const PassScheme s9b = stooge_scheme(9, StoogeOrder::LastFirstLast);
  CHECK(s9b.offsets == std::vector<int>{3, 0, 3});

  CHECK_THROWS_AS(stooge_scheme(4), ParameterError);
  CHECK_THROWS_AS(stooge_scheme(0), ParameterError);
  CHECK_THROWS_AS(stooge_scheme(-3), ParameterError);
}

TEST_CASE("both stooge orders sort, for every multiple of 3 up to 18") {
  for (int n = 3; n <= 18; n += 3) {
    for (StoogeOrder order : {StoogeOrder::FirstLastFirst, StoogeOrder::LastFirstLast}) {
      const Network net = pass_scheme_to_network(stooge_scheme(n, order));
      CHECK(net.size() == 3);
      CHECK(zero_one_verify(net).valid);
    }
  }
}

TEST_CASE("pass_scheme_to_network validates and lowers") {
  const Network net = pass_scheme_to_network(PassScheme{5, 3, {0, 2, 1}});
  REQUIRE(net.size() == 3);
  CHECK(net.width == 5);
  CHECK(net.comparators[0] == Comparator{{0, 1, 2}});
  CHECK(net.comparators[1] == Comparator{{2, 3, 4}});
  CHECK(net.comparators[2] == Comparator{{1, 2, 3}});

  CHECK_THROWS_AS(pass_scheme_to_network(PassScheme{5, 1, {0}}), ParameterError);
  CHECK_THROWS_AS(pass_scheme_to_network(PassScheme{5, 6, {0}}), ParameterError);
  CHECK_THROWS_AS(pass_scheme_to_network(PassScheme{5, 3, {3}}), ParameterError);
  CHECK_THROWS_AS(pass_scheme_to_network(PassScheme{5, 3, {-1}}), ParameterError);
}

TEST_CASE("a scheme with too little overlap does not sort") {
  // Two half-width passes cannot sort; the classic counterexample needs the
  // middle element to cross both halves.
  const Network net = pass_scheme_to_network(PassScheme{4, 2, {0, 2}});
  const VerificationReport rep = zero_one_verify(net);
  CHECK(!rep.valid);
  REQUIRE(rep.counterexample_input.has_value());
  // The reported counterexample is the lexicographically smallest.
  CHECK(apply_network(*rep.counterexample_input, net) == *rep.counterexample_output);
}
