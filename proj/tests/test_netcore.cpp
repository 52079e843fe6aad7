#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdint>
#include <sstream>

#include "doctest.h"
#include "knets/knet_io.hpp"
#include "knets/net.hpp"

using namespace knets;

namespace {

// Deterministic cross-platform generator for property inputs.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, bound), bound <= 2^32; modulo bias is irrelevant here
  int below(int bound) { return static_cast<int>(next() % static_cast<std::uint64_t>(bound)); }
};

Network random_network(SplitMix64& rng, int width, int size, int max_arity) {
  Network net;
  net.width = width;
  for (int i = 0; i < size; ++i) {
    const int arity = 2 + rng.below(max_arity - 1);
    std::vector<int> pool(static_cast<std::size_t>(width));
    for (int j = 0; j < width; ++j) pool[static_cast<std::size_t>(j)] = j;
    // partial Fisher-Yates, then sort the chosen prefix
    for (int j = 0; j < arity; ++j)
      std::swap(pool[static_cast<std::size_t>(j)],
                pool[static_cast<std::size_t>(j + rng.below(width - j))]);
    std::vector<int> lines(pool.begin(), pool.begin() + arity);
    std::sort(lines.begin(), lines.end());
    net.comparators.push_back(Comparator{std::move(lines)});
  }
  return net;
}

}  // namespace

TEST_CASE("comparator validation") {
  CHECK_THROWS_AS((Comparator{{0}}.validate(3)), StructuralError);
  CHECK_THROWS_AS((Comparator{{1, 0}}.validate(3)), StructuralError);
  CHECK_THROWS_AS((Comparator{{0, 0}}.validate(3)), StructuralError);
  CHECK_THROWS_AS((Comparator{{0, 3}}.validate(3)), StructuralError);
  CHECK_THROWS_AS((Comparator{{-1, 0}}.validate(3)), StructuralError);
  CHECK_NOTHROW(Comparator{{0, 2}}.validate(3));
}

TEST_CASE("apply_comparator sorts the window in place") {
  CHECK(apply_comparator({5, 3, 1}, Comparator{{0, 1}}) == KeySequence{3, 5, 1});
  CHECK(apply_comparator({0, 1, 0}, Comparator{{1, 2}}) == KeySequence{0, 0, 1});
  CHECK(apply_comparator({4, 9, 2, 7, 1}, Comparator{{0, 2, 4}}) == KeySequence{1, 9, 2, 7, 4});
  CHECK_THROWS_AS(apply_comparator({1, 2}, Comparator{{0, 2}}), StructuralError);
}

TEST_CASE("apply_network runs comparators in order") {
  const Network tri3{3, {Comparator{{0, 1}}, Comparator{{1, 2}}, Comparator{{0, 1}}}, {}};
  CHECK(apply_network({3, 2, 1}, tri3) == KeySequence{1, 2, 3});

  const Network empty{4, {}, {}};
  CHECK(apply_network({4, 2, 3, 1}, empty) == KeySequence{4, 2, 3, 1});

  const Network one{3, {Comparator{{0, 1}}}, {}};
  CHECK(apply_network({0, 1, 0}, one) == KeySequence{0, 1, 0});

  CHECK_THROWS_AS(apply_network({1, 2}, tri3), StructuralError);
}

TEST_CASE("network structure validation") {
  Network net{3, {Comparator{{0, 1}}, Comparator{{1, 2}}}, {}};
  CHECK_NOTHROW(net.validate());
  CHECK(net.arity() == 2);
  CHECK(net.round_count() == 1);

  net.round_marks = std::vector<std::size_t>{1};
  CHECK_NOTHROW(net.validate());
  CHECK(net.round_count() == 2);

  net.round_marks = std::vector<std::size_t>{0};  // mark at 0 is not a boundary
  CHECK_THROWS_AS(net.validate(), StructuralError);
  net.round_marks = std::vector<std::size_t>{2};  // mark at size() leaves an empty round
  CHECK_THROWS_AS(net.validate(), StructuralError);

  // overlapping lines within one round
  Network clash{3, {Comparator{{0, 1}}, Comparator{{1, 2}}}, std::vector<std::size_t>{}};
  CHECK_THROWS_AS(clash.validate(), StructuralError);
}

TEST_CASE("mask encoding: line 0 is the most significant bit") {
  // (0,1,0) at width 3 is integer 2, so integer order is lexicographic order.
  CHECK(mask_from_sequence({0, 1, 0}) == 2);
  CHECK(mask_from_sequence({1, 0, 0}) == 4);
  CHECK(sequence_from_mask(2, 3) == KeySequence{0, 1, 0});
  CHECK(mask_sorted(0b011));
  CHECK(mask_sorted(0));
  CHECK(!mask_sorted(0b010));
  for (std::uint64_t m = 0; m < 32; ++m)
    CHECK(mask_from_sequence(sequence_from_mask(m, 5)) == m);
}

TEST_CASE("MaskNetwork agrees with apply_network on every 0-1 input") {
  SplitMix64 rng{0x6b8b4567327b23c6ULL};
  for (int trial = 0; trial < 20; ++trial) {
    const int width = 2 + rng.below(7);
    const Network net = random_network(rng, width, 1 + rng.below(10), std::min(width, 4));
    const MaskNetwork mn(net);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << width); ++m) {
      const KeySequence out = apply_network(sequence_from_mask(m, width), net);
      CHECK(mn.apply(m) == mask_from_sequence(out));
    }
  }
}

TEST_CASE("multiset preservation and window-sorted postcondition") {
  SplitMix64 rng{0x9e3779b97f4a7c15ULL};
  for (int trial = 0; trial < 50; ++trial) {
    const int width = 2 + rng.below(8);
    const Network net = random_network(rng, width, 1 + rng.below(8), std::min(width, 5));
    KeySequence seq(static_cast<std::size_t>(width));
    for (auto& v : seq) v = static_cast<Key>(rng.below(10));

    KeySequence sorted_copy = seq;
    std::sort(sorted_copy.begin(), sorted_copy.end());

    KeySequence work = seq;
    for (const Comparator& c : net.comparators) {
      apply_comparator_inplace(std::span<Key>(work), c);
      for (std::size_t i = 1; i < c.lines.size(); ++i)
        CHECK(work[static_cast<std::size_t>(c.lines[i - 1])] <=
              work[static_cast<std::size_t>(c.lines[i])]);
    }
    KeySequence out = work;
    std::sort(out.begin(), out.end());
    CHECK(out == sorted_copy);
  }
}

TEST_CASE("0-1 monotonicity: pointwise order is preserved") {
  SplitMix64 rng{0x2545f4914f6cdd1dULL};
  for (int trial = 0; trial < 10; ++trial) {
    const int width = 3 + rng.below(5);
    const Network net = random_network(rng, width, 1 + rng.below(8), 3);
    const MaskNetwork mn(net);
    const std::uint64_t total = std::uint64_t{1} << width;
    for (std::uint64_t x = 0; x < total; ++x) {
      const std::uint64_t y = x | (std::uint64_t{1} << rng.below(width));
      // x <= y pointwise by construction
      const std::uint64_t fx = mn.apply(x), fy = mn.apply(y);
      CHECK((fx & ~fy) == 0);  // fx <= fy pointwise
    }
  }
}

TEST_CASE("idempotence on sorted input") {
  SplitMix64 rng{0xdeadbeefcafef00dULL};
  for (int trial = 0; trial < 20; ++trial) {
    const int width = 2 + rng.below(8);
    const Network net = random_network(rng, width, rng.below(8), std::min(width, 4));
    KeySequence seq(static_cast<std::size_t>(width));
    for (auto& v : seq) v = static_cast<Key>(rng.below(6));
    std::sort(seq.begin(), seq.end());
    CHECK(apply_network(seq, net) == seq);
  }
}

TEST_CASE("knet parse: the documented example") {
  const Network net = parse_network("knet 1\nn 3\nc 0 1\nc 1 2\nc 0 1\n");
  CHECK(net.width == 3);
  CHECK(net.size() == 3);
  CHECK(net.comparators[0] == Comparator{{0, 1}});
  CHECK(net.comparators[1] == Comparator{{1, 2}});
  CHECK(net.comparators[2] == Comparator{{0, 1}});
  CHECK(!net.round_marks);
}

TEST_CASE("knet parse errors carry line numbers") {
  auto expect_error_line = [](const std::string& text, int line) {
    try {
      parse_network(text);
      FAIL("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line == line);
    }
  };
  expect_error_line("knet 2\nn 2\n", 1);
  expect_error_line("n 2\nknet 1\n", 1);
  expect_error_line("knet 1\nc 0 1\n", 2);
  expect_error_line("knet 1\nn 2\nc 0 2\n", 3);          // index 2 >= width 2
  expect_error_line("knet 1\nn 2\nc 1 0\n", 3);          // not increasing
  expect_error_line("knet 1\nn 2\nc 0\n", 3);            // fewer than 2 lines
  expect_error_line("knet 1\nn 3\nr\n", 3);              // round before any comparator
  expect_error_line("knet 1\nn 3\nc 0 1\nr\nr\n", 5);    // empty round
  expect_error_line("knet 1\nn 3\nc 0 1\nr\n", 4);       // trailing separator
  expect_error_line("knet 1\nn 3\nc 0 1\nx 1 2\n", 4);   // unknown directive
  expect_error_line("knet 1\nn 3\nc 0 1\nc 1 2\n\nq\n", 6);
  // duplicate line inside a declared round, caught at the separator or at EOF
  expect_error_line("knet 1\nn 3\nc 0 1\nc 1 2\nr\nc 0 1\n", 4);
  expect_error_line("knet 1\nn 3\nc 0 1\nr\nc 1 2\nc 0 2\n", 6);
}

TEST_CASE("line reuse without round separators is a plain sequence") {
  const Network net = parse_network("knet 1\nn 2\nc 0 1\nc 0 1\n");
  CHECK(net.size() == 2);
  CHECK(!net.round_marks);
}

TEST_CASE("knet comments and blank lines are ignored") {
  const Network net = parse_network("# header comment\nknet 1\n\nn 2\n# body\nc 0 1\n");
  CHECK(net.width == 2);
  CHECK(net.size() == 1);
}

TEST_CASE("knet round separators become round marks") {
  const Network net = parse_network("knet 1\nn 4\nc 0 1\nc 2 3\nr\nc 1 2\n");
  REQUIRE(net.round_marks.has_value());
  CHECK(*net.round_marks == std::vector<std::size_t>{2});
  CHECK(net.round_count() == 2);
}

TEST_CASE("knet write/read round-trip is the identity") {
  SplitMix64 rng{0x123456789abcdef0ULL};
  for (int trial = 0; trial < 30; ++trial) {
    const int width = 2 + rng.below(9);
    Network net = random_network(rng, width, 1 + rng.below(12), std::min(width, 4));
    const std::string text = to_knet(net);
    CHECK(parse_network(text) == net);
    CHECK(to_knet(parse_network(text)) == text);  // write∘read is canonical
  }
  // and with round marks, via a hand-made two-round network
  Network marked{5, {Comparator{{0, 1}}, Comparator{{2, 4}}, Comparator{{1, 2}}},
                 std::vector<std::size_t>{2}};
  CHECK(parse_network(to_knet(marked)) == marked);
}

TEST_CASE("knet writer emits LF-only canonical text") {
  const Network net{3, {Comparator{{0, 2}}, Comparator{{0, 1}}}, std::vector<std::size_t>{1}};
  CHECK(to_knet(net) == "knet 1\nn 3\nc 0 2\nr\nc 0 1\n");
}
