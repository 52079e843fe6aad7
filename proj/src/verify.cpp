#include "knets/verify.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <string>
#include <thread>

namespace knets {

namespace {

using u128 = unsigned __int128;

// Longest pass sequence the search will consider; keeps decode buffers on
// the stack.
constexpr int kMaxSearchPasses = 64;

// Counts past this are only compared against 64-bit budgets, so clamping
// keeps (count << n) inside 128 bits without changing any comparison.
constexpr u128 kCountClamp = u128{1} << 80;

// ---------------------------------------------------------------------------
// Smallest i in [0, count) with pred(i), or nullopt. Workers scan disjoint
// ascending chunks and share a best-so-far bound, so the answer (and
// therefore every report built from it) is independent of thread count.
template <class Pred>
std::optional<std::uint64_t> first_index(std::uint64_t count, int threads, Pred&& pred) {
  if (threads < 1) throw ParameterError("threads must be >= 1");
  if (threads == 1 || count < 2048) {
    for (std::uint64_t i = 0; i < count; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }
  std::atomic<std::uint64_t> best{UINT64_MAX};
  const std::uint64_t chunk =
      (count + static_cast<std::uint64_t>(threads) - 1) / static_cast<std::uint64_t>(threads);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    const std::uint64_t b = chunk * static_cast<std::uint64_t>(t);
    if (b >= count) break;
    const std::uint64_t e = std::min(count, b + chunk);
    pool.emplace_back([&best, b, e, &pred] {
      for (std::uint64_t i = b; i < e; ++i) {
        // A hit at or before our chunk start beats anything we could find.
        if (best.load(std::memory_order_relaxed) <= b) return;
        if (pred(i)) {
          std::uint64_t cur = best.load(std::memory_order_relaxed);
          while (cur > i && !best.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  const std::uint64_t found = best.load();
  if (found == UINT64_MAX) return std::nullopt;
  return found;
}

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

}  // namespace

VerificationReport zero_one_verify(const Network& net, int threads) {
  if (net.width > kZeroOneWidthLimit)
    throw ResourceError("width " + std::to_string(net.width) +
                        " exceeds the exhaustive 0-1 limit of " +
                        std::to_string(kZeroOneWidthLimit) + "; use sampled verification");
  MaskNetwork mn(net);
  const std::uint64_t total = mn.input_count();
  auto fail = first_index(total, threads, [&mn](std::uint64_t m) { return !mn.sorts(m); });
  VerificationReport rep;
  if (!fail) {
    rep.valid = true;
    rep.inputs_tested = total;
    return rep;
  }
  rep.inputs_tested = *fail + 1;
  rep.counterexample_input = sequence_from_mask(*fail, net.width);
  rep.counterexample_output = sequence_from_mask(mn.apply(*fail), net.width);
  return rep;
}

VerificationReport zero_one_sample_verify(const Network& net, std::uint64_t samples,
                                          std::uint64_t seed) {
  MaskNetwork mn(net);
  const std::uint64_t all = mn.input_count() - 1;
  SplitMix64 rng{seed};
  VerificationReport rep;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t m = rng.next() & all;
    if (!mn.sorts(m)) {
      rep.inputs_tested = i + 1;
      rep.counterexample_input = sequence_from_mask(m, net.width);
      rep.counterexample_output = sequence_from_mask(mn.apply(m), net.width);
      return rep;
    }
  }
  rep.valid = true;
  rep.inputs_tested = samples;
  return rep;
}

VerificationReport permutation_verify(const Network& net, int width_limit) {
  if (width_limit < 0 || width_limit > 12)
    throw ParameterError("permutation width limit must lie in [0, 12]");
  if (net.width > width_limit)
    throw ResourceError("width " + std::to_string(net.width) +
                        " exceeds the permutation limit of " + std::to_string(width_limit));
  net.validate();
  KeySequence perm(static_cast<std::size_t>(net.width));
  std::iota(perm.begin(), perm.end(), Key{1});
  VerificationReport rep;
  std::uint64_t tested = 0;
  KeySequence out;
  do {
    ++tested;
    out = perm;
    for (const Comparator& c : net.comparators)
      detail::sort_window(std::span<Key>(out), c, std::less<Key>{});
    if (!std::is_sorted(out.begin(), out.end())) {
      rep.inputs_tested = tested;
      rep.counterexample_input = perm;
      rep.counterexample_output = out;
      return rep;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  rep.valid = true;
  rep.inputs_tested = tested;
  return rep;
}

// ---------------------------------------------------------------------------
// Pass-scheme search.

namespace {

struct MaskOp {
  std::uint64_t all = 0;
  std::vector<std::uint64_t> low{0};

  std::uint64_t apply(std::uint64_t m) const {
    return (m & ~all) | low[static_cast<std::size_t>(std::popcount(m & all))];
  }
};

MaskOp compile_window(const Comparator& c, int width) {
  MaskOp op;
  op.low.reserve(c.lines.size() + 1);
  for (auto it = c.lines.rbegin(); it != c.lines.rend(); ++it) {
    const std::uint64_t bit = std::uint64_t{1} << (width - 1 - *it);
    op.all |= bit;
    op.low.push_back(op.low.back() | bit);
  }
  return op;
}

struct PassSpace {
  int n = 0;
  std::vector<Comparator> passes;  // lexicographic over line sets
  std::vector<MaskOp> ops;
};

PassSpace build_space(int n, int window, SearchMode mode) {
  PassSpace sp;
  sp.n = n;
  if (mode == SearchMode::ContiguousWindows) {
    for (int off = 0; off + window <= n; ++off) {
      Comparator c;
      c.lines.resize(static_cast<std::size_t>(window));
      std::iota(c.lines.begin(), c.lines.end(), off);
      sp.passes.push_back(std::move(c));
    }
  } else {
    std::vector<int> idx(static_cast<std::size_t>(window));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      sp.passes.push_back(Comparator{idx});
      int i = window - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - window + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < window; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  sp.ops.reserve(sp.passes.size());
  for (const Comparator& c : sp.passes) sp.ops.push_back(compile_window(c, n));
  return sp;
}

// Candidates of a given length are sequences of pass ids whose consecutive
// ids differ (repeating a pass is a no-op, so no minimal scheme repeats).
// They are indexed in lexicographic order: the first digit ranges over all
// c passes, each later digit over the c-1 passes distinct from its
// predecessor.
u128 count_at_length(std::uint64_t c, int length) {
  if (c == 0) return 0;
  u128 cnt = c;
  for (int i = 1; i < length; ++i) {
    cnt *= (c - 1);
    if (cnt >= kCountClamp) return kCountClamp;
  }
  return cnt;
}

void decode_ids(std::uint64_t c, int length, std::uint64_t idx, int* ids) {
  std::uint64_t pow = 1;
  for (int i = 1; i < length; ++i) pow *= (c - 1);
  std::uint64_t d = idx / pow;
  idx %= pow;
  ids[0] = static_cast<int>(d);
  int prev = ids[0];
  for (int j = 1; j < length; ++j) {
    pow /= (c - 1);
    d = idx / pow;
    idx %= pow;
    const int id = static_cast<int>(d) + (static_cast<int>(d) >= prev ? 1 : 0);
    ids[j] = id;
    prev = id;
  }
}

// First 0-1 input the pass sequence fails to sort, or nullopt if it sorts
// them all (and hence, by the 0-1 principle, sorts everything).
std::optional<std::uint64_t> screen(const PassSpace& sp, const int* ids, int length) {
  const std::uint64_t total = std::uint64_t{1} << sp.n;
  for (std::uint64_t m = 0; m < total; ++m) {
    std::uint64_t x = m;
    for (int j = 0; j < length; ++j) x = sp.ops[static_cast<std::size_t>(ids[j])].apply(x);
    if (!mask_sorted(x)) return m;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> run_length(const PassSpace& sp, std::uint64_t c, int length,
                                        std::uint64_t cnt, int threads) {
  return first_index(cnt, threads, [&sp, c, length](std::uint64_t i) {
    int ids[kMaxSearchPasses];
    decode_ids(c, length, i, ids);
    return !screen(sp, ids, length).has_value();
  });
}

void validate_search_domain(int n, int window, SearchMode mode, int threads) {
  if (n < 2 || n > kZeroOneWidthLimit)
    throw ParameterError("search requires 2 <= n <= " + std::to_string(kZeroOneWidthLimit));
  if (window < 2 || window > n) throw ParameterError("search window must lie in [2, n]");
  if (mode == SearchMode::ArbitrarySubsets && n > 10)
    throw ParameterError("subset search is limited to n <= 10");
  if (threads < 1) throw ParameterError("threads must be >= 1");
}

SearchResult search_impl(const SearchSpec& spec, const SearchAudit* audit) {
  validate_search_domain(spec.n, spec.window, spec.mode, spec.threads);
  if (spec.max_passes < 1 || spec.max_passes > kMaxSearchPasses)
    throw ParameterError("max_passes must lie in [1, " + std::to_string(kMaxSearchPasses) + "]");

  const PassSpace sp = build_space(spec.n, spec.window, spec.mode);
  const std::uint64_t c = sp.passes.size();
  u128 spent = 0;
  std::uint64_t tested = 0;
  SearchResult res;

  for (int length = 1; length <= spec.max_passes; ++length) {
    const u128 cnt128 = count_at_length(c, length);
    if (cnt128 == 0) break;  // single pass choice: longer sequences don't exist
    const u128 cost = cnt128 << spec.n;
    if (spent + cost > u128{spec.budget})
      throw ResourceError("search budget of " + std::to_string(spec.budget) +
                              " units exceeded before pass length " + std::to_string(length),
                          tested);
    const auto cnt = static_cast<std::uint64_t>(cnt128);

    std::optional<std::uint64_t> win;
    if (audit && *audit) {
      int ids[kMaxSearchPasses];
      for (std::uint64_t i = 0; i < cnt; ++i) {
        decode_ids(c, length, i, ids);
        const auto fail = screen(sp, ids, length);
        if (!fail) {
          win = i;
          break;
        }
        std::vector<Comparator> passes;
        passes.reserve(static_cast<std::size_t>(length));
        for (int j = 0; j < length; ++j)
          passes.push_back(sp.passes[static_cast<std::size_t>(ids[j])]);
        (*audit)(passes, sequence_from_mask(*fail, spec.n));
      }
    } else {
      win = run_length(sp, c, length, cnt, spec.threads);
    }

    if (win) {
      tested += *win + 1;
      res.found = true;
      res.min_passes = length;
      int ids[kMaxSearchPasses];
      decode_ids(c, length, *win, ids);
      for (int j = 0; j < length; ++j)
        res.witness.push_back(sp.passes[static_cast<std::size_t>(ids[j])]);
      if (spec.mode == SearchMode::ContiguousWindows) {
        PassScheme scheme{spec.n, spec.window, {}};
        for (int j = 0; j < length; ++j) scheme.offsets.push_back(ids[j]);
        res.witness_scheme = std::move(scheme);
      }
      res.sequences_tested = tested;
      return res;
    }
    tested += cnt;
    spent += cost;
  }
  res.sequences_tested = tested;
  return res;
}

}  // namespace

SearchResult search_min_passes(const SearchSpec& spec) { return search_impl(spec, nullptr); }

SearchResult search_min_passes(const SearchSpec& spec, const SearchAudit& on_reject) {
  return search_impl(spec, &on_reject);
}

// ---------------------------------------------------------------------------
// Postulation checks.

namespace {

struct Instance {
  int postulation;
  int n;
  int window;
  int target;
  bool equality;  // false: claim is only an upper bound
};

PostulationCheck run_instance(const Instance& inst, SearchMode mode, std::uint64_t budget,
                              int threads) {
  PostulationCheck chk;
  chk.postulation = inst.postulation;
  chk.n = inst.n;
  chk.window = inst.window;
  chk.mode = mode;

  const PassSpace sp = build_space(inst.n, inst.window, mode);
  const std::uint64_t c = sp.passes.size();
  u128 spent = 0;
  std::uint64_t tested = 0;
  int complete_to = 0;  // lengths 1..complete_to exhausted without a hit
  std::optional<int> found_len;
  std::uint64_t found_idx = 0;

  for (int length = 1; length <= inst.target; ++length) {
    const u128 cnt128 = count_at_length(c, length);
    if (cnt128 == 0) {
      complete_to = length;  // no candidates at this length: vacuously done
      continue;
    }
    const u128 cost = cnt128 << inst.n;
    if (spent + cost > u128{budget}) break;
    const auto cnt = static_cast<std::uint64_t>(cnt128);
    if (auto win = run_length(sp, c, length, cnt, threads)) {
      tested += *win + 1;
      found_len = length;
      found_idx = *win;
      break;
    }
    tested += cnt;
    spent += cost;
    complete_to = length;
  }

  chk.inputs_tested = tested;
  if (found_len) {
    // Shorter lengths were all exhausted empty, so this is the minimum.
    chk.min_passes = found_len;
    int ids[kMaxSearchPasses];
    decode_ids(c, *found_len, found_idx, ids);
    for (int j = 0; j < *found_len; ++j)
      chk.witness.push_back(sp.passes[static_cast<std::size_t>(ids[j])]);
    chk.verdict = (!inst.equality || *found_len == inst.target) ? Verdict::Confirmed
                                                                : Verdict::RefutedAtThisN;
  } else if (complete_to == inst.target) {
    chk.verdict = Verdict::RefutedAtThisN;  // nothing sorts within the claimed passes
  } else {
    chk.verdict = Verdict::Inconclusive;
    // An equality claim with a known scheme of the claimed length can still
    // be settled cheaply when every shorter length came up empty.
    if (inst.equality && inst.postulation == 1 && complete_to == inst.target - 1) {
      Network w = pass_scheme_to_network(stooge_scheme(inst.n));
      if (zero_one_verify(w, threads).valid) {
        chk.verdict = Verdict::Confirmed;
        chk.min_passes = inst.target;
        chk.witness = std::move(w.comparators);
      }
    }
  }
  return chk;
}

}  // namespace

std::vector<PostulationCheck> check_postulations(std::uint64_t budget_per_instance, int threads) {
  static const Instance instances[] = {
      {1, 3, 2, 3, true},  {1, 6, 4, 3, true}, {1, 9, 6, 3, true},
      {2, 12, 7, 4, false},
      {3, 4, 2, 5, true},  {3, 8, 4, 5, true},
  };
  std::vector<PostulationCheck> out;
  for (const Instance& inst : instances) {
    out.push_back(run_instance(inst, SearchMode::ContiguousWindows, budget_per_instance, threads));
    if (inst.n <= 10)
      out.push_back(run_instance(inst, SearchMode::ArbitrarySubsets, budget_per_instance, threads));
  }
  return out;
}

const char* to_string(SearchMode mode) {
  return mode == SearchMode::ContiguousWindows ? "contiguous" : "subsets";
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Confirmed:
      return "CONFIRMED";
    case Verdict::RefutedAtThisN:
      return "REFUTED-AT-THIS-n";
    default:
      return "INCONCLUSIVE(budget)";  // budget exhaustion is the only downgrade
  }
}

}  // namespace knets
