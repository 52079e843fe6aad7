// knets: comparator-network toolkit command line.
//
// Exit statuses: 0 success/valid, 1 usage or parse error, 2 invalid network
// or negative/refuted result, 3 work budget exceeded.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "knets/bounds.hpp"
#include "knets/construct.hpp"
#include "knets/knet_io.hpp"
#include "knets/net.hpp"
#include "knets/parallel.hpp"
#include "knets/verify.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNegative = 2;
constexpr int kExitResource = 3;
constexpr int kSchemaVersion = 1;

struct Options {
  std::string format = "text";
  int threads = 0;  // 0 = use available parallelism
  std::uint64_t budget = knets::kDefaultSearchBudget;

  bool machine() const { return format == "machine"; }
  int worker_count() const {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
};

json envelope(const char* command) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  return doc;
}

void emit(const json& doc) { std::cout << doc.dump() << "\n"; }

knets::Network read_net_arg(const std::string& path) {
  if (path == "-") return knets::read_network(std::cin);
  std::ifstream in(path);
  if (!in) throw knets::ParameterError("cannot open '" + path + "'");
  return knets::read_network(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw knets::ParameterError("cannot open '" + path + "' for writing");
  out << text;
}

knets::Key parse_key(std::string_view tok) {
  // Trim surrounding spaces; the digits themselves must parse completely.
  while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
  while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
  knets::Key value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw knets::ParameterError("bad integer '" + std::string(tok) + "'");
  return value;
}

knets::KeySequence parse_csv(const std::string& text) {
  knets::KeySequence seq;
  if (text.empty()) return seq;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    seq.push_back(parse_key(std::string_view(text).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return seq;
}

knets::KeySequence read_sequence_file(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw knets::ParameterError("cannot open '" + path + "'");
    in = &file;
  }
  knets::KeySequence seq;
  std::string line;
  while (std::getline(*in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    seq.push_back(parse_key(line));
  }
  return seq;
}

std::string join_keys(const knets::KeySequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(seq[i]);
  }
  return out;
}

json passes_json(const std::vector<knets::Comparator>& passes) {
  json arr = json::array();
  for (const auto& c : passes) arr.push_back(c.lines);
  return arr;
}

// Passes as text: lines comma-joined, passes semicolon-joined.
std::string passes_text(const std::vector<knets::Comparator>& passes) {
  std::string out;
  for (std::size_t i = 0; i < passes.size(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < passes[i].lines.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(passes[i].lines[j]);
    }
  }
  return out;
}

// --- subcommand handlers ---------------------------------------------------

int run_gen(const Options& opt, const std::string& kind, int n, int k,
            knets::StoogeOrder order, const std::string& output) {
  knets::Network net;
  if (kind == "triangle") {
    net = knets::triangle(n, k);
  } else if (kind == "stooge") {
    net = knets::pass_scheme_to_network(knets::stooge_scheme(n, order));
  } else {
    net = knets::parallel_merge_sort_schedule(n).to_network();
  }
  const std::string text = knets::to_knet(net);
  if (opt.machine()) {
    if (output != "-") write_text(output, text);
    json doc = envelope("gen");
    doc["kind"] = kind;
    doc["width"] = net.width;
    doc["size"] = net.size();
    doc["rounds"] = net.round_count();
    doc["knet"] = text;
    emit(doc);
  } else {
    write_text(output, text);
  }
  return kExitOk;
}

int run_verify(const Options& opt, const std::string& net_path) {
  const knets::Network net = read_net_arg(net_path);
  if (net.width > 0 && net.width <= knets::kMaxMaskWidth &&
      (std::uint64_t{1} << net.width) > opt.budget)
    throw knets::ResourceError("verification needs " +
                                   std::to_string(std::uint64_t{1} << net.width) +
                                   " units, over the budget of " + std::to_string(opt.budget),
                               0);
  const knets::VerificationReport rep = knets::zero_one_verify(net, opt.worker_count());
  if (opt.machine()) {
    json doc = envelope("verify");
    doc["valid"] = rep.valid;
    doc["inputs_tested"] = rep.inputs_tested;
    if (rep.valid) {
      doc["counterexample"] = nullptr;
    } else {
      doc["counterexample"] = {{"input", *rep.counterexample_input},
                               {"output", *rep.counterexample_output}};
    }
    emit(doc);
  } else if (rep.valid) {
    std::cout << "valid (" << rep.inputs_tested << " inputs)\n";
  } else {
    std::cout << "invalid (" << rep.inputs_tested << " inputs)\n";
    std::cout << "counterexample input: " << join_keys(*rep.counterexample_input) << "\n";
    std::cout << "counterexample output: " << join_keys(*rep.counterexample_output) << "\n";
  }
  return rep.valid ? kExitOk : kExitNegative;
}

int run_apply(const Options& opt, const std::string& net_path, const std::string& input_csv,
              const std::string& input_file) {
  if (input_csv.empty() == input_file.empty())
    throw knets::ParameterError("apply needs exactly one of --input or --input-file");
  const knets::Network net = read_net_arg(net_path);
  knets::KeySequence seq =
      input_file.empty() ? parse_csv(input_csv) : read_sequence_file(input_file);
  seq = knets::apply_network(std::move(seq), net);
  if (opt.machine()) {
    json doc = envelope("apply");
    doc["output"] = seq;
    emit(doc);
  } else {
    std::cout << join_keys(seq) << "\n";
  }
  return kExitOk;
}

int run_search(const Options& opt, int n, int window, int max_passes, const std::string& mode) {
  knets::SearchSpec spec;
  spec.n = n;
  spec.window = window;
  spec.max_passes = max_passes;
  spec.mode = mode == "subsets" ? knets::SearchMode::ArbitrarySubsets
                                : knets::SearchMode::ContiguousWindows;
  spec.budget = opt.budget;
  spec.threads = opt.worker_count();
  const knets::SearchResult res = knets::search_min_passes(spec);
  if (opt.machine()) {
    json doc = envelope("search");
    doc["n"] = n;
    doc["window"] = window;
    doc["mode"] = knets::to_string(spec.mode);
    doc["found"] = res.found;
    doc["min_passes"] = res.min_passes ? json(*res.min_passes) : json(nullptr);
    if (res.found) {
      json w;
      w["passes"] = passes_json(res.witness);
      if (res.witness_scheme) w["offsets"] = res.witness_scheme->offsets;
      doc["witness"] = w;
    } else {
      doc["witness"] = nullptr;
    }
    doc["sequences_tested"] = res.sequences_tested;
    emit(doc);
  } else if (res.found) {
    std::cout << "found: yes\n";
    std::cout << "min_passes: " << *res.min_passes << "\n";
    if (res.witness_scheme) {
      std::string offs;
      for (std::size_t i = 0; i < res.witness_scheme->offsets.size(); ++i) {
        if (i) offs += ',';
        offs += std::to_string(res.witness_scheme->offsets[i]);
      }
      std::cout << "witness offsets: " << offs << "\n";
    }
    std::cout << "witness passes: " << passes_text(res.witness) << "\n";
    std::cout << "sequences_tested: " << res.sequences_tested << "\n";
  } else {
    std::cout << "found: no\n";
    std::cout << "sequences_tested: " << res.sequences_tested << "\n";
  }
  return res.found ? kExitOk : kExitNegative;
}

int run_postulations(const Options& opt) {
  const auto checks = knets::check_postulations(opt.budget, opt.worker_count());
  bool refuted = false;
  for (const auto& chk : checks)
    if (chk.verdict == knets::Verdict::RefutedAtThisN) refuted = true;
  if (opt.machine()) {
    json doc = envelope("postulations");
    doc["budget"] = opt.budget;
    json rows = json::array();
    for (const auto& chk : checks) {
      json row;
      row["postulation"] = chk.postulation;
      row["n"] = chk.n;
      row["window"] = chk.window;
      row["mode"] = knets::to_string(chk.mode);
      row["verdict"] = knets::to_string(chk.verdict);
      row["min_passes"] = chk.min_passes ? json(*chk.min_passes) : json(nullptr);
      row["witness"] = chk.witness.empty() ? json(nullptr) : passes_json(chk.witness);
      row["inputs_tested"] = chk.inputs_tested;
      rows.push_back(std::move(row));
    }
    doc["checks"] = std::move(rows);
    emit(doc);
  } else {
    for (const auto& chk : checks) {
      std::cout << "postulation " << chk.postulation << " n=" << chk.n
                << " window=" << chk.window << " mode=" << knets::to_string(chk.mode)
                << " verdict=" << knets::to_string(chk.verdict) << " min_passes="
                << (chk.min_passes ? std::to_string(*chk.min_passes) : std::string("-"))
                << " witness="
                << (chk.witness.empty() ? std::string("-") : passes_text(chk.witness))
                << " inputs_tested=" << chk.inputs_tested << "\n";
    }
  }
  return refuted ? kExitNegative : kExitOk;
}

int run_schedule(const Options& opt, int n) {
  const knets::StageTable table = knets::schedule_stage_table(n);
  if (opt.machine()) {
    json doc = envelope("schedule");
    doc["n"] = n;
    json rows = json::array();
    for (const auto& row : table.rows)
      rows.push_back({{"run_length", row.run_length},
                      {"run_count", row.run_count},
                      {"rounds", row.rounds}});
    doc["rows"] = std::move(rows);
    doc["total_rounds"] = table.total_rounds();
    emit(doc);
  } else {
    for (const auto& row : table.rows)
      std::cout << "run_length=" << row.run_length << " run_count=" << row.run_count
                << " rounds=" << row.rounds << "\n";
    std::cout << "total_rounds=" << table.total_rounds() << "\n";
  }
  return kExitOk;
}

int run_bounds(const Options& opt, int n) {
  const knets::BoundsReport rep = knets::comparison_bounds(n);
  if (opt.machine()) {
    json doc = envelope("bounds");
    doc["n"] = rep.n;
    doc["lower"] = rep.lower;
    doc["upper"] = rep.upper;
    emit(doc);
  } else {
    std::cout << "lower=" << rep.lower << " upper=" << rep.upper << "\n";
  }
  return kExitOk;
}

int run_fjsort(const Options& opt, const std::string& input_csv, const std::string& input_file) {
  if (input_csv.empty() == input_file.empty())
    throw knets::ParameterError("fjsort needs exactly one of --input or --input-file");
  const knets::KeySequence seq =
      input_file.empty() ? parse_csv(input_csv) : read_sequence_file(input_file);
  const knets::CountingSortRun run = knets::merge_insertion_sort(seq);
  if (opt.machine()) {
    json doc = envelope("fjsort");
    doc["output"] = run.output;
    doc["comparisons"] = run.comparisons;
    emit(doc);
  } else {
    std::cout << join_keys(run.output) << "\n";
    std::cout << "comparisons=" << run.comparisons << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"comparator network toolkit: generate, verify, apply, and search "
               "k-sorter networks and parallel comparison schedules"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();
  app.add_option("--threads", opt.threads, "parallel workers (default: all available)")
      ->check(CLI::Range(1, 1024));
  app.add_option("--budget", opt.budget,
                 "work cap for search/verification, in candidate-input units")
      ->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "generate a network in knet format");
  gen->require_subcommand(1);
  gen->fallthrough();
  std::string gen_output = "-";
  int gen_n = 0, gen_k = 2;
  std::string stooge_order = "first-last-first";
  auto* gen_triangle = gen->add_subcommand("triangle", "k-sorter selection-chain sorter");
  gen_triangle->add_option("--n", gen_n, "line count")->required();
  gen_triangle->add_option("--k", gen_k, "sorter arity")->required();
  auto* gen_stooge = gen->add_subcommand("stooge", "three passes of window 2n/3");
  gen_stooge->add_option("--n", gen_n, "line count, divisible by 3")->required();
  gen_stooge->add_option("--order", stooge_order, "pass order")
      ->check(CLI::IsMember({"first-last-first", "last-first-last"}))
      ->capture_default_str();
  auto* gen_parmerge = gen->add_subcommand("parmerge", "parallel merge-sort schedule, round-marked");
  gen_parmerge->add_option("--n", gen_n, "line count")->required();
  for (auto* sub : {gen_triangle, gen_stooge, gen_parmerge})
    sub->add_option("-o,--output", gen_output, "write knet text here ('-' = stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "exhaustive 0-1 verification of a network");
  std::string verify_net = "-";
  verify->add_option("net", verify_net, "knet file ('-' = stdin)");

  // apply
  auto* apply = app.add_subcommand("apply", "run a sequence through a network");
  std::string apply_net = "-";
  std::string apply_input, apply_input_file;
  apply->add_option("net", apply_net, "knet file ('-' = stdin)");
  apply->add_option("--input", apply_input, "comma-separated 64-bit integers");
  apply->add_option("--input-file", apply_input_file, "file with one integer per line");

  // search
  auto* search = app.add_subcommand("search", "minimal window-pass sequence search");
  int search_n = 0, search_window = 0, search_max = 1;
  std::string search_mode = "contiguous";
  search->add_option("--n", search_n, "line count")->required();
  search->add_option("--window", search_window, "window length")->required();
  search->add_option("--max-passes", search_max, "largest sequence length to try")->required();
  search->add_option("--mode", search_mode, "pass placement")
      ->check(CLI::IsMember({"contiguous", "subsets"}))
      ->capture_default_str();

  // postulations
  auto* postulations =
      app.add_subcommand("postulations", "probe the three window-pass claims on small instances");

  // schedule
  auto* schedule = app.add_subcommand("schedule", "stage table of the parallel merge sort");
  int schedule_n = 0;
  schedule->add_option("--n", schedule_n, "line count, a power of two")->required();

  // bounds
  auto* bounds = app.add_subcommand("bounds", "worst-case comparison bounds for sorting n keys");
  int bounds_n = 0;
  bounds->add_option("--n", bounds_n, "key count")->required();

  // fjsort
  auto* fjsort = app.add_subcommand("fjsort", "merge-insertion sort with comparison count");
  std::string fj_input, fj_input_file;
  fjsort->add_option("--input", fj_input, "comma-separated 64-bit integers");
  fjsort->add_option("--input-file", fj_input_file, "file with one integer per line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      const std::string kind = gen_triangle->parsed()  ? "triangle"
                               : gen_stooge->parsed()  ? "stooge"
                                                       : "parmerge";
      const auto order = stooge_order == "last-first-last" ? knets::StoogeOrder::LastFirstLast
                                                           : knets::StoogeOrder::FirstLastFirst;
      return run_gen(opt, kind, gen_n, gen_k, order, gen_output);
    }
    if (verify->parsed()) return run_verify(opt, verify_net);
    if (apply->parsed()) return run_apply(opt, apply_net, apply_input, apply_input_file);
    if (search->parsed()) return run_search(opt, search_n, search_window, search_max, search_mode);
    if (postulations->parsed()) return run_postulations(opt);
    if (schedule->parsed()) return run_schedule(opt, schedule_n);
    if (bounds->parsed()) return run_bounds(opt, bounds_n);
    if (fjsort->parsed()) return run_fjsort(opt, fj_input, fj_input_file);
  } catch (const knets::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const knets::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
