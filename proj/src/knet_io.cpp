#include "knets/knet_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace knets {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) toks.push_back(line.substr(start, i - start));
  }
  return toks;
}

long parse_int(std::string_view tok, int line_no, const char* what) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line_no, std::string("bad ") + what + " '" + std::string(tok) + "'");
  return value;
}

struct Reader {
  Network net;
  int line_no = 0;
  bool saw_header = false;
  bool saw_width = false;
  int last_r_line = 0;
  std::vector<char> round_used;  // lines touched in the current segment
  std::vector<std::size_t> marks;
  // Line reuse inside a segment is only an error if the file turns out to be
  // round-structured, which we learn at the next 'r' (or EOF with marks), so
  // the first offence is held back instead of thrown.
  int dup_line_no = 0;
  std::string dup_message;

  void flush_segment() {
    if (dup_line_no) throw ParseError(dup_line_no, dup_message);
    std::fill(round_used.begin(), round_used.end(), 0);
  }

  void feed(std::string_view raw) {
    ++line_no;
    // Tolerate a trailing CR; the writer only ever emits LF.
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    auto toks = split_tokens(raw);
    if (toks.empty() || toks[0].front() == '#') return;

    if (!saw_header) {
      if (toks[0] != "knet") throw ParseError(line_no, "expected 'knet 1' header");
      if (toks.size() != 2 || parse_int(toks[1], line_no, "version") != 1)
        throw ParseError(line_no, "unsupported knet version");
      saw_header = true;
      return;
    }
    if (!saw_width) {
      if (toks[0] != "n" || toks.size() != 2)
        throw ParseError(line_no, "expected 'n <width>' after header");
      long w = parse_int(toks[1], line_no, "width");
      if (w < 0 || w > 1'000'000) throw ParseError(line_no, "width out of range");
      net.width = static_cast<int>(w);
      round_used.assign(static_cast<std::size_t>(w), 0);
      saw_width = true;
      return;
    }
    if (toks[0] == "c") {
      if (toks.size() < 3) throw ParseError(line_no, "comparator needs at least 2 lines");
      Comparator c;
      c.lines.reserve(toks.size() - 1);
      for (std::size_t i = 1; i < toks.size(); ++i) {
        long v = parse_int(toks[i], line_no, "line index");
        if (v < 0 || v >= net.width)
          throw ParseError(line_no, "line index " + std::to_string(v) + " outside [0, " +
                                        std::to_string(net.width) + ")");
        if (!c.lines.empty() && static_cast<int>(v) <= c.lines.back())
          throw ParseError(line_no, "comparator lines not strictly increasing");
        c.lines.push_back(static_cast<int>(v));
      }
      for (int line : c.lines) {
        if (round_used[static_cast<std::size_t>(line)] && !dup_line_no) {
          dup_line_no = line_no;
          dup_message = "line " + std::to_string(line) + " used twice in one round";
        }
        round_used[static_cast<std::size_t>(line)] = 1;
      }
      net.comparators.push_back(std::move(c));
      return;
    }
    if (toks[0] == "r") {
      if (toks.size() != 1) throw ParseError(line_no, "round separator takes no arguments");
      if (net.comparators.empty())
        throw ParseError(line_no, "round separator before any comparator");
      if (!marks.empty() && marks.back() == net.comparators.size())
        throw ParseError(line_no, "empty round");
      flush_segment();
      marks.push_back(net.comparators.size());
      last_r_line = line_no;
      return;
    }
    throw ParseError(line_no, "unknown directive '" + std::string(toks[0]) + "'");
  }

  Network finish() {
    if (!saw_header) throw ParseError(line_no + 1, "missing 'knet 1' header");
    if (!saw_width) throw ParseError(line_no + 1, "missing 'n <width>' line");
    if (!marks.empty()) {
      if (marks.back() == net.comparators.size())
        throw ParseError(last_r_line, "round separator after last comparator");
      flush_segment();
      net.round_marks = std::move(marks);
    }
    net.validate();
    return std::move(net);
  }
};

}  // namespace

Network read_network(std::istream& in) {
  Reader r;
  std::string line;
  while (std::getline(in, line)) r.feed(line);
  return r.finish();
}

Network parse_network(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_network(in);
}

void write_network(std::ostream& out, const Network& net) {
  net.validate();
  out << "knet 1\n";
  out << "n " << net.width << "\n";
  std::size_t next_mark = 0;
  const std::vector<std::size_t>* marks = net.round_marks ? &*net.round_marks : nullptr;
  for (std::size_t i = 0; i < net.comparators.size(); ++i) {
    if (marks && next_mark < marks->size() && (*marks)[next_mark] == i) {
      out << "r\n";
      ++next_mark;
    }
    out << "c";
    for (int line : net.comparators[i].lines) out << ' ' << line;
    out << "\n";
  }
}

std::string to_knet(const Network& net) {
  std::ostringstream out;
  write_network(out, net);
  return out.str();
}

}  // namespace knets
