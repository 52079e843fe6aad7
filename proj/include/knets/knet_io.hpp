#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "knets/net.hpp"

namespace knets {

// The knet text format, version 1. ASCII, LF line endings.
//
//   knet 1            header, required first
//   n <width>         line count, required second
//   c <i1> <i2> ...   one comparator, lines strictly increasing, 0-based
//   r                 round separator: the next comparator starts a new round
//   # ...             comment; blank lines are ignored
//
// A file with no `r` lines carries no round structure. `r` may not appear
// before the first comparator, twice in a row, or after the last one, and
// comparators within one round may not share a line.

/// Parses a network, throwing ParseError (with the 1-based line number) on
/// malformed input.
Network read_network(std::istream& in);
Network parse_network(std::string_view text);

/// Writes the canonical text for a network. Validates first. Networks whose
/// round structure is engaged but has no separators serialize the same as
/// unmarked ones.
void write_network(std::ostream& out, const Network& net);
std::string to_knet(const Network& net);

}  // namespace knets
