#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "inertia/signal.hpp"

namespace inertia {

// Ordered, uniquely named signals. Names match [A-Za-z_][A-Za-z0-9_]*.
struct WaveDoc {
  std::vector<std::pair<std::string, Signal>> entries;
};

class WaveParseError : public std::runtime_error {
 public:
  WaveParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Line format, one signal per line:
//
//   name = <0|1> | [a,b) [c,d) ... [e,inf)
//
// The leading bit is the value outside the listed intervals; times are
// integers, decimals or rationals p/q. `#` starts a comment, blank lines are
// skipped.
WaveDoc parse_waves(std::string_view text);

// Canonical serialization; parse_waves(emit_waves(doc)) == doc.
std::string emit_waves(const WaveDoc& doc);

// Minimal four-state VCD dump (only 0/1 used). Timestamps are the rational
// times multiplied by the least common multiple of their denominators; the
// scale is recorded in a header comment. The initial dump shows each value
// just before the first transition. Requires non-negative transition times
// and a horizon strictly after every transition.
std::string export_vcd(const WaveDoc& doc, const Time& horizon);

}  // namespace inertia
