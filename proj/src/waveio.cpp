#include "inertia/waveio.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace inertia {

namespace {

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

void validate_doc(const WaveDoc& doc) {
  std::set<std::string> seen;
  for (const auto& [name, _] : doc.entries) {
    if (!valid_name(name)) throw std::invalid_argument("invalid signal name: " + name);
    if (!seen.insert(name).second)
      throw std::invalid_argument("duplicate signal name: " + name);
  }
}

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line;

  void skip_spaces() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_spaces();
    return pos >= text.size() || text[pos] == '#';
  }
  char peek() const { return pos < text.size() ? text[pos] : '\0'; }
  void expect(char c, const char* what) {
    skip_spaces();
    if (pos >= text.size() || text[pos] != c)
      throw WaveParseError(line, std::string("expected ") + what);
    ++pos;
  }
  std::string_view token(const char* stops) {
    skip_spaces();
    std::size_t begin = pos;
    while (pos < text.size() && std::string_view(stops).find(text[pos]) == std::string_view::npos &&
           text[pos] != ' ' && text[pos] != '\t')
      ++pos;
    return text.substr(begin, pos - begin);
  }
};

Time parse_time(Cursor& cur, const char* stops) {
  std::string_view tok = cur.token(stops);
  auto t = Rational::parse(tok);
  if (!t) throw WaveParseError(cur.line, "malformed time '" + std::string(tok) + "'");
  return *t;
}

}  // namespace

WaveDoc parse_waves(std::string_view text) {
  WaveDoc doc;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    Cursor cur{line, 0, line_no};
    if (cur.done()) continue;

    std::string name(cur.token("="));
    if (!valid_name(name)) throw WaveParseError(line_no, "invalid signal name '" + name + "'");
    if (!seen.insert(name).second)
      throw WaveParseError(line_no, "duplicate signal name '" + name + "'");
    cur.expect('=', "'='");

    cur.skip_spaces();
    char bit = cur.peek();
    if (bit != '0' && bit != '1') throw WaveParseError(line_no, "expected initial bit 0 or 1");
    ++cur.pos;
    cur.expect('|', "'|'");

    std::vector<Interval> intervals;
    while (!cur.done()) {
      cur.expect('[', "'['");
      Time start = parse_time(cur, ",");
      cur.expect(',', "','");
      cur.skip_spaces();
      std::optional<Time> end;
      if (cur.text.substr(cur.pos, 3) == "inf") {
        cur.pos += 3;
      } else {
        end = parse_time(cur, ")");
      }
      cur.expect(')', "')'");
      intervals.push_back(Interval{start, end});
    }

    try {
      doc.entries.emplace_back(name, Signal::from_intervals(bit == '1', intervals));
    } catch (const std::invalid_argument& e) {
      throw WaveParseError(line_no, e.what());
    }
  }
  return doc;
}

std::string emit_waves(const WaveDoc& doc) {
  validate_doc(doc);
  std::ostringstream os;
  for (const auto& [name, signal] : doc.entries) {
    os << name << " = " << (signal.initial_value() ? '1' : '0') << " |";
    for (const Run& run : signal.runs_of(!signal.initial_value())) {
      // Runs differing from the initial value always have a finite start.
      os << " [" << run.begin->str() << ',' << (run.end ? run.end->str() : "inf") << ')';
    }
    os << '\n';
  }
  return os.str();
}

namespace {

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  const std::int64_t g = std::gcd(a, b);
  const __int128 l = static_cast<__int128>(a / g) * b;
  if (l > std::numeric_limits<std::int64_t>::max())
    throw std::overflow_error("time scale overflow in VCD export");
  return static_cast<std::int64_t>(l);
}

std::int64_t tick_of(const Time& t, std::int64_t scale) {
  const __int128 tick = static_cast<__int128>(t.num()) * (scale / t.den());
  if (tick > std::numeric_limits<std::int64_t>::max())
    throw std::overflow_error("tick overflow in VCD export");
  return static_cast<std::int64_t>(tick);
}

}  // namespace

std::string export_vcd(const WaveDoc& doc, const Time& horizon) {
  validate_doc(doc);
  if (doc.entries.size() > 90)
    throw std::invalid_argument("too many signals for single-character VCD ids");

  std::int64_t scale = horizon.den();
  for (const auto& [name, signal] : doc.entries) {
    for (const Time& t : signal.transitions()) {
      if (t.sign() < 0)
        throw std::out_of_range("VCD export requires non-negative transition times");
      if (!(t < horizon))
        throw std::out_of_range("horizon must lie strictly after every transition");
      scale = lcm_checked(scale, t.den());
    }
  }
  if (horizon.sign() < 0) throw std::out_of_range("horizon must be non-negative");

  std::ostringstream os;
  os << "$comment 1 time unit = " << scale
     << " ticks; initial dump shows values just before the first transition $end\n";
  os << "$timescale 1 ns $end\n";
  os << "$scope module waves $end\n";
  for (std::size_t i = 0; i < doc.entries.size(); ++i) {
    os << "$var wire 1 " << static_cast<char>('!' + i) << ' ' << doc.entries[i].first
       << " $end\n";
  }
  os << "$upscope $end\n";
  os << "$enddefinitions $end\n";
  os << "$dumpvars\n";
  for (std::size_t i = 0; i < doc.entries.size(); ++i)
    os << (doc.entries[i].second.initial_value() ? '1' : '0')
       << static_cast<char>('!' + i) << '\n';
  os << "$end\n";

  // Merge all transition instants into one increasing tick sequence.
  std::vector<Time> instants;
  for (const auto& [name, signal] : doc.entries)
    instants.insert(instants.end(), signal.transitions().begin(),
                    signal.transitions().end());
  std::sort(instants.begin(), instants.end());
  instants.erase(std::unique(instants.begin(), instants.end()), instants.end());

  for (const Time& t : instants) {
    os << '#' << tick_of(t, scale) << '\n';
    for (std::size_t i = 0; i < doc.entries.size(); ++i) {
      const Signal& s = doc.entries[i].second;
      const auto& ts = s.transitions();
      if (std::binary_search(ts.begin(), ts.end(), t))
        os << (s.value_at(t) ? '1' : '0') << static_cast<char>('!' + i) << '\n';
    }
  }
  os << '#' << tick_of(horizon, scale) << '\n';
  return os.str();
}

}  // namespace inertia
