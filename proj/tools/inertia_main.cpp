#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "inertia/models.hpp"
#include "inertia/properties.hpp"
#include "inertia/waveio.hpp"

namespace {

using namespace inertia;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Demo expectations are pinned; a mismatch means the build is broken.
struct DemoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw UsageError("cannot write file: " + *path);
  out << text;
}

WaveDoc load_doc(const std::string& path) { return parse_waves(read_file(path)); }

std::pair<std::string, Signal> load_single(const std::string& path) {
  WaveDoc doc = load_doc(path);
  if (doc.entries.size() != 1)
    throw UsageError(path + ": expected exactly one signal, found " +
                     std::to_string(doc.entries.size()));
  return doc.entries.front();
}

Time parse_time_arg(const std::string& text, const char* what) {
  auto t = Rational::parse(text);
  if (!t) throw UsageError(std::string("malformed ") + what + " '" + text + "'");
  return *t;
}

std::vector<Time> parse_time_list(const std::string& text, const char* what) {
  std::vector<Time> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
    out.push_back(parse_time_arg(item, what));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

RIParams parse_ri_params(const std::string& text) {
  auto vals = parse_time_list(text, "params");
  if (vals.size() != 4)
    throw UsageError("--params needs mu_r,delta_r,mu_f,delta_f");
  try {
    return RIParams(vals[0], vals[1], vals[2], vals[3]);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

AIParams parse_ai_params(const std::string& text) {
  auto vals = parse_time_list(text, "params");
  if (vals.size() != 2) throw UsageError("--params needs d_r,d_f");
  try {
    return AIParams(vals[0], vals[1]);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Window parse_window_arg(const std::string& text) {
  auto vals = parse_time_list(text, "window");
  if (vals.size() != 2) throw UsageError("--window needs delta,mu");
  try {
    return Window(vals[0], vals[1]);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// Model grammar: transport:d | selftimed:theta:init | dual(SPEC) |
// serial(SPEC,SPEC,...)
DelayModel parse_model(std::string_view text, std::size_t& pos);

DelayModel parse_model_call(std::string_view text, std::size_t& pos, bool serial) {
  std::vector<DelayModel> parts;
  if (pos >= text.size() || text[pos] != '(') throw UsageError("expected '(' in model spec");
  ++pos;
  for (;;) {
    parts.push_back(parse_model(text, pos));
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    break;
  }
  if (pos >= text.size() || text[pos] != ')') throw UsageError("expected ')' in model spec");
  ++pos;
  if (serial) return DelayModel::serial(std::move(parts));
  if (parts.size() != 1) throw UsageError("dual(...) takes exactly one model");
  return DelayModel::dual(std::move(parts.front()));
}

DelayModel parse_model(std::string_view text, std::size_t& pos) {
  auto starts_with = [&](std::string_view prefix) {
    if (text.substr(pos, prefix.size()) != prefix) return false;
    pos += prefix.size();
    return true;
  };
  auto read_component = [&]() -> std::string {
    std::size_t begin = pos;
    while (pos < text.size() && text[pos] != ':' && text[pos] != ',' && text[pos] != ')')
      ++pos;
    return std::string(text.substr(begin, pos - begin));
  };
  try {
    if (starts_with("transport:"))
      return DelayModel::transport(parse_time_arg(read_component(), "transport delay"));
    if (starts_with("selftimed:")) {
      Time theta = parse_time_arg(read_component(), "selftimed theta");
      if (pos >= text.size() || text[pos] != ':')
        throw UsageError("selftimed needs theta:init");
      ++pos;
      std::string init = read_component();
      if (init != "0" && init != "1") throw UsageError("selftimed init must be 0 or 1");
      return DelayModel::self_timed(theta, init == "1");
    }
    if (starts_with("dual")) return parse_model_call(text, pos, /*serial=*/false);
    if (starts_with("serial")) return parse_model_call(text, pos, /*serial=*/true);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown model in spec: " + std::string(text.substr(pos)));
}

DelayModel parse_model_spec(const std::string& text) {
  std::size_t pos = 0;
  DelayModel m = parse_model(text, pos);
  if (pos != text.size()) throw UsageError("trailing garbage in model spec");
  return m;
}

std::string wave_line(const std::string& name, const Signal& s) {
  WaveDoc doc;
  doc.entries.emplace_back(name, s);
  return emit_waves(doc);
}

void print_ri_violations(const std::vector<Violation>& violations) {
  for (const Violation& v : violations) {
    const bool rising = v.kind == EdgeKind::rising;
    std::cout << "violation: " << (rising ? "rising" : "falling") << " edge at "
              << v.at.str() << " needs input " << (rising ? '1' : '0') << " over ["
              << v.window_lo.str() << ',' << v.window_hi.str() << "] but it is "
              << (rising ? '0' : '1') << " at " << v.witness.str() << '\n';
  }
}

int run_eval(const std::string& input, const std::string& times_text) {
  WaveDoc doc = load_doc(input);
  auto times = parse_time_list(times_text, "time");
  for (const auto& [name, signal] : doc.entries) {
    for (const Time& t : times)
      std::cout << name << '(' << t.str() << ") = " << signal.value_at(t) << '\n';
  }
  return 0;
}

int run_erode(const std::string& input, const std::string& window_text,
              const std::optional<std::string>& out) {
  WaveDoc doc = load_doc(input);
  Window w = parse_window_arg(window_text);
  for (auto& [name, signal] : doc.entries) signal = erode(signal, w);
  write_output(out, emit_waves(doc));
  return 0;
}

int run_apply(const std::string& input, const std::string& model_text,
              const std::optional<std::string>& out) {
  WaveDoc doc = load_doc(input);
  DelayModel m = parse_model_spec(model_text);
  for (auto& [name, signal] : doc.entries) signal = apply(m, signal);
  write_output(out, emit_waves(doc));
  return 0;
}

int run_check_ri(const std::string& input, const std::string& state,
                 const std::string& params_text) {
  const auto [u_name, u] = load_single(input);
  const auto [x_name, x] = load_single(state);
  RIParams p = parse_ri_params(params_text);
  MembershipResult res = ri_member(u, x, p);
  if (res.ok) {
    std::cout << "PASS: " << x_name << " is a member against " << u_name << '\n';
    return 0;
  }
  std::cout << "FAIL: " << x_name << " is not a member against " << u_name << '\n';
  print_ri_violations(res.violations);
  return 1;
}

int run_check_ai(const std::string& state, const std::string& params_text) {
  const auto [x_name, x] = load_single(state);
  AIParams a = parse_ai_params(params_text);
  MembershipResult res = ai_member(x, a);
  if (res.ok) {
    std::cout << "PASS: " << x_name << " keeps the required dwell\n";
    return 0;
  }
  std::cout << "FAIL: " << x_name << " breaks the required dwell\n";
  for (const Violation& v : res.violations) {
    const bool rising = v.kind == EdgeKind::rising;
    std::cout << "violation: " << (rising ? "rising" : "falling") << " edge at "
              << v.at.str() << " needs the state to hold through [" << v.window_lo.str()
              << ',' << v.window_hi.str() << "] but it flips at " << v.witness.str()
              << '\n';
  }
  return 1;
}

int run_subset(const std::vector<std::string>& params_texts) {
  if (params_texts.size() != 2)
    throw UsageError("subset needs --params twice (candidate and reference)");
  RIParams p = parse_ri_params(params_texts[0]);
  RIParams q = parse_ri_params(params_texts[1]);
  const bool contained = ri_subset(p, q);
  std::cout << (contained ? "contained" : "not contained")
            << ": every member under the first params "
            << (contained ? "is" : "need not be") << " a member under the second\n";
  return contained ? 0 : 1;
}

int run_zeno(const std::string& params_text, const std::string& epsilon_text) {
  RIParams p = parse_ri_params(params_text);
  Time eps = parse_time_arg(epsilon_text, "epsilon");
  if (ri_zeno_free(p)) {
    std::cout << "zeno-free: state edges keep a positive minimum spacing\n";
    return 0;
  }
  auto witness = zeno_witness(p, eps);
  std::cout << "zeno: member states admit pulses narrower than " << eps.str() << '\n';
  std::cout << wave_line("input", witness->input);
  std::cout << wave_line("state", witness->state);
  return 1;
}

int run_fit(const std::string& input, const std::string& state,
            const std::string& bound_text) {
  WaveDoc inputs = load_doc(input);
  WaveDoc states = load_doc(state);
  if (inputs.entries.size() != states.entries.size())
    throw UsageError("--input and --state must hold the same number of signals");
  if (inputs.entries.empty()) throw UsageError("fit needs at least one trace");
  std::vector<Trace> corpus;
  for (std::size_t i = 0; i < inputs.entries.size(); ++i)
    corpus.push_back(Trace{inputs.entries[i].second, states.entries[i].second});
  Time bound = parse_time_arg(bound_text, "bound");

  FitOutcome out;
  try {
    out = fit_ri(corpus, bound);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!out.unfittable.empty()) {
    std::cout << "unfittable\n";
    for (const UnfittableEdge& e : out.unfittable) {
      std::cout << "trace " << inputs.entries[e.trace_index].first << ": "
                << (e.edge.kind == EdgeKind::rising ? "rising" : "falling")
                << " edge at " << e.edge.at.str()
                << " cannot be covered by any window within " << bound.str() << '\n';
    }
    return 1;
  }
  std::cout << "frontier (mu_r,delta_r,mu_f,delta_f):\n";
  for (const RIParams& p : out.frontier) {
    std::cout << p.mu_r.str() << ',' << p.delta_r.str() << ',' << p.mu_f.str() << ','
              << p.delta_f.str() << '\n';
  }
  return 0;
}

int run_export_vcd(const std::string& input, const std::optional<std::string>& out,
                   const std::optional<std::string>& horizon_text) {
  WaveDoc doc = load_doc(input);
  Time horizon(0);
  if (horizon_text) {
    horizon = parse_time_arg(*horizon_text, "horizon");
  } else {
    for (const auto& [name, signal] : doc.entries)
      for (const Time& t : signal.transitions()) horizon = max(horizon, t + Time(1));
  }
  try {
    write_output(out, export_vcd(doc, horizon));
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  return 0;
}

void require_demo(bool condition, const char* what) {
  if (!condition) throw DemoError(std::string("demo self-check failed: ") + what);
}

int run_demo_serial() {
  const Signal u =
      Signal::from_intervals(false, {{Time(0), Time(1)}, {Time(2), Time(3)}, {Time(4), std::nullopt}});
  const Signal x = apply(DelayModel::self_timed(Time(2), false), u);
  const Signal y = apply(DelayModel::self_timed(Time(4), false), x);
  require_demo(x == Signal::from_intervals(false, {{Time(0), Time(3)}, {Time(5), std::nullopt}}),
               "first stage output drifted");
  require_demo(y == Signal::from_intervals(false, {{Time(0), Time(4)}, {Time(8), std::nullopt}}),
               "second stage output drifted");

  std::cout << "two self-timed stages in series (hold 2, then hold 4):\n";
  std::cout << wave_line("u", u) << wave_line("x", x) << wave_line("y", y);

  WindowDemands demands;
  for (const Edge& e : y.edges()) {
    if (e.kind == EdgeKind::rising)
      demands.rise_instants.push_back(e.at);
    else
      demands.fall_instants.push_back(e.at);
  }
  const Time bound(20);
  const WindowSearchOutcome outcome = dominating_window(u, demands, bound);
  require_demo(!outcome.params.has_value(), "a dominating window appeared");
  require_demo(outcome.delta_max && outcome.delta_max->sign() == 0,
               "rising edges no longer force delta = 0");
  bool fall_violation_at_4 = false;
  for (const Violation& v : outcome.violations)
    fall_violation_at_4 |= v.kind == EdgeKind::falling && v.at == Time(4);
  require_demo(fall_violation_at_4, "falling edge at 4 no longer violates");

  std::cout << "searching one window (mu,delta), delta <= " << bound.str()
            << ", covering y's edges against u:\n";
  std::cout << "  rising edges at 0 and 8 force delta = 0, hence mu = 0\n";
  std::cout << "  falling edge at 4 then needs u(4) = 0, but u(4) = 1\n";
  std::cout << "no dominating window (forced delta = mu = 0; falling edge at 4 violates)\n";
  std::cout << "the series of the two stages fits no single sliding window\n";
  return 0;
}

int run_demo_union() {
  const Signal u = Signal::from_intervals(false, {{Time(0), Time(2)}});
  const Window far_window(Time(3), Time(1));   // [t-3, t-2]
  const Window near_window(Time(1), Time(1));  // [t-1, t]
  const Signal rise_demand = erode(u, far_window) | erode(u, near_window);
  const Signal fall_demand = erode(~u, far_window) | erode(~u, near_window);
  require_demo(rise_demand ==
                   Signal::from_intervals(false, {{Time(1), Time(2)}, {Time(3), Time(4)}}),
               "rise demand drifted");
  require_demo(fall_demand == Signal::from_intervals(true, {{Time(2), Time(3)}}),
               "fall demand drifted");

  std::cout << "union of two windows ([t-3,t-2] and [t-1,t]) on a single pulse:\n";
  std::cout << wave_line("u", u) << wave_line("rise_demand", rise_demand)
            << wave_line("fall_demand", fall_demand);

  const Time bound(20);
  const WindowSearchOutcome outcome = dominating_window(u, rise_demand, fall_demand, bound);
  require_demo(!outcome.params.has_value(), "a dominating window appeared");
  require_demo(outcome.delta_max && *outcome.delta_max == Time(1),
               "binding constraint delta <= 1 drifted");
  require_demo(outcome.gamma_min && *outcome.gamma_min == Time(2) && !outcome.gamma_min_strict,
               "binding constraint delta - mu >= 2 drifted");

  std::cout << "searching one window (mu,delta), delta <= " << bound.str()
            << ", dominating both demands:\n";
  std::cout << "  binding constraints: delta - mu >= 2 and delta <= 1\n";
  std::cout << "impossible: delta - mu <= delta, so 2 <= 1 would be needed\n";
  std::cout << "the union of the two windows is no single sliding window\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algebra of binary waveforms under sliding-window edge permissions"};
  app.require_subcommand(1);

  std::string input, state, params, window, model, times, epsilon = "1", bound = "16";
  std::vector<std::string> params_list;
  std::optional<std::string> out, horizon;
  std::string demo_name;

  auto* eval = app.add_subcommand("eval", "print signal values at given instants");
  eval->add_option("--input", input)->required();
  eval->add_option("--times", times)->required();

  auto* erode_cmd = app.add_subcommand("erode", "slide a window AND over each signal");
  erode_cmd->add_option("--input", input)->required();
  erode_cmd->add_option("--window", window)->required();
  erode_cmd->add_option("--out", out);

  auto* apply_cmd = app.add_subcommand("apply", "run signals through a delay pipeline");
  apply_cmd->add_option("--input", input)->required();
  apply_cmd->add_option("--model", model)->required();
  apply_cmd->add_option("--out", out);

  auto* check_ri = app.add_subcommand("check-ri", "edge-permission membership check");
  check_ri->add_option("--input", input)->required();
  check_ri->add_option("--state", state)->required();
  check_ri->add_option("--params", params)->required();

  auto* check_ai = app.add_subcommand("check-ai", "minimum-dwell membership check");
  check_ai->add_option("--state", state)->required();
  check_ai->add_option("--params", params)->required();

  auto* subset = app.add_subcommand("subset", "compare two window params");
  subset->add_option("--params", params_list)->required()->expected(2);

  auto* zeno = app.add_subcommand("zeno", "probe params for arbitrarily narrow pulses");
  zeno->add_option("--params", params)->required();
  zeno->add_option("--epsilon", epsilon);

  auto* fit = app.add_subcommand("fit", "fit maximal windows to observed traces");
  fit->add_option("--input", input)->required();
  fit->add_option("--state", state)->required();
  fit->add_option("--bound", bound);

  auto* demo = app.add_subcommand("demo", "run a built-in worked example");
  demo->add_option("name", demo_name, "serial-counterexample | union-counterexample")
      ->required();

  auto* vcd = app.add_subcommand("export-vcd", "write a VCD dump of the signals");
  vcd->add_option("--input", input)->required();
  vcd->add_option("--out", out);
  vcd->add_option("--horizon", horizon);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) return run_eval(input, times);
    if (erode_cmd->parsed()) return run_erode(input, window, out);
    if (apply_cmd->parsed()) return run_apply(input, model, out);
    if (check_ri->parsed()) return run_check_ri(input, state, params);
    if (check_ai->parsed()) return run_check_ai(state, params);
    if (subset->parsed()) return run_subset(params_list);
    if (zeno->parsed()) return run_zeno(params, epsilon);
    if (fit->parsed()) return run_fit(input, state, bound);
    if (vcd->parsed()) return run_export_vcd(input, out, horizon);
    if (demo->parsed()) {
      if (demo_name == "serial-counterexample") return run_demo_serial();
      if (demo_name == "union-counterexample") return run_demo_union();
      throw UsageError("unknown demo '" + demo_name + "'");
    }
  } catch (const DemoError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const WaveParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
