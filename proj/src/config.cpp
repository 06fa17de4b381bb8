#include "vvmhd/config.hpp"

#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "vvmhd/grid.hpp"
#include "vvmhd/params.hpp"

namespace vvmhd {
namespace {

struct Entry {
  std::string value;
  int line;
};

[[noreturn]] void fail(int line, const std::string& what) {
  std::ostringstream msg;
  msg << "config line " << line << ": " << what;
  throw std::runtime_error(msg.str());
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::map<std::string, Entry> tokenize(const std::string& text) {
  std::map<std::string, Entry> out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) fail(line, "expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    if (out.count(key)) fail(line, "duplicate key '" + key + "'");
    out.emplace(key, Entry{value, line});
  }
  return out;
}

double parse_double(const std::string& key, const Entry& e) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(e.value, &pos);
  } catch (const std::exception&) {
    fail(e.line, "invalid number for '" + key + "': '" + e.value + "'");
  }
  if (pos != e.value.size())
    fail(e.line, "trailing characters after number for '" + key + "'");
  return v;
}

long long parse_int(const std::string& key, const Entry& e) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(e.value, &pos);
  } catch (const std::exception&) {
    fail(e.line, "invalid integer for '" + key + "': '" + e.value + "'");
  }
  if (pos != e.value.size())
    fail(e.line, "trailing characters after integer for '" + key + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& key, const Entry& e) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(e.value, &pos);
  } catch (const std::exception&) {
    fail(e.line, "invalid seed for '" + key + "': '" + e.value + "'");
  }
  if (pos != e.value.size())
    fail(e.line, "trailing characters after integer for '" + key + "'");
  return v;
}

SystemKind parse_system(const Entry& e) {
  if (e.value == "mhd") return SystemKind::mhd;
  if (e.value == "vvv_mhd") return SystemKind::vvv_mhd;
  fail(e.line, "system must be 'mhd' or 'vvv_mhd', got '" + e.value + "'");
}

InitialKind parse_initial(const Entry& e) {
  if (e.value == "taylor_green") return InitialKind::taylor_green;
  if (e.value == "abc") return InitialKind::abc;
  if (e.value == "random_band") return InitialKind::random_band;
  fail(e.line, "initial_kind must be taylor_green, abc or random_band, got '" +
                   e.value + "'");
}

std::vector<double> parse_alpha_list(const Entry& e) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(e.value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(e.line, "empty entry in alphas list");
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      fail(e.line, "invalid number in alphas list: '" + item + "'");
    }
    if (pos != item.size())
      fail(e.line, "trailing characters in alphas entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) fail(e.line, "alphas list is empty");
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void RunConfig::validate() const {
  GridSpec probe(n);
  PhysParams params(nu, eta, alpha);
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::runtime_error("dt must be > 0 and finite");
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    throw std::runtime_error("t_end must be >= 0 and finite");
  if (record_every < 1)
    throw std::runtime_error("record_every must be >= 1");
  if (!(amplitude > 0.0) || !std::isfinite(amplitude))
    throw std::runtime_error("amplitude must be > 0 and finite");
  if (output.empty()) throw std::runtime_error("output must be nonempty");
}

ParsedConfig parse_config(const std::string& text) {
  auto entries = tokenize(text);
  const bool is_sweep = entries.count("alphas") != 0;

  auto take = [&](const char* key) -> std::optional<Entry> {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    Entry copy = it->second;
    entries.erase(it);
    return copy;
  };
  auto require = [&](const char* key) -> Entry {
    auto e = take(key);
    if (!e)
      throw std::runtime_error(std::string("missing required key '") + key +
                               "'");
    return *e;
  };

  ParsedConfig result;
  if (is_sweep) {
    SweepPlan plan;
    if (entries.count("alpha")) {
      fail(entries.at("alpha").line,
           "'alpha' conflicts with 'alphas'; a sweep takes only the list");
    }
    plan.alphas = parse_alpha_list(require("alphas"));
    plan.n = static_cast<int>(parse_int("n", require("n")));
    plan.nu = parse_double("nu", require("nu"));
    plan.eta = parse_double("eta", require("eta"));
    plan.dt = parse_double("dt", require("dt"));
    plan.t_end = parse_double("t_end", require("t_end"));
    if (auto e = take("record_every"))
      plan.record_every = static_cast<int>(parse_int("record_every", *e));
    if (auto e = take("initial_kind")) plan.kind = parse_initial(*e);
    if (auto e = take("amplitude"))
      plan.amplitude = parse_double("amplitude", *e);
    if (auto e = take("seed")) plan.seed = parse_u64("seed", *e);
    if (auto e = take("output_prefix")) plan.output_prefix = e->value;
    if (!entries.empty()) {
      const auto& bad = *entries.begin();
      fail(bad.second.line, "unknown key '" + bad.first + "'");
    }
    plan.validate();
    result = plan;
  } else {
    RunConfig cfg;
    cfg.system = parse_system(require("system"));
    cfg.n = static_cast<int>(parse_int("n", require("n")));
    cfg.nu = parse_double("nu", require("nu"));
    cfg.eta = parse_double("eta", require("eta"));
    cfg.alpha = parse_double("alpha", require("alpha"));
    cfg.dt = parse_double("dt", require("dt"));
    cfg.t_end = parse_double("t_end", require("t_end"));
    if (auto e = take("record_every"))
      cfg.record_every = static_cast<int>(parse_int("record_every", *e));
    if (auto e = take("initial_kind"))
      cfg.initial_kind = parse_initial(*e);
    if (auto e = take("amplitude"))
      cfg.amplitude = parse_double("amplitude", *e);
    if (auto e = take("seed")) cfg.seed = parse_u64("seed", *e);
    if (auto e = take("output")) cfg.output = e->value;
    if (auto e = take("checkpoint_out")) cfg.checkpoint_out = e->value;
    if (auto e = take("restart_from")) cfg.restart_from = e->value;
    if (!entries.empty()) {
      const auto& bad = *entries.begin();
      fail(bad.second.line, "unknown key '" + bad.first + "'");
    }
    cfg.validate();
    result = cfg;
  }
  return result;
}

std::string to_string(SystemKind kind) {
  return kind == SystemKind::mhd ? "mhd" : "vvv_mhd";
}

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::taylor_green: return "taylor_green";
    case InitialKind::abc: return "abc";
    case InitialKind::random_band: return "random_band";
  }
  return "taylor_green";
}

std::string print_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "system=" << to_string(cfg.system) << '\n';
  out << "n=" << cfg.n << '\n';
  out << "nu=" << fmt(cfg.nu) << '\n';
  out << "eta=" << fmt(cfg.eta) << '\n';
  out << "alpha=" << fmt(cfg.alpha) << '\n';
  out << "dt=" << fmt(cfg.dt) << '\n';
  out << "t_end=" << fmt(cfg.t_end) << '\n';
  out << "record_every=" << cfg.record_every << '\n';
  out << "initial_kind=" << to_string(cfg.initial_kind) << '\n';
  out << "amplitude=" << fmt(cfg.amplitude) << '\n';
  out << "seed=" << cfg.seed << '\n';
  out << "output=" << cfg.output << '\n';
  out << "checkpoint_out=" << cfg.checkpoint_out << '\n';
  out << "restart_from=" << cfg.restart_from << '\n';
  return out.str();
}

std::string print_config(const SweepPlan& plan) {
  std::ostringstream out;
  out << "alphas=";
  for (std::size_t i = 0; i < plan.alphas.size(); ++i) {
    if (i) out << ',';
    out << fmt(plan.alphas[i]);
  }
  out << '\n';
  out << "n=" << plan.n << '\n';
  out << "nu=" << fmt(plan.nu) << '\n';
  out << "eta=" << fmt(plan.eta) << '\n';
  out << "dt=" << fmt(plan.dt) << '\n';
  out << "t_end=" << fmt(plan.t_end) << '\n';
  out << "record_every=" << plan.record_every << '\n';
  out << "initial_kind=" << to_string(plan.kind) << '\n';
  out << "amplitude=" << fmt(plan.amplitude) << '\n';
  out << "seed=" << plan.seed << '\n';
  out << "output_prefix=" << plan.output_prefix << '\n';
  return out.str();
}

}  // namespace vvmhd
