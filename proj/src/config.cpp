#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "offload/cli.hpp"

namespace offload::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_double(const std::string& field, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  // Accept simple fractions such as 1/6.
  if (const auto slash = text.find('/'); slash != std::string_view::npos)
    return to_double(field, text.substr(0, slash)) / to_double(field, text.substr(slash + 1));
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError(field, "expected a number, got '" + std::string(text) + "'");
  return v;
}

long long to_integer(const std::string& field, std::string_view text) {
  text = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError(field, "expected an integer, got '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split_list(const std::string& field, std::string_view text) {
  text = trim(text);
  if (!text.empty() && (text.front() == '[' || text.front() == '(')) {
    const char close = text.front() == '[' ? ']' : ')';
    if (text.back() != close) throw ConfigError(field, "unterminated list");
    text = trim(text.substr(1, text.size() - 2));
  }
  std::vector<std::string_view> items;
  if (text.empty()) return items;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    items.push_back(trim(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

}  // namespace

TaskQueueState parse_state(std::string_view text) {
  std::vector<int> counts;
  for (auto item : split_list("state", text)) {
    const long long c = to_integer("state", item);
    if (c < 0) throw ConfigError("state", "task counts must be non-negative");
    counts.push_back(static_cast<int>(c));
  }
  if (counts.empty()) throw ConfigError("state", "empty state");
  return TaskQueueState(std::move(counts));
}

std::vector<TaskQueueState> parse_chain(std::string_view text) {
  std::vector<TaskQueueState> chain;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto semi = text.find(';', start);
    const auto part = trim(text.substr(start, semi - start));
    if (!part.empty()) chain.push_back(parse_state(part));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return chain;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, std::string> values;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    const std::string key(trim(body.substr(0, eq)));
    if (values.contains(key)) throw ConfigError(key, "given more than once");
    values.emplace(key, std::string(trim(body.substr(eq + 1))));
  }

  static const std::set<std::string> known = {"N",       "p_u",           "mu",       "C_o",
                                              "C_p",     "p",             "p_0",      "horizon",
                                              "episodes", "initial_state", "seed",     "output_dir"};
  for (const auto& [key, v] : values)
    if (!known.contains(key)) throw ConfigError(key, "unknown key");

  auto required = [&](const std::string& key) -> const std::string& {
    const auto it = values.find(key);
    if (it == values.end()) throw ConfigError(key, "missing required key");
    return it->second;
  };

  const long long N = to_integer("N", required("N"));
  if (N < 1 || N > 12) throw ConfigError("N", "must lie in 1..12");
  cfg.model.N = static_cast<int>(N);
  cfg.model.p_u = to_double("p_u", required("p_u"));
  cfg.model.mu = to_double("mu", required("mu"));
  cfg.model.C_o = to_double("C_o", required("C_o"));
  cfg.model.C_p = to_double("C_p", required("C_p"));

  if (values.contains("p") == values.contains("p_0"))
    throw ConfigError("p", "give exactly one of 'p' (full distribution) or 'p_0' (uniform rest)");
  if (values.contains("p")) {
    cfg.model.arrival.clear();
    for (auto item : split_list("p", values["p"])) cfg.model.arrival.push_back(to_double("p", item));
    if (cfg.model.arrival.size() != static_cast<std::size_t>(N) + 1)
      throw ConfigError("p", "needs N+1 = " + std::to_string(N + 1) + " entries");
  } else {
    const double p0 = to_double("p_0", values["p_0"]);
    cfg.model = ModelParams::with_uniform_arrivals(cfg.model.N, cfg.model.p_u, cfg.model.mu,
                                                   cfg.model.C_o, cfg.model.C_p, p0);
  }

  if (values.contains("horizon")) {
    const long long T = to_integer("horizon", values["horizon"]);
    if (T < 1) throw ConfigError("horizon", "must be at least 1");
    cfg.horizon = static_cast<int>(T);
  }
  if (values.contains("episodes")) {
    const long long e = to_integer("episodes", values["episodes"]);
    if (e < 1) throw ConfigError("episodes", "must be at least 1");
    cfg.episodes = static_cast<int>(e);
  }
  if (values.contains("seed")) {
    const long long sd = to_integer("seed", values["seed"]);
    if (sd < 0) throw ConfigError("seed", "must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(sd);
  }
  if (values.contains("output_dir")) cfg.output_dir = values["output_dir"];

  if (values.contains("initial_state")) {
    try {
      cfg.initial_state = parse_state(values["initial_state"]);
    } catch (const ConfigError& e) {
      throw ConfigError("initial_state", e.what());
    }
    if (cfg.initial_state.size() != static_cast<std::size_t>(N))
      throw ConfigError("initial_state", "needs N = " + std::to_string(N) + " components");
  } else {
    cfg.initial_state = TaskQueueState(static_cast<std::size_t>(N));
  }

  try {
    cfg.model.validate(1e-9);
  } catch (const ContractError& e) {
    const std::string what = e.what();
    // Validation messages start with the name of the violated field.
    std::string field = what.substr(0, what.find(' '));
    if (field == "arrival") field = values.contains("p") ? "p" : "p_0";
    throw ConfigError(field, what);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_cost(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void add_slice_term(SliceSpec& slice, std::string_view term) {
  const auto eq = term.find('=');
  if (eq == std::string_view::npos) throw ConfigError("slice", "expected k=v, got '" + std::string(term) + "'");
  auto key = trim(term.substr(0, eq));
  if (!key.empty() && (key.front() == 'n' || key.front() == 'N')) key.remove_prefix(1);
  if (!key.empty() && key.front() == '_') key.remove_prefix(1);
  const long long d = to_integer("slice", key);
  const long long v = to_integer("slice", term.substr(eq + 1));
  if (d < 1) throw ConfigError("slice", "deadline must be at least 1");
  if (v < 0) throw ConfigError("slice", "count must be non-negative");
  slice.fixed[static_cast<int>(d)] = static_cast<int>(v);
}

void set_box(SliceSpec& slice, std::string_view range) {
  const auto dots = range.find("..");
  if (dots == std::string_view::npos) throw ConfigError("box", "expected lo..hi");
  slice.box_lo = static_cast<int>(to_integer("box", range.substr(0, dots)));
  slice.box_hi = static_cast<int>(to_integer("box", range.substr(dots + 2)));
  if (slice.box_lo < 0) throw ConfigError("box", "lower bound must be non-negative");
}

}  // namespace offload::cli
