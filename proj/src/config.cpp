// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#include "hillcert/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "hillcert/io.hpp"

namespace hillcert {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  double x = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw usage_error("option '" + key + "' expects a number, got '" + value +
                      "'");
  return x;
}

int parse_int(const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  long x = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0')
    throw usage_error("option '" + key + "' expects an integer, got '" +
                      value + "'");
  return static_cast<int>(x);
}

// Accept "[4, -1]" and "4,-1" alike.
std::vector<int> parse_int_list(const std::string& key,
                                const std::string& value) {
  std::string body = trim(value);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']')
      throw usage_error("option '" + key + "' has an unterminated array");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<int> entries;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw usage_error("option '" + key + "' has an empty array entry");
    entries.push_back(parse_int(key, item));
  }
  if (entries.empty())
    throw usage_error("option '" + key + "' expects a non-empty integer list");
  return entries;
}

// Strip quotes from a TOML string value; bare tokens pass through.
std::string unquote(const std::string& key, const std::string& value) {
  if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'')) {
    if (value.back() != value.front())
      throw usage_error("option '" + key + "' has an unterminated string");
    return value.substr(1, value.size() - 2);
  }
  return value;
}

bool is_system_param(const std::string& key) {
  static const char* names[] = {"alpha", "beta",  "gamma", "delta",
                                "eps",   "F",     "omega"};
  return std::find_if(std::begin(names), std::end(names), [&](const char* n) {
           return key == n;
         }) != std::end(names);
}

}  // namespace

std::map<std::string, std::string> parse_toml_lite(const std::string& text) {
  std::map<std::string, std::string> entries;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Strip comments, respecting quoted strings.
    bool in_quote = false;
    char quote = '\0';
    for (size_t i = 0; i < line.size(); ++i) {
      char c = line[i];
      if (in_quote) {
        if (c == quote) in_quote = false;
      } else if (c == '"' || c == '\'') {
        in_quote = true;
        quote = c;
      } else if (c == '#') {
        line = line.substr(0, i);
        break;
      }
    }
    std::string stripped = trim(line);
    if (stripped.empty()) continue;
    if (stripped.front() == '[' && stripped.find('=') == std::string::npos)
      throw usage_error("config line " + std::to_string(lineno) +
                        ": section headers are not supported (use flat keys)");
    size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw usage_error("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw usage_error("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    if (entries.count(key) != 0)
      throw usage_error("config line " + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    entries[key] = value;
  }
  return entries;
}

void apply_option(RunConfig& config, const std::string& key,
                  const std::string& value) {
  if (key == "system") {
    config.system = unquote(key, value);
  } else if (key == "series_file") {
    config.series_file = unquote(key, value);
  } else if (key == "solution_file") {
    config.solution_file = unquote(key, value);
  } else if (is_system_param(key)) {
    config.params[key] = parse_double(key, value);
  } else if (key == "N") {
    config.N = parse_int(key, value);
  } else if (key == "edes") {
    config.E_des = parse_double(key, value);
  } else if (key == "formulation") {
    std::string v = unquote(key, value);
    if (v == "direct")
      config.formulation = Formulation::Direct;
    else if (v == "subharmonic")
      config.formulation = Formulation::Subharmonic;
    else if (v == "reference")
      config.formulation = Formulation::Reference;
    else
      throw usage_error(
          "option 'formulation' expects direct|subharmonic|reference, got '" +
          v + "'");
  } else if (key == "t") {
    config.t = parse_double(key, value);
  } else if (key == "env_a") {
    config.env_a = parse_double(key, value);
  } else if (key == "env_b") {
    config.env_b = parse_double(key, value);
  } else if (key == "circle_samples") {
    config.circle_samples = parse_int(key, value);
  } else if (key == "axis_samples") {
    config.axis_samples = parse_int(key, value);
  } else if (key == "delta_min") {
    config.delta_min = parse_double(key, value);
  } else if (key == "delta_max") {
    config.delta_max = parse_double(key, value);
  } else if (key == "delta_count") {
    config.delta_count = parse_int(key, value);
  } else if (key == "eps_min") {
    config.eps_min = parse_double(key, value);
  } else if (key == "eps_max") {
    config.eps_max = parse_double(key, value);
  } else if (key == "eps_count") {
    config.eps_count = parse_int(key, value);
  } else if (key == "n_max") {
    config.n_max = parse_int(key, value);
  } else if (key == "tuple") {
    config.tuple = parse_int_list(key, value);
  } else if (key == "t_max") {
    config.t_max = parse_double(key, value);
  } else if (key == "samples") {
    config.samples = parse_int(key, value);
  } else if (key == "n_h") {
    config.n_h = parse_int(key, value);
  } else if (key == "out") {
    config.out = unquote(key, value);
  } else {
    throw usage_error("unknown option '" + key + "'");
  }
}

RunConfig parse_run_config(const std::vector<std::string>& args) {
  // Collect (key, value) pairs from the flags, remembering --config.
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> flag_options;
  for (size_t i = 0; i < args.size(); ++i) {
    const std::string& arg = args[i];
    if (arg.rfind("--", 0) != 0)
      throw usage_error("unexpected argument '" + arg + "' (flags are --key value)");
    std::string key = arg.substr(2);
    std::string value;
    size_t eq = key.find('=');
    if (eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else {
      if (i + 1 >= args.size())
        throw usage_error("flag '" + arg + "' is missing its value");
      value = args[++i];
    }
    if (key.empty()) throw usage_error("malformed flag '" + arg + "'");
    // Spell CLI flags with '-' onto config keys with '_'. The capital-N
    // truncation flag and the forcing amplitude F keep their case.
    std::replace(key.begin(), key.end(), '-', '_');
    if (key == "config") {
      if (!config_path.empty())
        throw usage_error("duplicate --config flag");
      config_path = value;
      continue;
    }
    flag_options.emplace_back(key, value);
  }

  RunConfig config;
  if (!config_path.empty()) {
    for (const auto& [key, value] : parse_toml_lite(read_text_file(config_path)))
      apply_option(config, key, value);
  }
  // Flags win: applied after the file.
  for (const auto& [key, value] : flag_options)
    apply_option(config, key, value);
  return config;
}

int threads_from_env() {
  unsigned hw = std::thread::hardware_concurrency();
  int fallback = hw == 0 ? 1 : static_cast<int>(hw);
  const char* raw = std::getenv("HILLCERT_THREADS");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 1) return fallback;
  return static_cast<int>(std::min<long>(v, 256));
}

}  // namespace hillcert
