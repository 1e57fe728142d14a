#include "config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <set>

#include "spinopt/error.hpp"

namespace spinctl {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string at_line(std::size_t line, const std::string& message) {
  return "line " + std::to_string(line) + ": " + message;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = value.find(',', start);
    out.emplace_back(trim(value.substr(start, comma == std::string_view::npos ? value.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

enum class Section { top, hamiltonian, constraint };

}  // namespace

double parse_real(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  if (s.empty()) throw ConfigError(std::string(what) + ": empty value");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(std::string(what) + ": not a finite real: " + s);
  }
  return v;
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::map<std::string, std::string> top;
  std::map<std::string, std::size_t> top_lines;
  std::vector<std::pair<std::string, std::size_t>> h_lines;
  std::vector<std::pair<std::string, std::size_t>> f_lines;
  std::set<Section> seen_sections;
  Section section = Section::top;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(at_line(line_no, "malformed section header"));
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (name == "hamiltonian") {
        section = Section::hamiltonian;
      } else if (name == "constraint") {
        section = Section::constraint;
      } else {
        throw ConfigError(at_line(line_no, "unknown section: " + name));
      }
      if (!seen_sections.insert(section).second) throw ConfigError(at_line(line_no, "duplicate section: " + name));
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(at_line(line_no, "malformed line (expected key = value)"));
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) throw ConfigError(at_line(line_no, "malformed line (expected key = value)"));

    switch (section) {
      case Section::top: {
        static const std::set<std::string> known{"group", "split", "h", "T", "stride", "seed"};
        if (!known.count(key)) throw ConfigError(at_line(line_no, "unknown key: " + key));
        if (!top.emplace(key, value).second) throw ConfigError(at_line(line_no, "duplicate key: " + key));
        top_lines[key] = line_no;
        break;
      }
      case Section::hamiltonian:
      case Section::constraint: {
        auto& target = section == Section::hamiltonian ? config.hamiltonian : config.constraint;
        double v = 0.0;
        try {
          v = parse_real(value, key);
        } catch (const ConfigError& e) {
          throw ConfigError(at_line(line_no, e.what()));
        }
        if (!target.emplace(key, v).second) throw ConfigError(at_line(line_no, "duplicate key: " + key));
        (section == Section::hamiltonian ? h_lines : f_lines).emplace_back(key, line_no);
        break;
      }
    }
  }

  for (const char* required : {"group", "split", "h", "T"}) {
    if (!top.count(required)) throw ConfigError(std::string("missing key: ") + required);
  }

  const auto with_line = [&top_lines](const std::string& key, auto&& fn) {
    try {
      fn();
    } catch (const ConfigError& e) {
      throw ConfigError(at_line(top_lines.at(key), e.what()));
    } catch (const spinopt::DomainError& e) {
      throw ConfigError(at_line(top_lines.at(key), e.what()));
    }
  };

  with_line("group", [&] { config.group = spinopt::parse_group(top.at("group")); });
  with_line("h", [&] {
    config.h = parse_real(top.at("h"), "h");
    if (!(config.h > 0.0)) throw ConfigError("h must be positive");
  });
  with_line("T", [&] {
    config.T = parse_real(top.at("T"), "T");
    if (!(config.T > 0.0)) throw ConfigError("T must be positive");
  });
  if (top.count("stride")) {
    with_line("stride", [&] {
      const double s = parse_real(top.at("stride"), "stride");
      if (s < 1.0 || s != std::floor(s) || s > 1e12) throw ConfigError("stride must be an integer >= 1");
      config.stride = static_cast<std::size_t>(s);
    });
  }
  if (top.count("seed")) {
    with_line("seed", [&] {
      const std::string& s = top.at("seed");
      if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ConfigError("seed must be a non-negative integer");
      }
      errno = 0;
      config.seed = std::strtoull(s.c_str(), nullptr, 10);
      if (errno == ERANGE) throw ConfigError("seed out of range");
    });
  }

  const spinopt::GeneratorBasis basis = spinopt::build_basis(config.group);
  with_line("split", [&] {
    config.split = split_list(top.at("split"));
    std::set<std::string> distinct;
    for (const auto& label : config.split) {
      if (label.empty()) throw ConfigError("split: empty label");
      if (!basis.find(label)) {
        throw ConfigError("split: label " + label + " not in " + std::string(spinopt::to_string(config.group)));
      }
      if (!distinct.insert(label).second) throw ConfigError("split: duplicate label " + label);
    }
    if (config.split.size() == basis.size()) throw ConfigError("split: constraint span would be empty");
  });

  const std::set<std::string> in_split(config.split.begin(), config.split.end());
  for (const auto& [label, line] : h_lines) {
    if (!basis.find(label)) {
      throw ConfigError(at_line(line, "label " + label + " not in " + std::string(spinopt::to_string(config.group))));
    }
    if (!in_split.count(label)) throw ConfigError(at_line(line, "hamiltonian label " + label + " not in split"));
  }
  for (const auto& [label, line] : f_lines) {
    if (!basis.find(label)) {
      throw ConfigError(at_line(line, "label " + label + " not in " + std::string(spinopt::to_string(config.group))));
    }
    if (in_split.count(label)) throw ConfigError(at_line(line, "constraint label " + label + " is in split"));
  }
  return config;
}

spinopt::ControlSplit make_split(const RunConfig& config) {
  return spinopt::ControlSplit::from_labels(spinopt::build_basis(config.group), config.split);
}

spinopt::OperatorPair initial_pair(const RunConfig& config, const spinopt::ControlSplit& split) {
  spinopt::OperatorPair pair;
  for (const auto& label : split.hamiltonian_labels()) {
    const auto it = config.hamiltonian.find(label);
    pair.h.push_back(it == config.hamiltonian.end() ? 0.0 : it->second);
  }
  for (const auto& label : split.constraint_labels()) {
    const auto it = config.constraint.find(label);
    pair.f.push_back(it == config.constraint.end() ? 0.0 : it->second);
  }
  return pair;
}

}  // namespace spinctl
