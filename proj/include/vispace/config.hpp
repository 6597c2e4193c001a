#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vispace/luneburg.hpp"

namespace vispace {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

inline double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t.empty()) {
    throw std::invalid_argument(what + ": empty numeric value");
  }
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) {
    throw std::invalid_argument(what + ": bad numeric value '" + t + "'");
  }
  return v;
}

}  // namespace detail

// Observer records as flat key-value text: name=, tau=, nu=, optional K3=,
// one observer per block, blank lines separating blocks, '#' starts a
// comment line.
inline std::vector<ObserverProfile> parse_observer_config(
    const std::string& text) {
  std::vector<ObserverProfile> observers;
  std::optional<std::string> name;
  std::optional<double> tau, nu, K3;

  const auto flush = [&]() {
    if (!name && !tau && !nu && !K3) {
      return;
    }
    if (!name || !tau || !nu) {
      throw std::invalid_argument(
          "observer config: record needs name, tau, and nu");
    }
    observers.emplace_back(*name, *tau, *nu, K3.value_or(-1.0));
    name.reset();
    tau.reset();
    nu.reset();
    K3.reset();
  };

  std::istringstream stream(text);
  std::string raw;
  while (std::getline(stream, raw)) {
    const std::string line = detail::trim(raw);
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("observer config: expected key=value, got '" +
                                  line + "'");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    const auto assign = [&](auto& slot, auto parsed) {
      if (slot) {
        throw std::invalid_argument("observer config: duplicate key '" + key +
                                    "'");
      }
      slot = parsed;
    };
    if (key == "name") {
      if (value.empty()) {
        throw std::invalid_argument("observer config: empty name");
      }
      assign(name, value);
    } else if (key == "tau") {
      assign(tau, detail::parse_double(value, "tau"));
    } else if (key == "nu") {
      assign(nu, detail::parse_double(value, "nu"));
    } else if (key == "K3") {
      assign(K3, detail::parse_double(value, "K3"));
    } else {
      throw std::invalid_argument("observer config: unknown key '" + key + "'");
    }
  }
  flush();
  if (observers.empty()) {
    throw std::invalid_argument("observer config: no records found");
  }
  return observers;
}

inline std::vector<ObserverProfile> load_observer_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot read config file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_observer_config(buffer.str());
}

inline const ObserverProfile& find_observer(
    const std::vector<ObserverProfile>& observers, const std::string& name) {
  for (const auto& o : observers) {
    if (o.name == name) {
      return o;
    }
  }
  throw std::invalid_argument("unknown observer '" + name + "'");
}

}  // namespace vispace
