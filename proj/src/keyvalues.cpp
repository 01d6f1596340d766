#include "matint/keyvalues.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace matint {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  // %.17g always round-trips; try shorter representations first.
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    double parsed = 0.0;
    std::sscanf(buf, "%lf", &parsed);
    if (parsed == value) break;
  }
  return buf;
}

void KeyValues::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void KeyValues::set_double(const std::string& key, double value) {
  set(key, format_double(value));
}

void KeyValues::set_list(const std::string& key,
                         const std::vector<double>& values) {
  std::string joined;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) joined += ",";
    joined += format_double(values[i]);
  }
  set(key, joined);
}

std::optional<std::string> KeyValues::get(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  return std::nullopt;
}

std::optional<double> KeyValues::get_double(const std::string& key) const {
  const auto raw = get(key);
  if (!raw) return std::nullopt;
  try {
    return std::stod(*raw);
  } catch (const std::exception&) {
    throw std::invalid_argument("key '" + key + "' is not a number: " + *raw);
  }
}

std::optional<std::vector<double>> KeyValues::get_list(
    const std::string& key) const {
  const auto raw = get(key);
  if (!raw) return std::nullopt;
  std::vector<double> out;
  std::stringstream ss(*raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("key '" + key + "' has a non-numeric item: " + item);
    }
  }
  return out;
}

void KeyValues::write(std::ostream& os, const std::string& prefix) const {
  for (const auto& [k, v] : entries_) os << prefix << k << " = " << v << "\n";
}

KeyValues KeyValues::parse(std::istream& is, const std::string& comment_prefix) {
  KeyValues kv;
  std::string line;
  while (std::getline(is, line)) {
    std::string body = trim(line);
    if (!comment_prefix.empty() && body.rfind(comment_prefix, 0) == 0)
      body = trim(body.substr(comment_prefix.size()));
    const auto eq = body.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (!key.empty()) kv.set(key, value);
  }
  return kv;
}

}  // namespace matint
