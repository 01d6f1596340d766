#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace matint {

/// Ordered flat `key = value` store backing both config files and the
/// metadata header of curve output, so a curve run can be reproduced from its
/// own output. Lines starting with the comment prefix have it stripped before
/// parsing; blank lines and lines without '=' are skipped.
class KeyValues {
 public:
  void set(const std::string& key, const std::string& value);
  void set_double(const std::string& key, double value);
  void set_list(const std::string& key, const std::vector<double>& values);

  std::optional<std::string> get(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<std::vector<double>> get_list(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  /// One `prefix key = value` line per entry, in insertion order.
  void write(std::ostream& os, const std::string& prefix = "") const;

  static KeyValues parse(std::istream& is, const std::string& comment_prefix = "#");

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Round-trip exact formatting for doubles (shortest form that parses back).
std::string format_double(double value);

}  // namespace matint
