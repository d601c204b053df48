#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gendiv {

/// Flat `key = value` settings with dotted keys. `#` starts a comment.
class ConfigMap {
 public:
  /// Throws ConfigError for malformed lines or duplicate keys.
  static ConfigMap parse(std::istream& in);
  /// Throws IoError if the file cannot be read.
  static ConfigMap load(const std::filesystem::path& path);

  void set(std::string key, std::string value) { entries_[std::move(key)] = std::move(value); }
  std::optional<std::string> get(std::string_view key) const;
  bool contains(std::string_view key) const { return entries_.find(std::string(key)) != entries_.end(); }
  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

  /// Throws ConfigError for the first key not in `known`.
  void reject_unknown(std::span<const std::string_view> known) const;

 private:
  std::map<std::string, std::string> entries_;
};

/// `diversity.lambda` -> `GENDIV_DIVERSITY_LAMBDA`.
std::string env_name(std::string_view key, std::string_view prefix = "GENDIV_");

using EnvLookup = std::function<const char*(const char*)>;

/// For every key in `known`, a set environment variable overrides the file.
void apply_env_overrides(ConfigMap& config, std::span<const std::string_view> known,
                         const EnvLookup& lookup);

// Typed accessors. All throw ConfigError naming `key` on malformed values.
double parse_real(std::string_view key, std::string_view text);
std::uint64_t parse_unsigned(std::string_view key, std::string_view text);
bool parse_bool(std::string_view key, std::string_view text);
std::vector<double> parse_real_list(std::string_view key, std::string_view text);
std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

}  // namespace gendiv
