#pragma once

#include <map>
#include <set>
#include <string>

#include "lipmab/simulator.hpp"

namespace lipmab {

// Config file error carrying the 1-based line number of the offending entry
// (0 when no line applies).
struct config_error : std::runtime_error {
  int line;
  explicit config_error(int line_, const std::string& message)
      : std::runtime_error(message), line(line_) {}
};

// Flat key-value config with [section] headers; keys address as
// "section.key". Section names may be dotted for nesting (e.g.
// [metric.left]).
class FlatConfig {
 public:
  static FlatConfig parse_file(const std::string& path);
  static FlatConfig parse_text(const std::string& text);

  bool has(const std::string& key) const;
  int line_of(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::vector<std::string> get_list(const std::string& key) const;  // ';'-separated

  void set(const std::string& key, const std::string& value);

  // Keys never read by any accessor; used to reject typos.
  std::vector<std::string> unconsumed() const;
  const std::map<std::string, std::pair<std::string, int>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::pair<std::string, int>> entries_;  // key -> (value, line)
  mutable std::set<std::string> consumed_;
};

struct ExperimentConfig {
  ProblemInstance instance;
  AlgorithmConfig algorithm;
  std::uint64_t horizon = 1024;
  std::uint64_t seed_base = 1;
  std::size_t seed_count = 2;
  std::string output_dir = "out";
  std::string prefix = "experiment";
  double fit_window_fraction = 0.5;
};

// Builds and validates the full experiment; throws config_error with the
// offending line on bad input.
ExperimentConfig build_experiment(const FlatConfig& cfg);

MetricDescriptor build_metric(const FlatConfig& cfg, const std::string& section);
PayoffDescriptor build_payoff(const FlatConfig& cfg, const MetricDescriptor& metric);
RewardModel build_reward(const FlatConfig& cfg);
AlgorithmConfig build_algorithm(const FlatConfig& cfg, const MetricDescriptor& metric);

// Point literal per space kind: interval "0.3"; finite "2"; tree "0:1:0"
// (padded with zeros to full depth); product "<left>|<right>".
Point parse_point(const MetricDescriptor& m, const std::string& text, int line);

}  // namespace lipmab
