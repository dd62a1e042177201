#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypcoh/hyperbolicity.hpp"

namespace hypcoh {

/// Flat ordered key=value report with exact rationals as num/den.
class Report {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const Rational& value);
  void add(const std::string& key, std::size_t value);
  void add(const std::string& key, bool value);

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  /// Throws InvalidArgument for a missing key.
  const std::string& at(const std::string& key) const;
  bool has(const std::string& key) const;

  std::string machine() const;
  std::string human() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct PipelineConfig {
  std::string group = "F2";
  std::vector<std::string> subgroup{"a"};
  unsigned radius = 4;
  std::optional<unsigned> depth;
  /// Filling radii for the IPI constants.
  std::vector<unsigned> ipi_radii{2};
  /// Closed paths through the identity up to this length.
  std::size_t ipi_max_len = 4;
  /// Evenly spaced subset of those paths; 0 keeps all.
  std::size_t ipi_max_paths = 24;
  std::uint64_t seed = 1;
  /// Random triples on which d(phi - psi) = f is checked besides the horoballs.
  std::size_t sampled_triples = 20000;
  DeltaOptions delta;
};

/// Cayley ball -> coset family -> cusped space; delta reports, IPI constants,
/// projection axioms on the horoballs, then make_relative on d(random 1-cochain),
/// a cone primitive phi and extend_cocycle giving psi with d(phi - psi) = f and
/// phi - psi vanishing on the horoballs. All checks are exact.
Report run_pipeline(const PipelineConfig& config);

}  // namespace hypcoh
