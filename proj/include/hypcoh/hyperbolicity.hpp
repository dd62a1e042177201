#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypcoh/chain.hpp"
#include "hypcoh/filling.hpp"
#include "hypcoh/graph.hpp"

namespace hypcoh {

struct DeltaOptions {
  /// Exhaustive enumeration up to this many vertices, seeded sampling above.
  std::size_t exhaustive_cap = 80;
  std::size_t samples = 200000;
  std::uint64_t seed = 1;
};

struct DeltaReport {
  Distance slim = 0;
  Rational fourpoint = 0;
  bool slim_exhaustive = true;
  bool fourpoint_exhaustive = true;
  /// Slim constant is measured over the deterministic geodesics only.
  std::string method = "deterministic-geodesics";
};

/// Max over 4-tuples of (largest - second largest pair sum)/2. Throws Disconnected.
Rational delta_fourpoint(const GeodesicTable& t, const DeltaOptions& opts = {}, bool* exhaustive = nullptr);

/// Smallest d such that each side of every triangle of deterministic
/// geodesics lies in the d-neighbourhood of the other two. Throws Disconnected.
Distance delta_slim(const GeodesicTable& t, const DeltaOptions& opts = {}, bool* exhaustive = nullptr);

DeltaReport delta_report(const GeodesicTable& t, const DeltaOptions& opts = {});

struct HyperbolicFillingReport {
  /// max |b|_F^R / (R |b|_1)
  std::optional<Rational> c_measured;
  std::size_t examined = 0;
  /// Cycles of the input that are not R-fillable.
  std::vector<Chain> violations;
};

HyperbolicFillingReport verify_hyperbolic_filling(const Graph& g, const GeodesicTable& t, unsigned R,
                                                  const std::vector<Chain>& cycles, const FillingOptions& opts = {});

}  // namespace hypcoh
