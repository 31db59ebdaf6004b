#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "minset/constants.hpp"
#include "minset/estimators.hpp"
#include "minset/potential.hpp"

namespace minset {

inline constexpr const char* kToolName = "minset";
inline constexpr const char* kToolVersion = "1.0.0";
/// Fields excluded from byte-identity comparisons between runs.
inline constexpr const char* kTimestampField = "generated_at";

struct ThresholdRow {
  std::string name;
  std::string description;
  double value;
  double tolerance;
};

/// c*, critical angle, the two crossover angles, the dimension threshold,
/// pi/8 and 10/9.
std::vector<ThresholdRow> threshold_table();

/// Six significant digits.
std::string six_digits(double v);

/// FNV-1a 64-bit digest rendered as "fnv1a64:<hex>".
std::string digest(std::string_view bytes);

nlohmann::json to_json(const BiHolderBounds& b);
nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const SamplingMode& m);
nlohmann::json to_json(const HolderEstimate& h);
nlohmann::json to_json(const AhlforsEstimate& a);
nlohmann::json to_json(const LsFit& f);
nlohmann::json to_json(const LsExponentEstimate& e);
nlohmann::json to_json(const ThresholdRow& r);

/// Report skeleton: tool, version, command, argument echo, digest, seed and
/// timestamp.
nlohmann::json make_report(const std::string& command, const nlohmann::json& args, const std::string& input_digest,
                           std::uint64_t seed);

/// Copy of a report with timestamp fields removed.
nlohmann::json strip_timestamps(nlohmann::json report);

}  // namespace minset
