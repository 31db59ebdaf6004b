#pragma once

#include <map>
#include <string>

#include "json.hpp"

#include "minset/geometry.hpp"

namespace minset {

inline constexpr const char* kCurveFormat = "minset-curve";
inline constexpr int kCurveFormatVersion = 1;

struct CurveFile {
  SampledCurve curve;
  std::map<std::string, std::string> metadata;
};

nlohmann::json to_json(const CurveFile& file);

/// Parses and validates; throws FormatError on schema or invariant violations.
CurveFile curve_from_json(const nlohmann::json& j);

CurveFile read_curve_file(const std::string& path);
void write_curve_file(const std::string& path, const CurveFile& file);

/// SVG 1.1 polyline (open) or polygon (closed), y axis flipped, viewBox
/// fitted to the samples with a 5% margin, no fill.
std::string svg_document(const SampledCurve& curve, double stroke_width);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace minset
