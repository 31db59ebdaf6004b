#include "minset/curve_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "minset/errors.hpp"

namespace minset {

nlohmann::json to_json(const CurveFile& file) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : file.curve.samples) samples.push_back({{"t", s.t}, {"z", {s.z.x(), s.z.y()}}});
  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [k, v] : file.metadata) meta[k] = v;
  return {{"format", kCurveFormat},
          {"version", kCurveFormatVersion},
          {"closed", file.curve.closed},
          {"metadata", meta},
          {"samples", samples}};
}

CurveFile curve_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw FormatError("curve file: top level must be an object");
    if (j.contains("format") && j.at("format") != kCurveFormat)
      throw FormatError("curve file: unexpected format tag");
    CurveFile file;
    file.curve.closed = j.value("closed", false);
    if (j.contains("metadata")) {
      for (const auto& [k, v] : j.at("metadata").items()) {
        if (!v.is_string()) throw FormatError("curve file: metadata values must be strings");
        file.metadata[k] = v.get<std::string>();
      }
    }
    const auto& samples = j.at("samples");
    if (!samples.is_array()) throw FormatError("curve file: samples must be an array");
    for (const auto& s : samples) {
      const auto& z = s.at("z");
      if (!z.is_array() || z.size() != 2) throw FormatError("curve file: z must be a pair");
      file.curve.samples.push_back({s.at("t").get<double>(), Point(z[0].get<double>(), z[1].get<double>())});
    }
    validate(file.curve);
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("curve file: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
  if (!out) throw FormatError("write failed for " + path);
}

CurveFile read_curve_file(const std::string& path) {
  const std::string text = read_text_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
  return curve_from_json(j);
}

void write_curve_file(const std::string& path, const CurveFile& file) {
  write_text_file(path, to_json(file).dump(1) + "\n");
}

std::string svg_document(const SampledCurve& curve, double stroke_width) {
  double min_x = curve.z(0).x();
  double max_x = min_x;
  double min_y = curve.z(0).y();
  double max_y = min_y;
  for (const auto& s : curve.samples) {
    min_x = std::min(min_x, s.z.x());
    max_x = std::max(max_x, s.z.x());
    min_y = std::min(min_y, s.z.y());
    max_y = std::max(max_y, s.z.y());
  }
  const double width = max_x - min_x;
  const double height = max_y - min_y;
  const double margin = 0.05 * std::max(width, height);

  std::ostringstream svg;
  svg << std::setprecision(12);
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << (min_x - margin) << ' '
      << (-max_y - margin) << ' ' << (width + 2 * margin) << ' ' << (height + 2 * margin) << "\">\n";
  svg << "  <" << (curve.closed ? "polygon" : "polyline") << " fill=\"none\" stroke=\"black\" stroke-width=\""
      << stroke_width << "\" points=\"";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (i > 0) svg << ' ';
    svg << curve.z(i).x() << ',' << -curve.z(i).y();
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

}  // namespace minset
