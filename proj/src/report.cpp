#include "circreg/report.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "circreg/errors.hpp"
#include "circreg/version.hpp"
#include "detail_format.hpp"

namespace circreg {

namespace {

using nlohmann::ordered_json;

std::string config_comment_block(const ConfigEcho& config) {
  std::string out;
  for (const auto& [key, value] : config) {
    out += "# " + key + ": " + value + "\n";
  }
  return out;
}

ordered_json config_object(const ConfigEcho& config) {
  ordered_json obj = ordered_json::object();
  for (const auto& [key, value] : config) obj[key] = value;
  return obj;
}

double parse_field(const std::string& text, std::size_t line_number, const char* what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DataError("line " + std::to_string(line_number) + ": unreadable " + what +
                    " '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw DataError("line " + std::to_string(line_number) + ": unreadable " + what +
                    " '" + text + "'");
  }
  return value;
}

}  // namespace

ConfigEcho make_config_echo() {
  return {{"tool", std::string(kToolName)}, {"version", std::string(kVersion)}};
}

LinearDataset read_distance_direction_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::string line;
  std::size_t line_number = 0;
  if (!std::getline(in, line)) throw DataError("'" + path + "' is empty");
  ++line_number;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "distance,direction_radians") {
    throw DataError("line 1: expected header 'distance,direction_radians', got '" + line +
                    "'");
  }

  LinearDataset data;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw DataError("line " + std::to_string(line_number) +
                      ": expected exactly two comma-separated fields");
    }
    const double distance = parse_field(line.substr(0, comma), line_number, "distance");
    const double direction =
        parse_field(line.substr(comma + 1), line_number, "direction");
    data.z.push_back(distance);
    data.theta.push_back(Angle::wrap(direction));
  }
  if (data.z.empty()) throw DataError("'" + path + "' contains a header but no rows");
  return data;
}

std::string risk_report_csv(const RiskReport& report, const ConfigEcho& config) {
  std::string out = config_comment_block(config);
  out += "# x: " + detail::format_double(report.x) + "\n";
  out += "# n: " + std::to_string(report.n) + "\n";
  out += "# replications: " + std::to_string(report.requested_reps) + "\n";
  out += "# failures: " + std::to_string(report.failures) + "\n";
  out += "# seed: " + std::to_string(report.seed) + "\n";
  out += "# mean_error: " + detail::format_double(report.mean_error) + "\n";
  out += "# std_error: " + detail::format_double(report.std_error) + "\n";
  out += "replication,error,selected_sine,selected_cosine,failed\n";
  for (const ReplicationOutcome& o : report.outcomes) {
    out += std::to_string(o.replication) + "," + detail::format_double(o.error) + "," +
           detail::format_double(o.selected_sine) + "," +
           detail::format_double(o.selected_cosine) + "," + (o.failed ? "1" : "0") + "\n";
  }
  return out;
}

std::string risk_report_json(const RiskReport& report, const ConfigEcho& config) {
  ordered_json doc;
  doc["config"] = config_object(config);
  doc["x"] = report.x;
  doc["n"] = report.n;
  doc["replications"] = report.requested_reps;
  doc["failures"] = report.failures;
  doc["seed"] = report.seed;
  doc["mean_error"] = report.mean_error;
  doc["std_error"] = report.std_error;
  ordered_json outcomes = ordered_json::array();
  for (const ReplicationOutcome& o : report.outcomes) {
    outcomes.push_back({{"replication", o.replication},
                        {"error", o.error},
                        {"selected_sine", o.selected_sine},
                        {"selected_cosine", o.selected_cosine},
                        {"failed", o.failed}});
  }
  doc["outcomes"] = std::move(outcomes);
  return doc.dump(2) + "\n";
}

std::string calibration_csv(const CalibrationCurve& curve, const ConfigEcho& config) {
  std::string out = config_comment_block(config);
  out += "# plateau_start_index: " + std::to_string(curve.plateau_start) + "\n";
  out += "c0,mean_error,failures\n";
  for (const CalibrationPoint& p : curve.points) {
    out += detail::format_double(p.c0) + "," + detail::format_double(p.mean_error) + "," +
           std::to_string(p.failures) + "\n";
  }
  return out;
}

std::string calibration_json(const CalibrationCurve& curve, const ConfigEcho& config) {
  ordered_json doc;
  doc["config"] = config_object(config);
  doc["plateau_start_index"] = curve.plateau_start;
  ordered_json points = ordered_json::array();
  for (const CalibrationPoint& p : curve.points) {
    points.push_back(
        {{"c0", p.c0}, {"mean_error", p.mean_error}, {"failures", p.failures}});
  }
  doc["points"] = std::move(points);
  return doc.dump(2) + "\n";
}

std::string curve_csv(const std::vector<CurvePoint>& points, const ConfigEcho& config,
                      bool with_baselines) {
  std::string out = config_comment_block(config);
  out += "x,direction,selected_sine,selected_cosine,failed";
  if (with_baselines) out += ",fisher_lee,projected_linear,trig_polynomial";
  out += "\n";
  for (const CurvePoint& p : points) {
    out += detail::format_double(p.x) + ",";
    out += p.failed ? "" : detail::format_double(p.direction);
    out += "," + detail::format_double(p.selected_sine) + "," +
           detail::format_double(p.selected_cosine) + "," + (p.failed ? "1" : "0");
    if (with_baselines) {
      out += "," + detail::format_double(baseline_curve(BaselineCurve::FisherLee, p.x).radians());
      out += "," +
             detail::format_double(baseline_curve(BaselineCurve::ProjectedLinear, p.x).radians());
      out += "," +
             detail::format_double(baseline_curve(BaselineCurve::TrigPolynomial, p.x).radians());
    }
    out += "\n";
  }
  return out;
}

std::string curve_json(const std::vector<CurvePoint>& points, const ConfigEcho& config,
                       bool with_baselines) {
  ordered_json doc;
  doc["config"] = config_object(config);
  ordered_json arr = ordered_json::array();
  for (const CurvePoint& p : points) {
    ordered_json item = {{"x", p.x},
                         {"selected_sine", p.selected_sine},
                         {"selected_cosine", p.selected_cosine},
                         {"failed", p.failed}};
    if (p.failed) {
      item["direction"] = nullptr;
    } else {
      item["direction"] = p.direction;
    }
    if (with_baselines) {
      item["baselines"] = {
          {"fisher_lee", baseline_curve(BaselineCurve::FisherLee, p.x).radians()},
          {"projected_linear", baseline_curve(BaselineCurve::ProjectedLinear, p.x).radians()},
          {"trig_polynomial", baseline_curve(BaselineCurve::TrigPolynomial, p.x).radians()}};
    }
    arr.push_back(std::move(item));
  }
  doc["points"] = std::move(arr);
  return doc.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw DataError("failed writing '" + path + "'");
}

}  // namespace circreg
