#ifndef CIRCREG_REPORT_HPP
#define CIRCREG_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include "circreg/experiments.hpp"
#include "circreg/linear.hpp"

namespace circreg {

/// Resolved run configuration echoed into every output file, as ordered
/// key/value pairs. Always includes tool name and version.
using ConfigEcho = std::map<std::string, std::string>;

/// Adds the tool/version entries to a config echo.
ConfigEcho make_config_echo();

/// Reads a real-data CSV with header "distance,direction_radians".
/// Directions are wrapped into [-pi, pi). Throws DataError with the line
/// number on a missing/mismatched header, short/long rows, non-numeric or
/// non-finite fields, or an empty body.
LinearDataset read_distance_direction_csv(const std::string& path);

/// Serializers. CSV files carry the config echo as leading "# key: value"
/// comment lines; JSON files embed it as a "config" object. Output is
/// deterministic: rerunning with identical inputs reproduces files byte for
/// byte (doubles are printed with round-trip precision, no timestamps).
std::string risk_report_csv(const RiskReport& report, const ConfigEcho& config);
std::string risk_report_json(const RiskReport& report, const ConfigEcho& config);
std::string calibration_csv(const CalibrationCurve& curve, const ConfigEcho& config);
std::string calibration_json(const CalibrationCurve& curve, const ConfigEcho& config);
/// Curve outputs optionally append the published reference fits
/// (fisher_lee, projected_linear, trig_polynomial) evaluated at each x.
std::string curve_csv(const std::vector<CurvePoint>& points, const ConfigEcho& config,
                      bool with_baselines = false);
std::string curve_json(const std::vector<CurvePoint>& points, const ConfigEcho& config,
                       bool with_baselines = false);

/// Writes content to path, throwing DataError on I/O failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace circreg

#endif  // CIRCREG_REPORT_HPP
