#pragma once

#include "pullin/study.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace plab {

enum class ExportFormat { csv, svg, json };

/// Throws InvalidArgument for anything but csv, svg, json.
ExportFormat parse_export_format(std::string_view name);

inline constexpr std::string_view kCurvesHeader =
    "param_name,param_value_m,voltage_V,tip_deflection_m,converged";
inline constexpr std::string_view kPullinHeader =
    "param_name,param_value_m,v_lower_V,v_upper_V,tip_at_lower_m,tip_over_gap";
inline constexpr std::string_view kProfileHeader =
    "param_name,param_value_m,x_m,deflection_m";

/// Every curve point, converged or not.
std::string curves_csv(const StudyResult& result);
/// One row per value that has a pull-in bracket.
std::string pullin_csv(const StudyResult& result);
/// One row per node for every value with a converged profile.
std::string profile_csv(const StudyResult& result);

/// Tip deflection against voltage: one solid polyline per value with curve
/// points, one dashed G/3 line per distinct gap, axes and a legend.
std::string study_svg(const StudyResult& result);

inline constexpr std::string_view kStudySchema = "pullin-lab/study";

std::string to_json(const StudyResult& result);

/// Throws FormatError on malformed input and SchemaVersionError when the
/// version differs from kStudySchemaVersion.
StudyResult from_json(std::string_view text);

/// Writes the files for `format` into `dir` (created if missing) and returns
/// their paths: curves.csv / pullin.csv / profile.csv for the enabled
/// outputs, study.svg, or study.json. Throws IoError when a file cannot be
/// written.
std::vector<std::filesystem::path> export_study(const StudyResult& result, ExportFormat format,
                                                const std::filesystem::path& dir);

/// Reads a file written by export_study(json). Throws IoError when it cannot
/// be read, otherwise as from_json.
StudyResult load_study(const std::filesystem::path& path);

}  // namespace plab
