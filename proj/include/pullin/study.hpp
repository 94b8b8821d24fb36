#pragma once

#include "pullin/grid.hpp"
#include "pullin/model.hpp"
#include "pullin/pullin.hpp"
#include "pullin/static_solver.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plab {

enum class StudyParameter { length, thickness, gap, width };

std::string_view to_string(StudyParameter p);

/// Throws InvalidArgument for anything but length, thickness, gap, width.
StudyParameter parse_study_parameter(std::string_view name);

/// `base` with the varied dimension set to `value_m`.
BeamParams with_parameter(BeamParams base, StudyParameter p, double value_m);

struct StudyOutputs {
    bool curves = true;
    bool pullin = true;
    bool profile = false;

    bool operator==(const StudyOutputs&) const = default;
};

struct StudySpec {
    BeamParams base;
    StudyParameter vary = StudyParameter::length;
    std::vector<double> values;                   ///< metres, positive, ascending
    std::optional<std::vector<double>> voltages;  ///< nullopt: auto grid up to pull-in
    StudyOutputs outputs;
    double profile_voltage = 10.0;
    std::size_t grid_n = kDefaultGridNodes;
    SolverOptions opts;
    double pullin_tol = 0.01;  ///< volts
};

void validate(const StudySpec& spec);

inline constexpr std::size_t kAutoVoltageCount = 40;
inline constexpr double kAutoVoltageRatio = 0.9;

/// v_k = v_top (1 - r^k) / (1 - r^(count-1)), k = 0 .. count-1: from 0 to
/// v_top with steps shrinking geometrically towards the fold.
std::vector<double> auto_voltage_grid(double v_top, std::size_t count = kAutoVoltageCount,
                                      double ratio = kAutoVoltageRatio);

struct StudyEntry {
    double value_m = 0.0;
    double gap_m = 0.0;
    double stability_limit_m = 0.0;  ///< G / 3
    DeflectionCurve curve;
    std::optional<PullInResult> pullin;
    std::vector<double> profile_x_m;
    std::vector<double> profile_m;  ///< empty when the profile voltage has no equilibrium
    std::string error;              ///< empty on success

    bool operator==(const StudyEntry&) const = default;
};

inline constexpr int kStudySchemaVersion = 1;

struct StudyMetadata {
    int schema_version = kStudySchemaVersion;
    std::size_t grid_n = kDefaultGridNodes;
    SolverOptions opts;
    double pullin_tol = 0.0;
    double profile_voltage = 0.0;
    bool auto_voltages = true;
    std::string created_utc;  ///< ISO 8601

    bool operator==(const StudyMetadata&) const = default;
};

struct StudyResult {
    StudyParameter vary = StudyParameter::length;
    BeamParams base;
    StudyOutputs outputs;
    std::vector<StudyEntry> entries;  ///< one per requested value, in order
    StudyMetadata metadata;

    bool operator==(const StudyResult&) const = default;
};

/// Thread cap from PULLIN_LAB_THREADS (0 when unset or not a positive integer).
int study_thread_limit();

/// Runs one job per value over OpenMP threads. `threads` = 0 uses
/// study_thread_limit(), falling back to the runtime default. A failing value
/// records its message in StudyEntry::error and the others continue.
StudyResult run_study(const StudySpec& spec, int threads = 0);

/// Same jobs in a plain loop; the reference for run_study.
StudyResult run_study_serial(const StudySpec& spec);

}  // namespace plab
