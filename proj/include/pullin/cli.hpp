#pragma once

#include "pullin/dynamic.hpp"
#include "pullin/grid.hpp"
#include "pullin/lumped.hpp"
#include "pullin/model.hpp"
#include "pullin/static_solver.hpp"
#include "pullin/study.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace plab::cli {

/// Everything a subcommand reads. Defaults are the stock silicon beam.
struct RunConfig {
    BeamParams beam;
    std::size_t grid_n = kDefaultGridNodes;
    SolverOptions opts;
    std::optional<double> voltage;  ///< static 10 V, modal 0 V, study profile 10 V
    double pullin_tol = 0.01;       ///< volts
    Drive drive{1.0, 0.0, 0.0, 0.0};
    double duration_s = 0.0;        ///< 0: eight periods of mode 1
    double dt_s = 0.0;              ///< 0: recommended_time_step
    std::size_t modes = 3;
    LumpedModel lumped;
    StudyParameter vary = StudyParameter::length;
    std::vector<double> values;                   ///< empty: stock list for `vary`
    std::optional<std::vector<double>> voltages;  ///< sweep and study; nullopt: auto
    StudyOutputs outputs{true, true, true};
};

/// "300um" -> 3e-4, "3e-6" -> 3e-6. The suffix is accepted only when
/// `allow_micrometres` is set. Throws InvalidArgument.
double parse_quantity(const std::string& text, bool allow_micrometres);

/// Overlays a JSON config document onto `base`. Unknown keys and wrong types
/// throw InvalidArgument.
RunConfig apply_config_json(std::string_view text, RunConfig base = {});

/// Stock parameter values (metres) swept for each study parameter.
std::vector<double> default_study_values(StudyParameter p);

/// Runs one subcommand. `args` excludes the program name. Returns 0 on
/// success, 1 on domain errors, 2 on usage or configuration errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plab::cli
