#include "pullin/study_io.hpp"

#include "pullin/error.hpp"
#include "pullin/numfmt.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace plab {

using nlohmann::json;

namespace {

std::string row_prefix(const StudyResult& result, const StudyEntry& entry)
{
    return std::string(to_string(result.vary)) + "," + format_double(entry.value_m) + ",";
}

std::string svg_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// Smallest 1, 2 or 5 times a power of ten that splits `span` into at most `parts`.
double nice_step(double span, int parts)
{
    const double raw = span / parts;
    const double decade = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * decade >= raw) {
            return m * decade;
        }
    }
    return 10.0 * decade;
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << text;
    out.close();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

json beam_to_json(const BeamParams& p)
{
    return {{"length_m", p.length_m},
            {"width_m", p.width_m},
            {"thickness_m", p.thickness_m},
            {"gap_m", p.gap_m},
            {"youngs_pa", p.youngs_pa},
            {"density_kg_m3", p.density_kg_m3},
            {"permittivity_f_m", p.permittivity_f_m},
            {"tip_mass_kg", p.tip_mass_kg}};
}

BeamParams beam_from_json(const json& j)
{
    BeamParams p;
    p.length_m = j.at("length_m").get<double>();
    p.width_m = j.at("width_m").get<double>();
    p.thickness_m = j.at("thickness_m").get<double>();
    p.gap_m = j.at("gap_m").get<double>();
    p.youngs_pa = j.at("youngs_pa").get<double>();
    p.density_kg_m3 = j.at("density_kg_m3").get<double>();
    p.permittivity_f_m = j.at("permittivity_f_m").get<double>();
    p.tip_mass_kg = j.at("tip_mass_kg").get<double>();
    return p;
}

json entry_to_json(const StudyEntry& e)
{
    json points = json::array();
    for (const CurvePoint& p : e.curve.points) {
        points.push_back({p.voltage, p.tip_deflection_m, p.converged});
    }
    json j = {{"value_m", e.value_m},
              {"gap_m", e.gap_m},
              {"stability_limit_m", e.stability_limit_m},
              {"curve", points},
              {"profile_x_m", e.profile_x_m},
              {"profile_m", e.profile_m},
              {"error", e.error}};
    if (e.pullin) {
        j["pullin"] = {{"v_lower", e.pullin->v_lower},
                       {"v_upper", e.pullin->v_upper},
                       {"tip_at_lower_m", e.pullin->tip_at_lower_m},
                       {"bracket_width", e.pullin->bracket_width},
                       {"probes", e.pullin->probes}};
    } else {
        j["pullin"] = nullptr;
    }
    return j;
}

StudyEntry entry_from_json(const json& j)
{
    StudyEntry e;
    e.value_m = j.at("value_m").get<double>();
    e.gap_m = j.at("gap_m").get<double>();
    e.stability_limit_m = j.at("stability_limit_m").get<double>();
    for (const json& p : j.at("curve")) {
        if (!p.is_array() || p.size() != 3) {
            throw FormatError("curve point must be [voltage, tip, converged]");
        }
        e.curve.points.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<bool>()});
    }
    e.profile_x_m = j.at("profile_x_m").get<std::vector<double>>();
    e.profile_m = j.at("profile_m").get<std::vector<double>>();
    e.error = j.at("error").get<std::string>();
    const json& pi = j.at("pullin");
    if (!pi.is_null()) {
        PullInResult r;
        r.v_lower = pi.at("v_lower").get<double>();
        r.v_upper = pi.at("v_upper").get<double>();
        r.tip_at_lower_m = pi.at("tip_at_lower_m").get<double>();
        r.bracket_width = pi.at("bracket_width").get<double>();
        r.probes = pi.at("probes").get<std::size_t>();
        e.pullin = r;
    }
    return e;
}

}  // namespace

ExportFormat parse_export_format(std::string_view name)
{
    if (name == "csv") return ExportFormat::csv;
    if (name == "svg") return ExportFormat::svg;
    if (name == "json") return ExportFormat::json;
    throw InvalidArgument("unknown export format '" + std::string(name) + "'");
}

std::string curves_csv(const StudyResult& result)
{
    std::string out(kCurvesHeader);
    out += '\n';
    for (const StudyEntry& e : result.entries) {
        const std::string prefix = row_prefix(result, e);
        for (const CurvePoint& p : e.curve.points) {
            out += prefix + format_double(p.voltage) + "," + format_double(p.tip_deflection_m) +
                   "," + (p.converged ? "true" : "false") + "\n";
        }
    }
    return out;
}

std::string pullin_csv(const StudyResult& result)
{
    std::string out(kPullinHeader);
    out += '\n';
    for (const StudyEntry& e : result.entries) {
        if (!e.pullin) {
            continue;
        }
        const PullInResult& r = *e.pullin;
        out += row_prefix(result, e) + format_double(r.v_lower) + "," + format_double(r.v_upper) +
               "," + format_double(r.tip_at_lower_m) + "," +
               format_double(r.tip_at_lower_m / e.gap_m) + "\n";
    }
    return out;
}

std::string profile_csv(const StudyResult& result)
{
    std::string out(kProfileHeader);
    out += '\n';
    for (const StudyEntry& e : result.entries) {
        if (e.profile_m.size() != e.profile_x_m.size()) {
            continue;
        }
        const std::string prefix = row_prefix(result, e);
        for (std::size_t i = 0; i < e.profile_m.size(); ++i) {
            out += prefix + format_double(e.profile_x_m[i]) + "," + format_double(e.profile_m[i]) +
                   "\n";
        }
    }
    return out;
}

std::string study_svg(const StudyResult& result)
{
    constexpr double width = 720.0;
    constexpr double height = 480.0;
    constexpr double left = 80.0;
    constexpr double right = 170.0;
    constexpr double top = 30.0;
    constexpr double bottom = 60.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double v_max = 0.0;
    double y_max = 0.0;
    std::set<double> gaps;
    for (const StudyEntry& e : result.entries) {
        for (const CurvePoint& p : e.curve.points) {
            if (p.converged) {
                v_max = std::max(v_max, p.voltage);
                y_max = std::max(y_max, p.tip_deflection_m);
            }
        }
        if (e.gap_m > 0.0) {
            gaps.insert(e.gap_m);
            y_max = std::max(y_max, e.stability_limit_m);
        }
    }
    const double v_step = nice_step(v_max > 0.0 ? v_max : 1.0, 5);
    const double y_step = nice_step(y_max > 0.0 ? y_max : 1e-6, 5);
    const int v_ticks = std::max(1, static_cast<int>(std::ceil(v_max / v_step - 1e-9)));
    const int y_ticks = std::max(1, static_cast<int>(std::ceil(y_max / y_step - 1e-9)));
    v_max = v_step * v_ticks;
    y_max = y_step * y_ticks;
    auto sx = [&](double v) { return left + plot_w * v / v_max; };
    auto sy = [&](double y) { return top + plot_h * (1.0 - y / y_max); };

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
      << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\"/>\n"
      << "</g>\n<g id=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int k = 0; k <= v_ticks; ++k) {
        const double v = v_step * k;
        s << "<text x=\"" << svg_number(sx(v)) << "\" y=\"" << top + plot_h + 16
          << "\" text-anchor=\"middle\">" << tick_label(v) << "</text>\n";
    }
    for (int k = 0; k <= y_ticks; ++k) {
        const double y = y_step * k;
        s << "<text x=\"" << left - 6 << "\" y=\"" << svg_number(sy(y) + 4)
          << "\" text-anchor=\"end\">" << tick_label(y * 1e6) << "</text>\n";
    }
    s << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\">voltage (V)</text>\n"
      << "<text x=\"20\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << top + plot_h / 2 << ")\">tip deflection (um)</text>\n</g>\n";

    s << "<g id=\"curves\" fill=\"none\" stroke-width=\"1.5\">\n";
    std::size_t colour = 0;
    std::ostringstream legend;
    double legend_y = top + 10;
    for (const StudyEntry& e : result.entries) {
        std::string pts;
        for (const CurvePoint& p : e.curve.points) {
            if (p.converged) {
                pts += svg_number(sx(p.voltage)) + "," + svg_number(sy(p.tip_deflection_m)) + " ";
            }
        }
        if (pts.empty()) {
            continue;
        }
        pts.pop_back();
        const char* c = kPalette[colour++ % std::size(kPalette)];
        s << "<polyline stroke=\"" << c << "\" points=\"" << pts << "\"/>\n";
        legend << "<line x1=\"" << width - right + 15 << "\" y1=\"" << legend_y << "\" x2=\""
               << width - right + 40 << "\" y2=\"" << legend_y << "\" stroke=\"" << c
               << "\" stroke-width=\"1.5\"/>\n<text x=\"" << width - right + 45 << "\" y=\""
               << legend_y + 4 << "\">" << to_string(result.vary) << " = "
               << tick_label(e.value_m * 1e6) << " um</text>\n";
        legend_y += 18;
    }
    s << "</g>\n<g id=\"stability\" fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n";
    for (double g : gaps) {
        const double y = sy(g / 3.0);
        s << "<line x1=\"" << left << "\" y1=\"" << svg_number(y) << "\" x2=\"" << left + plot_w
          << "\" y2=\"" << svg_number(y) << "\" stroke-dasharray=\"6,4\"/>\n"
          << "<text x=\"" << left + plot_w + 4 << "\" y=\"" << svg_number(y + 4)
          << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"black\" stroke=\"none\">G/3</text>\n";
    }
    s << "</g>\n<g id=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << legend.str() << "</g>\n</svg>\n";
    return s.str();
}

std::string to_json(const StudyResult& result)
{
    const StudyMetadata& m = result.metadata;
    json entries = json::array();
    for (const StudyEntry& e : result.entries) {
        entries.push_back(entry_to_json(e));
    }
    const json doc = {
        {"schema", kStudySchema},
        {"version", m.schema_version},
        {"metadata",
         {{"grid_n", m.grid_n},
          {"rel_tolerance", m.opts.rel_tolerance},
          {"max_iterations", m.opts.max_iterations},
          {"relaxation", m.opts.relaxation},
          {"pullin_tol", m.pullin_tol},
          {"profile_voltage", m.profile_voltage},
          {"auto_voltages", m.auto_voltages},
          {"created_utc", m.created_utc}}},
        {"vary", to_string(result.vary)},
        {"base", beam_to_json(result.base)},
        {"outputs",
         {{"curves", result.outputs.curves},
          {"pullin", result.outputs.pullin},
          {"profile", result.outputs.profile}}},
        {"entries", entries}};
    return doc.dump(1) + "\n";
}

StudyResult from_json(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("study file is not valid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object() || doc.value("schema", std::string()) != kStudySchema) {
            throw FormatError("not a study file (schema tag missing)");
        }
        const int version = doc.at("version").get<int>();
        if (version != kStudySchemaVersion) {
            throw SchemaVersionError("study file has schema version " + std::to_string(version) +
                                     "; this build reads version " +
                                     std::to_string(kStudySchemaVersion));
        }
        StudyResult r;
        const json& m = doc.at("metadata");
        r.metadata.schema_version = version;
        r.metadata.grid_n = m.at("grid_n").get<std::size_t>();
        r.metadata.opts.rel_tolerance = m.at("rel_tolerance").get<double>();
        r.metadata.opts.max_iterations = m.at("max_iterations").get<std::size_t>();
        r.metadata.opts.relaxation = m.at("relaxation").get<double>();
        r.metadata.pullin_tol = m.at("pullin_tol").get<double>();
        r.metadata.profile_voltage = m.at("profile_voltage").get<double>();
        r.metadata.auto_voltages = m.at("auto_voltages").get<bool>();
        r.metadata.created_utc = m.at("created_utc").get<std::string>();
        r.vary = parse_study_parameter(doc.at("vary").get<std::string>());
        r.base = beam_from_json(doc.at("base"));
        const json& o = doc.at("outputs");
        r.outputs = {o.at("curves").get<bool>(), o.at("pullin").get<bool>(),
                     o.at("profile").get<bool>()};
        for (const json& e : doc.at("entries")) {
            r.entries.push_back(entry_from_json(e));
        }
        return r;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed study file: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("malformed study file: ") + e.what());
    }
}

std::vector<std::filesystem::path> export_study(const StudyResult& result, ExportFormat format,
                                                const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create '" + dir.string() + "': " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    auto emit = [&](const char* name, const std::string& text) {
        written.push_back(dir / name);
        write_file(written.back(), text);
    };
    switch (format) {
    case ExportFormat::csv:
        if (result.outputs.curves) emit("curves.csv", curves_csv(result));
        if (result.outputs.pullin) emit("pullin.csv", pullin_csv(result));
        if (result.outputs.profile) emit("profile.csv", profile_csv(result));
        break;
    case ExportFormat::svg: emit("study.svg", study_svg(result)); break;
    case ExportFormat::json: emit("study.json", to_json(result)); break;
    }
    return written;
}

StudyResult load_study(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

}  // namespace plab
