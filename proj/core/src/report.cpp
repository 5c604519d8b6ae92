#include "ncgrass/report.hpp"

#include <cmath>
#include <cstdio>

#include "ncgrass/errors.hpp"

namespace ncgrass {

const char* const kVersion = "0.1.0";

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::Json;
    if (name == "markdown") return OutputFormat::Markdown;
    if (name == "csv") return OutputFormat::Csv;
    throw ConfigError("unknown output format: " + name);
}

const char* to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Json: return "json";
        case OutputFormat::Markdown: return "markdown";
        case OutputFormat::Csv: return "csv";
    }
    return "json";
}

std::vector<double> default_t_grid() {
    const double pi = std::acos(-1.0);
    return {0.0, pi / 16, pi / 8, std::atan(0.5), 3 * pi / 16, pi / 4};
}

std::vector<double> default_r_grid() { return {0.25, 0.5, 1.0, 2.0}; }

void RunConfig::validate() const {
    if (m < 2) throw ConfigError("m must be at least 2");
    if (t_grid.empty() || r_grid.empty()) throw ConfigError("parameter grids must be non-empty");
    const double pi = std::acos(-1.0);
    for (const double t : t_grid)
        if (!(t >= 0.0 && t <= pi / 4 + 1e-12)) throw ConfigError("t values must lie in [0, pi/4]");
    for (const double r : r_grid)
        if (!(r > 0.0)) throw ConfigError("r values must be positive");
    if (!(eps_group > 0.0) || !(eps_resid > 0.0) || !(eps_angle > 0.0))
        throw ConfigError("tolerances must be positive");
}

int VerificationReport::passed() const {
    int n = 0;
    for (const auto& c : checks) n += c.pass ? 1 : 0;
    return n;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string json_list(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += format_double(values[i]);
    }
    return out + "]";
}

std::string config_json(const RunConfig& c) {
    std::string out = "{";
    out += "\"m\":" + std::to_string(c.m);
    out += ",\"t_grid\":" + json_list(c.t_grid);
    out += ",\"r_grid\":" + json_list(c.r_grid);
    out += ",\"eps_group\":" + format_double(c.eps_group);
    out += ",\"eps_resid\":" + format_double(c.eps_resid);
    out += ",\"eps_angle\":" + format_double(c.eps_angle);
    out += ",\"seed\":" + std::to_string(c.seed);
    out += std::string(",\"format\":\"") + to_string(c.format) + "\"";
    return out + "}";
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (const char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    return out + "\"";
}

}  // namespace

std::string to_json(const VerificationReport& report) {
    std::string out = "{";
    out += "\"version\":\"" + json_escape(report.version) + "\"";
    out += ",\"config\":" + config_json(report.config);
    out += ",\"checks\":[";
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const auto& c = report.checks[i];
        if (i) out += ",";
        out += "{\"id\":\"" + json_escape(c.id) + "\"";
        out += ",\"params\":\"" + json_escape(c.params) + "\"";
        out += ",\"expected\":\"" + json_escape(c.expected) + "\"";
        out += ",\"computed\":\"" + json_escape(c.computed) + "\"";
        out += ",\"residual\":" + format_double(c.residual);
        out += std::string(",\"pass\":") + (c.pass ? "true" : "false") + "}";
    }
    out += "],\"summary\":{";
    out += "\"total\":" + std::to_string(report.total());
    out += ",\"passed\":" + std::to_string(report.passed());
    out += ",\"failed\":" + std::to_string(report.failed());
    return out + "}}\n";
}

std::string to_markdown(const VerificationReport& report) {
    std::string out = "# verification report\n\n";
    out += "version " + report.version + ", m=" + std::to_string(report.config.m) +
           ", seed=" + std::to_string(report.config.seed) + "\n\n";
    out += "| id | params | expected | computed | residual | pass |\n";
    out += "|---|---|---|---|---|---|\n";
    for (const auto& c : report.checks) {
        out += "| " + c.id + " | " + c.params + " | " + c.expected + " | " + c.computed + " | " +
               format_double(c.residual) + " | " + (c.pass ? "yes" : "NO") + " |\n";
    }
    out += "\n" + std::to_string(report.passed()) + "/" + std::to_string(report.total()) +
           " checks passed\n";
    return out;
}

std::string to_csv(const VerificationReport& report) {
    std::string out = "id,params,expected,computed,residual,pass\n";
    for (const auto& c : report.checks) {
        out += csv_quote(c.id) + "," + csv_quote(c.params) + "," + csv_quote(c.expected) + "," +
               csv_quote(c.computed) + "," + format_double(c.residual) + "," +
               (c.pass ? "true" : "false") + "\n";
    }
    return out;
}

std::string render(const VerificationReport& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::Json: return to_json(report);
        case OutputFormat::Markdown: return to_markdown(report);
        case OutputFormat::Csv: return to_csv(report);
    }
    return to_json(report);
}

}  // namespace ncgrass
