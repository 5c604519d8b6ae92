#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ncgrass {

enum class OutputFormat { Json, Markdown, Csv };

/// "json" | "markdown" | "csv"; ConfigError otherwise.
OutputFormat parse_format(const std::string& name);
const char* to_string(OutputFormat f);

// t in [0, pi/4] touching both singular endpoints and arctan(1/2);
// r spread over the tanh/coth transition.
std::vector<double> default_t_grid();
std::vector<double> default_r_grid();

struct RunConfig {
    int m = 3;
    std::vector<double> t_grid = default_t_grid();
    std::vector<double> r_grid = default_r_grid();
    double eps_group = 1e-7;
    double eps_resid = 1e-9;
    double eps_angle = 1e-7;
    std::uint64_t seed = 1;
    OutputFormat format = OutputFormat::Json;

    /// ConfigError when m < 2, a grid is empty or out of range, or a
    /// tolerance is not positive.
    void validate() const;
};

struct CheckRecord {
    std::string id;
    std::string params;
    std::string expected;
    std::string computed;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::string version;
    RunConfig config;
    std::vector<CheckRecord> checks;

    int total() const { return static_cast<int>(checks.size()); }
    int passed() const;
    int failed() const { return total() - passed(); }
    bool all_pass() const { return failed() == 0; }
};

extern const char* const kVersion;

/// 17 significant digits, deterministic byte-for-byte across runs.
std::string format_double(double v);

std::string to_json(const VerificationReport& report);
std::string to_markdown(const VerificationReport& report);
std::string to_csv(const VerificationReport& report);
std::string render(const VerificationReport& report, OutputFormat format);

}  // namespace ncgrass
