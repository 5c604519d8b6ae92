#include <string>

#include "doctest.h"
#include "ncgrass/errors.hpp"
#include "ncgrass/report.hpp"
#include "ncgrass/verify.hpp"

using namespace ncgrass;

namespace {

RunConfig small_config() {
    RunConfig cfg;
    cfg.m = 2;
    cfg.t_grid = {0.0, 0.2};
    cfg.r_grid = {0.5};
    return cfg;
}

}  // namespace

TEST_CASE("format_double round trips and is stable") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0) == "1");
    const double v = 0.1 + 0.2;
    CHECK(std::stod(format_double(v)) == v);
    CHECK(format_double(v) == format_double(v));
}

TEST_CASE("format names parse and print") {
    CHECK(parse_format("json") == OutputFormat::Json);
    CHECK(parse_format("markdown") == OutputFormat::Markdown);
    CHECK(parse_format("csv") == OutputFormat::Csv);
    CHECK_THROWS_AS(parse_format("yaml"), ConfigError);
    CHECK(std::string(to_string(OutputFormat::Json)) == "json");
}

TEST_CASE("config validation rejects out-of-range input") {
    RunConfig cfg;
    cfg.m = 1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RunConfig{};
    cfg.t_grid.clear();
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RunConfig{};
    cfg.t_grid = {2.0};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RunConfig{};
    cfg.r_grid = {-1.0};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RunConfig{};
    cfg.eps_resid = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_NOTHROW(RunConfig{}.validate());
}

TEST_CASE("the full verification suite passes and serializes deterministically") {
    const RunConfig cfg = small_config();
    const VerificationReport r1 = run_verify(cfg);
    CHECK(r1.total() > 20);
    for (const auto& c : r1.checks) {
        CAPTURE(c.id);
        CAPTURE(c.params);
        CAPTURE(c.computed);
        CHECK(c.pass);
    }
    CHECK(r1.all_pass());

    // byte-identical output across runs with the same config
    const VerificationReport r2 = run_verify(cfg);
    CHECK(to_json(r1) == to_json(r2));
    CHECK(to_csv(r1) == to_csv(r2));
}

TEST_CASE("json report carries the pinned shape") {
    RunConfig cfg = small_config();
    cfg.t_grid = {0.0};
    const VerificationReport report = run_verify(cfg);
    const std::string json = to_json(report);
    CHECK(json.find("\"version\":") != std::string::npos);
    CHECK(json.find("\"config\":") != std::string::npos);
    CHECK(json.find("\"checks\":[") != std::string::npos);
    CHECK(json.find("\"summary\":{") != std::string::npos);
    CHECK(json.find("\"residual\":") != std::string::npos);
    // the tolerance is configuration, not result: it stays out of the payload
    CHECK(json.find("\"tolerance\"") == std::string::npos);
    CHECK(json.back() == '\n');
}

TEST_CASE("markdown and csv renderings agree with the record count") {
    RunConfig cfg = small_config();
    cfg.t_grid = {0.0};
    const VerificationReport report = run_verify(cfg);
    const std::string md = to_markdown(report);
    const std::string csv = to_csv(report);
    std::size_t csv_lines = 0;
    for (const char ch : csv)
        if (ch == '\n') ++csv_lines;
    CHECK(static_cast<int>(csv_lines) == report.total() + 1);  // header + one per check
    CHECK(md.find(std::to_string(report.total())) != std::string::npos);
    CHECK(render(report, OutputFormat::Markdown) == md);
}

TEST_CASE("an impossible tolerance shows up as failed checks, not as a throw") {
    RunConfig cfg = small_config();
    cfg.t_grid = {0.0};
    cfg.r_grid = {0.5};
    cfg.eps_resid = 1e-20;
    const VerificationReport report = run_verify(cfg);
    CHECK(report.failed() > 0);
    CHECK_FALSE(report.all_pass());
}

TEST_CASE("run_verify validates its configuration") {
    RunConfig cfg;
    cfg.m = 0;
    CHECK_THROWS_AS(run_verify(cfg), ConfigError);
}
