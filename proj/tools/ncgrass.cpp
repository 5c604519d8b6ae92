// Command line front end for the verification library. Subcommands either
// run the full check suite (verify) or print one table with its reference
// values side by side. Exit code 0 means everything asked for passed, 1 a
// numerical check failed, 2 a usage or configuration error.
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "ncgrass/curvature.hpp"
#include "ncgrass/errors.hpp"
#include "ncgrass/hypersurface.hpp"
#include "ncgrass/models.hpp"
#include "ncgrass/report.hpp"
#include "ncgrass/root_system.hpp"
#include "ncgrass/verify.hpp"

namespace {

using namespace ncgrass;

struct Doc {
    std::string family;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    double residual = 0.0;
    bool match = true;
    bool has_match = true;  // false when there is no reference to compare against
};

std::string escape_json(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    return out;
}

std::string doc_to_json(const Doc& doc) {
    std::string out = "{\"family\":\"" + escape_json(doc.family) + "\",\"params\":{";
    for (std::size_t i = 0; i < doc.params.size(); ++i) {
        if (i) out += ",";
        out += "\"" + escape_json(doc.params[i].first) + "\":\"" +
               escape_json(doc.params[i].second) + "\"";
    }
    out += "},\"columns\":[";
    for (std::size_t i = 0; i < doc.columns.size(); ++i) {
        if (i) out += ",";
        out += "\"" + escape_json(doc.columns[i]) + "\"";
    }
    out += "],\"rows\":[";
    for (std::size_t i = 0; i < doc.rows.size(); ++i) {
        if (i) out += ",";
        out += "[";
        for (std::size_t j = 0; j < doc.rows[i].size(); ++j) {
            if (j) out += ",";
            out += "\"" + escape_json(doc.rows[i][j]) + "\"";
        }
        out += "]";
    }
    out += "]";
    if (doc.has_match) {
        out += ",\"residual\":" + format_double(doc.residual);
        out += std::string(",\"match\":") + (doc.match ? "true" : "false");
    }
    out += "}\n";
    return out;
}

std::string doc_to_markdown(const Doc& doc) {
    std::string out = "# " + doc.family + "\n\n";
    for (const auto& [k, v] : doc.params) out += k + " = " + v + "  \n";
    out += "\n|";
    for (const auto& c : doc.columns) out += " " + c + " |";
    out += "\n|";
    for (std::size_t i = 0; i < doc.columns.size(); ++i) out += " --- |";
    out += "\n";
    for (const auto& row : doc.rows) {
        out += "|";
        for (const auto& cell : row) out += " " + cell + " |";
        out += "\n";
    }
    if (doc.has_match) {
        out += "\nresidual " + format_double(doc.residual) + ", " +
               (doc.match ? "match" : "MISMATCH") + "\n";
    }
    return out;
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += "\"";
    return out;
}

std::string doc_to_csv(const Doc& doc) {
    std::string out;
    for (std::size_t i = 0; i < doc.columns.size(); ++i) {
        if (i) out += ",";
        out += csv_cell(doc.columns[i]);
    }
    out += "\n";
    for (const auto& row : doc.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ",";
            out += csv_cell(row[j]);
        }
        out += "\n";
    }
    return out;
}

std::string render_doc(const Doc& doc, OutputFormat format) {
    switch (format) {
        case OutputFormat::Json: return doc_to_json(doc);
        case OutputFormat::Markdown: return doc_to_markdown(doc);
        case OutputFormat::Csv: return doc_to_csv(doc);
    }
    return {};
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void emit(const std::string& text, const std::string& out_file) {
    if (out_file.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_file, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + out_file);
    f << text;
    std::cerr << "wrote " << out_file << "\n";
}

// Shared flags for the table subcommands.
struct CommonOpts {
    int m = 3;
    std::string format = "markdown";
    std::string out;
    double tol_resid = 1e-9;
    double tol_group = 1e-7;

    void attach(CLI::App* cmd, bool with_m = true) {
        if (with_m) cmd->add_option("--m", m, "rank of the second factor, m >= 2");
        cmd->add_option("--format", format, "json, markdown or csv");
        cmd->add_option("--out", out, "write the result to this file instead of stdout");
        cmd->add_option("--tol-resid", tol_resid, "pass tolerance for residuals");
        cmd->add_option("--tol-group", tol_group, "eigenvalue grouping width");
    }
};

Doc zip_with_expected(std::string family, const PrincipalCurvatureTable& table,
                      const std::vector<ExpectedGroup>& want, double tol_resid) {
    Doc doc;
    doc.family = std::move(family);
    doc.columns = {"value", "multiplicity", "label", "expected value", "expected multiplicity"};
    const std::size_t n = std::max(table.groups.size(), want.size());
    doc.residual = table.groups.size() == want.size() ? 0.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> row(5);
        if (i < table.groups.size()) {
            row[0] = num(table.groups[i].value);
            row[1] = std::to_string(table.groups[i].multiplicity);
            row[2] = table.groups[i].label;
        }
        if (i < want.size()) {
            row[3] = num(want[i].value);
            row[4] = std::to_string(want[i].multiplicity);
        }
        if (i < table.groups.size() && i < want.size() && doc.residual < 1.0) {
            if (table.groups[i].multiplicity != want[i].multiplicity)
                doc.residual = 1.0;
            else
                doc.residual =
                    std::max(doc.residual, std::abs(table.groups[i].value - want[i].value));
        }
        doc.rows.push_back(std::move(row));
    }
    doc.match = doc.residual < tol_resid;
    return doc;
}

int finish(const Doc& doc, const CommonOpts& opts) {
    emit(render_doc(doc, parse_format(opts.format)), opts.out);
    if (doc.has_match && !doc.match) {
        std::cerr << doc.family << ": residual " << num(doc.residual) << " exceeds tolerance\n";
        return 1;
    }
    return 0;
}

int cmd_roots(const CommonOpts& opts) {
    const RootSystemData data = restricted_root_decomposition(opts.m, opts.tol_group);
    Doc doc;
    doc.family = "restricted roots";
    doc.params = {{"m", std::to_string(opts.m)},
                  {"eigen residual", num(data.eigen_residual)}};
    doc.columns = {"root", "multiplicity", "expected multiplicity"};
    bool mults_ok = true;
    for (const auto& root : positive_roots()) {
        const int want = root_multiplicity(root, opts.m);
        int got = 0;
        for (const auto& rs : data.positive)
            if (rs.root.a1 == root.a1 && rs.root.a2 == root.a2) got = rs.multiplicity;
        if (want == 0 && got == 0) continue;
        if (want != got) mults_ok = false;
        doc.rows.push_back({root.label(), std::to_string(got), std::to_string(want)});
    }
    doc.residual = mults_ok ? data.eigen_residual : 1.0;
    doc.match = doc.residual < opts.tol_resid;
    return finish(doc, opts);
}

int cmd_horosphere(const CommonOpts& opts, double t) {
    const CurvatureContext ctx = make_curvature_context(opts.m);
    const PrincipalCurvatureTable table = horosphere_spectrum(ctx, t, opts.tol_group);
    TableParams tp;
    tp.m = opts.m;
    tp.t = t;
    const auto want =
        expected_table(ReferenceTable::HorosphereFamily, tp).merged(opts.tol_group);
    Doc doc = zip_with_expected("horosphere principal curvatures", table, want, opts.tol_resid);
    doc.params = {{"m", std::to_string(opts.m)}, {"t", num(t)}};
    return finish(doc, opts);
}

int cmd_tube(const CommonOpts& opts, const std::string& model, int n, double r) {
    TotallyGeodesicTangentSplit split;
    ReferenceTable kind;
    if (model == "su") {
        split = su_submodel(opts.m);
        kind = ReferenceTable::SuTube;
    } else if (model == "sp") {
        int half = n;
        if (half <= 0) {
            if (opts.m % 2 != 0)
                throw ConfigError("sp tube needs --n, or an even --m");
            half = opts.m / 2;
        }
        split = sp_submodel(half);
        kind = ReferenceTable::SpTube;
    } else {
        throw ConfigError("unknown tube model: " + model + " (expected su or sp)");
    }
    const CurvatureContext ctx = make_curvature_context(split.m);
    const PrincipalCurvatureTable table = tube_spectrum(ctx, split, r, opts.tol_group);
    TableParams tp;
    tp.m = split.m;
    tp.n = split.n;
    tp.r = r;
    const auto want = expected_table(kind, tp).merged(opts.tol_group);
    Doc doc = zip_with_expected(model + " tube principal curvatures", table, want, opts.tol_resid);
    doc.params = {{"m", std::to_string(split.m)}, {"r", num(r)}};
    if (model == "sp") doc.params.insert(doc.params.begin() + 1, {"n", std::to_string(split.n)});
    return finish(doc, opts);
}

int cmd_jacobi(const CommonOpts& opts, double t) {
    const CurvatureContext ctx = make_curvature_context(opts.m);
    const TangentVector x = weyl_chamber_vector(opts.m, t);
    const TangentSpectralTable table = jacobi_spectrum(ctx, x, opts.tol_group);
    const double pi = std::acos(-1.0);
    const bool singular = t < 1e-12 || std::abs(t - pi / 4) < 1e-12;
    Doc doc;
    doc.family = "jacobi operator spectrum";
    doc.params = {{"m", std::to_string(opts.m)}, {"t", num(t)}};
    if (singular) {
        TableParams tp;
        tp.m = opts.m;
        tp.perp_type = t > 1e-12;
        const auto want = expected_table(ReferenceTable::JacobiOperator, tp).merged(opts.tol_group);
        doc.columns = {"value", "multiplicity", "expected value", "expected multiplicity"};
        const std::size_t count = std::max(table.groups.size(), want.size());
        doc.residual = table.groups.size() == want.size() ? 0.0 : 1.0;
        for (std::size_t i = 0; i < count; ++i) {
            std::vector<std::string> row(4);
            if (i < table.groups.size()) {
                row[0] = num(table.groups[i].value);
                row[1] = std::to_string(table.groups[i].multiplicity);
            }
            if (i < want.size()) {
                row[2] = num(want[i].value);
                row[3] = std::to_string(want[i].multiplicity);
            }
            if (i < table.groups.size() && i < want.size() && doc.residual < 1.0) {
                if (table.groups[i].multiplicity != want[i].multiplicity)
                    doc.residual = 1.0;
                else
                    doc.residual =
                        std::max(doc.residual, std::abs(table.groups[i].value - want[i].value));
            }
            doc.rows.push_back(std::move(row));
        }
        doc.match = doc.residual < opts.tol_resid;
    } else {
        doc.columns = {"value", "multiplicity"};
        for (const auto& g : table.groups)
            doc.rows.push_back({num(g.value), std::to_string(g.multiplicity)});
        doc.has_match = false;
    }
    return finish(doc, opts);
}

int cmd_identities(const CommonOpts& opts, const std::string& model, double t, double r) {
    const CurvatureContext ctx = make_curvature_context(opts.m);
    PrincipalCurvatureTable table;
    if (model == "su") {
        table = tube_spectrum(ctx, su_submodel(opts.m), r, opts.tol_group);
    } else if (model == "sp") {
        if (opts.m % 2 != 0) throw ConfigError("sp identities need an even --m");
        table = tube_spectrum(ctx, sp_submodel(opts.m / 2), r, opts.tol_group);
    } else if (model == "horosphere") {
        table = horosphere_spectrum(ctx, t, opts.tol_group);
    } else {
        throw ConfigError("unknown model: " + model + " (expected horosphere, su or sp)");
    }
    const HypersurfacePointModel point(table.normal);
    const IdentityReport rep = identity_suite(point, table, opts.tol_resid);
    Doc doc;
    doc.family = "principal curvature identities";
    doc.params = {{"m", std::to_string(opts.m)},
                  {"model", model},
                  {model == "horosphere" ? "t" : "r", num(model == "horosphere" ? t : r)},
                  {"type", to_string(rep.type)},
                  {"alpha", num(rep.alpha)},
                  {"beta", num(rep.beta[0]) + " " + num(rep.beta[1]) + " " + num(rep.beta[2])}};
    if (rep.type == SingularType::PerpType) doc.params.push_back({"gamma", num(rep.gamma)});
    std::string lambdas;
    for (const double l : rep.lambda) lambdas += (lambdas.empty() ? "" : " ") + num(l);
    if (!lambdas.empty()) doc.params.push_back({"lambda", lambdas});
    doc.columns = {"identity", "residual", "applicable"};
    for (const auto& e : rep.entries) {
        doc.rows.push_back({e.name, num(e.residual), e.applicable ? "yes" : "no"});
        if (e.applicable) doc.residual = std::max(doc.residual, e.residual);
    }
    doc.match = rep.pass;
    return finish(doc, opts);
}

int cmd_verify(RunConfig cfg, const std::string& out) {
    const VerificationReport report = run_verify(cfg);
    emit(render(report, cfg.format), out);
    std::cerr << "checks " << report.total() << ", passed " << report.passed() << ", failed "
              << report.failed() << "\n";
    return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification of the geometry of the noncompact complex 2-plane "
                 "Grassmannian family"};
    app.require_subcommand(1);

    // verify
    RunConfig cfg;
    std::string verify_out;
    std::string verify_format = "json";
    std::vector<double> t_grid, r_grid;
    CLI::App* verify = app.add_subcommand("verify", "run the full check suite");
    verify->add_option("--m", cfg.m, "rank of the second factor, m >= 2");
    verify->add_option("--t", t_grid, "horosphere parameter grid override");
    verify->add_option("--r", r_grid, "tube radius grid override");
    verify->add_option("--tol-resid", cfg.eps_resid, "pass tolerance for residuals");
    verify->add_option("--tol-group", cfg.eps_group, "eigenvalue grouping width");
    verify->add_option("--tol-angle", cfg.eps_angle, "pass tolerance for subspace angles");
    CLI::Option* seed_opt = verify->add_option("--seed", cfg.seed, "random seed");
    verify->add_option("--format", verify_format, "json, markdown or csv");
    verify->add_option("--out", verify_out, "write the report to this file instead of stdout");

    CommonOpts roots_opts;
    CLI::App* roots = app.add_subcommand("roots", "restricted root system against its table");
    roots_opts.attach(roots);

    CommonOpts horo_opts;
    double horo_t = 0.0;
    CLI::App* horo = app.add_subcommand("horosphere", "horosphere principal curvature table");
    horo_opts.attach(horo);
    horo->add_option("--t", horo_t, "chamber parameter in [0, pi/4]");

    CommonOpts tube_opts;
    std::string tube_model = "su";
    int tube_n = 0;
    double tube_r = 1.0;
    CLI::App* tube = app.add_subcommand("tube", "tube principal curvature table");
    tube_opts.attach(tube);
    tube->add_option("--model", tube_model, "su or sp");
    tube->add_option("--n", tube_n, "sp model size (m = 2n)");
    tube->add_option("--r", tube_r, "tube radius, r > 0");

    CommonOpts jac_opts;
    double jac_t = 0.0;
    CLI::App* jac = app.add_subcommand("jacobi", "Jacobi operator spectrum along the chamber");
    jac_opts.attach(jac);
    jac->add_option("--t", jac_t, "chamber parameter in [0, pi/4]");

    CommonOpts id_opts;
    std::string id_model = "horosphere";
    double id_t = 0.0, id_r = 1.0;
    CLI::App* ident = app.add_subcommand("identities", "principal curvature identity suite");
    id_opts.attach(ident);
    ident->add_option("--model", id_model, "horosphere, su or sp");
    ident->add_option("--t", id_t, "horosphere parameter (0 or pi/4 for a singular normal)");
    ident->add_option("--r", id_r, "tube radius");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            if (!t_grid.empty()) cfg.t_grid = t_grid;
            if (!r_grid.empty()) cfg.r_grid = r_grid;
            if (!*seed_opt) {
                if (const char* env = std::getenv("NCGRASS_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);
            }
            cfg.format = parse_format(verify_format);
            return cmd_verify(cfg, verify_out);
        }
        if (roots->parsed()) return cmd_roots(roots_opts);
        if (horo->parsed()) return cmd_horosphere(horo_opts, horo_t);
        if (tube->parsed()) return cmd_tube(tube_opts, tube_model, tube_n, tube_r);
        if (jac->parsed()) return cmd_jacobi(jac_opts, jac_t);
        if (ident->parsed()) return cmd_identities(id_opts, id_model, id_t, id_r);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BadParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const OutOfChamber& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const WrongSingularType& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
