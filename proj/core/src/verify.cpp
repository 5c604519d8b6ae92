#include "ncgrass/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ncgrass/curvature.hpp"
#include "ncgrass/errors.hpp"
#include "ncgrass/hypersurface.hpp"
#include "ncgrass/lie_algebra.hpp"
#include "ncgrass/models.hpp"
#include "ncgrass/rng.hpp"
#include "ncgrass/root_system.hpp"
#include "ncgrass/spectral.hpp"
#include "ncgrass/structures.hpp"

namespace ncgrass {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

TangentVector random_p_vector(int m, SplitMix64& rng) {
    TangentVector v = TangentVector::zero(m);
    for (int row = 0; row < 2; ++row)
        for (int col = 0; col < m; ++col)
            v += TangentVector::elementary(m, row, col,
                                           Complex(rng.next_symmetric(), rng.next_symmetric()));
    return v;
}

std::string render_table(const PrincipalCurvatureTable& table) {
    std::string out;
    for (const auto& g : table.groups) {
        if (!out.empty()) out += " ";
        out += num(g.value) + ":" + std::to_string(g.multiplicity);
    }
    return out;
}

std::string render_expected(const std::vector<ExpectedGroup>& groups) {
    std::string out;
    for (const auto& g : groups) {
        if (!out.empty()) out += " ";
        out += num(g.value) + ":" + std::to_string(g.multiplicity);
    }
    return out;
}

std::string render_spectral(const SpectralTable& table) {
    std::string out;
    for (const auto& g : table.groups) {
        if (!out.empty()) out += " ";
        out += num(g.value) + ":" + std::to_string(g.multiplicity);
    }
    return out;
}

// Multiset comparison; a structural mismatch reports residual 1 so that the
// pass criterion stays "residual below tolerance".
double diff_expected(const PrincipalCurvatureTable& got, const std::vector<ExpectedGroup>& want) {
    if (got.groups.size() != want.size()) return 1.0;
    double resid = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        if (got.groups[i].multiplicity != want[i].multiplicity) return 1.0;
        resid = std::max(resid, std::abs(got.groups[i].value - want[i].value));
    }
    return resid;
}

double diff_spectral(const PrincipalCurvatureTable& got, const SpectralTable& want) {
    if (got.groups.size() != want.groups.size()) return 1.0;
    double resid = 0.0;
    for (std::size_t i = 0; i < want.groups.size(); ++i) {
        if (got.groups[i].multiplicity != want.groups[i].multiplicity) return 1.0;
        resid = std::max(resid, std::abs(got.groups[i].value - want.groups[i].value));
    }
    return resid;
}

double diff_tables(const PrincipalCurvatureTable& a, const PrincipalCurvatureTable& b) {
    if (a.groups.size() != b.groups.size()) return 1.0;
    double resid = 0.0;
    for (std::size_t i = 0; i < a.groups.size(); ++i) {
        if (a.groups[i].multiplicity != b.groups[i].multiplicity) return 1.0;
        resid = std::max(resid, std::abs(a.groups[i].value - b.groups[i].value));
    }
    return resid;
}

class Runner {
public:
    explicit Runner(const RunConfig& cfg)
        : cfg_(cfg), rng_(cfg.seed), ctx_(make_curvature_context(cfg.m)) {}

    VerificationReport run() {
        report_.version = kVersion;
        report_.config = cfg_;
        roots();
        curvature();
        structures();
        horospheres();
        tubes();
        contact();
        codazzi();
        identities();
        eigenbundles();
        return std::move(report_);
    }

private:
    void add(std::string id, std::string params, std::string expected, std::string computed,
             double residual, double tolerance) {
        CheckRecord rec;
        rec.id = std::move(id);
        rec.params = std::move(params);
        rec.expected = std::move(expected);
        rec.computed = std::move(computed);
        rec.residual = residual;
        rec.tolerance = tolerance;
        rec.pass = residual < tolerance;
        report_.checks.push_back(std::move(rec));
    }

    // Exceptions from a check become a failed record, not an aborted run.
    void guarded(const char* id, const std::string& params, const std::function<void()>& body) {
        try {
            body();
        } catch (const Error& e) {
            add(id, params, "no error", std::string("error: ") + e.what(), 1.0, cfg_.eps_resid);
        }
    }

    std::string mparam() const { return "m=" + std::to_string(cfg_.m); }

    // ------------------------------------------------------------------ roots

    void roots() {
        guarded("roots/decomposition", mparam(), [&] {
            const RootSystemData data = restricted_root_decomposition(cfg_.m, cfg_.eps_group);
            std::string expected, computed;
            for (const auto& root : positive_roots()) {
                if (!expected.empty()) expected += " ";
                expected += root.label() + ":" + std::to_string(root_multiplicity(root, cfg_.m));
            }
            for (const auto& rs : data.positive) {
                if (!computed.empty()) computed += " ";
                computed += rs.root.label() + ":" + std::to_string(rs.multiplicity);
            }
            add("roots/decomposition", mparam(), expected, computed, data.eigen_residual,
                cfg_.eps_resid);

            double worst = 0.0;
            for (const auto& rs : data.positive) {
                const auto explicit_basis = explicit_root_space(rs.root, cfg_.m);
                worst = std::max(worst, max_principal_angle(rs.basis, explicit_basis, metric));
                worst = std::max(worst, max_principal_angle(explicit_basis, rs.basis, metric));
            }
            add("roots/spaces", mparam(), "angle 0 to explicit bases", "max angle " + num(worst),
                worst, cfg_.eps_angle);
        });
        guarded("roots/iwasawa", mparam(), [&] {
            const IwasawaData data = iwasawa_decomposition(cfg_.m, cfg_.eps_group);
            const int zero_expect = (cfg_.m - 2) * (cfg_.m - 2) + 3;
            std::string computed = "g0:" + std::to_string(data.g_zero.size());
            for (const auto& gs : data.positive)
                computed += " " + gs.root.label() + ":" + std::to_string(gs.basis.size());
            const bool dims_ok = static_cast<int>(data.g_zero.size()) == zero_expect;
            add("roots/iwasawa", mparam(), "g0:" + std::to_string(zero_expect), computed,
                dims_ok ? data.eigen_residual : 1.0, cfg_.eps_resid);
        });
    }

    // -------------------------------------------------------------- curvature

    void curvature() {
        guarded("curvature/equivalence", mparam() + " triples=1000", [&] {
            double worst = 0.0;
            for (int i = 0; i < 1000; ++i) {
                const TangentVector x = random_p_vector(cfg_.m, rng_);
                const TangentVector y = random_p_vector(cfg_.m, rng_);
                const TangentVector z = random_p_vector(cfg_.m, rng_);
                const TangentVector rb = R_bracket(x, y, z);
                const TangentVector rf = R_formula(x, y, z, ctx_.quaternions);
                worst = std::max(worst, (rb - rf).norm() / std::max(1.0, rb.norm()));
            }
            add("curvature/equivalence", mparam() + " triples=1000", "bracket = closed formula",
                "max relative residual " + num(worst), worst, cfg_.eps_resid);
        });

        const struct {
            const char* id;
            bool perp;
        } cases[] = {{"curvature/jacobi-table/complex", false}, {"curvature/jacobi-table/perp", true}};
        for (const auto& c : cases) {
            guarded(c.id, mparam(), [&] {
                const double pi = std::acos(-1.0);
                const TangentVector x = weyl_chamber_vector(cfg_.m, c.perp ? pi / 4 : 0.0);
                TableParams tp;
                tp.m = cfg_.m;
                tp.perp_type = c.perp;
                const auto want = expected_table(ReferenceTable::JacobiOperator, tp).merged();
                const TangentSpectralTable got = jacobi_spectrum(ctx_, x, cfg_.eps_group);
                double resid = got.groups.size() == want.size() ? 0.0 : 1.0;
                std::string computed;
                for (std::size_t i = 0; i < got.groups.size(); ++i) {
                    if (!computed.empty()) computed += " ";
                    computed += num(got.groups[i].value) + ":" +
                                std::to_string(got.groups[i].multiplicity);
                    if (resid < 1.0) {
                        if (got.groups[i].multiplicity != want[i].multiplicity)
                            resid = 1.0;
                        else
                            resid = std::max(resid, std::abs(got.groups[i].value - want[i].value));
                    }
                }
                const EigenspaceCheck spaces = jacobi_eigenspace_check(ctx_, x, cfg_.eps_group);
                if (!spaces.pass) resid = std::max(resid, 1.0);
                add(c.id, mparam(), render_expected(want),
                    computed + " spaces-angle " + num(spaces.max_angle), resid, cfg_.eps_resid);
            });
        }

        guarded("curvature/sectional-range", mparam() + " samples=2000", [&] {
            double low = 0.0, high = 0.0;
            for (int i = 0; i < 2000; ++i) {
                const TangentVector x = random_p_vector(cfg_.m, rng_);
                const TangentVector y = random_p_vector(cfg_.m, rng_);
                const double k = sectional_curvature(x, y);
                low = std::min(low, k);
                high = std::max(high, k);
            }
            const double violation = std::max(std::max(0.0, -4.0 - low), std::max(0.0, high));
            add("curvature/sectional-range", mparam() + " samples=2000", "[-4, 0]",
                "[" + num(low) + ", " + num(high) + "]", violation, cfg_.eps_resid);
        });
        guarded("curvature/sectional-pinch", mparam(), [&] {
            const TangentVector e1 = weyl_chamber_vector(cfg_.m, 0.0);
            const auto [a1, a2] = basis_a(cfg_.m);
            const double kmin = sectional_curvature(e1, kahler_J(e1));
            const double kflat = sectional_curvature(a1, a2);
            const double resid = std::max(std::abs(kmin + 4.0), std::abs(kflat));
            add("curvature/sectional-pinch", mparam(), "K(X,JX) = -4, flat plane 0",
                "K(X,JX)=" + num(kmin) + " K(e1,e2)=" + num(kflat), resid, cfg_.eps_resid);
        });
    }

    // -------------------------------------------------------------- structures

    void structures() {
        guarded("structures/kahler-angle", mparam(), [&] {
            double worst = 0.0;
            for (const double t : cfg_.t_grid) {
                const TangentVector h = weyl_chamber_vector(cfg_.m, t);
                worst = std::max(worst, std::abs(kahler_angle(h) - 2.0 * t));
            }
            add("structures/kahler-angle", mparam(), "angle(JH_t, JJH_t) = 2t",
                "max deviation " + num(worst), worst, cfg_.eps_resid);
        });
        guarded("structures/classify", mparam(), [&] {
            const double pi = std::acos(-1.0);
            const SingularType at0 = classify_vector(weyl_chamber_vector(cfg_.m, 0.0));
            const SingularType at8 = classify_vector(weyl_chamber_vector(cfg_.m, pi / 8));
            const SingularType at4 = classify_vector(weyl_chamber_vector(cfg_.m, pi / 4));
            const int wrong = (at0 != SingularType::ComplexType) + (at8 != SingularType::Regular) +
                              (at4 != SingularType::PerpType);
            add("structures/classify", mparam(), "complex / regular / perp",
                std::string(to_string(at0)) + " / " + to_string(at8) + " / " + to_string(at4),
                static_cast<double>(wrong), 0.5);
        });
    }

    // ------------------------------------------------------------- horospheres

    void horospheres() {
        for (const double t : cfg_.t_grid) {
            const std::string params = mparam() + " t=" + num(t);
            guarded("horosphere/table", params, [&] {
                const PrincipalCurvatureTable table = horosphere_spectrum(ctx_, t, cfg_.eps_group);
                TableParams tp;
                tp.m = cfg_.m;
                tp.t = t;
                const auto want =
                    expected_table(ReferenceTable::HorosphereFamily, tp).merged(cfg_.eps_group);
                const SpectralTable iwasawa = iwasawa_spectrum(cfg_.m, t, cfg_.eps_group);
                const double resid =
                    std::max(diff_expected(table, want), diff_spectral(table, iwasawa));
                add("horosphere/table", params, render_expected(want),
                    render_table(table) + " | iwasawa " + render_spectral(iwasawa), resid,
                    cfg_.eps_resid);
            });
            guarded("horosphere/invariance", params, [&] {
                const PrincipalCurvatureTable table = horosphere_spectrum(ctx_, t, cfg_.eps_group);
                const HypersurfacePointModel model(table.normal);
                const double pi = std::acos(-1.0);
                const bool singular = t < 1e-12 || std::abs(t - pi / 4) < 1e-12;
                const InvarianceCheck c = subbundle_invariance(model, table, Subbundle::C);
                const InvarianceCheck q = subbundle_invariance(model, table, Subbundle::Q);
                double resid;
                std::string expected;
                if (singular) {
                    expected = "invariant C and Q";
                    resid = std::max(c.residual, q.residual);
                } else {
                    // invariance must fail decisively away from the endpoints
                    expected = "both residuals above 0.1";
                    resid = std::max(0.0, 0.1 - std::min(c.residual, q.residual));
                }
                add("horosphere/invariance", params, expected,
                    "C " + num(c.residual) + " Q " + num(q.residual), resid, cfg_.eps_resid);
            });
        }
    }

    // ------------------------------------------------------------------- tubes

    struct LabeledSpace {
        std::string label;
        double value = 0.0;
        std::vector<TangentVector> span;
    };

    std::vector<LabeledSpace> su_labeled_spaces(const TotallyGeodesicTangentSplit& split,
                                                double r) const {
        const int m = cfg_.m;
        std::vector<LabeledSpace> out;
        LabeledSpace flat{"T_oW with JY = -J1Y", 0.0, {}};
        LabeledSpace tanh_side{"T_oW with JY = J1Y", std::tanh(r), {}};
        for (int col = 0; col + 1 < m; ++col) {
            tanh_side.span.push_back(TangentVector::elementary(m, 0, col));
            tanh_side.span.push_back(TangentVector::elementary(m, 0, col, Complex(0, 1)));
            flat.span.push_back(TangentVector::elementary(m, 1, col));
            flat.span.push_back(TangentVector::elementary(m, 1, col, Complex(0, 1)));
        }
        LabeledSpace coth_side{"HN minus CN", 1.0 / std::tanh(r), {}};
        coth_side.span.push_back(TangentVector::elementary(m, 1, m - 1));
        coth_side.span.push_back(TangentVector::elementary(m, 1, m - 1, Complex(0, 1)));
        LabeledSpace top{"R JN", 2.0 / std::tanh(2.0 * r), {}};
        top.span.push_back(kahler_J(split.default_normal));
        out.push_back(std::move(flat));
        out.push_back(std::move(tanh_side));
        out.push_back(std::move(coth_side));
        out.push_back(std::move(top));
        return out;
    }

    std::vector<LabeledSpace> sp_labeled_spaces(const TotallyGeodesicTangentSplit& split,
                                                double r) const {
        const double s2 = std::sqrt(2.0);
        const QuaternionBasis quat = QuaternionBasis::canonical();
        const TangentVector n = split.default_normal;
        const TangentVector jn = kahler_J(n);
        std::vector<LabeledSpace> out;
        LabeledSpace zero{"JJ JN", 0.0, {}};
        LabeledSpace beta{"JJ N", s2 / std::tanh(s2 * r), {}};
        for (int nu = 0; nu < 3; ++nu) {
            zero.span.push_back(quat.apply(nu, jn));
            beta.span.push_back(quat.apply(nu, n));
        }
        out.push_back(std::move(zero));
        out.push_back(LabeledSpace{"R JN", s2 * std::tanh(s2 * r), {jn}});
        out.push_back(std::move(beta));
        return out;
    }

    void labeled_space_check(const char* id, const std::string& params,
                             const PrincipalCurvatureTable& table,
                             const std::vector<LabeledSpace>& spaces) {
        double worst = 0.0;
        for (const auto& ls : spaces) {
            const PrincipalCurvatureTable::Group* group = nullptr;
            for (const auto& g : table.groups)
                if (std::abs(g.value - ls.value) < 1e-6) group = &g;
            if (group == nullptr) {
                worst = 1.0;
                break;
            }
            // the labeled span must sit inside the matching eigenspace
            worst = std::max(worst, max_principal_angle(group->basis, ls.span, metric));
            if (static_cast<int>(group->basis.size()) == static_cast<int>(ls.span.size()))
                worst = std::max(worst, max_principal_angle(ls.span, group->basis, metric));
        }
        add(id, params, "labeled eigenspaces match", "max angle " + num(worst), worst,
            cfg_.eps_angle);
    }

    void tube_family(const TotallyGeodesicTangentSplit& split, ReferenceTable kind) {
        const std::string tag = split.kind;  // "su" or "sp"
        const std::string base = "tube/" + tag;
        const std::string mpar =
            tag == "sp" ? mparam() + " n=" + std::to_string(split.n) : mparam();

        guarded((base + "/geodesic").c_str(), mpar, [&] {
            const GeodesicCheck gc = verify_totally_geodesic(split, rng_, cfg_.eps_resid);
            const double resid = std::max({gc.subalgebra_closure, gc.theta_invariance,
                                           gc.lie_triple, gc.jacobi_invariance});
            add(base + "/geodesic", mpar, "closed subalgebra, theta-stable, Lie triple",
                "closure " + num(gc.subalgebra_closure) + " theta " + num(gc.theta_invariance) +
                    " triple " + num(gc.lie_triple) + " jacobi " + num(gc.jacobi_invariance),
                resid, cfg_.eps_resid);
        });

        for (const double r : cfg_.r_grid) {
            const std::string params = mpar + " r=" + num(r);
            guarded((base + "/table").c_str(), params, [&] {
                const PrincipalCurvatureTable table = tube_spectrum(ctx_, split, r, cfg_.eps_group);
                TableParams tp;
                tp.m = cfg_.m;
                tp.n = split.n;
                tp.r = r;
                const auto want = expected_table(kind, tp).merged(cfg_.eps_group);
                add(base + "/table", params, render_expected(want), render_table(table),
                    diff_expected(table, want), cfg_.eps_resid);

                const auto spaces = tag == "su" ? su_labeled_spaces(split, r)
                                                : sp_labeled_spaces(split, r);
                labeled_space_check((base + "/spaces").c_str(), params, table, spaces);

                const HypersurfacePointModel model(split.default_normal);
                const InvarianceCheck c = subbundle_invariance(model, table, Subbundle::C);
                const InvarianceCheck q = subbundle_invariance(model, table, Subbundle::Q);
                add(base + "/invariance", params, "C and Q invariant",
                    "C " + num(c.residual) + " Q " + num(q.residual),
                    std::max(c.residual, q.residual), cfg_.eps_resid);
            });
            guarded((base + "/ode").c_str(), params, [&] {
                const OdeResidualCheck ode = ode_residual_check(ctx_, split, r);
                const double resid =
                    std::max({ode.ode_residual, ode.initial_residual, ode.shape_residual});
                add(base + "/ode", params, "D'' + R_N D = 0, A D = D'",
                    "ode " + num(ode.ode_residual) + " init " + num(ode.initial_residual) +
                        " shape " + num(ode.shape_residual),
                    resid, 1e-10);
            });
        }

        guarded((base + "/normal-independence").c_str(), mpar + " r=1 normals=16", [&] {
            const PrincipalCurvatureTable ref = tube_spectrum(ctx_, split, 1.0, cfg_.eps_group);
            double worst = 0.0;
            for (int i = 0; i < 16; ++i) {
                const TangentVector n = random_unit_in_span(split.normal, rng_);
                worst = std::max(
                    worst, diff_tables(ref, tube_spectrum(ctx_, split, n, 1.0, cfg_.eps_group)));
            }
            add(base + "/normal-independence", mpar + " r=1 normals=16",
                "spectrum independent of the normal direction", "max deviation " + num(worst),
                worst, cfg_.eps_resid);
        });

        guarded((base + "/limit").c_str(), mpar + " r=20", [&] {
            const double pi = std::acos(-1.0);
            const double t = tag == "su" ? 0.0 : pi / 4;
            const PrincipalCurvatureTable tube = tube_spectrum(ctx_, split, 20.0, cfg_.eps_group);
            const PrincipalCurvatureTable horo = horosphere_spectrum(ctx_, t, cfg_.eps_group);
            add(base + "/limit", mpar + " r=20", "tube spectrum approaches horosphere t=" + num(t),
                render_table(tube), diff_tables(tube, horo), 1e-8);
        });
    }

    void tubes() {
        tube_family(su_submodel(cfg_.m), ReferenceTable::SuTube);
        if (cfg_.m % 2 == 0) tube_family(sp_submodel(cfg_.m / 2), ReferenceTable::SpTube);
    }

    // ----------------------------------------------------- contact and codazzi

    std::vector<std::pair<std::string, TangentVector>> model_normals() {
        const double pi = std::acos(-1.0);
        std::vector<std::pair<std::string, TangentVector>> out;
        out.emplace_back("N=H_0", weyl_chamber_vector(cfg_.m, 0.0));
        out.emplace_back("N=H_pi/8", weyl_chamber_vector(cfg_.m, pi / 8));
        out.emplace_back("N=H_pi/4", weyl_chamber_vector(cfg_.m, pi / 4));
        out.emplace_back("N=su-model", su_submodel(cfg_.m).default_normal);
        if (cfg_.m % 2 == 0) out.emplace_back("N=sp-model", sp_submodel(cfg_.m / 2).default_normal);
        out.emplace_back("N=random", random_p_vector(cfg_.m, rng_).normalized());
        return out;
    }

    void contact() {
        for (const auto& [name, normal] : model_normals()) {
            const std::string params = mparam() + " " + name;
            guarded("contact/identities", params, [&] {
                const HypersurfacePointModel model(normal);
                const double resid = contact_identity_residual(model);
                add("contact/identities", params, "four identity families hold",
                    "max residual " + num(resid), resid, cfg_.eps_resid);
            });
        }
    }

    void codazzi() {
        const double pi = std::acos(-1.0);
        const struct {
            const char* name;
            double t;
            int samples;
        } cases[] = {{"complex", 0.0, 600}, {"perp", pi / 4, 600}, {"regular", 0.3, 300}};
        std::vector<int> signs;
        for (const auto& c : cases) {
            const std::string params =
                mparam() + " type=" + c.name + " samples=" + std::to_string(c.samples);
            guarded("codazzi/sign", params, [&] {
                const HypersurfacePointModel model(weyl_chamber_vector(cfg_.m, c.t));
                const CodazziSignCheck check =
                    codazzi_sign_check(model, rng_, c.samples, cfg_.eps_resid);
                signs.push_back(check.epsilon);
                add("codazzi/sign", params, "display proportional to tan R(X,Y)N",
                    "epsilon=" + std::to_string(check.epsilon) + " max residual " +
                        num(check.max_residual),
                    check.epsilon == 0 ? 1.0 : check.max_residual, cfg_.eps_resid);
            });
        }
        const bool constant =
            !signs.empty() && std::all_of(signs.begin(), signs.end(),
                                          [&](int s) { return s == signs.front(); });
        std::string got = "epsilon =";
        for (const int s : signs) got += " " + std::to_string(s);
        add("codazzi/sign-constant", mparam(), "one sign across all normal types", got,
            constant ? 0.0 : 1.0, 0.5);
    }

    // -------------------------------------------------------------- identities

    void identity_record(const std::string& id, const std::string& params,
                         const HypersurfacePointModel& model,
                         const PrincipalCurvatureTable& table) {
        const IdentityReport rep = identity_suite(model, table, cfg_.eps_resid);
        double resid = 0.0;
        std::string expected, computed;
        for (const auto& e : rep.entries) {
            if (!e.applicable) continue;
            if (!expected.empty()) expected += "; ";
            expected += e.name;
            resid = std::max(resid, e.residual);
        }
        computed = "alpha=" + num(rep.alpha) + " beta=" + num(rep.beta[0]) + "," +
                   num(rep.beta[1]) + "," + num(rep.beta[2]);
        if (rep.type == SingularType::PerpType) computed += " gamma=" + num(rep.gamma);
        for (const double l : rep.lambda) computed += " lambda=" + num(l);
        add(id, params, expected, computed, resid, cfg_.eps_resid);
    }

    void identities() {
        {
            const auto split = su_submodel(cfg_.m);
            const HypersurfacePointModel model(split.default_normal);
            for (const double r : cfg_.r_grid) {
                const std::string params = mparam() + " r=" + num(r);
                guarded("identities/su-tube", params, [&] {
                    identity_record("identities/su-tube", params, model,
                                    tube_spectrum(ctx_, split, r, cfg_.eps_group));
                });
            }
        }
        if (cfg_.m % 2 == 0) {
            const auto split = sp_submodel(cfg_.m / 2);
            const HypersurfacePointModel model(split.default_normal);
            for (const double r : cfg_.r_grid) {
                const std::string params = mparam() + " n=" + std::to_string(split.n) +
                                           " r=" + num(r);
                guarded("identities/sp-tube", params, [&] {
                    identity_record("identities/sp-tube", params, model,
                                    tube_spectrum(ctx_, split, r, cfg_.eps_group));
                });
            }
        }
        const double pi = std::acos(-1.0);
        for (const double t : {0.0, pi / 4}) {
            const std::string params = mparam() + " t=" + num(t);
            guarded("identities/horosphere", params, [&] {
                const PrincipalCurvatureTable table = horosphere_spectrum(ctx_, t, cfg_.eps_group);
                identity_record("identities/horosphere", params,
                                HypersurfacePointModel(table.normal), table);
            });
        }
    }

    // ------------------------------------------------------------ eigenbundles

    void eigenbundles() {
        guarded("eigenbundles/ranks", mparam(), [&] {
            const HypersurfacePointModel model(weyl_chamber_vector(cfg_.m, 0.0));
            const EigenbundleSplit eb = phi_phi1_eigenbundles(model);
            const int want = 2 * cfg_.m - 2;
            const bool ranks_ok = static_cast<int>(eb.plus.size()) == want &&
                                  static_cast<int>(eb.minus.size()) == want;
            const double resid = ranks_ok
                                     ? std::max(eb.involution_residual, std::abs(eb.trace))
                                     : 1.0;
            add("eigenbundles/ranks", mparam(),
                "dim " + std::to_string(want) + " each, involution, trace 0",
                "plus " + std::to_string(eb.plus.size()) + " minus " +
                    std::to_string(eb.minus.size()) + " involution " +
                    num(eb.involution_residual) + " trace " + num(eb.trace),
                resid, cfg_.eps_resid);
        });
        guarded("eigenbundles/horosphere-t0", mparam(), [&] {
            const PrincipalCurvatureTable table = horosphere_spectrum(ctx_, 0.0, cfg_.eps_group);
            const HypersurfacePointModel model(table.normal);
            const EigenbundleSplit eb = phi_phi1_eigenbundles(model);
            double resid = 1.0;
            std::string computed = "no 0 or 1 group";
            const PrincipalCurvatureTable::Group* t0 = nullptr;
            const PrincipalCurvatureTable::Group* t1 = nullptr;
            for (const auto& g : table.groups) {
                if (std::abs(g.value) < 1e-6) t0 = &g;
                if (std::abs(g.value - 1.0) < 1e-6) t1 = &g;
            }
            if (t0 != nullptr && t1 != nullptr) {
                resid = std::max(max_principal_angle(t0->basis, eb.plus, metric),
                                 max_principal_angle(eb.plus, t0->basis, metric));
                resid = std::max(resid, max_principal_angle(t1->basis, eb.minus, metric));
                computed = "angles " + num(resid);
            }
            add("eigenbundles/horosphere-t0", mparam(), "T_0 = E_+1 and E_-1 inside T_1", computed,
                resid, cfg_.eps_angle);
        });
    }

    RunConfig cfg_;
    SplitMix64 rng_;
    CurvatureContext ctx_;
    VerificationReport report_;
};

}  // namespace

VerificationReport run_verify(const RunConfig& config) {
    config.validate();
    Runner runner(config);
    return runner.run();
}

}  // namespace ncgrass
