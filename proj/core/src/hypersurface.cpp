#include "ncgrass/hypersurface.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <utility>

#include "ncgrass/errors.hpp"
#include "ncgrass/root_system.hpp"
#include "ncgrass/spectral.hpp"

namespace ncgrass {

namespace {

std::vector<TangentVector> elementary_p_basis(int m) {
    std::vector<TangentVector> out;
    out.reserve(4 * m);
    for (int row = 0; row < 2; ++row)
        for (int col = 0; col < m; ++col) {
            out.push_back(TangentVector::elementary(m, row, col));
            out.push_back(TangentVector::elementary(m, row, col, Complex(0.0, 1.0)));
        }
    return out;
}

// Orthonormal basis of the complement of span(fixed) in p; fixed must be
// orthonormal already so the leading output vectors reproduce it.
std::vector<TangentVector> complement_in_p(std::vector<TangentVector> fixed, int m,
                                           double eps_rank = 1e-10) {
    const auto head = static_cast<std::ptrdiff_t>(fixed.size());
    for (auto& e : elementary_p_basis(m)) fixed.push_back(std::move(e));
    auto ortho = orthonormalize(fixed, metric, eps_rank);
    ortho.erase(ortho.begin(), ortho.begin() + head);
    return ortho;
}

TangentVector combine(const std::vector<TangentVector>& basis, const RealVec& coef) {
    TangentVector out = TangentVector::zero(basis.front().m());
    for (std::size_t j = 0; j < basis.size(); ++j) out += coef[j] * basis[j];
    return out;
}

struct TangentGroup {
    double value = 0.0;
    int multiplicity = 0;
    std::vector<TangentVector> basis;
};

// Spectral decomposition of a self-adjoint operator restricted to the span
// of an orthonormal basis, groups ascending, bases back in p.
template <class Op>
std::vector<TangentGroup> spectrum_on(Op&& op, const std::vector<TangentVector>& basis,
                                      double eps_group) {
    const ComplexMatrix a = operator_matrix(op, basis, metric);
    const EigResult eig = hermitian_eig(a);
    const SpectralTable table = group_eigenvalues(eig.values, real_columns(eig.vectors), eps_group);
    std::vector<TangentGroup> out;
    out.reserve(table.groups.size());
    for (const auto& g : table.groups) {
        TangentGroup tg;
        tg.value = g.value;
        tg.multiplicity = g.multiplicity;
        tg.basis.reserve(g.basis.size());
        for (const auto& col : g.basis) tg.basis.push_back(combine(basis, col));
        out.push_back(std::move(tg));
    }
    return out;
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

TangentVector apply_shape(const PrincipalCurvatureTable& table, const TangentVector& v) {
    TangentVector out = TangentVector::zero(v.m());
    for (const auto& g : table.groups)
        for (const auto& b : g.basis) out += (g.value * metric(v, b)) * b;
    return out;
}

// Index of the unique eigenvalue group whose span contains the unit vector v.
int member_group(const PrincipalCurvatureTable& table, const TangentVector& v, double member_tol,
                 const char* role) {
    for (std::size_t gi = 0; gi < table.groups.size(); ++gi) {
        double p2 = 0.0;
        for (const auto& b : table.groups[gi].basis) {
            const double c = metric(v, b);
            p2 += c * c;
        }
        if (p2 > 1.0 - member_tol) return static_cast<int>(gi);
    }
    throw RoleResolutionFailure(std::string("no principal curvature space contains ") + role);
}

}  // namespace

// ============================================================================
// Point model
// ============================================================================

HypersurfacePointModel::HypersurfacePointModel(TangentVector normal, double eps_rank)
    : normal_(std::move(normal)), quat_(QuaternionBasis::canonical()) {
    if (std::abs(normal_.norm() - 1.0) > 1e-9) throw NotUnit("hypersurface normal must be unit");
    type_ = classify_vector(normal_);
    if (type_ == SingularType::ComplexType) quat_ = quat_.adapted_to(normal_);
    xi_ = -kahler_J(normal_);
    for (int nu = 0; nu < 3; ++nu) xi_nu_[nu] = -quat_.apply(nu, normal_);

    const int m = normal_.m();
    tm_ = complement_in_p({normal_}, m, eps_rank);
    c_ = complement_in_p({normal_, xi_}, m, eps_rank);
    q_ = complement_in_p({normal_, xi_nu_[0], xi_nu_[1], xi_nu_[2]}, m, eps_rank);
    if (static_cast<int>(tm_.size()) != 4 * m - 1 || static_cast<int>(c_.size()) != 4 * m - 2 ||
        static_cast<int>(q_.size()) != 4 * m - 4)
        throw BasisMismatch("hypersurface bases have unexpected dimensions");
}

TangentVector HypersurfacePointModel::phi(const TangentVector& x) const {
    return kahler_J(x) - eta(x) * normal_;
}

TangentVector HypersurfacePointModel::phi_nu(int nu, const TangentVector& x) const {
    return quat_.apply(nu, x) - eta_nu(nu, x) * normal_;
}

double contact_identity_residual(const HypersurfacePointModel& model) {
    double worst = 0.0;
    for (int nu = 0; nu < 3; ++nu) {
        const int nu1 = (nu + 1) % 3;
        const int nu2 = (nu + 2) % 3;
        worst = std::max(worst, (model.phi_nu(nu1, model.xi_nu(nu)) + model.xi_nu(nu2)).norm());
        worst = std::max(worst, (model.phi_nu(nu, model.xi_nu(nu1)) - model.xi_nu(nu2)).norm());
        worst = std::max(worst, (model.phi(model.xi_nu(nu)) - model.phi_nu(nu, model.xi())).norm());
        for (const auto& x : model.tangent_basis())
            worst = std::max(worst, std::abs(model.eta_nu(nu, model.phi(x)) -
                                             model.eta(model.phi_nu(nu, x))));
    }
    return worst;
}

TangentVector codazzi_rhs(const HypersurfacePointModel& model, const TangentVector& x,
                          const TangentVector& y) {
    const TangentVector phix = model.phi(x);
    const TangentVector phiy = model.phi(y);
    TangentVector sum =
        model.eta(x) * phiy - model.eta(y) * phix - (2.0 * metric(phix, y)) * model.xi();
    for (int nu = 0; nu < 3; ++nu) {
        const TangentVector pnx = model.phi_nu(nu, x);
        const TangentVector pny = model.phi_nu(nu, y);
        sum += model.eta_nu(nu, x) * pny - model.eta_nu(nu, y) * pnx -
               (2.0 * metric(pnx, y)) * model.xi_nu(nu);
        sum += model.eta(pnx) * model.phi_nu(nu, phiy) - model.eta(pny) * model.phi_nu(nu, phix);
        sum += (model.eta(x) * model.eta(pny) - model.eta(y) * model.eta(pnx)) * model.xi_nu(nu);
    }
    return -0.5 * sum;
}

CodazziSignCheck codazzi_sign_check(const HypersurfacePointModel& model, SplitMix64& rng,
                                    int samples, double eps_resid) {
    CodazziSignCheck out;
    const auto& tm = model.tangent_basis();
    auto random_tangent = [&] {
        TangentVector v = TangentVector::zero(model.m());
        for (const auto& b : tm) v += rng.next_symmetric() * b;
        const double n = v.norm();
        if (n < 1e-8) throw ZeroVector("degenerate tangent sample");
        return (1.0 / n) * v;
    };
    for (int i = 0; i < samples; ++i) {
        const TangentVector x = random_tangent();
        const TangentVector y = random_tangent();
        const TangentVector rhs = codazzi_rhs(model, x, y);
        TangentVector w = R_formula(x, y, model.normal(), model.quaternions());
        w -= metric(w, model.normal()) * model.normal();
        const double plus = (rhs - w).norm();
        const double minus = (rhs + w).norm();
        if (out.epsilon == 0) {
            if (w.norm() < 1e-6) continue;
            out.epsilon = plus <= minus ? 1 : -1;
        }
        const double resid = (out.epsilon == 1 ? plus : minus) / std::max(1.0, w.norm());
        if (resid > eps_resid) throw RoleResolutionFailure("codazzi display sign is inconsistent");
        out.max_residual = std::max(out.max_residual, resid);
        ++out.samples;
    }
    return out;
}

// ============================================================================
// Spectra
// ============================================================================

int PrincipalCurvatureTable::total_multiplicity() const {
    int total = 0;
    for (const auto& g : groups) total += g.multiplicity;
    return total;
}

PrincipalCurvatureTable horosphere_spectrum(const CurvatureContext& ctx, double t,
                                            double eps_group) {
    const TangentVector h = weyl_chamber_vector(ctx.m, t);
    const auto tm = complement_in_p({h}, ctx.m);
    auto op = [&](const TangentVector& x) { return -1.0 * R_formula(x, h, h, ctx.quaternions); };
    const auto groups = spectrum_on(op, tm, eps_group);

    // analytic contributions, used only to label the groups
    std::vector<std::pair<double, std::string>> analytic{{0.0, "a-perp"}};
    for (const auto& root : positive_roots())
        if (root_multiplicity(root, ctx.m) > 0) analytic.emplace_back(root.value_at(t), root.label());

    PrincipalCurvatureTable table;
    table.family = "horosphere";
    table.param = t;
    table.normal = h;
    for (const auto& g : groups) {
        PrincipalCurvatureTable::Group out;
        // eigenvalues below solver noise are exact zeros of -R(.,H)H; taking
        // the root of the noise would inflate them to ~1e-8
        out.value = g.value < 1e-12 ? 0.0 : std::sqrt(g.value);
        out.multiplicity = g.multiplicity;
        out.basis = g.basis;
        for (const auto& [v, name] : analytic) {
            if (std::abs(v - out.value) > 1e-6) continue;
            if (!out.label.empty()) out.label += " + ";
            out.label += name;
        }
        table.groups.push_back(std::move(out));
    }
    return table;
}

PrincipalCurvatureTable tube_spectrum(const CurvatureContext& ctx,
                                      const TotallyGeodesicTangentSplit& split, double r,
                                      double eps_group) {
    return tube_spectrum(ctx, split, split.default_normal, r, eps_group);
}

PrincipalCurvatureTable tube_spectrum(const CurvatureContext& ctx,
                                      const TotallyGeodesicTangentSplit& split,
                                      const TangentVector& normal, double r, double eps_group) {
    if (!(r > 0.0)) throw BadParams("tube radius must be positive");
    if (std::abs(normal.norm() - 1.0) > 1e-9) throw NotUnit("tube normal must be unit");
    TangentVector res = normal;
    for (const auto& b : split.normal) res -= metric(res, b) * b;
    if (res.norm() > 1e-9) throw BasisMismatch("tube normal does not lie in the normal space");

    std::vector<TangentVector> seed{normal};
    for (const auto& b : split.normal) seed.push_back(b);
    auto side_n = orthonormalize(seed, metric);
    side_n.erase(side_n.begin());

    auto op = [&](const TangentVector& x) {
        return -1.0 * R_formula(x, normal, normal, ctx.quaternions);
    };

    // the Jacobi operator of the normal must respect the split
    auto mixing = [&](const std::vector<TangentVector>& side) {
        double worst = 0.0;
        for (const auto& b : side) {
            TangentVector w = op(b);
            for (const auto& u : side) w -= metric(w, u) * u;
            worst = std::max(worst, w.norm());
        }
        return worst;
    };
    if (mixing(split.tangent) > 1e-9 || mixing(side_n) > 1e-9)
        throw SplitNotInvariant("normal Jacobi operator mixes tangent and normal spaces");

    struct Raw {
        double value;
        int mult;
        std::vector<TangentVector> basis;
        std::string label;
    };
    std::vector<Raw> raws;
    for (auto& g : spectrum_on(op, split.tangent, eps_group)) {
        const double c = std::sqrt(std::max(0.0, g.value));
        const std::string label =
            g.value < 1e-10 ? std::string("tangent flat") : "tangent c=" + format_value(c);
        raws.push_back({c * std::tanh(c * r), g.multiplicity, std::move(g.basis), label});
    }
    for (auto& g : spectrum_on(op, side_n, eps_group)) {
        if (g.value < 1e-10) throw NormalKernel("flat direction on the normal side of the tube");
        const double c = std::sqrt(g.value);
        raws.push_back(
            {c / std::tanh(c * r), g.multiplicity, std::move(g.basis), "normal c=" + format_value(c)});
    }
    std::stable_sort(raws.begin(), raws.end(),
                     [](const Raw& a, const Raw& b) { return a.value < b.value; });

    PrincipalCurvatureTable table;
    table.family = split.kind + "-tube";
    table.param = r;
    table.normal = normal;
    for (auto& raw : raws) {
        if (!table.groups.empty() && raw.value - table.groups.back().value <= eps_group) {
            auto& g = table.groups.back();
            g.value = (g.value * g.multiplicity + raw.value * raw.mult) /
                      (g.multiplicity + raw.mult);
            g.multiplicity += raw.mult;
            for (auto& b : raw.basis) g.basis.push_back(std::move(b));
            g.label += " + " + raw.label;
        } else {
            table.groups.push_back({raw.value, raw.mult, std::move(raw.basis), std::move(raw.label)});
        }
    }
    return table;
}

OdeResidualCheck ode_residual_check(const CurvatureContext& ctx,
                                    const TotallyGeodesicTangentSplit& split, double r,
                                    double eps) {
    if (!(r > 0.0)) throw BadParams("tube radius must be positive");
    const TangentVector n = split.default_normal;
    auto op = [&](const TangentVector& x) { return R_formula(x, n, n, ctx.quaternions); };

    std::vector<TangentVector> seed{n};
    for (const auto& b : split.normal) seed.push_back(b);
    auto side_n = orthonormalize(seed, metric);
    side_n.erase(side_n.begin());

    std::vector<TangentVector> combined = split.tangent;
    combined.insert(combined.end(), side_n.begin(), side_n.end());
    const int dim = static_cast<int>(combined.size());
    const int dim_t = static_cast<int>(split.tangent.size());

    // eigenframe of the Jacobi operator, per side
    struct Direction {
        int offset;
        RealVec col;
        double c;
        bool tangent;
    };
    std::vector<Direction> dirs;
    auto decompose = [&](const std::vector<TangentVector>& side, int offset, bool tangent_side) {
        auto neg = [&](const TangentVector& x) { return -1.0 * op(x); };
        const EigResult eig = hermitian_eig(operator_matrix(neg, side, metric));
        const auto cols = real_columns(eig.vectors);
        for (std::size_t k = 0; k < cols.size(); ++k)
            dirs.push_back({offset, cols[k], std::sqrt(std::max(0.0, eig.values[k])), tangent_side});
    };
    decompose(split.tangent, 0, true);
    decompose(side_n, dim_t, false);

    // closed forms cosh(cs) on tangent directions, sinh(cs)/c on normal ones,
    // evaluated at s together with the first two derivatives
    auto assemble = [&](double s) {
        std::array<ComplexMatrix, 3> mats{ComplexMatrix(dim, dim), ComplexMatrix(dim, dim),
                                          ComplexMatrix(dim, dim)};
        for (const auto& dir : dirs) {
            const double c = dir.c;
            double dv, dpv, dppv;
            if (dir.tangent) {
                dv = std::cosh(c * s);
                dpv = c * std::sinh(c * s);
                dppv = c * c * std::cosh(c * s);
            } else {
                dv = c < 1e-8 ? s : std::sinh(c * s) / c;
                dpv = std::cosh(c * s);
                dppv = c * std::sinh(c * s);
            }
            const int k = static_cast<int>(dir.col.size());
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    const double w = dir.col[i] * dir.col[j];
                    mats[0](dir.offset + i, dir.offset + j) += dv * w;
                    mats[1](dir.offset + i, dir.offset + j) += dpv * w;
                    mats[2](dir.offset + i, dir.offset + j) += dppv * w;
                }
        }
        return mats;
    };

    const auto [d, dp, dpp] = assemble(r);
    const ComplexMatrix jac = operator_matrix(op, combined, metric);
    OdeResidualCheck out;
    out.ode_residual = (dpp + jac * d).max_abs();

    // D(0) and D'(0) are the complementary block identities
    const auto [d0, dp0, dpp0] = assemble(0.0);
    ComplexMatrix id_t(dim, dim), id_n(dim, dim);
    for (int i = 0; i < dim; ++i) (i < dim_t ? id_t : id_n)(i, i) = 1.0;
    out.initial_residual = std::max((d0 - id_t).max_abs(), (dp0 - id_n).max_abs());

    // shape operator from the independent spectral path must satisfy A D = D'
    const PrincipalCurvatureTable table = tube_spectrum(ctx, split, n, r);
    ComplexMatrix shape(dim, dim);
    for (const auto& g : table.groups)
        for (const auto& b : g.basis) {
            RealVec coef(combined.size());
            for (std::size_t i = 0; i < combined.size(); ++i) coef[i] = metric(b, combined[i]);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) shape(i, j) += g.value * coef[i] * coef[j];
        }
    out.shape_residual = (shape * d - dp).max_abs();

    out.pass = out.ode_residual < eps && out.initial_residual < eps && out.shape_residual < eps;
    return out;
}

// ============================================================================
// Invariance and identities
// ============================================================================

InvarianceCheck subbundle_invariance(const HypersurfacePointModel& model,
                                     const PrincipalCurvatureTable& table, Subbundle which,
                                     double eps_resid) {
    if ((table.normal - model.normal()).norm() > 1e-9)
        throw BasisMismatch("table and model use different normals");
    if (table.total_multiplicity() != 4 * model.m() - 1)
        throw BasisMismatch("table does not span the tangent space");
    InvarianceCheck out;
    if (which == Subbundle::C) {
        const TangentVector axi = apply_shape(table, model.xi());
        out.residual = (axi - metric(axi, model.xi()) * model.xi()).norm();
    } else {
        for (int nu = 0; nu < 3; ++nu) {
            const TangentVector av = apply_shape(table, model.xi_nu(nu));
            TangentVector rem = av;
            for (int mu = 0; mu < 3; ++mu) rem -= metric(av, model.xi_nu(mu)) * model.xi_nu(mu);
            out.residual = std::max(out.residual, rem.norm());
        }
    }
    out.invariant = out.residual < eps_resid;
    return out;
}

IdentityReport identity_suite(const HypersurfacePointModel& model,
                              const PrincipalCurvatureTable& table, double eps_resid,
                              double member_tol) {
    const SingularType type = model.normal_type();
    if (type == SingularType::Regular)
        throw WrongSingularType("principal curvature identities need a singular normal");

    IdentityReport rep;
    rep.type = type;
    std::vector<int> role_count(table.groups.size(), 0);

    const int gi_alpha = member_group(table, model.xi(), member_tol, "JN");
    rep.alpha = table.groups[gi_alpha].value;
    if (type == SingularType::PerpType) ++role_count[gi_alpha];

    rep.beta.resize(3);
    for (int nu = 0; nu < 3; ++nu) {
        const int gi = member_group(table, model.xi_nu(nu), member_tol, "JnuN");
        rep.beta[nu] = table.groups[gi].value;
        // for a complex-type normal xi_1 is xi itself, already counted above
        if (type == SingularType::PerpType || nu > 0) ++role_count[gi];
    }
    if (type == SingularType::ComplexType) ++role_count[gi_alpha];

    auto add_entry = [&](std::string name, double residual, bool applicable = true) {
        rep.entries.push_back({std::move(name), residual, applicable});
    };

    if (type == SingularType::PerpType) {
        std::array<double, 3> gamma_nu{};
        for (int nu = 0; nu < 3; ++nu) {
            const int gi = member_group(table, model.phi(model.xi_nu(nu)), member_tol, "JnuJN");
            gamma_nu[nu] = table.groups[gi].value;
            ++role_count[gi];
        }
        rep.gamma = (gamma_nu[0] + gamma_nu[1] + gamma_nu[2]) / 3.0;
        add_entry("gamma uniform", std::max({std::abs(gamma_nu[0] - gamma_nu[1]),
                                             std::abs(gamma_nu[1] - gamma_nu[2]),
                                             std::abs(gamma_nu[0] - gamma_nu[2])}));
    }

    for (std::size_t gi = 0; gi < table.groups.size(); ++gi)
        if (table.groups[gi].multiplicity > role_count[gi])
            rep.lambda.push_back(table.groups[gi].value);
    std::sort(rep.lambda.begin(), rep.lambda.end());

    if (type == SingularType::PerpType) {
        const double beta = (rep.beta[0] + rep.beta[1] + rep.beta[2]) / 3.0;
        add_entry("beta uniform", std::max({std::abs(rep.beta[0] - rep.beta[1]),
                                            std::abs(rep.beta[1] - rep.beta[2]),
                                            std::abs(rep.beta[0] - rep.beta[2])}));
        add_entry("gamma = 0", std::abs(rep.gamma));
        add_entry("alpha beta = 2", std::abs(rep.alpha * beta - 2.0));
        add_entry("lambda count", rep.lambda.size() > 2 ? double(rep.lambda.size() - 2) : 0.0);
        if (rep.lambda.empty()) {
            add_entry("2 alpha lambda^2 - 4 lambda + alpha = 0", 0.0, false);
            add_entry("lambda1 + lambda2 = beta", 0.0, false);
            add_entry("lambda1 lambda2 = 1/2", 0.0, false);
        } else {
            // a single lambda group is the degenerate case lambda1 = lambda2
            const double l1 = rep.lambda.front();
            const double l2 = rep.lambda.back();
            double quad = 0.0;
            for (const double l : rep.lambda)
                quad = std::max(quad, std::abs(2.0 * rep.alpha * l * l - 4.0 * l + rep.alpha));
            add_entry("2 alpha lambda^2 - 4 lambda + alpha = 0", quad);
            add_entry("lambda1 + lambda2 = beta", std::abs(l1 + l2 - beta));
            add_entry("lambda1 lambda2 = 1/2", std::abs(l1 * l2 - 0.5));
        }
    } else {
        const double b2 = rep.beta[1];
        const double b3 = rep.beta[2];
        const double beta = 0.5 * (b2 + b3);
        add_entry("beta2 = beta3", std::abs(b2 - b3));
        add_entry("beta^2 - alpha beta + 1 = 0",
                  std::abs(beta * beta - rep.alpha * beta + 1.0));
        add_entry("2 beta2 beta3 - alpha (beta2 + beta3) + 2 = 0",
                  std::abs(2.0 * b2 * b3 - rep.alpha * (b2 + b3) + 2.0));

        const EigenbundleSplit bundles = phi_phi1_eigenbundles(model);
        const int gi_minus = member_group(table, bundles.minus.front(), member_tol, "E-1");
        for (const auto& v : bundles.minus)
            if (member_group(table, v, member_tol, "E-1") != gi_minus)
                throw RoleResolutionFailure("E-1 spreads over several principal curvature spaces");
        add_entry("lambda on E-1 = 1/beta",
                  std::abs(table.groups[gi_minus].value - 1.0 / beta));
    }

    rep.pass = true;
    for (const auto& e : rep.entries)
        if (e.applicable && e.residual > eps_resid) rep.pass = false;
    return rep;
}

EigenbundleSplit phi_phi1_eigenbundles(const HypersurfacePointModel& model) {
    if (model.normal_type() != SingularType::ComplexType)
        throw WrongSingularType("phi phi_1 eigenbundles need a normal of complex type");
    const auto& q = model.q_basis();
    auto op = [&](const TangentVector& x) { return model.phi(model.phi_nu(0, x)); };
    const ComplexMatrix a = operator_matrix(op, q, metric);

    EigenbundleSplit out;
    const int n = static_cast<int>(q.size());
    const ComplexMatrix a2 = a * a;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double target = i == j ? 1.0 : 0.0;
            out.involution_residual =
                std::max(out.involution_residual, std::abs(a2(i, j) - Complex(target)));
        }
    for (int i = 0; i < n; ++i) out.trace += a(i, i).real();

    const EigResult eig = hermitian_eig(a);
    const auto cols = real_columns(eig.vectors);
    for (int k = 0; k < n; ++k) {
        TangentVector v = combine(q, cols[k]);
        (eig.values[k] > 0.0 ? out.plus : out.minus).push_back(std::move(v));
    }
    return out;
}

}  // namespace ncgrass
