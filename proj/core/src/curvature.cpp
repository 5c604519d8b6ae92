#include "ncgrass/curvature.hpp"

#include <cmath>
#include <string>

namespace ncgrass {

CurvatureContext make_curvature_context(int m) {
    CurvatureContext ctx;
    ctx.m = m;
    ctx.p_basis = cartan_decomposition(m).p_basis;
    ctx.quaternions = QuaternionBasis::canonical();
    return ctx;
}

TangentVector R_bracket(const TangentVector& x, const TangentVector& y, const TangentVector& z) {
    return -1.0 * bracket_kp(bracket_pp(x, y), z);
}

TangentVector R_formula(const TangentVector& x, const TangentVector& y, const TangentVector& z,
                        const QuaternionBasis& q) {
    const TangentVector jx = kahler_J(x);
    const TangentVector jy = kahler_J(y);
    const TangentVector jz = kahler_J(z);

    TangentVector sum = metric(y, z) * x - metric(x, z) * y + metric(jy, z) * jx -
                        metric(jx, z) * jy - 2.0 * metric(jx, y) * jz;

    for (int nu = 0; nu < 3; ++nu) {
        const TangentVector jnx = q.apply(nu, x);
        const TangentVector jny = q.apply(nu, y);
        const TangentVector jnz = q.apply(nu, z);
        sum += metric(jny, z) * jnx - metric(jnx, z) * jny - 2.0 * metric(jnx, y) * jnz;

        const TangentVector jnjx = q.apply(nu, jx);
        const TangentVector jnjy = q.apply(nu, jy);
        sum += metric(jnjy, z) * jnjx - metric(jnjx, z) * jnjy;
    }
    return -0.5 * sum;
}

ComplexMatrix jacobi_matrix(const CurvatureContext& ctx, const TangentVector& x,
                            double unit_tol) {
    if (std::abs(x.norm() - 1.0) > unit_tol)
        throw NotUnit("jacobi_matrix: |X| = " + std::to_string(x.norm()));
    auto op = [&](const TangentVector& y) { return R_bracket(y, x, x); };
    return operator_matrix(op, ctx.p_basis, metric);
}

namespace {

TangentVector from_coords(const RealVec& coords, const std::vector<TangentVector>& basis) {
    TangentVector v = TangentVector::zero(basis[0].m());
    for (std::size_t i = 0; i < coords.size(); ++i) v += coords[i] * basis[i];
    return v;
}

}  // namespace

TangentSpectralTable jacobi_spectrum(const CurvatureContext& ctx, const TangentVector& x,
                                     double eps_group) {
    const ComplexMatrix mat = jacobi_matrix(ctx, x);
    const EigResult eig = hermitian_eig(mat);
    const SpectralTable grouped =
        group_eigenvalues(eig.values, real_columns(eig.vectors), eps_group);

    TangentSpectralTable table;
    table.dim = grouped.total_multiplicity();
    for (const auto& g : grouped.groups) {
        TangentSpectralTable::Group tg;
        tg.value = g.value;
        tg.multiplicity = g.multiplicity;
        for (const auto& c : g.basis) tg.basis.push_back(from_coords(c, ctx.p_basis));
        table.groups.push_back(std::move(tg));
    }
    return table;
}

namespace {

/// Orthonormal complement of span(excluded) inside p.
std::vector<TangentVector> complement_in_p(const CurvatureContext& ctx,
                                           const std::vector<TangentVector>& excluded) {
    std::vector<TangentVector> all = orthonormalize(excluded, metric);
    const std::size_t head = all.size();
    for (const auto& b : ctx.p_basis) all.push_back(b);
    std::vector<TangentVector> onb = orthonormalize(all, metric);
    return {onb.begin() + static_cast<std::ptrdiff_t>(head), onb.end()};
}

/// Eigenspace of the involution J J1 (restricted to span(base), which it must
/// preserve) for eigenvalue sign = +1 or -1.
std::vector<TangentVector> jj1_eigenspace(const std::vector<TangentVector>& base,
                                          const QuaternionBasis& q, double sign) {
    std::vector<TangentVector> image;
    for (const auto& v : base) {
        const TangentVector w = kahler_J(q.apply(0, v));
        image.push_back(0.5 * (v + sign * w));
    }
    return orthonormalize(image, metric);
}

}  // namespace

EigenspaceCheck jacobi_eigenspace_check(const CurvatureContext& ctx, const TangentVector& x,
                                        double eps_group, double eps_angle) {
    const SingularType type = classify_vector(x, 1e-7, ctx.quaternions);
    if (type == SingularType::Regular)
        throw RegularVector("jacobi_eigenspace_check: vector is regular");
    if (std::abs(x.norm() - 1.0) > 1e-9) throw NotUnit("jacobi_eigenspace_check: not unit");

    const TangentVector jx = kahler_J(x);
    const TangentSpectralTable table = jacobi_spectrum(ctx, x, eps_group);

    // expected (value, eigenspace) pairs, built from the structures alone
    std::vector<std::pair<double, std::vector<TangentVector>>> expected;
    if (type == SingularType::PerpType) {
        std::vector<TangentVector> zero{x};
        for (const auto& v : jspan(jx, ctx.quaternions)) zero.push_back(v);
        std::vector<TangentVector> minus2{jx};
        for (const auto& v : jspan(x, ctx.quaternions)) minus2.push_back(v);
        std::vector<TangentVector> quat_lines;
        for (const auto& v : zero) quat_lines.push_back(v);
        for (const auto& v : minus2) quat_lines.push_back(v);
        expected.push_back({0.0, orthonormalize(zero, metric)});
        const auto middle = complement_in_p(ctx, quat_lines);
        if (!middle.empty()) expected.push_back({-0.5, middle});
        expected.push_back({-2.0, orthonormalize(minus2, metric)});
    } else {
        const QuaternionBasis adapted = ctx.quaternions.adapted_to(x);
        std::vector<TangentVector> hx{x};
        for (const auto& v : jspan(x, ctx.quaternions)) hx.push_back(v);
        const auto perp_hx = complement_in_p(ctx, hx);

        // JY = -J1 Y reads JJ1 Y = +Y, and JY = J1 Y reads JJ1 Y = -Y
        std::vector<TangentVector> zero{x};
        for (const auto& v : jj1_eigenspace(perp_hx, adapted, 1.0)) zero.push_back(v);

        // H X minus C X = span{J2' X, J3' X} in the adapted basis
        std::vector<TangentVector> minus1{adapted.apply(1, x), adapted.apply(2, x)};
        for (const auto& v : jj1_eigenspace(perp_hx, adapted, -1.0)) minus1.push_back(v);

        expected.push_back({0.0, orthonormalize(zero, metric)});
        expected.push_back({-1.0, orthonormalize(minus1, metric)});
        expected.push_back({-4.0, {jx}});
    }
    std::sort(expected.begin(), expected.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    EigenspaceCheck check;
    check.type = type;
    for (const auto& g : table.groups) {
        check.values.push_back(g.value);
        check.multiplicities.push_back(g.multiplicity);
    }

    if (table.groups.size() != expected.size()) return check;  // pass stays false
    double worst = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const auto& g = table.groups[i];
        const auto& [val, basis] = expected[i];
        if (std::abs(g.value - val) > 1e-9) return check;
        if (g.multiplicity != static_cast<int>(basis.size())) return check;
        worst = std::max(worst, max_principal_angle(g.basis, basis, metric));
        worst = std::max(worst, max_principal_angle(basis, g.basis, metric));
    }
    check.max_angle = worst;
    check.pass = worst < eps_angle;
    return check;
}

double sectional_curvature(const TangentVector& x, const TangentVector& y, double eps) {
    const double xx = metric(x, x), yy = metric(y, y), xy = metric(x, y);
    const double denom = xx * yy - xy * xy;
    if (denom <= eps) throw DependentVectors("sectional_curvature: degenerate plane");
    return metric(R_bracket(x, y, y), x) / denom;
}

}  // namespace ncgrass
