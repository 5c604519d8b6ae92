#include <cmath>
#include <set>

#include "doctest.h"
#include "ncgrass/curvature.hpp"
#include "ncgrass/hypersurface.hpp"
#include "ncgrass/models.hpp"
#include "ncgrass/report.hpp"
#include "ncgrass/rng.hpp"
#include "ncgrass/root_system.hpp"
#include "ncgrass/spectral.hpp"

using namespace ncgrass;

namespace {

TangentVector random_p(int m, SplitMix64& rng) {
    TangentVector v = TangentVector::zero(m);
    for (int row = 0; row < 2; ++row)
        for (int col = 0; col < m; ++col)
            v += TangentVector::elementary(m, row, col,
                                           Complex(rng.next_symmetric(), rng.next_symmetric()));
    return v;
}

void check_table_against(const PrincipalCurvatureTable& got,
                         const std::vector<ExpectedGroup>& want, double tol) {
    REQUIRE(got.groups.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        CAPTURE(i);
        CHECK(got.groups[i].multiplicity == want[i].multiplicity);
        CHECK(std::abs(got.groups[i].value - want[i].value) < tol);
    }
}

}  // namespace

TEST_CASE("point model bases have the advertised dimensions") {
    for (const double t : {0.0, 0.3, std::atan(1.0)}) {
        const int m = 3;
        const HypersurfacePointModel model(weyl_chamber_vector(m, t));
        CHECK(static_cast<int>(model.tangent_basis().size()) == 4 * m - 1);
        CHECK(static_cast<int>(model.c_basis().size()) == 4 * m - 2);
        CHECK(static_cast<int>(model.q_basis().size()) == 4 * m - 4);
        CHECK(model.xi().norm() == doctest::Approx(1.0));
        for (int nu = 0; nu < 3; ++nu) {
            CHECK(metric(model.xi_nu(nu), model.normal()) == doctest::Approx(0.0));
            CHECK(model.xi_nu(nu).norm() == doctest::Approx(1.0));
        }
    }
    CHECK_THROWS_AS(HypersurfacePointModel(2.0 * TangentVector::elementary(3, 0, 0)), NotUnit);
}

TEST_CASE("phi is the tangential complex structure") {
    SplitMix64 rng(61);
    const HypersurfacePointModel model(random_p(3, rng).normalized());
    const TangentVector x = random_p(3, rng);
    TangentVector tx = x - metric(x, model.normal()) * model.normal();
    // phi^2 = -id + eta tensor xi on tangent vectors
    const TangentVector pp = model.phi(model.phi(tx));
    CHECK((pp + tx - model.eta(tx) * model.xi()).norm() < 1e-12);
    CHECK(metric(model.phi(tx), model.normal()) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("contact identities hold at every normal type") {
    SplitMix64 rng(67);
    const int m = 3;
    std::vector<TangentVector> normals{weyl_chamber_vector(m, 0.0),
                                       weyl_chamber_vector(m, std::atan(1.0)),
                                       weyl_chamber_vector(m, 0.25),
                                       random_p(m, rng).normalized()};
    for (const auto& n : normals) CHECK(contact_identity_residual(HypersurfacePointModel(n)) < 1e-9);
}

TEST_CASE("the codazzi display sign is constant across normal types") {
    SplitMix64 rng(71);
    const int m = 3;
    std::set<int> signs;
    for (const double t : {0.0, 0.3, std::atan(1.0)}) {
        const HypersurfacePointModel model(weyl_chamber_vector(m, t));
        const CodazziSignCheck check = codazzi_sign_check(model, rng, 60);
        CAPTURE(t);
        CHECK(check.max_residual < 1e-9);
        CHECK(check.samples == 60);
        CHECK(check.epsilon != 0);
        signs.insert(check.epsilon);
    }
    CHECK(signs.size() == 1);
}

TEST_CASE("horosphere spectra match the reference family on the grid") {
    for (const int m : {2, 3}) {
        const CurvatureContext ctx = make_curvature_context(m);
        for (const double t : default_t_grid()) {
            CAPTURE(m);
            CAPTURE(t);
            const PrincipalCurvatureTable table = horosphere_spectrum(ctx, t);
            TableParams tp;
            tp.m = m;
            tp.t = t;
            check_table_against(table, expected_table(ReferenceTable::HorosphereFamily, tp).merged(),
                                1e-9);
            CHECK(table.total_multiplicity() == 4 * m - 1);
        }
    }
}

TEST_CASE("both horosphere methods produce the same multiset") {
    for (const int m : {2, 3, 4}) {
        const CurvatureContext ctx = make_curvature_context(m);
        for (const double t : default_t_grid()) {
            CAPTURE(m);
            CAPTURE(t);
            const PrincipalCurvatureTable direct = horosphere_spectrum(ctx, t);
            const SpectralTable algebraic = iwasawa_spectrum(m, t);
            REQUIRE(direct.groups.size() == algebraic.groups.size());
            for (std::size_t i = 0; i < direct.groups.size(); ++i) {
                CHECK(direct.groups[i].multiplicity == algebraic.groups[i].multiplicity);
                CHECK(std::abs(direct.groups[i].value - algebraic.groups[i].value) < 1e-9);
            }
        }
    }
}

TEST_CASE("su tube spectra match the reference table") {
    for (const int m : {2, 3, 4}) {
        const CurvatureContext ctx = make_curvature_context(m);
        const TotallyGeodesicTangentSplit split = su_submodel(m);
        for (const double r : default_r_grid()) {
            CAPTURE(m);
            CAPTURE(r);
            const PrincipalCurvatureTable table = tube_spectrum(ctx, split, r);
            TableParams tp;
            tp.m = m;
            tp.r = r;
            check_table_against(table, expected_table(ReferenceTable::SuTube, tp).merged(), 1e-9);
        }
    }
}

TEST_CASE("sp tube spectra match the reference table") {
    for (const int n : {1, 2}) {
        const CurvatureContext ctx = make_curvature_context(2 * n);
        const TotallyGeodesicTangentSplit split = sp_submodel(n);
        for (const double r : default_r_grid()) {
            CAPTURE(n);
            CAPTURE(r);
            const PrincipalCurvatureTable table = tube_spectrum(ctx, split, r);
            TableParams tp;
            tp.m = 2 * n;
            tp.n = n;
            tp.r = r;
            check_table_against(table, expected_table(ReferenceTable::SpTube, tp).merged(), 1e-9);
        }
    }
}

TEST_CASE("tube spectrum does not depend on the choice of unit normal") {
    SplitMix64 rng(73);
    const int m = 3;
    const CurvatureContext ctx = make_curvature_context(m);
    const TotallyGeodesicTangentSplit split = su_submodel(m);
    const PrincipalCurvatureTable ref = tube_spectrum(ctx, split, 0.8);
    for (int trial = 0; trial < 6; ++trial) {
        const PrincipalCurvatureTable other =
            tube_spectrum(ctx, split, random_unit_in_span(split.normal, rng), 0.8);
        REQUIRE(other.groups.size() == ref.groups.size());
        for (std::size_t i = 0; i < ref.groups.size(); ++i) {
            CHECK(other.groups[i].multiplicity == ref.groups[i].multiplicity);
            CHECK(std::abs(other.groups[i].value - ref.groups[i].value) < 1e-9);
        }
    }
}

TEST_CASE("tube spectrum rejects a normal outside the normal space") {
    const CurvatureContext ctx = make_curvature_context(3);
    const TotallyGeodesicTangentSplit split = su_submodel(3);
    CHECK_THROWS_AS(tube_spectrum(ctx, split, split.tangent[0], 1.0), BasisMismatch);
    CHECK_THROWS_AS(tube_spectrum(ctx, split, -0.5), BadParams);
}

TEST_CASE("su tube eigenspaces carry their labels") {
    const int m = 3;
    const double r = 0.7;
    const CurvatureContext ctx = make_curvature_context(m);
    const TotallyGeodesicTangentSplit split = su_submodel(m);
    const PrincipalCurvatureTable table = tube_spectrum(ctx, split, r);

    auto group_at = [&](double value) -> const PrincipalCurvatureTable::Group& {
        for (const auto& g : table.groups)
            if (std::abs(g.value - value) < 1e-6) return g;
        throw std::runtime_error("missing group");
    };

    // R JN carries 2 coth(2r)
    const auto& top = group_at(2.0 / std::tanh(2.0 * r));
    REQUIRE(top.multiplicity == 1);
    CHECK(max_principal_angle(top.basis, {kahler_J(split.default_normal)}, metric) < 1e-8);

    // HN minus CN carries coth(r): the quaternionic companions of N
    const QuaternionBasis q = QuaternionBasis::canonical();
    const auto& coth = group_at(1.0 / std::tanh(r));
    REQUIRE(coth.multiplicity == 2);
    const std::vector<TangentVector> hn{TangentVector::elementary(m, 1, m - 1),
                                        TangentVector::elementary(m, 1, m - 1, Complex(0, 1))};
    CHECK(max_principal_angle(coth.basis, hn, metric) < 1e-8);
    CHECK(max_principal_angle(hn, coth.basis, metric) < 1e-8);

    // the 0 and tanh(r) spaces split the tangent part by the sign of J vs J1
    const auto& flat = group_at(0.0);
    const auto& tanh_g = group_at(std::tanh(r));
    CHECK(flat.multiplicity == 2 * m - 2);
    CHECK(tanh_g.multiplicity == 2 * m - 2);
    for (const auto& y : flat.basis)
        CHECK((kahler_J(y) + q.apply(0, y)).norm() < 1e-8);  // JY = -J1 Y
    for (const auto& y : tanh_g.basis)
        CHECK((kahler_J(y) - q.apply(0, y)).norm() < 1e-8);  // JY = +J1 Y
}

TEST_CASE("sp tube eigenspaces carry their labels") {
    const int n = 2;
    const double r = 0.6;
    const CurvatureContext ctx = make_curvature_context(2 * n);
    const TotallyGeodesicTangentSplit split = sp_submodel(n);
    const PrincipalCurvatureTable table = tube_spectrum(ctx, split, r);
    const TangentVector nvec = split.default_normal;
    const TangentVector jn = kahler_J(nvec);
    const QuaternionBasis q = QuaternionBasis::canonical();
    const double s2 = std::sqrt(2.0);

    auto group_at = [&](double value) -> const PrincipalCurvatureTable::Group& {
        for (const auto& g : table.groups)
            if (std::abs(g.value - value) < 1e-6) return g;
        throw std::runtime_error("missing group");
    };

    std::vector<TangentVector> jjn, jjjn;
    for (int nu = 0; nu < 3; ++nu) {
        jjn.push_back(q.apply(nu, nvec));
        jjjn.push_back(q.apply(nu, jn));
    }
    const auto& zero = group_at(0.0);
    REQUIRE(zero.multiplicity == 3);
    CHECK(max_principal_angle(zero.basis, jjjn, metric) < 1e-8);
    const auto& alpha = group_at(s2 * std::tanh(s2 * r));
    REQUIRE(alpha.multiplicity == 1);
    CHECK(max_principal_angle(alpha.basis, {jn}, metric) < 1e-8);
    const auto& beta = group_at(s2 / std::tanh(s2 * r));
    REQUIRE(beta.multiplicity == 3);
    CHECK(max_principal_angle(beta.basis, jjn, metric) < 1e-8);
}

TEST_CASE("tube shape operators satisfy the matrix jacobi equation") {
    const CurvatureContext ctx3 = make_curvature_context(3);
    for (const double r : default_r_grid()) {
        const OdeResidualCheck check = ode_residual_check(ctx3, su_submodel(3), r);
        CAPTURE(r);
        CHECK(check.pass);
        CHECK(check.ode_residual < 1e-10);
        CHECK(check.initial_residual < 1e-10);
        CHECK(check.shape_residual < 1e-10);
    }
    const CurvatureContext ctx2 = make_curvature_context(2);
    const OdeResidualCheck check = ode_residual_check(ctx2, sp_submodel(1), 1.3);
    CHECK(check.pass);
}

TEST_CASE("subbundle invariance holds for tubes and singular horospheres only") {
    const int m = 3;
    const CurvatureContext ctx = make_curvature_context(m);

    const TotallyGeodesicTangentSplit split = su_submodel(m);
    const PrincipalCurvatureTable tube = tube_spectrum(ctx, split, 1.0);
    const HypersurfacePointModel tube_model(split.default_normal);
    CHECK(subbundle_invariance(tube_model, tube, Subbundle::C).invariant);
    CHECK(subbundle_invariance(tube_model, tube, Subbundle::Q).invariant);

    for (const double t : {0.0, std::atan(1.0)}) {
        const PrincipalCurvatureTable horo = horosphere_spectrum(ctx, t);
        const HypersurfacePointModel model(horo.normal);
        CAPTURE(t);
        CHECK(subbundle_invariance(model, horo, Subbundle::C).invariant);
        CHECK(subbundle_invariance(model, horo, Subbundle::Q).invariant);
    }

    // decisive failure away from the singular angles
    const double pi = std::acos(-1.0);
    const PrincipalCurvatureTable horo = horosphere_spectrum(ctx, pi / 8);
    const HypersurfacePointModel model(horo.normal);
    CHECK(subbundle_invariance(model, horo, Subbundle::C).residual > 0.1);
    CHECK(subbundle_invariance(model, horo, Subbundle::Q).residual > 0.1);
}

TEST_CASE("identity suite for the sp tube (perp type)") {
    const int n = 2;
    const CurvatureContext ctx = make_curvature_context(2 * n);
    const TotallyGeodesicTangentSplit split = sp_submodel(n);
    const HypersurfacePointModel model(split.default_normal);
    for (const double r : default_r_grid()) {
        const IdentityReport rep = identity_suite(model, tube_spectrum(ctx, split, r));
        CAPTURE(r);
        CHECK(rep.type == SingularType::PerpType);
        CHECK(rep.pass);
        for (const auto& e : rep.entries) {
            CAPTURE(e.name);
            if (e.applicable) CHECK(e.residual < 1e-9);
        }
        // alpha beta = 2 with the closed forms
        CHECK(rep.alpha ==
              doctest::Approx(std::sqrt(2.0) * std::tanh(std::sqrt(2.0) * r)).epsilon(1e-10));
    }
}

TEST_CASE("identity suite for the su tube (complex type)") {
    const int m = 3;
    const CurvatureContext ctx = make_curvature_context(m);
    const TotallyGeodesicTangentSplit split = su_submodel(m);
    const HypersurfacePointModel model(split.default_normal);
    for (const double r : default_r_grid()) {
        const IdentityReport rep = identity_suite(model, tube_spectrum(ctx, split, r));
        CAPTURE(r);
        CHECK(rep.type == SingularType::ComplexType);
        CHECK(rep.pass);
        CHECK(rep.alpha == doctest::Approx(2.0 / std::tanh(2.0 * r)).epsilon(1e-10));
    }
}

TEST_CASE("identity suite at the horosphere endpoints, including degenerate lambdas") {
    for (const int m : {2, 3}) {
        const CurvatureContext ctx = make_curvature_context(m);
        for (const double t : {0.0, std::atan(1.0)}) {
            const PrincipalCurvatureTable table = horosphere_spectrum(ctx, t);
            const HypersurfacePointModel model(table.normal);
            const IdentityReport rep = identity_suite(model, table);
            CAPTURE(m);
            CAPTURE(t);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("identity suite refuses a regular normal") {
    const CurvatureContext ctx = make_curvature_context(2);
    const PrincipalCurvatureTable table = horosphere_spectrum(ctx, 0.3);
    const HypersurfacePointModel model(table.normal);
    CHECK_THROWS_AS(identity_suite(model, table), WrongSingularType);
}

TEST_CASE("phi phi_1 eigenbundles have equal rank 2m-2 and zero trace") {
    for (const int m : {2, 3, 4}) {
        const HypersurfacePointModel model(weyl_chamber_vector(m, 0.0));
        const EigenbundleSplit eb = phi_phi1_eigenbundles(model);
        CAPTURE(m);
        CHECK(static_cast<int>(eb.plus.size()) == 2 * m - 2);
        CHECK(static_cast<int>(eb.minus.size()) == 2 * m - 2);
        CHECK(eb.involution_residual < 1e-10);
        CHECK(std::abs(eb.trace) < 1e-10);
    }
    const HypersurfacePointModel perp(weyl_chamber_vector(3, std::atan(1.0)));
    CHECK_THROWS_AS(phi_phi1_eigenbundles(perp), WrongSingularType);
}

TEST_CASE("horosphere t=0 ties the eigenbundles to the principal curvature spaces") {
    const int m = 3;
    const CurvatureContext ctx = make_curvature_context(m);
    const PrincipalCurvatureTable table = horosphere_spectrum(ctx, 0.0);
    const HypersurfacePointModel model(table.normal);
    const EigenbundleSplit eb = phi_phi1_eigenbundles(model);

    const auto& zero_group = table.groups.front();  // value 0, T_0
    REQUIRE(std::abs(zero_group.value) < 1e-9);
    CHECK(max_principal_angle(zero_group.basis, eb.plus, metric) < 1e-8);
    CHECK(max_principal_angle(eb.plus, zero_group.basis, metric) < 1e-8);

    // E_-1 sits inside the principal curvature 1 eigenspace
    const PrincipalCurvatureTable::Group* one = nullptr;
    for (const auto& g : table.groups)
        if (std::abs(g.value - 1.0) < 1e-9) one = &g;
    REQUIRE(one != nullptr);
    CHECK(max_principal_angle(one->basis, eb.minus, metric) < 1e-8);
}
