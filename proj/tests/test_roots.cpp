#include <cmath>
#include <map>

#include "doctest.h"
#include "ncgrass/root_system.hpp"
#include "ncgrass/spectral.hpp"

using namespace ncgrass;

TEST_CASE("restricted roots form BC2 with the advertised multiplicities") {
    for (const int m : {2, 3, 4, 5, 6}) {
        CAPTURE(m);
        const RootSystemData data = restricted_root_decomposition(m);
        CHECK(data.eigen_residual < 1e-9);
        std::map<RootVector, int> mults;
        for (const auto& rs : data.positive) mults[rs.root] = rs.multiplicity;
        int total = 2;  // the flat itself
        for (const auto& root : positive_roots()) {
            const int want = root_multiplicity(root, m);
            CAPTURE(root.label());
            if (want == 0)
                CHECK(mults.count(root) == 0);
            else
                CHECK(mults[root] == want);
            total += want;
        }
        CHECK(total == 4 * m);
        // nothing outside the six positives showed up
        CHECK(data.positive.size() == mults.size());
    }
}

TEST_CASE("computed root spaces coincide with the hand-built ones") {
    for (const int m : {2, 3, 4}) {
        const RootSystemData data = restricted_root_decomposition(m);
        for (const auto& rs : data.positive) {
            CAPTURE(m);
            CAPTURE(rs.root.label());
            const auto explicit_basis = explicit_root_space(rs.root, m);
            REQUIRE(explicit_basis.size() == rs.basis.size());
            CHECK(max_principal_angle(rs.basis, explicit_basis, metric) < 1e-8);
            CHECK(max_principal_angle(explicit_basis, rs.basis, metric) < 1e-8);
        }
    }
}

TEST_CASE("root spaces are genuine ad eigenspaces of the flat") {
    const int m = 3;
    const RootSystemData data = restricted_root_decomposition(m);
    const auto [e1, e2] = basis_a(m);
    for (const auto& rs : data.positive)
        for (const auto& y : rs.basis) {
            // ad(e_i)^2 Y = a_i^2 Y on p
            const TangentVector a1y = bracket_kp(bracket_pp(y, e1), e1);
            const TangentVector a2y = bracket_kp(bracket_pp(y, e2), e2);
            CHECK((a1y - double(rs.root.a1 * rs.root.a1) * y).norm() < 1e-10);
            CHECK((a2y - double(rs.root.a2 * rs.root.a2) * y).norm() < 1e-10);
        }
}

TEST_CASE("chamber vector stays inside the closed chamber") {
    const int m = 2;
    CHECK(weyl_chamber_vector(m, 0.0).norm() == doctest::Approx(1.0));
    CHECK(weyl_chamber_vector(m, std::atan(1.0)).norm() == doctest::Approx(1.0));
    CHECK_THROWS_AS(weyl_chamber_vector(m, -0.1), OutOfChamber);
    CHECK_THROWS_AS(weyl_chamber_vector(m, 1.0), OutOfChamber);
}

TEST_CASE("root labels round trip through parse") {
    for (const auto& root : positive_roots()) {
        const RootVector back = RootVector::parse(root.label());
        CHECK(back == root);
    }
    CHECK_THROWS_AS(RootVector::parse("e3"), UnknownLabel);
}

TEST_CASE("iwasawa decomposition dimensions add up to dim g") {
    for (const int m : {2, 3}) {
        const IwasawaData data = iwasawa_decomposition(m);
        int dim = static_cast<int>(data.g_zero.size());
        for (const auto& gs : data.positive) dim += 2 * static_cast<int>(gs.basis.size());
        CHECK(dim == (m + 2) * (m + 2) - 1);
        CHECK(data.eigen_residual < 1e-9);
        // g_lambda for lambda restricted to a has dim = root multiplicity
        for (const auto& gs : data.positive)
            CHECK(static_cast<int>(gs.basis.size()) == root_multiplicity(gs.root, m));
    }
}

TEST_CASE("iwasawa horosphere spectrum matches the direct hand count at t=0") {
    const int m = 3;
    const SpectralTable table = iwasawa_spectrum(m, 0.0);
    // {0: 2m-2, 1: 2m, 2: 1}
    REQUIRE(table.groups.size() == 3);
    CHECK(table.groups[0].value == doctest::Approx(0.0));
    CHECK(table.groups[0].multiplicity == 2 * m - 2);
    CHECK(table.groups[1].value == doctest::Approx(1.0));
    CHECK(table.groups[1].multiplicity == 2 * m);
    CHECK(table.groups[2].value == doctest::Approx(2.0));
    CHECK(table.groups[2].multiplicity == 1);
    CHECK(table.total_multiplicity() == 4 * m - 1);
}
