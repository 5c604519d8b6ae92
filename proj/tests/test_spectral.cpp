#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "ncgrass/lie_algebra.hpp"
#include "ncgrass/rng.hpp"
#include "ncgrass/spectral.hpp"

using namespace ncgrass;

namespace {

ComplexMatrix random_hermitian(int n, SplitMix64& rng) {
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const Complex z(rng.next_symmetric(), i == j ? 0.0 : rng.next_symmetric());
            a(i, j) = z;
            a(j, i) = std::conj(z);
        }
    return a;
}

double reconstruction_residual(const ComplexMatrix& a, const EigResult& eig) {
    const int n = a.rows();
    ComplexMatrix lam(n, n);
    for (int i = 0; i < n; ++i) lam(i, i) = eig.values[i];
    const ComplexMatrix back = eig.vectors * lam * eig.vectors.adjoint();
    return (back - a).max_abs();
}

}  // namespace

TEST_CASE("eigensolver recovers a diagonal matrix exactly") {
    ComplexMatrix a(4, 4);
    const double d[] = {-3.0, 0.5, 0.5, 7.0};
    for (int i = 0; i < 4; ++i) a(i, i) = d[3 - i];
    const EigResult eig = hermitian_eig(a);
    REQUIRE(eig.values.size() == 4);
    CHECK(eig.values[0] == doctest::Approx(-3.0).epsilon(1e-14));
    CHECK(eig.values[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(eig.values[2] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(eig.values[3] == doctest::Approx(7.0).epsilon(1e-14));
}

TEST_CASE("eigensolver matches a 2x2 closed form with complex off-diagonal") {
    // [[1, 2-i], [2+i, -1]] has eigenvalues +-sqrt(1 + |2-i|^2) = +-sqrt(6)
    ComplexMatrix a(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = -1.0;
    a(0, 1) = Complex(2.0, -1.0);
    a(1, 0) = Complex(2.0, 1.0);
    const EigResult eig = hermitian_eig(a);
    CHECK(eig.values[0] == doctest::Approx(-std::sqrt(6.0)).epsilon(1e-13));
    CHECK(eig.values[1] == doctest::Approx(std::sqrt(6.0)).epsilon(1e-13));
}

TEST_CASE("eigensolver reconstructs random Hermitian matrices") {
    SplitMix64 rng(11);
    for (const int n : {3, 8, 16, 25}) {
        const ComplexMatrix a = random_hermitian(n, rng);
        const EigResult eig = hermitian_eig(a);
        CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
        CHECK(reconstruction_residual(a, eig) < 1e-11);
        const ComplexMatrix gram = eig.vectors.adjoint() * eig.vectors;
        CHECK((gram - ComplexMatrix::identity(n)).max_abs() < 1e-12);
    }
}

TEST_CASE("eigensolver is deterministic") {
    SplitMix64 rng(5);
    const ComplexMatrix a = random_hermitian(12, rng);
    const EigResult e1 = hermitian_eig(a);
    const EigResult e2 = hermitian_eig(a);
    for (std::size_t i = 0; i < e1.values.size(); ++i) CHECK(e1.values[i] == e2.values[i]);
    CHECK((e1.vectors - e2.vectors).max_abs() == 0.0);
}

TEST_CASE("eigensolver rejects non-Hermitian input") {
    ComplexMatrix a(2, 2);
    a(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(a), NonHermitian);
}

TEST_CASE("real_columns flags genuinely complex eigenvectors") {
    ComplexMatrix v(2, 2);
    v(0, 0) = Complex(0.0, 1.0);
    v(1, 1) = 1.0;
    CHECK_THROWS_AS(real_columns(v), NonHermitian);
}

TEST_CASE("group_eigenvalues clusters near-degenerate values") {
    const std::vector<double> values{0.0, 1e-9, 1.0, 1.0 + 2e-9, 2.0};
    std::vector<RealVec> vectors;
    for (int i = 0; i < 5; ++i) {
        RealVec e(5, 0.0);
        e[i] = 1.0;
        vectors.push_back(e);
    }
    const SpectralTable table = group_eigenvalues(values, vectors, 1e-7);
    REQUIRE(table.groups.size() == 3);
    CHECK(table.groups[0].multiplicity == 2);
    CHECK(table.groups[1].multiplicity == 2);
    CHECK(table.groups[2].multiplicity == 1);
    CHECK(table.total_multiplicity() == 5);
    CHECK(table.basis_residual() < 1e-14);
}

TEST_CASE("group_eigenvalues refuses ambiguous gaps") {
    const std::vector<double> values{0.0, 1.5e-7};
    std::vector<RealVec> vectors{{1.0, 0.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(group_eigenvalues(values, vectors, 1e-7), AmbiguousGrouping);
}

namespace {
TangentVector random_tangent(int m, SplitMix64& rng) {
    TangentVector v = TangentVector::zero(m);
    for (int row = 0; row < 2; ++row)
        for (int col = 0; col < m; ++col)
            v += TangentVector::elementary(m, row, col,
                                           Complex(rng.next_symmetric(), rng.next_symmetric()));
    return v;
}
}  // namespace

TEST_CASE("orthonormalize produces an orthonormal basis and drops dependents") {
    SplitMix64 rng(3);
    std::vector<TangentVector> input;
    for (int k = 0; k < 3; ++k) input.push_back(random_tangent(3, rng));
    // adjoin an exact linear combination; the rank must stay 3
    input.push_back(2.0 * input[0] - input[2]);
    const auto basis = orthonormalize(input, metric);
    REQUIRE(basis.size() == 3);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            CHECK(metric(basis[i], basis[j]) ==
                  doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));
    // order preservation: the first output vector is the normalized first input
    const double n0 = input[0].norm();
    CHECK((basis[0] - (1.0 / n0) * input[0]).norm() < 1e-13);
}

TEST_CASE("max_principal_angle recovers a planted rotation angle") {
    const double angle = 0.3;
    const TangentVector u1 = TangentVector::elementary(3, 0, 0);
    const TangentVector u2 = TangentVector::elementary(3, 0, 1);
    const TangentVector u3 = TangentVector::elementary(3, 1, 0);
    const std::vector<TangentVector> a{u1, u2};
    const std::vector<TangentVector> b{std::cos(angle) * u1 + std::sin(angle) * u3, u2};
    CHECK(max_principal_angle(a, b, metric) == doctest::Approx(angle).epsilon(1e-12));
    CHECK(max_principal_angle(a, a, metric) < 1e-13);
}

TEST_CASE("simultaneous_diagonalize splits by joint spectra") {
    // A = diag(1,1,2), B = diag(5,7,7): all three joint eigenspaces distinct
    ComplexMatrix a(3, 3), b(3, 3);
    a(0, 0) = 1.0;
    a(1, 1) = 1.0;
    a(2, 2) = 2.0;
    b(0, 0) = 5.0;
    b(1, 1) = 7.0;
    b(2, 2) = 7.0;
    const auto blocks = simultaneous_diagonalize({a, b}, 1e-7);
    REQUIRE(blocks.size() == 3);
    for (const auto& blk : blocks) CHECK(blk.basis.size() == 1);
}
