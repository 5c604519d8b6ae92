#pragma once

#include <vector>

#include "ncgrass/lie_algebra.hpp"
#include "ncgrass/spectral.hpp"
#include "ncgrass/structures.hpp"

namespace ncgrass {

// ============================================================================
// Curvature tensor at the base point, sign convention
//
//   R(X,Y)Z = -[[X,Y],Z],
//
// evaluated through the matrix model. The same tensor has a closed expression
// in terms of the metric and the structures J, J_nu; both are implemented and
// must agree identically, with no adjustable constant. Sectional curvature
// then lies in [-4, 0].
// ============================================================================

struct CurvatureContext {
    int m = 0;
    std::vector<TangentVector> p_basis;
    QuaternionBasis quaternions;
};

CurvatureContext make_curvature_context(int m);

/// -[[X,Y],Z], projected back to block coordinates.
TangentVector R_bracket(const TangentVector& x, const TangentVector& y, const TangentVector& z);

/// Closed formula through g, J and the quaternionic span.
TangentVector R_formula(const TangentVector& x, const TangentVector& y, const TangentVector& z,
                        const QuaternionBasis& q = QuaternionBasis::canonical());

/// Jacobi operator R_X Y = R(Y,X)X as a matrix on the canonical p basis.
/// Requires |X| = 1 (NotUnit otherwise).
ComplexMatrix jacobi_matrix(const CurvatureContext& ctx, const TangentVector& x,
                            double unit_tol = 1e-9);

struct TangentSpectralTable {
    struct Group {
        double value = 0.0;
        int multiplicity = 0;
        std::vector<TangentVector> basis;
    };
    std::vector<Group> groups;
    int dim = 0;
};

TangentSpectralTable jacobi_spectrum(const CurvatureContext& ctx, const TangentVector& x,
                                     double eps_group = 1e-7);

struct EigenspaceCheck {
    SingularType type = SingularType::Regular;
    bool pass = false;
    double max_angle = 0.0;          // worst principal angle across eigenspaces
    std::vector<double> values;      // computed group values
    std::vector<int> multiplicities;
};

/// For a singular unit vector, verifies that each Jacobi eigenspace equals
/// its structure-theoretic description:
///   perp type     0 -> R X + JJ(JX),  -1/2 -> (H X + H JX)^perp,  -2 -> R JX + JJ(X)
///   complex type  0 -> R X + {Y perp H X : JY = -J1 Y},
///                -1 -> (H X - C X) + {Y perp H X : JY = J1 Y},  -4 -> R JX
/// where H X is the quaternionic line R X + JJ(X). Throws RegularVector for
/// vectors of neither singular type.
EigenspaceCheck jacobi_eigenspace_check(const CurvatureContext& ctx, const TangentVector& x,
                                        double eps_group = 1e-7, double eps_angle = 1e-8);

/// K(X,Y) = g(R(X,Y)Y, X) / (|X|^2 |Y|^2 - g(X,Y)^2).
/// Throws DependentVectors when the denominator is below eps.
double sectional_curvature(const TangentVector& x, const TangentVector& y, double eps = 1e-12);

}  // namespace ncgrass
