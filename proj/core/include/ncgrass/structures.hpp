#pragma once

#include <array>
#include <vector>

#include "ncgrass/lie_algebra.hpp"

namespace ncgrass {

// ============================================================================
// su(2,m) carries both a Kaehler structure J and a quaternionic Kaehler
// structure spanned by J1, J2, J3. In block coordinates:
//
//   J X      has block  i C           (ad of the central element Z of u(1))
//   J_nu X   has block  q_nu C        (left multiplication by 2x2 units)
//
// with q1 = [[i,0],[0,-i]], q2 = [[0,1],[-1,0]], q3 = [[0,i],[i,0]].
// J commutes with every J_nu, and J_nu J_{nu+1} = J_{nu+2} cyclically.
// ============================================================================

/// J X: block i C.
TangentVector kahler_J(const TangentVector& x);

/// The central element Z = diag(mi/(m+2) I_2, -2i/(m+2) I_m) with ad(Z) = J.
AlgebraElement kahler_Z(int m);

/// An ordered triple of 2x2 units acting on blocks by left multiplication.
/// Canonical or rotated by SO(3); rotations preserve the quaternion relations.
class QuaternionBasis {
public:
    static QuaternionBasis canonical();

    /// J_nu X for nu in {0,1,2}.
    TangentVector apply(int nu, const TangentVector& x) const;

    const ComplexMatrix& unit(int nu) const { return q_[nu]; }

    /// Basis rotated so the first unit satisfies J1' X = J X for the given
    /// vector of complex type. Throws WrongSingularType when J X is not in
    /// the span of the J_nu X.
    QuaternionBasis adapted_to(const TangentVector& x, double eps_angle = 1e-7) const;

private:
    std::array<ComplexMatrix, 3> q_;
};

/// Orthonormal basis of the 3-dimensional span {J1 X, J2 X, J3 X}.
std::vector<TangentVector> jspan(const TangentVector& x,
                                 const QuaternionBasis& q = QuaternionBasis::canonical());

/// Angle in [0, pi/2] between J X and the span of the J_nu X.
double kahler_angle(const TangentVector& x,
                    const QuaternionBasis& q = QuaternionBasis::canonical());

enum class SingularType { Regular, ComplexType, PerpType };

/// ComplexType when J X lies in the quaternionic span of X (angle ~ 0),
/// PerpType when it is orthogonal to it (angle ~ pi/2), Regular otherwise.
SingularType classify_vector(const TangentVector& x, double eps_angle = 1e-7,
                             const QuaternionBasis& q = QuaternionBasis::canonical());

const char* to_string(SingularType t);

}  // namespace ncgrass
