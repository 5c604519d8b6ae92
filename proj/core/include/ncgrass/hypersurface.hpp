#pragma once

#include <array>
#include <string>
#include <vector>

#include "ncgrass/curvature.hpp"
#include "ncgrass/models.hpp"
#include "ncgrass/rng.hpp"
#include "ncgrass/structures.hpp"

namespace ncgrass {

// ============================================================================
// Real hypersurface data at a single point, in the tangent-space picture:
// a unit normal N, tangent space TM = N^perp inside p, the structure vector
// xi = -JN with its quaternionic companions xi_nu = -J_nu N, and the induced
// tensors phi / phi_nu (tangential parts of J / J_nu). The maximal complex
// subbundle is C = TM with xi removed, the maximal quaternionic subbundle Q
// removes all three xi_nu.
// ============================================================================

class HypersurfacePointModel {
public:
    /// Builds the point model. For a normal of complex type the quaternion
    /// basis is rotated so that J1 N = JN; otherwise the canonical one is kept.
    HypersurfacePointModel(TangentVector normal, double eps_rank = 1e-10);

    int m() const { return normal_.m(); }
    const TangentVector& normal() const { return normal_; }
    const QuaternionBasis& quaternions() const { return quat_; }
    SingularType normal_type() const { return type_; }

    const std::vector<TangentVector>& tangent_basis() const { return tm_; }
    const std::vector<TangentVector>& c_basis() const { return c_; }
    const std::vector<TangentVector>& q_basis() const { return q_; }

    const TangentVector& xi() const { return xi_; }
    const TangentVector& xi_nu(int nu) const { return xi_nu_[nu]; }

    double eta(const TangentVector& x) const { return metric(x, xi_); }
    double eta_nu(int nu, const TangentVector& x) const { return metric(x, xi_nu_[nu]); }
    TangentVector phi(const TangentVector& x) const;
    TangentVector phi_nu(int nu, const TangentVector& x) const;

private:
    TangentVector normal_;
    QuaternionBasis quat_;
    SingularType type_ = SingularType::Regular;
    std::vector<TangentVector> tm_, c_, q_;
    TangentVector xi_;
    std::array<TangentVector, 3> xi_nu_;
};

/// max residual over the four structure identities
///   phi_{nu+1} xi_nu = -xi_{nu+2},   phi_nu xi_{nu+1} = xi_{nu+2},
///   phi xi_nu = phi_nu xi,           eta_nu(phi X) = eta(phi_nu X),
/// the last one evaluated on every tangent basis vector.
double contact_identity_residual(const HypersurfacePointModel& model);

/// The combination of structure tensors that the Codazzi equation produces
/// on the right-hand side, evaluated at tangent X, Y.
TangentVector codazzi_rhs(const HypersurfacePointModel& model, const TangentVector& x,
                          const TangentVector& y);

struct CodazziSignCheck {
    int epsilon = 0;         // rhs = epsilon * tangential(R(X,Y)N)
    double max_residual = 0.0;
    int samples = 0;
};

/// Determines the proportionality sign between codazzi_rhs and the
/// tangential part of R(X,Y)N from the first sample, then verifies it on all
/// the others. Throws RoleResolutionFailure if no consistent sign exists.
CodazziSignCheck codazzi_sign_check(const HypersurfacePointModel& model, SplitMix64& rng,
                                    int samples = 200, double eps_resid = 1e-9);

// ============================================================================
// Principal curvature tables
// ============================================================================

struct PrincipalCurvatureTable {
    struct Group {
        double value = 0.0;
        int multiplicity = 0;
        std::vector<TangentVector> basis;
        std::string label;
    };
    std::string family;  // "horosphere", "su-tube", "sp-tube"
    double param = 0.0;  // t or r
    TangentVector normal;
    std::vector<Group> groups;  // ascending

    int total_multiplicity() const;
};

/// Shape spectrum of the horosphere centered at the chamber direction H_t,
/// as the PSD square root of minus the Jacobi operator of H_t on H_t^perp.
PrincipalCurvatureTable horosphere_spectrum(const CurvatureContext& ctx, double t,
                                            double eps_group = 1e-7);

/// Shape spectrum of the tube of radius r around a totally geodesic model,
/// with the given unit normal (defaults to the split's default normal).
/// Jacobi eigenvalue -c^2 contributes c tanh(cr) on the tangent side and
/// c coth(cr) on the normal side; a flat tangent direction contributes 0.
/// NormalKernel if a flat normal-side direction shows up (it never does
/// here), SplitNotInvariant if the Jacobi operator mixes the two sides.
PrincipalCurvatureTable tube_spectrum(const CurvatureContext& ctx,
                                      const TotallyGeodesicTangentSplit& split, double r,
                                      double eps_group = 1e-7);
PrincipalCurvatureTable tube_spectrum(const CurvatureContext& ctx,
                                      const TotallyGeodesicTangentSplit& split,
                                      const TangentVector& normal, double r,
                                      double eps_group = 1e-7);

struct OdeResidualCheck {
    double ode_residual = 0.0;       // |D'' + R_N D| on the eigenframe
    double initial_residual = 0.0;   // D(0), D'(0) against the block identity
    double shape_residual = 0.0;     // |A D(r) - D'(r)|
    bool pass = false;
};

/// Certifies the tube shape operator against the matrix Jacobi equation
/// D'' + R_N D = 0 with initial data D(0) = I on the tangent side,
/// D'(0) = I on the normal side, A_r = D'(r) D(r)^{-1}.
OdeResidualCheck ode_residual_check(const CurvatureContext& ctx,
                                    const TotallyGeodesicTangentSplit& split, double r,
                                    double eps = 1e-10);

enum class Subbundle { C, Q };

struct InvarianceCheck {
    double residual = 0.0;
    bool invariant = false;  // residual below the pass tolerance
};

/// Shape-operator invariance of C (A xi stays on R xi) or Q (A maps Q^perp
/// to Q^perp), assembled from a principal curvature table whose normal must
/// match the model (BasisMismatch otherwise).
InvarianceCheck subbundle_invariance(const HypersurfacePointModel& model,
                                     const PrincipalCurvatureTable& table, Subbundle which,
                                     double eps_resid = 1e-9);

// ============================================================================
// Principal-curvature identities for hypersurfaces with singular normal
// ============================================================================

struct IdentityReport {
    struct Entry {
        std::string name;
        double residual = 0.0;
        bool applicable = true;
    };
    SingularType type = SingularType::Regular;
    double alpha = 0.0;
    std::vector<double> beta;    // beta_nu by xi_nu membership
    std::vector<double> lambda;  // ascending
    double gamma = 0.0;          // perp type only
    std::vector<Entry> entries;
    bool pass = false;
};

/// Resolves the roles alpha (on R JN), beta_nu (on the xi_nu), gamma (perp
/// type, on JJ JN) and the lambda values (on the rest of Q) by eigenspace
/// membership, then checks the closed identities:
///   perp type:     gamma = 0, alpha beta = 2, 2 alpha l^2 - 4 l + alpha = 0,
///                  l1 + l2 = beta, l1 l2 = 1/2
///   complex type:  beta2 = beta3, beta^2 - alpha beta + 1 = 0,
///                  lambda(E_-1) = 1/beta, 2 b2 b3 - alpha(b2 + b3) + 2 = 0
IdentityReport identity_suite(const HypersurfacePointModel& model,
                              const PrincipalCurvatureTable& table, double eps_resid = 1e-9,
                              double member_tol = 1e-8);

// ============================================================================
// Eigenbundles of phi phi_1 on Q for a normal of complex type
// ============================================================================

struct EigenbundleSplit {
    std::vector<TangentVector> plus;   // phi X = -phi_1 X
    std::vector<TangentVector> minus;  // phi X = +phi_1 X
    double involution_residual = 0.0;  // |(phi phi_1)^2 - id| on Q
    double trace = 0.0;                // trace of phi phi_1 on Q
};

/// Splits Q into the +1 / -1 eigenbundles of phi phi_1. Both come out with
/// rank 2m-2. Throws WrongSingularType unless the normal has complex type.
EigenbundleSplit phi_phi1_eigenbundles(const HypersurfacePointModel& model);

}  // namespace ncgrass
