#pragma once

#include <string>
#include <vector>

#include "ncgrass/lie_algebra.hpp"
#include "ncgrass/rng.hpp"

namespace ncgrass {

// ============================================================================
// The two totally geodesic submanifolds with 4-codimension-or-more structure
// used for tube constructions:
//
//  * the smaller Grassmannian of the same kind, cut out by su(2,m-1): tangent
//    space = blocks with vanishing last column, normal space = the last
//    column (complex 2-plane, J- and JJ-invariant, normals of complex type);
//
//  * quaternionic hyperbolic space, cut out by sp(1,n) inside su(2,2n):
//    tangent and normal space both a copy of H^n, swapped by J, normals of
//    perp type.
// ============================================================================

struct TotallyGeodesicTangentSplit {
    std::string kind;  // "su" or "sp"
    int m = 0;         // ambient parameter
    int n = 0;         // sp only: m = 2n
    std::vector<TangentVector> tangent;     // orthonormal basis of T_o W
    std::vector<TangentVector> normal;      // orthonormal basis of nu_o W
    TangentVector default_normal;           // unit
    std::vector<AlgebraElement> subalgebra; // defining subalgebra basis, orthonormal
};

/// su(2,m-1) inside su(2,m). Requires m >= 2; at m = 2 the submodel is the
/// rank-two complex hyperbolic form su(2,1).
TotallyGeodesicTangentSplit su_submodel(int m);

/// sp(1,n) inside su(2,2n). Requires n >= 1.
TotallyGeodesicTangentSplit sp_submodel(int n);

/// Uniform-ish random unit vector in the span of an orthonormal basis.
TangentVector random_unit_in_span(const std::vector<TangentVector>& basis, SplitMix64& rng);

struct GeodesicCheck {
    double subalgebra_closure = 0.0;  // max residual of [g_i, g_j] against the span
    double theta_invariance = 0.0;    // max residual of theta(g_i) against the span
    double lie_triple = 0.0;          // max residual of [[T,T],T] against T_o W
    double jacobi_invariance = 0.0;   // max residual of R_N(T_o W) against T_o W
    bool pass = false;
};

GeodesicCheck verify_totally_geodesic(const TotallyGeodesicTangentSplit& split,
                                      SplitMix64& rng, double eps_resid = 1e-9,
                                      int normal_samples = 4);

/// A deliberately broken split (tangent and normal mixed by a rotation),
/// for exercising the negative direction of verify_totally_geodesic.
TotallyGeodesicTangentSplit perturb_split(const TotallyGeodesicTangentSplit& split, double angle);

// ============================================================================
// Reference spectra in closed form.
// ============================================================================

enum class ReferenceTable {
    HorosphereFamily,    // shape spectrum of the horosphere at chamber angle t
    HorosphereSingular,  // the three distinguished values of t
    JacobiOperator,      // Jacobi spectrum of a singular unit vector
    SuTube,              // tube of radius r around the su model
    SpTube,              // tube of radius r around the sp model
};

struct ExpectedGroup {
    double value = 0.0;
    int multiplicity = 0;   // may be 0 for degenerate parameters
    std::string label;
};

struct ExpectedSpectrum {
    std::vector<ExpectedGroup> groups;  // ascending, zero-multiplicity entries kept
    /// Ascending values with mult > 0, eps-merged.
    std::vector<ExpectedGroup> merged(double eps_group = 1e-7) const;
    int total_multiplicity() const;
};

struct TableParams {
    int m = 0;       // HorosphereFamily/HorosphereSingular/JacobiOperator/SuTube
    int n = 0;       // SpTube
    double t = 0.0;  // horospheres
    double r = 0.0;  // tubes
    bool perp_type = false;  // JacobiOperator: complex (false) or perp (true)
};

/// Closed-form table for the requested family. Throws BadParams for
/// out-of-domain parameters (e.g. a HorosphereSingular t that is not one of
/// 0, arctan(1/2), pi/4, or r <= 0).
ExpectedSpectrum expected_table(ReferenceTable kind, const TableParams& params);

}  // namespace ncgrass
