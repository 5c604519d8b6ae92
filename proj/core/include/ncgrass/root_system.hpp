#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ncgrass/lie_algebra.hpp"
#include "ncgrass/spectral.hpp"

namespace ncgrass {

// ============================================================================
// Restricted roots of su(2,m) relative to the maximal flat a = span{e1, e2},
// where e1, e2 are the elementary real blocks at positions (0,0) and (1,1).
// The root system is BC2: with eps_i dual to e_i,
//
//   root         multiplicity
//   eps1 - eps2  2
//   eps1 + eps2  2
//   eps1         2(m-2)
//   eps2         2(m-2)
//   2 eps1       1
//   2 eps2       1
//
// and the closed Weyl chamber is swept by H_t = cos(t) e1 + sin(t) e2 for
// t in [0, pi/4].
// ============================================================================

/// Integer coordinate vector a1*eps1 + a2*eps2 in the BC2 lattice.
struct RootVector {
    int a1 = 0;
    int a2 = 0;

    bool operator==(const RootVector& o) const { return a1 == o.a1 && a2 == o.a2; }
    bool operator<(const RootVector& o) const {
        return a1 != o.a1 ? a1 < o.a1 : a2 < o.a2;
    }

    /// Value on H_t = cos(t) e1 + sin(t) e2.
    double value_at(double t) const;
    /// Value on c1*e1 + c2*e2.
    double value_on(double c1, double c2) const { return a1 * c1 + a2 * c2; }

    std::string label() const;  // "e1-e2", "2e2", ...
    static RootVector parse(const std::string& label);
};

/// (e1, e2).
std::pair<TangentVector, TangentVector> basis_a(int m);

/// cos(t) e1 + sin(t) e2; throws OutOfChamber outside [0, pi/4].
TangentVector weyl_chamber_vector(int m, double t);

TangentVector dual_root_vector(const RootVector& root, int m);

struct RootSpace {
    RootVector root;
    int multiplicity = 0;
    std::vector<TangentVector> basis;  // orthonormal
};

struct RootSystemData {
    int m = 0;
    std::vector<TangentVector> a_basis;    // {e1, e2}
    std::vector<RootSpace> positive;      // sorted by RootVector order
    /// max over root spaces of |ad(e_i)^2 Y - a_i^2 Y| on basis vectors
    double eigen_residual = 0.0;
};

/// Decomposes p into a and the root spaces p_lambda by joint diagonalization
/// of ad(e1)^2, ad(e2)^2 and the sign-resolving product ad(e1)ad(e2).
/// Eigenvalues are snapped to the BC2 lattice; anything off-lattice throws
/// UnexpectedRoot, wrong dimensions throw MultiplicityMismatch.
RootSystemData restricted_root_decomposition(int m, double eps_group = 1e-7);

/// Hard-coded bases of the six positive root spaces, straight from the block
/// model. Throws UnknownLabel for anything outside BC2 positives.
std::vector<TangentVector> explicit_root_space(const RootVector& root, int m);

/// Expected multiplicity of a positive root.
int root_multiplicity(const RootVector& root, int m);

std::vector<RootVector> positive_roots();

// ============================================================================
// Iwasawa data: n = sum of g_lambda over positive lambda, with each g_lambda
// realized as the lambda(H_gen)-eigenspace of ad(H_gen) on g for the fixed
// generic chamber vector H_gen = cos(0.2) e1 + sin(0.2) e2.
// ============================================================================

struct GRootSpace {
    RootVector root;
    std::vector<AlgebraElement> basis;  // orthonormal for ambient_ip
};

struct IwasawaData {
    int m = 0;
    std::vector<GRootSpace> positive;     // g_lambda, lambda positive
    std::vector<AlgebraElement> g_zero;   // centralizer of a in g
    double eigen_residual = 0.0;
};

IwasawaData iwasawa_decomposition(int m, double eps_group = 1e-7);

/// Shape-operator spectrum of the horosphere centered at the chamber
/// direction H_t, computed on s_H = (a minus R H_t) + n: the value 0 with
/// multiplicity 1 plus lambda(H_t) with multiplicity dim g_lambda, grouped.
SpectralTable iwasawa_spectrum(int m, double t, double eps_group = 1e-7);

}  // namespace ncgrass
