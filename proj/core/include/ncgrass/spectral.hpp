#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "ncgrass/complex_matrix.hpp"
#include "ncgrass/errors.hpp"

namespace ncgrass {

using RealVec = std::vector<double>;

// ============================================================================
// Eigensolver
// ============================================================================

struct EigResult {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column j is the eigenvector of values[j]
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Deterministic: fixed sweep order, fixed rotation choice, ascending sort.
/// Convergence target is off-diagonal Frobenius mass below 1e-13 * |A|_F,
/// capped at 100 sweeps. Throws NonHermitian / NoConvergence.
EigResult hermitian_eig(const ComplexMatrix& a, double sym_tol = 1e-9);

/// Eigenvector columns of a real symmetric problem, as real vectors.
/// Throws NonHermitian if any imaginary part exceeds tol.
std::vector<RealVec> real_columns(const ComplexMatrix& vectors, double tol = 1e-9);

// ============================================================================
// Spectral table
// ============================================================================

struct SpectralTable {
    struct Group {
        double value = 0.0;
        int multiplicity = 0;
        std::vector<RealVec> basis;
    };
    std::vector<Group> groups;  // ascending by value
    int ambient_dim = 0;

    int total_multiplicity() const;
    /// Checks orthonormality within and across groups. Returns max residual.
    double basis_residual() const;
};

/// Clusters an ascending eigenvalue list: consecutive values closer than
/// eps_group share a group, each group reports the mean. Throws
/// AmbiguousGrouping when two resulting groups are closer than 2 * eps_group.
SpectralTable group_eigenvalues(const std::vector<double>& values,
                                const std::vector<RealVec>& vectors, double eps_group);

// ============================================================================
// Generic basis utilities
// ============================================================================

/// Gram-Schmidt with two reorthogonalization passes. Vectors whose residual
/// drops below eps_rank (relative to their own norm) are dropped, so
/// rank-deficient inputs yield a basis of the span. Order-preserving.
template <class V, class IP>
std::vector<V> orthonormalize(const std::vector<V>& input, IP&& ip, double eps_rank = 1e-10) {
    std::vector<V> out;
    for (const V& v0 : input) {
        V v = v0;
        for (int pass = 0; pass < 2; ++pass)
            for (const V& u : out) v = v - ip(v, u) * u;
        const double nrm = std::sqrt(std::max(0.0, ip(v, v)));
        const double ref = std::sqrt(std::max(0.0, ip(v0, v0)));
        if (nrm > eps_rank * std::max(1.0, ref)) out.push_back((1.0 / nrm) * v);
    }
    return out;
}

/// Matrix of a linear operator in a given orthonormal basis:
/// M(i,j) = ip(basis[i], f(basis[j])). Real-valued entries.
template <class V, class F, class IP>
ComplexMatrix operator_matrix(F&& f, const std::vector<V>& basis, IP&& ip) {
    const int n = static_cast<int>(basis.size());
    ComplexMatrix m(n, n);
    for (int j = 0; j < n; ++j) {
        const V fj = f(basis[j]);
        for (int i = 0; i < n; ++i) m(i, j) = ip(basis[i], fj);
    }
    return m;
}

/// Largest principal angle between span(a) and span(b), both orthonormal.
/// Computed through the sine (norm of the residual of b against span(a)),
/// which stays accurate for tiny angles.
template <class V, class IP>
double max_principal_angle(const std::vector<V>& a, const std::vector<V>& b, IP&& ip) {
    if (b.empty()) return 0.0;
    if (a.empty()) return std::asin(1.0);
    std::vector<V> res;
    res.reserve(b.size());
    for (const V& bj : b) {
        V r = bj;
        for (int pass = 0; pass < 2; ++pass)
            for (const V& ai : a) r = r - ip(r, ai) * ai;
        res.push_back(std::move(r));
    }
    const int k = static_cast<int>(res.size());
    ComplexMatrix gram(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) gram(i, j) = ip(res[i], res[j]);
    const EigResult eig = hermitian_eig(gram);
    const double s2 = std::clamp(eig.values.back(), 0.0, 1.0);
    return std::asin(std::sqrt(s2));
}

/// sub is contained in span(big) up to angle tol.
template <class V, class IP>
bool subspace_contained(const std::vector<V>& sub, const std::vector<V>& big, IP&& ip,
                        double tol_angle) {
    return max_principal_angle(big, sub, ip) < tol_angle;
}

/// Equality of spans: equal dimension plus containment both ways.
template <class V, class IP>
bool subspace_equal(const std::vector<V>& a, const std::vector<V>& b, IP&& ip, double tol_angle) {
    if (a.size() != b.size()) return false;
    return max_principal_angle(a, b, ip) < tol_angle && max_principal_angle(b, a, ip) < tol_angle;
}

// ============================================================================
// Joint diagonalization
// ============================================================================

struct JointBlock {
    std::vector<double> values;  // one eigenvalue per operator
    std::vector<RealVec> basis;  // orthonormal, ambient coordinates
};

/// Common eigenspace decomposition of a family of commuting real symmetric
/// operators, by successive spectral refinement. Blocks are ordered
/// lexicographically by their eigenvalue tuples.
std::vector<JointBlock> simultaneous_diagonalize(const std::vector<ComplexMatrix>& ops,
                                                 double eps_group, double sym_tol = 1e-9);

}  // namespace ncgrass
