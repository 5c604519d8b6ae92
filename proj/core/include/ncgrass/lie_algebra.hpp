#pragma once

#include <utility>
#include <vector>

#include "ncgrass/complex_matrix.hpp"
#include "ncgrass/errors.hpp"

namespace ncgrass {

// ============================================================================
// The matrix model
//
// g = su(2,m): complex (m+2)x(m+2) matrices X with X* G + G X = 0 and
// tr X = 0, where G = diag(-I_2, I_m). In block form
//
//     X = [ A  C ]     A in u(2), B in u(m), tr A + tr B = 0,
//         [ C* B ]     C an arbitrary complex 2xm block.
//
// The Cartan involution theta(X) = G X G fixes the block-diagonal part k and
// negates the off-diagonal part p. A tangent vector at the base point is
// identified with its 2xm block C. The Riemannian metric is normalized as
//
//     g(X, Y) = -(1/2) Re tr(X theta(Y))  =  Re tr(C_X C_Y*),
//
// which makes the elementary blocks an orthonormal basis of p and pins the
// curvature range to [-4, 0].
// ============================================================================

struct GrassmannParameter {
    int m;
    explicit GrassmannParameter(int m_) : m(m_) {
        if (m < 2) throw BadParams("GrassmannParameter: m must be >= 2");
    }
    int ambient() const { return m + 2; }
};

/// Element of p in block coordinates: the 2xm matrix C.
class TangentVector {
public:
    TangentVector() = default;
    explicit TangentVector(ComplexMatrix block);
    static TangentVector zero(int m);
    /// C = unit * E_{row,col}, 0-based indices into the 2xm block.
    static TangentVector elementary(int m, int row, int col, Complex unit = 1.0);

    int m() const { return block_.cols(); }
    const ComplexMatrix& block() const { return block_; }
    ComplexMatrix& block() { return block_; }

    TangentVector& operator+=(const TangentVector& o);
    TangentVector& operator-=(const TangentVector& o);
    TangentVector& operator*=(Complex s);

    double norm() const;
    TangentVector normalized() const;

private:
    ComplexMatrix block_;
};

TangentVector operator+(TangentVector a, const TangentVector& b);
TangentVector operator-(TangentVector a, const TangentVector& b);
TangentVector operator*(double s, TangentVector v);
TangentVector operator*(Complex s, TangentVector v);
TangentVector operator-(TangentVector v);

/// Riemannian metric on p: Re tr(C_X C_Y*).
double metric(const TangentVector& x, const TangentVector& y);

/// Element of g = su(2,m), validated on construction.
class AlgebraElement {
public:
    AlgebraElement() = default;
    explicit AlgebraElement(ComplexMatrix x, double tol = 1e-9);

    int m() const { return matrix_.rows() - 2; }
    const ComplexMatrix& matrix() const { return matrix_; }

    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    AlgebraElement& operator*=(double s);

private:
    ComplexMatrix matrix_;
};

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator*(double s, AlgebraElement v);

/// Cartan involution X -> G X G.
AlgebraElement theta(const AlgebraElement& x);

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);

/// B(X,Y) = 2(m+2) Re tr(XY).
double killing_form(const AlgebraElement& x, const AlgebraElement& y);

/// -(1/2) Re tr(X theta(Y)); positive definite on g, restricts to `metric` on p.
double ambient_ip(const AlgebraElement& x, const AlgebraElement& y);

/// theta-eigenspace projections: first k (+1), then p (-1).
std::pair<AlgebraElement, AlgebraElement> cartan_split(const AlgebraElement& x);

AlgebraElement embed_block(const TangentVector& v);

/// Extracts the 2xm block of an element of p. Throws NotInP when the
/// block-diagonal part is larger than tol.
TangentVector block_of(const AlgebraElement& x, double tol = 1e-9);

// Bracket combinations that stay inside the block coordinates.
// [p, p] lands in k, [k, p] lands back in p.
AlgebraElement bracket_pp(const TangentVector& x, const TangentVector& y);
TangentVector bracket_kp(const AlgebraElement& k, const TangentVector& x);

struct CartanDecomposition {
    int m = 0;
    std::vector<AlgebraElement> k_basis;  // orthonormal for ambient_ip
    std::vector<TangentVector> p_basis;   // orthonormal for metric
    std::vector<AlgebraElement> g_basis;  // k_basis then embedded p_basis
};

/// Canonical orthonormal bases. p_basis is ordered (row, col, re/im):
/// index = (row * m + col) * 2 + component.
CartanDecomposition cartan_decomposition(int m);

}  // namespace ncgrass
