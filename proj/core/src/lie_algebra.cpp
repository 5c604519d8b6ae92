#include "ncgrass/lie_algebra.hpp"

#include <cmath>
#include <string>

#include "ncgrass/spectral.hpp"

namespace ncgrass {

TangentVector::TangentVector(ComplexMatrix block) : block_(std::move(block)) {
    if (block_.rows() != 2 || block_.cols() < 2)
        throw DimensionMismatch("TangentVector: block must be 2xm, m >= 2");
}

TangentVector TangentVector::zero(int m) { return TangentVector(ComplexMatrix(2, m)); }

TangentVector TangentVector::elementary(int m, int row, int col, Complex unit) {
    if (row < 0 || row > 1 || col < 0 || col >= m)
        throw DimensionMismatch("TangentVector::elementary: index out of range");
    ComplexMatrix c(2, m);
    c(row, col) = unit;
    return TangentVector(std::move(c));
}

TangentVector& TangentVector::operator+=(const TangentVector& o) {
    block_ += o.block_;
    return *this;
}
TangentVector& TangentVector::operator-=(const TangentVector& o) {
    block_ -= o.block_;
    return *this;
}
TangentVector& TangentVector::operator*=(Complex s) {
    block_ *= s;
    return *this;
}

double TangentVector::norm() const { return std::sqrt(std::max(0.0, metric(*this, *this))); }

TangentVector TangentVector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw ZeroVector("TangentVector::normalized: zero vector");
    return (1.0 / n) * *this;
}

TangentVector operator+(TangentVector a, const TangentVector& b) { return a += b; }
TangentVector operator-(TangentVector a, const TangentVector& b) { return a -= b; }
TangentVector operator*(double s, TangentVector v) { return v *= Complex(s, 0.0); }
TangentVector operator*(Complex s, TangentVector v) { return v *= s; }
TangentVector operator-(TangentVector v) { return v *= Complex(-1.0, 0.0); }

double metric(const TangentVector& x, const TangentVector& y) {
    if (x.m() != y.m()) throw DimensionMismatch("metric: mixed m");
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < x.m(); ++j) {
            const Complex a = x.block()(i, j), b = y.block()(i, j);
            s += a.real() * b.real() + a.imag() * b.imag();
        }
    return s;
}

AlgebraElement::AlgebraElement(ComplexMatrix x, double tol) : matrix_(std::move(x)) {
    const int n = matrix_.rows();
    if (n != matrix_.cols() || n < 4)
        throw DimensionMismatch("AlgebraElement: expected square (m+2)x(m+2), m >= 2");
    const double scale = std::max(1.0, matrix_.max_abs());
    if (std::abs(matrix_.trace()) > tol * scale)
        throw NotInAlgebra("AlgebraElement: nonzero trace");
    // X* G + G X = 0 with G = diag(-I2, Im) reads blockwise: A, B anti-Hermitian
    // and the lower-left block equal to C*.
    double defect = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const bool i_top = i < 2, j_top = j < 2;
            const Complex a = matrix_(i, j), b = matrix_(j, i);
            if (i_top == j_top)
                defect = std::max(defect, std::abs(a + std::conj(b)));
            else
                defect = std::max(defect, std::abs(a - std::conj(b)));
        }
    if (defect > tol * scale)
        throw NotInAlgebra("AlgebraElement: su(2,m) defect " + std::to_string(defect));
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    matrix_ += o.matrix_;
    return *this;
}
AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    matrix_ -= o.matrix_;
    return *this;
}
AlgebraElement& AlgebraElement::operator*=(double s) {
    matrix_ *= Complex(s, 0.0);
    return *this;
}

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
AlgebraElement operator*(double s, AlgebraElement v) { return v *= s; }

AlgebraElement theta(const AlgebraElement& x) {
    ComplexMatrix r = x.matrix();
    const int n = r.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((i < 2) != (j < 2)) r(i, j) = -r(i, j);
    return AlgebraElement(std::move(r));
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
    return AlgebraElement(x.matrix() * y.matrix() - y.matrix() * x.matrix());
}

double killing_form(const AlgebraElement& x, const AlgebraElement& y) {
    const int n = x.matrix().rows();
    return 2.0 * n * (x.matrix() * y.matrix()).trace().real();
}

double ambient_ip(const AlgebraElement& x, const AlgebraElement& y) {
    return -0.5 * (x.matrix() * theta(y).matrix()).trace().real();
}

std::pair<AlgebraElement, AlgebraElement> cartan_split(const AlgebraElement& x) {
    const int n = x.matrix().rows();
    ComplexMatrix k(n, n), p(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            ((i < 2) == (j < 2) ? k(i, j) : p(i, j)) = x.matrix()(i, j);
    return {AlgebraElement(std::move(k)), AlgebraElement(std::move(p))};
}

AlgebraElement embed_block(const TangentVector& v) {
    const int m = v.m();
    ComplexMatrix x(m + 2, m + 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < m; ++j) {
            x(i, 2 + j) = v.block()(i, j);
            x(2 + j, i) = std::conj(v.block()(i, j));
        }
    return AlgebraElement(std::move(x));
}

TangentVector block_of(const AlgebraElement& x, double tol) {
    const int n = x.matrix().rows();
    double diag = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((i < 2) == (j < 2)) diag = std::max(diag, std::abs(x.matrix()(i, j)));
    if (diag > tol) throw NotInP("block_of: block-diagonal part " + std::to_string(diag));
    ComplexMatrix c(2, n - 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < n - 2; ++j) c(i, j) = x.matrix()(i, 2 + j);
    return TangentVector(std::move(c));
}

AlgebraElement bracket_pp(const TangentVector& x, const TangentVector& y) {
    const int m = x.m();
    const ComplexMatrix& c = x.block();
    const ComplexMatrix& d = y.block();
    const ComplexMatrix cd = c * d.adjoint();   // 2x2
    const ComplexMatrix cs = c.adjoint() * d;   // mxm
    const ComplexMatrix ds = d.adjoint() * c;
    ComplexMatrix r(m + 2, m + 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = cd(i, j) - std::conj(cd(j, i));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r(2 + i, 2 + j) = cs(i, j) - ds(i, j);
    return AlgebraElement(std::move(r));
}

TangentVector bracket_kp(const AlgebraElement& k, const TangentVector& x) {
    const int m = x.m();
    ComplexMatrix a(2, 2), b(m, m);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = k.matrix()(i, j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) b(i, j) = k.matrix()(2 + i, 2 + j);
    return TangentVector(a * x.block() - x.block() * b);
}

CartanDecomposition cartan_decomposition(int m) {
    GrassmannParameter param(m);
    const int n = param.ambient();
    CartanDecomposition dec;
    dec.m = m;

    // k: anti-Hermitian pairs inside each diagonal block, then the traceless
    // imaginary diagonals (orthonormalized; the diagonal family is not
    // orthogonal as written).
    std::vector<AlgebraElement> k_raw;
    auto add_pair = [&](int i, int j) {
        ComplexMatrix re(n, n), im(n, n);
        re(i, j) = 1.0;
        re(j, i) = -1.0;
        im(i, j) = Complex(0.0, 1.0);
        im(j, i) = Complex(0.0, 1.0);
        k_raw.emplace_back(std::move(re));
        k_raw.emplace_back(std::move(im));
    };
    for (int i = 0; i < 2; ++i)
        for (int j = i + 1; j < 2; ++j) add_pair(i, j);
    for (int i = 2; i < n; ++i)
        for (int j = i + 1; j < n; ++j) add_pair(i, j);
    for (int d = 0; d < n - 1; ++d) {
        ComplexMatrix x(n, n);
        x(d, d) = Complex(0.0, 1.0);
        x(d + 1, d + 1) = Complex(0.0, -1.0);
        k_raw.emplace_back(std::move(x));
    }
    dec.k_basis = orthonormalize(k_raw, ambient_ip);
    if (static_cast<int>(dec.k_basis.size()) != m * m + 3)
        throw DimensionMismatch("cartan_decomposition: dim k != m^2 + 3");

    // p: elementary blocks are already orthonormal for the metric.
    for (int row = 0; row < 2; ++row)
        for (int col = 0; col < m; ++col)
            for (int comp = 0; comp < 2; ++comp)
                dec.p_basis.push_back(TangentVector::elementary(
                    m, row, col, comp == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0)));

    dec.g_basis = dec.k_basis;
    for (const auto& v : dec.p_basis) dec.g_basis.push_back(embed_block(v));
    return dec;
}

}  // namespace ncgrass
