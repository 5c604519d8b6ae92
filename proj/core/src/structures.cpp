#include "ncgrass/structures.hpp"

#include <algorithm>
#include <cmath>

#include "ncgrass/spectral.hpp"

namespace ncgrass {

TangentVector kahler_J(const TangentVector& x) { return Complex(0.0, 1.0) * x; }

AlgebraElement kahler_Z(int m) {
    GrassmannParameter param(m);
    ComplexMatrix z(m + 2, m + 2);
    const double denom = m + 2;
    for (int i = 0; i < 2; ++i) z(i, i) = Complex(0.0, m / denom);
    for (int j = 0; j < m; ++j) z(2 + j, 2 + j) = Complex(0.0, -2.0 / denom);
    return AlgebraElement(std::move(z));
}

QuaternionBasis QuaternionBasis::canonical() {
    QuaternionBasis b;
    for (auto& q : b.q_) q = ComplexMatrix(2, 2);
    b.q_[0](0, 0) = Complex(0.0, 1.0);
    b.q_[0](1, 1) = Complex(0.0, -1.0);
    b.q_[1](0, 1) = 1.0;
    b.q_[1](1, 0) = -1.0;
    b.q_[2](0, 1) = Complex(0.0, 1.0);
    b.q_[2](1, 0) = Complex(0.0, 1.0);
    return b;
}

TangentVector QuaternionBasis::apply(int nu, const TangentVector& x) const {
    if (nu < 0 || nu > 2) throw DimensionMismatch("QuaternionBasis::apply: nu out of range");
    return TangentVector(q_[nu] * x.block());
}

QuaternionBasis QuaternionBasis::adapted_to(const TangentVector& x, double eps_angle) const {
    const double n2 = metric(x, x);
    if (n2 <= 0.0) throw ZeroVector("QuaternionBasis::adapted_to: zero vector");
    const TangentVector jx = kahler_J(x);

    // coefficients of J X against the orthogonal frame {J_nu X}
    std::array<double, 3> a{};
    double norm2 = 0.0;
    for (int nu = 0; nu < 3; ++nu) {
        a[nu] = metric(jx, apply(nu, x)) / n2;
        norm2 += a[nu] * a[nu];
    }
    if (std::abs(std::sqrt(norm2) - 1.0) > eps_angle)
        throw WrongSingularType("adapted_to: vector is not of complex type");
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& c : a) c *= inv;

    // complete a to a right-handed orthonormal triad (a, b, c)
    std::array<double, 3> u = std::abs(a[2]) < 0.9 ? std::array<double, 3>{0.0, 0.0, 1.0}
                                                   : std::array<double, 3>{0.0, 1.0, 0.0};
    const double ua = u[0] * a[0] + u[1] * a[1] + u[2] * a[2];
    std::array<double, 3> b{u[0] - ua * a[0], u[1] - ua * a[1], u[2] - ua * a[2]};
    const double bn = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
    for (double& c : b) c /= bn;
    const std::array<double, 3> c{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                                  a[0] * b[1] - a[1] * b[0]};

    QuaternionBasis out;
    const std::array<std::array<double, 3>, 3> rows{a, b, c};
    for (int nu = 0; nu < 3; ++nu) {
        ComplexMatrix q(2, 2);
        for (int k = 0; k < 3; ++k) q += rows[nu][k] * q_[k];
        out.q_[nu] = std::move(q);
    }
    return out;
}

std::vector<TangentVector> jspan(const TangentVector& x, const QuaternionBasis& q) {
    if (metric(x, x) <= 0.0) throw ZeroVector("jspan: zero vector");
    std::vector<TangentVector> raw{q.apply(0, x), q.apply(1, x), q.apply(2, x)};
    return orthonormalize(raw, metric);
}

double kahler_angle(const TangentVector& x, const QuaternionBasis& q) {
    const double n2 = metric(x, x);
    if (n2 <= 0.0) throw ZeroVector("kahler_angle: zero vector");
    const TangentVector jx = kahler_J(x);
    double proj2 = 0.0;
    for (int nu = 0; nu < 3; ++nu) {
        const double c = metric(jx, q.apply(nu, x)) / n2;  // {J_nu X} orthogonal, norm |X|
        proj2 += c * c;
    }
    const double cosv = std::clamp(std::sqrt(proj2), 0.0, 1.0);
    return std::acos(cosv);
}

SingularType classify_vector(const TangentVector& x, double eps_angle, const QuaternionBasis& q) {
    const double angle = kahler_angle(x, q);
    if (angle < eps_angle) return SingularType::ComplexType;
    if (std::asin(1.0) - angle < eps_angle) return SingularType::PerpType;
    return SingularType::Regular;
}

const char* to_string(SingularType t) {
    switch (t) {
        case SingularType::Regular: return "regular";
        case SingularType::ComplexType: return "complex";
        case SingularType::PerpType: return "perp";
    }
    return "?";
}

}  // namespace ncgrass
