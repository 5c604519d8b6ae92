#include "ncgrass/models.hpp"

#include <algorithm>
#include <cmath>

#include "ncgrass/curvature.hpp"
#include "ncgrass/spectral.hpp"

namespace ncgrass {

namespace {

// residual of v against span(basis), both sides orthonormalized beforehand
template <class V, class IP>
double residual_against(const V& v, const std::vector<V>& basis, IP&& ip) {
    V r = v;
    for (int pass = 0; pass < 2; ++pass)
        for (const V& b : basis) r = r - ip(r, b) * b;
    return std::sqrt(std::max(0.0, ip(r, r)));
}

}  // namespace

TotallyGeodesicTangentSplit su_submodel(int m) {
    if (m < 2) throw BadParams("su_submodel: needs m >= 2");
    TotallyGeodesicTangentSplit split;
    split.kind = "su";
    split.m = m;

    for (int row = 0; row < 2; ++row)
        for (int col = 0; col < m; ++col)
            for (int comp = 0; comp < 2; ++comp) {
                TangentVector v = TangentVector::elementary(
                    m, row, col, comp == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0));
                (col < m - 1 ? split.tangent : split.normal).push_back(std::move(v));
            }
    split.default_normal = TangentVector::elementary(m, 0, m - 1);

    // su(2,m-1) embedded with the last row and column zero, built directly in
    // the ambient size so the m=2 case (subalgebra su(2,1)) needs no special
    // handling: su(2) corner, the balancing u(1), su(m-1), then the p part.
    const Complex i1(0.0, 1.0);
    const int w = m - 1;
    std::vector<ComplexMatrix> raw;
    const auto fresh = [&] { return ComplexMatrix(m + 2, m + 2); };
    {
        ComplexMatrix x = fresh();
        x(0, 0) = i1;
        x(1, 1) = -i1;
        raw.push_back(std::move(x));
        x = fresh();
        x(0, 1) = 1.0;
        x(1, 0) = -1.0;
        raw.push_back(std::move(x));
        x = fresh();
        x(0, 1) = i1;
        x(1, 0) = i1;
        raw.push_back(std::move(x));
        x = fresh();
        x(0, 0) = i1;
        x(1, 1) = i1;
        for (int j = 0; j < w; ++j) x(2 + j, 2 + j) = -2.0 * i1 / double(w);
        raw.push_back(std::move(x));
    }
    for (int i = 0; i < w; ++i)
        for (int j = i + 1; j < w; ++j) {
            ComplexMatrix x = fresh();
            x(2 + i, 2 + j) = 1.0;
            x(2 + j, 2 + i) = -1.0;
            raw.push_back(std::move(x));
            x = fresh();
            x(2 + i, 2 + j) = i1;
            x(2 + j, 2 + i) = i1;
            raw.push_back(std::move(x));
        }
    for (int i = 0; i + 1 < w; ++i) {
        ComplexMatrix x = fresh();
        x(2 + i, 2 + i) = i1;
        x(2 + i + 1, 2 + i + 1) = -i1;
        raw.push_back(std::move(x));
    }
    for (const auto& v : split.tangent) raw.push_back(embed_block(v).matrix());

    std::vector<AlgebraElement> elems;
    for (auto& x : raw) elems.emplace_back(std::move(x));
    split.subalgebra = orthonormalize(elems, ambient_ip);
    const int expect = (m + 1) * (m + 1) - 1;
    if (static_cast<int>(split.subalgebra.size()) != expect)
        throw DimensionMismatch("su_submodel: dim su(2,m-1) = " +
                                std::to_string(split.subalgebra.size()));
    return split;
}

TotallyGeodesicTangentSplit sp_submodel(int n) {
    if (n < 1) throw BadParams("sp_submodel: needs n >= 1");
    const int m = 2 * n;
    TotallyGeodesicTangentSplit split;
    split.kind = "sp";
    split.m = m;
    split.n = n;

    // tangent blocks [[C1, C2], [conj C2, -conj C1]],
    // normal blocks  [[C1, C2], [-conj C2, conj C1]], C1, C2 complex rows
    auto make = [&](bool tangent_side, int slot, int k, Complex u) {
        ComplexMatrix c(2, m);
        const double sgn = tangent_side ? -1.0 : 1.0;
        if (slot == 0) {  // C1 = u E_k
            c(0, k) = u;
            c(1, n + k) = sgn * std::conj(u);
        } else {  // C2 = u E_k
            c(0, n + k) = u;
            c(1, k) = -sgn * std::conj(u);
        }
        return TangentVector((1.0 / std::sqrt(2.0)) * ComplexMatrix(c));
    };
    for (int slot = 0; slot < 2; ++slot)
        for (int k = 0; k < n; ++k)
            for (const Complex u : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
                split.tangent.push_back(make(true, slot, k, u));
                split.normal.push_back(make(false, slot, k, u));
            }
    split.default_normal = make(false, 0, 0, 1.0);

    // sp(1,n) basis by parameter blocks: x, z, C1, C2, B1, B2.
    std::vector<ComplexMatrix> raw;
    const Complex i1(0.0, 1.0);
    {
        ComplexMatrix x(m + 2, m + 2);
        x(0, 0) = i1;
        x(1, 1) = -i1;
        raw.push_back(std::move(x));
    }
    for (const Complex z : {Complex(1.0, 0.0), i1}) {
        ComplexMatrix x(m + 2, m + 2);
        x(0, 1) = z;
        x(1, 0) = -std::conj(z);
        raw.push_back(std::move(x));
    }
    auto push_p = [&](const TangentVector& v) { raw.push_back(embed_block(v).matrix()); };
    for (int slot = 0; slot < 2; ++slot)
        for (int k = 0; k < n; ++k)
            for (const Complex u : {Complex(1.0, 0.0), i1}) push_p(make(true, slot, k, u));
    // lower-right 2n x 2n block [[B1, B2], [-conj B2, conj B1]]
    auto push_b = [&](const ComplexMatrix& b1, const ComplexMatrix& b2) {
        ComplexMatrix x(m + 2, m + 2);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                x(2 + i, 2 + j) = b1(i, j);
                x(2 + i, 2 + n + j) = b2(i, j);
                x(2 + n + i, 2 + j) = -std::conj(b2(i, j));
                x(2 + n + i, 2 + n + j) = std::conj(b1(i, j));
            }
        raw.push_back(std::move(x));
    };
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            ComplexMatrix b1(n, n);
            if (i == j) {
                b1(i, i) = i1;
                push_b(b1, ComplexMatrix(n, n));
            } else {
                b1(i, j) = 1.0;
                b1(j, i) = -1.0;
                push_b(b1, ComplexMatrix(n, n));
                b1 = ComplexMatrix(n, n);
                b1(i, j) = i1;
                b1(j, i) = i1;
                push_b(b1, ComplexMatrix(n, n));
            }
        }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (const Complex u : {Complex(1.0, 0.0), i1}) {
                ComplexMatrix b2(n, n);
                b2(i, j) = u;
                b2(j, i) = u;
                push_b(ComplexMatrix(n, n), b2);
            }

    std::vector<AlgebraElement> elems;
    for (auto& x : raw) elems.emplace_back(std::move(x));
    split.subalgebra = orthonormalize(elems, ambient_ip);
    const int expect = (n + 1) * (2 * n + 3);
    if (static_cast<int>(split.subalgebra.size()) != expect)
        throw DimensionMismatch("sp_submodel: dim sp(1,n) = " +
                                std::to_string(split.subalgebra.size()));
    return split;
}

TangentVector random_unit_in_span(const std::vector<TangentVector>& basis, SplitMix64& rng) {
    TangentVector v = TangentVector::zero(basis[0].m());
    for (const auto& b : basis) v += rng.next_symmetric() * b;
    const double n = v.norm();
    if (n < 1e-8) return random_unit_in_span(basis, rng);
    return (1.0 / n) * v;
}

GeodesicCheck verify_totally_geodesic(const TotallyGeodesicTangentSplit& split, SplitMix64& rng,
                                      double eps_resid, int normal_samples) {
    GeodesicCheck check;

    for (std::size_t i = 0; i < split.subalgebra.size(); ++i) {
        check.theta_invariance =
            std::max(check.theta_invariance,
                     residual_against(theta(split.subalgebra[i]), split.subalgebra, ambient_ip));
        for (std::size_t j = i + 1; j < split.subalgebra.size(); ++j) {
            const AlgebraElement br = bracket(split.subalgebra[i], split.subalgebra[j]);
            check.subalgebra_closure =
                std::max(check.subalgebra_closure, residual_against(br, split.subalgebra, ambient_ip));
        }
    }

    for (const auto& x : split.tangent)
        for (const auto& y : split.tangent)
            for (const auto& z : split.tangent) {
                const TangentVector triple = bracket_kp(bracket_pp(x, y), z);
                check.lie_triple =
                    std::max(check.lie_triple, residual_against(triple, split.tangent, metric));
            }

    for (int s = 0; s < normal_samples; ++s) {
        const TangentVector nvec = random_unit_in_span(split.normal, rng);
        for (const auto& y : split.tangent) {
            const TangentVector ry = R_bracket(y, nvec, nvec);
            check.jacobi_invariance =
                std::max(check.jacobi_invariance, residual_against(ry, split.tangent, metric));
        }
    }

    check.pass = check.subalgebra_closure < eps_resid && check.theta_invariance < eps_resid &&
                 check.lie_triple < eps_resid && check.jacobi_invariance < eps_resid;
    return check;
}

TotallyGeodesicTangentSplit perturb_split(const TotallyGeodesicTangentSplit& split,
                                          double angle) {
    TotallyGeodesicTangentSplit out = split;
    out.kind += "-perturbed";
    // rotate the first tangent direction into the first normal direction
    const double c = std::cos(angle), s = std::sin(angle);
    const TangentVector t0 = split.tangent[0], n0 = split.normal[0];
    out.tangent[0] = c * t0 + s * n0;
    out.normal[0] = -s * t0 + c * n0;
    return out;
}

std::vector<ExpectedGroup> ExpectedSpectrum::merged(double eps_group) const {
    std::vector<ExpectedGroup> nonzero;
    for (const auto& g : groups)
        if (g.multiplicity > 0) nonzero.push_back(g);
    std::sort(nonzero.begin(), nonzero.end(),
              [](const ExpectedGroup& a, const ExpectedGroup& b) { return a.value < b.value; });
    std::vector<ExpectedGroup> out;
    for (const auto& g : nonzero) {
        if (!out.empty() && g.value - out.back().value <= eps_group) {
            // weighted merge keeps the label of the first member
            ExpectedGroup& last = out.back();
            last.value = (last.value * last.multiplicity + g.value * g.multiplicity) /
                         (last.multiplicity + g.multiplicity);
            last.multiplicity += g.multiplicity;
            last.label += "+" + g.label;
        } else {
            out.push_back(g);
        }
    }
    return out;
}

int ExpectedSpectrum::total_multiplicity() const {
    int t = 0;
    for (const auto& g : groups) t += g.multiplicity;
    return t;
}

ExpectedSpectrum expected_table(ReferenceTable kind, const TableParams& p) {
    ExpectedSpectrum out;
    const auto add = [&](double v, int mult, std::string label) {
        out.groups.push_back({v, mult, std::move(label)});
    };

    switch (kind) {
        case ReferenceTable::HorosphereFamily: {
            if (p.m < 2) throw BadParams("expected_table: m >= 2");
            if (!(p.t >= 0.0 && p.t <= std::atan(1.0) + 1e-15))
                throw BadParams("expected_table: t outside [0, pi/4]");
            const double c = std::cos(p.t), s = std::sin(p.t);
            add(0.0, 1, "a-minus-RH");
            add(2.0 * c, 1, "2e1");
            add(2.0 * s, 1, "2e2");
            add(c - s, 2, "e1-e2");
            add(c + s, 2, "e1+e2");
            add(c, 2 * p.m - 4, "e1");
            add(s, 2 * p.m - 4, "e2");
            break;
        }
        case ReferenceTable::HorosphereSingular: {
            if (p.m < 2) throw BadParams("expected_table: m >= 2");
            const double pi4 = std::atan(1.0);
            const double ta = std::atan(0.5);
            TableParams q = p;
            if (std::abs(p.t - 0.0) < 1e-12 || std::abs(p.t - ta) < 1e-12 ||
                std::abs(p.t - pi4) < 1e-12)
                return expected_table(ReferenceTable::HorosphereFamily, q);
            throw BadParams("expected_table: t is not a distinguished chamber angle");
        }
        case ReferenceTable::JacobiOperator: {
            if (p.m < 2) throw BadParams("expected_table: m >= 2");
            if (p.perp_type) {
                add(-2.0, 4, "RJX+JJX");
                add(-0.5, 4 * p.m - 8, "(HX+HJX)perp");
                add(0.0, 4, "RX+JJJX");
            } else {
                add(-4.0, 1, "RJX");
                add(-1.0, 2 * p.m, "HX-CX and J=J1");
                add(0.0, 2 * p.m - 1, "RX and J=-J1");
            }
            break;
        }
        case ReferenceTable::SuTube: {
            if (p.m < 2) throw BadParams("expected_table: m >= 2");
            if (!(p.r > 0.0)) throw BadParams("expected_table: r > 0");
            add(0.0, 2 * p.m - 2, "T: J = -J1");
            add(std::tanh(p.r), 2 * p.m - 2, "T: J = +J1");
            add(1.0 / std::tanh(p.r), 2, "HN-CN");
            add(2.0 / std::tanh(2.0 * p.r), 1, "RJN");
            break;
        }
        case ReferenceTable::SpTube: {
            if (p.n < 1) throw BadParams("expected_table: n >= 1");
            if (!(p.r > 0.0)) throw BadParams("expected_table: r > 0");
            const double s2 = std::sqrt(2.0);
            add(0.0, 3, "JJJN");
            add(std::tanh(p.r / s2) / s2, 4 * p.n - 4, "T-minus-HJN");
            add(s2 * std::tanh(s2 * p.r), 1, "RJN");
            add(1.0 / (s2 * std::tanh(p.r / s2)), 4 * p.n - 4, "nu-minus-HN");
            add(s2 / std::tanh(s2 * p.r), 3, "JJN");
            break;
        }
    }
    std::sort(out.groups.begin(), out.groups.end(),
              [](const ExpectedGroup& a, const ExpectedGroup& b) { return a.value < b.value; });
    return out;
}

}  // namespace ncgrass
