#include "ncgrass/root_system.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ncgrass {

namespace {

constexpr double kChamberT = 0.2;  // fixed generic parameter for building n

TangentVector from_coords(const RealVec& coords, const std::vector<TangentVector>& basis) {
    TangentVector v = TangentVector::zero(basis[0].m());
    for (std::size_t i = 0; i < coords.size(); ++i) v += coords[i] * basis[i];
    return v;
}

AlgebraElement from_coords_g(const RealVec& coords, const std::vector<AlgebraElement>& basis) {
    AlgebraElement v = 0.0 * basis[0];
    for (std::size_t i = 0; i < coords.size(); ++i) v += coords[i] * basis[i];
    return v;
}

int snap_int(double x, double tol, const char* what) {
    const double r = std::round(x);
    if (std::abs(x - r) > tol) throw UnexpectedRoot(std::string(what) + ": off-lattice value");
    return static_cast<int>(r);
}

}  // namespace

double RootVector::value_at(double t) const { return a1 * std::cos(t) + a2 * std::sin(t); }

std::string RootVector::label() const {
    auto term = [](int c, const char* e) -> std::string {
        if (c == 0) return "";
        std::string s;
        if (c == 1)
            s = "";
        else if (c == -1)
            s = "-";
        else
            s = std::to_string(c);
        return s + e;
    };
    if (a1 == 0 && a2 == 0) return "0";
    std::string s = term(a1, "e1");
    if (a2 != 0) {
        if (!s.empty() && a2 > 0) s += "+";
        s += term(a2, "e2");
    }
    return s;
}

RootVector RootVector::parse(const std::string& label) {
    for (const RootVector& r : positive_roots())
        if (r.label() == label) return r;
    throw UnknownLabel("RootVector::parse: " + label);
}

std::vector<RootVector> positive_roots() {
    return {{0, 1}, {0, 2}, {1, -1}, {1, 0}, {1, 1}, {2, 0}};
}

int root_multiplicity(const RootVector& root, int m) {
    if (root == RootVector{1, -1} || root == RootVector{1, 1}) return 2;
    if (root == RootVector{1, 0} || root == RootVector{0, 1}) return 2 * (m - 2);
    if (root == RootVector{2, 0} || root == RootVector{0, 2}) return 1;
    throw UnknownLabel("root_multiplicity: " + root.label());
}

std::pair<TangentVector, TangentVector> basis_a(int m) {
    return {TangentVector::elementary(m, 0, 0), TangentVector::elementary(m, 1, 1)};
}

TangentVector weyl_chamber_vector(int m, double t) {
    if (!(t >= 0.0 && t <= std::atan(1.0) + 1e-15))
        throw OutOfChamber("weyl_chamber_vector: t outside [0, pi/4]");
    auto [e1, e2] = basis_a(m);
    return std::cos(t) * e1 + std::sin(t) * e2;
}

TangentVector dual_root_vector(const RootVector& root, int m) {
    auto [e1, e2] = basis_a(m);
    return static_cast<double>(root.a1) * e1 + static_cast<double>(root.a2) * e2;
}

RootSystemData restricted_root_decomposition(int m, double eps_group) {
    const CartanDecomposition dec = cartan_decomposition(m);
    auto [e1, e2] = basis_a(m);

    // bracket_kp(bracket_pp(h, y), h) = [[h,y],h] = -ad(h)^2 y, so the negated
    // operators below are PSD with eigenvalue lambda(h)^2 on p_lambda, and
    // -[[e2,y],e1] = ad(e1)ad(e2) y acts as lambda(e1)lambda(e2) there.
    auto t1_op = [&](const TangentVector& y) { return -1.0 * bracket_kp(bracket_pp(e1, y), e1); };
    auto t2_op = [&](const TangentVector& y) { return -1.0 * bracket_kp(bracket_pp(e2, y), e2); };
    auto s_op = [&](const TangentVector& y) { return -1.0 * bracket_kp(bracket_pp(e2, y), e1); };

    const ComplexMatrix t1 = operator_matrix(t1_op, dec.p_basis, metric);
    const ComplexMatrix t2 = operator_matrix(t2_op, dec.p_basis, metric);
    const ComplexMatrix s = operator_matrix(s_op, dec.p_basis, metric);

    const auto blocks = simultaneous_diagonalize({t1, t2, s}, eps_group);

    RootSystemData data;
    data.m = m;
    data.a_basis = {e1, e2};

    std::map<RootVector, RootSpace> spaces;
    int zero_dim = 0;
    for (const auto& blk : blocks) {
        const int q1 = snap_int(blk.values[0], eps_group, "restricted_root_decomposition");
        const int q2 = snap_int(blk.values[1], eps_group, "restricted_root_decomposition");
        const int prod = snap_int(blk.values[2], eps_group, "restricted_root_decomposition");
        const int a1 = snap_int(std::sqrt(static_cast<double>(q1)), eps_group, "root coord");
        int a2 = snap_int(std::sqrt(static_cast<double>(q2)), eps_group, "root coord");
        if (a1 * a2 != std::abs(prod))
            throw UnexpectedRoot("restricted_root_decomposition: inconsistent sign block");
        if (a1 > 0 && prod < 0) a2 = -a2;
        if (a1 == 0 && a2 == 0) {
            zero_dim += static_cast<int>(blk.basis.size());
            continue;
        }
        const RootVector root{a1, a2};
        RootSpace& rs = spaces[root];
        rs.root = root;
        for (const auto& coords : blk.basis) rs.basis.push_back(from_coords(coords, dec.p_basis));
        rs.multiplicity = static_cast<int>(rs.basis.size());
    }

    if (zero_dim != 2)
        throw MultiplicityMismatch("restricted_root_decomposition: dim a = " +
                                   std::to_string(zero_dim));
    for (const RootVector& r : positive_roots()) {
        const int expect = root_multiplicity(r, m);
        const auto it = spaces.find(r);
        const int got = it == spaces.end() ? 0 : it->second.multiplicity;
        if (got != expect)
            throw MultiplicityMismatch("restricted_root_decomposition: " + r.label() + " has " +
                                       std::to_string(got) + ", expected " +
                                       std::to_string(expect));
        if (got > 0) data.positive.push_back(it->second);
    }
    for (const auto& kv : spaces)
        if (std::find_if(data.positive.begin(), data.positive.end(), [&](const RootSpace& x) {
                return x.root == kv.first;
            }) == data.positive.end())
            throw UnexpectedRoot("restricted_root_decomposition: stray root " + kv.first.label());

    // residual of the eigen equations on every reported basis vector
    double resid = 0.0;
    for (const auto& rs : data.positive)
        for (const auto& y : rs.basis) {
            const TangentVector r1 =
                t1_op(y) - static_cast<double>(rs.root.a1 * rs.root.a1) * y;
            const TangentVector r2 =
                t2_op(y) - static_cast<double>(rs.root.a2 * rs.root.a2) * y;
            resid = std::max(resid, std::max(r1.norm(), r2.norm()));
        }
    data.eigen_residual = resid;
    return data;
}

std::vector<TangentVector> explicit_root_space(const RootVector& root, int m) {
    const Complex i1(0.0, 1.0);
    std::vector<TangentVector> out;
    if (root == RootVector{2, 0}) {
        out.push_back(TangentVector::elementary(m, 0, 0, i1));
    } else if (root == RootVector{0, 2}) {
        out.push_back(TangentVector::elementary(m, 1, 1, i1));
    } else if (root == RootVector{1, -1}) {
        // C = [[0, z], [conj z, 0]] in the leading 2x2 block
        for (const Complex z : {Complex(1.0, 0.0), i1}) {
            TangentVector v = TangentVector::zero(m);
            v.block()(0, 1) = z;
            v.block()(1, 0) = std::conj(z);
            out.push_back((1.0 / v.norm()) * v);
        }
    } else if (root == RootVector{1, 1}) {
        // C = [[0, -z], [conj z, 0]]
        for (const Complex z : {Complex(1.0, 0.0), i1}) {
            TangentVector v = TangentVector::zero(m);
            v.block()(0, 1) = -z;
            v.block()(1, 0) = std::conj(z);
            out.push_back((1.0 / v.norm()) * v);
        }
    } else if (root == RootVector{1, 0} || root == RootVector{0, 1}) {
        const int row = root == RootVector{1, 0} ? 0 : 1;
        for (int col = 2; col < m; ++col)
            for (const Complex u : {Complex(1.0, 0.0), i1})
                out.push_back(TangentVector::elementary(m, row, col, u));
    } else {
        throw UnknownLabel("explicit_root_space: " + root.label());
    }
    return out;
}

IwasawaData iwasawa_decomposition(int m, double eps_group) {
    const CartanDecomposition dec = cartan_decomposition(m);
    const TangentVector h_gen = weyl_chamber_vector(m, kChamberT);
    const AlgebraElement h = embed_block(h_gen);

    auto ad_h = [&](const AlgebraElement& x) { return bracket(h, x); };
    const ComplexMatrix ad_mat = operator_matrix(ad_h, dec.g_basis, ambient_ip);

    const EigResult eig = hermitian_eig(ad_mat);
    const SpectralTable grouped =
        group_eigenvalues(eig.values, real_columns(eig.vectors), eps_group);

    // match each group against the candidate values lambda(H_gen)
    std::vector<std::pair<double, RootVector>> candidates{{0.0, RootVector{0, 0}}};
    for (const RootVector& r : positive_roots()) {
        candidates.push_back({r.value_at(kChamberT), r});
        candidates.push_back({-r.value_at(kChamberT), RootVector{-r.a1, -r.a2}});
    }

    IwasawaData data;
    data.m = m;
    for (const auto& g : grouped.groups) {
        const auto best = std::min_element(
            candidates.begin(), candidates.end(), [&](const auto& a, const auto& b) {
                return std::abs(a.first - g.value) < std::abs(b.first - g.value);
            });
        if (std::abs(best->first - g.value) > 1e-6)
            throw UnexpectedRoot("iwasawa_decomposition: eigenvalue " + std::to_string(g.value));
        const RootVector root = best->second;
        std::vector<AlgebraElement> basis;
        for (const auto& coords : g.basis) basis.push_back(from_coords_g(coords, dec.g_basis));
        if (root == RootVector{0, 0}) {
            data.g_zero = std::move(basis);
        } else if (root.a1 > 0 || (root.a1 == 0 && root.a2 > 0)) {
            data.positive.push_back({root, std::move(basis)});
        }
    }

    const int expected_zero = (m - 2) * (m - 2) + 1 + 2;
    if (static_cast<int>(data.g_zero.size()) != expected_zero)
        throw MultiplicityMismatch("iwasawa_decomposition: dim g_0 = " +
                                   std::to_string(data.g_zero.size()));
    for (const RootVector& r : positive_roots()) {
        const int expect = root_multiplicity(r, m);
        int got = 0;
        for (const auto& gs : data.positive)
            if (gs.root == r) got = static_cast<int>(gs.basis.size());
        if (got != expect)
            throw MultiplicityMismatch("iwasawa_decomposition: g_" + r.label() + " has " +
                                       std::to_string(got));
    }

    double resid = 0.0;
    for (const auto& gs : data.positive)
        for (const auto& x : gs.basis) {
            const AlgebraElement r = bracket(h, x) - gs.root.value_at(kChamberT) * x;
            resid = std::max(resid, std::sqrt(std::max(0.0, ambient_ip(r, r))));
        }
    data.eigen_residual = resid;
    return data;
}

SpectralTable iwasawa_spectrum(int m, double t, double eps_group) {
    if (!(t >= 0.0 && t <= std::atan(1.0) + 1e-15))
        throw OutOfChamber("iwasawa_spectrum: t outside [0, pi/4]");

    // values with multiplicities; eigenvectors reported as coordinate slots
    std::vector<std::pair<double, int>> vals{{0.0, 1}};  // a minus R H_t
    for (const RootVector& r : positive_roots()) {
        const int mult = root_multiplicity(r, m);
        if (mult > 0) vals.push_back({r.value_at(t), mult});
    }
    std::sort(vals.begin(), vals.end());

    std::vector<double> flat;
    for (const auto& [v, k] : vals) flat.insert(flat.end(), k, v);
    const int dim = static_cast<int>(flat.size());
    std::vector<RealVec> slots;
    for (int i = 0; i < dim; ++i) {
        RealVec e(dim, 0.0);
        e[i] = 1.0;
        slots.push_back(std::move(e));
    }
    return group_eigenvalues(flat, slots, eps_group);
}

}  // namespace ncgrass
