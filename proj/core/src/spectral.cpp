#include "ncgrass/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ncgrass {

namespace {

double offdiag_norm(const ComplexMatrix& b) {
    double s = 0.0;
    for (int i = 0; i < b.rows(); ++i)
        for (int j = i + 1; j < b.cols(); ++j) s += std::norm(b(i, j));
    return std::sqrt(2.0 * s);
}

}  // namespace

EigResult hermitian_eig(const ComplexMatrix& a, double sym_tol) {
    if (a.rows() != a.cols()) throw DimensionMismatch("hermitian_eig: non-square input");
    const int n = a.rows();
    const double scale = a.frobenius_norm();
    if (n > 0 && a.hermitian_defect() > sym_tol * std::max(1.0, scale))
        throw NonHermitian("hermitian_eig: defect " + std::to_string(a.hermitian_defect()));

    // Work on the symmetrized copy so roundoff asymmetry cannot drift.
    ComplexMatrix b(n, n);
    for (int i = 0; i < n; ++i) {
        b(i, i) = a(i, i).real();
        for (int j = i + 1; j < n; ++j) {
            const Complex h = 0.5 * (a(i, j) + std::conj(a(j, i)));
            b(i, j) = h;
            b(j, i) = std::conj(h);
        }
    }

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double target = 1e-13 * std::max(scale, 1e-300);
    const double elem_floor = target / std::max(1, n);
    const int max_sweeps = 100;

    bool converged = (n <= 1) || offdiag_norm(b) <= target;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex bpq = b(p, q);
                const double r = std::abs(bpq);
                if (r <= elem_floor) continue;
                const Complex phase = bpq / r;  // e^{i phi}
                const double app = b(p, p).real();
                const double aqq = b(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                // smaller root of t^2 - 2 tau t - 1 = 0 zeroes the pivot
                double t = 1.0 / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                if (tau >= 0.0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // rows p,q of b: b <- U* b
                for (int j = 0; j < n; ++j) {
                    const Complex bp = b(p, j), bq = b(q, j);
                    b(p, j) = c * bp + s * phase * bq;
                    b(q, j) = -s * std::conj(phase) * bp + c * bq;
                }
                // columns p,q of b and v: x <- x U
                for (int i = 0; i < n; ++i) {
                    const Complex bp = b(i, p), bq = b(i, q);
                    b(i, p) = c * bp + s * std::conj(phase) * bq;
                    b(i, q) = -s * phase * bp + c * bq;
                    const Complex vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp + s * std::conj(phase) * vq;
                    v(i, q) = -s * phase * vp + c * vq;
                }
                b(p, q) = 0.0;
                b(q, p) = 0.0;
                b(p, p) = b(p, p).real();
                b(q, q) = b(q, q).real();
            }
        }
        converged = offdiag_norm(b) <= target;
    }
    if (!converged) throw NoConvergence("hermitian_eig: 100 sweeps exhausted");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return b(i, i).real() < b(j, j).real(); });

    EigResult out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = b(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

std::vector<RealVec> real_columns(const ComplexMatrix& vectors, double tol) {
    std::vector<RealVec> cols(vectors.cols());
    for (int j = 0; j < vectors.cols(); ++j) {
        cols[j].resize(vectors.rows());
        for (int i = 0; i < vectors.rows(); ++i) {
            const Complex x = vectors(i, j);
            if (std::abs(x.imag()) > tol)
                throw NonHermitian("real_columns: imaginary component " +
                                   std::to_string(x.imag()));
            cols[j][i] = x.real();
        }
    }
    return cols;
}

int SpectralTable::total_multiplicity() const {
    int t = 0;
    for (const auto& g : groups) t += g.multiplicity;
    return t;
}

double SpectralTable::basis_residual() const {
    std::vector<const RealVec*> all;
    for (const auto& g : groups)
        for (const auto& v : g.basis) all.push_back(&v);
    double r = 0.0;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i; j < all.size(); ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < all[i]->size(); ++k) dot += (*all[i])[k] * (*all[j])[k];
            r = std::max(r, std::abs(dot - (i == j ? 1.0 : 0.0)));
        }
    return r;
}

SpectralTable group_eigenvalues(const std::vector<double>& values,
                                const std::vector<RealVec>& vectors, double eps_group) {
    if (values.size() != vectors.size())
        throw DimensionMismatch("group_eigenvalues: values/vectors size");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[i - 1])
            throw DimensionMismatch("group_eigenvalues: values not ascending");

    SpectralTable table;
    table.ambient_dim = vectors.empty() ? 0 : static_cast<int>(vectors[0].size());

    std::size_t i = 0;
    while (i < values.size()) {
        std::size_t j = i + 1;
        while (j < values.size() && values[j] - values[j - 1] <= eps_group) ++j;
        SpectralTable::Group g;
        g.multiplicity = static_cast<int>(j - i);
        double sum = 0.0;
        for (std::size_t k = i; k < j; ++k) {
            sum += values[k];
            g.basis.push_back(vectors[k]);
        }
        g.value = sum / g.multiplicity;
        table.groups.push_back(std::move(g));
        i = j;
    }
    for (std::size_t k = 1; k < table.groups.size(); ++k)
        if (table.groups[k].value - table.groups[k - 1].value < 2.0 * eps_group)
            throw AmbiguousGrouping("group_eigenvalues: groups at " +
                                    std::to_string(table.groups[k - 1].value) + " and " +
                                    std::to_string(table.groups[k].value));
    return table;
}

namespace {

void refine(const std::vector<ComplexMatrix>& ops, std::size_t level,
            const std::vector<RealVec>& basis, std::vector<double>& prefix,
            double eps_group, double sym_tol, std::vector<JointBlock>& out) {
    if (level == ops.size()) {
        out.push_back({prefix, basis});
        return;
    }
    const int k = static_cast<int>(basis.size());
    const int ambient = static_cast<int>(basis[0].size());
    const ComplexMatrix& op = ops[level];
    if (op.rows() != ambient) throw DimensionMismatch("simultaneous_diagonalize: operator shape");

    // restriction of op to span(basis), coordinates in `basis`
    ComplexMatrix restricted(k, k);
    for (int j = 0; j < k; ++j) {
        RealVec img(ambient, 0.0);
        for (int r = 0; r < ambient; ++r) {
            double s = 0.0;
            for (int c = 0; c < ambient; ++c) s += op(r, c).real() * basis[j][c];
            img[r] = s;
        }
        for (int i = 0; i < k; ++i) {
            double s = 0.0;
            for (int r = 0; r < ambient; ++r) s += basis[i][r] * img[r];
            restricted(i, j) = s;
        }
    }

    const EigResult eig = hermitian_eig(restricted, sym_tol);
    const std::vector<RealVec> cols = real_columns(eig.vectors, sym_tol);
    const SpectralTable grouped = group_eigenvalues(eig.values, cols, eps_group);

    for (const auto& g : grouped.groups) {
        std::vector<RealVec> lifted;
        for (const auto& coords : g.basis) {
            RealVec v(ambient, 0.0);
            for (int i = 0; i < k; ++i)
                for (int r = 0; r < ambient; ++r) v[r] += coords[i] * basis[i][r];
            lifted.push_back(std::move(v));
        }
        prefix.push_back(g.value);
        refine(ops, level + 1, lifted, prefix, eps_group, sym_tol, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<JointBlock> simultaneous_diagonalize(const std::vector<ComplexMatrix>& ops,
                                                 double eps_group, double sym_tol) {
    if (ops.empty()) throw DimensionMismatch("simultaneous_diagonalize: no operators");
    const int n = ops[0].rows();
    std::vector<RealVec> full;
    for (int i = 0; i < n; ++i) {
        RealVec e(n, 0.0);
        e[i] = 1.0;
        full.push_back(std::move(e));
    }
    std::vector<JointBlock> out;
    std::vector<double> prefix;
    refine(ops, 0, full, prefix, eps_group, sym_tol, out);
    return out;
}

}  // namespace ncgrass
