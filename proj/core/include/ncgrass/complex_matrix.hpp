#pragma once

#include <complex>
#include <vector>

namespace ncgrass {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Sized for this project: dimensions stay
/// below a few hundred, so no blocking or views, just plain storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);

    static ComplexMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Complex& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * cols_ + j];
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;

    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    /// max_ij |a_ij - conj(a_ji)|
    double hermitian_defect() const;

    bool approx_equal(const ComplexMatrix& o, double tol) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Complex> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(double s, ComplexMatrix a);

}  // namespace ncgrass
