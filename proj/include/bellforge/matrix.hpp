#pragma once

#include <complex>
#include <span>
#include <vector>

namespace bellforge {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Small sizes only (N <= 14 in practice).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

    static ComplexMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const cplx& operator()(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }

    std::span<const cplx> data() const { return data_; }

    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix adjoint() const;

    /// max |(U†U − I)_{ij}|; zero for a perfectly unitary matrix.
    double unitarity_defect() const;

    /// max entry-wise absolute difference.
    double max_abs_diff(const ComplexMatrix& other) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> data_;
};

}  // namespace bellforge
