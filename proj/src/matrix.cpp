#include "bellforge/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellforge {

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    ComplexMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const cplx a = (*this)(i, k);
            if (a == cplx{}) continue;
            for (int j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

double ComplexMatrix::unitarity_defect() const {
    if (!square()) throw std::invalid_argument("unitarity_defect: non-square matrix");
    const ComplexMatrix g = adjoint() * (*this);
    double defect = 0.0;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            const cplx expect = (i == j) ? cplx{1.0} : cplx{};
            defect = std::max(defect, std::abs(g(i, j) - expect));
        }
    }
    return defect;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double d = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k)
        d = std::max(d, std::abs(data_[k] - other.data_[k]));
    return d;
}

}  // namespace bellforge
