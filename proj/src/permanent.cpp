#include "bellforge/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace bellforge {

cplx permanent_ryser(const ComplexMatrix& a) {
    if (!a.square()) throw std::invalid_argument("permanent: non-square matrix");
    const int n = a.rows();
    if (n == 0) return 1.0;
    if (n > 30) throw std::invalid_argument("permanent_ryser: n too large");

    // perm(A) = (-1)^n sum_{S != {}} (-1)^|S| prod_i sum_{j in S} a_ij.
    // Subsets visited in Gray-code order; row sums updated incrementally.
    std::vector<cplx> rowsum(static_cast<std::size_t>(n));
    cplx total = 0;
    std::uint64_t gray_prev = 0;
    const std::uint64_t end = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < end; ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const std::uint64_t diff = gray ^ gray_prev;
        const int j = std::countr_zero(diff);
        const double col_sign = (gray & diff) ? 1.0 : -1.0;
        cplx prod = 1.0;
        for (int i = 0; i < n; ++i) {
            rowsum[static_cast<std::size_t>(i)] += col_sign * a(i, j);
            prod *= rowsum[static_cast<std::size_t>(i)];
        }
        total += (std::popcount(gray) & 1) ? -prod : prod;
        gray_prev = gray;
    }
    return (n & 1) ? -total : total;
}

cplx permanent_naive(const ComplexMatrix& a) {
    if (!a.square()) throw std::invalid_argument("permanent: non-square matrix");
    const int n = a.rows();
    if (n == 0) return 1.0;
    if (n > 8) throw std::invalid_argument("permanent_naive: n > 8");

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    cplx total = 0;
    do {
        cplx prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= a(i, perm[static_cast<std::size_t>(i)]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

ComplexMatrix build_submatrix(const ComplexMatrix& u, const OccupationVector& input,
                              const OccupationVector& output) {
    if (input.n_modes() != u.cols() || output.n_modes() != u.rows())
        throw std::invalid_argument("build_submatrix: occupation length != matrix dimension");
    const int m = input.total();
    if (m != output.total())
        throw std::invalid_argument("build_submatrix: photon count mismatch between s and t");

    std::vector<int> rows, cols;
    rows.reserve(static_cast<std::size_t>(m));
    cols.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < output.n_modes(); ++i)
        for (int r = 0; r < output[i]; ++r) rows.push_back(i);
    for (int j = 0; j < input.n_modes(); ++j)
        for (int r = 0; r < input[j]; ++r) cols.push_back(j);

    ComplexMatrix sub(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            sub(i, j) = u(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
    return sub;
}

namespace {

double factorial_product(const OccupationVector& occ) {
    double p = 1.0;
    for (int v : occ.counts)
        for (int k = 2; k <= v; ++k) p *= k;
    return p;
}

}  // namespace

cplx transition_amplitude(const ComplexMatrix& u, const OccupationVector& input,
                          const OccupationVector& output) {
    const cplx perm = permanent_ryser(build_submatrix(u, input, output));
    return perm / std::sqrt(factorial_product(input) * factorial_product(output));
}

}  // namespace bellforge
