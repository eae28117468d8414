#pragma once

#include "bellforge/fock.hpp"
#include "bellforge/matrix.hpp"

namespace bellforge {

/// Ryser's formula with Gray-code subset iteration, O(2^n * n).
/// perm of the empty (0x0) matrix is 1.
cplx permanent_ryser(const ComplexMatrix& a);

/// Direct sum over all n! column permutations. Test oracle; n <= 8.
cplx permanent_naive(const ComplexMatrix& a);

/// U_{t,s}: column j of U repeated s_j times, row i repeated t_i times,
/// in ascending mode order. Requires sum(s) == sum(t).
ComplexMatrix build_submatrix(const ComplexMatrix& u, const OccupationVector& input,
                              const OccupationVector& output);

/// c_{t,s} = perm(U_{t,s}) / sqrt(t! * s!).
cplx transition_amplitude(const ComplexMatrix& u, const OccupationVector& input,
                          const OccupationVector& output);

}  // namespace bellforge
