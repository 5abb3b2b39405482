#ifndef CSSBL_NUMERICS_HPP
#define CSSBL_NUMERICS_HPP

#include <array>
#include <span>
#include <vector>

#include "cssbl/errors.hpp"
#include "cssbl/types.hpp"

namespace cssbl::numerics {

// Module tolerances. Call sites never pass literals; override by passing a
// modified copy of this struct.
struct Tolerances {
    // Max allowed relative asymmetry before an input is rejected.
    double symmetry = 1e-10;
    // Contractual relative max-norm bound on L*L^T reconstruction.
    double reconstruction = 1e-8;
    // Escalating diagonal jitter tried when a factorization meets a
    // non-positive leading minor. VBEM iterates can graze the PD boundary.
    std::array<double, 4> jitter{0.0, 1e-12, 1e-10, 1e-8};
};

// Lower-triangular L with L*L^T = m. The input is symmetrized as
// (m + m^T)/2 first; the jitter ladder is applied before giving up.
// Throws NotPositiveDefinite if every rung fails, DomainError if the input
// is not square or exceeds the symmetry tolerance.
Matrix cholesky_lower(const Matrix& m, const Tolerances& tol = {});

// Solve m * X = rhs for symmetric positive definite m.
Matrix solve_spd(const Matrix& m, const Matrix& rhs, const Tolerances& tol = {});

// Inverse of a symmetric positive definite matrix, symmetrized on return.
Matrix invert_spd(const Matrix& m, const Tolerances& tol = {});

// Digamma function Psi(x) for x > 0, absolute error <= 1e-10.
// Recurrence shifts the argument above 10, then an asymptotic series.
double digamma(double x);

// log(sum_i exp(v_i)) with max subtraction; finite for any finite input.
double logsumexp(std::span<const double> v);

// exp(v_i - max) / sum_j exp(v_j - max): the stabilized softmax. Adding a
// constant to every v_i leaves the result bitwise unchanged whenever the
// shifted entries are exactly representable, since only the differences
// v_i - max enter.
std::vector<double> softmax(std::span<const double> v);

} // namespace cssbl::numerics

#endif
