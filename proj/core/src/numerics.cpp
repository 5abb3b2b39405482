#include "cssbl/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>

namespace cssbl::numerics {

namespace {

void check_square(const Matrix& m, const char* op) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw DimensionMismatch(std::string(op) + ": matrix must be square and non-empty, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

// (m + m^T)/2 after rejecting asymmetry beyond tolerance.
Matrix symmetrized(const Matrix& m, const Tolerances& tol, const char* op) {
    check_square(m, op);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol.symmetry * scale) {
        throw DomainError(std::string(op) + ": matrix asymmetry " + std::to_string(asym) +
                          " exceeds tolerance");
    }
    return 0.5 * (m + m.transpose());
}

// LLT with the jitter ladder. Returns the successful factorization.
Eigen::LLT<Matrix> factor_spd(const Matrix& sym, const Tolerances& tol, const char* op) {
    const auto n = sym.rows();
    for (double lambda : tol.jitter) {
        Eigen::LLT<Matrix> llt;
        if (lambda == 0.0) {
            llt.compute(sym);
        } else {
            llt.compute(sym + lambda * Matrix::Identity(n, n));
        }
        if (llt.info() == Eigen::Success) {
            return llt;
        }
    }
    throw NotPositiveDefinite(std::string(op) +
                              ": leading minor <= 0 encountered (after jitter ladder)");
}

} // namespace

Matrix cholesky_lower(const Matrix& m, const Tolerances& tol) {
    const Matrix sym = symmetrized(m, tol, "cholesky_lower");
    return factor_spd(sym, tol, "cholesky_lower").matrixL();
}

Matrix solve_spd(const Matrix& m, const Matrix& rhs, const Tolerances& tol) {
    const Matrix sym = symmetrized(m, tol, "solve_spd");
    if (rhs.rows() != sym.rows()) {
        throw DimensionMismatch("solve_spd: rhs has " + std::to_string(rhs.rows()) +
                                " rows, matrix has " + std::to_string(sym.rows()));
    }
    return factor_spd(sym, tol, "solve_spd").solve(rhs);
}

Matrix invert_spd(const Matrix& m, const Tolerances& tol) {
    const Matrix sym = symmetrized(m, tol, "invert_spd");
    const auto n = sym.rows();
    Matrix inv = factor_spd(sym, tol, "invert_spd").solve(Matrix::Identity(n, n));
    return 0.5 * (inv + inv.transpose());
}

double digamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("digamma: argument must be > 0, got " + std::to_string(x));
    }
    // Psi(x) = Psi(x+1) - 1/x until x >= 10, then the asymptotic series
    // Psi(x) ~ ln x - 1/(2x) - sum_n B_2n / (2n x^2n).
    double result = 0.0;
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // B_2/2, B_4/4, B_6/6, B_8/8, B_10/10, B_12/12
    double series = inv2 * (1.0 / 12.0 +
                    inv2 * (-1.0 / 120.0 +
                    inv2 * (1.0 / 252.0 +
                    inv2 * (-1.0 / 240.0 +
                    inv2 * (1.0 / 132.0 +
                    inv2 * (-691.0 / 32760.0))))));
    result += std::log(x) - 0.5 * inv - series;
    return result;
}

double logsumexp(std::span<const double> v) {
    if (v.empty()) {
        throw EmptyInput("logsumexp: empty input");
    }
    const double m = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(m)) {
        return m; // all -inf, or a +inf/nan dominates
    }
    double sum = 0.0;
    for (double x : v) {
        sum += std::exp(x - m);
    }
    return m + std::log(sum);
}

std::vector<double> softmax(std::span<const double> v) {
    if (v.empty()) {
        throw EmptyInput("softmax: empty input");
    }
    const double m = *std::max_element(v.begin(), v.end());
    std::vector<double> p(v.size());
    if (!std::isfinite(m)) {
        // All -inf (or a non-finite entry dominating): fall back to uniform
        // rather than propagate 0/0.
        std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(v.size()));
        return p;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        p[i] = std::exp(v[i] - m);
        sum += p[i];
    }
    for (double& x : p) {
        x /= sum;
    }
    return p;
}

} // namespace cssbl::numerics
