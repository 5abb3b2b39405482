#ifndef CSSBL_TESTS_VBEM_ORACLE_HPP
#define CSSBL_TESTS_VBEM_ORACLE_HPP

// Brute-force re-derivation of one inference pass, used to cross-check the
// engine. Everything is deliberately naive: Gauss-Jordan inverses, scalar
// loops with blocks outermost and samples innermost, no shared helpers
// beyond digamma. Keep it slow and obvious.

#include <cmath>
#include <cstdlib>
#include <vector>

#include "cssbl/block_structure.hpp"
#include "cssbl/fault_model.hpp"
#include "cssbl/numerics.hpp"
#include "cssbl/types.hpp"
#include "cssbl/vb_state.hpp"

namespace oracle {

using cssbl::Matrix;
using cssbl::Vector;

// Gauss-Jordan with partial pivoting.
inline Matrix dense_inverse(Matrix a) {
    const int n = static_cast<int>(a.rows());
    Matrix inv = Matrix::Identity(n, n);
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row) {
            if (std::abs(a(row, col)) > std::abs(a(pivot, col))) {
                pivot = row;
            }
        }
        a.row(col).swap(a.row(pivot));
        inv.row(col).swap(inv.row(pivot));
        const double p = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (int row = 0; row < n; ++row) {
            if (row == col) {
                continue;
            }
            const double f = a(row, col);
            for (int j = 0; j < n; ++j) {
                a(row, j) -= f * a(col, j);
                inv(row, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

// log|det| via elimination with partial pivoting; callers only pass PD input.
inline double log_det(Matrix a) {
    const int n = static_cast<int>(a.rows());
    double acc = 0.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row) {
            if (std::abs(a(row, col)) > std::abs(a(pivot, col))) {
                pivot = row;
            }
        }
        a.row(col).swap(a.row(pivot));
        acc += std::log(std::abs(a(col, col)));
        for (int row = col + 1; row < n; ++row) {
            const double f = a(row, col) / a(col, col);
            for (int j = col; j < n; ++j) {
                a(row, j) -= f * a(col, j);
            }
        }
    }
    return acc;
}

// Unit diagonal, constant off-diagonal, filled entry by entry.
inline Matrix equicorr(int d, double k) {
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            m(i, j) = i == j ? 1.0 : k;
        }
    }
    return m;
}

struct Step {
    std::vector<Vector> mu;
    std::vector<Matrix> sigma;
    Matrix gamma_a;
    Matrix gamma_b;
    Matrix resp;
    double alpha_a = 0.0;
    double alpha_b = 0.0;
};

// One coordinate-ascent pass (posteriors, gamma, responsibilities, alpha)
// starting from `from`, each stage consuming the previous stage's output.
inline Step estep(const cssbl::VbState& from, const cssbl::BlockStructure& structure,
                  const Matrix& phi, const Matrix& y, const cssbl::Hyperpriors& hyper,
                  double resp_floor) {
    const int K = from.num_samples();
    const int G = from.num_groups();
    const int R = structure.num_blocks();
    const int N = structure.dimension();
    const int M = static_cast<int>(phi.rows());

    std::vector<Matrix> b_prec(static_cast<std::size_t>(R));
    for (int r = 0; r < R; ++r) {
        b_prec[static_cast<std::size_t>(r)] =
            dense_inverse(equicorr(structure.block(r).size, from.corr.coefficient(r)));
    }

    Matrix gram = Matrix::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            for (int m = 0; m < M; ++m) {
                gram(i, j) += phi(m, i) * phi(m, j);
            }
        }
    }

    Step out;
    out.mu.resize(static_cast<std::size_t>(K));
    out.sigma.resize(static_cast<std::size_t>(K));
    const double alpha_mean = from.alpha_a / from.alpha_b;
    for (int k = 0; k < K; ++k) {
        Matrix a = alpha_mean * gram;
        for (int r = 0; r < R; ++r) {
            double w = 0.0;
            for (int g = 0; g < G; ++g) {
                w += from.resp(k, g) * from.gamma_a(g, r) / from.gamma_b(g, r);
            }
            const int off = structure.offset(r);
            const int d = structure.block(r).size;
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    a(off + i, off + j) += w * b_prec[static_cast<std::size_t>(r)](i, j);
                }
            }
        }
        out.sigma[static_cast<std::size_t>(k)] = dense_inverse(a);
        Vector rhs = Vector::Zero(N);
        for (int i = 0; i < N; ++i) {
            for (int m = 0; m < M; ++m) {
                rhs(i) += phi(m, i) * y(m, k);
            }
        }
        Vector mu = Vector::Zero(N);
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) {
                mu(i) += out.sigma[static_cast<std::size_t>(k)](i, j) * rhs(j);
            }
            mu(i) *= alpha_mean;
        }
        out.mu[static_cast<std::size_t>(k)] = mu;
    }

    // moment(k, r) = mu' B mu + Tr(B Sigma), from the fresh posteriors.
    Matrix moment = Matrix::Zero(K, R);
    for (int r = 0; r < R; ++r) {
        const int off = structure.offset(r);
        const int d = structure.block(r).size;
        const Matrix& b = b_prec[static_cast<std::size_t>(r)];
        for (int k = 0; k < K; ++k) {
            double quad = 0.0;
            double trace = 0.0;
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    quad += out.mu[static_cast<std::size_t>(k)](off + i) * b(i, j) *
                            out.mu[static_cast<std::size_t>(k)](off + j);
                    trace += b(i, j) * out.sigma[static_cast<std::size_t>(k)](off + j, off + i);
                }
            }
            moment(k, r) = quad + trace;
        }
    }

    out.gamma_a.resize(G, R);
    out.gamma_b.resize(G, R);
    for (int r = 0; r < R; ++r) {
        const int d = structure.block(r).size;
        for (int g = 0; g < G; ++g) {
            double a = 2.0 * hyper.gamma_a - 1.0;
            double b = 2.0 * hyper.gamma_b;
            for (int k = 0; k < K; ++k) {
                a += d * from.resp(k, g);
                b += from.resp(k, g) * moment(k, r);
            }
            out.gamma_a(g, r) = a > 1e-12 ? a : 1e-12;
            out.gamma_b(g, r) = b > 1e-12 ? b : 1e-12;
        }
    }

    out.resp.resize(K, G);
    for (int k = 0; k < K; ++k) {
        std::vector<double> xi(static_cast<std::size_t>(G), 0.0);
        for (int g = 0; g < G; ++g) {
            for (int r = 0; r < R; ++r) {
                const int d = structure.block(r).size;
                const double a = out.gamma_a(g, r);
                const double b = out.gamma_b(g, r);
                xi[static_cast<std::size_t>(g)] +=
                    d * (cssbl::numerics::digamma(a) - std::log(b)) +
                    log_det(b_prec[static_cast<std::size_t>(r)]) - a / b * moment(k, r);
            }
        }
        double m = xi[0];
        for (double v : xi) {
            m = v > m ? v : m;
        }
        double s = 0.0;
        for (double v : xi) {
            s += std::exp(v - m);
        }
        const double lse = m + std::log(s);
        double sum = 0.0;
        for (int g = 0; g < G; ++g) {
            double p = std::exp(xi[static_cast<std::size_t>(g)] - lse);
            if (!(p > resp_floor)) {
                p = resp_floor;
            }
            out.resp(k, g) = p;
            sum += p;
        }
        for (int g = 0; g < G; ++g) {
            out.resp(k, g) /= sum;
        }
    }

    double resid = 0.0;
    for (int k = 0; k < K; ++k) {
        for (int m = 0; m < M; ++m) {
            double fit = 0.0;
            for (int i = 0; i < N; ++i) {
                fit += phi(m, i) * out.mu[static_cast<std::size_t>(k)](i);
            }
            resid += (y(m, k) - fit) * (y(m, k) - fit);
            for (int i = 0; i < N; ++i) {
                for (int j = 0; j < N; ++j) {
                    resid += phi(m, i) * out.sigma[static_cast<std::size_t>(k)](i, j) * phi(m, j);
                }
            }
        }
    }
    out.alpha_a = hyper.alpha_a + 0.5 * K * M;
    out.alpha_b = hyper.alpha_b + 0.5 * resid;
    return out;
}

// Post-pass correlation re-estimate for one correlated block, from the
// updated state.
inline double mstep_coefficient(const Step& step, const cssbl::BlockStructure& structure,
                                int block, double delta = 1e-6) {
    const int K = static_cast<int>(step.resp.rows());
    const int G = static_cast<int>(step.resp.cols());
    const int off = structure.offset(block);
    const int d = structure.block(block).size;
    Matrix raw = Matrix::Zero(d, d);
    double mass = 0.0;
    for (int k = 0; k < K; ++k) {
        double w = 0.0;
        for (int g = 0; g < G; ++g) {
            w += step.resp(k, g) * step.gamma_a(g, block) / step.gamma_b(g, block);
            mass += step.resp(k, g);
        }
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                raw(i, j) += w * (step.sigma[static_cast<std::size_t>(k)](off + i, off + j) +
                                  step.mu[static_cast<std::size_t>(k)](off + i) *
                                      step.mu[static_cast<std::size_t>(k)](off + j));
            }
        }
    }
    raw /= mass;
    double diag = 0.0;
    double offd = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            (i == j ? diag : offd) += raw(i, j);
        }
    }
    diag /= d;
    offd /= static_cast<double>(d) * (d - 1);
    const double lo = -1.0 / (d - 1) + delta;
    const double hi = 1.0 - delta;
    const double k = offd / diag;
    return k < lo ? lo : (k > hi ? hi : k);
}

} // namespace oracle

#endif
