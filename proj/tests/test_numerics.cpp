#include <doctest.h>

#include <cmath>
#include <vector>

#include "cssbl/correlation_blocks.hpp"
#include "cssbl/errors.hpp"
#include "cssbl/numerics.hpp"
#include "cssbl/rng.hpp"
#include "cssbl/types.hpp"

using cssbl::Matrix;
using cssbl::Rng;
using cssbl::Vector;
namespace num = cssbl::numerics;

namespace {

Matrix random_spd(int n, std::uint64_t seed) {
    Rng rng(seed);
    Matrix a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a(i, j) = rng.gaussian();
        }
    }
    return a * a.transpose() + static_cast<double>(n) * Matrix::Identity(n, n);
}

} // namespace

TEST_CASE("cholesky of the identity is the identity") {
    const Matrix l = num::cholesky_lower(Matrix::Identity(3, 3));
    CHECK((l - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cholesky matches the hand-expanded 2x2 factor") {
    Matrix m(2, 2);
    m << 4, 2, 2, 5;
    Matrix expected(2, 2);
    expected << 2, 0, 1, 2;
    const Matrix l = num::cholesky_lower(m);
    CHECK((l - expected).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(l(0, 1) == 0.0);
}

TEST_CASE("cholesky factor recomposes an equicorrelation block") {
    const Matrix m = cssbl::equicorrelation(3, 0.5);
    const Matrix l = num::cholesky_lower(m);
    CHECK((l * l.transpose() - m).cwiseAbs().maxCoeff() <= 1e-12);
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            CHECK(l(i, j) == 0.0);
        }
    }
}

TEST_CASE("cholesky recomposes random SPD matrices up to order 64") {
    for (int n : {2, 5, 17, 64}) {
        const Matrix m = random_spd(n, 100 + static_cast<std::uint64_t>(n));
        const Matrix l = num::cholesky_lower(m);
        const double scale = m.cwiseAbs().maxCoeff();
        CHECK((l * l.transpose() - m).cwiseAbs().maxCoeff() <= 1e-8 * scale);
    }
}

TEST_CASE("cholesky rejects asymmetric and non-square input") {
    Matrix m(2, 2);
    m << 1, 2, 0, 1;
    CHECK_THROWS_AS(num::cholesky_lower(m), cssbl::DomainError);
    CHECK_THROWS_AS(num::cholesky_lower(Matrix::Zero(2, 3)), cssbl::DimensionMismatch);
}

TEST_CASE("cholesky reports indefinite input after the jitter ladder") {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    CHECK_THROWS_AS(num::cholesky_lower(m), cssbl::NotPositiveDefinite);
}

TEST_CASE("jitter ladder rescues a singular PSD matrix") {
    Matrix m(2, 2);
    m << 1, 1, 1, 1;
    const Matrix l = num::cholesky_lower(m);
    CHECK((l * l.transpose() - m).cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("solve_spd handles identity and diagonal systems") {
    Matrix rhs(2, 1);
    rhs << 2, 4;
    CHECK((num::solve_spd(Matrix::Identity(2, 2), rhs) - rhs).cwiseAbs().maxCoeff() == 0.0);
    Matrix d(2, 2);
    d << 2, 0, 0, 4;
    Matrix ones(2, 1);
    ones << 1, 1;
    CHECK((num::solve_spd(d, rhs) - ones).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("solve_spd leaves a tiny residual on a random SPD system") {
    const Matrix m = random_spd(5, 7);
    Matrix rhs(5, 2);
    Rng rng(8);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 2; ++j) {
            rhs(i, j) = rng.gaussian();
        }
    }
    const Matrix x = num::solve_spd(m, rhs);
    const double scale = rhs.cwiseAbs().maxCoeff();
    CHECK((m * x - rhs).cwiseAbs().maxCoeff() <= 1e-8 * scale);
}

TEST_CASE("invert_spd produces a two-sided inverse") {
    const Matrix m = random_spd(6, 9);
    const Matrix inv = num::invert_spd(m);
    CHECK((m * inv - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((inv - inv.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("digamma matches reference values") {
    CHECK(std::abs(num::digamma(1.0) - (-0.57721566490153286)) <= 1e-10);
    CHECK(std::abs(num::digamma(0.5) - (-1.9635100260214235)) <= 1e-10);
}

TEST_CASE("digamma satisfies the recurrence across four decades") {
    for (double x : {0.1, 0.37, 1.0, 2.5, 9.9, 55.5, 100.0}) {
        CHECK(std::abs(num::digamma(x + 1.0) - num::digamma(x) - 1.0 / x) <= 1e-10);
    }
}

TEST_CASE("digamma agrees with a finite difference of lgamma") {
    const double h = 1e-6;
    for (double x : {0.3, 1.7, 12.0, 80.0}) {
        const double fd = (std::lgamma(x + h) - std::lgamma(x - h)) / (2.0 * h);
        CHECK(std::abs(num::digamma(x) - fd) <= 1e-6);
    }
}

TEST_CASE("digamma rejects the nonpositive domain") {
    CHECK_THROWS_AS(num::digamma(0.0), cssbl::DomainError);
    CHECK_THROWS_AS(num::digamma(-2.5), cssbl::DomainError);
}

TEST_CASE("logsumexp hits closed-form values without overflow") {
    const std::vector<double> twin{0.0, 0.0};
    CHECK(std::abs(num::logsumexp(twin) - std::log(2.0)) <= 1e-15);
    const std::vector<double> large{1000.0, 1000.0};
    CHECK(std::abs(num::logsumexp(large) - (1000.0 + std::log(2.0))) <= 1e-12);
    const std::vector<double> skew{0.0, std::log(3.0)};
    CHECK(std::abs(num::logsumexp(skew) - std::log(4.0)) <= 1e-14);
}

TEST_CASE("logsumexp rejects empty input and shifts by constants") {
    CHECK_THROWS_AS(num::logsumexp(std::vector<double>{}), cssbl::EmptyInput);
    Rng rng(11);
    std::vector<double> v(5);
    for (double& x : v) {
        x = 3.0 * rng.gaussian();
    }
    const double base = num::logsumexp(v);
    for (double c : {-17.3, 0.25, 1e3}) {
        std::vector<double> shifted = v;
        for (double& x : shifted) {
            x += c;
        }
        CHECK(std::abs(num::logsumexp(shifted) - (base + c)) <= 1e-12 * std::max(1.0, std::abs(base + c)));
    }
}

TEST_CASE("softmax normalizes known logits") {
    const std::vector<double> v{0.0, std::log(3.0)};
    const auto p = num::softmax(v);
    CHECK(std::abs(p[0] - 0.25) <= 1e-15);
    CHECK(std::abs(p[1] - 0.75) <= 1e-15);
    CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(num::softmax(std::vector<double>{}), cssbl::EmptyInput);
}

TEST_CASE("softmax is bitwise invariant under exactly representable shifts") {
    const std::vector<double> v{0.5, -1.25, 3.0};
    for (double c : {1024.0, -512.0, 0.03125}) {
        std::vector<double> shifted = v;
        for (double& x : shifted) {
            x += c;
        }
        const auto a = num::softmax(v);
        const auto b = num::softmax(shifted);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i] == b[i]);
        }
    }
}
