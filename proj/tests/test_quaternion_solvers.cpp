#include <gtest/gtest.h>

#include <cmath>

#include "dqm/error.hpp"
#include "dqm/quaternion_solvers.hpp"
#include "dqm/random.hpp"
#include "eigen_oracle.hpp"

using namespace dqm;

namespace {

const Quaternion I = Quaternion::i(), J = Quaternion::j();

QMatrix diag(std::initializer_list<double> d) {
    QMatrix a(d.size(), d.size());
    std::size_t i = 0;
    for (double v : d) {
        a(i, i) = Quaternion(v);
        ++i;
    }
    return a;
}

QMatrix reconstruct_eig(const QuatEig& e) {
    QMatrix d(e.values.size(), e.values.size());
    for (std::size_t i = 0; i < e.values.size(); ++i) d(i, i) = Quaternion(e.values[i]);
    return e.vectors * d * conj_transpose(e.vectors);
}

QMatrix reconstruct_svd(const QuatSvd& s, std::size_t m, std::size_t n) {
    QMatrix d(m, n);
    for (std::size_t i = 0; i < s.sigmas.size(); ++i) d(i, i) = Quaternion(s.sigmas[i]);
    return s.u * d * conj_transpose(s.v);
}

double unitarity(const QMatrix& u) {
    QMatrix r = conj_transpose(u) * u;
    r -= QMatrix::identity(u.cols());
    return frobenius_norm(r);
}

}  // namespace

TEST(ComplexAdjoint, Examples) {
    QMatrix j(1, 1);
    j(0, 0) = J;
    const CMatrix c = complex_adjoint(j).matrix();
    EXPECT_EQ(c(0, 0), Complex(0));
    EXPECT_EQ(c(0, 1), Complex(1));
    EXPECT_EQ(c(1, 0), Complex(-1));
    EXPECT_EQ(c(1, 1), Complex(0));
    EXPECT_EQ(complex_adjoint(QMatrix::identity(3)).matrix(), CMatrix::identity(6));
}

TEST(ComplexAdjoint, MultiplicativeAndInvertible) {
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        const std::size_t m = rng.between(1, 5), n = rng.between(1, 5), p = rng.between(1, 5);
        const QMatrix a = random_qmatrix(rng, m, n), b = random_qmatrix(rng, n, p);
        CMatrix diff = complex_adjoint(a * b).matrix() - complex_adjoint(a).matrix() * complex_adjoint(b).matrix();
        double worst = 0;
        for (const auto& z : diff.entries()) worst = std::max(worst, std::abs(z));
        EXPECT_LT(worst, 1e-12);
        EXPECT_EQ(complex_adjoint(a).to_quaternion(), a);
        EXPECT_NO_THROW((void)ComplexAdjoint::from_complex(complex_adjoint(a).matrix()));
    }
    CMatrix broken = complex_adjoint(QMatrix::identity(2)).matrix();
    broken(0, 3) = Complex(1);
    EXPECT_THROW((void)ComplexAdjoint::from_complex(broken), Error);
}

TEST(ComplexHermitianEig, Examples) {
    CMatrix d = CMatrix::identity(2);
    d(0, 0) = 2;
    auto e = complex_hermitian_eig(d);
    EXPECT_DOUBLE_EQ(e.values[0], 2);
    EXPECT_DOUBLE_EQ(e.values[1], 1);

    CMatrix s(2, 2);
    s(0, 1) = s(1, 0) = 1;
    e = complex_hermitian_eig(s);
    EXPECT_NEAR(e.values[0], 1, 1e-14);
    EXPECT_NEAR(e.values[1], -1, 1e-14);

    e = complex_hermitian_eig(CMatrix::identity(4));
    for (double v : e.values) EXPECT_DOUBLE_EQ(v, 1);
}

TEST(QuatHermitianEig, Examples) {
    QMatrix h(2, 2);
    h(0, 1) = I;
    h(1, 0) = -I;
    auto e = quat_hermitian_eig(h);
    EXPECT_NEAR(e.values[0], 1, 1e-14);
    EXPECT_NEAR(e.values[1], -1, 1e-14);

    e = quat_hermitian_eig(QMatrix::identity(4));
    for (double v : e.values) EXPECT_DOUBLE_EQ(v, 1);
    EXPECT_LT(frobenius_norm(reconstruct_eig(e) - QMatrix::identity(4)), 1e-14);

    e = quat_hermitian_eig(diag({1, 3}));
    EXPECT_EQ(e.values, (std::vector<double>{3, 1}));
    EXPECT_NEAR(norm(e.vectors(1, 0)), 1, 1e-15);
    EXPECT_EQ(e.vectors(1, 0), Quaternion(1));  // gauge: real, nonnegative

    QMatrix bad(2, 2);
    bad(0, 1) = I;
    bad(1, 0) = I;
    EXPECT_THROW((void)quat_hermitian_eig(bad), Error);
}

TEST(QuatHermitianEig, MatchesEigenOracle) {
    Rng rng(2);
    for (int t = 0; t < 100; ++t) {
        const std::size_t m = rng.between(1, 12);
        const QMatrix h = t % 2 ? random_qhermitian(rng, m) : clustered_hermitian_standard(rng, m);
        const auto e = quat_hermitian_eig(h);
        const auto ref = oracle::hermitian_eigenvalues(h);
        for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(e.values[i], ref[i], 1e-12);
        EXPECT_LT(frobenius_norm(reconstruct_eig(e) - h), 1e-10 * (1 + frobenius_norm(h)));
        EXPECT_LT(unitarity(e.vectors), 1e-10);
        for (std::size_t i = 1; i < m; ++i) EXPECT_GE(e.values[i - 1], e.values[i]);
    }
}

TEST(QuatHermitianEig, GaugeFixedColumns) {
    Rng rng(3);
    const auto e = quat_hermitian_eig(random_qhermitian(rng, 6));
    for (std::size_t j = 0; j < 6; ++j) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < 6; ++i)
            if (norm(e.vectors(i, j)) > norm(e.vectors(best, j))) best = i;
        EXPECT_LT(max_abs(e.vectors(best, j).imag()), 1e-15);
        EXPECT_GT(e.vectors(best, j).w, 0);
    }
}

TEST(QuatHermitianEig, InvariantUnderUnitQuaternionBasisChange) {
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
        const std::size_t m = rng.between(1, 8);
        const QMatrix h = random_qhermitian(rng, m);
        QMatrix d(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            const Quaternion q = random_quaternion(rng);
            d(i, i) = q * (1 / norm(q));
        }
        const auto a = quat_hermitian_eig(h).values;
        const auto b = quat_hermitian_eig(conj_transpose(d) * h * d).values;
        for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(a[i], b[i], 1e-10);
    }
}

TEST(QuatSvd, Examples) {
    auto s = quat_svd(diag({2, 1}));
    EXPECT_EQ(s.sigmas, (std::vector<double>{2, 1}));
    QMatrix row(1, 2);
    row(0, 0) = I;
    row(0, 1) = J;
    s = quat_svd(row);
    ASSERT_EQ(s.sigmas.size(), 1u);
    EXPECT_NEAR(s.sigmas[0], std::sqrt(2.0), 1e-15);
    s = quat_svd(QMatrix(3, 2));
    EXPECT_EQ(s.sigmas, (std::vector<double>{0, 0}));
    EXPECT_LT(unitarity(s.u), 1e-15);
}

TEST(QuatSvd, MatchesEigenOracleAndResiduals) {
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        const std::size_t m = rng.between(1, 12), n = rng.between(1, 12);
        QMatrix a = random_qmatrix(rng, m, n);
        if (t % 4 == 0 && n > 1) {
            // rank deficient: duplicate a column
            for (std::size_t i = 0; i < m; ++i) a(i, n - 1) = a(i, 0) * Quaternion(0.5, 0, 1, 0);
        }
        const auto s = quat_svd(a);
        const auto ref = oracle::singular_values(a);
        for (std::size_t i = 0; i < s.sigmas.size(); ++i) EXPECT_NEAR(s.sigmas[i], ref[i], 1e-12);
        EXPECT_LT(frobenius_norm(reconstruct_svd(s, m, n) - a), 1e-10 * (1 + frobenius_norm(a)));
        EXPECT_LT(unitarity(s.u), 1e-10);
        EXPECT_LT(unitarity(s.v), 1e-10);
    }
}

TEST(QuatSvd, SquaredSingularValuesAreGramEigenvalues) {
    Rng rng(6);
    for (int t = 0; t < 50; ++t) {
        const std::size_t m = rng.between(1, 10), n = rng.between(1, 10);
        const QMatrix a = random_qmatrix(rng, m, n);
        const auto s = quat_svd(a).sigmas;
        const auto g = quat_hermitian_eig(conj_transpose(a) * a).values;
        for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], std::sqrt(std::max(0.0, g[i])), 1e-8 * std::max(1.0, s[i]));
    }
}

TEST(CompleteUnitary, ExtendsOrthonormalColumns) {
    Rng rng(7);
    QMatrix u = random_unitary(rng, 5);
    complete_unitary(u, 2);
    EXPECT_LT(unitarity(u), 1e-13);
    QMatrix z(4, 4);
    complete_unitary(z, 0);
    EXPECT_LT(unitarity(z), 1e-13);
}
