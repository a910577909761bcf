#include <gtest/gtest.h>

#include <cmath>

#include "dqm/dual_decompositions.hpp"
#include "dqm/error.hpp"
#include "dqm/quaternion_solvers.hpp"
#include "dqm/random.hpp"
#include "eigen_oracle.hpp"

using namespace dqm;

namespace {

const Quaternion I = Quaternion::i();

DQMatrix worked() {
    DQMatrix a = DQMatrix::identity(2);
    a(0, 1).in = I;
    a(1, 0).in = -I;
    return a;
}

DQMatrix infinitesimal_of(const QMatrix& q) { return compose(QMatrix(q.rows(), q.cols()), q); }

void expect_dual(const DualNumber& got, const DualNumber& want, double tol) {
    EXPECT_NEAR(got.st, want.st, tol);
    EXPECT_NEAR(got.in, want.in, tol);
}

double skew_defect(const QMatrix& x) {
    QMatrix s = x + conj_transpose(x);
    return frobenius_norm(s);
}

void expect_valid_eig(const DQMatrix& a, const HermEig& e) {
    const double fs = frobenius_norm(standard_part(a)), fi = frobenius_norm(infinitesimal_part(a));
    const auto r = part_residual(reconstruct(e), a);
    EXPECT_LE(r.st, 1e-8 * (1 + fs));
    EXPECT_LE(r.in, 1e-8 * (1 + fs + fi));
    const auto u = part_residual(conj_transpose(e.u) * e.u, DQMatrix::identity(a.rows()));
    EXPECT_LE(u.st, 1e-8);
    EXPECT_LE(u.in, 1e-8);
    for (std::size_t i = 1; i < e.lambdas.size(); ++i) EXPECT_GE(e.lambdas[i - 1].st, e.lambdas[i].st - 1e-12);
}

void expect_valid_svd(const DQMatrix& a, const DualSVD& d) {
    const double fs = frobenius_norm(standard_part(a)), fi = frobenius_norm(infinitesimal_part(a));
    const auto r = part_residual(reconstruct(d), a);
    EXPECT_LE(r.st, 1e-8 * (1 + fs));
    EXPECT_LE(r.in, 1e-8 * (1 + fs + fi));
    const auto u = part_residual(conj_transpose(d.u) * d.u, DQMatrix::identity(a.rows()));
    const auto v = part_residual(conj_transpose(d.v) * d.v, DQMatrix::identity(a.cols()));
    EXPECT_LE(std::max({u.st, u.in, v.st, v.in}), 1e-8);
}

}  // namespace

TEST(DqHermitianEig, WorkedExample) {
    const HermEig e = dq_hermitian_eig(worked());
    ASSERT_EQ(e.lambdas.size(), 2u);
    expect_dual(e.lambdas[0], {1, 1}, 1e-14);
    expect_dual(e.lambdas[1], {1, -1}, 1e-14);
    expect_valid_eig(worked(), e);
    EXPECT_EQ(e.blocks.sizes, (std::vector<std::size_t>{2}));
}

TEST(DqHermitianEig, DiagonalExample) {
    DQMatrix a(2, 2);
    a(0, 0) = DualQuaternion(3.0);
    a(1, 1) = DualQuaternion(1.0);
    const HermEig e = dq_hermitian_eig(a);
    EXPECT_EQ(e.lambdas[0], DualNumber(3, 0));
    EXPECT_EQ(e.lambdas[1], DualNumber(1, 0));
    EXPECT_EQ(e.u, DQMatrix::identity(2));
}

TEST(DqHermitianEig, InfinitesimalMatrix) {
    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
        const std::size_t m = rng.between(1, 8);
        const QMatrix b = random_qhermitian(rng, m);
        const HermEig e = dq_hermitian_eig(infinitesimal_of(b));
        const auto ref = quat_hermitian_eig(b).values;
        for (std::size_t i = 0; i < m; ++i) expect_dual(e.lambdas[i], {0, ref[i]}, 1e-12);
        expect_valid_eig(infinitesimal_of(b), e);
    }
}

TEST(DqHermitianEig, InfinitesimalPartsMatchFiniteDifferences) {
    Rng rng(2);
    for (int t = 0; t < 60; ++t) {
        const std::size_t m = rng.between(1, 10);
        const DQMatrix a = t % 2 ? random_hermitian(rng, m) : random_clustered_hermitian(rng, m);
        const HermEig e = dq_hermitian_eig(a);
        const auto st = oracle::hermitian_eigenvalues(standard_part(a));
        const auto in = oracle::spectrum_derivative(standard_part(a), infinitesimal_part(a), oracle::hermitian_eigenvalues);
        for (std::size_t i = 0; i < m; ++i) {
            EXPECT_NEAR(e.lambdas[i].st, st[i], 1e-9);
            EXPECT_NEAR(e.lambdas[i].in, in[i], 1e-6) << "trial " << t << " index " << i;
        }
    }
}

TEST(DqHermitianEig, CorrectionIsSkewHermitianAndBlocksCoverSpectrum) {
    Rng rng(3);
    for (int t = 0; t < 30; ++t) {
        const std::size_t m = rng.between(2, 10);
        const HermEig e = dq_hermitian_eig(random_clustered_hermitian(rng, m));
        std::size_t total = 0;
        for (auto k : e.blocks.sizes) total += k;
        EXPECT_EQ(total, m);
        EXPECT_LT(skew_defect(e.blocks.left), 1e-10);
    }
}

TEST(DqHermitianEig, UnitaryInvariance) {
    Rng rng(4);
    for (int t = 0; t < 30; ++t) {
        const std::size_t m = rng.between(1, 8);
        const DQMatrix a = t % 2 ? random_hermitian(rng, m) : random_clustered_hermitian(rng, m);
        const DQMatrix w = embed(random_unitary(rng, m));
        const auto x = eigenvalues(a);
        const auto y = eigenvalues(w * a * conj_transpose(w));
        for (std::size_t i = 0; i < m; ++i) expect_dual(x[i], y[i], 1e-8);
    }
}

TEST(DqHermitianEig, TraceIdentity) {
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        const DQMatrix a = t % 2 ? random_hermitian(rng, rng.between(1, 10)) : random_clustered_hermitian(rng, rng.between(1, 10));
        DualNumber sum;
        for (const auto& l : eigenvalues(a)) sum += l;
        expect_dual(real_part(trace(a)), sum, 1e-10);
    }
}

TEST(DqHermitianEig, Errors) {
    DQMatrix bad = DQMatrix::identity(2);
    bad(0, 1) = DualQuaternion(1.0);
    auto code = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::ParseError;
    };
    EXPECT_EQ(code([&] { (void)dq_hermitian_eig(bad); }), ErrorCode::NotHermitian);
    EXPECT_EQ(code([&] { (void)dq_hermitian_eig(DQMatrix(2, 3)); }), ErrorCode::NotSquare);
    EXPECT_EQ(code([&] { (void)dq_hermitian_eig(DQMatrix()); }), ErrorCode::EmptyMatrix);
    // eigenvalues 1 and 1 + 1e-14 sit below the clustering tolerance's floor but are not merged
    DQMatrix close = DQMatrix::identity(2);
    close(1, 1) = DualQuaternion(1.0 + 1e-14);
    EXPECT_EQ(code([&] { (void)dq_hermitian_eig(close, 0.0); }), ErrorCode::IllConditionedGap);
    EXPECT_NO_THROW((void)dq_hermitian_eig(close));
}

TEST(DqSvd, DiagonalExample) {
    DQMatrix a(2, 2);
    a(0, 0) = DualQuaternion(2.0);
    a(1, 1) = DualQuaternion({}, Quaternion(1));
    const DualSVD d = dq_svd(a);
    EXPECT_EQ(d.sigmas[0], DualNumber(2, 0));
    EXPECT_EQ(d.sigmas[1], DualNumber(0, 1));
    EXPECT_EQ(d.appreciable_rank, 1u);
    EXPECT_EQ(d.rank, 2u);
}

TEST(DqSvd, ZeroMatrix) {
    const DualSVD d = dq_svd(DQMatrix(2, 3));
    EXPECT_EQ(d.sigmas, (std::vector<DualNumber>{{0, 0}, {0, 0}}));
    EXPECT_EQ(d.appreciable_rank, 0u);
    EXPECT_EQ(d.rank, 0u);
    expect_valid_svd(DQMatrix(2, 3), d);
}

TEST(DqSvd, InfinitesimalAndQuaternionOnly) {
    Rng rng(6);
    for (int t = 0; t < 20; ++t) {
        const std::size_t m = rng.between(1, 8), n = rng.between(1, 8);
        const QMatrix b = random_qmatrix(rng, m, n);
        const auto ref = quat_svd(b).sigmas;
        const DualSVD d = dq_svd(infinitesimal_of(b));
        EXPECT_EQ(d.appreciable_rank, 0u);
        for (std::size_t i = 0; i < ref.size(); ++i) expect_dual(d.sigmas[i], {0, ref[i]}, 1e-12);
        const DualSVD q = dq_svd(embed(b));
        for (std::size_t i = 0; i < ref.size(); ++i) expect_dual(q.sigmas[i], {ref[i], 0}, 1e-12);
        expect_valid_svd(infinitesimal_of(b), d);
    }
}

TEST(DqSvd, InfinitesimalPartsMatchFiniteDifferences) {
    Rng rng(7);
    for (int t = 0; t < 60; ++t) {
        const std::size_t m = rng.between(1, 10), n = rng.between(1, 10);
        DQMatrix a;
        if (t % 3 == 0) {
            a = random_general(rng, m, n);
        } else if (t % 3 == 1) {
            a = random_clustered_hermitian(rng, m);
        } else {
            // rank-deficient standard part exercises the zero block
            const std::size_t k = rng.between(1, std::min(m, n));
            const QMatrix st = random_qmatrix(rng, m, k) * random_qmatrix(rng, k, n);
            a = compose(st, random_qmatrix(rng, m, n));
        }
        const DualSVD d = dq_svd(a);
        expect_valid_svd(a, d);
        const auto in = oracle::spectrum_derivative(standard_part(a), infinitesimal_part(a), oracle::singular_values);
        for (std::size_t i = 0; i < d.sigmas.size(); ++i) {
            EXPECT_NEAR(d.sigmas[i].in, in[i], 1e-6) << "trial " << t << " index " << i;
        }
    }
}

TEST(DqSvd, FrobeniusIdentityAndOrder) {
    Rng rng(8);
    for (int t = 0; t < 50; ++t) {
        const DQMatrix a = random_general(rng, rng.between(1, 10), rng.between(1, 10));
        const DualSVD d = dq_svd(a);
        DualNumber sum;
        for (const auto& s : d.sigmas) sum += s * s;
        const DualNumber f = frobenius_norm(a);
        expect_dual(f * f, sum, 1e-10);
        for (std::size_t i = 1; i < d.sigmas.size(); ++i) EXPECT_GE(d.sigmas[i - 1].st, d.sigmas[i].st);
        EXPECT_LT(skew_defect(d.blocks.left), 1e-10);
        EXPECT_LT(skew_defect(d.blocks.right), 1e-10);
    }
}

TEST(DqSvd, RankClasses) {
    // sigma = (3, 0) (0, 2) (0, 0)
    DQMatrix a(3, 4);
    a(0, 0) = DualQuaternion(3.0);
    a(1, 1) = DualQuaternion({}, Quaternion(0, 2, 0, 0));
    const DualSVD d = dq_svd(a);
    EXPECT_EQ(d.appreciable_rank, 1u);
    EXPECT_EQ(d.rank, 2u);
    expect_dual(d.sigmas[0], {3, 0}, 1e-14);
    expect_dual(d.sigmas[1], {0, 2}, 1e-14);
    expect_dual(d.sigmas[2], {0, 0}, 1e-14);
}

TEST(SpectralNorm, Examples) {
    DQMatrix a(2, 2);
    a(0, 0) = DualQuaternion(3.0);
    a(1, 1) = DualQuaternion(DualNumber(1, 5));
    expect_dual(spectral_norm(a), {3, 0}, 1e-14);

    Rng rng(9);
    const QMatrix b = random_qmatrix(rng, 4, 3);
    expect_dual(spectral_norm(infinitesimal_of(b)), {0, quat_svd(b).sigmas[0]}, 1e-12);

    const DQMatrix u = orthonormalize_columns(random_general(rng, 5, 3));
    expect_dual(spectral_norm(u), {1, 0}, 1e-10);
}

TEST(SpectralNorm, BoundsRandomUnitVectors) {
    Rng rng(10);
    for (int t = 0; t < 10; ++t) {
        const DQMatrix a = random_general(rng, rng.between(1, 8), rng.between(1, 8));
        const DualNumber s = spectral_norm(a);
        for (int k = 0; k < 200; ++k) {
            const DualNumber n = vec_norm2(matvec(a, random_unit_vector(rng, a.cols())));
            EXPECT_FALSE(n > s + DualNumber(1e-8, 1e-8));
        }
    }
}
