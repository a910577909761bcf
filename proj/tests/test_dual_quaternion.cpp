#include <gtest/gtest.h>

#include "dqm/dual_quaternion.hpp"
#include "dqm/error.hpp"
#include "dqm/random.hpp"

using namespace dqm;

namespace {

const Quaternion I = Quaternion::i(), J = Quaternion::j(), K = Quaternion::k();

void expect_near(const DualQuaternion& a, const DualQuaternion& b, double tol) {
    EXPECT_LE(max_abs(a.st - b.st), tol);
    EXPECT_LE(max_abs(a.in - b.in), tol);
}

}  // namespace

TEST(DualQuaternion, ProductExamples) {
    EXPECT_EQ(DualQuaternion(I) * DualQuaternion(J), DualQuaternion(K));
    EXPECT_EQ(DualQuaternion({}, I) * DualQuaternion({}, J), DualQuaternion());
    const DualQuaternion q(Quaternion(1, 2, 3, 4), Quaternion(-1, 0.5, 0, 2));
    EXPECT_EQ(DualQuaternion(1.0) * q, q);
}

TEST(DualQuaternion, ConjugateExamples) {
    EXPECT_EQ(conj(DualQuaternion(I, J)), DualQuaternion(-I, -J));
    EXPECT_EQ(conj(DualQuaternion(1.0)), DualQuaternion(1.0));
    Rng rng(1);
    for (int t = 0; t < 500; ++t) {
        const DualQuaternion p = random_dual_quaternion(rng), q = random_dual_quaternion(rng);
        expect_near(conj(p * q), conj(q) * conj(p), 1e-15);
    }
}

TEST(DualQuaternion, MagnitudeExamples) {
    EXPECT_EQ(magnitude(DualQuaternion(I, J)), DualNumber(1, 0));
    EXPECT_EQ(magnitude(DualQuaternion(Quaternion(2), Quaternion(2))), DualNumber(2, 2));
    EXPECT_EQ(magnitude(DualQuaternion({}, 3.0 * I)), DualNumber(0, 3));
}

TEST(DualQuaternion, MagnitudeReducesToAbsAndNorm) {
    Rng rng(2);
    for (int t = 0; t < 1000; ++t) {
        const DualNumber d = random_dual_mixed(rng);
        const DualNumber m = magnitude(DualQuaternion(d));
        EXPECT_DOUBLE_EQ(m.st, abs(d).st);
        EXPECT_NEAR(m.in, abs(d).in, 1e-15);
        const Quaternion q = random_quaternion(rng);
        EXPECT_EQ(magnitude(DualQuaternion(q)), DualNumber(norm(q), 0));
    }
}

TEST(DualQuaternion, MagnitudeMatchesSymmetricFormula) {
    Rng rng(3);
    for (int t = 0; t < 1000; ++t) {
        const DualQuaternion q = random_dual_quaternion(rng);
        const Quaternion num = q.st * conj(q.in) + q.in * conj(q.st);
        EXPECT_LT(max_abs(num.imag()), 1e-13);
        EXPECT_NEAR(magnitude(q).in, num.w / (2 * norm(q.st)), 1e-13);
    }
}

TEST(DualQuaternion, InverseExamples) {
    EXPECT_EQ(inverse(DualQuaternion(I)), DualQuaternion(-I));
    EXPECT_EQ(inverse(DualQuaternion(Quaternion(1), J)), DualQuaternion(Quaternion(1), -J));
    try {
        (void)inverse(DualQuaternion({}, Quaternion(1)));
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Singular);
    }
}

TEST(DualQuaternion, InverseBothSides) {
    Rng rng(4);
    for (int t = 0; t < 1000; ++t) {
        const DualQuaternion q = random_dual_quaternion(rng);
        const DualQuaternion r = inverse(q);
        const double scale = std::max(1.0, norm(r.in));
        expect_near(q * r, DualQuaternion(1.0), 1e-12 * scale);
        expect_near(r * q, DualQuaternion(1.0), 1e-12 * scale);
    }
}

TEST(DualQuaternion, Appreciable) {
    EXPECT_TRUE(is_appreciable(DualQuaternion(I)));
    EXPECT_FALSE(is_appreciable(DualQuaternion({}, K)));
    EXPECT_FALSE(is_appreciable(DualQuaternion()));
}
