#include <gtest/gtest.h>

#include "dqm/quaternion.hpp"
#include "dqm/random.hpp"

using namespace dqm;

namespace {

void expect_near(const Quaternion& a, const Quaternion& b, double tol) {
    EXPECT_NEAR(a.w, b.w, tol);
    EXPECT_NEAR(a.x, b.x, tol);
    EXPECT_NEAR(a.y, b.y, tol);
    EXPECT_NEAR(a.z, b.z, tol);
}

}  // namespace

TEST(Quaternion, MultiplicationTable) {
    const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
    EXPECT_EQ(i * j, k);
    EXPECT_EQ(j * i, -k);
    EXPECT_EQ(j * k, i);
    EXPECT_EQ(k * j, -i);
    EXPECT_EQ(k * i, j);
    EXPECT_EQ(i * k, -j);
    EXPECT_EQ(i * i, Quaternion(-1));
    EXPECT_EQ(j * j, Quaternion(-1));
    EXPECT_EQ(k * k, Quaternion(-1));
    EXPECT_EQ(i * j * k, Quaternion(-1));
    const Quaternion q(1.5, -2, 3, 0.25);
    EXPECT_EQ(q * Quaternion(1), q);
    EXPECT_EQ(Quaternion(1) * q, q);
}

TEST(Quaternion, ConjugateAndNorm) {
    EXPECT_EQ(conj(Quaternion(1, 1, 1, 1)), Quaternion(1, -1, -1, -1));
    EXPECT_EQ(conj(Quaternion(2.5)), Quaternion(2.5));
    EXPECT_DOUBLE_EQ(norm(Quaternion(1, 1, 1, 1)), 2.0);
    EXPECT_DOUBLE_EQ(norm(Quaternion()), 0.0);
    EXPECT_DOUBLE_EQ(norm(3.0 * Quaternion::i()), 3.0);
}

TEST(Quaternion, ConjugateReversesProducts) {
    Rng rng(1);
    for (int t = 0; t < 1000; ++t) {
        const Quaternion p = random_quaternion(rng), q = random_quaternion(rng);
        expect_near(conj(p * q), conj(q) * conj(p), 1e-15);
    }
}

TEST(Quaternion, InnerProductIdentity) {
    Rng rng(2);
    for (int t = 0; t < 10000; ++t) {
        const Quaternion p = random_quaternion(rng), q = random_quaternion(rng);
        const double dot = 2 * (p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z);
        expect_near(p * conj(q) + q * conj(p), Quaternion(dot), 1e-13);
        expect_near(conj(p) * q + conj(q) * p, Quaternion(dot), 1e-13);
    }
}

TEST(Quaternion, NormIsMultiplicativeAndProductAssociative) {
    Rng rng(3);
    for (int t = 0; t < 5000; ++t) {
        const Quaternion p = random_quaternion(rng), q = random_quaternion(rng), r = random_quaternion(rng);
        EXPECT_NEAR(norm(p * q), norm(p) * norm(q), 1e-12 * std::max(1.0, norm(p) * norm(q)));
        expect_near((p * q) * r, p * (q * r), 1e-12);
    }
}

TEST(Quaternion, Reciprocal) {
    Rng rng(4);
    for (int t = 0; t < 1000; ++t) {
        const Quaternion p = random_quaternion(rng);
        expect_near(p * reciprocal(p), Quaternion(1), 1e-12);
    }
}
