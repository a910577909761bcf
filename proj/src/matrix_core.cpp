#include "dqm/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dqm/quaternion_solvers.hpp"

namespace dqm {

QMatrix standard_part(const DQMatrix& a) {
    QMatrix s(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.size(); ++k) s.entries()[k] = a.entries()[k].st;
    return s;
}

QMatrix infinitesimal_part(const DQMatrix& a) {
    QMatrix s(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.size(); ++k) s.entries()[k] = a.entries()[k].in;
    return s;
}

DQMatrix compose(const QMatrix& st, const QMatrix& in) {
    if (st.rows() != in.rows() || st.cols() != in.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "standard and infinitesimal parts differ in shape");
    }
    DQMatrix a(st.rows(), st.cols());
    for (std::size_t k = 0; k < a.size(); ++k) a.entries()[k] = {st.entries()[k], in.entries()[k]};
    return a;
}

DQMatrix embed(const QMatrix& st) { return compose(st, QMatrix(st.rows(), st.cols())); }

bool is_appreciable(const DQMatrix& a) {
    return std::any_of(a.entries().begin(), a.entries().end(), [](const DualQuaternion& q) { return is_appreciable(q); });
}

DualQuaternion inner_product(std::span<const DualQuaternion> u, std::span<const DualQuaternion> v) {
    if (u.size() != v.size()) throw Error(ErrorCode::DimensionMismatch, "inner product of vectors of different length");
    DualQuaternion s;
    for (std::size_t i = 0; i < u.size(); ++i) s += conj(v[i]) * u[i];
    return s;
}

Quaternion inner_product(std::span<const Quaternion> u, std::span<const Quaternion> v) {
    if (u.size() != v.size()) throw Error(ErrorCode::DimensionMismatch, "inner product of vectors of different length");
    Quaternion s;
    for (std::size_t i = 0; i < u.size(); ++i) s += conj(v[i]) * u[i];
    return s;
}

DualNumber vec_norm2(std::span<const DualQuaternion> u) {
    double st2 = 0.0;
    double cross = 0.0;
    double in2 = 0.0;
    for (const auto& q : u) {
        st2 += norm2(q.st);
        cross += real_dot(q.st, q.in);
        in2 += norm2(q.in);
    }
    if (st2 > 0.0) {
        const double n = std::sqrt(st2);
        return {n, cross / n};
    }
    return {0.0, std::sqrt(in2)};
}

DualNumber vec_norm2(std::span<const DualNumber> u) {
    double st2 = 0.0;
    double cross = 0.0;
    double in2 = 0.0;
    for (const auto& d : u) {
        st2 += d.st * d.st;
        cross += d.st * d.in;
        in2 += d.in * d.in;
    }
    if (st2 > 0.0) {
        const double n = std::sqrt(st2);
        return {n, cross / n};
    }
    return {0.0, std::sqrt(in2)};
}

double vec_norm2(std::span<const Quaternion> u) {
    double s = 0.0;
    for (const auto& q : u) s += norm2(q);
    return std::sqrt(s);
}

DQVector matvec(const DQMatrix& a, std::span<const DualQuaternion> x) {
    if (a.cols() != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shapes differ");
    DQVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

DQMatrix matmul(const DQMatrix& a, const DQMatrix& b) { return a * b; }

DualQuaternion trace(const DQMatrix& a) {
    if (!a.is_square()) throw Error(ErrorCode::NotSquare, "trace of a non-square matrix");
    DualQuaternion s;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
    return s;
}

Quaternion trace(const QMatrix& a) {
    if (!a.is_square()) throw Error(ErrorCode::NotSquare, "trace of a non-square matrix");
    Quaternion s;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
    return s;
}

DualNumber frobenius_norm(const DQMatrix& a) { return vec_norm2(a.entries()); }

double frobenius_norm(const QMatrix& a) { return vec_norm2(a.entries()); }

double default_tolerance(const DQMatrix& a) { return 1e-10 * std::max(1.0, frobenius_norm(a).st); }

double default_tolerance(const QMatrix& a) { return 1e-10 * std::max(1.0, frobenius_norm(a)); }

namespace {

double max_abs_entry(const Quaternion& q) { return max_abs(q); }
double max_abs_entry(const DualQuaternion& q) { return std::fmax(max_abs(q.st), max_abs(q.in)); }

template <class M>
bool hermitian_within(const M& a, double tol) {
    if (!a.is_square()) throw Error(ErrorCode::NotSquare, "Hermitian test on a non-square matrix");
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j) {
            if (max_abs_entry(a(i, j) - conj(a(j, i))) > tol) return false;
        }
    return true;
}

template <class M>
bool partially_unitary_within(const M& a, double tol) {
    if (a.cols() > a.rows()) throw Error(ErrorCode::DimensionMismatch, "partially unitary needs cols <= rows");
    const M g = conj_transpose(a) * a;
    const M eye = M::identity(a.cols());
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (max_abs_entry(g.entries()[k] - eye.entries()[k]) > tol) return false;
    }
    return true;
}

}  // namespace

bool is_hermitian(const DQMatrix& a, std::optional<double> tol) {
    return hermitian_within(a, tol.value_or(default_tolerance(a)));
}

bool is_hermitian(const QMatrix& a, std::optional<double> tol) {
    return hermitian_within(a, tol.value_or(default_tolerance(a)));
}

bool is_partially_unitary(const DQMatrix& a, std::optional<double> tol) {
    return partially_unitary_within(a, tol.value_or(1e-10));
}

bool is_partially_unitary(const QMatrix& a, std::optional<double> tol) {
    return partially_unitary_within(a, tol.value_or(1e-10));
}

bool orthonormal_check(std::span<const DQVector> vectors, double tol) {
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < vectors.size(); ++j) {
            DualQuaternion g = inner_product(vectors[i], vectors[j]);
            if (i == j) g -= DualQuaternion(1.0);
            if (max_abs_entry(g) > tol) return false;
        }
    return true;
}

bool has_full_column_rank_st(const DQMatrix& a, std::optional<double> tol) {
    const QMatrix st = standard_part(a);
    if (st.cols() > st.rows()) return false;
    const double cut = tol.value_or(default_tolerance(st));
    const auto svd = quat_svd(st);
    return std::all_of(svd.sigmas.begin(), svd.sigmas.end(), [cut](double s) { return s > cut; });
}

DQMatrix orthonormalize_columns(const DQMatrix& a) {
    if (a.cols() > a.rows()) throw Error(ErrorCode::DimensionMismatch, "more columns than rows");
    DQMatrix q(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        DQVector c = a.column(j);
        const double original = vec_norm2(c).st;
        // Two passes of classical Gram-Schmidt keep the result orthonormal to rounding.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < j; ++p) {
                const DQVector u = q.column(p);
                const DualQuaternion coeff = inner_product(c, u);
                for (std::size_t i = 0; i < c.size(); ++i) c[i] -= u[i] * coeff;
            }
        }
        const DualNumber n = vec_norm2(c);
        // cancellation leaves rounding noise where the exact standard part is zero
        if (n.st <= 1e3 * std::numeric_limits<double>::epsilon() * original) {
            throw Error(ErrorCode::PreconditionViolated, "column is right linearly dependent on its predecessors");
        }
        const DualQuaternion scale(inverse(n));
        for (auto& v : c) v = v * scale;
        q.set_column(j, c);
    }
    return q;
}

PartResidual part_residual(const DQMatrix& a, const DQMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "shapes differ");
    double st = 0.0;
    double in = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const DualQuaternion d = a.entries()[k] - b.entries()[k];
        st += norm2(d.st);
        in += norm2(d.in);
    }
    return {std::sqrt(st), std::sqrt(in)};
}

double max_abs(const DQMatrix& a) {
    double m = 0.0;
    for (const auto& q : a.entries()) m = std::fmax(m, max_abs_entry(q));
    return m;
}

double max_abs(const QMatrix& a) {
    double m = 0.0;
    for (const auto& q : a.entries()) m = std::fmax(m, max_abs(q));
    return m;
}

}  // namespace dqm
