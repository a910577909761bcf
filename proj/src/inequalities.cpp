#include "dqm/inequalities.hpp"

#include <algorithm>
#include <cmath>

namespace dqm {

namespace {

double tie_scale(double a, double b) { return std::max({1.0, std::fabs(a), std::fabs(b)}); }

bool tolerant_nonascending(std::span<const DualNumber> v, const Tolerance& tol) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (compare_tolerant(v[i - 1], v[i], tol) == std::weak_ordering::less) return false;
    return true;
}

void require_same_shape(const DQMatrix& a, const DQMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "operands differ in shape");
}

DualNumber dual_trace(const DQMatrix& m) {
    const DualQuaternion t = trace(m);
    const double scale = std::max(1.0, std::fmax(max_abs(t.st), max_abs(t.in)));
    if (imag_residue(t) > 1e-10 * scale) {
        throw Error(ErrorCode::PreconditionViolated, "trace of a Hermitian expression has an imaginary part");
    }
    return real_part(t);
}

// Spectra computed separately for A and B carry independent rounding, so equal
// standard parts come out a few ulps apart. Left as is, such a difference would
// send vec_norm2 down its appreciable branch and discard the infinitesimal data.
std::vector<DualNumber> spectral_difference(const std::vector<DualNumber>& a, const std::vector<DualNumber>& b,
                                            double eta_st) {
    std::vector<DualNumber> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        d[i] = a[i] - b[i];
        if (std::fabs(d[i].st) <= eta_st * tie_scale(a[i].st, b[i].st)) d[i].st = 0.0;
    }
    return d;
}

}  // namespace

std::weak_ordering compare_tolerant(const DualNumber& p, const DualNumber& q, double eta_st, double eta_in) {
    const double dst = p.st - q.st;
    if (std::fabs(dst) > eta_st * tie_scale(p.st, q.st)) {
        return dst < 0.0 ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    const double din = p.in - q.in;
    if (std::fabs(din) > eta_in * tie_scale(p.in, q.in)) {
        return din < 0.0 ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    return std::weak_ordering::equivalent;
}

InequalityReport make_report(const DualNumber& lhs, const DualNumber& rhs, const Tolerance& tol) {
    InequalityReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.holds = compare_tolerant(rhs, lhs, tol) != std::weak_ordering::less;
    return r;
}

std::vector<DualNumber> sorted_nonascending(std::span<const DualNumber> v) {
    std::vector<DualNumber> out(v.begin(), v.end());
    std::stable_sort(out.begin(), out.end(), [](const DualNumber& a, const DualNumber& b) { return a > b; });
    return out;
}

bool weak_majorization_check(std::span<const DualNumber> z, std::span<const DualNumber> y, const Tolerance& tol) {
    if (z.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "sequences differ in length");
    const auto zs = sorted_nonascending(z);
    const auto ys = sorted_nonascending(y);
    DualNumber zsum;
    DualNumber ysum;
    for (std::size_t s = 0; s < zs.size(); ++s) {
        zsum += zs[s];
        ysum += ys[s];
        const auto c = compare_tolerant(zsum, ysum, tol);
        if (s + 1 < zs.size() ? c == std::weak_ordering::greater : c != std::weak_ordering::equivalent) return false;
    }
    return true;
}

InequalityReport ordered_product_dominance(std::span<const DualNumber> x, std::span<const DualNumber> y,
                                           std::span<const DualNumber> z, const Tolerance& tol) {
    if (x.size() != y.size() || y.size() != z.size()) throw Error(ErrorCode::DimensionMismatch, "sequences differ in length");
    if (!tolerant_nonascending(x, tol) || !tolerant_nonascending(y, tol)) {
        throw Error(ErrorCode::PreconditionViolated, "x and y must be nonascending");
    }
    if (!weak_majorization_check(z, y, tol)) throw Error(ErrorCode::PreconditionViolated, "z is not majorized by y");
    DualNumber lhs;
    DualNumber rhs;
    for (std::size_t i = 0; i < x.size(); ++i) {
        lhs += x[i] * z[i];
        rhs += x[i] * y[i];
    }
    return make_report(lhs, rhs, tol);
}

DualNumber hermitian_diagonal(const DQMatrix& a, std::size_t i) {
    const DualQuaternion& d = a(i, i);
    const double scale = std::max(1.0, std::fmax(max_abs(d.st), max_abs(d.in)));
    if (imag_residue(d) > 1e-10 * scale) throw Error(ErrorCode::NotHermitian, "diagonal entry is not a dual number");
    return real_part(d);
}

InequalityReport ky_fan_partial_trace_check(const DQMatrix& a, std::size_t k, const Tolerance& tol) {
    if (!a.is_square()) throw Error(ErrorCode::NotSquare, "partial trace check needs a square matrix");
    if (k < 1 || k > a.rows()) throw Error(ErrorCode::BadK, "k must lie in [1, m]");
    const auto lambdas = eigenvalues(a);
    DualNumber lhs;
    DualNumber rhs;
    for (std::size_t i = 0; i < k; ++i) {
        lhs += hermitian_diagonal(a, i);
        rhs += lambdas[i];
    }
    return make_report(lhs, rhs, tol);
}

std::vector<InequalityReport> ky_fan_partial_trace_all(const DQMatrix& a, const Tolerance& tol) {
    if (!a.is_square()) throw Error(ErrorCode::NotSquare, "partial trace check needs a square matrix");
    const auto lambdas = eigenvalues(a);
    std::vector<InequalityReport> out;
    DualNumber lhs;
    DualNumber rhs;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        lhs += hermitian_diagonal(a, i);
        rhs += lambdas[i];
        out.push_back(make_report(lhs, rhs, tol));
    }
    return out;
}

std::vector<InequalityReport> hermitian_part_vs_singular(const DQMatrix& a, const Tolerance& tol) {
    if (!a.is_square()) throw Error(ErrorCode::NotSquare, "Hermitian part needs a square matrix");
    const DQMatrix h = (conj_transpose(a) + a) * 0.5;
    const auto lambdas = eigenvalues(h);
    const auto sigmas = singular_values(a);
    std::vector<InequalityReport> out;
    for (std::size_t i = 0; i < lambdas.size(); ++i) out.push_back(make_report(lambdas[i], sigmas[i], tol));
    return out;
}

InequalityReport von_neumann_check(const DQMatrix& a, const DQMatrix& b, const Tolerance& tol) {
    require_same_shape(a, b);
    const DQMatrix ah = conj_transpose(a);
    const DQMatrix bh = conj_transpose(b);
    const DualNumber lhs = dual_trace(ah * b + bh * a);
    const auto sa = singular_values(a);
    const auto sb = singular_values(b);
    DualNumber rhs;
    for (std::size_t i = 0; i < sa.size(); ++i) rhs += sa[i] * sb[i];
    return make_report(lhs, rhs * DualNumber(2.0), tol);
}

InequalityReport hermitian_trace_check(const DQMatrix& a, const DQMatrix& b, const Tolerance& tol) {
    require_same_shape(a, b);
    const auto la = eigenvalues(a);
    const auto lb = eigenvalues(b);
    const DualNumber lhs = dual_trace(a * b + b * a);
    DualNumber rhs;
    for (std::size_t i = 0; i < la.size(); ++i) rhs += la[i] * lb[i];
    return make_report(lhs, rhs * DualNumber(2.0), tol);
}

InequalityReport hoffman_wielandt_singular(const DQMatrix& a, const DQMatrix& b, const Tolerance& tol) {
    require_same_shape(a, b);
    const DQMatrix diff = a - b;
    const auto d = spectral_difference(singular_values(a), singular_values(b), tol.eta_st);
    InequalityReport r = make_report(vec_norm2(d), frobenius_norm(diff), tol);
    r.condition_met = is_appreciable(diff);
    return r;
}

InequalityReport hoffman_wielandt_hermitian(const DQMatrix& a, const DQMatrix& b, const Tolerance& tol) {
    require_same_shape(a, b);
    const auto d = spectral_difference(eigenvalues(a), eigenvalues(b), tol.eta_st);
    return make_report(vec_norm2(d), frobenius_norm(a - b), tol);
}

InequalityReport cauchy_schwarz_check(std::span<const DualQuaternion> u, std::span<const DualQuaternion> v,
                                      const Tolerance& tol) {
    const DualNumber lhs = magnitude(inner_product(u, v));
    return make_report(lhs, vec_norm2(u) * vec_norm2(v), tol);
}

}  // namespace dqm
