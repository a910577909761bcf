#include "dqm/dual_quaternion.hpp"

#include <cassert>
#include <cmath>
#include <ostream>

#include "dqm/error.hpp"

namespace dqm {

DualNumber magnitude(const DualQuaternion& q) {
    if (!is_appreciable(q)) return {0.0, norm(q.in)};
    const double n = norm(q.st);
#ifndef NDEBUG
    const Quaternion sym = q.st * conj(q.in) + q.in * conj(q.st);
    assert(max_abs(sym.imag()) <= 1e-12 * (1.0 + max_abs(sym)));
#endif
    return {n, real_dot(q.st, q.in) / n};
}

DualQuaternion inverse(const DualQuaternion& q) {
    if (!is_appreciable(q)) throw Error(ErrorCode::Singular, "infinitesimal dual quaternion has no inverse");
    const Quaternion r = reciprocal(q.st);
    return {r, -(r * q.in * r)};
}

double imag_residue(const DualQuaternion& q) {
    return std::fmax(max_abs(q.st.imag()), max_abs(q.in.imag()));
}

std::ostream& operator<<(std::ostream& os, const DualQuaternion& q) {
    return os << '{' << q.st << " + " << q.in << " eps}";
}

}  // namespace dqm
