#include "dqm/dual_number.hpp"

#include <cmath>
#include <ostream>

#include "dqm/error.hpp"

namespace dqm {

DualNumber abs(const DualNumber& q) {
    if (q.st > 0.0) return q;
    if (q.st < 0.0) return -q;
    return {0.0, std::fabs(q.in)};
}

DualNumber sqrt(const DualNumber& q) {
    if (q.st == 0.0) {
        // (a + b eps)^2 has standard part a^2, so only 0 squares to an infinitesimal
        if (q.in != 0.0) throw Error(ErrorCode::NotRepresentable, "square root of a nonzero infinitesimal");
        return {};
    }
    if (q.st < 0.0) throw Error(ErrorCode::NegativeArgument, "square root of a negative dual number");
    const double root = std::sqrt(q.st);
    return {root, q.in / (2.0 * root)};
}

DualNumber inverse(const DualNumber& q) {
    if (q.st == 0.0) throw Error(ErrorCode::Singular, "infinitesimal dual number has no inverse");
    const double r = 1.0 / q.st;
    return {r, -r * q.in * r};
}

DualNumber divide(const DualNumber& p, const DualNumber& q) {
    return p * inverse(q);
}

std::ostream& operator<<(std::ostream& os, const DualNumber& q) {
    return os << '(' << q.st << ", " << q.in << ')';
}

}  // namespace dqm
