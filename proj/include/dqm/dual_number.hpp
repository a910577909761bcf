#pragma once

#include <compare>
#include <iosfwd>

namespace dqm {

/**
 * Dual number st + in*eps with eps^2 = 0.
 *
 * Ordering is the lexicographic total order on (st, in): the standard part
 * decides, and the infinitesimal part only breaks exact ties. This order is
 * what every inequality check in the library is phrased in.
 */
struct DualNumber {
    double st = 0.0;
    double in = 0.0;

    constexpr DualNumber() = default;
    constexpr DualNumber(double standard, double infinitesimal = 0.0)
        : st(standard), in(infinitesimal) {}

    constexpr DualNumber operator-() const { return {-st, -in}; }

    constexpr DualNumber& operator+=(const DualNumber& o) {
        st += o.st;
        in += o.in;
        return *this;
    }
    constexpr DualNumber& operator-=(const DualNumber& o) {
        st -= o.st;
        in -= o.in;
        return *this;
    }
    constexpr DualNumber& operator*=(const DualNumber& o) {
        in = st * o.in + in * o.st;
        st *= o.st;
        return *this;
    }

    friend constexpr DualNumber operator+(DualNumber a, const DualNumber& b) { return a += b; }
    friend constexpr DualNumber operator-(DualNumber a, const DualNumber& b) { return a -= b; }
    friend constexpr DualNumber operator*(DualNumber a, const DualNumber& b) { return a *= b; }

    friend constexpr bool operator==(const DualNumber& a, const DualNumber& b) {
        return a.st == b.st && a.in == b.in;
    }
};

constexpr std::strong_ordering compare(const DualNumber& p, const DualNumber& q) {
    if (p.st < q.st) return std::strong_ordering::less;
    if (p.st > q.st) return std::strong_ordering::greater;
    if (p.in < q.in) return std::strong_ordering::less;
    if (p.in > q.in) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

constexpr std::strong_ordering operator<=>(const DualNumber& p, const DualNumber& q) {
    return compare(p, q);
}

constexpr bool is_appreciable(const DualNumber& q) { return q.st != 0.0; }

/// |q| = |st| + sgn(st) in eps when appreciable, |in| eps otherwise.
DualNumber abs(const DualNumber& q);

/// Throws NegativeArgument for q < 0 and NotRepresentable for a nonzero
/// infinitesimal (no dual number squares to c*eps with c != 0).
DualNumber sqrt(const DualNumber& q);

/// Throws Singular when q is infinitesimal.
DualNumber inverse(const DualNumber& q);

/// p * q^{-1}; q must be appreciable.
DualNumber divide(const DualNumber& p, const DualNumber& q);

std::ostream& operator<<(std::ostream& os, const DualNumber& q);

}  // namespace dqm
