#pragma once

#include <iosfwd>

#include "dqm/dual_number.hpp"
#include "dqm/quaternion.hpp"

namespace dqm {

/// Dual quaternion st + in*eps over the quaternions.
struct DualQuaternion {
    Quaternion st;
    Quaternion in;

    constexpr DualQuaternion() = default;
    constexpr DualQuaternion(double real) : st(real) {}
    constexpr DualQuaternion(const Quaternion& standard, const Quaternion& infinitesimal = {})
        : st(standard), in(infinitesimal) {}
    constexpr DualQuaternion(const DualNumber& d) : st(d.st), in(d.in) {}

    constexpr DualQuaternion operator-() const { return {-st, -in}; }

    constexpr DualQuaternion& operator+=(const DualQuaternion& o) {
        st += o.st;
        in += o.in;
        return *this;
    }
    constexpr DualQuaternion& operator-=(const DualQuaternion& o) {
        st -= o.st;
        in -= o.in;
        return *this;
    }

    friend constexpr DualQuaternion operator+(DualQuaternion a, const DualQuaternion& b) { return a += b; }
    friend constexpr DualQuaternion operator-(DualQuaternion a, const DualQuaternion& b) { return a -= b; }

    friend constexpr DualQuaternion operator*(const DualQuaternion& p, const DualQuaternion& q) {
        return {p.st * q.st, p.in * q.st + p.st * q.in};
    }
    friend constexpr DualQuaternion operator*(const DualQuaternion& p, double s) { return {p.st * s, p.in * s}; }
    friend constexpr DualQuaternion operator*(double s, const DualQuaternion& p) { return {p.st * s, p.in * s}; }

    friend constexpr bool operator==(const DualQuaternion&, const DualQuaternion&) = default;
};

constexpr DualQuaternion conj(const DualQuaternion& q) { return {conj(q.st), conj(q.in)}; }

constexpr bool is_appreciable(const DualQuaternion& q) { return !q.st.is_zero(); }

/// Dual-number valued magnitude. The infinitesimal part of the appreciable
/// branch, (q_st conj(q_in) + q_in conj(q_st)) / (2|q_st|), is real and equals
/// Re(q_st conj(q_in)) / |q_st|.
DualNumber magnitude(const DualQuaternion& q);

/// Throws Singular when q is infinitesimal.
DualQuaternion inverse(const DualQuaternion& q);

/// Real dual number part (st.w, in.w); used after asserting imaginary residues vanish.
constexpr DualNumber real_part(const DualQuaternion& q) { return {q.st.w, q.in.w}; }

/// Largest imaginary component over both parts.
double imag_residue(const DualQuaternion& q);

std::ostream& operator<<(std::ostream& os, const DualQuaternion& q);

}  // namespace dqm
