#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace qet {

using cplx = std::complex<double>;

// 2x2 complex matrix, row-major. Small value type shared by density
// matrices, Hamiltonians and collapse operators.
struct Mat2 {
    cplx a00{}, a01{}, a10{}, a11{};

    static Mat2 zero() { return {}; }
    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.a00 + b.a00, a.a01 + b.a01, a.a10 + b.a10, a.a11 + b.a11};
}

inline Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.a00 - b.a00, a.a01 - b.a01, a.a10 - b.a10, a.a11 - b.a11};
}

inline Mat2 operator*(cplx s, const Mat2& m) {
    return {s * m.a00, s * m.a01, s * m.a10, s * m.a11};
}

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a00 * b.a00 + a.a01 * b.a10, a.a00 * b.a01 + a.a01 * b.a11,
            a.a10 * b.a00 + a.a11 * b.a10, a.a10 * b.a01 + a.a11 * b.a11};
}

inline Mat2 dagger(const Mat2& m) {
    return {std::conj(m.a00), std::conj(m.a10), std::conj(m.a01), std::conj(m.a11)};
}

inline cplx trace(const Mat2& m) { return m.a00 + m.a11; }

inline Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b - b * a; }

/// Largest entrywise absolute difference.
inline double max_abs_diff(const Mat2& a, const Mat2& b) {
    const Mat2 d = a - b;
    return std::max(std::max(std::abs(d.a00), std::abs(d.a01)),
                    std::max(std::abs(d.a10), std::abs(d.a11)));
}

inline bool all_finite(const Mat2& m) {
    for (cplx v : {m.a00, m.a01, m.a10, m.a11}) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

inline Mat2 sigma_x() { return {0.0, 1.0, 1.0, 0.0}; }
inline Mat2 sigma_y() { return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}; }
inline Mat2 sigma_z() { return {1.0, 0.0, 0.0, -1.0}; }

}  // namespace qet
