#pragma once

#include "matrix2.hpp"

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace qet {

// Tolerance conventions used across the library: algebraic identities are
// held to kAlgebraTol, externally supplied data is validated at the looser
// kInputTol.
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kInputTol = 1e-9;

namespace detail {

inline void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + ": value must be finite");
    }
}

inline void require_finite(cplx v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw std::invalid_argument(std::string(what) + ": value must be finite");
    }
}

}  // namespace detail

/// Pure qubit state c0|0> + c1|1>. Construction rejects non-normalized
/// amplitudes (norm deviation beyond kInputTol).
struct QubitAmplitudes {
    cplx c0, c1;

    QubitAmplitudes(cplx amp0, cplx amp1) : c0(amp0), c1(amp1) {
        detail::require_finite(c0, "QubitAmplitudes c0");
        detail::require_finite(c1, "QubitAmplitudes c1");
        const double n = std::norm(c0) + std::norm(c1);
        if (std::abs(n - 1.0) > kInputTol) {
            throw std::invalid_argument("QubitAmplitudes: state is not normalized");
        }
    }
};

/// Polar parametrization of a pure state: theta in [0, pi], phi in [0, 2*pi).
struct BlochAngles {
    double theta, phi;

    BlochAngles(double th, double ph) : theta(th), phi(ph) {
        detail::require_finite(theta, "BlochAngles theta");
        detail::require_finite(phi, "BlochAngles phi");
        if (theta < 0.0 || theta > std::numbers::pi) {
            throw std::invalid_argument("BlochAngles: theta outside [0, pi]");
        }
        if (phi < 0.0 || phi >= 2.0 * std::numbers::pi) {
            throw std::invalid_argument("BlochAngles: phi outside [0, 2*pi)");
        }
    }
};

inline QubitAmplitudes to_amplitudes(const BlochAngles& angles) {
    return {std::cos(angles.theta / 2.0),
            std::polar(std::sin(angles.theta / 2.0), angles.phi)};
}

/// 2x2 density matrix, row-major entries. Valid instances are Hermitian,
/// unit-trace and positive semidefinite; see density_deviations.
struct DensityMatrix2 {
    cplx r00, r01, r10, r11;

    Mat2 mat() const { return {r00, r01, r10, r11}; }
    static DensityMatrix2 from_mat(const Mat2& m) { return {m.a00, m.a01, m.a10, m.a11}; }
};

/// Smallest eigenvalue from the closed-form 2x2 spectrum
/// (trace/determinant, no iteration).
inline double min_eigenvalue(const DensityMatrix2& rho) {
    const double tr = (rho.r00 + rho.r11).real();
    const double det = (rho.r00 * rho.r11 - rho.r01 * rho.r10).real();
    const double disc = std::max(0.0, tr * tr - 4.0 * det);
    return 0.5 * (tr - std::sqrt(disc));
}

inline double max_eigenvalue(const DensityMatrix2& rho) {
    const double tr = (rho.r00 + rho.r11).real();
    return tr - min_eigenvalue(rho);
}

struct DensityDeviations {
    double hermiticity;    // worst |entry - mirrored conjugate|, incl. Im of diagonals
    double trace;          // |Tr - 1|
    double min_eigenvalue; // signed; valid matrices have >= -kAlgebraTol
};

inline DensityDeviations density_deviations(const DensityMatrix2& rho) {
    const double herm = std::max({std::abs(rho.r10 - std::conj(rho.r01)),
                                  std::abs(rho.r00.imag()), std::abs(rho.r11.imag())});
    const double tr = std::abs((rho.r00 + rho.r11).real() - 1.0);
    return {herm, tr, min_eigenvalue(rho)};
}

inline void validate_density(const DensityMatrix2& rho, double tol = kAlgebraTol) {
    if (!all_finite(rho.mat())) {
        throw std::invalid_argument("DensityMatrix2: non-finite entries");
    }
    const DensityDeviations dev = density_deviations(rho);
    if (dev.hermiticity > tol) {
        throw std::invalid_argument("DensityMatrix2: not Hermitian");
    }
    if (dev.trace > tol) {
        throw std::invalid_argument("DensityMatrix2: trace differs from 1");
    }
    if (dev.min_eigenvalue < -tol) {
        throw std::invalid_argument("DensityMatrix2: negative eigenvalue");
    }
}

/// Outer product |psi><psi|, normalized so the trace is exactly 1.
inline DensityMatrix2 pure_density(const QubitAmplitudes& psi) {
    const double n = std::norm(psi.c0) + std::norm(psi.c1);
    const cplx off = psi.c0 * std::conj(psi.c1) / n;
    return {std::norm(psi.c0) / n, off, std::conj(off), std::norm(psi.c1) / n};
}

/// Tr{a b} for density matrices. The trace of a product of Hermitian
/// matrices is real; an imaginary residue above kInputTol signals corrupted
/// input and is reported instead of discarded.
inline double overlap(const DensityMatrix2& a, const DensityMatrix2& b) {
    const cplx tr = a.r00 * b.r00 + a.r01 * b.r10 + a.r10 * b.r01 + a.r11 * b.r11;
    // negated comparisons so NaN input lands in the error path
    if (!(std::abs(tr.imag()) <= kInputTol)) {
        throw std::invalid_argument("overlap: imaginary residue exceeds tolerance (corrupted input)");
    }
    const double v = tr.real();
    if (!(v >= -kInputTol && v <= 1.0 + kInputTol)) {
        throw std::invalid_argument("overlap: value outside [0, 1] (corrupted input)");
    }
    return std::clamp(v, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Seeded sampling. All randomness flows through caller-owned engines so
// results are reproducible and parallel runs can partition one master seed
// into independent streams.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Engine for stream `stream` of a master seed. Distinct streams are
/// statistically independent for any fixed master seed.
inline std::mt19937_64 make_engine(std::uint64_t master_seed, std::uint64_t stream = 0) {
    return std::mt19937_64(splitmix64(splitmix64(master_seed) + stream));
}

/// Uniform double in [0, 1) from the top 53 bits of the engine output.
/// Used instead of std::uniform_real_distribution so sequences are fixed by
/// the engine alone, independent of the standard library implementation.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Draws theta uniform on [0, pi] and phi uniform on [0, 2*pi). This is the
/// state-averaging measure used by all survival formulas; under it
/// E[|c0|^4 + |c1|^4] = 3/4 and E[2|c0|^2|c1|^2] = 1/4. (The uniform-on-sphere
/// measure would give 2/3 and 1/3 instead and is deliberately not used.)
inline QubitAmplitudes sample_state(std::mt19937_64& eng) {
    const double theta = std::numbers::pi * uniform01(eng);
    const double phi = 2.0 * std::numbers::pi * uniform01(eng);
    return to_amplitudes(BlochAngles(theta, phi));
}

}  // namespace qet
