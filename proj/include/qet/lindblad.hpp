#pragma once

#include "qstate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qet {

/// Isotropic decoherence rate, dimensionless (all rates and times are
/// scaled by the qubit frequency).
struct NoiseParams {
    double gamma;

    explicit NoiseParams(double g) : gamma(g) {
        detail::require_finite(gamma, "NoiseParams gamma");
        if (gamma < 0.0) throw std::invalid_argument("NoiseParams: gamma must be >= 0");
    }
};

/// Conjugation by the free-evolution unitary U(t) = diag(e^{it}, e^{-it}):
/// populations are untouched, the upper coherence picks up e^{+2it}.
inline DensityMatrix2 rotate_free(const DensityMatrix2& rho, double t) {
    detail::require_finite(t, "rotate_free t");
    const cplx ph = std::polar(1.0, 2.0 * t);
    return {rho.r00, rho.r01 * ph, rho.r10 * std::conj(ph), rho.r11};
}

/// Dissipative factor of the isotropic channel: a linear map damping the
/// Bloch components (x, y, z) by (e^{-2gt}, e^{-6gt}, e^{-4gt}) about fixed
/// axes. Composing factors multiplies the decay exponentials, so
/// isotropic_damping(isotropic_damping(rho, g, t1), g, t2) equals the
/// factor for t1 + t2 exactly.
inline DensityMatrix2 isotropic_damping(const DensityMatrix2& rho, NoiseParams noise, double t) {
    detail::require_finite(t, "isotropic_damping t");
    if (t < 0.0) throw std::invalid_argument("isotropic_damping: t must be >= 0");
    const double e2 = std::exp(-2.0 * noise.gamma * t);
    const double e4 = std::exp(-4.0 * noise.gamma * t);
    const double e6 = std::exp(-6.0 * noise.gamma * t);
    const cplx s = rho.r00 + rho.r11;
    const cplx z = rho.r00 - rho.r11;
    return {0.5 * (s + z * e4),
            0.5 * ((e2 + e6) * rho.r01 + (e2 - e6) * rho.r10),
            0.5 * ((e2 - e6) * rho.r01 + (e2 + e6) * rho.r10),
            0.5 * (s - z * e4)};
}

/// Closed-form state of a qubit stored for time t under isotropic noise of
/// rate g: populations mix toward 1/2 at rate 4g, the transverse Bloch
/// components damp at rates 2g and 6g about axes co-rotating with the free
/// precession, and the coherence phase advances as e^{+2it}. Equivalently,
/// the free rotation applied to the fixed-axis damping factor.
inline DensityMatrix2 evolve_analytic(const QubitAmplitudes& psi, NoiseParams noise, double t) {
    if (t < 0.0) throw std::invalid_argument("evolve_analytic: t must be >= 0");
    return rotate_free(isotropic_damping(pure_density(psi), noise, t), t);
}

/// Noise-free limit: populations constant, coherence phase e^{+2it}.
inline DensityMatrix2 evolve_reversible(const QubitAmplitudes& psi, double t) {
    return rotate_free(pure_density(psi), t);
}

/// Constant-coefficient master-equation generator.
struct LindbladGenerator {
    Mat2 hamiltonian;
    std::vector<Mat2> collapse_ops;
};

/// Generator whose solution, composed with rotate_free, reproduces
/// evolve_analytic: expressed in the co-rotating frame (where the damping
/// axes are stationary) the Hamiltonian vanishes and the collapse operators
/// are sqrt(2g) sigma_x and sqrt(g) sigma_z.
inline LindbladGenerator isotropic_channel_generator(NoiseParams noise) {
    return {Mat2::zero(),
            {std::sqrt(2.0 * noise.gamma) * sigma_x(), std::sqrt(noise.gamma) * sigma_z()}};
}

struct IntegrationReport {
    double hermiticity_correction = 0.0;  // size of the end-point re-symmetrization
    double trace_correction = 0.0;        // accumulated trace drift, renormalized away
    long steps = 0;
};

inline constexpr double kTraceDriftTol = 1e-6;

namespace detail {

inline Mat2 master_equation_rhs(const Mat2& rho, const Mat2& h,
                                const std::vector<Mat2>& ls,
                                const std::vector<Mat2>& ldags,
                                const std::vector<Mat2>& ldagls) {
    Mat2 d = cplx(0.0, -1.0) * commutator(h, rho);
    for (std::size_t i = 0; i < ls.size(); ++i) {
        d = d + ls[i] * rho * ldags[i] - 0.5 * (ldagls[i] * rho + rho * ldagls[i]);
    }
    return d;
}

}  // namespace detail

/// Fixed-step RK4 integration of the master equation
///   drho/dt = -i[H, rho] + sum_j (L_j rho L_j^+ - 1/2 {L_j^+ L_j, rho}).
/// At least 1000 steps always cover [0, t] (the step is shrunk if needed,
/// for bit-reproducible results). The result is re-Hermitized and
/// trace-renormalized once at the end; correction sizes are written to
/// `report` when given. Trace drift beyond kTraceDriftTol means the step
/// was too large and is reported as an error.
inline DensityMatrix2 evolve_numeric(const DensityMatrix2& rho0, const LindbladGenerator& gen,
                                     double t, double step, IntegrationReport* report = nullptr) {
    if (!all_finite(rho0.mat())) throw std::invalid_argument("evolve_numeric: non-finite state");
    if (density_deviations(rho0).hermiticity > kInputTol) {
        throw std::invalid_argument("evolve_numeric: initial state is not Hermitian");
    }
    detail::require_finite(t, "evolve_numeric t");
    if (t < 0.0) throw std::invalid_argument("evolve_numeric: t must be >= 0");
    if (!(step > 0.0)) throw std::invalid_argument("evolve_numeric: step must be > 0");
    if (max_abs_diff(gen.hamiltonian, dagger(gen.hamiltonian)) > kAlgebraTol) {
        throw std::invalid_argument("evolve_numeric: Hamiltonian is not Hermitian");
    }
    if (t == 0.0) {
        if (report) *report = {};
        return rho0;
    }

    const long n = std::max<long>(1000, static_cast<long>(std::ceil(t / step)));
    const double h = t / static_cast<double>(n);

    std::vector<Mat2> ldags, ldagls;
    ldags.reserve(gen.collapse_ops.size());
    ldagls.reserve(gen.collapse_ops.size());
    for (const Mat2& l : gen.collapse_ops) {
        ldags.push_back(dagger(l));
        ldagls.push_back(ldags.back() * l);
    }

    Mat2 r = rho0.mat();
    for (long i = 0; i < n; ++i) {
        const Mat2 k1 = detail::master_equation_rhs(r, gen.hamiltonian, gen.collapse_ops, ldags, ldagls);
        const Mat2 k2 = detail::master_equation_rhs(r + (0.5 * h) * k1, gen.hamiltonian, gen.collapse_ops, ldags, ldagls);
        const Mat2 k3 = detail::master_equation_rhs(r + (0.5 * h) * k2, gen.hamiltonian, gen.collapse_ops, ldags, ldagls);
        const Mat2 k4 = detail::master_equation_rhs(r + h * k3, gen.hamiltonian, gen.collapse_ops, ldags, ldagls);
        r = r + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    const Mat2 sym = 0.5 * (r + dagger(r));
    const double herm_corr = max_abs_diff(r, sym);
    const double tr = trace(sym).real();
    const double trace_corr = std::abs(tr - 1.0);
    if (!(trace_corr <= kTraceDriftTol)) {  // also catches NaN from a blown-up step
        throw std::runtime_error("evolve_numeric: trace drift exceeds tolerance (step too large)");
    }
    if (report) *report = {herm_corr, trace_corr, n};
    return DensityMatrix2::from_mat((1.0 / tr) * sym);
}

/// Numerical-integration route to evolve_analytic, used as its validation
/// oracle: RK4 in the co-rotating frame followed by the exact free rotation.
inline DensityMatrix2 evolve_numeric_isotropic(const QubitAmplitudes& psi, NoiseParams noise,
                                               double t, double step,
                                               IntegrationReport* report = nullptr) {
    const DensityMatrix2 damped =
        evolve_numeric(pure_density(psi), isotropic_channel_generator(noise), t, step, report);
    return rotate_free(damped, t);
}

}  // namespace qet
