#pragma once

#include "qstate.hpp"
#include "lindblad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qet {

/// Scale of the evolution-time fluctuations. The realized evolution time
/// for a nominal duration t is Gamma-distributed with mean t and variance
/// tau * t; tau = 0 is the deterministic limit.
struct TimingModel {
    double tau;

    explicit TimingModel(double t) : tau(t) {
        detail::require_finite(tau, "TimingModel tau");
        if (tau < 0.0) throw std::invalid_argument("TimingModel: tau must be >= 0");
    }
};

/// Log of the Gamma density with shape t/tau and scale tau, evaluated at
/// tprime. Kept in log space so large shapes (where Gamma(t/tau) overflows)
/// stay representable. tau = 0 is rejected: the density degenerates to a
/// delta and callers must branch to the deterministic path.
inline double log_gamma_pdf(TimingModel timing, double t, double tprime) {
    if (!(timing.tau > 0.0)) {
        throw std::invalid_argument("log_gamma_pdf: tau = 0 has no density (deterministic limit)");
    }
    detail::require_finite(t, "log_gamma_pdf t");
    detail::require_finite(tprime, "log_gamma_pdf tprime");
    if (!(t > 0.0)) throw std::invalid_argument("log_gamma_pdf: t must be > 0");
    if (tprime < 0.0) throw std::invalid_argument("log_gamma_pdf: tprime must be >= 0");
    const double shape = t / timing.tau;
    const double x = tprime / timing.tau;
    // x = 0 endpoint: the density is 0 for shape > 1, 1/tau for shape = 1,
    // and diverges (integrably) for shape < 1.
    if (x == 0.0) {
        if (shape > 1.0) return -std::numeric_limits<double>::infinity();
        if (shape == 1.0) return -std::log(timing.tau);
        return std::numeric_limits<double>::infinity();
    }
    return -std::log(timing.tau) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - x;
}

inline double gamma_pdf(TimingModel timing, double t, double tprime) {
    return std::exp(log_gamma_pdf(timing, t, tprime));
}

/// E[e^{-i omega t'}] over the Gamma-distributed time t' of nominal
/// duration t: (1 + i omega tau)^{-t/tau}, through the principal complex
/// logarithm. Re(1 + i omega tau) = 1 > 0, so the argument never crosses
/// the branch cut. At tau = 0 the deterministic value e^{-i omega t} is
/// returned exactly rather than as a limit.
inline cplx averaged_phase_factor(TimingModel timing, double t, double omega) {
    detail::require_finite(t, "averaged_phase_factor t");
    detail::require_finite(omega, "averaged_phase_factor omega");
    if (t < 0.0) throw std::invalid_argument("averaged_phase_factor: t must be >= 0");
    if (timing.tau == 0.0) return std::polar(1.0, -omega * t);
    if (t == 0.0) return cplx(1.0, 0.0);
    return std::exp(-(t / timing.tau) * std::log(cplx(1.0, omega * timing.tau)));
}

/// Noise-free evolution averaged over the Gamma-distributed duration:
/// populations are unchanged, the coherence is multiplied by
/// E[e^{+2it'}] = conj(averaged_phase_factor(timing, t, 2)). At tau = 0
/// this reproduces evolve_reversible exactly.
inline DensityMatrix2 averaged_state(const QubitAmplitudes& psi, TimingModel timing, double t) {
    if (t < 0.0) throw std::invalid_argument("averaged_state: t must be >= 0");
    const DensityMatrix2 rho = pure_density(psi);
    const cplx q = std::conj(averaged_phase_factor(timing, t, 2.0));
    return {rho.r00, rho.r01 * q, rho.r10 * std::conj(q), rho.r11};
}

// ---------------------------------------------------------------------------
// Quadrature over the Gamma weight. This is the numerical route against
// which the closed forms above are cross-checked.
// ---------------------------------------------------------------------------

namespace detail {

/// 16-point Gauss-Legendre nodes/weights on [-1, 1], Newton-refined from
/// Chebyshev initial guesses.
struct GaussLegendre16 {
    std::array<double, 16> x{}, w{};
};

inline const GaussLegendre16& gauss_legendre16() {
    static const GaussLegendre16 table = [] {
        GaussLegendre16 t;
        constexpr int n = 16;
        for (int i = 0; i < n / 2; ++i) {
            double root = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double deriv = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = root;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * root * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                deriv = n * (root * p1 - p0) / (root * root - 1.0);
                const double dx = p1 / deriv;
                root -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            const double weight = 2.0 / ((1.0 - root * root) * deriv * deriv);
            t.x[i] = root;
            t.x[n - 1 - i] = -root;
            t.w[i] = weight;
            t.w[n - 1 - i] = weight;
        }
        return t;
    }();
    return table;
}

/// One quadrature pass with a fixed panel count. The support is truncated
/// where the Gamma mass is negligible: the upper limit sits 12 standard
/// deviations plus 40 scale units past the mean (the +40 covers the
/// subexponential tail at small shapes, where a pure sigma cutoff leaves
/// ~1e-6 of mass). For shapes <= 50 the panels are log-spaced down to a
/// ~1e-26 lower quantile, which resolves the integrable x^{shape-1}
/// endpoint behavior; larger shapes use uniform panels.
template <class F>
cplx gamma_quadrature_pass(double tau, double t, F&& integrand, int panels) {
    const GaussLegendre16& gl = gauss_legendre16();
    const double shape = t / tau;
    const double hi = tau * (shape + 12.0 * std::sqrt(shape) + 40.0);
    const bool log_spaced = shape <= 50.0;
    double lo;
    if (log_spaced) {
        lo = tau * std::max(std::exp((std::log(1e-26) + std::lgamma(shape + 1.0)) / shape), 1e-290);
    } else {
        lo = tau * std::max(0.0, shape - 12.0 * std::sqrt(shape) - 40.0);
    }

    const double log_lo = log_spaced ? std::log(lo) : 0.0;
    const double log_hi = log_spaced ? std::log(hi) : 0.0;
    const double lgam = std::lgamma(shape);

    cplx total(0.0, 0.0);
    for (int p = 0; p < panels; ++p) {
        double a, b;
        if (log_spaced) {
            a = std::exp(log_lo + (log_hi - log_lo) * p / panels);
            b = std::exp(log_lo + (log_hi - log_lo) * (p + 1) / panels);
        } else {
            a = lo + (hi - lo) * p / panels;
            b = lo + (hi - lo) * (p + 1) / panels;
        }
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        cplx panel_sum(0.0, 0.0);
        for (int q = 0; q < 16; ++q) {
            const double tp = mid + half * gl.x[q];
            const double x = tp / tau;
            const double logpdf = -std::log(tau) - lgam + (shape - 1.0) * std::log(x) - x;
            panel_sum += gl.w[q] * std::exp(logpdf) * cplx(integrand(tp));
        }
        total += half * panel_sum;
    }
    return total;
}

}  // namespace detail

struct QuadratureOptions {
    double doubling_tol = 1e-11;  // accepted once doubling panels moves the result less than this
    int initial_panels = 8;
    int max_panels = 1 << 14;
};

/// Integral of integrand(t') against the Gamma density of nominal duration
/// t, by composite Gauss-Legendre quadrature with panel doubling. The
/// integrand must be bounded. Reports non-convergence if the doubling test
/// still fails at the panel cap.
template <class F>
cplx quadrature_average(TimingModel timing, double t, F&& integrand,
                        QuadratureOptions opts = {}) {
    if (!(timing.tau > 0.0)) {
        throw std::invalid_argument("quadrature_average: tau must be > 0 (tau = 0 is deterministic)");
    }
    if (!(t > 0.0)) throw std::invalid_argument("quadrature_average: t must be > 0");

    int panels = opts.initial_panels;
    cplx prev = detail::gamma_quadrature_pass(timing.tau, t, integrand, panels);
    while (panels < opts.max_panels) {
        panels *= 2;
        const cplx cur = detail::gamma_quadrature_pass(timing.tau, t, integrand, panels);
        if (std::abs(cur - prev) <= opts.doubling_tol * std::max(1.0, std::abs(cur))) {
            return cur;
        }
        prev = cur;
    }
    throw std::runtime_error("quadrature_average: panel doubling did not converge");
}

}  // namespace qet
