#pragma once

// Independent numerical routes used to cross-check the closed forms. Each
// oracle deliberately avoids the code path of the quantity it validates:
// enumeration instead of the binomial formula, Monte Carlo state averaging
// instead of the averaged closed forms, quadrature instead of the
// characteristic function.

#include "lindblad.hpp"
#include "randomtime.hpp"
#include "survival.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

namespace qet {

/// Brute force over the 2^5 error patterns of the 5 carrier qubits,
/// keeping patterns with at most one error.
inline double encoded_survival_enumeration(double p) {
    double total = 0.0;
    for (unsigned mask = 0; mask < 32; ++mask) {
        const int errors = std::popcount(mask);
        if (errors > 1) continue;
        total += std::pow(1.0 - p, errors) * std::pow(p, 5 - errors);
    }
    return total;
}

struct MonteCarloEstimate {
    double mean;
    double std_error;
    long samples;
};

namespace detail {

template <class PerState>
MonteCarloEstimate mc_state_average(long samples, std::uint64_t seed, PerState&& per_state) {
    auto eng = make_engine(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (long i = 0; i < samples; ++i) {
        const double v = per_state(sample_state(eng));
        sum += v;
        sum_sq += v * v;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq / n - mean * mean) * n / (n - 1.0));
    return {mean, std::sqrt(var / n), samples};
}

}  // namespace detail

/// State-averaged overlap of the noisy stored state with the noise-free
/// reference, estimated by Monte Carlo. Converges on p_survival_single.
inline MonteCarloEstimate mc_survival_overlap(NoiseParams noise, double T, long samples,
                                              std::uint64_t seed) {
    return detail::mc_state_average(samples, seed, [&](const QubitAmplitudes& psi) {
        return overlap(evolve_analytic(psi, noise, T), evolve_reversible(psi, T));
    });
}

/// State-averaged overlap of the duration-averaged state with the
/// sharp-duration reference, estimated by Monte Carlo. The coherence
/// multiplier E[e^{+2it'}] is computed by Gamma quadrature, not from the
/// characteristic-function closed form. Converges on p_timing.
inline MonteCarloEstimate mc_timing_overlap(TimingModel timing, double Ted, long samples,
                                            std::uint64_t seed, QuadratureOptions opts = {}) {
    const cplx q = quadrature_average(
        timing, Ted, [](double tp) { return std::polar(1.0, 2.0 * tp); }, opts);
    return detail::mc_state_average(samples, seed, [&](const QubitAmplitudes& psi) {
        const DensityMatrix2 rho = pure_density(psi);
        const DensityMatrix2 bar{rho.r00, rho.r01 * q, rho.r10 * std::conj(q), rho.r11};
        return overlap(bar, evolve_reversible(psi, Ted));
    });
}

}  // namespace qet
