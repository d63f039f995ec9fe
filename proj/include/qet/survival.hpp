#pragma once

#include "lindblad.hpp"
#include "randomtime.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qet {

/// Probability value, validated to lie in [0, 1] within kAlgebraTol and
/// then clamped onto the unit interval.
class Probability {
  public:
    explicit Probability(double v) {
        detail::require_finite(v, "Probability");
        if (v < -kAlgebraTol || v > 1.0 + kAlgebraTol) {
            throw std::domain_error("Probability: value outside [0, 1]");
        }
        value_ = std::clamp(v, 0.0, 1.0);
    }

    double value() const { return value_; }

  private:
    double value_;
};

/// Storage run layout: total storage time T, total encode+decode time Ted
/// per correction, and the number N of correction procedures. The formulas
/// assume Ted small against T; encode_decode_fast() flags schedules outside
/// that regime so front ends can warn (the values are still computed).
struct StorageSchedule {
    double T;
    double Ted;
    int N;

    StorageSchedule(double storage_time, double encode_decode_time, int corrections)
        : T(storage_time), Ted(encode_decode_time), N(corrections) {
        detail::require_finite(T, "StorageSchedule T");
        detail::require_finite(Ted, "StorageSchedule Ted");
        if (!(T > 0.0)) throw std::invalid_argument("StorageSchedule: T must be > 0");
        if (Ted < 0.0) throw std::invalid_argument("StorageSchedule: Ted must be >= 0");
        if (N < 1) throw std::invalid_argument("StorageSchedule: N must be >= 1");
    }

    bool encode_decode_fast() const { return Ted * 10.0 <= T; }
};

/// State-averaged probability that a stored qubit is still error free after
/// time T under isotropic noise:
///   1/2 + (1/4) e^{-4 g T} + (1/8)(e^{-2 g T} + e^{-6 g T}).
inline Probability p_survival_single(NoiseParams noise, double T) {
    detail::require_finite(T, "p_survival_single T");
    if (T < 0.0) throw std::invalid_argument("p_survival_single: T must be >= 0");
    const double g = noise.gamma;
    return Probability(0.5 + 0.25 * std::exp(-4.0 * g * T) +
                       0.125 * (std::exp(-2.0 * g * T) + std::exp(-6.0 * g * T)));
}

/// Survival of one encoded qubit across 5 carriers with identical
/// per-qubit survival ps: zero errors or exactly one (correctable) error,
///   ps^5 + 5 ps^4 (1 - ps).
inline Probability p_survival_encoded(Probability ps) {
    const double p = ps.value();
    return Probability(std::pow(p, 5) + 5.0 * std::pow(p, 4) * (1.0 - p));
}

/// Per-qubit probability of surviving the encode+decode stage of duration
/// Ted under timing noise of scale tau:
///   3/4 + (1/4) Re{(1 + 2 i tau)^{-Ted/tau} e^{2 i Ted}}.
/// tau = 0 returns exactly 1.
inline Probability p_timing(TimingModel timing, double Ted) {
    detail::require_finite(Ted, "p_timing Ted");
    if (Ted < 0.0) throw std::invalid_argument("p_timing: Ted must be >= 0");
    if (timing.tau == 0.0) return Probability(1.0);
    const cplx f = averaged_phase_factor(timing, Ted, 2.0) * std::polar(1.0, 2.0 * Ted);
    return Probability(0.75 + 0.25 * f.real());
}

/// Probability that one correction cycle succeeds: all 5 qubits survive the
/// encode+decode stage and at most one errs during storage,
///   [P_t(Ted)]^5 * P*_s(T).
inline Probability p_combined(NoiseParams noise, TimingModel timing, const StorageSchedule& sched) {
    if (sched.N != 1) throw std::invalid_argument("p_combined: schedule must have N = 1");
    const double pt = p_timing(timing, sched.Ted).value();
    const double enc = p_survival_encoded(p_survival_single(noise, sched.T)).value();
    return Probability(std::pow(pt, 5) * enc);
}

/// Efficiency of the correction procedure: uncorrected mismatch over time
/// T + Ted divided by corrected mismatch,
///   (1 - [P_s(T + Ted)]^5) / (1 - P(Ted, T)).
/// Correction helps exactly when the ratio exceeds 1. The denominator
/// vanishes only for gamma = 0 with no timing noise; that degenerate case
/// is reported as an error.
inline double efficiency_ratio(NoiseParams noise, TimingModel timing, const StorageSchedule& sched) {
    const double uncorrected =
        1.0 - std::pow(p_survival_single(noise, sched.T + sched.Ted).value(), 5);
    const double corrected = 1.0 - p_combined(noise, timing, sched).value();
    if (corrected <= 0.0) {
        throw std::domain_error("efficiency_ratio: corrected mismatch vanishes (degenerate denominator)");
    }
    return uncorrected / corrected;
}

/// Success probability for N equally spaced corrections over total storage
/// time T, each cycle paying the timing penalty on all 5 qubits:
///   [P_t(Ted)]^{5N} * [P*_s(T/N)]^N.
/// With tau = 0 the timing factor is 1 and more corrections always help;
/// with tau > 0 an optimum N emerges (see optimize_repetitions).
inline Probability p_repeated(NoiseParams noise, TimingModel timing, const StorageSchedule& sched) {
    const double pt = p_timing(timing, sched.Ted).value();
    const double enc =
        p_survival_encoded(p_survival_single(noise, sched.T / sched.N)).value();
    return Probability(std::pow(pt, 5.0 * sched.N) * std::pow(enc, static_cast<double>(sched.N)));
}

}  // namespace qet
