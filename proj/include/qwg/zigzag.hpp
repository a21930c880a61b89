#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "qwg/errors.hpp"
#include "qwg/potential.hpp"
#include "qwg/rng.hpp"
#include "qwg/stationary.hpp"

namespace qwg::zigzag {

inline constexpr const char* k_rule_version = "phase-window/1";

/// The hidden variable: internal transverse phase of the corpuscle at the
/// moment of barrier arrival, plus its longitudinal velocity (diagnostic;
/// the decision rule never reads it).
struct CorpuscleState {
    double theta = 0.0; // in [0, 2 pi)
    double v = 0.0;     // fraction of c, in [0, 1)
};

enum class Outcome { Reflect, Transmit };

/// Uniform prior over the hidden phase: SplitMix64 in counter mode, so the
/// sequence is a pure function of (seed, index).
inline std::vector<CorpuscleState> sample_phase(std::uint64_t seed, std::size_t n, double v = 0.0) {
    if (n < 1)
        throw domain_error("sample_phase: need n >= 1");
    if (!(v >= 0.0) || v >= 1.0)
        throw domain_error("sample_phase: v must lie in [0, 1)");
    CounterRng rng(seed);
    std::vector<CorpuscleState> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back({2.0 * std::numbers::pi * rng.uniform01(i), v});
    return out;
}

/// Deterministic phase-window rule: the corpuscle transmits exactly when its
/// hidden phase falls inside the window of measure wave_T. All randomness
/// lives in theta; the rule itself is a pure function.
inline Outcome scatter_decision(const CorpuscleState& s, double wave_T) {
    if (!(wave_T >= 0.0) || !(wave_T <= 1.0))
        throw domain_error("scatter_decision: wave_T must lie in [0, 1]");
    return s.theta < 2.0 * std::numbers::pi * wave_T ? Outcome::Transmit : Outcome::Reflect;
}

/// Transverse zigzag position at arrival for a guide of the given width;
/// diagnostic companion of the hidden phase.
inline double transverse_position(const CorpuscleState& s, double width) {
    return 0.5 * width * std::sin(s.theta);
}

/// Lebesgue measure of the Transmit set of the decision rule, found by
/// bisecting the decision boundary rather than by sampling.
inline double transmit_measure(double wave_T) {
    CorpuscleState probe;
    probe.theta = 0.0;
    if (scatter_decision(probe, wave_T) == Outcome::Reflect)
        return 0.0; // empty window
    double lo = 0.0, hi = 2.0 * std::numbers::pi;
    for (int it = 0; it < 80; ++it) {
        probe.theta = 0.5 * (lo + hi);
        if (scatter_decision(probe, wave_T) == Outcome::Transmit)
            lo = probe.theta;
        else
            hi = probe.theta;
    }
    return 0.5 * (lo + hi) / (2.0 * std::numbers::pi);
}

struct EnsembleResult {
    std::size_t n_samples = 0;
    std::size_t n_reflected = 0;
    std::size_t n_transmitted = 0;
    double wave_R = 0.0;
    double wave_T = 0.0;
    std::uint64_t seed = 0;
    double empirical_T = 0.0;
    double binomial_sigma = 0.0; // sqrt(T(1-T)/n)
    std::string rule_version = k_rule_version;
};

/// Monte Carlo over the hidden phase against the wave-mechanical reference
/// probabilities. Thread partitioning never changes the result: sample i is
/// a function of (seed, i) and the counts add associatively.
inline EnsembleResult ensemble_scatter(double E, const PotentialSpec& barrier, std::size_t n,
                                       std::uint64_t seed, unsigned threads = 1) {
    if (n < 1)
        throw domain_error("ensemble_scatter: need n >= 1");
    const auto wave = stationary::solve_scattering(barrier, E);
    const CounterRng rng(seed);
    const double window = 2.0 * std::numbers::pi * wave.T_prob;

    auto count_range = [&](std::size_t begin, std::size_t end) {
        std::size_t acc = 0;
        for (std::size_t i = begin; i < end; ++i)
            if (2.0 * std::numbers::pi * rng.uniform01(i) < window)
                ++acc;
        return acc;
    };

    std::size_t transmitted = 0;
    if (threads <= 1) {
        transmitted = count_range(0, n);
    } else {
        const std::size_t chunk = (n + threads - 1) / threads;
        std::vector<std::size_t> partial(threads, 0);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            const std::size_t b = std::min<std::size_t>(n, w * chunk);
            const std::size_t e = std::min<std::size_t>(n, b + chunk);
            pool.emplace_back([&, w, b, e] { partial[w] = count_range(b, e); });
        }
        for (auto& th : pool)
            th.join();
        for (auto c : partial)
            transmitted += c;
    }

    EnsembleResult out;
    out.n_samples = n;
    out.n_transmitted = transmitted;
    out.n_reflected = n - transmitted;
    out.wave_R = wave.R_prob;
    out.wave_T = wave.T_prob;
    out.seed = seed;
    out.empirical_T = static_cast<double>(transmitted) / static_cast<double>(n);
    out.binomial_sigma = std::sqrt(wave.T_prob * (1.0 - wave.T_prob) / static_cast<double>(n));
    return out;
}

} // namespace qwg::zigzag
