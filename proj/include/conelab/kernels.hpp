#pragma once

/*
 * Data-parallel kernels with serial reference implementations.
 *
 * Three hot loops dominate the library: scanning extreme-state grids for the
 * variational gauge, fanning out independent seeded verification cases, and
 * assembling bilinear-form Gram matrices. Each gets a *_serial and a
 * *_parallel variant; the parallel ones must return bit-identical results
 * (per-slot writes, and the scan reduces over the total order (value, -index),
 * so the winner does not depend on thread count or schedule).
 */

#include "conelab/cone.hpp"

#include <functional>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace conelab::kernels {

struct BestRatio {
    double value = -std::numeric_limits<double>::infinity();
    std::ptrdiff_t index = -1;
};

inline bool better(double v, std::ptrdiff_t i, const BestRatio& cur) {
    return v > cur.value || (v == cur.value && (cur.index < 0 || i < cur.index));
}

inline BestRatio best_state_ratio_serial(const std::vector<State>& states, const Vec& x, const Vec& y) {
    BestRatio best;
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(states.size()); ++i) {
        double num = states[i](x);
        double den = states[i](y);
        double v = num / den;
        if (better(v, i, best)) best = {v, i};
    }
    return best;
}

inline BestRatio best_state_ratio_parallel(const std::vector<State>& states, const Vec& x, const Vec& y) {
#ifndef _OPENMP
    return best_state_ratio_serial(states, x, y);
#else
    BestRatio best;
#pragma omp parallel
    {
        BestRatio local;
#pragma omp for nowait
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(states.size()); ++i) {
            double v = states[i](x) / states[i](y);
            if (better(v, i, local)) local = {v, i};
        }
#pragma omp critical(conelab_best_ratio)
        {
            if (local.index >= 0 && better(local.value, local.index, best)) best = local;
        }
    }
    return best;
#endif
}

inline BestRatio best_state_ratio(const std::vector<State>& states, const Vec& x, const Vec& y) {
    if (states.size() >= 4096) return best_state_ratio_parallel(states, x, y);
    return best_state_ratio_serial(states, x, y);
}

// Independent cases writing into index-addressed slots; merge order never
// matters. Each fn(i) seeds its own RNG stream.
template <typename T>
std::vector<T> run_cases_serial(int n, const std::function<T(int)>& fn) {
    std::vector<T> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = fn(i);
    return out;
}

template <typename T>
std::vector<T> run_cases_parallel(int n, const std::function<T(int)>& fn) {
    std::vector<T> out(static_cast<size_t>(n));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = fn(i);
    return out;
}

template <typename T>
std::vector<T> run_cases(int n, const std::function<T(int)>& fn) {
    if (n >= 8) return run_cases_parallel<T>(n, fn);
    return run_cases_serial<T>(n, fn);
}

inline Mat gram_serial(int m, const std::function<double(int, int)>& entry) {
    Mat G(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) G(i, j) = entry(i, j);
    return G;
}

inline Mat gram_parallel(int m, const std::function<double(int, int)>& entry) {
    Mat G(m, m);
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(dynamic)
#endif
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) G(i, j) = entry(i, j);
    return G;
}

inline Mat gram(int m, const std::function<double(int, int)>& entry) {
    if (m >= 8) return gram_parallel(m, entry);
    return gram_serial(m, entry);
}

}  // namespace conelab::kernels
