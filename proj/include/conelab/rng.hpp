#pragma once

#include "conelab/common.hpp"

#include <cstdint>
#include <string_view>

namespace conelab {

// Deterministic, platform-independent RNG. Verification suites derive one
// stream per case from (master seed, suite name, case index), so cases can be
// evaluated in any order or in parallel without changing their samples.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9E3779B97F4A7C15ull) {
        // decorrelate nearby seeds
        next_u64();
        next_u64();
    }

    static std::uint64_t derive(std::uint64_t master, std::string_view suite, std::uint64_t case_index) {
        std::uint64_t h = master;
        for (char c : suite) h = mix(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
        return mix(h ^ mix(case_index + 0x632BE59BD9B4E019ull));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // uniform in [0,1), 53 usable bits
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Box-Muller; avoids std::normal_distribution so streams are identical
    // across standard libraries.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double th = 2.0 * M_PI * u2;
        spare_ = r * std::sin(th);
        have_spare_ = true;
        return r * std::cos(th);
    }

    Vec gaussian_vec(int n) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = normal();
        return v;
    }

    Vec unit_vec(int n) {
        Vec v = gaussian_vec(n);
        double s = v.norm();
        while (s < 1e-12) {
            v = gaussian_vec(n);
            s = v.norm();
        }
        return v / s;
    }

    int index(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace conelab
