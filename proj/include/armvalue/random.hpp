#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

namespace armvalue {

// splitmix64; used to derive independent stream seeds from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seeded draw source for the sampler.  Draws must be bit-identical for a
// given seed wherever the library is built; the standard leaves <random>
// distribution sequences implementation-defined, so the normal and gamma
// algorithms live here, on top of the fully specified mt19937_64.
class GibbsRng {
public:
    explicit GibbsRng(std::uint64_t seed) : engine_(seed) {}

    // [0, 1)
    double uniform() { return double(engine_() >> 11) * 0x1p-53; }

    // (0, 1]; safe under log()
    double uniform_positive() { return double((engine_() >> 11) + 1) * 0x1p-53; }

    double standard_normal() {
        // Box-Muller, cosine branch only
        double u1 = uniform_positive();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double sd) { return mean + sd * standard_normal(); }

    // Gamma(shape, scale 1), Marsaglia-Tsang squeeze; shapes below one are
    // boosted through Gamma(shape + 1).
    double gamma(double shape) {
        if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be positive");
        if (shape < 1.0) {
            double u = uniform_positive();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        while (true) {
            double x = standard_normal();
            double t = 1.0 + c * x;
            if (t <= 0.0) continue;
            double v = t * t * t;
            double u = uniform_positive();
            if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
        }
    }

    // InverseGamma(shape, scale): density proportional to
    // x^-(shape+1) * exp(-scale / x).
    double inverse_gamma(double shape, double scale) {
        if (!(scale > 0.0)) throw std::invalid_argument("inverse gamma scale must be positive");
        return scale / gamma(shape);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Draw source that returns each distribution's mean; turns one Gibbs sweep
// into a deterministic fixed-point iteration for conditional-mean checks.
// Inverse-gamma means require shape > 1.
struct MeanValueRng {
    double normal(double mean, double) const { return mean; }

    double inverse_gamma(double shape, double scale) const {
        if (!(shape > 1.0))
            throw std::invalid_argument("inverse gamma mean undefined for shape <= 1");
        return scale / (shape - 1.0);
    }
};

}  // namespace armvalue
