#pragma once

#include <stdexcept>
#include <string>
#include <variant>

namespace levyfp {

/// Symmetric alpha-stable noise with jump measure eps^alpha * |y|^{-1-alpha} dy
/// (generating triplet theta = 0, d = 0, nu = nu_alpha). The SDE reads
/// dX = f(b,X) dt + eps dL_t^alpha, which scales the unnormalized measure
/// nu_alpha by eps^alpha.
struct StableNoise {
    double alpha;    // stability index, strictly inside (0, 2)
    double epsilon;  // noise intensity, > 0
};

/// Pure Gaussian noise (triplet theta = 0, d = sigma^2, nu = 0).
struct GaussianNoise {
    double sigma;  // > 0
};

class NoiseSpec {
public:
    static NoiseSpec stable(double alpha, double epsilon) {
        if (!(alpha > 0.0 && alpha < 2.0))
            throw std::invalid_argument("alpha must lie in (0,2), got " + std::to_string(alpha));
        if (!(epsilon > 0.0))
            throw std::invalid_argument("epsilon must be positive, got " + std::to_string(epsilon));
        return NoiseSpec(StableNoise{alpha, epsilon});
    }

    static NoiseSpec gaussian(double sigma) {
        if (!(sigma > 0.0))
            throw std::invalid_argument("sigma must be positive, got " + std::to_string(sigma));
        return NoiseSpec(GaussianNoise{sigma});
    }

    bool is_stable() const { return std::holds_alternative<StableNoise>(v_); }
    bool is_gaussian() const { return std::holds_alternative<GaussianNoise>(v_); }

    const StableNoise& as_stable() const { return std::get<StableNoise>(v_); }
    const GaussianNoise& as_gaussian() const { return std::get<GaussianNoise>(v_); }

private:
    explicit NoiseSpec(std::variant<StableNoise, GaussianNoise> v) : v_(v) {}
    std::variant<StableNoise, GaussianNoise> v_;
};

}  // namespace levyfp
