#include "levyfp/drift.hpp"

#include <cmath>

namespace levyfp {

std::vector<Equilibrium> deterministic_equilibria(double b) {
    if (b > 0.0) {
        const double r = std::sqrt(b);
        return {{-r, Stability::Stable}, {0.0, Stability::Unstable}, {r, Stability::Stable}};
    }
    return {{0.0, Stability::Stable, b == 0.0}};
}

}  // namespace levyfp
