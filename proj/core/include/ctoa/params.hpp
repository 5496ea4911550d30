#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ctoa {

/// Dial settings of the confined system: mass, action scale, half-width of
/// the box, and the boundary-condition angle of the momentum family
/// phi(-l) = exp(-2i*gamma) * phi(l).
struct PhysicalParams {
    double mu = 1.0;
    double hbar = 1.0;
    double l = 1.0;
    double gamma = std::numbers::pi / 2;

    void validate() const {
        if (!(mu > 0.0)) throw std::invalid_argument("PhysicalParams: mu must be positive");
        if (!(hbar > 0.0)) throw std::invalid_argument("PhysicalParams: hbar must be positive");
        if (!(l > 0.0)) throw std::invalid_argument("PhysicalParams: l must be positive");
        if (!(std::abs(gamma) < std::numbers::pi))
            throw std::invalid_argument("PhysicalParams: |gamma| must be < pi");
    }

    bool periodic() const { return gamma == 0.0; }
};

} // namespace ctoa
