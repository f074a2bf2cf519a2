#pragma once

#include "secondsound/tensor.hpp"

namespace secondsound {

// The 5-tuple every referential response function is evaluated on:
// deformation gradient, absolute temperature, referential electric
// field, referential heat flux, referential temperature gradient.
struct ReferentialState {
    Mat3 F = Mat3::identity();
    double theta = 1.0;  // K, > 0
    Vec3 W;
    Vec3 Q;
    Vec3 G;
};

}  // namespace secondsound
