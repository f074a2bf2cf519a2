#pragma once

#include <array>
#include <functional>

#include "secondsound/state.hpp"
#include "secondsound/tensor.hpp"

// Central-difference differentiation of response functions with respect
// to individual slots of a ReferentialState. This is the oracle every
// gradient audit is built on, so it stays independent of any analytic
// derivative a material may also provide.

namespace secondsound {

struct FDScheme {
    double relative_step = 1e-6;
    double absolute_floor = 1e-8;
    int order = 2;  // 2 = plain central, 4 = Richardson-extrapolated central

    double step(double x) const {
        const double h = std::fmax(relative_step * std::fabs(x), absolute_floor);
        return h;
    }
};

enum class VecSlot { W, Q, G };

using ScalarStateFn = std::function<double(const ReferentialState&)>;
using MatStateFn = std::function<Mat3(const ReferentialState&)>;

double fd_gradient_theta(const ScalarStateFn& f, ReferentialState at, const FDScheme& scheme);
Vec3 fd_gradient_vec(const ScalarStateFn& f, ReferentialState at, VecSlot slot,
                     const FDScheme& scheme);
Mat3 fd_gradient_F(const ScalarStateFn& f, ReferentialState at, const FDScheme& scheme);

Mat3 fd_derivative_theta(const MatStateFn& f, ReferentialState at, const FDScheme& scheme);
Mat3 fd_second_derivative_theta(const MatStateFn& f, ReferentialState at,
                                const FDScheme& scheme);
Rank4 fd_derivative_F(const MatStateFn& f, ReferentialState at, const FDScheme& scheme);
// dZ/dW_l for l = 0,1,2.
std::array<Mat3, 3> fd_derivative_W(const MatStateFn& f, ReferentialState at,
                                    const FDScheme& scheme);

}  // namespace secondsound
