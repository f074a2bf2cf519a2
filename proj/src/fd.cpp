#include "secondsound/fd.hpp"

#include <cmath>

namespace secondsound {
namespace {

// Central difference of a scalar function of one coordinate, where the
// coordinate is accessed through get/set closures on the state.
template <typename Get, typename Set>
double central(const ScalarStateFn& f, ReferentialState at, Get get, Set set,
               const FDScheme& scheme) {
    const double x0 = get(at);
    const auto d2 = [&](double h) {
        ReferentialState sp = at, sm = at;
        set(sp, x0 + h);
        set(sm, x0 - h);
        return (f(sp) - f(sm)) / (2.0 * h);
    };
    const double h = scheme.step(x0);
    if (scheme.order == 4) return (4.0 * d2(h / 2) - d2(h)) / 3.0;
    return d2(h);
}

Vec3& slot_ref(ReferentialState& s, VecSlot slot) {
    switch (slot) {
        case VecSlot::W: return s.W;
        case VecSlot::Q: return s.Q;
        default: return s.G;
    }
}

template <typename MatLike, typename Eval>
MatLike central_mat(const Eval& d2, double h, int order) {
    if (order == 4) return (d2(h / 2) * 4.0 - d2(h)) / 3.0;
    return d2(h);
}

}  // namespace

double fd_gradient_theta(const ScalarStateFn& f, ReferentialState at, const FDScheme& scheme) {
    return central(
        f, at, [](const ReferentialState& s) { return s.theta; },
        [](ReferentialState& s, double x) { s.theta = x; }, scheme);
}

Vec3 fd_gradient_vec(const ScalarStateFn& f, ReferentialState at, VecSlot slot,
                     const FDScheme& scheme) {
    Vec3 g;
    for (int i = 0; i < 3; ++i) {
        g[i] = central(
            f, at,
            [&](const ReferentialState& s) {
                ReferentialState tmp = s;
                return slot_ref(tmp, slot)[i];
            },
            [&](ReferentialState& s, double x) { slot_ref(s, slot)[i] = x; }, scheme);
    }
    return g;
}

Mat3 fd_gradient_F(const ScalarStateFn& f, ReferentialState at, const FDScheme& scheme) {
    Mat3 g;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            g(r, c) = central(
                f, at, [&](const ReferentialState& s) { return s.F(r, c); },
                [&](ReferentialState& s, double x) { s.F(r, c) = x; }, scheme);
        }
    return g;
}

Mat3 fd_derivative_theta(const MatStateFn& f, ReferentialState at, const FDScheme& scheme) {
    const double h = scheme.step(at.theta);
    const auto d2 = [&](double hh) {
        ReferentialState sp = at, sm = at;
        sp.theta += hh;
        sm.theta -= hh;
        return (f(sp) - f(sm)) / (2.0 * hh);
    };
    return central_mat<Mat3>(d2, h, scheme.order);
}

Mat3 fd_second_derivative_theta(const MatStateFn& f, ReferentialState at,
                                const FDScheme& scheme) {
    // Three-point second difference; step chosen wider than the first
    // derivative's because the truncation/roundoff balance shifts.
    const double h = std::fmax(std::sqrt(scheme.step(at.theta)) * 1e-2, 1e-5 * std::fmax(1.0, std::fabs(at.theta)));
    ReferentialState sp = at, sm = at;
    sp.theta += h;
    sm.theta -= h;
    return (f(sp) - f(at) * 2.0 + f(sm)) / (h * h);
}

Rank4 fd_derivative_F(const MatStateFn& f, ReferentialState at, const FDScheme& scheme) {
    Rank4 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            const double h = scheme.step(at.F(r, c));
            const auto d2 = [&](double hh) {
                ReferentialState sp = at, sm = at;
                sp.F(r, c) += hh;
                sm.F(r, c) -= hh;
                return (f(sp) - f(sm)) / (2.0 * hh);
            };
            const Mat3 dm = central_mat<Mat3>(d2, h, scheme.order);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) out(a, b, r, c) = dm(a, b);
        }
    return out;
}

std::array<Mat3, 3> fd_derivative_W(const MatStateFn& f, ReferentialState at,
                                    const FDScheme& scheme) {
    std::array<Mat3, 3> out;
    for (int i = 0; i < 3; ++i) {
        const double h = scheme.step(at.W[i]);
        const auto d2 = [&](double hh) {
            ReferentialState sp = at, sm = at;
            sp.W[i] += hh;
            sm.W[i] -= hh;
            return (f(sp) - f(sm)) / (2.0 * hh);
        };
        out[i] = central_mat<Mat3>(d2, h, scheme.order);
    }
    return out;
}

}  // namespace secondsound
