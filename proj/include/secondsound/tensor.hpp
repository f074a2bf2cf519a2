#pragma once

#include <array>
#include <cmath>
#include <cstddef>

// Small dense 3-vector / 3x3-tensor values used throughout the library.
//
// Conventions:
//  - Mat3 is row-major: m(r, c).
//  - Two-point tensors (deformation gradient F, first Piola-Kirchhoff
//    stress S) carry the spatial index first: F(i, K), S(i, K).
//  - Rank4 stores D(a, b, c, d) = d M_ab / d F_cd for tensor-by-tensor
//    derivatives.

namespace secondsound {

struct Vec3 {
    std::array<double, 3> v{0.0, 0.0, 0.0};

    Vec3() = default;
    Vec3(double x, double y, double z) : v{x, y, z} {}

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    Vec3 operator+(const Vec3& o) const { return {v[0] + o[0], v[1] + o[1], v[2] + o[2]}; }
    Vec3 operator-(const Vec3& o) const { return {v[0] - o[0], v[1] - o[1], v[2] - o[2]}; }
    Vec3 operator-() const { return {-v[0], -v[1], -v[2]}; }
    Vec3 operator*(double s) const { return {v[0] * s, v[1] * s, v[2] * s}; }
    Vec3 operator/(double s) const { return {v[0] / s, v[1] / s, v[2] / s}; }
    Vec3& operator+=(const Vec3& o) {
        for (int i = 0; i < 3; ++i) v[i] += o[i];
        return *this;
    }

    double dot(const Vec3& o) const { return v[0] * o[0] + v[1] * o[1] + v[2] * o[2]; }
    double norm() const { return std::sqrt(dot(*this)); }
    double norm_inf() const {
        return std::fmax(std::fabs(v[0]), std::fmax(std::fabs(v[1]), std::fabs(v[2])));
    }
    bool finite() const {
        return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
    }

    static Vec3 zero() { return {}; }
};

inline Vec3 operator*(double s, const Vec3& a) { return a * s; }

struct Mat3 {
    std::array<double, 9> m{};  // row-major

    Mat3() = default;
    Mat3(double a00, double a01, double a02,
         double a10, double a11, double a12,
         double a20, double a21, double a22)
        : m{a00, a01, a02, a10, a11, a12, a20, a21, a22} {}

    double& operator()(std::size_t r, std::size_t c) { return m[3 * r + c]; }
    double operator()(std::size_t r, std::size_t c) const { return m[3 * r + c]; }

    static Mat3 identity() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }
    static Mat3 zero() { return {}; }
    static Mat3 diag(double a, double b, double c) { return {a, 0, 0, 0, b, 0, 0, 0, c}; }
    static Mat3 scaled_identity(double s) { return diag(s, s, s); }

    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
        return r;
    }
    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
        return r;
    }
    Mat3 operator*(double s) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] * s;
        return r;
    }
    Mat3 operator/(double s) const { return *this * (1.0 / s); }
    Mat3& operator+=(const Mat3& o) {
        for (int i = 0; i < 9; ++i) m[i] += o.m[i];
        return *this;
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }

    Vec3 operator*(const Vec3& x) const {
        Vec3 r;
        for (int i = 0; i < 3; ++i)
            r[i] = (*this)(i, 0) * x[0] + (*this)(i, 1) * x[1] + (*this)(i, 2) * x[2];
        return r;
    }

    Mat3 transpose() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    double trace() const { return m[0] + m[4] + m[8]; }

    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7])
             - m[1] * (m[3] * m[8] - m[5] * m[6])
             + m[2] * (m[3] * m[7] - m[4] * m[6]);
    }

    // Frobenius inner product A : B
    double ddot(const Mat3& o) const {
        double s = 0;
        for (int i = 0; i < 9; ++i) s += m[i] * o.m[i];
        return s;
    }
    double norm() const { return std::sqrt(ddot(*this)); }
    double norm_inf() const {
        double r = 0;
        for (double x : m) r = std::fmax(r, std::fabs(x));
        return r;
    }

    Mat3 sym() const { return (*this + transpose()) * 0.5; }
    Mat3 skew() const { return (*this - transpose()) * 0.5; }

    bool finite() const {
        for (double x : m)
            if (!std::isfinite(x)) return false;
        return true;
    }
};

inline Mat3 operator*(double s, const Mat3& a) { return a * s; }

inline Mat3 outer(const Vec3& a, const Vec3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = a[i] * b[j];
    return r;
}

// Rank-4 array for derivatives of 3x3 tensors, D(a,b,c,d) = dM_ab/dF_cd.
struct Rank4 {
    std::array<double, 81> d{};

    double& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t e) {
        return d[((a * 3 + b) * 3 + c) * 3 + e];
    }
    double operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t e) const {
        return d[((a * 3 + b) * 3 + c) * 3 + e];
    }

    static Rank4 zero() { return {}; }

    // (u . D v)_cd = u_a D(a,b,c,d) v_b : quadratic contraction over the
    // leading index pair, leaving a Mat3.
    Mat3 contract_leading(const Vec3& u, const Vec3& v) const {
        Mat3 r;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const double w = u[a] * v[b];
                if (w == 0.0) continue;
                for (int c = 0; c < 3; ++c)
                    for (int e = 0; e < 3; ++e) r(c, e) += w * (*this)(a, b, c, e);
            }
        return r;
    }

    double norm_inf() const {
        double r = 0;
        for (double x : d) r = std::fmax(r, std::fabs(x));
        return r;
    }
};

}  // namespace secondsound
