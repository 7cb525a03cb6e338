#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace nearmiss::lattice {

using Vec3 = std::array<double, 3>;

// Columns are basis vectors throughout.
struct Mat2 {
    double a[2][2];
};

struct Mat3 {
    double a[3][3];
};

// Integer matrices used for unimodular transforms (|det| = 1).
struct IMat2 {
    std::int64_t a[2][2];
};

struct IMat3 {
    std::int64_t a[3][3];
};

inline double det(const Mat2& m) {
    return m.a[0][0] * m.a[1][1] - m.a[0][1] * m.a[1][0];
}

inline double det(const Mat3& m) {
    return m.a[0][0] * (m.a[1][1] * m.a[2][2] - m.a[1][2] * m.a[2][1]) -
           m.a[0][1] * (m.a[1][0] * m.a[2][2] - m.a[1][2] * m.a[2][0]) +
           m.a[0][2] * (m.a[1][0] * m.a[2][1] - m.a[1][1] * m.a[2][0]);
}

inline std::int64_t det(const IMat2& m) {
    return m.a[0][0] * m.a[1][1] - m.a[0][1] * m.a[1][0];
}

inline __int128 det(const IMat3& m) {
    auto e = [&](int r, int c) { return (__int128)m.a[r][c]; };
    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
           e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
           e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

inline Mat3 inverse(const Mat3& m) {
    double d = det(m);
    if (d == 0.0 || !std::isfinite(d))
        throw std::domain_error("inverse: degenerate 3x3 matrix");
    Mat3 r;
    r.a[0][0] = (m.a[1][1] * m.a[2][2] - m.a[1][2] * m.a[2][1]) / d;
    r.a[0][1] = (m.a[0][2] * m.a[2][1] - m.a[0][1] * m.a[2][2]) / d;
    r.a[0][2] = (m.a[0][1] * m.a[1][2] - m.a[0][2] * m.a[1][1]) / d;
    r.a[1][0] = (m.a[1][2] * m.a[2][0] - m.a[1][0] * m.a[2][2]) / d;
    r.a[1][1] = (m.a[0][0] * m.a[2][2] - m.a[0][2] * m.a[2][0]) / d;
    r.a[1][2] = (m.a[0][2] * m.a[1][0] - m.a[0][0] * m.a[1][2]) / d;
    r.a[2][0] = (m.a[1][0] * m.a[2][1] - m.a[1][1] * m.a[2][0]) / d;
    r.a[2][1] = (m.a[0][1] * m.a[2][0] - m.a[0][0] * m.a[2][1]) / d;
    r.a[2][2] = (m.a[0][0] * m.a[1][1] - m.a[0][1] * m.a[1][0]) / d;
    return r;
}

inline Mat3 mul(const Mat3& x, const Mat3& y) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += x.a[i][k] * y.a[k][j];
            r.a[i][j] = s;
        }
    return r;
}

inline Mat3 mul(const Mat3& x, const IMat3& y) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += x.a[i][k] * (double)y.a[k][j];
            r.a[i][j] = s;
        }
    return r;
}

inline IMat3 mul(const IMat3& x, const IMat3& y) {
    IMat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::int64_t s = 0;
            for (int k = 0; k < 3; ++k) s += x.a[i][k] * y.a[k][j];
            r.a[i][j] = s;
        }
    return r;
}

inline Vec3 matvec(const Mat3& m, const Vec3& v) {
    Vec3 r{};
    for (int i = 0; i < 3; ++i)
        r[i] = m.a[i][0] * v[0] + m.a[i][1] * v[1] + m.a[i][2] * v[2];
    return r;
}

inline Mat3 transpose(const Mat3& m) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.a[i][j] = m.a[j][i];
    return r;
}

// Sym^2: GL2 -> GL3 on ((p,q),(r,s)).
// Rows (p^2, pq, q^2), (2pr, ps+qr, 2qs), (r^2, rs, s^2).
inline Mat3 sym2(const Mat2& m) {
    double p = m.a[0][0], q = m.a[0][1], r = m.a[1][0], s = m.a[1][1];
    return Mat3{{{p * p, p * q, q * q},
                 {2 * p * r, p * s + q * r, 2 * q * s},
                 {r * r, r * s, s * s}}};
}

inline IMat3 sym2(const IMat2& m) {
    std::int64_t p = m.a[0][0], q = m.a[0][1], r = m.a[1][0], s = m.a[1][1];
    return IMat3{{{p * p, p * q, q * q},
                  {2 * p * r, p * s + q * r, 2 * q * s},
                  {r * r, r * s, s * s}}};
}

}  // namespace nearmiss::lattice
