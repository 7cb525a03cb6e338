#include "nearmiss/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nearmiss::lattice {

namespace {

double col_norm2(const Mat2& m, int c) {
    return m.a[0][c] * m.a[0][c] + m.a[1][c] * m.a[1][c];
}

double col_norm2(const Mat3& m, int c) {
    return m.a[0][c] * m.a[0][c] + m.a[1][c] * m.a[1][c] +
           m.a[2][c] * m.a[2][c];
}

double col_dot(const Mat3& m, int c1, int c2) {
    return m.a[0][c1] * m.a[0][c2] + m.a[1][c1] * m.a[1][c2] +
           m.a[2][c1] * m.a[2][c2];
}

void swap_cols(Mat3& m, int c1, int c2) {
    for (int i = 0; i < 3; ++i) std::swap(m.a[i][c1], m.a[i][c2]);
}

void swap_cols(IMat3& m, int c1, int c2) {
    for (int i = 0; i < 3; ++i) std::swap(m.a[i][c1], m.a[i][c2]);
}

// col[dst] -= q * col[src]
void axpy_col(Mat3& m, int dst, int src, double q) {
    for (int i = 0; i < 3; ++i) m.a[i][dst] -= q * m.a[i][src];
}

void axpy_col(IMat3& m, int dst, int src, std::int64_t q) {
    for (int i = 0; i < 3; ++i) m.a[i][dst] -= q * m.a[i][src];
}

}  // namespace

std::pair<Mat2, IMat2> gauss_reduce_2d(const Mat2& B) {
    double scale = std::sqrt(col_norm2(B, 0) + col_norm2(B, 1));
    if (!(std::fabs(det(B)) > 1e-14 * scale * scale))
        throw std::domain_error("gauss_reduce_2d: degenerate basis");

    Mat2 C = B;
    IMat2 U{{{1, 0}, {0, 1}}};
    for (int iter = 0; iter < 256; ++iter) {
        if (col_norm2(C, 0) > col_norm2(C, 1)) {
            std::swap(C.a[0][0], C.a[0][1]);
            std::swap(C.a[1][0], C.a[1][1]);
            std::swap(U.a[0][0], U.a[0][1]);
            std::swap(U.a[1][0], U.a[1][1]);
        }
        double dot = C.a[0][0] * C.a[0][1] + C.a[1][0] * C.a[1][1];
        std::int64_t q = std::llround(dot / col_norm2(C, 0));
        if (q == 0) break;
        C.a[0][1] -= (double)q * C.a[0][0];
        C.a[1][1] -= (double)q * C.a[1][0];
        U.a[0][1] -= q * U.a[0][0];
        U.a[1][1] -= q * U.a[1][0];
    }
    if (col_norm2(C, 0) > col_norm2(C, 1)) {
        std::swap(C.a[0][0], C.a[0][1]);
        std::swap(C.a[1][0], C.a[1][1]);
        std::swap(U.a[0][0], U.a[0][1]);
        std::swap(U.a[1][0], U.a[1][1]);
    }
    return {C, U};
}

std::pair<Mat3, IMat3> reduce_3d(const Mat3& B) {
    double scale = 0;
    for (int c = 0; c < 3; ++c) scale = std::max(scale, col_norm2(B, c));
    double d = det(B);
    // Rows of very different magnitude are expected (thin boxes); only a
    // true rank drop is an error.
    if (d == 0.0 || !std::isfinite(d) || !std::isfinite(scale) ||
        std::fabs(d) < 1e-250 * scale * std::sqrt(scale))
        throw std::domain_error("reduce_3d: degenerate basis");

    Mat3 C = B;
    IMat3 U{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

    constexpr double delta = 0.99;
    // Gram-Schmidt data, recomputed as columns change: cheap at n = 3.
    double ns[3];   // |b_i*|^2
    double mu[3][3];
    auto gso = [&]() {
        Vec3 star[3];
        for (int i = 0; i < 3; ++i) {
            for (int r = 0; r < 3; ++r) star[i][r] = C.a[r][i];
            for (int j = 0; j < i; ++j) {
                double d = 0;
                for (int r = 0; r < 3; ++r) d += C.a[r][i] * star[j][r];
                mu[i][j] = d / ns[j];
                for (int r = 0; r < 3; ++r) star[i][r] -= mu[i][j] * star[j][r];
            }
            ns[i] = star[i][0] * star[i][0] + star[i][1] * star[i][1] +
                    star[i][2] * star[i][2];
        }
    };

    gso();
    int k = 1;
    int iters = 0;
    while (k < 3) {
        if (++iters > 10000)
            throw std::runtime_error("reduce_3d: did not converge");
        if (!(ns[0] > 1e-290) || !(ns[1] > 1e-290) || !(ns[2] > 1e-290))
            throw std::domain_error("reduce_3d: degenerate basis");
        for (int j = k - 1; j >= 0; --j) {
            std::int64_t q = std::llround(mu[k][j]);
            if (q != 0) {
                axpy_col(C, k, j, (double)q);
                axpy_col(U, k, j, q);
                gso();
            }
        }
        if (ns[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * ns[k - 1]) {
            ++k;
        } else {
            swap_cols(C, k, k - 1);
            swap_cols(U, k, k - 1);
            gso();
            k = std::max(k - 1, 1);
        }
    }

    // Re-express the basis in one multiplication to drop incremental
    // floating drift.
    C = mul(B, U);

    // Pairwise polish: try to shorten any column by an integer multiple of
    // another until stable.
    bool changed = true;
    int rounds = 0;
    while (changed && ++rounds < 64) {
        changed = false;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                double q = col_dot(C, i, j) / col_norm2(C, j);
                std::int64_t iq = std::llround(q);
                if (iq == 0) continue;
                double before = col_norm2(C, i);
                axpy_col(C, i, j, (double)iq);
                if (col_norm2(C, i) < before * (1 - 1e-12)) {
                    axpy_col(U, i, j, iq);
                    changed = true;
                } else {
                    axpy_col(C, i, j, -(double)iq);
                }
            }
    }
    // Sort columns by norm, shortest first.
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (col_norm2(C, j) < col_norm2(C, i)) {
                swap_cols(C, i, j);
                swap_cols(U, i, j);
            }
    return {C, U};
}

void for_each_candidate(const Mat3& B, const AxisBox& box, long budget,
                        const std::string& where,
                        const std::function<void(std::int64_t, std::int64_t,
                                                 std::int64_t)>& visit) {
    auto [C, U] = reduce_3d(B);
    enumerate_prereduced(
        C, box, budget, where,
        [&](std::int64_t a, std::int64_t b, std::int64_t c) {
            // Map back through U: w = U * w'.
            std::int64_t x = U.a[0][0] * a + U.a[0][1] * b + U.a[0][2] * c;
            std::int64_t y = U.a[1][0] * a + U.a[1][1] * b + U.a[1][2] * c;
            std::int64_t z = U.a[2][0] * a + U.a[2][1] * b + U.a[2][2] * c;
            visit(x, y, z);
        });
}

std::vector<std::array<std::int64_t, 3>> enumerate_box(const Mat3& B,
                                                       const Vec3& target,
                                                       double bound,
                                                       long budget) {
    if (!(bound > 0)) throw std::domain_error("enumerate_box: bound must be > 0");
    std::vector<std::array<std::int64_t, 3>> out;
    AxisBox box{target, {bound, bound, bound}};
    for_each_candidate(B, box, budget, "enumerate_box",
                       [&](std::int64_t x, std::int64_t y, std::int64_t z) {
                           for (int i = 0; i < 3; ++i) {
                               double e = B.a[i][0] * (double)x +
                                          B.a[i][1] * (double)y +
                                          B.a[i][2] * (double)z - target[i];
                               if (std::fabs(e) > bound) return;
                           }
                           out.push_back({x, y, z});
                       });
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<HyperplaneFlag> short_dual_hyperplane(const Mat3& B,
                                                    double threshold) {
    Mat3 D = transpose(inverse(B));
    auto [DR, UD] = reduce_3d(D);
    double n2 = col_norm2(DR, 0);
    if (!(n2 <= threshold * threshold)) return std::nullopt;
    std::array<std::int64_t, 3> k{UD.a[0][0], UD.a[1][0], UD.a[2][0]};
    std::int64_t g = 0;
    for (auto v : k) g = std::gcd(g, v < 0 ? -v : v);
    if (g == 0) return std::nullopt;
    for (auto& v : k) v /= g;
    for (auto v : k) {
        if (v > 0) break;
        if (v < 0) {
            for (auto& w : k) w = -w;
            break;
        }
    }
    return HyperplaneFlag{k};
}

double lemma1_bound(int n, double t, double c) {
    if (!(n >= 1) || !(t > 0))
        throw std::domain_error("lemma1_bound: need n >= 1, t > 0");
    const double pi = 3.14159265358979323846;
    if (!(c > 0 && c < 2 * pi / n))
        throw std::domain_error("lemma1_bound: c outside (0, 2*pi/n)");
    double a = 1.0 / (c * c) - n / (2 * pi * c);
    auto f = [&](double x) { return (x * x + a) * std::exp(-pi * c * x * x); };
    // f rises from f(0) = a to a single interior maximum, then decays, so
    // the minimum on [0, t] is attained at an endpoint.
    double fmin = std::min(f(0.0), f(t));
    return (1.0 / (c * c)) / fmin;
}

}  // namespace nearmiss::lattice
