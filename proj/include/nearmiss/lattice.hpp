#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nearmiss/mat.hpp"

namespace nearmiss::lattice {

struct BudgetExceeded : std::runtime_error {
    BudgetExceeded(double est, std::string where_)
        : std::runtime_error("candidate budget exceeded (" + where_ + ")"),
          estimate(est),
          where(std::move(where_)) {}
    double estimate;
    std::string where;
};

// Primitive integer normal in basis-coefficient space: every short vector
// B*m of the flagged lattice satisfies normal . m = 0.
struct HyperplaneFlag {
    std::array<std::int64_t, 3> normal;
};

// Gauss (Lagrange) reduction on columns. Returns (B*U, U) with |det U| = 1,
// |b1| <= |b2| and |<b1,b2>| <= |b1|^2 / 2.
std::pair<Mat2, IMat2> gauss_reduce_2d(const Mat2& B);

// LLL with delta = 0.99 plus a pairwise size-reduction polish.
// Returns (B*U, U) with |det U| = 1; first column within 2x of the
// shortest nonzero vector.
std::pair<Mat3, IMat3> reduce_3d(const Mat3& B);

// Axis-aligned target box in the transformed coordinates: the i-th
// coordinate of B*w must land in [center[i]-halfwidth[i], center[i]+halfwidth[i]].
struct AxisBox {
    Vec3 center;
    Vec3 halfwidth;
};

inline constexpr long kDefaultBoxBudget = 10'000'000;

// Core superset enumeration for a basis C that is already well reduced.
// Visits every integer w with C*w inside a slight inflation of `box`:
// per-coordinate ranges come from l^1 norms of rows of C^-1 (inflated by
// 1 + 2^-20), and the widest axis is re-narrowed per outer pair from the
// row constraints. Callers re-test candidates exactly.
// Throws BudgetExceeded when the coordinate-range product exceeds `budget`.
template <class Visit>
void enumerate_prereduced(const Mat3& C, const AxisBox& box, long budget,
                          const std::string& where, Visit&& visit) {
    Mat3 Cinv = inverse(C);
    constexpr double inflate = 1.0 + 0x1p-20;

    Vec3 centre = matvec(Cinv, box.center);
    double lo[3], hi[3];
    for (int i = 0; i < 3; ++i) {
        double rad = 0;
        for (int j = 0; j < 3; ++j)
            rad += std::fabs(Cinv.a[i][j]) * box.halfwidth[j];
        rad *= inflate;
        lo[i] = std::floor(centre[i] - rad);
        hi[i] = std::ceil(centre[i] + rad);
    }

    // Two narrowest ranges outside; the widest axis is narrowed exactly per
    // outer pair (a near-degenerate basis direction widens only that axis).
    int order[3] = {0, 1, 2};
    std::sort(order, order + 3,
              [&](int a, int b) { return hi[a] - lo[a] < hi[b] - lo[b]; });
    const int o0 = order[0], o1 = order[1], o2 = order[2];

    // Budget covers both loop overhead and visited candidates.
    double outer = (hi[o0] - lo[o0] + 1) * (hi[o1] - lo[o1] + 1);
    if (!(outer <= (double)budget)) throw BudgetExceeded(outer, where);
    long visited = 0;

    std::int64_t w[3];
    for (double w0 = lo[o0]; w0 <= hi[o0]; ++w0) {
        for (double w1 = lo[o1]; w1 <= hi[o1]; ++w1) {
            double rlo = lo[o2], rhi = hi[o2];
            for (int i = 0; i < 3 && rlo <= rhi; ++i) {
                double fixed = C.a[i][o0] * w0 + C.a[i][o1] * w1;
                double coef = C.a[i][o2];
                double cl = box.center[i] - box.halfwidth[i] * inflate - fixed;
                double ch = box.center[i] + box.halfwidth[i] * inflate - fixed;
                if (std::fabs(coef) < 1e-300) {
                    if (cl > 0 || ch < 0) rlo = rhi + 1;
                    continue;
                }
                double a = cl / coef, b = ch / coef;
                if (a > b) std::swap(a, b);
                rlo = std::max(rlo, std::ceil(a - 1e-9));
                rhi = std::min(rhi, std::floor(b + 1e-9));
            }
            if (rhi >= rlo) {
                visited += (long)(rhi - rlo) + 1;
                if (visited > budget)
                    throw BudgetExceeded((double)visited, where);
            }
            w[o0] = (std::int64_t)w0;
            w[o1] = (std::int64_t)w1;
            for (double w2 = rlo; w2 <= rhi; ++w2) {
                w[o2] = (std::int64_t)w2;
                visit(w[0], w[1], w[2]);
            }
        }
    }
}

// As above for an arbitrary basis B: reduces first, then maps candidates
// back to B's coordinates.
void for_each_candidate(const Mat3& B, const AxisBox& box, long budget,
                        const std::string& where,
                        const std::function<void(std::int64_t, std::int64_t,
                                                 std::int64_t)>& visit);

// All w in Z^3 with ||B*w - target||_inf <= bound, exactly filtered.
std::vector<std::array<std::int64_t, 3>> enumerate_box(
    const Mat3& B, const Vec3& target, double bound,
    long budget = kDefaultBoxBudget);

// If the dual lattice of B*Z^3 has a vector of norm <= threshold, returns
// the corresponding primitive integer normal.
std::optional<HyperplaneFlag> short_dual_hyperplane(const Mat3& B,
                                                    double threshold);

// The effective constant M_n(t) from the radial Schwartz function
// f(x) = (|x|^2 + a) e^{-pi c |x|^2} with a = 1/c^2 - n/(2 pi c):
// M_n(t) = fhat(0) / min_{|x| <= t} f(x), fhat(0) = 1/c^2.
double lemma1_bound(int n, double t, double c);

}  // namespace nearmiss::lattice
