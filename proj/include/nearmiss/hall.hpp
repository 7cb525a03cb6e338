#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "nearmiss/integer.hpp"
#include "nearmiss/lattice.hpp"
#include "nearmiss/real.hpp"

namespace nearmiss::hall {

using exactcore::Integer;
using exactcore::PrecisionPolicy;
using exactcore::Rational;

// The raw problem is 0 < |4x^3 - 3y^2| < T sqrt(x); the cases with 3 | x
// and 6 | y carry the x^3 - y^2 records. x_min/x_max below are in the
// x^3 - y^2 domain (raw bounds are 3x those).
struct HallParams {
    Integer x_min = 1;
    Integer x_max = 100000;
    Rational raw_threshold = 200;  // T
    Rational ratio_min = 1;        // report filter on r = sqrt(x)/|k|
    double grid_factor = 1.0;      // b spacing = grid_factor / sqrt(X)
    PrecisionPolicy prec{128};
    int threads = 1;
    // Grid points near low rationals carry whole arithmetic progressions of
    // candidates (the continued-fraction fibers); their total stays within
    // the X^(1/2) log X work bound, so the per-step budget is generous.
    long box_budget = 1'000'000'000;
    Integer direct_below = 4096;   // direct scan below this x
    int shard_index = 1;
    int shard_count = 1;
};

struct HallHit {
    Integer x, y, k;  // x^3 - y^2 = k, y > 0 nearest
    double r;         // sqrt(x) / |k|
    Integer raw_x, raw_y, raw_k;
    bool reportable;  // r >= ratio_min, exactly decided
};

inline bool hall_order(const HallHit& a, const HallHit& b) {
    return cmp(a.x, b.x) < 0;
}

// Unique (zeta, eta) with x = 3 zeta^2 + eta, zeta > 0, eta in (-3z, 3z].
std::pair<Integer, Integer> decompose_x(const Integer& x);

// N_b (2x2, columns are basis vectors) and the off-center target u_b for
// one slope sample b at level scale X (raw units).
std::pair<lattice::Mat2, lattice::Vec3> build_grid_matrix(double b, double X);

// One dyadic level in raw units: scans raw x in (raw_lo, raw_hi].
struct Level {
    Integer raw_lo, raw_hi;
    long grid_points;  // b-grid size for this level
};
std::vector<Level> make_levels(const HallParams& p);

// Scan one grid index (1-based) of a level. Emits only hits owned by this
// b (nearest grid point to beta = eta/zeta), so the union over the grid is
// duplicate-free.
void scan_b(const Level& lev, long b_index, const HallParams& p,
            std::vector<HallHit>& out);

// The full search: dyadic levels swept over their b-grids plus a direct
// tail, deduplicated and sorted by x.
std::vector<HallHit> hall_search(const HallParams& p);

// Serial reference: nearest y to x^{3/2} for every x in [lo, hi].
// Oracle for hall_search and the backend of the direct tail.
std::vector<HallHit> direct_scan(const Integer& lo, const Integer& hi,
                                 const HallParams& p);

// (x, y, k, r) when 3 | raw_x and 6 | raw_y; nullopt otherwise.
std::optional<std::tuple<Integer, Integer, Integer, double>> to_hall_record(
    const Integer& raw_x, const Integer& raw_y, const Integer& raw_k);

// Chunk-level access: chunks are (level, block of 65536 grid points) pairs
// in level order, then one direct-tail chunk.
long chunk_count(const HallParams& p);
std::vector<HallHit> run_chunk(const HallParams& p, long chunk);
std::string chunk_id(const HallParams& p, long chunk);

}  // namespace nearmiss::hall
