#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nearmiss/curves.hpp"
#include "nearmiss/lattice.hpp"

namespace nearmiss::nearcurve {

struct SearchParams {
    long height = 100;  // N
    Threshold threshold = Threshold::merit_min(Rational(4));
    PrecisionPolicy prec{128};
    std::optional<long> patch_count;  // per-window uniform override
    int threads = 1;
    long box_budget = lattice::kDefaultBoxBudget;
    long tail_height = 512;  // direct-scanned below this height
    // Round-robin shard of the patch sequence (and of the tail's outer loop).
    int shard_index = 1;
    int shard_count = 1;
};

struct ProjectiveHit {
    Integer x, y, z;
    std::string residual;   // exact decimal, or 6 significant digits
    double residual_approx;
    double merit;
    long patch_index;  // -1 for the direct-scan tail
};

inline bool hit_order(const ProjectiveHit& a, const ProjectiveHit& b) {
    if (int c = cmp(a.z, b.z)) return c < 0;
    if (int c = cmp(a.y, b.y)) return c < 0;
    return cmp(a.x, b.x) < 0;
}

struct SegmentReport {
    std::array<std::int64_t, 3> normal;  // primitive, in (x, y, z) coefficients
    double t0, t1;
    long patch_index;
};

struct SearchResult {
    std::vector<ProjectiveHit> hits;
    std::vector<SegmentReport> segments;
};

// The affine patch matrix in its determinant +-1 normalization:
// rows (0, 0, delta), (1, 0, -u), (-y'/delta, 1/delta, (u y' - v)/delta)
// at the chart point for t0, with the roles of the two affine coordinates
// swapped when |y'| > 1. Target is the origin.
std::pair<lattice::Mat3, lattice::Vec3> build_patch_matrix(
    const CurveSpec& curve, double t0, double delta, long height,
    PrecisionPolicy prec);

// Search restricted to curve parameters in [t_lo, t_hi).
SearchResult scan_patch(const CurveSpec& curve, const SearchParams& params,
                        double t_lo, double t_hi);

// Full search: all qualifying triples of height <= params.height, sorted
// by (z, y, x); deterministic and independent of patching and threads.
SearchResult search(const CurveSpec& curve, const SearchParams& params);

// Chunk-level access for checkpointing: chunk 0 is the direct-scan tail,
// chunks 1..chunk_count-1 are the dyadic height windows, highest first.
long chunk_count(const CurveSpec& curve, const SearchParams& params);
SearchResult run_chunk(const CurveSpec& curve, const SearchParams& params,
                       long chunk, double t_lo = -1e300, double t_hi = 1e300);

}  // namespace nearmiss::nearcurve
