#include "nearmiss/nearcurve.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nearmiss::nearcurve {

using lattice::AxisBox;
using lattice::Mat3;
using lattice::Vec3;

namespace {

// Dyadic height windows (zlo, zhi], highest first, down to the tail.
struct Window {
    long zlo, zhi;
    double t_lo, t_hi;
    double delta;  // window capture distance (incl. floor)
};

// Distance floor ~ 1/zhi^2: below it boxes carry < O(1) candidates and the
// partition only gets finer for no gain.
constexpr double kDeltaFloorFactor = 2.0;

double window_grad_min(const CurveSpec& curve, double t_lo, double t_hi) {
    double g = 1e300;
    double seed = std::nan("");
    for (int i = 0; i <= 64; ++i) {
        double t = t_lo + (t_hi - t_lo) * i / 64.0;
        ChartPoint c = curve.chart(t, seed);
        seed = c.v;
        g = std::min(g, curve.grad_norm(c.u, c.v));
    }
    return g * 0.8;
}

std::vector<Window> make_windows(const CurveSpec& curve,
                                 const SearchParams& p, double clamp_lo,
                                 double clamp_hi) {
    std::vector<Window> ws;
    long zhi = p.height;
    while (zhi > p.tail_height) {
        long zlo = std::max(zhi / 2, p.tail_height);
        Window w;
        w.zlo = zlo;
        w.zhi = zhi;
        w.t_lo = std::max(
            curve.window_t_min((double)zlo, (double)zhi, p.threshold),
            clamp_lo);
        w.t_hi = std::min(curve.t_max(zhi), clamp_hi);
        w.delta = 0;
        if (w.t_lo < w.t_hi) {
            double g = window_grad_min(curve, w.t_lo, w.t_hi);
            double cap = curve.capture_delta((double)zlo, (double)zhi, g,
                                             p.threshold);
            double floor = kDeltaFloorFactor / ((double)zhi * (double)zhi);
            w.delta = std::max(cap, floor);
        }
        ws.push_back(w);  // kept even when empty: stable chunk numbering
        zhi = zlo;
    }
    return ws;
}

// Patch width in t at parameter t: deviation kappa w^2 / 8 <= delta / 2,
// from a cheap per-curve curvature overestimate in the working chart.
double patch_width(const CurveSpec& curve, double t, const ChartPoint& c,
                   double delta, double range) {
    double kappa;     // second derivative in the working chart
    double speed;     // |d(abscissa)/dt| in the working chart
    bool swapped = std::fabs(c.dvdt) > std::fabs(c.dudt);
    switch (curve.kind()) {
        case CurveKind::PowerInt:
        case CurveKind::PowerReal: {
            double s = curve.exponent_approx();
            if (!swapped) {
                kappa = 4.0 * (s - 1.0) * std::pow(std::max(c.u, 1e-300), s - 2.0);
                speed = 1.0;
            } else {
                kappa = 4.0 * (s - 1.0) * std::pow(std::max(c.v, 1e-300), s - 2.0);
                speed = std::fabs(c.dvdt);
            }
            break;
        }
        case CurveKind::Trinorm: {
            if (!swapped) {
                kappa = 2.0 / (3.0 * std::pow(std::max(t, 1e-6), 5));
                speed = std::max(std::fabs(c.dudt), 1e-12);
            } else {
                kappa = 2.0 / (3.0 * std::pow(std::max(1.0 - t, 1e-6), 5));
                speed = std::max(std::fabs(c.dvdt), 1e-12);
            }
            break;
        }
        case CurveKind::Klein: {
            double fu = 3 * c.u * c.u * c.v + 1.0;
            double fv = c.u * c.u * c.u + 3 * c.v * c.v;
            double fuu = 6 * c.u * c.v, fuv = 3 * c.u * c.u, fvv = 6 * c.v;
            if (!swapped) {
                double m = -fu / fv;
                kappa = std::fabs((fuu + 2 * fuv * m + fvv * m * m) / fv);
                speed = std::max(std::fabs(c.dudt), 1e-12);
            } else {
                double m = -fv / fu;
                kappa = std::fabs((fvv + 2 * fuv * m + fuu * m * m) / fu);
                speed = std::max(std::fabs(c.dvdt), 1e-12);
            }
            // The sweep crosses the flex at the origin, where the chart is
            // cubic (u ~ -v^3): bound the third-order chord deviation too.
            double w3 = 2.0 * std::cbrt(1.25 * delta);
            double w2 = 2.0 * std::sqrt(delta / std::max(kappa, 1e-30)) / speed;
            double w = std::min(w2, w3 / speed);
            w = std::min(w, std::max(range / 8.0, 1e-12));
            w = std::min(w, 0.02);
            w = std::max(w, std::sqrt(delta) * 1e-3);
            return std::max(w, t * 1e-9 + 1e-14);
        }
        default:
            kappa = 1;
            speed = 1;
    }
    kappa = std::max(kappa, 1e-30);
    double w = 2.0 * std::sqrt(delta / kappa) / speed;
    w = std::min(w, std::max(range / 8.0, 1e-12));
    w = std::min(w, 0.02);
    // Never let a spike stall the sweep entirely.
    w = std::max(w, std::sqrt(delta) * 1e-3);
    w = std::max(w, t * 1e-9 + 1e-14);
    return w;
}

struct PatchGeom {
    double t0, t1;
    long index;
    Mat3 M;        // rows: height, abscissa, tangent-distance linear forms
    AxisBox box;   // absolute units per row
};

// Deterministic walk over one window's patches. The (t, seed) trajectory
// never depends on which patches the caller materializes, so shards agree
// on patch boundaries bit-for-bit.
class PatchWalk {
  public:
    PatchWalk(const CurveSpec& curve, const Window& w,
              const std::optional<long>& count)
        : curve_(curve), w_(w) {
        t_ = w.t_lo;
        if (count && *count > 0) uniform_ = (w.t_hi - w.t_lo) / (double)*count;
    }

    bool done() const { return t_ >= w_.t_hi; }

    // Advance one patch; geometry via materialize().
    void advance() {
        c0_ = curve_.chart(t_, seed_);
        seed_ = c0_.v;
        double w = uniform_ > 0
                       ? uniform_
                       : patch_width(curve_, t_, c0_, w_.delta,
                                     w_.t_hi - w_.t_lo);
        t0_ = t_;
        t1_ = std::min(t_ + w, w_.t_hi);
        t_ = t1_;
    }

    double t0() const { return t0_; }
    double t1() const { return t1_; }

    PatchGeom materialize(const CurveSpec& curve, const SearchParams& p,
                          long index) const {
        PatchGeom g;
        g.t0 = t0_;
        g.t1 = t1_;
        g.index = index;

        // Sample the arc across the patch.
        ChartPoint s[5];
        s[0] = c0_;
        double h = t1_ - t0_;
        double sd = c0_.v;
        for (int i = 1; i < 5; ++i) {
            double tt = t0_ + h * (double)i / 4.0;
            s[i] = curve.chart(tt, sd + s[i - 1].dvdt * h / 4.0);
            sd = s[i].v;
        }
        double umin = s[0].u, umax = s[0].u, vmin = s[0].v, vmax = s[0].v;
        double gmin = 1e300;
        for (auto& c : s) {
            umin = std::min(umin, c.u);
            umax = std::max(umax, c.u);
            vmin = std::min(vmin, c.v);
            vmax = std::max(vmax, c.v);
            gmin = std::min(gmin, curve.grad_norm(c.u, c.v));
        }
        double cap = curve.capture_delta((double)w_.zlo, (double)w_.zhi,
                                         gmin * 0.7, p.threshold);
        double delta = std::max(
            cap, kDeltaFloorFactor / ((double)w_.zhi * (double)w_.zhi));

        bool swapped = std::fabs(s[4].v - s[0].v) > std::fabs(s[4].u - s[0].u);
        double du = s[4].u - s[0].u, dv = s[4].v - s[0].v;
        double uc = 0.5 * (umin + umax), vc = 0.5 * (vmin + vmax);
        double m = swapped ? du / dv : dv / du;
        if (!std::isfinite(m)) {
            swapped = !swapped;
            m = swapped ? du / dv : dv / du;
        }
        double dev = 0;
        for (auto& c : s) {
            double e = swapped ? (c.u - uc) - m * (c.v - vc)
                               : (c.v - vc) - m * (c.u - uc);
            dev = std::max(dev, std::fabs(e));
        }

        double zhi = (double)w_.zhi, zlo = (double)w_.zlo;
        double pad = 1e-13 * (1.0 + std::fabs(uc) + std::fabs(vc));
        double hw_abs = swapped ? (vmax - vmin) / 2 : (umax - umin) / 2;
        double hw_dist = 2.0 * dev + 1.5 * delta + pad;

        if (!swapped) {
            g.M = Mat3{{{0, 0, 1},
                        {1, 0, -uc},
                        {-m, 1, m * uc - vc}}};
        } else {
            g.M = Mat3{{{0, 0, 1},
                        {0, 1, -vc},
                        {1, -m, m * vc - uc}}};
        }
        g.box.center = {(zlo + 1 + zhi) / 2, 0, 0};
        g.box.halfwidth = {(zhi - zlo - 1) / 2 + 0.45,
                           zhi * (hw_abs * 1.05 + pad),
                           zhi * hw_dist * 1.05};
        return g;
    }

  private:
    const CurveSpec& curve_;
    Window w_;
    double t_ = 0, seed_ = std::nan("");
    double uniform_ = -1;
    double t0_ = 0, t1_ = 0;
    ChartPoint c0_{};
};

// Exact ownership: canonical parameter in [t0, t1). Patch bounds are
// doubles, hence exact rationals.
bool owns(const CurveSpec& curve, const Integer& x, const Integer& y,
          const Integer& z, double t0, double t1) {
    Rational c = curve.ownership_coord(x, y, z);
    Rational lo, hi;
    if (curve.kind() == CurveKind::Trinorm) {
        Rational a(std::max(t0, 0.0)), b(std::max(t1, 0.0));
        lo = a * a * a;
        hi = b * b * b;
    } else {
        lo = Rational(t0);
        hi = Rational(t1);
    }
    return cmp(c, lo) >= 0 && cmp(c, hi) < 0;
}

struct PatchOutput {
    std::vector<ProjectiveHit> hits;
    std::vector<SegmentReport> segments;
};

void scan_geometry(const CurveSpec& curve, const SearchParams& p,
                   const Window& w, const PatchGeom& g, PatchOutput& out) {
    // Scale rows to unit halfwidths; the dual flag and the enumeration both
    // work on the scaled basis.
    Mat3 S;
    Vec3 centre;
    for (int i = 0; i < 3; ++i) {
        double s = g.box.halfwidth[i] > 0 ? 1.0 / g.box.halfwidth[i] : 1.0;
        for (int j = 0; j < 3; ++j) S.a[i][j] = g.M.a[i][j] * s;
        centre[i] = g.box.center[i] * s;
    }

    auto emit_segment = [&]() {
        auto flag = lattice::short_dual_hyperplane(S, 1e18);
        SegmentReport seg;
        seg.normal = flag ? flag->normal : std::array<std::int64_t, 3>{0, 0, 1};
        seg.t0 = g.t0;
        seg.t1 = g.t1;
        seg.patch_index = g.index;
        out.segments.push_back(seg);
    };

    Mat3 C;
    lattice::IMat3 U;
    try {
        std::tie(C, U) = lattice::reduce_3d(S);
    } catch (const std::domain_error&) {
        emit_segment();
        return;
    }

    // Degenerate patches are detected by the candidate budget; the dual
    // flag then certifies the hyperplane for the segment report. A short
    // dual vector alone does not short-circuit: when the box stays cheap,
    // enumerating it keeps the output point-complete.
    AxisBox unit{centre, {1, 1, 1}};
    std::string rs;
    double ra, mv;
    auto ft = CurveSpec::make_fast_threshold(p.threshold);
    try {
        lattice::enumerate_prereduced(
            C, unit, p.box_budget, "patch " + std::to_string(g.index),
            [&](std::int64_t a, std::int64_t b, std::int64_t c) {
                std::int64_t pp = U.a[0][0] * a + U.a[0][1] * b + U.a[0][2] * c;
                std::int64_t qq = U.a[1][0] * a + U.a[1][1] * b + U.a[1][2] * c;
                std::int64_t rr = U.a[2][0] * a + U.a[2][1] * b + U.a[2][2] * c;
                if (rr == 0 && qq == 0 && pp == 0) return;
                if (curve.fast_reject(pp, qq, rr, p.height, ft)) return;
                Integer x(pp), y(qq), z(rr);
                if (!curve.canonicalize(x, y, z)) return;
                if (abs(x) > p.height || abs(y) > p.height || abs(z) > p.height)
                    return;
                if (z <= w.zlo || z > w.zhi) return;
                if (curve.excluded(x, y, z, p.height)) return;
                if (!curve.qualify(x, y, z, p.threshold, p.prec, rs, ra, mv))
                    return;
                if (!owns(curve, x, y, z, g.t0, g.t1)) return;
                out.hits.push_back(
                    {x, y, z, rs, ra, mv, g.index});
            });
    } catch (const lattice::BudgetExceeded&) {
        out.hits.clear();  // the segment replaces any partial enumeration
        emit_segment();
    }
}

// Tail: serial reference scan over small heights, filtered by shard and
// the requested parameter window.
void run_tail(const CurveSpec& curve, const SearchParams& p, long tail_hi,
              double t_lo, double t_hi, SearchResult& out) {
    curve.brute_force(
        tail_hi, p.height, p.threshold, p.prec,
        [&](const Integer& x, const Integer& y, const Integer& z,
            const std::string& rs, double ra, double mv) {
            if (!owns(curve, x, y, z, t_lo, t_hi)) return;
            out.hits.push_back({x, y, z, rs, ra, mv, -1});
        },
        p.shard_index, p.shard_count);
}

void run_window(const CurveSpec& curve, const SearchParams& params,
                const Window& w, long window_ordinal, SearchResult& all) {
    if (!(w.t_lo < w.t_hi)) return;
    PatchWalk walk(curve, w, params.patch_count);
    long index = 0;
    const long base = window_ordinal * 100'000'000'000L;
    std::vector<PatchGeom> slab;
    auto flush = [&]() {
        std::vector<PatchOutput> outs(slab.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(params.threads)
#endif
        for (long i = 0; i < (long)slab.size(); ++i)
            scan_geometry(curve, params, w, slab[i], outs[i]);
        for (auto& o : outs) {
            for (auto& h : o.hits) all.hits.push_back(std::move(h));
            for (auto& s : o.segments) all.segments.push_back(s);
        }
        slab.clear();
    };
    while (!walk.done()) {
        walk.advance();
        bool mine = params.shard_count <= 1 ||
                    (index % params.shard_count) == (params.shard_index - 1);
        if (mine)
            slab.push_back(walk.materialize(curve, params, base + index));
        ++index;
        if ((long)slab.size() >= 8192) flush();
    }
    flush();
}

void finish(SearchResult& all) {
    std::sort(all.hits.begin(), all.hits.end(), hit_order);
    all.hits.erase(
        std::unique(all.hits.begin(), all.hits.end(),
                    [](const ProjectiveHit& a, const ProjectiveHit& b) {
                        return a.x == b.x && a.y == b.y && a.z == b.z;
                    }),
        all.hits.end());
    std::sort(all.segments.begin(), all.segments.end(),
              [](const SegmentReport& a, const SegmentReport& b) {
                  return a.patch_index < b.patch_index;
              });
}

}  // namespace

std::pair<Mat3, Vec3> build_patch_matrix(const CurveSpec& curve, double t0,
                                         double delta, long height,
                                         PrecisionPolicy) {
    if (!(t0 >= curve.t_min(height) - 1e-9 &&
          t0 <= curve.t_max(height) + 1e-9))
        throw std::domain_error("build_patch_matrix: t0 outside range");
    if (!(delta > 0)) throw std::domain_error("build_patch_matrix: delta <= 0");
    ChartPoint c = curve.chart(t0);
    bool swapped = std::fabs(c.dvdt) > std::fabs(c.dudt);
    Mat3 M;
    if (!swapped) {
        double yp = c.dvdt / c.dudt;
        M = Mat3{{{0, 0, delta},
                  {1, 0, -c.u},
                  {-yp / delta, 1 / delta, (c.u * yp - c.v) / delta}}};
    } else {
        double xp = c.dudt / c.dvdt;
        M = Mat3{{{0, 0, delta},
                  {0, 1, -c.v},
                  {1 / delta, -xp / delta, (c.v * xp - c.u) / delta}}};
    }
    return {M, Vec3{0, 0, 0}};
}

long chunk_count(const CurveSpec& curve, const SearchParams& params) {
    return (long)make_windows(curve, params, -1e300, 1e300).size() + 1;
}

SearchResult run_chunk(const CurveSpec& curve, const SearchParams& params,
                       long chunk, double t_lo, double t_hi) {
    SearchResult all;
    if (chunk == 0) {
        run_tail(curve, params, std::min(params.tail_height, params.height),
                 t_lo, t_hi, all);
    } else {
        auto windows = make_windows(curve, params, t_lo, t_hi);
        if (chunk - 1 >= (long)windows.size())
            throw std::out_of_range("run_chunk: no such chunk");
        run_window(curve, params, windows[chunk - 1], chunk - 1, all);
    }
    finish(all);
    return all;
}

SearchResult scan_patch(const CurveSpec& curve, const SearchParams& params,
                        double t_lo, double t_hi) {
    SearchResult all;
    auto windows = make_windows(curve, params, t_lo, t_hi);
    for (std::size_t i = 0; i < windows.size(); ++i)
        run_window(curve, params, windows[i], (long)i, all);
    run_tail(curve, params, std::min(params.tail_height, params.height), t_lo,
             t_hi, all);
    finish(all);
    return all;
}

SearchResult search(const CurveSpec& curve, const SearchParams& params) {
    return scan_patch(curve, params, -1e300, 1e300);
}

}  // namespace nearmiss::nearcurve
