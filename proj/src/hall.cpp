#include "nearmiss/hall.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nearmiss/mat.hpp"

namespace nearmiss::hall {

using lattice::AxisBox;
using lattice::IMat2;
using lattice::IMat3;
using lattice::Mat2;
using lattice::Mat3;
using lattice::Vec3;

namespace {

using i128 = __int128;

constexpr long kBlock = 65536;  // grid points per chunk


// r = sqrt(x)/|k| as a double for reporting.
double hall_ratio(const Integer& x, const Integer& k) {
    exactcore::Real rx = exactcore::Real::of(x, 128).sqrt();
    exactcore::Real rk = exactcore::Real::of(abs(k), 128);
    return (rx / rk).to_double();
}

// sqrt(x) >= q |k|  <=>  x qden^2 >= qnum^2 k^2, all exact.
bool ratio_at_least(const Integer& x, const Integer& k, const Rational& q) {
    Integer lhs = x * q.get_den() * q.get_den();
    Integer rhs = k * k * q.get_num() * q.get_num();
    return lhs >= rhs;
}

// |raw_k| < T sqrt(raw_x)  <=>  raw_k^2 Tden^2 < Tnum^2 raw_x.
bool raw_threshold_ok(const Integer& raw_x, const Integer& raw_k,
                      const Rational& T) {
    Integer lhs = raw_k * raw_k * T.get_den() * T.get_den();
    Integer rhs = T.get_num() * T.get_num() * raw_x;
    return lhs < rhs;
}

void push_hit(const Integer& raw_x, const Integer& raw_y, const Integer& raw_k,
              const HallParams& p, std::vector<HallHit>& out) {
    auto rec = to_hall_record(raw_x, raw_y, raw_k);
    if (!rec) return;
    auto& [x, y, k, r] = *rec;
    if (x < p.x_min || x > p.x_max) return;
    HallHit h;
    h.x = x;
    h.y = y;
    h.k = k;
    h.r = r;
    h.raw_x = raw_x;
    h.raw_y = raw_y;
    h.raw_k = raw_k;
    h.reportable = ratio_at_least(x, k, p.ratio_min);
    out.push_back(std::move(h));
}

}  // namespace

std::pair<Integer, Integer> decompose_x(const Integer& x) {
    if (x < 1) throw std::domain_error("decompose_x: x must be >= 1");
    Integer zeta = exactcore::isqrt(x / 3);
    if (zeta < 1) zeta = 1;
    // Adjust to eta in (-3 zeta, 3 zeta].
    while (x - 3 * zeta * zeta > 3 * zeta) ++zeta;
    while (zeta > 1 && x - 3 * zeta * zeta <= -3 * zeta) --zeta;
    Integer eta = x - 3 * zeta * zeta;
    return {zeta, eta};
}

std::pair<Mat2, Vec3> build_grid_matrix(double b, double X) {
    if (!(X >= 4)) throw std::domain_error("build_grid_matrix: X must be >= 4");
    double q = std::pow(X, 0.25);
    // Sym^2 of this matrix is exactly the level lattice
    //   ((0, 0, X^-1/2), (0, 1, -b), (X^1/2, -X^1/2 b/2, X^1/2 b^2/4)),
    // whose rows bound zeta/X^1/2, eta - b zeta, and the xi combination.
    Mat2 nb{{{0, 1.0 / q}, {q, -q * b / 2.0}}};
    Vec3 ub{0, 0, -std::sqrt(X) * b * b * b / 72.0};
    return {nb, ub};
}

std::vector<Level> make_levels(const HallParams& p) {
    std::vector<Level> levels;
    Integer cutoff = p.direct_below;
    if (cutoff < p.x_min) cutoff = p.x_min;
    Integer hi = p.x_max;
    while (hi > cutoff) {
        Integer lo = hi / 4;
        if (lo < cutoff) lo = cutoff;
        Level lev;
        lev.raw_lo = 3 * lo;
        lev.raw_hi = 3 * hi;
        double draw = mpz_get_d(lev.raw_hi.get_mpz_t());
        lev.grid_points =
            (long)std::ceil(6.0 * std::sqrt(draw) / p.grid_factor);
        levels.push_back(lev);
        hi = lo;
    }
    return levels;
}

void scan_b(const Level& lev, long b_index, const HallParams& p,
            std::vector<HallHit>& out) {
    const double X = mpz_get_d(lev.raw_hi.get_mpz_t());
    const long nb = lev.grid_points;
    const double b = -3.0 + 6.0 * (double)b_index / (double)nb;

    auto [nbm, ub] = build_grid_matrix(b, X);
    auto [r2, kb] = lattice::gauss_reduce_2d(nbm);
    Mat3 mp = lattice::sym2(r2);  // Sym^2(N_b K_b), already short
    IMat3 lb = lattice::sym2(kb);

    // Candidate box: zeta pinned by the level range, |eta - b zeta| by the
    // grid spacing, the xi row by the calibrated slack.
    const double sqX = std::sqrt(X);
    const double rlo = mpz_get_d(lev.raw_lo.get_mpz_t());
    double zeta_lo = std::floor(std::sqrt(rlo / 3.0)) - 1.0;
    double zeta_hi = std::ceil(std::sqrt(X / 3.0)) + 1.0;
    const double gf = p.grid_factor;
    const double s2 = 0.6 * gf + 0.45;
    const double s3 = 6.0 + 0.3 * gf * gf;
    AxisBox box;
    box.center = {(zeta_lo + zeta_hi) / (2 * sqX), 0, ub[2]};
    box.halfwidth = {(zeta_hi - zeta_lo) / (2 * sqX) + 1e-9, s2, s3};

    const i128 raw_lo128 = (i128)mpz_get_si(lev.raw_lo.get_mpz_t());
    const i128 raw_hi128 = (i128)mpz_get_si(lev.raw_hi.get_mpz_t());
    const i128 gmin = (i128)mpz_get_si(Integer(3 * p.x_min).get_mpz_t());
    const i128 gmax = (i128)mpz_get_si(Integer(3 * p.x_max).get_mpz_t());

    lattice::enumerate_prereduced(
        mp, box, p.box_budget, "hall b-step",
        [&](std::int64_t w0, std::int64_t w1, std::int64_t w2) {
            // v = L_b w in (xi, eta, zeta) coordinates.
            i128 xi = (i128)lb.a[0][0] * w0 + (i128)lb.a[0][1] * w1 +
                      (i128)lb.a[0][2] * w2;
            i128 eta = (i128)lb.a[1][0] * w0 + (i128)lb.a[1][1] * w1 +
                       (i128)lb.a[1][2] * w2;
            i128 zeta = (i128)lb.a[2][0] * w0 + (i128)lb.a[2][1] * w1 +
                        (i128)lb.a[2][2] * w2;
            if (zeta <= 0 || zeta > (i128)(zeta_hi + 1)) return;
            if (eta <= -3 * zeta || eta > 3 * zeta) return;
            if (xi > 8 * zeta + 4 || xi < -8 * zeta - 4) return;
            i128 x = 3 * zeta * zeta + eta;
            if (x <= raw_lo128 || x > raw_hi128) return;
            if (x < gmin || x > gmax) return;
            // Ownership: this b must be the grid point nearest eta/zeta.
            i128 owner = (2 * (eta + 3 * zeta) * nb + 6 * zeta) / (12 * zeta);
            if (owner < 1) owner = 1;
            if (owner > nb) owner = nb;
            if (owner != b_index) return;
            i128 z2 = zeta * zeta;
            i128 k4 = 9 * z2 * eta * eta + 4 * eta * eta * eta -
                      36 * z2 * zeta * xi - 18 * eta * zeta * xi -
                      3 * xi * xi;
            if (k4 == 0) return;
            i128 ak4 = k4 < 0 ? -k4 : k4;
            if (ak4 >= ((i128)1 << 62)) return;  // far beyond any threshold
            Integer raw_x = exactcore::integer_from_i128(x);
            Integer raw_k = exactcore::integer_from_i128(k4);
            if (!raw_threshold_ok(raw_x, raw_k, p.raw_threshold)) return;
            i128 y4 = 6 * z2 * zeta + 3 * eta * zeta + xi;
            if (y4 <= 0) return;
            push_hit(raw_x, exactcore::integer_from_i128(y4), raw_k, p, out);
        });
}

std::optional<std::tuple<Integer, Integer, Integer, double>> to_hall_record(
    const Integer& raw_x, const Integer& raw_y, const Integer& raw_k) {
    if (raw_k == 0) throw std::domain_error("to_hall_record: on-curve");
    if (raw_x % 3 != 0 || raw_y % 6 != 0) return std::nullopt;
    Integer x = raw_x / 3, y = raw_y / 6, k = raw_k / 108;
    // 4 raw_x^3 - 3 raw_y^2 = 108 (x^3 - y^2) exactly on this sublattice.
    return std::make_tuple(x, y, k, hall_ratio(x, k));
}

std::vector<HallHit> direct_scan(const Integer& lo, const Integer& hi,
                                 const HallParams& p) {
    std::vector<HallHit> out;
    // Fast path while x^3 fits comfortably in 128 bits.
    bool small = hi < Integer("4000000000000");
    if (small) {
        long a = mpz_get_si(lo.get_mpz_t()), b = mpz_get_si(hi.get_mpz_t());
        for (long x = std::max(a, 1L); x <= b; ++x) {
            unsigned __int128 cube = (unsigned __int128)x * x * x;
            unsigned __int128 s = exactcore::isqrt_u128(cube);
            unsigned __int128 dlo = cube - s * s;
            unsigned __int128 dhi = (s + 1) * (s + 1) - cube;
            unsigned __int128 y = dhi < dlo ? s + 1 : s;
            i128 k = (i128)cube - (i128)(y * y);
            if (k == 0) continue;
            i128 ak = k < 0 ? -k : k;
            if (ak >= ((i128)1 << 56)) continue;  // far beyond any threshold
            // raw condition on (3x, 6y, 108k)
            Integer k108 = exactcore::integer_from_i128(108 * k);
            if (!raw_threshold_ok(Integer(3 * x), k108, p.raw_threshold))
                continue;
            push_hit(Integer(3 * x), exactcore::integer_from_i128((i128)6 * (i128)y),
                     k108, p, out);
        }
        return out;
    }
    for (Integer x = lo < 1 ? Integer(1) : lo; x <= hi; ++x) {
        Integer y = exactcore::nearest_to_x32(x);
        Integer k = x * x * x - y * y;
        if (k == 0) continue;
        if (!raw_threshold_ok(3 * x, 108 * k, p.raw_threshold)) continue;
        push_hit(3 * x, 6 * y, 108 * k, p, out);
    }
    return out;
}

long chunk_count(const HallParams& p) {
    long n = 1;  // direct tail
    for (const auto& lev : make_levels(p))
        n += (lev.grid_points + kBlock - 1) / kBlock;
    return n;
}

std::string chunk_id(const HallParams& p, long chunk) {
    auto levels = make_levels(p);
    long c = chunk;
    for (std::size_t j = 0; j < levels.size(); ++j) {
        long blocks = (levels[j].grid_points + kBlock - 1) / kBlock;
        if (c < blocks) return "L" + std::to_string(j) + ".B" + std::to_string(c);
        c -= blocks;
    }
    return "direct";
}

std::vector<HallHit> run_chunk(const HallParams& p, long chunk) {
    auto levels = make_levels(p);
    long c = chunk;
    std::vector<HallHit> out;
    for (std::size_t j = 0; j < levels.size(); ++j) {
        long blocks = (levels[j].grid_points + kBlock - 1) / kBlock;
        if (c < blocks) {
            long first = c * kBlock + 1;
            long last = std::min((c + 1) * kBlock, levels[j].grid_points);
            std::vector<std::vector<HallHit>> parts;
            long n = last - first + 1;
            long stripes = std::max(1, p.threads * 8);
            long stripe = (n + stripes - 1) / stripes;
            parts.resize((n + stripe - 1) / stripe);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(p.threads)
#endif
            for (long s = 0; s < (long)parts.size(); ++s) {
                long b0 = first + s * stripe;
                long b1 = std::min(b0 + stripe - 1, last);
                for (long bi = b0; bi <= b1; ++bi)
                    scan_b(levels[j], bi, p, parts[s]);
            }
            for (auto& part : parts)
                for (auto& h : part) out.push_back(std::move(h));
            std::sort(out.begin(), out.end(), hall_order);
            return out;
        }
        c -= blocks;
    }
    // Direct tail below the smallest level.
    Integer tail_hi = p.x_max;
    if (!levels.empty()) tail_hi = levels.back().raw_lo / 3;
    if (tail_hi > p.x_max) tail_hi = p.x_max;
    out = direct_scan(p.x_min, tail_hi, p);
    std::sort(out.begin(), out.end(), hall_order);
    return out;
}

std::vector<HallHit> hall_search(const HallParams& p) {
    std::vector<HallHit> all;
    long n = chunk_count(p);
    for (long c = 0; c < n; ++c) {
        bool mine = p.shard_count <= 1 ||
                    (c % p.shard_count) == (p.shard_index - 1);
        if (!mine) continue;
        auto part = run_chunk(p, c);
        for (auto& h : part) all.push_back(std::move(h));
    }
    std::sort(all.begin(), all.end(), hall_order);
    all.erase(std::unique(all.begin(), all.end(),
                          [](const HallHit& a, const HallHit& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              all.end());
    return all;
}

}  // namespace nearmiss::hall
