#include "nearmiss/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace nearmiss::nearcurve {

namespace {

double to_double(const Rational& r) { return mpq_get_d(r.get_mpq_t()); }

// Positive part of the nth root, rounded down.
Integer iroot(const Integer& v, unsigned long n) {
    Integer r;
    mpz_root(r.get_mpz_t(), v.get_mpz_t(), n);
    return r;
}

}  // namespace

CurveSpec CurveSpec::fermat(unsigned n) {
    if (n < 2) throw std::invalid_argument("fermat exponent must be >= 2");
    CurveSpec c;
    c.kind_ = CurveKind::PowerInt;
    c.n_ = n;
    c.s_ = (double)n;
    c.s_hp_ = Real::of((double)n, 128);
    c.name_ = "fermat:" + std::to_string(n);
    return c;
}

CurveSpec CurveSpec::power(const std::string& exponent, long mantissa_bits) {
    CurveSpec c;
    // Integer exponents route to the exact residual path.
    bool integral = !exponent.empty() &&
                    exponent.find_first_not_of("0123456789") == std::string::npos;
    if (integral) return fermat((unsigned)std::stoul(exponent));
    c.kind_ = CurveKind::PowerReal;
    c.s_hp_ = exponent == "pi" ? Real::pi(mantissa_bits)
                               : Real::parse(exponent, mantissa_bits);
    c.s_ = c.s_hp_.to_double();
    if (!(c.s_ > 1.0))
        throw std::invalid_argument("power exponent must be > 1");
    c.name_ = "power:" + exponent;
    return c;
}

CurveSpec CurveSpec::klein() {
    CurveSpec c;
    c.kind_ = CurveKind::Klein;
    c.name_ = "klein";
    return c;
}

CurveSpec CurveSpec::trinorm() {
    CurveSpec c;
    c.kind_ = CurveKind::Trinorm;
    c.name_ = "trinorm";
    return c;
}

CurveSpec CurveSpec::parse(const std::string& token, long mantissa_bits) {
    auto colon = token.find(':');
    std::string head = token.substr(0, colon);
    if (head == "klein") return klein();
    if (head == "trinorm") return trinorm();
    if (colon == std::string::npos)
        throw std::invalid_argument("bad curve: " + token);
    std::string arg = token.substr(colon + 1);
    if (head == "fermat") return fermat((unsigned)std::stoul(arg));
    if (head == "power") return power(arg, mantissa_bits);
    throw std::invalid_argument("bad curve: " + token);
}

double CurveSpec::form_degree() const {
    switch (kind_) {
        case CurveKind::PowerInt:
        case CurveKind::PowerReal:
            return s_;
        case CurveKind::Klein:
            return 4.0;
        case CurveKind::Trinorm:
            return 3.0;
    }
    return 0;
}

// ---- chart geometry ----

// Left edge of the klein arc in the canonical square: u with
// K(u, 1, 1) = u^3 + u + 1 = 0.
static constexpr double kKleinCorner = -0.6823278038280193;

double CurveSpec::t_min(long height) const {
    switch (kind_) {
        case CurveKind::PowerInt:
        case CurveKind::PowerReal:
            return 0.5 / (double)height;
        case CurveKind::Klein:
            return kKleinCorner - 1.0;  // t = u - v at the (u_left, 1) corner
        case CurveKind::Trinorm:
            return 0.98 * std::cbrt(1.0 / (double)height);
    }
    return 0;
}

double CurveSpec::t_max(long height) const {
    switch (kind_) {
        case CurveKind::PowerInt:
        case CurveKind::PowerReal:
            // x = y hits can sit a hair beyond the symmetric point.
            return std::pow(0.5, 1.0 / s_) * (1.0 + 1e-9) +
                   1.0 / ((double)height * (double)height);
        case CurveKind::Klein:
            return 1.0 - kKleinCorner;
        case CurveKind::Trinorm:
            return 0.5;  // pair order x <= y owns the t <= 1/2 half
    }
    return 0;
}

ChartPoint CurveSpec::chart(double t, double seed) const {
    switch (kind_) {
        case CurveKind::PowerInt:
        case CurveKind::PowerReal: {
            double u = t;
            double us = std::pow(u, s_);
            double v = std::pow(std::max(1.0 - us, 0.0), 1.0 / s_);
            double dv = -std::pow(u, s_ - 1.0) * std::pow(v, 1.0 - s_);
            return {u, v, 1.0, dv};
        }
        case CurveKind::Trinorm: {
            double omt = 1.0 - t;
            return {t * t * t, omt * omt * omt, 3 * t * t, -3 * omt * omt};
        }
        case CurveKind::Klein: {
            // Solve (v+t)^3 v + v^3 + v + t = 0 for v, the arc branch.
            auto g = [&](double v) {
                double u = v + t;
                return u * u * u * v + v * v * v + u;
            };
            auto gp = [&](double v) {
                double u = v + t;
                return (3 * u * u * v + 1.0) + (u * u * u + 3 * v * v);
            };
            double v;
            if (std::isnan(seed)) {
                // Cold start: bracket the arc root on a coarse grid.
                double best = std::nan(""), prev_v = -1.5, prev_g = g(-1.5);
                for (int i = 1; i <= 1200; ++i) {
                    double vv = -1.5 + 3.0 * i / 1200.0;
                    double gg = g(vv);
                    if (prev_g == 0.0) prev_g = 1e-300;
                    if (gg == 0.0 ? true : (prev_g < 0) != (gg < 0)) {
                        double mid = 0.5 * (prev_v + vv);
                        double uu = mid + t;
                        if (std::fabs(mid) <= 1.40 && std::fabs(uu) <= 1.40 &&
                            std::isnan(best))
                            best = mid;
                    }
                    prev_v = vv;
                    prev_g = gg;
                }
                if (std::isnan(best))
                    throw std::domain_error("klein chart: no arc root at t");
                v = best;
            } else {
                v = seed;
            }
            for (int it = 0; it < 60; ++it) {
                double d = g(v) / gp(v);
                v -= d;
                if (std::fabs(d) < 1e-15 * (1 + std::fabs(v))) break;
            }
            double u = v + t;
            double fu = 3 * u * u * v + 1.0;
            double fv = u * u * u + 3 * v * v;
            double denom = fu + fv;
            return {u, v, fv / denom, -fu / denom};
        }
    }
    throw std::logic_error("chart: bad kind");
}

double CurveSpec::grad_norm(double u, double v) const {
    switch (kind_) {
        case CurveKind::PowerInt:
        case CurveKind::PowerReal:
            return s_ * std::hypot(std::pow(std::fabs(u), s_ - 1.0),
                                   std::pow(std::fabs(v), s_ - 1.0));
        case CurveKind::Klein:
            return std::hypot(3 * u * u * v + 1.0, u * u * u + 3 * v * v);
        case CurveKind::Trinorm: {
            double a = 1.0 - u - v;
            return std::hypot(3 * a * a + 27 * v, 3 * a * a + 27 * u);
        }
    }
    return 1;
}

double CurveSpec::window_t_min(double zlo, double zhi,
                               const Threshold& th) const {
    double base = t_min((long)zhi);
    if (kind_ != CurveKind::PowerInt && kind_ != CurveKind::PowerReal)
        return base;
    // Any triple with y <= z - 1 has x^s >= z^s - (z-1)^s - |res|, so
    // u = x/z is bounded away from the y = z inflection tangent.
    double rmax;
    if (th.type == Threshold::Type::ResidualMax)
        rmax = to_double(th.bound);
    else
        rmax = (kind_ == CurveKind::PowerInt ? (double)n_ : 1.0) *
               std::pow(zhi, s_ - 3.0) / to_double(th.bound);
    double expr = s_ / zhi * (1.0 - (s_ - 1.0) / zlo) - rmax / std::pow(zlo, s_);
    if (!(expr > 0)) return base;
    return std::max(base, 0.97 * std::pow(expr, 1.0 / s_));
}

double CurveSpec::capture_delta(double zlo, double zhi, double grad_min,
                                const Threshold& th) const {
    zlo = std::max(zlo, 1.0);
    double g = std::max(grad_min, 1e-12);
    double rmax;  // bound on |residual| for a qualifying triple in the window
    if (th.type == Threshold::Type::ResidualMax) {
        rmax = to_double(th.bound);
    } else {
        // |merit| >= r  =>  |res| <= n zhi^{n-3} / r  (s-3 for real s).
        double r = to_double(th.bound);
        double factor = kind_ == CurveKind::PowerReal
                            ? 1.0
                            : (kind_ == CurveKind::Klein ? 1.0 : (double)n_);
        double e = kind_ == CurveKind::Klein ? 1.0 : s_ - 3.0;
        rmax = factor * std::pow(zhi, e) / r;
    }
    // distance <= |res| / (z^deg |grad f|); 2x for curvature of f.
    return 2.0 * rmax / (std::pow(zlo, form_degree()) * g);
}

// ---- exact side ----

bool CurveSpec::canonicalize(Integer& x, Integer& y, Integer& z) const {
    if (kind_ == CurveKind::Klein) {
        // Cyclic shift so the last coordinate has the largest magnitude;
        // ties prefer the identity, then the single shift.
        Integer ax = abs(x), ay = abs(y), az = abs(z);
        int which = 0;
        Integer best = az;
        if (ax > best) { which = 1; best = ax; }
        if (ay > best) { which = 2; best = ay; }
        if (which == 1) {  // (x,y,z) -> (y,z,x)
            Integer t = x; x = y; y = z; z = t;
        } else if (which == 2) {  // (x,y,z) -> (z,x,y)
            Integer t = z; z = y; y = x; x = t;
        }
    }
    if (z == 0) return false;
    if (z < 0) {
        x = -x;
        y = -y;
        z = -z;
    }
    if (kind_ == CurveKind::Trinorm && x > y) swap(x, y);
    return true;
}

bool CurveSpec::excluded(const Integer& x, const Integer& y, const Integer& z,
                         long height) const {
    switch (kind_) {
        case CurveKind::PowerInt:
        case CurveKind::PowerReal:
            return !(x > 0 && x <= y && y < z);
        case CurveKind::Klein: {
            if (x == 0) return true;
            // Flex-tangent loci (cyclic images of the singular cubic).
            if (x * x * x + y * y * z == 0) return true;
            if (y * y * y + z * z * x == 0) return true;
            if (z * z * z + x * x * y == 0) return true;
            return false;
        }
        case CurveKind::Trinorm:
            return !(x > 0 && y > 0 && height * x > z && height * y > z);
    }
    return true;
}

Integer CurveSpec::residual_exact(const Integer& x, const Integer& y,
                                  const Integer& z) const {
    switch (kind_) {
        case CurveKind::PowerInt:
            return exactcore::power_residual(n_, x, y, z);
        case CurveKind::Klein:
            return x * x * x * y + y * y * y * z + z * z * z * x;
        case CurveKind::Trinorm: {
            Integer a = z - y - x;
            return a * a * a - 27 * x * y * z;
        }
        case CurveKind::PowerReal:
            throw std::logic_error("residual_exact on non-integer exponent");
    }
    throw std::logic_error("residual_exact: bad kind");
}

Real CurveSpec::residual_real(const Integer& x, const Integer& y,
                              const Integer& z, PrecisionPolicy p) const {
    // Raise working precision until intermediate magnitude cannot swamp
    // the difference: |z^s| ~ 2^(s log2 z), keep ~90 guard bits.
    long zbits = (long)mpz_sizeinbase(z.get_mpz_t(), 2);
    long bits = std::max(p.mantissa_bits, (long)(s_ * (double)zbits) + 96);
    Real xs = real_pow(Real::of(x, bits), s_hp_, {bits});
    Real ys = real_pow(Real::of(y, bits), s_hp_, {bits});
    Real zs = real_pow(Real::of(z, bits), s_hp_, {bits});
    return zs - ys - xs;
}

double CurveSpec::merit(const Integer& x, const Integer& y, const Integer& z,
                        PrecisionPolicy prec) const {
    switch (kind_) {
        case CurveKind::PowerInt: {
            Integer res = residual_exact(x, y, z);
            if (res == 0) throw std::domain_error("merit: point on curve");
            Integer m = abs(x);
            if (abs(y) > m) m = abs(y);
            if (abs(z) > m) m = abs(z);
            if (n_ >= 3) {
                Rational q(n_ * exactcore::ipow(m, n_ - 3), res);
                q.canonicalize();
                return to_double(q);
            }
            Rational q(Integer(n_), res * exactcore::ipow(m, 3 - n_));
            q.canonicalize();
            return to_double(q);
        }
        case CurveKind::PowerReal: {
            Real res = residual_real(x, y, z, prec);
            if (res.is_zero()) throw std::domain_error("merit: point on curve");
            long bits = std::max(prec.mantissa_bits, 128L);
            Real zs = real_pow(Real::of(z, bits), s_hp_.sub_ui(3), {bits});
            return (zs / res).to_double();
        }
        case CurveKind::Klein: {
            Integer res = residual_exact(x, y, z);
            if (res == 0) throw std::domain_error("merit: point on curve");
            Rational q(z, res);
            q.canonicalize();
            return to_double(q);
        }
        case CurveKind::Trinorm: {
            Integer res = residual_exact(x, y, z);
            if (res == 0) throw std::domain_error("merit: point on curve");
            return mpz_get_d(res.get_mpz_t());
        }
    }
    throw std::logic_error("merit: bad kind");
}

Rational CurveSpec::ownership_coord(const Integer& x, const Integer& y,
                                    const Integer& z) const {
    Rational q;
    if (kind_ == CurveKind::Klein)
        q = Rational(x - y, z);
    else
        q = Rational(x, z);
    q.canonicalize();
    return q;
}

bool CurveSpec::qualify(const Integer& x, const Integer& y, const Integer& z,
                        const Threshold& th, PrecisionPolicy prec,
                        std::string& residual_out, double& residual_approx,
                        double& merit_out) const {
    if (kind_ == CurveKind::PowerReal) {
        if (th.type != Threshold::Type::ResidualMax)
            throw std::invalid_argument(
                "non-integer exponents take --residual-max");
        Real res = residual_real(x, y, z, prec);
        if (res.is_zero()) return false;
        Real bound = Real::of(Integer(th.bound.get_num()), 128) /
                     Real::of(Integer(th.bound.get_den()), 128);
        if (!(res.abs() <= bound)) return false;
        residual_out = res.str6();
        residual_approx = res.to_double();
        merit_out = merit(x, y, z, prec);
        return true;
    }
    Integer res = residual_exact(x, y, z);
    if (res == 0) return false;
    Integer ares = abs(res);
    const Integer& bn = th.bound.get_num();
    const Integer& bd = th.bound.get_den();
    if (th.type == Threshold::Type::ResidualMax) {
        if (!(ares * bd <= bn)) return false;
    } else {
        switch (kind_) {
            case CurveKind::PowerInt: {
                Integer m = abs(z);  // canonical region has z maximal
                Integer lhs = n_ >= 3 ? Integer(n_ * exactcore::ipow(m, n_ - 3) * bd)
                                      : Integer(n_ * bd);
                Integer rhs = n_ >= 3 ? Integer(bn * ares)
                                      : Integer(bn * ares * exactcore::ipow(m, 3 - n_));
                if (!(lhs >= rhs)) return false;
                break;
            }
            case CurveKind::Klein:
                if (!(z * bd >= bn * ares)) return false;
                break;
            case CurveKind::Trinorm:
                throw std::invalid_argument("trinorm takes --residual-max");
            default:
                return false;
        }
    }
    residual_out = res.get_str();
    residual_approx = mpz_get_d(res.get_mpz_t());
    merit_out = merit(x, y, z, prec);
    return true;
}

CurveSpec::FastThreshold CurveSpec::make_fast_threshold(const Threshold& th) {
    FastThreshold ft;
    ft.merit = th.type == Threshold::Type::MeritMin;
    ft.bound_d = to_double(th.bound);
    if (th.bound.get_num().fits_slong_p() && th.bound.get_den().fits_slong_p()) {
        ft.num = mpz_get_si(th.bound.get_num().get_mpz_t());
        ft.den = mpz_get_si(th.bound.get_den().get_mpz_t());
        ft.usable = ft.num >= 0 && ft.num < (1L << 40) && ft.den < (1L << 40);
    }
    return ft;
}

bool CurveSpec::fast_reject(std::int64_t p, std::int64_t q, std::int64_t r,
                            long height, const FastThreshold& ft) const {
    using i128 = __int128;
    std::int64_t lim = 1L << 20;
    if (std::llabs(p) >= lim || std::llabs(q) >= lim || std::llabs(r) >= lim)
        return false;  // out of the fast domain, keep
    std::int64_t x = p, y = q, z = r;
    if (kind_ == CurveKind::Klein) {
        std::int64_t ax = std::llabs(x), ay = std::llabs(y), az = std::llabs(z);
        int which = 0;
        std::int64_t best = az;
        if (ax > best) { which = 1; best = ax; }
        if (ay > best) { which = 2; best = ay; }
        if (which == 1) { std::int64_t t = x; x = y; y = z; z = t; }
        else if (which == 2) { std::int64_t t = z; z = y; y = x; x = t; }
    }
    if (z == 0) return true;
    if (z < 0) { x = -x; y = -y; z = -z; }
    if (kind_ == CurveKind::Trinorm && x > y) std::swap(x, y);
    if (std::llabs(x) > height || std::llabs(y) > height || z > height)
        return true;

    switch (kind_) {
        case CurveKind::PowerInt:
        case CurveKind::PowerReal: {
            if (!(x > 0 && x <= y && y < z)) return true;
            if (kind_ == CurveKind::PowerReal) return false;
            if (n_ <= 6 && ft.usable && ft.num > 0) {
                i128 zn = 1, yn = 1, xn = 1;
                for (unsigned i = 0; i < n_; ++i) {
                    zn *= z; yn *= y; xn *= x;
                }
                i128 res = zn - yn - xn;
                if (res == 0) return true;
                i128 ares = res < 0 ? -res : res;
                if (ft.merit) {
                    i128 zp = 1;
                    for (unsigned i = 0; i + 3 < n_; ++i) zp *= z;
                    // |merit| >= bound <=> ares <= n z^(n-3) den / num
                    return ares > ((i128)n_ * zp * ft.den) / ft.num;
                }
                return ares > (i128)ft.num / ft.den;
            }
            // log-space screen for big exponents; generous absolute slop.
            double f = 1.0 - std::exp(n_ * std::log((double)y / (double)z)) -
                       std::exp(n_ * std::log((double)x / (double)z));
            double thr;
            if (ft.merit)
                thr = (double)n_ /
                      (std::max(ft.bound_d, 1e-9) * (double)z * (double)z *
                       (double)z);
            else
                thr = ft.bound_d / std::pow((double)z, (double)n_);
            return std::fabs(f) > 2.0 * thr + (double)n_ * 1e-14;
        }
        case CurveKind::Klein: {
            if (x == 0) return true;
            i128 X = x, Y = y, Z = z;
            if (X * X * X + Y * Y * Z == 0) return true;
            if (Y * Y * Y + Z * Z * X == 0) return true;
            if (Z * Z * Z + X * X * Y == 0) return true;
            if (!ft.usable) return false;
            i128 K = X * X * X * Y + Y * Y * Y * Z + Z * Z * Z * X;
            if (K == 0) return true;
            i128 aK = K < 0 ? -K : K;
            if (ft.merit) return !(Z * ft.den >= (i128)ft.num * aK);
            return !(aK * ft.den <= (i128)ft.num);
        }
        case CurveKind::Trinorm: {
            if (!(x > 0 && y > 0 && (i128)height * x > z &&
                  (i128)height * y > z))
                return true;
            if (!ft.usable || ft.merit) return false;
            i128 a = (i128)z - y - x;
            i128 N = a * a * a - (i128)27 * x * y * z;
            if (N == 0) return true;
            i128 aN = N < 0 ? -N : N;
            return !(aN * ft.den <= (i128)ft.num);
        }
    }
    return false;
}

// ---- serial reference scan ----

void CurveSpec::brute_force(
    long zmax, long height, const Threshold& th, PrecisionPolicy prec,
    const std::function<void(const Integer&, const Integer&, const Integer&,
                             const std::string&, double, double)>& emit,
    int shard_index, int shard_count) const {
    std::string rs;
    double ra, mv;
    auto mine = [&](long outer) {
        return shard_count <= 1 || (outer % shard_count) == shard_index - 1;
    };
    auto try_triple = [&](Integer x, Integer y, Integer z) {
        Integer cx = x, cy = y, cz = z;
        if (!canonicalize(cx, cy, cz)) return;
        if (cx != x || cy != y || cz != z) return;  // visit canonical reps once
        if (abs(cx) > height || abs(cy) > height || abs(cz) > height) return;
        if (excluded(cx, cy, cz, height)) return;
        if (!qualify(cx, cy, cz, th, prec, rs, ra, mv)) return;
        emit(cx, cy, cz, rs, ra, mv);
    };

    switch (kind_) {
        case CurveKind::PowerInt: {
            for (long x = 1; x <= zmax; ++x) {
                if (!mine(x)) continue;
                for (long y = x; y <= zmax; ++y) {
                    Integer s = exactcore::ipow(x, n_) + exactcore::ipow(y, n_);
                    Integer z0 = iroot(s, n_);
                    for (Integer z = z0 - 1; z <= z0 + 1; ++z) {
                        if (z <= y || z > zmax) continue;
                        try_triple(x, y, z);
                    }
                }
            }
            break;
        }
        case CurveKind::PowerReal: {
            double bound = to_double(th.bound);
            for (long x = 1; x <= zmax; ++x) {
                if (!mine(x)) continue;
                double xs = std::pow((double)x, s_);
                for (long y = x; y <= zmax; ++y) {
                    double sum = xs + std::pow((double)y, s_);
                    double z0 = std::pow(sum, 1.0 / s_);
                    long zfirst = std::max((long)std::floor(z0) - 1, y + 1);
                    for (long z = zfirst; z <= (long)std::ceil(z0) + 1; ++z) {
                        if (z > zmax) break;
                        double approx = std::pow((double)z, s_) - sum;
                        if (std::fabs(approx) >
                            bound + 1e-9 * std::pow((double)z, s_) + 1e-6)
                            continue;
                        try_triple(x, y, z);
                    }
                }
            }
            break;
        }
        case CurveKind::Klein: {
            for (long z = 1; z <= zmax; ++z) {
                if (!mine(z)) continue;
                for (long x = -z; x <= z; ++x) {
                    // roots in y of y^3 z + x^3 y + z^3 x = 0
                    double p = (double)x * x * x / (double)z;
                    double q = (double)z * z * x;
                    // y^3 + p y + q = 0
                    double roots[3];
                    int nr = 0;
                    double disc = -4 * p * p * p - 27 * q * q;
                    if (disc <= 0) {
                        double t1 = std::cbrt(-q / 2 + std::sqrt(
                                                  std::max(q * q / 4 + p * p * p / 27, 0.0)));
                        double t2 = std::cbrt(-q / 2 - std::sqrt(
                                                  std::max(q * q / 4 + p * p * p / 27, 0.0)));
                        roots[nr++] = t1 + t2;
                    } else {
                        double r = 2 * std::sqrt(-p / 3);
                        double phi = std::acos(std::clamp(
                            3 * q / (p * r), -1.0, 1.0)) / 3.0;
                        for (int k = 0; k < 3; ++k)
                            roots[nr++] = r * std::cos(phi - 2 * M_PI * k / 3);
                    }
                    long seen[9];
                    int ns = 0;
                    for (int i = 0; i < nr; ++i) {
                        long y0 = std::llround(roots[i]);
                        for (long y = y0 - 1; y <= y0 + 1; ++y) {
                            if (std::llabs(y) > z) continue;
                            bool dup = false;
                            for (int j = 0; j < ns; ++j)
                                if (seen[j] == y) dup = true;
                            if (dup) continue;
                            if (ns < 9) seen[ns++] = y;
                            try_triple(x, y, z);
                        }
                    }
                }
            }
            break;
        }
        case CurveKind::Trinorm: {
            for (long x = 1; x <= zmax; ++x) {
                if (!mine(x)) continue;
                for (long y = x; y <= zmax; ++y) {
                    // z - y - x = a with a^3 = 27xyz: Newton on z.
                    double xy27 = 27.0 * x * y;
                    double z = x + y + std::cbrt(xy27 * (x + y));
                    for (int it = 0; it < 40; ++it) {
                        double a = z - y - x;
                        double g = a * a * a - xy27 * z;
                        double gp = 3 * a * a - xy27;
                        if (std::fabs(gp) < 1e-9) break;
                        double step = g / gp;
                        z -= step;
                        if (std::fabs(step) < 1e-9 * (1 + std::fabs(z))) break;
                    }
                    long z0 = std::llround(z);
                    for (long zz = z0 - 2; zz <= z0 + 2; ++zz) {
                        if (zz <= y || zz > zmax) continue;
                        try_triple(x, y, zz);
                    }
                }
            }
            break;
        }
    }
}

}  // namespace nearmiss::nearcurve
