#pragma once

#include <functional>
#include <optional>
#include <string>

#include "nearmiss/integer.hpp"
#include "nearmiss/real.hpp"

namespace nearmiss::nearcurve {

using exactcore::Integer;
using exactcore::PrecisionPolicy;
using exactcore::Rational;
using exactcore::Real;

enum class CurveKind { PowerInt, PowerReal, Klein, Trinorm };

// Hit qualification: |merit| >= merit_min, or |residual| <= residual_max.
// Comparisons against exact integer residuals are exact (rational bounds).
struct Threshold {
    enum class Type { MeritMin, ResidualMax } type;
    Rational bound;

    static Threshold merit_min(const Rational& r) {
        return {Type::MeritMin, r};
    }
    static Threshold residual_max(const Rational& r) {
        return {Type::ResidualMax, r};
    }
};

// Chart sample at parameter t: affine point (u, v) in the z = 1 chart of
// the canonical region, with velocities.
struct ChartPoint {
    double u, v;
    double dudt, dvdt;
};

// One searchable plane curve. The chart side (doubles) only shapes
// candidate boxes; the exact side decides hits.
class CurveSpec {
  public:
    static CurveSpec fermat(unsigned n);                 // power, integer exponent
    static CurveSpec power(const std::string& exponent,  // "pi" or a decimal
                           long mantissa_bits = 128);
    static CurveSpec klein();
    static CurveSpec trinorm();
    static CurveSpec parse(const std::string& token, long mantissa_bits = 128);

    CurveKind kind() const { return kind_; }
    unsigned exponent_int() const { return n_; }
    double exponent_approx() const { return s_; }
    const Real& exponent() const { return s_hp_; }
    const std::string& name() const { return name_; }

    // --- chart geometry (floats) ---
    double t_min(long height) const;
    double t_max(long height) const;
    // Window-level left cutoff: for power curves this truncates the flat
    // zone owned by the inflection tangent y = z, where no triple with
    // y < z can qualify.
    double window_t_min(double zlo, double zhi, const Threshold& th) const;
    // seed: previous v (klein continuation); NaN means cold start.
    ChartPoint chart(double t, double seed = std::nan("")) const;
    // |grad f| at a chart point, f the dehomogenized form; lower bounds the
    // residual-to-distance conversion.
    double grad_norm(double u, double v) const;
    // degree of the form (n, 4, 3, or s)
    double form_degree() const;

    // --- exact side ---
    // Canonical representative: fixes signs (z > 0), klein cyclic shifts,
    // trinorm pair order. Returns false for degenerate input (z = 0 etc).
    bool canonicalize(Integer& x, Integer& y, Integer& z) const;
    // Inflection-tangent families and chart restrictions.
    bool excluded(const Integer& x, const Integer& y, const Integer& z,
                  long height) const;
    // Exact integer residual (PowerInt, Klein, Trinorm only).
    Integer residual_exact(const Integer& x, const Integer& y,
                           const Integer& z) const;
    // Error-bounded residual for non-integer exponents.
    Real residual_real(const Integer& x, const Integer& y, const Integer& z,
                       PrecisionPolicy p) const;
    bool residual_is_exact() const { return kind_ != CurveKind::PowerReal; }

    // Threshold test; fills printed residual + merit on success.
    bool qualify(const Integer& x, const Integer& y, const Integer& z,
                 const Threshold& th, PrecisionPolicy prec,
                 std::string& residual_out, double& residual_approx,
                 double& merit_out) const;

    // Cheap machine-word screen for raw box candidates: canonicalizes in
    // int64, applies the exclusion predicate and a conservative residual
    // screen. Never drops a qualifying triple. Precompute the threshold
    // once per patch with make_fast_threshold.
    struct FastThreshold {
        bool merit = false;
        std::int64_t num = 0, den = 1;  // usable when both fit a word
        bool usable = false;
        double bound_d = 0;
    };
    static FastThreshold make_fast_threshold(const Threshold& th);
    bool fast_reject(std::int64_t p, std::int64_t q, std::int64_t r,
                     long height, const FastThreshold& ft) const;

    // Signed merit score (zero residual throws).
    double merit(const Integer& x, const Integer& y, const Integer& z,
                 PrecisionPolicy prec = {}) const;

    // Curve parameter of a canonical triple, as an exact rational
    // (x/z for power and trinorm charts, (x-y)/z for klein);
    // used for patch ownership.
    Rational ownership_coord(const Integer& x, const Integer& y,
                             const Integer& z) const;

    // Capture distance: any triple with canonical z in (zlo, zhi] passing
    // `th` lies within this chart distance of the curve.
    double capture_delta(double zlo, double zhi, double grad_min,
                         const Threshold& th) const;

    // Serial reference: all qualifying canonical triples with the largest
    // coordinate at most zmax, by direct enumeration over two coordinates.
    // `height` feeds the exclusion predicate; shards partition the outer
    // loop round-robin. Shares the exact qualification path with the
    // lattice search.
    void brute_force(
        long zmax, long height, const Threshold& th, PrecisionPolicy prec,
        const std::function<void(const Integer&, const Integer&,
                                 const Integer&, const std::string& residual,
                                 double residual_approx, double merit)>& emit,
        int shard_index = 1, int shard_count = 1) const;

  private:
    CurveKind kind_ = CurveKind::PowerInt;
    unsigned n_ = 0;
    double s_ = 0;
    Real s_hp_{128};
    std::string name_;
};

}  // namespace nearmiss::nearcurve
