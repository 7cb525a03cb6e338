#pragma once

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "nearmiss/integer.hpp"

namespace nearmiss::exactcore {

// Controls the floating side of every curve evaluation. Qualification of
// hits never depends on it when the residual is an exact integer; for
// non-integer exponents it bounds the reported residual's relative error.
struct PrecisionPolicy {
    long mantissa_bits = 128;
};

// Thin move-only RAII wrapper over mpfr_t with just the operations the
// search needs. All operations round to nearest at the target precision,
// so each is accurate to 1/2 ulp (relative error <= 2^-mantissa_bits).
class Real {
  public:
    explicit Real(long prec = 128) { mpfr_init2(v_, prec); }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, 64);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(Real o) {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of(double x, long prec) {
        Real r(prec);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of(const Integer& x, long prec) {
        Real r(prec);
        mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static Real parse(const std::string& s, long prec) {
        Real r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("Real::parse: bad number " + s);
        return r;
    }
    static Real pi(long prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    long prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }

    friend Real operator+(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    friend bool operator<(const Real& a, const Real& b) {
        return mpfr_cmp(a.v_, b.v_) < 0;
    }
    friend bool operator<=(const Real& a, const Real& b) {
        return mpfr_cmp(a.v_, b.v_) <= 0;
    }

    Real abs() const {
        Real r(prec());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real sqrt() const {
        Real r(prec());
        mpfr_sqrt(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real sub_ui(unsigned long u) const {
        Real r(prec());
        mpfr_sub_ui(r.v_, v_, u, MPFR_RNDN);
        return r;
    }

    // 6 significant digits, shortest form; shared by every record writer.
    std::string str6() const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

  private:
    mpfr_t v_;
};

// x^s for x > 0. mpfr_pow is correctly rounded, so the relative error is
// within the PrecisionPolicy contract of 2^(1 - mantissa_bits).
inline Real real_pow(const Real& x, const Real& s, PrecisionPolicy p) {
    if (p.mantissa_bits < 64)
        throw std::domain_error("real_pow: mantissa_bits must be >= 64");
    if (x.sign() <= 0) throw std::domain_error("real_pow: base must be > 0");
    Real r(p.mantissa_bits);
    mpfr_pow(r.raw(), x.raw(), s.raw(), MPFR_RNDN);
    return r;
}

inline Real real_pow(double x, double s, PrecisionPolicy p) {
    return real_pow(Real::of(x, p.mantissa_bits), Real::of(s, p.mantissa_bits),
                    p);
}

}  // namespace nearmiss::exactcore
