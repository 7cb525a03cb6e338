#pragma once

#include <string>
#include <vector>

#include "nearmiss/integer.hpp"

namespace nearmiss::families {

using exactcore::Integer;
using exactcore::Rational;

// Dense univariate polynomial with exact rational coefficients,
// coeffs_[i] multiplying t^i. Zero polynomial has empty coeffs.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
        for (auto& q : c_) q.canonicalize();  // mpq arithmetic requires it
        trim();
    }
    static Poly constant(const Rational& r) { return Poly({r}); }
    static Poly monomial(const Rational& r, std::size_t deg) {
        std::vector<Rational> c(deg + 1, Rational(0));
        c[deg] = r;
        return Poly(std::move(c));
    }

    long degree() const { return (long)c_.size() - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const Rational& coeff(std::size_t i) const {
        static const Rational zero(0);
        return i < c_.size() ? c_[i] : zero;
    }
    const Rational& lead() const { return c_.back(); }

    Rational eval(const Rational& t) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) {
        return a.c_ == b.c_;
    }
    Poly operator-() const;
    Poly pow(unsigned e) const;

    std::string str() const;

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

Poly parse_poly(const std::string& s);  // e.g. "36t^6 + 24t^4 + 10t^2 + 1"

// The polynomial part (degrees >= 0) of the expansion of x(t)^{3/2} at
// infinity: the unique y with deg(x^3 - y^2) < (3/2) deg(x), positive
// leading coefficient. Requires deg(x) even and lead(x) a rational square.
Poly truncated_laurent_y(const Poly& x);

}  // namespace nearmiss::families
