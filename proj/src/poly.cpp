#include "nearmiss/poly.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace nearmiss::families {

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
}

Poly Poly::operator-() const {
    std::vector<Rational> c(c_);
    for (auto& x : c) x = -x;
    return Poly(std::move(c));
}

Poly Poly::pow(unsigned e) const {
    Poly r = Poly::constant(1);
    Poly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        const Rational& c = coeff(i);
        if (c == 0) continue;
        Rational a = c;
        if (!first) os << (a < 0 ? " - " : " + ");
        else if (a < 0) os << "-";
        first = false;
        a = abs(a);
        if (a != 1 || i == 0) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// Terms like "36t^6", "-t", "21/4 t", "+ 12", separated by + or -.
Poly parse_poly(const std::string& s) {
    Poly out;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; };
    int pending_sign = +1;
    skip_ws();
    while (i < s.size()) {
        if (s[i] == '+') { pending_sign = +1; ++i; skip_ws(); continue; }
        if (s[i] == '-') { pending_sign = -1; ++i; skip_ws(); continue; }
        std::string num;
        while (i < s.size() && (std::isdigit((unsigned char)s[i]) || s[i] == '/'))
            num.push_back(s[i++]);
        skip_ws();
        Rational coef = num.empty() ? Rational(1) : Rational(num);
        coef.canonicalize();
        if (pending_sign < 0) coef = -coef;
        std::size_t deg = 0;
        if (i < s.size() && s[i] == '*') { ++i; skip_ws(); }
        if (i < s.size() && s[i] == 't') {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string d;
                while (i < s.size() && std::isdigit((unsigned char)s[i])) d.push_back(s[i++]);
                deg = std::stoul(d);
            }
        }
        out = out + Poly::monomial(coef, deg);
        pending_sign = +1;
        skip_ws();
    }
    return out;
}

namespace {

// Exact square root of a nonnegative rational, or throw.
Rational rational_sqrt(const Rational& r) {
    if (r < 0) throw std::domain_error("rational_sqrt: negative");
    Integer num = r.get_num(), den = r.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 ||
        mpz_perfect_square_p(den.get_mpz_t()) == 0)
        throw std::domain_error("rational_sqrt: not a rational square");
    Rational out(exactcore::isqrt(num), exactcore::isqrt(den));
    out.canonicalize();
    return out;
}

}  // namespace

Poly truncated_laurent_y(const Poly& x) {
    long d = x.degree();
    if (d < 0 || d % 2 != 0)
        throw std::domain_error("truncated_laurent_y: degree must be even");
    long m = d / 2;
    Poly cube = x.pow(3);
    // Solve for y = sum b_j t^j, j = 0..3m, top down:
    // coefficient of t^{6m-k} in y^2 must match cube for k = 0..3m.
    std::vector<Rational> b(3 * m + 1, Rational(0));
    b[3 * m] = rational_sqrt(cube.coeff(6 * m));
    for (long k = 1; k <= 3 * m; ++k) {
        // [t^{6m-k}] y^2 = 2 b_{3m} b_{3m-k} + sum_{j=1}^{k-1} b_{3m-j} b_{3m-k+j}
        Rational known(0);
        for (long j = 1; j < k; ++j) known += b[3 * m - j] * b[3 * m - k + j];
        Rational target = cube.coeff(6 * m - k) - known;
        b[3 * m - k] = target / (2 * b[3 * m]);
    }
    return Poly(std::move(b));
}

}  // namespace nearmiss::families
