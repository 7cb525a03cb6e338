#include "nearmiss/families.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "nearmiss/real.hpp"

namespace nearmiss::families {

namespace {

Rational rat_pow(const Rational& b, unsigned e) {
    Rational r(1);
    Rational base = b;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

Poly power_residual_poly(unsigned n, const Poly& x, const Poly& y,
                         const Poly& z) {
    return z.pow(n) - y.pow(n) - x.pow(n);
}

IdentityRecord power_record(std::string name, unsigned n, Poly x, Poly y,
                            Poly z, long deg_bound, Validity val = {},
                            std::string note = "") {
    IdentityRecord r;
    r.name = std::move(name);
    r.note = std::move(note);
    r.form = IdentityRecord::Form::PowerTriple;
    r.exponent = n;
    r.x = std::move(x);
    r.y = std::move(y);
    r.z = std::move(z);
    r.residual = power_residual_poly(n, r.x, r.y, r.z);
    r.residual_degree_bound = deg_bound;
    r.validity = std::move(val);
    if (r.residual.degree() > deg_bound)
        throw std::logic_error(r.name + ": residual degree " +
                               std::to_string(r.residual.degree()) +
                               " exceeds bound");
    return r;
}

IdentityRecord hall_record_poly(std::string name, Poly x, Poly y, Poly k,
                                long deg_bound, Validity val = {},
                                std::string note = "") {
    IdentityRecord r;
    r.name = std::move(name);
    r.note = std::move(note);
    r.form = IdentityRecord::Form::HallPair;
    r.x = std::move(x);
    r.y = std::move(y);
    r.residual = r.x.pow(3) - r.y.pow(2);
    r.residual_degree_bound = deg_bound;
    r.validity = std::move(val);
    if (!(r.residual == k))
        throw std::logic_error(r.name + ": printed k disagrees with x^3-y^2");
    if (r.residual.degree() > deg_bound)
        throw std::logic_error(r.name + ": residual degree exceeds bound");
    return r;
}

std::vector<IdentityRecord> build_registry() {
    std::vector<IdentityRecord> reg;

    // z^3 - y^3 - x^3 = 2 family (6t^2, 6t^3-1, 6t^3+1).
    reg.push_back(power_record(
        "cubes_d2", 3, parse_poly("6t^2"), parse_poly("6t^3 - 1"),
        parse_poly("6t^3 + 1"), 0));

    // (9t^3+1)^3 + (9t^4)^3 = (9t^4+3t)^3 - 1.
    reg.push_back(power_record("xyz3_1", 3, parse_poly("9t^3 + 1"),
                               parse_poly("9t^4"), parse_poly("9t^4 + 3t"),
                               0));

    // Degree-8 family behind the twin table entries at t = +-3.
    reg.push_back(power_record("id8", 8, parse_poly("32t^8 + 7"),
                               parse_poly("32t^9 + 6t"),
                               parse_poly("32t^9 + 10t"), 40));

    // (t+1)^n - (t-1)^n = 2n t^{n-1} + ..., t = 2n u^n makes the lead an
    // n-th power; u is the registry parameter.
    for (unsigned n = 4; n <= 10; ++n) {
        Poly u = Poly::monomial(1, 1);
        Poly t = Poly::monomial(Rational(2 * n), n);
        Poly x = Poly::monomial(Rational(2 * n), n - 1);
        Poly y = t - Poly::constant(1);
        Poly z = t + Poly::constant(1);
        reg.push_back(power_record("fermdiff:" + std::to_string(n), n, x, y,
                                   z, (long)n * ((long)n - 3)));
    }

    // Birch's m = 3 pair (integer for t = 0 mod 4).
    reg.push_back(hall_record_poly(
        "birch3", parse_poly("36t^6 + 24t^4 + 10t^2 + 1"),
        parse_poly("216t^9 + 216t^7 + 126t^5 + 35t^3 + 21/4t"),
        parse_poly("9/2t^4 + 39/16t^2 + 1"), 4, Validity{4, {0}}));

    // Birch's m = 5 pair (integer for t = 3 mod 6).
    {
        Poly x = Poly::monomial(Rational(1, 9), 10) +
                 Poly::monomial(Rational(6, 9), 7) +
                 Poly::monomial(Rational(15, 9), 4) +
                 Poly::monomial(Rational(12, 9), 1);
        Poly y = Poly::monomial(Rational(1, 27), 15) +
                 Poly::monomial(Rational(1, 3), 12) +
                 Poly::monomial(Rational(4, 3), 9) +
                 Poly::monomial(Rational(8, 3), 6) +
                 Poly::monomial(Rational(5, 2), 3) +
                 Poly::constant(Rational(1, 2));
        Poly k = -(Poly::monomial(Rational(3, 108), 6) +
                   Poly::monomial(Rational(14, 108), 3) +
                   Poly::constant(Rational(27, 108)));
        reg.push_back(
            hall_record_poly("birch5", x, y, k, 6, Validity{6, {3}}));
    }

    // Hall's m = 4 example; y is the truncated Laurent expansion of x^{3/2}.
    {
        Poly x = parse_poly(
            "4t^8 + 24t^7 + 84t^6 + 200t^5 + 344t^4 + 456t^3 + 436t^2 + "
            "296t + 112");
        Poly y = truncated_laurent_y(x);
        Poly k = x.pow(3) - y.pow(2);
        reg.push_back(hall_record_poly("hall4", x, y, k, 5));
    }

    // The m = 5 example announced in 1998; same construction.
    {
        Poly x = parse_poly(
            "t^10 + 2t^9 + 33t^8 + 12t^7 + 378t^6 - 336t^5 + 2862t^4 - "
            "2652t^3 + 14397t^2 - 9922t + 18553");
        Poly y = truncated_laurent_y(x);
        Poly k = x.pow(3) - y.pow(2);
        reg.push_back(hall_record_poly("nde5", x, y, k, 6));
    }

    // Fermat-Pell families: x^3 - q w^2 = rhs.
    {
        IdentityRecord r;
        r.name = "x5";
        r.form = IdentityRecord::Form::PellCubeSquare;
        r.x = parse_poly("t^2 + 10t + 5");
        r.y = parse_poly("t^2 + 22t + 125");   // q
        r.z = parse_poly("t^2 + 4t - 1");      // w
        r.residual = parse_poly("1728t");
        r.residual_degree_bound = 1;
        if (!(r.x.pow(3) - r.y * r.z.pow(2) == r.residual))
            throw std::logic_error("x5: identity fails");
        reg.push_back(r);
    }
    {
        IdentityRecord r;
        r.name = "danilov";
        r.form = IdentityRecord::Form::PellCubeSquare;
        r.x = parse_poly("3125t^2 - 3000t + 719");
        r.y = parse_poly("125t^2 - 114t + 26");        // q
        r.z = parse_poly("15625t^2 - 15375t + 3781");  // w
        r.residual = parse_poly("54t - 27");
        r.residual_degree_bound = 1;
        if (!(r.x.pow(3) - r.y * r.z.pow(2) == r.residual))
            throw std::logic_error("danilov: identity fails");
        reg.push_back(r);
    }

    // K(1, -t^2, t^3) = -t^2.
    {
        IdentityRecord r;
        r.name = "klein_family";
        r.form = IdentityRecord::Form::KleinTriple;
        r.x = Poly::constant(1);
        r.y = -Poly::monomial(1, 2);
        r.z = Poly::monomial(1, 3);
        r.residual = -Poly::monomial(1, 2);
        r.residual_degree_bound = 2;
        Poly check = r.x.pow(3) * r.y + r.y.pow(3) * r.z + r.z.pow(3) * r.x;
        if (!(check == r.residual))
            throw std::logic_error("klein_family: identity fails");
        reg.push_back(r);
    }

    // Constant-norm trinomial family (4, y(t), -y(-1-t)), y = 4t^3 - 6t + 3.
    // Exact expansion gives N = -108 (the printed value is its negative).
    {
        IdentityRecord r;
        r.name = "n108_family";
        r.form = IdentityRecord::Form::TrinormTriple;
        r.x = Poly::constant(4);
        r.y = parse_poly("4t^3 - 6t + 3");
        // z(t) = -y(-1-t) expanded: 4(1+t)^3 - 6t - 9.
        r.z = parse_poly("4t^3 + 12t^2 + 6t - 5");
        Poly a = r.z - r.y - r.x;
        r.residual = a.pow(3) - Poly::constant(27) * r.x * r.y * r.z;
        r.residual_degree_bound = 0;
        if (!(r.residual == Poly::constant(-108)))
            throw std::logic_error("n108_family: norm is not -108");
        reg.push_back(r);
    }

    return reg;
}

Rational recompute_residual(const IdentityRecord& rec, const Rational& t) {
    Rational x = rec.x.eval(t), y = rec.y.eval(t), z = rec.z.eval(t);
    switch (rec.form) {
        case IdentityRecord::Form::PowerTriple:
            return rat_pow(z, rec.exponent) - rat_pow(y, rec.exponent) -
                   rat_pow(x, rec.exponent);
        case IdentityRecord::Form::HallPair:
            return x * x * x - y * y;
        case IdentityRecord::Form::TrinormTriple: {
            Rational a = z - y - x;
            return a * a * a - 27 * x * y * z;
        }
        case IdentityRecord::Form::KleinTriple:
            return x * x * x * y + y * y * y * z + z * z * z * x;
        case IdentityRecord::Form::PellCubeSquare:
            return x * x * x - y * z * z;
    }
    throw std::logic_error("recompute_residual: bad form");
}

}  // namespace

const std::vector<IdentityRecord>& registry() {
    static const std::vector<IdentityRecord> reg = build_registry();
    return reg;
}

std::vector<std::string> registry_names() {
    std::vector<std::string> names;
    for (const auto& r : registry()) names.push_back(r.name);
    return names;
}

const IdentityRecord* find_identity(const std::string& name) {
    for (const auto& r : registry())
        if (r.name == name) return &r;
    return nullptr;
}

EvalResult eval_identity(const std::string& name, const Rational& t,
                         bool integral) {
    IdentityRecord constructed;
    const IdentityRecord* rec = find_identity(name);
    if (!rec && name.rfind("thm5:", 0) == 0) {
        constructed = thm5_construct((unsigned)std::stoul(name.substr(5)));
        rec = &constructed;
    }
    if (!rec) throw std::invalid_argument("unknown identity: " + name);
    if (integral) {
        if (t.get_den() != 1)
            throw std::domain_error(name + ": t must be an integer");
        if (!rec->validity.admits(mpz_get_si(t.get_num().get_mpz_t())))
            throw std::domain_error(name + ": t outside validity class");
    }
    EvalResult out;
    const char* roles[3] = {"x", "y", "z"};
    if (rec->form == IdentityRecord::Form::PellCubeSquare) {
        roles[1] = "q";
        roles[2] = "w";
    }
    Rational vals[3] = {rec->x.eval(t), rec->y.eval(t), rec->z.eval(t)};
    int count = rec->form == IdentityRecord::Form::HallPair ? 2 : 3;
    for (int i = 0; i < count; ++i) out.values.push_back({roles[i], vals[i]});
    out.residual = recompute_residual(*rec, t);
    out.contract_residual = rec->residual.eval(t);
    out.ok = out.residual == out.contract_residual;
    return out;
}

IdentityRecord thm5_construct(unsigned n) {
    if (n < 2) throw std::domain_error("thm5_construct: n must be >= 2");
    // Criterion: 3n(n-2) a square, i.e. n^2 - 2n = 3 m^2.
    Integer disc = Integer(3) * n * ((long)n - 2);
    if (disc < 0 || mpz_perfect_square_p(disc.get_mpz_t()) == 0)
        throw std::domain_error("thm5_construct: 3n(n-2) is not a square (n=" +
                                std::to_string(n) + ")");
    Integer m2 = (Integer(n) * n - 2 * (long)n) / 3;
    Integer m = exactcore::isqrt(m2);

    // Smallest c > 0 with 2cn an n-th power.
    Integer c(1);
    {
        long v = 2 * (long)n;
        for (long pr = 2; pr * pr <= v; ++pr) {
            if (v % pr) continue;
            unsigned long e = 0;
            while (v % pr == 0) {
                v /= pr;
                ++e;
            }
            unsigned long need = (n - e % n) % n;
            c *= exactcore::ipow(pr, need);
        }
        if (v > 1) c *= exactcore::ipow(v, n - 1);
    }
    Integer g2cn = 2 * c * n;
    Integer g;
    mpz_root(g.get_mpz_t(), g2cn.get_mpz_t(), n);
    if (exactcore::ipow(g, n) != g2cn)
        throw std::logic_error("thm5_construct: 2cn is not an n-th power");

    // Smallest A > 0 with n | A c m.
    Integer cm_mod = (c * m) % n;
    Integer a = Integer(n) / gcd(Integer(n), cm_mod == 0 ? Integer(n) : cm_mod);

    Poly z = Poly::monomial(a, n + 1) + Poly::monomial(a * c * (m + 1), 1);
    Poly y = Poly::monomial(a, n + 1) + Poly::monomial(a * c * (m - 1), 1);
    // x = (2cn)^{1/n} A (t^n + (n-1) c m / n)
    Rational const_term = Rational(g * a * ((long)n - 1) * c * m, n);
    const_term.canonicalize();
    if (const_term.get_den() != 1)
        throw std::logic_error("thm5_construct: x constant term not integral");
    Poly x = Poly::monomial(g * a, n) + Poly::constant(const_term);

    return power_record("thm5:" + std::to_string(n), n, x, y, z,
                        (long)n * ((long)n - 3));
}

bool mod9_admissible(const Integer& d) {
    long r = mpz_get_si(Integer(((d % 9) + 9) % 9).get_mpz_t());
    return r != 4 && r != 5;
}

CruxConic crux_conic(const Rational& r, int sign) {
    if (r == 0) throw std::domain_error("crux_conic: r must be nonzero");
    if (sign != 1 && sign != -1)
        throw std::domain_error("crux_conic: sign must be +-1");
    CruxConic c;
    c.sign = sign;
    c.A = -r * r * r;
    c.B = 27 * (1 + r);
    c.C = 27;
    c.D = Rational(-3 * sign) * r * r;
    c.E = Rational(27 * sign);
    c.F = -3 * r;
    return c;
}

namespace {

Integer trinorm_value(const Integer& x, const Integer& y, const Integer& z) {
    Integer a = z - y - x;
    return a * a * a - 27 * x * y * z;
}

Integer klein_value(const Integer& x, const Integer& y, const Integer& z) {
    return x * x * x * y + y * y * y * z + z * z * z * x;
}

KnownCheck check_eq(const std::string& name, const Integer& got,
                    const Integer& want) {
    KnownCheck k{name, got == want, ""};
    std::ostringstream os;
    os << "value " << got.get_str() << (k.ok ? " == " : " != ")
       << want.get_str();
    k.detail = os.str();
    return k;
}

double ratio(const Integer& x, const Integer& k) {
    exactcore::Real rx = exactcore::Real::of(x, 128).sqrt();
    return (rx / exactcore::Real::of(abs(k), 128)).to_double();
}

}  // namespace

std::vector<KnownCheck> verify_known_all() {
    std::vector<KnownCheck> out;

    {
        Integer z("2220422932"), y("283059965"), x("2218888517");
        out.push_back(check_eq("sol30", z * z * z - y * y * y - x * x * x,
                               Integer(30)));
    }
    {
        Integer x("5853886516781223"), y("447884928428402042307918");
        Integer k = x * x * x - y * y;
        auto c = check_eq("hall-record", k, Integer(1641843));
        double r = ratio(x, k);
        if (std::abs(r - 46.60) > 0.05) c.ok = false;
        c.detail += ", r = " + std::to_string(r);
        out.push_back(c);
    }
    {
        Integer x("16544006443618"), k("4090263");
        Integer y = exactcore::isqrt(x * x * x - k);
        bool sq = y * y == x * x * x - k;
        double r = ratio(x, k);
        KnownCheck c{"hall-near-cutoff", sq && std::abs(r - 0.9944) < 0.001,
                     "y exists: " + std::to_string(sq) +
                         ", r = " + std::to_string(r)};
        out.push_back(c);
    }
    // Exact trinomial norms; printed values carry the opposite sign
    // convention, magnitudes agree.
    out.push_back(check_eq("crux-sporadic-17",
                           trinorm_value(204, 115327, 162434), Integer(-17)));
    out.push_back(check_eq("crux-sporadic-26", trinorm_value(650, 1425, 7899),
                           Integer(-26)));
    {
        struct Row {
            long x, y, z, n;
        };
        const Row rows[] = {{14, 84, 313, -1},       {6818, 4996, 46879, 1},
                            {20388, 4881, 86830, 1}, {2742, 32540, 96843, 1},
                            {16948, 31226, 186919, 1}, {3408, 182899, 370338, -1}};
        bool ok = true;
        std::string detail;
        for (const auto& r : rows) {
            Integer v = trinorm_value(r.x, r.y, r.z);
            if (v != r.n) ok = false;
            detail += v.get_str() + " ";
        }
        out.push_back({"trinorm-units", ok, "norms: " + detail});
    }
    {
        struct Row {
            long x, y, z, kv;
            double zk;
        };
        const Row rows[] = {{1421, -1057, 1501, -49, 30.6},
                            {7211, -8381, 11010, -121, 91.0},
                            {-1550, 11817, 32615, 245, 133.1}};
        bool ok = true;
        std::string detail;
        for (const auto& r : rows) {
            Integer v = klein_value(r.x, r.y, r.z);
            double zk = (double)r.z / std::abs((double)r.kv);
            if (v != r.kv || std::abs(zk - r.zk) > 0.05) ok = false;
            detail += v.get_str() + " ";
        }
        out.push_back({"klein-sporadics", ok, "K: " + detail});
    }
    out.push_back(
        check_eq("klein-family-t7", klein_value(1, -49, 343), Integer(-49)));

    return out;
}

bool verify_known(const std::string& name) {
    for (const auto& c : verify_known_all())
        if (c.name == name) return c.ok;
    throw std::invalid_argument("unknown ledger item: " + name);
}

}  // namespace nearmiss::families
