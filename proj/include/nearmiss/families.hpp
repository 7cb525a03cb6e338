#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nearmiss/poly.hpp"

namespace nearmiss::families {

// Congruence class of t giving integer specializations; modulus 1 = all t.
struct Validity {
    long modulus = 1;
    std::vector<long> residues{0};
    bool admits(long t) const {
        if (modulus <= 1) return true;
        long r = ((t % modulus) + modulus) % modulus;
        for (long a : residues)
            if (r == ((a % modulus) + modulus) % modulus) return true;
        return false;
    }
};

// A registered polynomial or Fermat-Pell family with an exact residual
// contract, re-derivable from scratch at any t.
struct IdentityRecord {
    enum class Form {
        PowerTriple,    // z^n - y^n - x^n
        HallPair,       // x^3 - y^2        (x, y)
        TrinormTriple,  // (z-y-x)^3 - 27xyz
        KleinTriple,    // x^3 y + y^3 z + z^3 x
        PellCubeSquare  // x^3 - q w^2      (x, q, w)
    };
    std::string name;
    std::string note;
    Form form = Form::PowerTriple;
    unsigned exponent = 0;  // PowerTriple only
    Poly x, y, z;           // role depends on form (q, w in y, z for Pell)
    Poly residual;          // the exact contract
    long residual_degree_bound = 0;
    Validity validity;
};

struct EvalResult {
    std::vector<std::pair<std::string, Rational>> values;
    Rational residual;           // recomputed from scratch
    Rational contract_residual;  // record.residual at t
    bool ok;                     // the two agree
};

const std::vector<IdentityRecord>& registry();
std::vector<std::string> registry_names();
const IdentityRecord* find_identity(const std::string& name);

// Throws on unknown name or (when integral = true) t outside the validity
// class. Accepts "thm5:<n>" for on-demand constructions.
EvalResult eval_identity(const std::string& name, const Rational& t,
                         bool integral = false);

// The power-curve family for n with 3n(n-2) a square; throws
// std::domain_error when the criterion fails (e.g. n = 5).
IdentityRecord thm5_construct(unsigned n);

// false iff d = +-4 mod 9.
bool mod9_admissible(const Integer& d);

// Residual conic of the unit-norm surface (z-y-x)^3 - 27xyz = sign after
// slicing by z - y - x - sign = r x and cancelling x:
//   A x^2 + B xy + C y^2 + D x + E y + F = 0.
struct CruxConic {
    Rational A, B, C, D, E, F;
    int sign;
    Rational eval(const Rational& x, const Rational& y) const {
        return A * x * x + B * x * y + C * y * y + D * x + E * y + F;
    }
    bool contains(const Rational& x, const Rational& y) const {
        return eval(x, y) == 0;
    }
};
CruxConic crux_conic(const Rational& r, int sign);

// Exact verification of the built-in ledger of published values.
struct KnownCheck {
    std::string name;
    bool ok;
    std::string detail;
};
std::vector<KnownCheck> verify_known_all();
bool verify_known(const std::string& name);

}  // namespace nearmiss::families
