#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "ck/cohomology.hpp"
#include "ck/curve.hpp"
#include "ck/fp_poly.hpp"
#include "ck/padic.hpp"

namespace ck {

// n/d with |n|, |d| <= sqrt(p^N / 2) and n/d = a mod p^N, if any.
std::optional<mpq_class> rational_reconstruct(const PadicScalar& a);

// Rational point through reconstruction of both coordinates, checked on C exactly.
std::optional<RationalPoint> reconstruct_point(const HyperellipticCurve& C, const PadicPoint& Q);

bool is_two_torsion_extra(const PadicPoint& Q);

// Lowest-degree primitive integer polynomial g (ascending coefficients, positive
// leading coefficient) with deg g <= max_degree and g(a) = 0 mod p^(prec - slack).
std::optional<std::vector<mpz_class>> algebraic_dependency(const PadicScalar& a, int max_degree = 2, int slack = 2);

// LLL-reduced basis (delta = 3/4) of the lattice spanned by the rows.
std::vector<std::vector<mpz_class>> lll_reduce(std::vector<std::vector<mpz_class>> basis);

/// Reduced divisor class on the Jacobian of y^2 = F(x) over F_p.
struct MumfordDivisor {
    FpPoly u; // monic, deg <= g
    FpPoly v; // deg v < deg u, v^2 = F mod u

    static MumfordDivisor identity(unsigned p);
    // [P - oo] for an affine F_p point.
    static MumfordDivisor from_point(const FpPoint& P, unsigned p);
    bool is_identity() const { return u.degree() == 0; }
    bool operator==(const MumfordDivisor& o) const { return u == o.u && v == o.v; }
};

bool is_valid_divisor(const MumfordDivisor& D, const FpPoly& F, int genus);
MumfordDivisor cantor_negate(const MumfordDivisor& D);
MumfordDivisor cantor_compose_reduce(const MumfordDivisor& a, const MumfordDivisor& b, const FpPoly& F, int genus);
MumfordDivisor cantor_multiply(const MumfordDivisor& D, mpz_class n, const FpPoly& F, int genus);
// Order of D given a multiple of it.
mpz_class divisor_order(const MumfordDivisor& D, const mpz_class& multiple, const FpPoly& F, int genus);

// Prime factors with multiplicity, by trial division.
std::vector<std::pair<mpz_class, int>> factor(mpz_class n);

struct TorsionOrder {
    mpz_class order;
    bool p_divides_order = false;
};

// Order of [Q - oo] reduced to J(F_p); throws NotTorsionConsistent if the reduction
// is not killed by #J(F_p).
TorsionOrder torsion_order(const PadicPoint& Q, const HyperellipticCurve& C, const FrobeniusAction& fa);

enum class Verdict { Rational, TwoTorsion, HigherTorsion };

struct ClassifiedPoint {
    PadicPoint point;
    Verdict verdict = Verdict::HigherTorsion;
    std::optional<RationalPoint> rational;
    std::optional<std::vector<mpz_class>> x_minpoly;
    std::optional<std::vector<mpz_class>> y_minpoly;
    mpz_class order = 0; // torsion order of [Q - oo]; 1 for oo
    bool p_divides_order = false;
};

// Rational > two-torsion > higher torsion. Throws NonTorsionExtra when a
// non-rational point fails to annihilate the integrals to `floor` digits.
ClassifiedPoint classify_point(const HyperellipticCurve& C, const FrobeniusAction& fa, const PadicPoint& Q, int floor);

std::string polynomial_to_string(const std::vector<mpz_class>& g, const char* var = "x");

} // namespace ck
