#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "ck/curve.hpp"
#include "ck/padic.hpp"

namespace ck {

// Finite sum  sum_e s_e(x) y^e  over integer exponents e.
// Used both for functions and for differentials written as (...) * dx/2y.
struct YLaurent {
    unsigned p = 0;
    std::map<int, PadicPoly> terms;

    bool empty() const { return terms.empty(); }
    // Adds s(x) y^e.
    void add(int e, const PadicPoly& s);
    // Smallest precision over all coefficients.
    int min_precision() const;
};

// f(P) for a finite point; PoleAtPoint if a negative power of y meets y(P) = 0 mod p.
PadicScalar evaluate_correction(const YLaurent& f, const PadicPoint& P);
// d f written as g * dx/2y.
YLaurent exterior_derivative(const YLaurent& f, const HyperellipticCurve& C, unsigned p, int prec);

struct ReducedForm {
    std::vector<PadicScalar> coords; // in the basis x^i dx/2y, i < 2g
    YLaurent exact;                  // D = sum coords_i omega_i + d(exact)
};

// Rewrites D = sum_e A_e(x) y^e dx/2y (e even) in the basis plus an exact form.
ReducedForm reduce_differential(const HyperellipticCurve& C, unsigned p, int prec, const YLaurent& D);

/// Matrix of the Frobenius lift x -> x^p on the basis x^i dx/2y, i < 2g.
///
/// Column i holds phi^* omega_i, so phi^* omega_i = sum_j M[j][i] omega_j + d f_i.
struct FrobeniusAction {
    unsigned p = 0;
    int genus = 0;
    int precision = 0;         // every entry of M and f_i is known to at least this
    int working_precision = 0; // internal precision used
    int series_terms = 0;      // terms of the (1 + E/y^2p)^(-1/2) expansion kept
    std::vector<std::vector<PadicScalar>> M;
    std::vector<YLaurent> f;

    int dimension() const { return 2 * genus; }
};

// phi^* omega_i truncated after `terms` terms of the binomial expansion.
YLaurent frobenius_pullback(const HyperellipticCurve& C, unsigned p, int prec, int i, int terms);
// Number of binomial terms needed for absolute precision N.
int frobenius_series_terms(unsigned p, int genus, int N);
FrobeniusAction frobenius_action(const HyperellipticCurve& C, unsigned p, int N);
// Same with an explicit series length; used to check truncation stability.
FrobeniusAction frobenius_action(const HyperellipticCurve& C, unsigned p, int N, int terms);

// P(T) = det(I - T M), coefficients c_0..c_2g with c_0 = 1.
std::vector<mpz_class> zeta_char_poly(const FrobeniusAction& fa);
mpz_class jacobian_order_fp(const FrobeniusAction& fa);
// p + 1 - trace, from the rounded polynomial.
mpz_class point_count_fp(const FrobeniusAction& fa);

// P(T) for char poly coefficients of M: c_k = (-1)^k e_k(M).
std::vector<PadicScalar> char_poly_coefficients(const std::vector<std::vector<PadicScalar>>& M);

} // namespace ck
