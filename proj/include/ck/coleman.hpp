#pragma once

#include <vector>

#include "ck/cohomology.hpp"
#include "ck/curve.hpp"
#include "ck/padic.hpp"

namespace ck {

// values[i] = integral from `from` to `to` of x^i dx/2y.
// When an endpoint is the point at infinity only the g holomorphic
// components are defined and values has size g.
struct IntegralVector {
    unsigned p = 0;
    PadicPoint from;
    PadicPoint to;
    std::vector<PadicScalar> values;

    int precision() const;
    IntegralVector operator-() const;
};

// Sum along a path from a.from through a.to = b.from to b.to.
IntegralVector concatenate(const IntegralVector& a, const IntegralVector& b);
IntegralVector halved(const IntegralVector& v);

// Chart truncation order for a tiny integral correct to N digits.
int tiny_integral_order(unsigned p, int genus, int N);

// Integral inside one residue disc; throws DifferentDiscs otherwise.
IntegralVector tiny_integral(const HyperellipticCurve& C, unsigned p, int N, const PadicPoint& P, const PadicPoint& Q);
// Same, with an explicit truncation order.
IntegralVector tiny_integral(const HyperellipticCurve& C, unsigned p, int N, const PadicPoint& P, const PadicPoint& Q, int order);

// Frobenius-fixed point of the disc of P; WeierstrassDisc on Weierstrass discs.
PadicPoint teichmuller_point(const HyperellipticCurve& C, const PadicPoint& P);

// The Weierstrass point of a Weierstrass disc (infinity or (r, 0) with F(r) = 0).
PadicPoint weierstrass_point(const HyperellipticCurve& C, unsigned p, int N, const PadicPoint& P);

IntegralVector coleman_integral(const HyperellipticCurve& C, const FrobeniusAction& fa, const PadicPoint& P, const PadicPoint& Q);

// (int_oo^Q omega_i) for i < g.
std::vector<PadicScalar> integral_functional(const HyperellipticCurve& C, const FrobeniusAction& fa, const PadicPoint& Q);

// Solves A v = b by Gaussian elimination with minimal-valuation pivots.
std::vector<PadicScalar> solve_linear(std::vector<std::vector<PadicScalar>> A, std::vector<PadicScalar> b);

} // namespace ck
