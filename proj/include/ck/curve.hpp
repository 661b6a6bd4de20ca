#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "ck/fp_poly.hpp"
#include "ck/padic.hpp"

namespace ck {

template <class R>
struct CurvePoint {
    bool infinity = false;
    R x{};
    R y{};

    static CurvePoint at_infinity() { return CurvePoint{true, R{}, R{}}; }
    static CurvePoint affine(R x, R y) { return CurvePoint{false, std::move(x), std::move(y)}; }
};

using RationalPoint = CurvePoint<mpq_class>;
using FpPoint = CurvePoint<std::uint64_t>;
using PadicPoint = CurvePoint<PadicScalar>;

bool operator==(const RationalPoint& a, const RationalPoint& b);
bool operator<(const RationalPoint& a, const RationalPoint& b);
bool operator==(const FpPoint& a, const FpPoint& b);
bool operator<(const FpPoint& a, const FpPoint& b);

std::string to_string(const RationalPoint& P);
std::string to_string(const FpPoint& P);
std::string to_string(const PadicPoint& P);

// y^2 = F(x) with F monic, squarefree, of degree 2g+1.
class HyperellipticCurve {
public:
    HyperellipticCurve() = default;
    // Validates; throws NotMonic, EvenDegree or SingularModel.
    explicit HyperellipticCurve(std::vector<mpq_class> coeffs);

    int genus() const noexcept { return genus_; }
    int degree() const noexcept { return 2 * genus_ + 1; }
    const std::vector<mpq_class>& coeffs() const noexcept { return f_; }
    const mpq_class& discriminant() const noexcept { return disc_; }

    mpq_class evaluate(const mpq_class& x) const;
    bool contains(const RationalPoint& P) const;
    // Requires every coefficient to be p-integral.
    bool is_p_integral(unsigned p) const;
    bool has_good_reduction(unsigned p) const;
    FpPoly reduce(unsigned p) const;
    PadicPoly padic(unsigned p, int abs_prec) const;
    // Residual of y^2 - F(x), to the point's precision.
    PadicScalar residual(const PadicPoint& P) const;

    std::string to_string() const;

private:
    int genus_ = 0;
    std::vector<mpq_class> f_;
    mpq_class disc_;
};

// Throws the error validate() would.
void validate(const std::vector<mpq_class>& coeffs);

// Monic model of y^2 = a x^(2g+1) + ... via (u, v) = (a x, a^g y).
struct MonicModel {
    std::vector<mpq_class> original;
    HyperellipticCurve curve;
    mpq_class scale; // a

    RationalPoint to_monic(const RationalPoint& P) const;
    RationalPoint from_monic(const RationalPoint& P) const;
    bool is_identity() const { return scale == 1; }
};

MonicModel scale_to_monic(const std::vector<mpq_class>& coeffs);

// Smallest prime >= p_min of good reduction.
unsigned good_reduction_prime(const HyperellipticCurve& C, unsigned p_min = 7);
unsigned next_prime(unsigned n);
bool is_prime(unsigned n);

// All F_p points, infinity first then ascending (x, y).
std::vector<FpPoint> enumerate_fp_points(const HyperellipticCurve& C, unsigned p);
// One representative per involution orbit, keeping the smaller y.
std::vector<FpPoint> fp_points_up_to_involution(const HyperellipticCurve& C, unsigned p);

FpPoint reduce_point(const PadicPoint& P);
PadicPoint lift_point(const FpPoint& P, const HyperellipticCurve& C, unsigned p, int abs_prec);

RationalPoint involution(const RationalPoint& P);
FpPoint involution(const FpPoint& P, unsigned p);
PadicPoint involution(const PadicPoint& P);

// Points with max(|n|, |d|) <= H, including infinity, in ascending order.
std::vector<RationalPoint> search_rational_points(const HyperellipticCurve& C, long height_bound);
double global_height(const RationalPoint& P);

PadicPoint to_padic(const RationalPoint& P, unsigned p, int abs_prec);

enum class ChartKind { NonWeierstrass, FiniteWeierstrass, Infinity };

/// Local coordinate on a residue disc, truncated at t^M.
///
/// NonWeierstrass: x = x0 + t, y = sqrt(F(x0 + t)).
/// FiniteWeierstrass: y = t, x = x0 + u(t^2) with F(x0 + u) = t^2.
/// Infinity: x = t^-2, y = t^-(2g+1) w(t), w(0) = 1.
/// A chart for a point in a Weierstrass disc is centred on the disc's
/// Weierstrass point.
class LocalChart {
public:
    // Chart on the disc of P with coefficients to absolute precision prec.
    LocalChart(const HyperellipticCurve& C, unsigned p, int prec, const PadicPoint& P, int order);
    static LocalChart for_disc(const HyperellipticCurve& C, unsigned p, int prec, const FpPoint& P, int order);

    ChartKind kind() const noexcept { return kind_; }
    const PadicPoint& center() const noexcept { return center_; }
    int order() const noexcept { return order_; }
    unsigned prime() const noexcept { return p_; }
    int precision() const noexcept { return prec_; }

    // Finite charts: x(t), y(t). Infinity chart: the Laurent expansions.
    const LaurentSeries& x() const noexcept { return x_; }
    const LaurentSeries& y() const noexcept { return y_; }
    // omega_i = x^i dx / 2y = (returned series) dt.
    LaurentSeries differential(int i) const;
    // Parameter t of a point in this disc; throws DifferentDiscs otherwise.
    PadicScalar parameter(const PadicPoint& Q) const;
    // The point with parameter t, solved to full precision rather than
    // read off the truncated series.
    PadicPoint point_at(const PadicScalar& t) const;

private:
    HyperellipticCurve curve_;
    unsigned p_;
    int prec_;
    int order_;
    ChartKind kind_;
    PadicPoint center_;
    LaurentSeries x_;
    LaurentSeries y_;
    PadicPowerSeries base_; // omega_0 / dt apart from the t-shift at infinity
};

bool same_disc(const PadicPoint& a, const PadicPoint& b);
bool in_weierstrass_disc(const PadicPoint& P);

} // namespace ck
