#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ck/error.hpp"

namespace ck {

// Three-valued answer for questions asked of finite-precision data.
enum class Tri { False, True, Unknown };

// p^k for small odd primes, cached per thread.
const mpz_class& prime_power(unsigned p, int k);

// v_p(n) for n != 0.
int valuation_of(unsigned p, const mpz_class& n);

/// Element of Q_p known modulo p^N.
///
/// Stored as p^v * u with u a unit known modulo p^(N - v). A value that is
/// indistinguishable from zero at its precision has no unit part; its
/// valuation is reported as N. Arithmetic never claims more digits than the
/// operands justify: sums keep the smaller absolute precision, products keep
/// the smaller relative precision.
class PadicScalar {
public:
    PadicScalar() = default;

    static PadicScalar zero(unsigned p, int abs_prec);
    static PadicScalar from_integer(unsigned p, const mpz_class& n, int abs_prec);
    static PadicScalar from_integer(unsigned p, long n, int abs_prec)
    {
        return from_integer(p, mpz_class(n), abs_prec);
    }
    // Throws BadReduction if the denominator is divisible by p and the
    // result would need more negative valuation than abs_prec allows.
    static PadicScalar from_rational(unsigned p, const mpq_class& q, int abs_prec);
    // An integer constant treated as exact to `rel_prec` significant digits;
    // zero becomes zero to absolute precision rel_prec.
    static PadicScalar exact_integer(unsigned p, const mpz_class& n, int rel_prec);
    static PadicScalar exact_integer(unsigned p, long n, int rel_prec)
    {
        return exact_integer(p, mpz_class(n), rel_prec);
    }
    static PadicScalar exact_rational(unsigned p, const mpq_class& q, int rel_prec);

    unsigned prime() const noexcept { return p_; }
    bool valid() const noexcept { return p_ != 0; }
    int valuation() const noexcept { return v_; }
    int precision() const noexcept { return v_ + r_; }
    int relative_precision() const noexcept { return r_; }
    const mpz_class& unit() const noexcept { return u_; }

    bool is_zero_to_precision() const noexcept { return r_ == 0; }
    // False when provably nonzero, Unknown when indistinguishable from zero.
    Tri is_zero() const noexcept { return r_ == 0 ? Tri::Unknown : Tri::False; }
    // Decides v(x) >= k. Unknown when the precision does not reach k.
    Tri valuation_at_least(int k) const noexcept;
    Tri equals(const PadicScalar& other) const;

    // Integer representative in [0, p^N); requires valuation >= 0.
    mpz_class lift() const;
    // Symmetric representative in (-p^N/2, p^N/2]; requires valuation >= 0.
    mpz_class lift_symmetric() const;
    // Rational representative p^v * u.
    mpq_class to_rational() const;
    // Value mod p as 0..p-1; requires valuation >= 0 and precision >= 1.
    unsigned residue() const;

    PadicScalar with_precision(int abs_prec) const;
    // Pads with zero digits up to abs_prec (used when a value is known exactly).
    PadicScalar padded_to(int abs_prec) const;

    PadicScalar operator-() const;
    PadicScalar& operator+=(const PadicScalar& o);
    PadicScalar& operator-=(const PadicScalar& o);
    PadicScalar& operator*=(const PadicScalar& o);
    PadicScalar& operator/=(const PadicScalar& o);
    friend PadicScalar operator+(PadicScalar a, const PadicScalar& b) { return a += b; }
    friend PadicScalar operator-(PadicScalar a, const PadicScalar& b) { return a -= b; }
    friend PadicScalar operator*(PadicScalar a, const PadicScalar& b) { return a *= b; }
    friend PadicScalar operator/(PadicScalar a, const PadicScalar& b) { return a /= b; }

    PadicScalar inverse() const;
    PadicScalar pow(unsigned long e) const;
    // Multiplication by an exact integer (gains precision when p | n).
    PadicScalar scaled(const mpz_class& n) const;
    PadicScalar scaled(long n) const { return scaled(mpz_class(n)); }
    // Division by an exact nonzero integer.
    PadicScalar divided(const mpz_class& n) const;
    PadicScalar divided(long n) const { return divided(mpz_class(n)); }
    // Multiplication by p^k.
    PadicScalar shifted(int k) const;

    // "6 + 6*7^2 + O(7^5)" style digit expansion.
    std::string to_string() const;

private:
    PadicScalar(unsigned p, int v, int r, mpz_class u) : p_(p), v_(v), r_(r), u_(std::move(u)) {}
    static PadicScalar normalized(unsigned p, mpz_class s, int base_val, int abs_prec);
    void check_same_prime(const PadicScalar& o) const;

    unsigned p_ = 0;
    int v_ = 0;
    int r_ = 0;
    mpz_class u_;
};

/// Dense polynomial over Q_p, coefficients indexed by degree.
class PadicPoly {
public:
    PadicPoly() = default;
    PadicPoly(unsigned p, std::vector<PadicScalar> coeffs);
    static PadicPoly from_rationals(unsigned p, std::span<const mpq_class> coeffs, int abs_prec);

    unsigned prime() const noexcept { return p_; }
    const std::vector<PadicScalar>& coeffs() const noexcept { return c_; }
    std::vector<PadicScalar>& coeffs() noexcept { return c_; }
    // Index of the last stored coefficient (formal degree).
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const PadicScalar& operator[](std::size_t i) const { return c_[i]; }
    PadicScalar& operator[](std::size_t i) { return c_[i]; }
    bool is_monic() const;
    int min_precision() const;

    PadicScalar evaluate(const PadicScalar& x) const;
    PadicPoly derivative() const;
    // G(s) = F(c + m*s).
    PadicPoly taylor_shift(const PadicScalar& c, const PadicScalar& m) const;
    // Drops trailing coefficients that are zero to precision.
    PadicPoly trimmed() const;

    friend PadicPoly operator+(const PadicPoly& a, const PadicPoly& b);
    friend PadicPoly operator-(const PadicPoly& a, const PadicPoly& b);
    friend PadicPoly operator*(const PadicPoly& a, const PadicPoly& b);
    PadicPoly scaled(const PadicScalar& s) const;

private:
    unsigned p_ = 0;
    std::vector<PadicScalar> c_;
};

// Quotient and remainder on division by a monic polynomial.
std::pair<PadicPoly, PadicPoly> divmod_monic(const PadicPoly& a, const PadicPoly& monic);

/// Truncated power series a_0 + a_1 t + ... + a_M t^M + O(t^(M+1)).
class PadicPowerSeries {
public:
    PadicPowerSeries() = default;
    PadicPowerSeries(unsigned p, std::vector<PadicScalar> coeffs);
    static PadicPowerSeries zero(unsigned p, int order, int abs_prec);
    static PadicPowerSeries constant(const PadicScalar& c, int order);

    unsigned prime() const noexcept { return p_; }
    // Truncation order M: coefficients of t^0..t^M are known.
    int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<PadicScalar>& coeffs() const noexcept { return c_; }
    std::vector<PadicScalar>& coeffs() noexcept { return c_; }
    const PadicScalar& operator[](std::size_t i) const { return c_[i]; }
    PadicScalar& operator[](std::size_t i) { return c_[i]; }

    PadicPowerSeries truncated(int order) const;
    PadicPowerSeries derivative() const;
    PadicPowerSeries inverse() const;
    // Square root with prescribed constant term root0 (root0^2 = a_0, 2*root0 invertible).
    PadicPowerSeries sqrt(const PadicScalar& root0) const;
    PadicPowerSeries scaled(const PadicScalar& s) const;
    // Substitution t -> c*t.
    PadicPowerSeries rescaled(const PadicScalar& c) const;
    PadicScalar evaluate(const PadicScalar& t) const;
    PadicPoly to_poly() const;

    friend PadicPowerSeries operator+(const PadicPowerSeries& a, const PadicPowerSeries& b);
    friend PadicPowerSeries operator-(const PadicPowerSeries& a, const PadicPowerSeries& b);
    friend PadicPowerSeries operator*(const PadicPowerSeries& a, const PadicPowerSeries& b);

private:
    unsigned p_ = 0;
    std::vector<PadicScalar> c_;
};

// Series in t with a pole: t^shift * body(t). Used for the chart at infinity.
struct LaurentSeries {
    int shift = 0;
    PadicPowerSeries body;

    // Antiderivative with zero constant term; throws if a t^-1 term is present.
    LaurentSeries integrate() const;
    PadicScalar evaluate(const PadicScalar& t) const;
    // Largest exponent with a known coefficient.
    int top_exponent() const { return shift + body.order(); }
};

// Termwise antiderivative with zero constant term; order grows by one.
PadicPowerSeries formal_integrate(const PadicPowerSeries& s);

// Square root of a unit a congruent to seed mod p, to the precision of a.
PadicScalar hensel_sqrt(const PadicScalar& a, unsigned seed);
// Root of F congruent to seed mod p, requiring F'(seed) to be a unit.
PadicScalar hensel_simple_root(const PadicPoly& f, unsigned seed);
// All roots of F in Z_p.
std::vector<PadicScalar> padic_poly_roots(const PadicPoly& f);
// Discriminant of the truncation of s to degree <= max_degree.
PadicScalar truncated_discriminant(const PadicPowerSeries& s, int max_degree);
PadicScalar discriminant(const PadicPoly& f);

// Exact discriminant of an integer polynomial (ascending coefficients).
mpz_class integer_discriminant(std::span<const mpz_class> coeffs);
mpq_class rational_discriminant(std::span<const mpq_class> coeffs);

// Teichmuller representative of the residue of x (x^(p-1) = 1 unless x = 0 mod p).
PadicScalar teichmuller_lift(unsigned p, unsigned residue, int abs_prec);

} // namespace ck
