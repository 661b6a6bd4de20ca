#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

namespace ck {

// Polynomial over F_p for word-sized p, ascending coefficients, no trailing zeros.
class FpPoly {
public:
    FpPoly() = default;
    FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);
    static FpPoly constant(std::uint64_t p, std::uint64_t c) { return FpPoly(p, {c}); }
    static FpPoly monomial(std::uint64_t p, int degree, std::uint64_t c = 1);

    std::uint64_t prime() const noexcept { return p_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    std::uint64_t coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : 0; }
    std::uint64_t leading() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<std::uint64_t>& coeffs() const noexcept { return c_; }

    std::uint64_t evaluate(std::uint64_t x) const;
    FpPoly derivative() const;
    FpPoly monic() const;
    FpPoly scaled(std::uint64_t s) const;

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator-(const FpPoly& a);
    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

private:
    void trim();

    std::uint64_t p_ = 0;
    std::vector<std::uint64_t> c_;
};

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
// Legendre-type character: 0, 1 or p-1.
std::uint64_t euler_criterion(std::uint64_t a, std::uint64_t p);
// Some square root of a quadratic residue a mod p (Tonelli-Shanks).
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p);

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
FpPoly operator%(const FpPoly& a, const FpPoly& b);
FpPoly operator/(const FpPoly& a, const FpPoly& b);
// Monic gcd d with d = s*a + t*b.
std::tuple<FpPoly, FpPoly, FpPoly> extended_gcd(const FpPoly& a, const FpPoly& b);
FpPoly gcd(const FpPoly& a, const FpPoly& b);

} // namespace ck
