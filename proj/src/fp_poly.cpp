#include "ck/fp_poly.hpp"

#include <algorithm>

#include "ck/error.hpp"

namespace ck {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

} // namespace

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1U)
            r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1U;
    }
    return r;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p)
{
    a %= p;
    if (a == 0)
        throw Error(ErrorKind::InvalidArgument, "inverse of 0 mod p");
    return mod_pow(a, p - 2, p);
}

std::uint64_t euler_criterion(std::uint64_t a, std::uint64_t p)
{
    a %= p;
    if (a == 0)
        return 0;
    return mod_pow(a, (p - 1) / 2, p);
}

std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p)
{
    a %= p;
    if (a == 0)
        return 0;
    if (euler_criterion(a, p) != 1)
        throw Error(ErrorKind::NotASquare, "not a quadratic residue");
    if (p % 4 == 3)
        return mod_pow(a, (p + 1) / 4, p);
    std::uint64_t q = p - 1;
    std::uint64_t s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::uint64_t z = 2;
    while (euler_criterion(z, p) != p - 1)
        ++z;
    std::uint64_t m = s;
    std::uint64_t c = mod_pow(z, q, p);
    std::uint64_t t = mod_pow(a, q, p);
    std::uint64_t r = mod_pow(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0;
        std::uint64_t tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j)
            b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs))
{
    for (auto& c : c_)
        c %= p_;
    trim();
}

FpPoly FpPoly::monomial(std::uint64_t p, int degree, std::uint64_t c)
{
    std::vector<std::uint64_t> v(static_cast<std::size_t>(degree + 1), 0);
    v.back() = c;
    return FpPoly(p, std::move(v));
}

void FpPoly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

std::uint64_t FpPoly::evaluate(std::uint64_t x) const
{
    std::uint64_t acc = 0;
    x %= p_;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = (mulmod(acc, x, p_) + *it) % p_;
    return acc;
}

FpPoly FpPoly::derivative() const
{
    std::vector<std::uint64_t> d;
    for (std::size_t i = 1; i < c_.size(); ++i)
        d.push_back(mulmod(c_[i], i % p_, p_));
    return FpPoly(p_, std::move(d));
}

FpPoly FpPoly::monic() const
{
    if (c_.empty())
        return *this;
    return scaled(mod_inverse(c_.back(), p_));
}

FpPoly FpPoly::scaled(std::uint64_t s) const
{
    std::vector<std::uint64_t> v(c_);
    for (auto& c : v)
        c = mulmod(c, s % p_, p_);
    return FpPoly(p_, std::move(v));
}

FpPoly operator+(const FpPoly& a, const FpPoly& b)
{
    const std::uint64_t p = a.p_ ? a.p_ : b.p_;
    std::vector<std::uint64_t> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = (a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i))) % p;
    return FpPoly(p, std::move(v));
}

FpPoly operator-(const FpPoly& a)
{
    std::vector<std::uint64_t> v(a.c_);
    for (auto& c : v)
        c = (a.p_ - c) % a.p_;
    return FpPoly(a.p_, std::move(v));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) { return a + (-b); }

FpPoly operator*(const FpPoly& a, const FpPoly& b)
{
    const std::uint64_t p = a.p_ ? a.p_ : b.p_;
    if (a.c_.empty() || b.c_.empty())
        return FpPoly(p, {});
    std::vector<std::uint64_t> v(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            v[i + j] = (v[i + j] + mulmod(a.c_[i], b.c_[j], p)) % p;
    return FpPoly(p, std::move(v));
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b)
{
    if (b.is_zero())
        throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
    const std::uint64_t p = b.prime();
    if (a.degree() < b.degree())
        return {FpPoly(p, {}), a};
    std::vector<std::uint64_t> r(a.coeffs());
    std::vector<std::uint64_t> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
    const std::uint64_t inv = mod_inverse(b.leading(), p);
    const int db = b.degree();
    for (int k = a.degree(); k >= db; --k) {
        const std::uint64_t c = mulmod(r[static_cast<std::size_t>(k)], inv, p);
        q[static_cast<std::size_t>(k - db)] = c;
        if (c == 0)
            continue;
        for (int m = 0; m <= db; ++m) {
            auto& slot = r[static_cast<std::size_t>(k - db + m)];
            slot = (slot + p - mulmod(c, b.coeff(m), p)) % p;
        }
    }
    r.resize(static_cast<std::size_t>(db));
    return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
}

FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }
FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }

std::tuple<FpPoly, FpPoly, FpPoly> extended_gcd(const FpPoly& a, const FpPoly& b)
{
    const std::uint64_t p = a.prime() ? a.prime() : b.prime();
    FpPoly r0 = a, r1 = b;
    FpPoly s0 = FpPoly::constant(p, 1), s1(p, {});
    FpPoly t0(p, {}), t1 = FpPoly::constant(p, 1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        FpPoly s2 = s0 - q * s1;
        FpPoly t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    const std::uint64_t inv = mod_inverse(r0.leading(), p);
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

FpPoly gcd(const FpPoly& a, const FpPoly& b) { return std::get<0>(extended_gcd(a, b)); }

} // namespace ck
