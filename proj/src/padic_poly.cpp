#include "ck/padic.hpp"

#include <algorithm>
#include <limits>

namespace ck {

namespace {

int max_precision(std::span<const PadicScalar> xs)
{
    int m = std::numeric_limits<int>::min();
    for (const auto& x : xs)
        m = std::max(m, x.precision());
    return m;
}

// Newton iteration for a simple root of an integer polynomial modulo p^prec.
mpz_class newton_lift(unsigned p, const std::vector<mpz_class>& f, mpz_class x, int prec)
{
    auto eval = [&](const std::vector<mpz_class>& g, const mpz_class& at, const mpz_class& mod) {
        mpz_class acc = 0;
        for (auto it = g.rbegin(); it != g.rend(); ++it) {
            acc = acc * at + *it;
            mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
        }
        return acc;
    };
    std::vector<mpz_class> df;
    for (std::size_t i = 1; i < f.size(); ++i)
        df.push_back(f[i] * static_cast<unsigned long>(i));
    int k = 1;
    while (k < prec) {
        k = std::min(2 * k, prec);
        const mpz_class& mod = prime_power(p, k);
        mpz_class num = eval(f, x, mod);
        mpz_class den = eval(df, x, mod);
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
            throw Error(ErrorKind::NotSimpleRoot, "derivative vanishes mod p during Newton lift");
        x -= num * inv;
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
    }
    return x;
}

unsigned eval_mod_p(const std::vector<unsigned>& g, unsigned r, unsigned p)
{
    unsigned long acc = 0;
    for (auto it = g.rbegin(); it != g.rend(); ++it)
        acc = (acc * r + *it) % p;
    return static_cast<unsigned>(acc);
}

std::vector<unsigned> derivative_mod_p(const std::vector<unsigned>& g, unsigned p)
{
    std::vector<unsigned> d;
    for (std::size_t i = 1; i < g.size(); ++i)
        d.push_back(static_cast<unsigned>((static_cast<unsigned long>(g[i]) * i) % p));
    return d;
}

void roots_recursive(const PadicPoly& g, const mpz_class& offset, int scale, std::vector<PadicScalar>& out)
{
    const unsigned p = g.prime();
    int min_val = std::numeric_limits<int>::max();
    for (const auto& c : g.coeffs())
        if (!c.is_zero_to_precision())
            min_val = std::min(min_val, c.valuation());
    if (min_val == std::numeric_limits<int>::max())
        throw Error(ErrorKind::PrecisionExhausted, "polynomial indistinguishable from zero during root isolation");

    std::vector<PadicScalar> normalized;
    std::vector<unsigned> residues;
    for (const auto& c : g.coeffs()) {
        PadicScalar s = c.shifted(-min_val);
        if (s.precision() < 1)
            throw Error(ErrorKind::PrecisionExhausted, "coefficient residue unknown during root isolation");
        residues.push_back(s.residue());
        normalized.push_back(std::move(s));
    }
    const PadicPoly h(p, normalized);
    const auto dres = derivative_mod_p(residues, p);

    for (unsigned r = 0; r < p; ++r) {
        if (eval_mod_p(residues, r, p) != 0)
            continue;
        const mpz_class base = offset + prime_power(p, scale) * r;
        if (eval_mod_p(dres, r, p) != 0) {
            const PadicScalar s = hensel_simple_root(h, r);
            const mpz_class x = offset + prime_power(p, scale) * s.lift();
            out.push_back(PadicScalar::from_integer(p, x, scale + s.precision()));
            continue;
        }
        const PadicPoly shifted = h.taylor_shift(PadicScalar::exact_integer(p, static_cast<long>(r), h.min_precision()),
                                                 PadicScalar::exact_integer(p, static_cast<long>(p), h.min_precision()));
        roots_recursive(shifted, base, scale + 1, out);
    }
}

// Bareiss fraction-free determinant.
mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> a)
{
    const std::size_t n = a.size();
    if (n == 0)
        return 1;
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k] == 0)
                ++swap_row;
            if (swap_row == n)
                return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// Determinant modulo p^k. Row operations with minimal-valuation pivots are
// unimodular over Z and leave the matrix upper triangular mod p^k.
mpz_class modular_determinant(std::vector<std::vector<mpz_class>> a, unsigned p, int k)
{
    const mpz_class& m = prime_power(p, k);
    const std::size_t n = a.size();
    for (auto& row : a)
        for (auto& x : row)
            mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    mpz_class det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        int best = k;
        for (std::size_t r = c; r < n; ++r) {
            if (a[r][c] == 0)
                continue;
            const int v = valuation_of(p, a[r][c]);
            if (v < best) {
                best = v;
                piv = r;
            }
        }
        if (piv == n)
            return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        const mpz_class& pv = prime_power(p, best);
        mpz_class u = a[c][c] / pv, uinv;
        mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0)
                continue;
            mpz_class q = a[r][c] / pv * uinv % m;
            for (std::size_t j = c; j < n; ++j) {
                a[r][j] -= q * a[c][j];
                mpz_mod(a[r][j].get_mpz_t(), a[r][j].get_mpz_t(), m.get_mpz_t());
            }
        }
        det = det * a[c][c] % m;
    }
    mpz_mod(det.get_mpz_t(), det.get_mpz_t(), m.get_mpz_t());
    return det;
}

// Sylvester matrix of f and f' (f ascending, leading coefficient nonzero), degree n >= 2.
std::vector<std::vector<mpz_class>> sylvester_with_derivative(const std::vector<mpz_class>& asc)
{
    const std::size_t n = asc.size() - 1;
    std::vector<mpz_class> f(asc.begin(), asc.end());
    std::vector<mpz_class> df;
    for (std::size_t i = 1; i < f.size(); ++i)
        df.push_back(f[i] * static_cast<unsigned long>(i));
    std::reverse(f.begin(), f.end());
    std::reverse(df.begin(), df.end());
    const std::size_t size = 2 * n - 1;
    std::vector<std::vector<mpz_class>> syl(size, std::vector<mpz_class>(size, 0));
    for (std::size_t r = 0; r < n - 1; ++r)
        for (std::size_t j = 0; j < f.size(); ++j)
            syl[r][r + j] = f[j];
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < df.size(); ++j)
            syl[n - 1 + r][r + j] = df[j];
    return syl;
}

} // namespace

// ---------------------------------------------------------------- PadicPoly

PadicPoly::PadicPoly(unsigned p, std::vector<PadicScalar> coeffs) : p_(p), c_(std::move(coeffs)) {}

PadicPoly PadicPoly::from_rationals(unsigned p, std::span<const mpq_class> coeffs, int abs_prec)
{
    std::vector<PadicScalar> c;
    c.reserve(coeffs.size());
    for (const auto& q : coeffs)
        c.push_back(PadicScalar::from_rational(p, q, abs_prec));
    return PadicPoly(p, std::move(c));
}

bool PadicPoly::is_monic() const
{
    if (c_.empty())
        return false;
    const auto& lead = c_.back();
    return !lead.is_zero_to_precision() && lead.valuation() == 0 && lead.unit() == 1;
}

int PadicPoly::min_precision() const
{
    int m = std::numeric_limits<int>::max();
    for (const auto& c : c_)
        m = std::min(m, c.precision());
    return m;
}

PadicScalar PadicPoly::evaluate(const PadicScalar& x) const
{
    if (c_.empty())
        return PadicScalar::zero(p_, x.precision());
    PadicScalar acc = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
        acc *= x;
        acc += c_[i];
    }
    return acc;
}

PadicPoly PadicPoly::derivative() const
{
    std::vector<PadicScalar> d;
    for (std::size_t i = 1; i < c_.size(); ++i)
        d.push_back(c_[i].scaled(static_cast<long>(i)));
    return PadicPoly(p_, std::move(d));
}

PadicPoly PadicPoly::taylor_shift(const PadicScalar& c, const PadicScalar& m) const
{
    if (c_.empty())
        return *this;
    // Horner in the polynomial ring: G <- G*(c + m s) + a_k.
    std::vector<PadicScalar> g{c_.back()};
    for (std::size_t k = c_.size() - 1; k-- > 0;) {
        std::vector<PadicScalar> next(g.size() + 1, PadicScalar::zero(p_, std::numeric_limits<int>::max() / 4));
        for (std::size_t i = 0; i < g.size(); ++i) {
            next[i] += g[i] * c;
            next[i + 1] += g[i] * m;
        }
        next[0] += c_[k];
        g = std::move(next);
    }
    return PadicPoly(p_, std::move(g));
}

PadicPoly PadicPoly::trimmed() const
{
    std::vector<PadicScalar> c = c_;
    while (c.size() > 1 && c.back().is_zero_to_precision())
        c.pop_back();
    return PadicPoly(p_, std::move(c));
}

PadicPoly operator+(const PadicPoly& a, const PadicPoly& b)
{
    const auto& longer = a.c_.size() >= b.c_.size() ? a : b;
    const auto& shorter = a.c_.size() >= b.c_.size() ? b : a;
    std::vector<PadicScalar> c = longer.c_;
    for (std::size_t i = 0; i < shorter.c_.size(); ++i)
        c[i] += shorter.c_[i];
    return PadicPoly(longer.p_ ? longer.p_ : shorter.p_, std::move(c));
}

PadicPoly operator-(const PadicPoly& a, const PadicPoly& b)
{
    std::vector<PadicScalar> neg;
    neg.reserve(b.c_.size());
    for (const auto& x : b.c_)
        neg.push_back(-x);
    return a + PadicPoly(b.p_, std::move(neg));
}

PadicPoly operator*(const PadicPoly& a, const PadicPoly& b)
{
    if (a.c_.empty() || b.c_.empty())
        return PadicPoly(a.p_ ? a.p_ : b.p_, {});
    std::vector<PadicScalar> c(a.c_.size() + b.c_.size() - 1);
    std::vector<bool> set(c.size(), false);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (!set[i + j]) {
                c[i + j] = a.c_[i] * b.c_[j];
                set[i + j] = true;
            } else {
                c[i + j] += a.c_[i] * b.c_[j];
            }
        }
    return PadicPoly(a.p_, std::move(c));
}

PadicPoly PadicPoly::scaled(const PadicScalar& s) const
{
    std::vector<PadicScalar> c;
    c.reserve(c_.size());
    for (const auto& x : c_)
        c.push_back(x * s);
    return PadicPoly(p_, std::move(c));
}

std::pair<PadicPoly, PadicPoly> divmod_monic(const PadicPoly& a, const PadicPoly& monic)
{
    const int d = monic.degree();
    if (d < 0 || !monic.is_monic())
        throw Error(ErrorKind::InvalidArgument, "divmod_monic needs a monic divisor");
    const unsigned p = a.prime() ? a.prime() : monic.prime();
    if (a.degree() < d)
        return {PadicPoly(p, {}), a};
    std::vector<PadicScalar> r = a.coeffs();
    std::vector<PadicScalar> q(static_cast<std::size_t>(a.degree() - d + 1));
    for (int k = a.degree(); k >= d; --k) {
        const PadicScalar lead = r[static_cast<std::size_t>(k)];
        q[static_cast<std::size_t>(k - d)] = lead;
        for (int m = 0; m < d; ++m)
            r[static_cast<std::size_t>(k - d + m)] -= lead * monic[static_cast<std::size_t>(m)];
    }
    r.resize(static_cast<std::size_t>(d));
    return {PadicPoly(p, std::move(q)), PadicPoly(p, std::move(r))};
}

// ------------------------------------------------------------ power series

PadicPowerSeries::PadicPowerSeries(unsigned p, std::vector<PadicScalar> coeffs) : p_(p), c_(std::move(coeffs)) {}

PadicPowerSeries PadicPowerSeries::zero(unsigned p, int order, int abs_prec)
{
    return PadicPowerSeries(p, std::vector<PadicScalar>(static_cast<std::size_t>(order + 1), PadicScalar::zero(p, abs_prec)));
}

PadicPowerSeries PadicPowerSeries::constant(const PadicScalar& c, int order)
{
    auto s = zero(c.prime(), order, c.precision());
    s.c_[0] = c;
    return s;
}

PadicPowerSeries PadicPowerSeries::truncated(int order) const
{
    std::vector<PadicScalar> c(c_.begin(), c_.begin() + std::min<std::ptrdiff_t>(order + 1, static_cast<std::ptrdiff_t>(c_.size())));
    return PadicPowerSeries(p_, std::move(c));
}

PadicPowerSeries PadicPowerSeries::derivative() const
{
    std::vector<PadicScalar> d;
    for (std::size_t i = 1; i < c_.size(); ++i)
        d.push_back(c_[i].scaled(static_cast<long>(i)));
    return PadicPowerSeries(p_, std::move(d));
}

PadicPowerSeries PadicPowerSeries::inverse() const
{
    if (c_.empty())
        throw Error(ErrorKind::InvalidArgument, "inverse of an empty series");
    const PadicScalar inv0 = c_[0].inverse();
    std::vector<PadicScalar> b(c_.size());
    b[0] = inv0;
    for (std::size_t n = 1; n < c_.size(); ++n) {
        PadicScalar acc = c_[1] * b[n - 1];
        for (std::size_t i = 2; i <= n; ++i)
            acc += c_[i] * b[n - i];
        b[n] = -(acc * inv0);
    }
    return PadicPowerSeries(p_, std::move(b));
}

PadicPowerSeries PadicPowerSeries::sqrt(const PadicScalar& root0) const
{
    std::vector<PadicScalar> b(c_.size());
    b[0] = root0;
    const PadicScalar inv2b0 = root0.scaled(2).inverse();
    for (std::size_t n = 1; n < c_.size(); ++n) {
        PadicScalar acc = c_[n];
        for (std::size_t i = 1; i < n; ++i)
            acc -= b[i] * b[n - i];
        b[n] = acc * inv2b0;
    }
    return PadicPowerSeries(p_, std::move(b));
}

PadicPowerSeries PadicPowerSeries::scaled(const PadicScalar& s) const
{
    std::vector<PadicScalar> c;
    c.reserve(c_.size());
    for (const auto& x : c_)
        c.push_back(x * s);
    return PadicPowerSeries(p_, std::move(c));
}

PadicPowerSeries PadicPowerSeries::rescaled(const PadicScalar& c) const
{
    std::vector<PadicScalar> out;
    out.reserve(c_.size());
    PadicScalar power = PadicScalar::exact_integer(p_, 1, std::max(c.relative_precision(), 1));
    for (std::size_t n = 0; n < c_.size(); ++n) {
        out.push_back(n == 0 ? c_[0] : c_[n] * power);
        power *= c;
    }
    return PadicPowerSeries(p_, std::move(out));
}

PadicScalar PadicPowerSeries::evaluate(const PadicScalar& t) const
{
    PadicScalar acc = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
        acc *= t;
        acc += c_[i];
    }
    return acc;
}

PadicPoly PadicPowerSeries::to_poly() const { return PadicPoly(p_, c_); }

PadicPowerSeries operator+(const PadicPowerSeries& a, const PadicPowerSeries& b)
{
    const std::size_t n = std::min(a.c_.size(), b.c_.size());
    std::vector<PadicScalar> c(a.c_.begin(), a.c_.begin() + static_cast<std::ptrdiff_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        c[i] += b.c_[i];
    return PadicPowerSeries(a.p_, std::move(c));
}

PadicPowerSeries operator-(const PadicPowerSeries& a, const PadicPowerSeries& b)
{
    const std::size_t n = std::min(a.c_.size(), b.c_.size());
    std::vector<PadicScalar> c(a.c_.begin(), a.c_.begin() + static_cast<std::ptrdiff_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        c[i] -= b.c_[i];
    return PadicPowerSeries(a.p_, std::move(c));
}

PadicPowerSeries operator*(const PadicPowerSeries& a, const PadicPowerSeries& b)
{
    const std::size_t n = std::min(a.c_.size(), b.c_.size());
    std::vector<PadicScalar> c(n);
    for (std::size_t k = 0; k < n; ++k) {
        PadicScalar acc = a.c_[0] * b.c_[k];
        for (std::size_t i = 1; i <= k; ++i)
            acc += a.c_[i] * b.c_[k - i];
        c[k] = std::move(acc);
    }
    return PadicPowerSeries(a.p_, std::move(c));
}

PadicPowerSeries formal_integrate(const PadicPowerSeries& s)
{
    const unsigned p = s.prime();
    std::vector<PadicScalar> c;
    c.reserve(s.coeffs().size() + 1);
    c.push_back(PadicScalar::zero(p, max_precision(s.coeffs())));
    for (std::size_t n = 0; n < s.coeffs().size(); ++n)
        c.push_back(s[n].divided(static_cast<long>(n + 1)));
    return PadicPowerSeries(p, std::move(c));
}

LaurentSeries LaurentSeries::integrate() const
{
    const unsigned p = body.prime();
    std::vector<PadicScalar> c;
    c.reserve(body.coeffs().size());
    for (std::size_t n = 0; n < body.coeffs().size(); ++n) {
        const long exponent = shift + static_cast<long>(n);
        if (exponent == -1) {
            if (!body[n].is_zero_to_precision())
                throw Error(ErrorKind::InvalidArgument, "residue term t^-1 has no Laurent antiderivative");
            c.push_back(PadicScalar::zero(p, body[n].precision()));
            continue;
        }
        c.push_back(body[n].divided(exponent + 1));
    }
    return LaurentSeries{shift + 1, PadicPowerSeries(p, std::move(c))};
}

PadicScalar LaurentSeries::evaluate(const PadicScalar& t) const
{
    PadicScalar value = body.evaluate(t);
    if (shift > 0)
        value *= t.pow(static_cast<unsigned long>(shift));
    else if (shift < 0)
        value /= t.pow(static_cast<unsigned long>(-shift));
    return value;
}

// ------------------------------------------------------------ root finding

PadicScalar hensel_sqrt(const PadicScalar& a, unsigned seed)
{
    const unsigned p = a.prime();
    if (p < 3 || p % 2 == 0)
        throw Error(ErrorKind::InvalidArgument, "hensel_sqrt needs an odd prime");
    if (seed % p == 0)
        throw Error(ErrorKind::ZeroSeed, "square-root seed is 0 mod p");
    if (a.is_zero_to_precision() || a.valuation() != 0)
        throw Error(ErrorKind::NotASquare, "hensel_sqrt needs a p-adic unit");
    const unsigned long s = seed % p;
    if ((s * s) % p != a.residue())
        throw Error(ErrorKind::NotASquare, "seed^2 differs from a mod p");
    const std::vector<mpz_class> f{-a.lift(), mpz_class(0), mpz_class(1)};
    return PadicScalar::from_integer(p, newton_lift(p, f, mpz_class(s), a.precision()), a.precision());
}

PadicScalar hensel_simple_root(const PadicPoly& f, unsigned seed)
{
    const unsigned p = f.prime();
    const int prec = f.min_precision();
    if (prec < 1)
        throw Error(ErrorKind::PrecisionExhausted, "polynomial known to no digits");
    std::vector<mpz_class> lifted;
    for (const auto& c : f.coeffs()) {
        if (!c.is_zero_to_precision() && c.valuation() < 0)
            throw Error(ErrorKind::InvalidArgument, "hensel_simple_root needs integral coefficients");
        lifted.push_back(c.lift());
    }
    const mpz_class x0 = seed % p;
    mpz_class fx = 0, dfx = 0;
    for (std::size_t i = lifted.size(); i-- > 0;) {
        dfx = dfx * x0 + fx;
        fx = fx * x0 + lifted[i];
    }
    if (mpz_fdiv_ui(dfx.get_mpz_t(), p) == 0)
        throw Error(ErrorKind::NotSimpleRoot, "F'(seed) = 0 mod p");
    if (mpz_fdiv_ui(fx.get_mpz_t(), p) != 0)
        throw Error(ErrorKind::NotSimpleRoot, "seed is not a root mod p");
    return PadicScalar::from_integer(p, newton_lift(p, lifted, x0, prec), prec);
}

std::vector<PadicScalar> padic_poly_roots(const PadicPoly& f)
{
    std::vector<PadicScalar> out;
    if (f.coeffs().empty())
        throw Error(ErrorKind::PrecisionExhausted, "zero polynomial has no isolated roots");
    roots_recursive(f, mpz_class(0), 0, out);
    std::sort(out.begin(), out.end(), [](const PadicScalar& a, const PadicScalar& b) { return a.lift() < b.lift(); });
    return out;
}

mpz_class integer_discriminant(std::span<const mpz_class> coeffs)
{
    std::size_t deg = coeffs.size();
    while (deg > 0 && coeffs[deg - 1] == 0)
        --deg;
    if (deg <= 2)
        return 1;
    const std::size_t n = deg - 1;
    if (n == 1)
        return 1;
    const std::vector<mpz_class> f(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(deg));
    mpz_class res = bareiss_determinant(sylvester_with_derivative(f));
    mpz_class disc;
    mpz_divexact(disc.get_mpz_t(), res.get_mpz_t(), f.back().get_mpz_t());
    if ((n * (n - 1) / 2) % 2 == 1)
        disc = -disc;
    return disc;
}

mpq_class rational_discriminant(std::span<const mpq_class> coeffs)
{
    mpz_class l = 1;
    for (const auto& c : coeffs)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> scaled;
    for (const auto& c : coeffs) {
        mpq_class s = c * l;
        scaled.push_back(s.get_num());
    }
    std::size_t deg = scaled.size();
    while (deg > 0 && scaled[deg - 1] == 0)
        --deg;
    if (deg <= 2)
        return 1;
    const unsigned long n = deg - 1;
    mpz_class lp;
    mpz_pow_ui(lp.get_mpz_t(), l.get_mpz_t(), 2 * n - 2);
    mpq_class d(integer_discriminant(scaled), lp);
    d.canonicalize();
    return d;
}

PadicScalar discriminant(const PadicPoly& poly)
{
    const PadicPoly f = poly.trimmed();
    const unsigned p = f.prime();
    const int d = f.degree();
    int min_val = std::numeric_limits<int>::max();
    for (const auto& c : f.coeffs())
        if (!c.is_zero_to_precision())
            min_val = std::min(min_val, c.valuation());
    if (d <= 1 || min_val == std::numeric_limits<int>::max())
        return PadicScalar::exact_integer(p, 1, std::max(f.min_precision(), 1));
    std::vector<mpz_class> lifted;
    int prec = std::numeric_limits<int>::max();
    for (const auto& c : f.coeffs()) {
        const PadicScalar s = c.shifted(-min_val);
        prec = std::min(prec, s.precision());
        lifted.push_back(s.precision() > 0 ? s.lift() : mpz_class(0));
    }
    if (prec <= 0)
        return PadicScalar::zero(p, min_val * (2 * d - 2));
    // Res(f, f') mod p^prec, then divide by the leading coefficient
    const PadicScalar res = PadicScalar::from_integer(p, modular_determinant(sylvester_with_derivative(lifted), p, prec), prec);
    PadicScalar disc = res / f.coeffs().back().shifted(-min_val);
    if ((d * (d - 1) / 2) % 2 == 1)
        disc = -disc;
    return disc.shifted(min_val * (2 * d - 2));
}

PadicScalar truncated_discriminant(const PadicPowerSeries& s, int max_degree)
{
    if (s.order() < max_degree)
        throw Error(ErrorKind::InvalidArgument, "series truncation order below requested degree");
    return discriminant(s.truncated(max_degree).to_poly());
}

PadicScalar teichmuller_lift(unsigned p, unsigned residue, int abs_prec)
{
    residue %= p;
    if (residue == 0)
        return PadicScalar::zero(p, abs_prec);
    // X^(p-1) - 1
    std::vector<mpz_class> f(p, mpz_class(0));
    f[0] = -1;
    f[p - 1] = 1;
    return PadicScalar::from_integer(p, newton_lift(p, f, mpz_class(residue), abs_prec), abs_prec);
}

} // namespace ck
