#include "ck/curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ck {

namespace {

bool p_integral(const mpq_class& q, unsigned p) { return !mpz_divisible_ui_p(q.get_den_mpz_t(), p); }

std::uint64_t reduce_rational(const mpq_class& q, unsigned p)
{
    mpz_class n = q.get_num() % p;
    if (n < 0)
        n += p;
    mpz_class d = q.get_den() % p;
    return n.get_ui() * mod_inverse(d.get_ui(), p) % p;
}

PadicPowerSeries poly_as_series(const PadicPoly& f, int order, int prec)
{
    const unsigned p = f.prime();
    std::vector<PadicScalar> c(static_cast<std::size_t>(order + 1), PadicScalar::zero(p, prec));
    for (int i = 0; i <= std::min(order, f.degree()); ++i)
        c[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i)];
    return PadicPowerSeries(p, std::move(c));
}

// Odd-indexed zeros: s(t^2) truncated at t^order.
PadicPowerSeries substitute_square(const PadicPowerSeries& s, int order, int prec)
{
    const unsigned p = s.prime();
    std::vector<PadicScalar> c(static_cast<std::size_t>(order + 1), PadicScalar::zero(p, prec));
    for (int j = 0; 2 * j <= order && j <= s.order(); ++j)
        c[static_cast<std::size_t>(2 * j)] = s[static_cast<std::size_t>(j)];
    return PadicPowerSeries(p, std::move(c));
}

PadicPowerSeries series_power(const PadicPowerSeries& s, int e)
{
    auto one = PadicPowerSeries::constant(PadicScalar::exact_integer(s.prime(), 1, s[0].precision() + 1), s.order());
    PadicPowerSeries acc = one;
    for (int k = 0; k < e; ++k)
        acc = acc * s;
    return acc;
}

// The residue-1 square root of a unit.
PadicScalar unit_sqrt(const PadicScalar& a)
{
    const unsigned r = a.residue();
    return hensel_sqrt(a, static_cast<unsigned>(sqrt_mod(r, a.prime())));
}

} // namespace

bool operator==(const RationalPoint& a, const RationalPoint& b)
{
    if (a.infinity || b.infinity)
        return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
}

bool operator<(const RationalPoint& a, const RationalPoint& b)
{
    if (a.infinity != b.infinity)
        return a.infinity;
    if (a.infinity)
        return false;
    if (a.x != b.x)
        return a.x < b.x;
    return a.y < b.y;
}

bool operator==(const FpPoint& a, const FpPoint& b)
{
    if (a.infinity || b.infinity)
        return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
}

bool operator<(const FpPoint& a, const FpPoint& b)
{
    if (a.infinity != b.infinity)
        return a.infinity;
    if (a.infinity)
        return false;
    return std::pair(a.x, a.y) < std::pair(b.x, b.y);
}

std::string to_string(const RationalPoint& P)
{
    if (P.infinity)
        return "inf";
    return "(" + P.x.get_str() + "," + P.y.get_str() + ")";
}

std::string to_string(const FpPoint& P)
{
    if (P.infinity)
        return "inf";
    return "(" + std::to_string(P.x) + "," + std::to_string(P.y) + ")";
}

std::string to_string(const PadicPoint& P)
{
    if (P.infinity)
        return "inf";
    return "(" + P.x.to_string() + ", " + P.y.to_string() + ")";
}

void validate(const std::vector<mpq_class>& coeffs)
{
    std::vector<mpq_class> c = coeffs;
    while (!c.empty() && c.back() == 0)
        c.pop_back();
    if (c.size() < 2)
        throw Error(ErrorKind::EvenDegree, "constant polynomial");
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg % 2 == 0)
        throw Error(ErrorKind::EvenDegree, "degree " + std::to_string(deg) + " is even");
    if (deg < 5)
        throw Error(ErrorKind::InvalidArgument, "degree " + std::to_string(deg) + " gives genus below 2");
    if (c.back() != 1)
        throw Error(ErrorKind::NotMonic, "leading coefficient " + c.back().get_str());
    if (rational_discriminant(c) == 0)
        throw Error(ErrorKind::SingularModel, "F is not squarefree");
}

HyperellipticCurve::HyperellipticCurve(std::vector<mpq_class> coeffs)
{
    while (!coeffs.empty() && coeffs.back() == 0)
        coeffs.pop_back();
    validate(coeffs);
    f_ = std::move(coeffs);
    genus_ = (static_cast<int>(f_.size()) - 2) / 2;
    disc_ = rational_discriminant(f_);
}

mpq_class HyperellipticCurve::evaluate(const mpq_class& x) const
{
    mpq_class acc = 0;
    for (auto it = f_.rbegin(); it != f_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

bool HyperellipticCurve::contains(const RationalPoint& P) const
{
    return P.infinity || P.y * P.y == evaluate(P.x);
}

bool HyperellipticCurve::is_p_integral(unsigned p) const
{
    return std::all_of(f_.begin(), f_.end(), [p](const mpq_class& q) { return p_integral(q, p); });
}

bool HyperellipticCurve::has_good_reduction(unsigned p) const
{
    if (p < 3 || !is_prime(p) || !is_p_integral(p))
        return false;
    return !mpz_divisible_ui_p(disc_.get_num_mpz_t(), p);
}

FpPoly HyperellipticCurve::reduce(unsigned p) const
{
    if (!is_p_integral(p))
        throw Error(ErrorKind::BadReduction, "coefficient denominator divisible by " + std::to_string(p));
    std::vector<std::uint64_t> c;
    for (const auto& q : f_)
        c.push_back(reduce_rational(q, p));
    return FpPoly(p, std::move(c));
}

PadicPoly HyperellipticCurve::padic(unsigned p, int abs_prec) const
{
    if (!is_p_integral(p))
        throw Error(ErrorKind::BadReduction, "coefficient denominator divisible by " + std::to_string(p));
    auto F = PadicPoly::from_rationals(p, f_, abs_prec);
    // the leading 1 is exact
    F[F.coeffs().size() - 1] = PadicScalar::exact_integer(p, 1, abs_prec);
    return F;
}

PadicScalar HyperellipticCurve::residual(const PadicPoint& P) const
{
    if (P.infinity)
        return PadicScalar::zero(P.x.valid() ? P.x.prime() : 3, 1);
    const unsigned p = P.x.prime();
    const int prec = std::max(P.x.precision(), P.y.precision()) + 8 * std::max(0, -P.x.valuation());
    return P.y * P.y - padic(p, prec).evaluate(P.x);
}

std::string HyperellipticCurve::to_string() const
{
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < f_.size(); ++i)
        out << (i ? "," : "") << f_[i].get_str();
    out << "]";
    return out.str();
}

RationalPoint MonicModel::to_monic(const RationalPoint& P) const
{
    if (P.infinity)
        return P;
    mpq_class ag = 1;
    for (int i = 0; i < curve.genus(); ++i)
        ag *= scale;
    return RationalPoint::affine(P.x * scale, P.y * ag);
}

RationalPoint MonicModel::from_monic(const RationalPoint& P) const
{
    if (P.infinity)
        return P;
    mpq_class ag = 1;
    for (int i = 0; i < curve.genus(); ++i)
        ag *= scale;
    return RationalPoint::affine(P.x / scale, P.y / ag);
}

MonicModel scale_to_monic(const std::vector<mpq_class>& coeffs)
{
    std::vector<mpq_class> c = coeffs;
    while (!c.empty() && c.back() == 0)
        c.pop_back();
    if (c.size() < 2)
        throw Error(ErrorKind::EvenDegree, "constant polynomial");
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg % 2 == 0)
        throw Error(ErrorKind::EvenDegree, "degree " + std::to_string(deg) + " is even");
    const mpq_class a = c.back();
    const int g = (deg - 1) / 2;
    // y^2 = sum c_k x^k times a^(2g) gives v^2 = sum c_k a^(2g-k) u^k
    std::vector<mpq_class> m(c.size());
    for (int k = 0; k <= deg; ++k) {
        mpq_class f = c[static_cast<std::size_t>(k)];
        const int e = 2 * g - k;
        for (int i = 0; i < std::abs(e); ++i)
            f = e > 0 ? mpq_class(f * a) : mpq_class(f / a);
        m[static_cast<std::size_t>(k)] = f;
    }
    return MonicModel{coeffs, HyperellipticCurve(std::move(m)), a};
}

bool is_prime(unsigned n)
{
    if (n < 2)
        return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

unsigned next_prime(unsigned n)
{
    unsigned q = n + 1;
    while (!is_prime(q))
        ++q;
    return q;
}

unsigned good_reduction_prime(const HyperellipticCurve& C, unsigned p_min)
{
    unsigned p = std::max(p_min, 3U);
    while (!C.has_good_reduction(p))
        p = next_prime(p);
    return p;
}

std::vector<FpPoint> enumerate_fp_points(const HyperellipticCurve& C, unsigned p)
{
    if (!C.has_good_reduction(p))
        throw Error(ErrorKind::BadReduction, "bad reduction at " + std::to_string(p));
    const FpPoly F = C.reduce(p);
    std::vector<FpPoint> out{FpPoint::at_infinity()};
    for (std::uint64_t x = 0; x < p; ++x) {
        const std::uint64_t v = F.evaluate(x);
        if (v == 0) {
            out.push_back(FpPoint::affine(x, 0));
        } else if (euler_criterion(v, p) == 1) {
            const std::uint64_t y = sqrt_mod(v, p);
            out.push_back(FpPoint::affine(x, std::min(y, p - y)));
            out.push_back(FpPoint::affine(x, std::max(y, p - y)));
        }
    }
    return out;
}

std::vector<FpPoint> fp_points_up_to_involution(const HyperellipticCurve& C, unsigned p)
{
    std::vector<FpPoint> out;
    for (const auto& P : enumerate_fp_points(C, p))
        if (P.infinity || P.y <= p - P.y || P.y == 0)
            out.push_back(P);
    return out;
}

FpPoint reduce_point(const PadicPoint& P)
{
    if (P.infinity || P.x.valuation() < 0)
        return FpPoint::at_infinity();
    return FpPoint::affine(P.x.residue(), P.y.residue());
}

PadicPoint lift_point(const FpPoint& P, const HyperellipticCurve& C, unsigned p, int abs_prec)
{
    if (P.infinity)
        return PadicPoint::at_infinity();
    const PadicPoly F = C.padic(p, abs_prec);
    if (P.y % p == 0) {
        PadicScalar x = hensel_simple_root(F, static_cast<unsigned>(P.x % p));
        return PadicPoint::affine(std::move(x), PadicScalar::zero(p, abs_prec));
    }
    PadicScalar x = PadicScalar::from_integer(p, static_cast<long>(P.x % p), abs_prec);
    PadicScalar y = hensel_sqrt(F.evaluate(x), static_cast<unsigned>(P.y % p));
    return PadicPoint::affine(std::move(x), std::move(y));
}

RationalPoint involution(const RationalPoint& P)
{
    if (P.infinity)
        return P;
    return RationalPoint::affine(P.x, -P.y);
}

FpPoint involution(const FpPoint& P, unsigned p)
{
    if (P.infinity)
        return P;
    return FpPoint::affine(P.x, (p - P.y) % p);
}

PadicPoint involution(const PadicPoint& P)
{
    if (P.infinity)
        return P;
    return PadicPoint::affine(P.x, -P.y);
}

std::vector<RationalPoint> search_rational_points(const HyperellipticCurve& C, long height_bound)
{
    std::vector<RationalPoint> out{RationalPoint::at_infinity()};
    if (height_bound <= 0)
        return out;
    const int deg = C.degree();
    // L * d^(deg+1) * F(n/d) = d * sum C_k n^k d^(deg-k) with C_k = L c_k integral
    mpz_class L = 1;
    for (const auto& q : C.coeffs())
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> Ck;
    for (const auto& q : C.coeffs())
        Ck.push_back(mpz_class(q * L));

    // quadratic-residue filters
    constexpr std::array<unsigned, 6> mods = {64, 63, 65, 11, 17, 19};
    std::vector<std::vector<bool>> is_sq;
    std::vector<std::vector<long>> cmod;
    std::vector<long> lmod;
    for (unsigned m : mods) {
        std::vector<bool> sq(m, false);
        for (unsigned r = 0; r < m; ++r)
            sq[r * r % m] = true;
        is_sq.push_back(std::move(sq));
        std::vector<long> cm;
        for (const auto& c : Ck) {
            mpz_class r = c % m;
            if (r < 0)
                r += m;
            cm.push_back(r.get_si());
        }
        cmod.push_back(std::move(cm));
        mpz_class lr = L % m;
        lmod.push_back(lr.get_si());
    }

    std::vector<mpz_class> dpow(static_cast<std::size_t>(deg + 1));
    std::vector<std::vector<long>> dmod(mods.size(), std::vector<long>(static_cast<std::size_t>(deg + 1)));
    mpz_class T, term, npow;
    for (long d = 1; d <= height_bound; ++d) {
        dpow[0] = 1;
        for (int k = 1; k <= deg; ++k)
            dpow[static_cast<std::size_t>(k)] = dpow[static_cast<std::size_t>(k - 1)] * d;
        for (std::size_t j = 0; j < mods.size(); ++j) {
            dmod[j][0] = 1;
            for (int k = 1; k <= deg; ++k)
                dmod[j][static_cast<std::size_t>(k)] = dmod[j][static_cast<std::size_t>(k - 1)] * (d % mods[j]) % mods[j];
        }
        for (long n = -height_bound; n <= height_bound; ++n) {
            if (std::gcd(n, d) != 1)
                continue;
            bool maybe = true;
            for (std::size_t j = 0; j < mods.size() && maybe; ++j) {
                const long m = mods[j];
                const long nm = ((n % m) + m) % m;
                long acc = 0;
                long np = 1;
                for (int k = 0; k <= deg; ++k) {
                    acc = (acc + cmod[j][static_cast<std::size_t>(k)] * np % m * dmod[j][static_cast<std::size_t>(deg - k)]) % m;
                    np = np * nm % m;
                }
                const long val = acc * (d % m) % m * lmod[j] % m;
                maybe = is_sq[j][static_cast<std::size_t>(val)];
            }
            if (!maybe)
                continue;
            T = 0;
            npow = 1;
            for (int k = 0; k <= deg; ++k) {
                term = Ck[static_cast<std::size_t>(k)] * npow * dpow[static_cast<std::size_t>(deg - k)];
                T += term;
                npow *= n;
            }
            T *= d;
            T *= L;
            if (T < 0 || mpz_perfect_square_p(T.get_mpz_t()) == 0)
                continue;
            const mpq_class x(n, d);
            const mpq_class fx = C.evaluate(x);
            mpz_class num = fx.get_num(), den = fx.get_den();
            mpz_class rn, rd;
            mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
            mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
            const mpq_class y(rn, rd);
            if (y == 0) {
                out.push_back(RationalPoint::affine(x, 0));
            } else {
                out.push_back(RationalPoint::affine(x, -y));
                out.push_back(RationalPoint::affine(x, y));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double global_height(const RationalPoint& P)
{
    if (P.infinity)
        return 0.0;
    const mpz_class n = abs(P.x.get_num());
    const mpz_class& d = P.x.get_den();
    const mpz_class& m = n > d ? n : d;
    if (m == 0)
        return 0.0;
    long e = 0;
    const double mant = mpz_get_d_2exp(&e, m.get_mpz_t());
    return std::log(mant) + static_cast<double>(e) * std::log(2.0);
}

PadicPoint to_padic(const RationalPoint& P, unsigned p, int abs_prec)
{
    if (P.infinity)
        return PadicPoint::at_infinity();
    return PadicPoint::affine(PadicScalar::from_rational(p, P.x, abs_prec), PadicScalar::from_rational(p, P.y, abs_prec));
}

bool in_weierstrass_disc(const PadicPoint& P)
{
    return P.infinity || P.x.valuation() < 0 || P.y.valuation_at_least(1) == Tri::True;
}

bool same_disc(const PadicPoint& a, const PadicPoint& b) { return reduce_point(a) == reduce_point(b); }

LocalChart::LocalChart(const HyperellipticCurve& C, unsigned p, int prec, const PadicPoint& P, int order)
    : curve_(C), p_(p), prec_(prec), order_(order)
{
    if (order < 1)
        throw Error(ErrorKind::InvalidArgument, "chart order must be positive");
    const int g = C.genus();
    const PadicPoly F = C.padic(p, prec);
    const auto one = PadicScalar::exact_integer(p, 1, prec);
    if (P.infinity || P.x.valuation() < 0) {
        kind_ = ChartKind::Infinity;
        center_ = PadicPoint::at_infinity();
        // w^2 = sum_j c_(2g+1-j) t^(2j)
        std::vector<PadicScalar> w2(static_cast<std::size_t>(order + 1), PadicScalar::zero(p, prec));
        for (int j = 0; j <= 2 * g + 1 && 2 * j <= order; ++j)
            w2[static_cast<std::size_t>(2 * j)] = F[static_cast<std::size_t>(2 * g + 1 - j)];
        const PadicPowerSeries w = PadicPowerSeries(p, std::move(w2)).sqrt(one);
        base_ = PadicPowerSeries::constant(PadicScalar::zero(p, prec), order) - w.inverse();
        auto xs = PadicPowerSeries::zero(p, order, prec);
        xs[0] = one;
        x_ = LaurentSeries{-2, xs};
        y_ = LaurentSeries{-(2 * g + 1), w};
        return;
    }
    if (P.y.valuation_at_least(1) != Tri::True) {
        kind_ = ChartKind::NonWeierstrass;
        center_ = P;
        const PadicScalar& x0 = P.x;
        const PadicPowerSeries Fs = poly_as_series(F.taylor_shift(x0, one), order, prec);
        const PadicPowerSeries y = Fs.sqrt(P.y.with_precision(std::min(P.y.precision(), prec)));
        base_ = y.scaled(PadicScalar::exact_integer(p, 2, prec)).inverse();
        auto xs = PadicPowerSeries::zero(p, order, prec);
        xs[0] = x0;
        xs[1] = one;
        x_ = LaurentSeries{0, xs};
        y_ = LaurentSeries{0, y};
        return;
    }
    kind_ = ChartKind::FiniteWeierstrass;
    const PadicScalar x0 = hensel_simple_root(F, P.x.residue());
    center_ = PadicPoint::affine(x0, PadicScalar::zero(p, prec));
    // G(u) = F(x0 + u) = w, solved for u as a series in w
    const PadicPoly G = F.taylor_shift(x0, one);
    const int K = order / 2 + 1;
    const PadicScalar g1inv = G[1].inverse();
    auto wser = PadicPowerSeries::zero(p, K, prec);
    wser[1] = one;
    auto u = PadicPowerSeries::zero(p, K, prec);
    for (int it = 0; it <= K + 1; ++it) {
        PadicPowerSeries rhs = wser - PadicPowerSeries::constant(G[0], K);
        PadicPowerSeries upow = u * u;
        for (int k = 2; k <= G.degree(); ++k) {
            rhs = rhs - upow.scaled(G[static_cast<std::size_t>(k)]);
            upow = upow * u;
        }
        u = rhs.scaled(g1inv);
    }
    PadicPowerSeries xs = substitute_square(u, order, prec);
    xs[0] = xs[0] + x0;
    base_ = substitute_square(u.derivative(), order, prec);
    auto ys = PadicPowerSeries::zero(p, order, prec);
    ys[1] = one;
    x_ = LaurentSeries{0, xs};
    y_ = LaurentSeries{0, ys};
}

LocalChart LocalChart::for_disc(const HyperellipticCurve& C, unsigned p, int prec, const FpPoint& P, int order)
{
    return LocalChart(C, p, prec, lift_point(P, C, p, prec), order);
}

LaurentSeries LocalChart::differential(int i) const
{
    if (kind_ == ChartKind::Infinity)
        return LaurentSeries{2 * curve_.genus() - 2 - 2 * i, base_};
    return LaurentSeries{0, series_power(x_.body, i) * base_};
}

PadicScalar LocalChart::parameter(const PadicPoint& Q) const
{
    const int g = curve_.genus();
    switch (kind_) {
    case ChartKind::Infinity: {
        if (Q.infinity)
            return PadicScalar::zero(p_, prec_);
        if (Q.x.valuation() >= 0)
            throw Error(ErrorKind::DifferentDiscs, "point is not in the disc at infinity");
        const PadicScalar s = Q.x.inverse();
        const int k = s.valuation() / 2;
        PadicScalar t = unit_sqrt(s.shifted(-2 * k)).shifted(k);
        // branch with y t^(2g+1) = w(t) = 1 mod p
        if ((Q.y * t.pow(static_cast<unsigned long>(2 * g + 1))).residue() != 1)
            t = -t;
        return t;
    }
    case ChartKind::FiniteWeierstrass:
        if (Q.infinity || Q.x.valuation() < 0 || Q.x.residue() != center_.x.residue() || Q.y.valuation_at_least(1) != Tri::True)
            throw Error(ErrorKind::DifferentDiscs, "point is not in this Weierstrass disc");
        return Q.y;
    case ChartKind::NonWeierstrass:
        if (!same_disc(Q, center_))
            throw Error(ErrorKind::DifferentDiscs, "points lie in different residue discs");
        return Q.x - center_.x;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown chart kind");
}

PadicPoint LocalChart::point_at(const PadicScalar& t) const
{
    const int g = curve_.genus();
    if (t.valuation() < 1)
        throw Error(ErrorKind::DifferentDiscs, "parameter outside the residue disc");
    switch (kind_) {
    case ChartKind::Infinity: {
        if (t.is_zero_to_precision())
            return PadicPoint::at_infinity();
        const PadicPoly F = curve_.padic(p_, prec_ + 4 * (2 * g + 1) * t.valuation());
        PadicScalar acc = PadicScalar::zero(p_, 4 * prec_);
        const PadicScalar t2 = t * t;
        PadicScalar tp = PadicScalar::exact_integer(p_, 1, t.relative_precision() + 2);
        for (int j = 0; j <= 2 * g + 1; ++j) {
            acc += F[static_cast<std::size_t>(2 * g + 1 - j)] * tp;
            tp *= t2;
        }
        const PadicScalar w = hensel_sqrt(acc, 1);
        const PadicScalar x = t2.inverse();
        const PadicScalar y = w / t.pow(static_cast<unsigned long>(2 * g + 1));
        return PadicPoint::affine(x, y);
    }
    case ChartKind::FiniteWeierstrass: {
        if (t.is_zero_to_precision())
            return PadicPoint::affine(center_.x, t);
        PadicPoly F = curve_.padic(p_, prec_);
        F[0] = F[0] - t * t;
        return PadicPoint::affine(hensel_simple_root(F, center_.x.residue()), t);
    }
    case ChartKind::NonWeierstrass: {
        const PadicScalar x = center_.x + t;
        const PadicPoly F = curve_.padic(p_, prec_);
        return PadicPoint::affine(x, hensel_sqrt(F.evaluate(x), center_.y.residue()));
    }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown chart kind");
}

} // namespace ck
