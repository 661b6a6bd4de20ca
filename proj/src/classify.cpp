#include "ck/classify.hpp"

#include <algorithm>
#include <sstream>

#include "ck/coleman.hpp"

namespace ck {

namespace {

std::optional<mpq_class> reconstruct_integral(const mpz_class& a, const mpz_class& m)
{
    // extended Euclid on (m, a), stopped once the remainder drops below the bound
    mpz_class bound;
    mpz_class half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    mpz_class r0 = m, r1 = a % m, t0 = 0, t1 = 1;
    if (r1 < 0)
        r1 += m;
    while (r1 > bound) {
        const mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (t1 == 0 || abs(t1) > bound)
        return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1)
        return std::nullopt;
    mpq_class out(r1, t1);
    out.canonicalize();
    return out;
}

std::vector<mpz_class> primitive(std::vector<mpz_class> g)
{
    mpz_class c = 0;
    for (const auto& x : g)
        mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
    if (c != 0)
        for (auto& x : g)
            x /= c;
    while (!g.empty() && g.back() == 0)
        g.pop_back();
    if (!g.empty() && g.back() < 0)
        for (auto& x : g)
            x = -x;
    return g;
}

bool rational_square(const mpq_class& q, mpq_class& root)
{
    if (q < 0)
        return false;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
        return false;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    root = mpq_class(n, d);
    return true;
}

bool relation_holds(const std::vector<mpz_class>& g, const mpz_class& a, const mpz_class& m)
{
    mpz_class acc = 0;
    for (auto it = g.rbegin(); it != g.rend(); ++it)
        acc = (acc * a + *it) % m;
    return acc == 0;
}

FpPoly fp_poly_from(const HyperellipticCurve& C, unsigned p) { return C.reduce(p); }

} // namespace

std::optional<mpq_class> rational_reconstruct(const PadicScalar& a)
{
    if (a.is_zero_to_precision())
        return mpq_class(0);
    const unsigned p = a.prime();
    if (a.valuation() >= 0) {
        auto r = reconstruct_integral(a.lift(), prime_power(p, a.precision()));
        if (r && mpz_divisible_ui_p(r->get_den_mpz_t(), p))
            return std::nullopt;
        return r;
    }
    const int k = -a.valuation();
    auto r = reconstruct_integral(a.shifted(k).lift(), prime_power(p, a.precision() + k));
    if (!r)
        return std::nullopt;
    return *r / mpq_class(prime_power(p, k));
}

std::optional<RationalPoint> reconstruct_point(const HyperellipticCurve& C, const PadicPoint& Q)
{
    if (Q.infinity)
        return RationalPoint::at_infinity();
    const auto x = rational_reconstruct(Q.x);
    if (!x)
        return std::nullopt;
    // the reconstruction must agree with Q to its precision
    const unsigned p = Q.x.prime();
    const auto xp = PadicScalar::from_rational(p, *x, Q.x.precision());
    if ((xp - Q.x).is_zero() == Tri::False)
        return std::nullopt;
    mpq_class y;
    if (!rational_square(C.evaluate(*x), y))
        return std::nullopt;
    if (y != 0) {
        const auto yp = PadicScalar::from_rational(p, y, Q.y.precision());
        if ((yp - Q.y).is_zero() == Tri::False)
            y = -y;
        const auto yq = PadicScalar::from_rational(p, y, Q.y.precision());
        if ((yq - Q.y).is_zero() == Tri::False)
            return std::nullopt;
    } else if (Q.y.is_zero() == Tri::False) {
        return std::nullopt;
    }
    RationalPoint R = RationalPoint::affine(*x, y);
    if (!C.contains(R))
        return std::nullopt;
    return R;
}

bool is_two_torsion_extra(const PadicPoint& Q) { return !Q.infinity && Q.y.is_zero_to_precision(); }

std::vector<std::vector<mpz_class>> lll_reduce(std::vector<std::vector<mpz_class>> b)
{
    const std::size_t n = b.size();
    if (n == 0)
        return b;
    const std::size_t dim = b[0].size();
    auto dot = [&](const std::vector<mpz_class>& x, const std::vector<mpq_class>& y) {
        mpq_class s = 0;
        for (std::size_t i = 0; i < dim; ++i)
            s += mpq_class(x[i]) * y[i];
        return s;
    };
    std::vector<std::vector<mpq_class>> bs(n, std::vector<mpq_class>(dim));
    std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
    std::vector<mpq_class> B(n);
    auto gram_schmidt = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < dim; ++k)
                bs[i][k] = b[i][k];
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = dot(b[i], bs[j]) / B[j];
                for (std::size_t k = 0; k < dim; ++k)
                    bs[i][k] -= mu[i][j] * bs[j][k];
            }
            B[i] = 0;
            for (std::size_t k = 0; k < dim; ++k)
                B[i] += bs[i][k] * bs[i][k];
        }
    };
    gram_schmidt();
    const mpq_class delta(3, 4);
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            const mpq_class& m = mu[k][j];
            if (abs(m) > mpq_class(1, 2)) {
                mpz_class q;
                mpq_class shifted = m + mpq_class(1, 2);
                mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
                for (std::size_t t = 0; t < dim; ++t)
                    b[k][t] -= q * b[j][t];
                gram_schmidt();
            }
        }
        if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gram_schmidt();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return b;
}

std::optional<std::vector<mpz_class>> algebraic_dependency(const PadicScalar& a, int max_degree, int slack)
{
    const unsigned p = a.prime();
    if (a.is_zero_to_precision())
        return std::vector<mpz_class>{0, 1};
    if (a.valuation() < 0) {
        // relation for 1/a, reversed
        auto g = algebraic_dependency(a.inverse(), max_degree, slack);
        if (!g)
            return std::nullopt;
        std::reverse(g->begin(), g->end());
        return primitive(*g);
    }
    const int K = a.precision() - slack;
    if (K < 2)
        return std::nullopt;
    const mpz_class& m = prime_power(p, K);
    const mpz_class av = a.lift() % m;
    for (int d = 1; d <= max_degree; ++d) {
        std::vector<std::vector<mpz_class>> basis;
        std::vector<mpz_class> row(static_cast<std::size_t>(d + 1), 0);
        row[0] = m;
        basis.push_back(row);
        mpz_class power = 1;
        for (int i = 1; i <= d; ++i) {
            power = power * av % m;
            std::fill(row.begin(), row.end(), 0);
            row[0] = (m - power) % m;
            row[static_cast<std::size_t>(i)] = 1;
            basis.push_back(row);
        }
        const auto red = lll_reduce(std::move(basis));
        std::vector<mpz_class> g = primitive(red[0]);
        if (static_cast<int>(g.size()) != d + 1)
            continue;
        // every a has relations of height about p^(K/(d+1)); a genuine one sits well below
        mpz_class h = 0;
        for (const auto& c : g)
            h = std::max(h, mpz_class(abs(c)));
        mpz_class hp;
        mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(d + 1));
        if (hp * prime_power(p, 4) > m)
            continue;
        if (!relation_holds(g, av, m))
            continue;
        if (d == 2) {
            const mpz_class disc = g[1] * g[1] - 4 * g[0] * g[2];
            if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t()))
                continue;
        }
        return g;
    }
    return std::nullopt;
}

MumfordDivisor MumfordDivisor::identity(unsigned p) { return {FpPoly::constant(p, 1), FpPoly(p, {})}; }

MumfordDivisor MumfordDivisor::from_point(const FpPoint& P, unsigned p)
{
    if (P.infinity)
        return identity(p);
    return {FpPoly(p, {(p - P.x % p) % p, 1}), FpPoly::constant(p, P.y % p)};
}

bool is_valid_divisor(const MumfordDivisor& D, const FpPoly& F, int genus)
{
    if (D.u.is_zero() || D.u.leading() != 1 || D.u.degree() > genus || D.v.degree() >= D.u.degree())
        return false;
    return ((D.v * D.v - F) % D.u).is_zero();
}

MumfordDivisor cantor_negate(const MumfordDivisor& D) { return {D.u, -D.v}; }

MumfordDivisor cantor_compose_reduce(const MumfordDivisor& a, const MumfordDivisor& b, const FpPoly& F, int genus)
{
    // composition
    auto [d0, e1, e2] = extended_gcd(a.u, b.u);
    auto [d, c1, c2] = extended_gcd(d0, a.v + b.v);
    const FpPoly s1 = c1 * e1;
    const FpPoly s2 = c1 * e2;
    const FpPoly& s3 = c2;
    FpPoly u = (a.u * b.u) / (d * d);
    FpPoly v = ((s1 * a.u * b.v + s2 * b.u * a.v + s3 * (a.v * b.v + F)) / d) % u;
    // reduction
    while (u.degree() > genus) {
        FpPoly u2 = (F - v * v) / u;
        v = (-v) % u2;
        u = u2.monic();
    }
    return {u.monic(), v % u.monic()};
}

MumfordDivisor cantor_multiply(const MumfordDivisor& D, mpz_class n, const FpPoly& F, int genus)
{
    const unsigned p = static_cast<unsigned>(F.prime());
    MumfordDivisor base = n < 0 ? cantor_negate(D) : D;
    n = abs(n);
    MumfordDivisor acc = MumfordDivisor::identity(p);
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t()))
            acc = cantor_compose_reduce(acc, base, F, genus);
        base = cantor_compose_reduce(base, base, F, genus);
        n >>= 1;
    }
    return acc;
}

std::vector<std::pair<mpz_class, int>> factor(mpz_class n)
{
    std::vector<std::pair<mpz_class, int>> out;
    n = abs(n);
    for (mpz_class q = 2; q * q <= n; ++q) {
        int e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        if (e > 0)
            out.emplace_back(q, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

mpz_class divisor_order(const MumfordDivisor& D, const mpz_class& multiple, const FpPoly& F, int genus)
{
    mpz_class n = multiple;
    for (const auto& [q, e] : factor(multiple))
        for (int i = 0; i < e && n % q == 0; ++i) {
            if (!cantor_multiply(D, n / q, F, genus).is_identity())
                break;
            n /= q;
        }
    return n;
}

TorsionOrder torsion_order(const PadicPoint& Q, const HyperellipticCurve& C, const FrobeniusAction& fa)
{
    const unsigned p = fa.p;
    if (Q.infinity)
        return {1, false};
    if (!Q.y.is_zero_to_precision() && Q.y.valuation() < 0)
        throw Error(ErrorKind::NotTorsionConsistent, "point reduces to infinity but is not infinity");
    const FpPoly F = fp_poly_from(C, p);
    const MumfordDivisor D = MumfordDivisor::from_point(reduce_point(Q), p);
    const mpz_class J = jacobian_order_fp(fa);
    if (!cantor_multiply(D, J, F, C.genus()).is_identity())
        throw Error(ErrorKind::NotTorsionConsistent, "#J(F_p) does not kill the reduced class");
    TorsionOrder t;
    t.order = divisor_order(D, J, F, C.genus());
    t.p_divides_order = mpz_divisible_ui_p(t.order.get_mpz_t(), p) != 0;
    return t;
}

ClassifiedPoint classify_point(const HyperellipticCurve& C, const FrobeniusAction& fa, const PadicPoint& Q, int floor)
{
    ClassifiedPoint out;
    out.point = Q;
    if (auto R = reconstruct_point(C, Q)) {
        out.verdict = Verdict::Rational;
        out.rational = R;
        if (R->infinity) {
            out.order = 1;
        } else {
            const auto t = torsion_order(Q, C, fa);
            out.order = t.order;
            out.p_divides_order = t.p_divides_order;
        }
        return out;
    }
    // a genuine extra annihilates every holomorphic integral
    for (const auto& v : integral_functional(C, fa, Q))
        if (v.valuation() < floor && !v.is_zero_to_precision())
            throw Error(ErrorKind::NonTorsionExtra, "integrals do not vanish at " + to_string(Q));
    if (Q.x.valuation() < 0)
        throw Error(ErrorKind::NonTorsionExtra, "extra point in the disc at infinity");
    out.x_minpoly = algebraic_dependency(Q.x);
    if (out.x_minpoly && out.x_minpoly->size() == 2) {
        // x rational: y^2 = F(x) exactly
        const mpq_class xr(-(*out.x_minpoly)[0], (*out.x_minpoly)[1]);
        mpq_class y2 = C.evaluate(xr);
        y2.canonicalize();
        out.y_minpoly = std::vector<mpz_class>{-y2.get_num(), 0, y2.get_den()};
    } else if (!is_two_torsion_extra(Q)) {
        out.y_minpoly = algebraic_dependency(Q.y);
    }
    if (is_two_torsion_extra(Q)) {
        out.verdict = Verdict::TwoTorsion;
        out.order = 2;
        out.y_minpoly = std::vector<mpz_class>{0, 1};
        return out;
    }
    out.verdict = Verdict::HigherTorsion;
    const auto t = torsion_order(Q, C, fa);
    out.order = t.order;
    out.p_divides_order = t.p_divides_order;
    return out;
}

std::string polynomial_to_string(const std::vector<mpz_class>& g, const char* var)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = g.size(); i-- > 0;) {
        if (g[i] == 0)
            continue;
        mpz_class c = g[i];
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        c = abs(c);
        if (c != 1 || i == 0)
            os << c.get_str();
        if (i > 0) {
            if (c != 1)
                os << "*";
            os << var;
            if (i > 1)
                os << "^" << i;
        }
        first = false;
    }
    return first ? "0" : os.str();
}

} // namespace ck
