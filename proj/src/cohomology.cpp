#include "ck/cohomology.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <limits>

namespace ck {

namespace {

using ZPoly = std::vector<mpz_class>;

int ilog(unsigned p, long n)
{
    int e = 0;
    long q = p;
    while (q <= n) {
        ++e;
        q *= p;
    }
    return e;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const mpz_class& m)
{
    if (a.empty() || b.empty())
        return {};
    ZPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    for (auto& x : c)
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return c;
}

// Remainder modulo a monic polynomial.
ZPoly zmod(ZPoly a, const ZPoly& monic, const mpz_class& m)
{
    const std::size_t d = monic.size() - 1;
    for (std::size_t k = a.size(); k-- > d;) {
        const mpz_class lead = a[k];
        if (lead == 0)
            continue;
        for (std::size_t i = 0; i <= d; ++i)
            a[k - d + i] -= lead * monic[i];
    }
    a.resize(std::min(a.size(), d));
    for (auto& x : a)
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return a;
}

// b with b * Q' = 1 mod (Q, p^prec), by Newton iteration from F_p.
ZPoly derivative_inverse(const HyperellipticCurve& C, unsigned p, int prec)
{
    const FpPoly Qp = C.reduce(p);
    auto [g, s, t] = extended_gcd(Qp.derivative(), Qp);
    if (g.degree() != 0)
        throw Error(ErrorKind::BadReduction, "F and F' share a factor mod " + std::to_string(p));
    ZPoly Q, dQ;
    const mpz_class& mod = prime_power(p, prec);
    for (const auto& c : C.coeffs()) {
        mpz_class v = PadicScalar::from_rational(p, c, prec).lift();
        Q.push_back(v);
    }
    for (std::size_t i = 1; i < Q.size(); ++i)
        dQ.push_back(Q[i] * static_cast<unsigned long>(i) % mod);
    ZPoly b;
    for (auto c : s.coeffs())
        b.emplace_back(static_cast<unsigned long>(c));
    int have = 1;
    while (have < prec) {
        have = std::min(2 * have, prec);
        const mpz_class& m = prime_power(p, have);
        ZPoly qb = zmod(zmul(dQ, b, m), Q, m);
        // b <- b (2 - Q' b)
        for (auto& x : qb)
            x = -x;
        if (qb.empty())
            qb.push_back(0);
        qb[0] += 2;
        b = zmod(zmul(b, qb, m), Q, m);
    }
    return b;
}

PadicPoly to_padic_poly(unsigned p, const ZPoly& z, int prec)
{
    std::vector<PadicScalar> c;
    for (const auto& x : z)
        c.push_back(PadicScalar::from_integer(p, x, prec));
    return PadicPoly(p, std::move(c));
}

PadicPoly monomial_shift(const PadicPoly& a, int shift, int prec)
{
    std::vector<PadicScalar> c(static_cast<std::size_t>(shift), PadicScalar::zero(a.prime(), prec));
    c.insert(c.end(), a.coeffs().begin(), a.coeffs().end());
    return PadicPoly(a.prime(), std::move(c));
}

struct Reducer {
    unsigned p;
    int prec;
    int genus;
    PadicPoly Q;
    PadicPoly dQ;
    PadicPoly b; // Q'^-1 mod Q

    Reducer(const HyperellipticCurve& C, unsigned p_, int prec_) : p(p_), prec(prec_), genus(C.genus())
    {
        Q = C.padic(p, prec);
        dQ = Q.derivative();
        b = to_padic_poly(p, derivative_inverse(C, p, prec), prec);
    }

    // levels[j] is the coefficient of y^(-2j) dx/2y, j >= 0.
    ReducedForm run(std::map<int, PadicPoly> levels) const
    {
        ReducedForm out;
        out.exact.p = p;
        const int top = levels.empty() ? 0 : levels.rbegin()->first;
        PadicPoly cur(p, {});
        for (int j = top; j >= 1; --j) {
            if (auto it = levels.find(j); it != levels.end())
                cur = cur + it->second;
            if (cur.coeffs().empty())
                continue;
            // A = R Q + S Q' with S = A b mod Q
            auto [q, r] = divmod_monic(cur, Q);
            PadicPoly S = divmod_monic(r * b, Q).second;
            PadicPoly q2 = divmod_monic(S * dQ, Q).first;
            const PadicScalar inv = PadicScalar::exact_rational(p, mpq_class(1, 2 * j - 1), prec + 4);
            out.exact.add(1 - 2 * j, S.scaled(-inv));
            cur = (q - q2) + S.derivative().scaled(inv.scaled(2));
        }
        if (auto it = levels.find(0); it != levels.end())
            cur = cur + it->second;
        // x^m dx/2y = (x^m - P_k/lc) dx/2y + d(x^k y)/lc,  P_k = 2k x^(k-1) Q + x^k Q'
        std::vector<PadicScalar> a = cur.coeffs();
        std::vector<PadicScalar> ycoef;
        const int g2 = 2 * genus;
        for (int m = static_cast<int>(a.size()) - 1; m >= g2; --m) {
            const int k = m - g2;
            const PadicScalar c = a[static_cast<std::size_t>(m)].divided(2 * k + g2 + 1);
            if (static_cast<int>(ycoef.size()) <= k)
                ycoef.resize(static_cast<std::size_t>(k + 1), PadicScalar::zero(p, prec));
            ycoef[static_cast<std::size_t>(k)] += c;
            for (std::size_t i = 0; i < Q.coeffs().size(); ++i) {
                if (k >= 1)
                    a[static_cast<std::size_t>(k - 1) + i] -= c * Q[i].scaled(2 * k);
                if (i < dQ.coeffs().size())
                    a[static_cast<std::size_t>(k) + i] -= c * dQ[i];
            }
        }
        if (!ycoef.empty())
            out.exact.add(1, PadicPoly(p, std::move(ycoef)));
        for (int i = 0; i < g2; ++i)
            out.coords.push_back(i < static_cast<int>(a.size()) ? a[static_cast<std::size_t>(i)] : PadicScalar::zero(p, prec));
        return out;
    }
};

mpq_class binom_minus_half(int k)
{
    mpq_class b = 1;
    for (int m = 0; m < k; ++m)
        b *= mpq_class(-1 - 2 * m, 2 * (m + 1));
    return b;
}

// Valuation bound on the discarded tail of the binomial expansion.
int tail_loss(unsigned p, int genus, int k)
{
    const long j = static_cast<long>(p - 1) / 2 + static_cast<long>(p) * k;
    const long deg_top = 2L * static_cast<long>(p) * genus + 2 * genus + 1;
    return ilog(p, 2 * j + 1) + ilog(p, 2 * deg_top + 1) + 1;
}

int truncation_precision(unsigned p, int genus, int terms)
{
    // smallest k+1-loss(k) over the discarded k >= terms; loss grows slowly so a window suffices
    int best = std::numeric_limits<int>::max();
    for (int k = terms; k < terms + 200; ++k)
        best = std::min(best, k + 1 - tail_loss(p, genus, k));
    return best;
}

// Digits the capped-relative bookkeeping is expected to drop.
int tracked_loss_estimate(unsigned p, int genus, int terms)
{
    const long jmax = static_cast<long>(p - 1) / 2 + static_cast<long>(p) * (terms - 1);
    int loss = 0;
    for (long j = 1; j <= jmax; ++j)
        loss += valuation_of(p, mpz_class(2 * j - 1));
    for (long k = 0; k <= 2L * p * genus; ++k)
        loss += valuation_of(p, mpz_class(2 * k + 2 * genus + 1));
    return loss + 2;
}

std::vector<PadicPoly> frobenius_error_powers(const HyperellipticCurve& C, unsigned p, int prec, int terms)
{
    const PadicPoly Q = C.padic(p, prec);
    // E = Q(x^p) - Q(x)^p
    std::vector<PadicScalar> qxp(static_cast<std::size_t>(Q.degree() * static_cast<int>(p) + 1), PadicScalar::zero(p, prec));
    for (int i = 0; i <= Q.degree(); ++i)
        qxp[static_cast<std::size_t>(i) * p] = Q[static_cast<std::size_t>(i)];
    PadicPoly Qp = Q;
    for (unsigned e = 1; e < p; ++e)
        Qp = Qp * Q;
    const PadicPoly E = PadicPoly(p, std::move(qxp)) - Qp;
    std::vector<PadicPoly> pw{PadicPoly(p, {PadicScalar::exact_integer(p, 1, prec)})};
    for (int k = 1; k < terms; ++k)
        pw.push_back(pw.back() * E);
    return pw;
}

std::map<int, PadicPoly> pullback_levels(const std::vector<PadicPoly>& Epow, unsigned p, int prec, int i)
{
    std::map<int, PadicPoly> levels;
    const int shift = static_cast<int>(p) * (i + 1) - 1;
    for (int k = 0; k < static_cast<int>(Epow.size()); ++k) {
        const int j = static_cast<int>(p - 1) / 2 + static_cast<int>(p) * k;
        const PadicScalar c = PadicScalar::exact_rational(p, binom_minus_half(k) * p, prec + k + 2);
        levels[j] = monomial_shift(Epow[static_cast<std::size_t>(k)].scaled(c), shift, prec);
    }
    return levels;
}

FrobeniusAction compute(const HyperellipticCurve& C, unsigned p, int W, int terms)
{
    FrobeniusAction fa;
    fa.p = p;
    fa.genus = C.genus();
    fa.working_precision = W;
    fa.series_terms = terms;
    const int n = 2 * C.genus();
    fa.M.assign(static_cast<std::size_t>(n), std::vector<PadicScalar>(static_cast<std::size_t>(n)));
    const Reducer red(C, p, W);
    const auto Epow = frobenius_error_powers(C, p, W, terms);
    for (int i = 0; i < n; ++i) {
        ReducedForm rf = red.run(pullback_levels(Epow, p, W, i));
        for (int j = 0; j < n; ++j)
            fa.M[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = rf.coords[static_cast<std::size_t>(j)];
        fa.f.push_back(std::move(rf.exact));
    }
    return fa;
}

int tracked_precision(const FrobeniusAction& fa)
{
    int prec = std::numeric_limits<int>::max();
    for (const auto& row : fa.M)
        for (const auto& x : row)
            prec = std::min(prec, x.precision());
    for (const auto& f : fa.f)
        prec = std::min(prec, f.min_precision());
    return prec;
}

void cap_precision(FrobeniusAction& fa, int prec)
{
    for (auto& row : fa.M)
        for (auto& x : row)
            x = x.with_precision(std::min(x.precision(), prec));
    for (auto& f : fa.f)
        for (auto& [e, s] : f.terms)
            for (auto& c : s.coeffs())
                c = c.with_precision(std::min(c.precision(), prec));
    fa.precision = prec;
}

} // namespace

void YLaurent::add(int e, const PadicPoly& s)
{
    if (p == 0)
        p = s.prime();
    auto it = terms.find(e);
    if (it == terms.end())
        terms.emplace(e, s);
    else
        it->second = it->second + s;
}

int YLaurent::min_precision() const
{
    int m = std::numeric_limits<int>::max();
    for (const auto& [e, s] : terms)
        if (!s.coeffs().empty())
            m = std::min(m, s.min_precision());
    return m;
}

PadicScalar evaluate_correction(const YLaurent& f, const PadicPoint& P)
{
    if (P.infinity)
        throw Error(ErrorKind::PoleAtPoint, "correction evaluated at infinity");
    const unsigned p = P.x.prime();
    PadicScalar acc = PadicScalar::zero(p, std::numeric_limits<int>::max() / 4);
    bool pole = false;
    for (const auto& [e, s] : f.terms) {
        if (s.coeffs().empty())
            continue;
        const PadicScalar sx = s.evaluate(P.x);
        if (e == 0) {
            acc += sx;
            continue;
        }
        if (e < 0 && P.y.valuation_at_least(1) != Tri::False) {
            pole = true;
            break;
        }
        const PadicScalar ye = e > 0 ? P.y.pow(static_cast<unsigned long>(e)) : P.y.inverse().pow(static_cast<unsigned long>(-e));
        acc += sx * ye;
    }
    if (pole)
        throw Error(ErrorKind::PoleAtPoint, "y(P) is not a unit");
    return acc;
}

YLaurent exterior_derivative(const YLaurent& f, const HyperellipticCurve& C, unsigned p, int prec)
{
    // d(s y^e) = (2 s' Q + e s Q') y^(e-1) dx/2y
    const PadicPoly Q = C.padic(p, prec);
    const PadicPoly dQ = Q.derivative();
    YLaurent out;
    out.p = p;
    for (const auto& [e, s] : f.terms) {
        if (s.coeffs().empty())
            continue;
        PadicPoly term = (s.derivative() * Q).scaled(PadicScalar::exact_integer(p, 2, prec + 2));
        if (e != 0)
            term = term + (s * dQ).scaled(PadicScalar::exact_integer(p, e, prec + 2));
        out.add(e - 1, term);
    }
    return out;
}

ReducedForm reduce_differential(const HyperellipticCurve& C, unsigned p, int prec, const YLaurent& D)
{
    const Reducer red(C, p, prec);
    std::map<int, PadicPoly> levels;
    for (const auto& [e, s] : D.terms) {
        if (e % 2 != 0)
            throw Error(ErrorKind::InvalidArgument, "odd power of y in a differential coefficient");
        if (e >= 0) {
            PadicPoly a = s;
            for (int m = 0; m < e / 2; ++m)
                a = a * red.Q;
            auto [it, fresh] = levels.emplace(0, a);
            if (!fresh)
                it->second = it->second + a;
        } else {
            auto [it, fresh] = levels.emplace(-e / 2, s);
            if (!fresh)
                it->second = it->second + s;
        }
    }
    return red.run(std::move(levels));
}

YLaurent frobenius_pullback(const HyperellipticCurve& C, unsigned p, int prec, int i, int terms)
{
    YLaurent out;
    out.p = p;
    for (auto& [j, a] : pullback_levels(frobenius_error_powers(C, p, prec, terms), p, prec, i))
        out.add(-2 * j, a);
    return out;
}

int frobenius_series_terms(unsigned p, int genus, int N)
{
    int terms = 1;
    while (truncation_precision(p, genus, terms) < N)
        ++terms;
    return terms;
}

FrobeniusAction frobenius_action(const HyperellipticCurve& C, unsigned p, int N)
{
    return frobenius_action(C, p, N, frobenius_series_terms(p, C.genus(), N));
}

FrobeniusAction frobenius_action(const HyperellipticCurve& C, unsigned p, int N, int terms)
{
    if (p < 3 || !is_prime(p))
        throw Error(ErrorKind::InvalidArgument, "p must be an odd prime");
    if (!C.has_good_reduction(p))
        throw Error(ErrorKind::BadReduction, "bad reduction at " + std::to_string(p));
    const int trunc = truncation_precision(p, C.genus(), terms);
    const int target = std::min(N, trunc);
    if (target < 1)
        throw Error(ErrorKind::PrecisionExhausted, "series truncated too early for any digit");
    int W = target + tracked_loss_estimate(p, C.genus(), terms);
    for (int attempt = 0; attempt < 6; ++attempt) {
        FrobeniusAction fa = compute(C, p, W, terms);
        const int tracked = tracked_precision(fa);
        spdlog::debug("frobenius p={} N={} terms={} W={} tracked={} truncation={}", p, N, terms, W, tracked, trunc);
        if (tracked >= target) {
            cap_precision(fa, target);
            return fa;
        }
        W += target - tracked + 2;
    }
    throw Error(ErrorKind::PrecisionExhausted, "Frobenius matrix did not reach the requested precision");
}

std::vector<PadicScalar> char_poly_coefficients(const std::vector<std::vector<PadicScalar>>& M)
{
    // Faddeev-LeVerrier: c_k = -tr(M A_k)/k, A_(k+1) = M A_k + c_k I, with A_1 = I
    const std::size_t n = M.size();
    const unsigned p = M[0][0].prime();
    int prec = std::numeric_limits<int>::max();
    for (const auto& row : M)
        for (const auto& x : row)
            prec = std::min(prec, x.precision());
    const auto zero = PadicScalar::zero(p, prec + 8);
    std::vector<std::vector<PadicScalar>> A(n, std::vector<PadicScalar>(n, zero));
    for (std::size_t i = 0; i < n; ++i)
        A[i][i] = PadicScalar::exact_integer(p, 1, prec + 8);
    std::vector<PadicScalar> c{PadicScalar::exact_integer(p, 1, prec + 8)};
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<PadicScalar>> MA(n, std::vector<PadicScalar>(n, zero));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                PadicScalar acc = zero;
                for (std::size_t l = 0; l < n; ++l)
                    acc += M[i][l] * A[l][j];
                MA[i][j] = acc;
            }
        PadicScalar tr = zero;
        for (std::size_t i = 0; i < n; ++i)
            tr += MA[i][i];
        const PadicScalar ck = (-tr).divided(static_cast<long>(k));
        c.push_back(ck);
        A = std::move(MA);
        for (std::size_t i = 0; i < n; ++i)
            A[i][i] += ck;
    }
    return c;
}

std::vector<mpz_class> zeta_char_poly(const FrobeniusAction& fa)
{
    const int g = fa.genus;
    const unsigned p = fa.p;
    const auto c = char_poly_coefficients(fa.M);
    std::vector<mpz_class> out(static_cast<std::size_t>(2 * g + 1));
    out[0] = 1;
    for (int k = 1; k <= g; ++k) {
        const PadicScalar& ck = c[static_cast<std::size_t>(k)];
        // |c_k| <= binom(2g, k) p^(k/2); the symmetric lift is unique when p^prec > 2 bound
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(2 * g), static_cast<unsigned long>(k));
        mpz_class bound2 = binom * binom * prime_power(p, k); // bound^2
        if (ck.valuation() < 0 || 4 * bound2 >= prime_power(p, ck.precision()) * prime_power(p, ck.precision()))
            throw Error(ErrorKind::RoundingAmbiguous,
                        "coefficient " + std::to_string(k) + " known only to precision " + std::to_string(ck.precision()));
        const mpz_class v = ck.lift_symmetric();
        if (v * v > bound2)
            throw Error(ErrorKind::RoundingAmbiguous, "coefficient " + std::to_string(k) + " violates the Weil bound");
        out[static_cast<std::size_t>(k)] = v;
    }
    for (int k = g + 1; k <= 2 * g; ++k) {
        out[static_cast<std::size_t>(k)] = out[static_cast<std::size_t>(2 * g - k)] * prime_power(p, k - g);
        const PadicScalar& ck = c[static_cast<std::size_t>(k)];
        const PadicScalar want = PadicScalar::from_integer(p, out[static_cast<std::size_t>(k)], ck.precision());
        if ((ck - want).is_zero() == Tri::False)
            throw Error(ErrorKind::RoundingAmbiguous, "functional equation fails at coefficient " + std::to_string(k));
    }
    return out;
}

mpz_class jacobian_order_fp(const FrobeniusAction& fa)
{
    const auto P = zeta_char_poly(fa);
    mpz_class s = 0;
    for (const auto& c : P)
        s += c;
    if (s <= 0)
        throw Error(ErrorKind::RoundingAmbiguous, "P(1) is not positive");
    return s;
}

mpz_class point_count_fp(const FrobeniusAction& fa)
{
    const auto P = zeta_char_poly(fa);
    return mpz_class(fa.p) + 1 + P[1];
}

} // namespace ck
