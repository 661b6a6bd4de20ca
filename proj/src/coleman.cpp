#include "ck/coleman.hpp"

#include <algorithm>
#include <limits>

namespace ck {

namespace {

int ilog(unsigned p, long n)
{
    int e = 0;
    for (long q = p; q <= n; q *= p)
        ++e;
    return e;
}

// Valuation bound for the discarded terms b_m t^m, m > top, where b_m = a/m with a integral.
int tail_bound(unsigned p, int top, int vt)
{
    int best = std::numeric_limits<int>::max();
    const int start = std::max(top + 1, 1);
    for (int m = start; m < start + 64 * static_cast<int>(p); ++m)
        best = std::min(best, m * vt - valuation_of(p, mpz_class(m)));
    return best;
}

bool same_point(const PadicPoint& a, const PadicPoint& b)
{
    if (a.infinity || b.infinity)
        return a.infinity == b.infinity;
    return (a.x - b.x).is_zero() != Tri::False && (a.y - b.y).is_zero() != Tri::False;
}

IntegralVector zero_vector(unsigned p, int n, int prec, const PadicPoint& P, const PadicPoint& Q)
{
    IntegralVector v;
    v.p = p;
    v.from = P;
    v.to = Q;
    v.values.assign(static_cast<std::size_t>(n), PadicScalar::zero(p, prec));
    return v;
}

int component_count(const HyperellipticCurve& C, const PadicPoint& P, const PadicPoint& Q)
{
    return (P.infinity || Q.infinity) ? C.genus() : 2 * C.genus();
}

// Both endpoints in non-Weierstrass discs, in different discs.
IntegralVector frobenius_integral(const HyperellipticCurve& C, const FrobeniusAction& fa, const PadicPoint& P, const PadicPoint& Q)
{
    const unsigned p = fa.p;
    const int N = fa.precision;
    const int n = 2 * C.genus();
    const PadicPoint P1 = teichmuller_point(C, P);
    const PadicPoint Q1 = teichmuller_point(C, Q);
    // int_P'^Q' omega_i = sum_j M_ji int omega_j + f_i(Q') - f_i(P'), so (M^T - I) v = f(P') - f(Q')
    std::vector<std::vector<PadicScalar>> A(static_cast<std::size_t>(n), std::vector<PadicScalar>(static_cast<std::size_t>(n)));
    std::vector<PadicScalar> rhs;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            PadicScalar a = fa.M[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (i == j)
                a -= PadicScalar::exact_integer(p, 1, N + 4);
            A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a;
        }
        const YLaurent& f = fa.f[static_cast<std::size_t>(i)];
        rhs.push_back(evaluate_correction(f, P1) - evaluate_correction(f, Q1));
    }
    IntegralVector mid;
    mid.p = p;
    mid.from = P1;
    mid.to = Q1;
    mid.values = solve_linear(std::move(A), std::move(rhs));
    const IntegralVector head = tiny_integral(C, p, N, P, P1);
    const IntegralVector tail = tiny_integral(C, p, N, Q1, Q);
    return concatenate(concatenate(head, mid), tail);
}

} // namespace

int IntegralVector::precision() const
{
    int m = std::numeric_limits<int>::max();
    for (const auto& v : values)
        m = std::min(m, v.precision());
    return m;
}

IntegralVector IntegralVector::operator-() const
{
    IntegralVector out{p, to, from, {}};
    for (const auto& v : values)
        out.values.push_back(-v);
    return out;
}

IntegralVector concatenate(const IntegralVector& a, const IntegralVector& b)
{
    IntegralVector out{a.p, a.from, b.to, {}};
    const std::size_t n = std::min(a.values.size(), b.values.size());
    for (std::size_t i = 0; i < n; ++i)
        out.values.push_back(a.values[i] + b.values[i]);
    return out;
}

IntegralVector halved(const IntegralVector& v)
{
    IntegralVector out = v;
    for (auto& x : out.values)
        x = x.divided(2);
    return out;
}

int tiny_integral_order(unsigned p, int genus, int N)
{
    // terms t^m with m > order - 2g stay below p^N when v(t) >= 1
    int order = N + 2 * genus;
    while (tail_bound(p, order - 2 * genus, 1) < N)
        ++order;
    return order;
}

IntegralVector tiny_integral(const HyperellipticCurve& C, unsigned p, int N, const PadicPoint& P, const PadicPoint& Q)
{
    return tiny_integral(C, p, N, P, Q, tiny_integral_order(p, C.genus(), N));
}

IntegralVector tiny_integral(const HyperellipticCurve& C, unsigned p, int N, const PadicPoint& P, const PadicPoint& Q, int order)
{
    const int n = component_count(C, P, Q);
    if (same_point(P, Q))
        return zero_vector(p, n, N, P, Q);
    if (!same_disc(P, Q))
        throw Error(ErrorKind::DifferentDiscs, "tiny integral between different residue discs");
    const int chart_prec = N + ilog(p, order + 2) + 2;
    const LocalChart chart(C, p, chart_prec, P.infinity ? Q : P, order);
    const PadicScalar tP = chart.parameter(P);
    const PadicScalar tQ = chart.parameter(Q);
    IntegralVector out = zero_vector(p, 0, N, P, Q);
    for (int i = 0; i < n; ++i) {
        const LaurentSeries F = chart.differential(i).integrate();
        int cap = N;
        auto value_at = [&](const PadicScalar& t) {
            if (t.is_zero_to_precision()) {
                if (F.shift <= 0)
                    throw Error(ErrorKind::PoleAtPoint, "integrand has a pole at the disc centre");
                return PadicScalar::zero(p, chart_prec);
            }
            if (t.valuation() < 1)
                throw Error(ErrorKind::DifferentDiscs, "parameter is not in pZ_p");
            cap = std::min(cap, tail_bound(p, F.top_exponent(), t.valuation()));
            return F.evaluate(t);
        };
        const PadicScalar v = value_at(tQ) - value_at(tP);
        out.values.push_back(v.with_precision(std::min(v.precision(), cap)));
    }
    if (out.precision() < 1)
        throw Error(ErrorKind::PrecisionExhausted, "tiny integral has no correct digits");
    return out;
}

PadicPoint teichmuller_point(const HyperellipticCurve& C, const PadicPoint& P)
{
    if (in_weierstrass_disc(P))
        throw Error(ErrorKind::WeierstrassDisc, "no Teichmuller point in a Weierstrass disc");
    const unsigned p = P.x.prime();
    const int prec = std::min(P.x.precision(), P.y.precision());
    const PadicScalar x = teichmuller_lift(p, P.x.residue(), prec);
    const PadicScalar F = C.padic(p, prec).evaluate(x);
    return PadicPoint::affine(x, hensel_sqrt(F, P.y.residue()));
}

PadicPoint weierstrass_point(const HyperellipticCurve& C, unsigned p, int N, const PadicPoint& P)
{
    if (!in_weierstrass_disc(P))
        throw Error(ErrorKind::InvalidArgument, "point is not in a Weierstrass disc");
    if (P.infinity || P.x.valuation() < 0)
        return PadicPoint::at_infinity();
    const PadicScalar r = hensel_simple_root(C.padic(p, N), P.x.residue());
    return PadicPoint::affine(r, PadicScalar::zero(p, N));
}

IntegralVector coleman_integral(const HyperellipticCurve& C, const FrobeniusAction& fa, const PadicPoint& P, const PadicPoint& Q)
{
    const unsigned p = fa.p;
    const int N = fa.precision;
    if (same_point(P, Q))
        return zero_vector(p, component_count(C, P, Q), N, P, Q);
    if (same_disc(P, Q))
        return tiny_integral(C, p, N, P, Q);
    const bool wP = in_weierstrass_disc(P);
    const bool wQ = in_weierstrass_disc(Q);
    if (!wP && !wQ)
        return frobenius_integral(C, fa, P, Q);
    if (!wP)
        return -coleman_integral(C, fa, Q, P);
    // from a Weierstrass point W: int_W^Q = 1/2 int_iota(Q)^Q
    const PadicPoint W = weierstrass_point(C, p, N, P);
    const IntegralVector head = tiny_integral(C, p, N, P, W);
    if (wQ) {
        // integrals between Weierstrass points vanish
        const PadicPoint W2 = weierstrass_point(C, p, N, Q);
        IntegralVector mid = zero_vector(p, component_count(C, W, W2), N, W, W2);
        return concatenate(concatenate(head, mid), tiny_integral(C, p, N, W2, Q));
    }
    IntegralVector mid = halved(frobenius_integral(C, fa, involution(Q), Q));
    mid.from = W;
    if (W.infinity)
        mid.values.resize(static_cast<std::size_t>(C.genus()));
    return concatenate(head, mid);
}

std::vector<PadicScalar> integral_functional(const HyperellipticCurve& C, const FrobeniusAction& fa, const PadicPoint& Q)
{
    auto v = coleman_integral(C, fa, PadicPoint::at_infinity(), Q).values;
    v.resize(static_cast<std::size_t>(C.genus()));
    return v;
}

std::vector<PadicScalar> solve_linear(std::vector<std::vector<PadicScalar>> A, std::vector<PadicScalar> b)
{
    const std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        int best = std::numeric_limits<int>::max();
        for (std::size_t r = col; r < n; ++r) {
            const PadicScalar& a = A[r][col];
            if (!a.is_zero_to_precision() && a.valuation() < best) {
                best = a.valuation();
                piv = r;
            }
        }
        if (piv == n)
            throw Error(ErrorKind::SingularSystem, "no invertible pivot in column " + std::to_string(col));
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        const PadicScalar inv = A[col][col].inverse();
        for (std::size_t r = col + 1; r < n; ++r) {
            const PadicScalar m = A[r][col] * inv;
            for (std::size_t c = col; c < n; ++c)
                A[r][c] -= m * A[col][c];
            b[r] -= m * b[col];
        }
    }
    std::vector<PadicScalar> x(n);
    for (std::size_t k = n; k-- > 0;) {
        PadicScalar acc = b[k];
        for (std::size_t c = k + 1; c < n; ++c)
            acc -= A[k][c] * x[c];
        x[k] = acc / A[k][k];
    }
    return x;
}

} // namespace ck
