#include "ck/chabauty.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <limits>

#include "ck/coleman.hpp"

namespace ck {

namespace {

int ilog(unsigned p, long n)
{
    int e = 0;
    for (long q = p; q <= n; q *= p)
        ++e;
    return e;
}

// Smallest m - v_p(m) over the discarded exponents m > M: the tail valuation for t in pZ_p,
// since the integrated coefficients are integral ones divided by m.
int truncation_cap(unsigned p, int M)
{
    int best = std::numeric_limits<int>::max();
    for (int m = M + 1; m < M + 1 + 64 * static_cast<int>(p); ++m)
        best = std::min(best, m - valuation_of(p, mpz_class(m)));
    return best;
}

PadicScalar capped(const PadicScalar& a, int prec) { return a.with_precision(std::min(a.precision(), prec)); }

// f(p s) as a polynomial in s, coefficients capped at `cap` digits.
PadicPoly rescaled_series(const PadicPowerSeries& f, unsigned p, int cap)
{
    std::vector<PadicScalar> c;
    for (std::size_t k = 0; k < f.coeffs().size(); ++k)
        c.push_back(capped(f[k].shifted(static_cast<int>(k)), cap));
    return PadicPoly(p, std::move(c)).trimmed();
}

bool points_agree(const PadicPoint& a, const PadicPoint& b)
{
    if (a.infinity || b.infinity)
        return a.infinity == b.infinity;
    return (a.x - b.x).is_zero() != Tri::False && (a.y - b.y).is_zero() != Tri::False;
}

std::optional<RationalPoint> known_in_disc(const std::vector<RationalPoint>& known, const FpPoint& disc, unsigned p)
{
    for (const auto& R : known) {
        if (R.infinity) {
            if (disc.infinity)
                return R;
            continue;
        }
        if (mpz_divisible_ui_p(R.x.get_den_mpz_t(), p) || mpz_divisible_ui_p(R.y.get_den_mpz_t(), p)) {
            if (disc.infinity)
                return R;
            continue;
        }
        if (!disc.infinity && reduce_point(to_padic(R, p, 1)) == disc)
            return R;
    }
    return std::nullopt;
}

bool padic_less(const PadicPoint& a, const PadicPoint& b)
{
    if (a.infinity != b.infinity)
        return a.infinity;
    if (a.infinity)
        return false;
    auto key = [](const PadicScalar& s) { return s.is_zero_to_precision() ? mpq_class(0) : s.to_rational(); };
    const mpq_class ax = key(a.x), bx = key(b.x);
    if (ax != bx)
        return ax < bx;
    return key(a.y) < key(b.y);
}

} // namespace

std::pair<int, int> precisions(unsigned p) { return {2 * static_cast<int>(p) + 4, 2 * static_cast<int>(p) + 1}; }

int vanishing_floor(unsigned p, int N, int M) { return std::min(N - 3, truncation_cap(p, M) - 1); }

DiscSeries disc_series(const HyperellipticCurve& C, const FrobeniusAction& fa, const FpPoint& disc,
                       const std::vector<RationalPoint>& known, int M)
{
    const unsigned p = fa.p;
    const int N = fa.precision;
    const int g = C.genus();
    const int prec = N + ilog(p, M + 1) + 2;
    const auto seed = known_in_disc(known, disc, p);
    const bool weierstrass = disc.infinity || disc.y == 0;

    PadicPoint base;
    if (disc.infinity)
        base = PadicPoint::at_infinity();
    else if (seed && !weierstrass)
        base = to_padic(*seed, p, prec);
    else
        base = lift_point(disc, C, p, prec);

    LocalChart chart(C, p, prec, base, M);
    base = chart.center();
    std::vector<PadicScalar> offsets;
    if (weierstrass || seed) {
        // integrals between Weierstrass points and from oo to a rational point vanish
        offsets.assign(static_cast<std::size_t>(g), PadicScalar::zero(p, N));
    } else {
        offsets = integral_functional(C, fa, base);
    }
    std::vector<PadicPowerSeries> f;
    for (int i = 0; i < g; ++i) {
        const LaurentSeries I = chart.differential(i).integrate();
        if (I.shift < 0)
            throw Error(ErrorKind::InvalidArgument, "holomorphic integral with a pole");
        auto s = PadicPowerSeries::zero(p, M, prec);
        for (int m = I.shift; m <= M; ++m) {
            const std::size_t k = static_cast<std::size_t>(m - I.shift);
            if (k < I.body.coeffs().size())
                s[static_cast<std::size_t>(m)] = I.body[k];
        }
        s[0] = s[0] + offsets[static_cast<std::size_t>(i)];
        f.push_back(std::move(s));
    }
    return DiscSeries{disc, base, seed.has_value(), std::move(chart), std::move(f), std::move(offsets)};
}

CommonZeros common_zeros(const DiscSeries& ds, unsigned p, int N, int M)
{
    const int floor = vanishing_floor(p, N, M);
    const int cap = std::min(N, truncation_cap(p, M));
    CommonZeros out;
    for (std::size_t i = 0; i < ds.f.size(); ++i) {
        const PadicPoly trunc = ds.f[i].truncated(M).to_poly().trimmed();
        if (trunc.degree() < 1)
            continue;
        if (trunc.degree() == 1 || discriminant(trunc).is_zero() == Tri::False) {
            out.series_index = static_cast<int>(i);
            break;
        }
    }
    if (out.series_index < 0)
        throw Error(ErrorKind::AllSeriesDegenerate, "every series has a repeated root in disc " + to_string(ds.disc));

    std::vector<PadicPoly> g;
    for (const auto& f : ds.f)
        g.push_back(rescaled_series(f, p, cap));
    const PadicPoly& main = g[static_cast<std::size_t>(out.series_index)];
    if (main.coeffs().empty())
        throw Error(ErrorKind::PrecisionExhausted, "series vanishes to working precision");
    for (const PadicScalar& s : padic_poly_roots(main)) {
        bool common = true;
        for (std::size_t j = 0; j < g.size() && common; ++j) {
            if (static_cast<int>(j) == out.series_index)
                continue;
            const PadicScalar v = g[j].evaluate(s);
            if (v.is_zero_to_precision()) {
                if (v.precision() < floor)
                    throw Error(ErrorKind::PrecisionExhausted, "cannot decide vanishing at a root in " + to_string(ds.disc));
                continue;
            }
            common = v.valuation() >= floor;
        }
        if (!common)
            continue;
        const PadicScalar t = s.shifted(1);
        out.parameters.push_back(t);
        out.points.push_back(t.is_zero_to_precision() ? ds.base : ds.chart.point_at(t));
    }
    return out;
}

std::vector<RationalPoint> ChabautyOutput::rational_points() const
{
    std::vector<RationalPoint> out;
    for (const auto& c : rational)
        out.push_back(*c.rational);
    return out;
}

ChabautyOutput run_chabauty(const HyperellipticCurve& C, const std::vector<RationalPoint>& known, const ChabautyConfig& cfg)
{
    ChabautyOutput out;
    unsigned p = cfg.prime ? *cfg.prime : good_reduction_prime(C, 7);
    while (true) {
        if (p > cfg.prime_cap)
            throw Error(ErrorKind::AllSeriesDegenerate, "no usable prime below " + std::to_string(cfg.prime_cap));
        auto escalate = [&](const std::string& why) {
            spdlog::info("prime {} abandoned: {}", p, why);
            out.escalation_reasons.push_back("p=" + std::to_string(p) + ": " + why);
            ++out.escalations;
            p = good_reduction_prime(C, p + 1);
        };
        if (p < 7 || !is_prime(p) || !C.has_good_reduction(p)) {
            escalate("bad reduction");
            continue;
        }
        auto [N, M] = precisions(p);
        if (cfg.precision)
            N = *cfg.precision;
        if (cfg.series_order)
            M = *cfg.series_order;
        const FrobeniusAction fa = frobenius_action(C, p, N);
        std::vector<DiscLog> logs;
        std::vector<PadicPoint> found;
        try {
            for (const auto& disc : fp_points_up_to_involution(C, p)) {
                const DiscSeries ds = disc_series(C, fa, disc, known, M);
                const CommonZeros cz = common_zeros(ds, p, N, M);
                logs.push_back({disc, ds.seeded, cz.series_index, cz.points});
                spdlog::debug("disc {}: {} common zeros via f_{}", to_string(disc), cz.points.size(), cz.series_index);
                for (const auto& Q : cz.points)
                    for (const auto& R : {Q, involution(Q)})
                        if (std::none_of(found.begin(), found.end(), [&](const PadicPoint& X) { return points_agree(X, R); }))
                            found.push_back(R);
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::AllSeriesDegenerate && e.kind() != ErrorKind::PrecisionExhausted)
                throw;
            escalate(e.what());
            continue;
        }
        std::sort(found.begin(), found.end(), padic_less);
        const int floor = vanishing_floor(p, N, M);
        for (const auto& Q : found) {
            ClassifiedPoint c = classify_point(C, fa, Q, floor);
            switch (c.verdict) {
            case Verdict::Rational: out.rational.push_back(std::move(c)); break;
            case Verdict::TwoTorsion: out.two_torsion.push_back(std::move(c)); break;
            case Verdict::HigherTorsion: out.higher_torsion.push_back(std::move(c)); break;
            }
        }
        std::sort(out.rational.begin(), out.rational.end(),
                  [](const ClassifiedPoint& a, const ClassifiedPoint& b) { return *a.rational < *b.rational; });
        out.prime = p;
        out.N = N;
        out.M = M;
        out.discs = std::move(logs);
        out.fp_points = point_count_fp(fa);
        out.jacobian_order = jacobian_order_fp(fa);
        for (const auto& R : known) {
            const auto pts = out.rational_points();
            if (std::find(pts.begin(), pts.end(), R) == pts.end())
                spdlog::warn("known point {} was not recovered at p = {}", to_string(R), p);
        }
        return out;
    }
}

} // namespace ck
