#include <doctest.h>

#include <algorithm>
#include <map>

#include "ck/chabauty.hpp"
#include "ck/coleman.hpp"
#include "fixtures.hpp"

using namespace ck;

namespace {

bool agree(const PadicScalar& a, const PadicScalar& b, int n)
{
    const PadicScalar d = a - b;
    return d.is_zero_to_precision() ? d.precision() >= n : d.valuation() >= n;
}

std::vector<RationalPoint> sorted(std::vector<RationalPoint> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

const ChabautyOutput& cached_run(int example)
{
    static std::map<int, ChabautyOutput> cache;
    auto it = cache.find(example);
    if (it == cache.end()) {
        const auto coeffs = example == 1 ? fixtures::example1()
                          : example == 2 ? fixtures::example2()
                                         : scale_to_monic(fixtures::example3()).curve.coeffs();
        const HyperellipticCurve C(coeffs);
        it = cache.emplace(example, run_chabauty(C, search_rational_points(C, 1000))).first;
    }
    return it->second;
}

std::vector<ClassifiedPoint> all_points(const ChabautyOutput& out)
{
    std::vector<ClassifiedPoint> v = out.rational;
    v.insert(v.end(), out.two_torsion.begin(), out.two_torsion.end());
    v.insert(v.end(), out.higher_torsion.begin(), out.higher_torsion.end());
    return v;
}

} // namespace

TEST_CASE("precision schedule")
{
    for (unsigned p = 7; p < 100; p = next_prime(p + 1)) {
        const auto [N, M] = precisions(p);
        CHECK(N == 2 * static_cast<int>(p) + 4);
        CHECK(M == 2 * static_cast<int>(p) + 1);
        CHECK(vanishing_floor(p, N, M) == N - 3);
        CHECK(vanishing_floor(p, N, M) >= M);
    }
}

TEST_CASE("first example")
{
    const auto& out = cached_run(1);
    CHECK(out.prime == 7);
    CHECK(out.N == 18);
    CHECK(out.M == 15);
    CHECK(out.escalations == 0);
    CHECK(out.rational_points() == std::vector{RationalPoint::at_infinity(), RationalPoint::affine(32, 0)});
    CHECK(out.two_torsion.empty());
    CHECK(out.higher_torsion.empty());
    CHECK(out.fp_points == 10);
    // discs up to involution: oo, (0,3), (1,2), (2,1), (4,0), (6,2)
    REQUIRE(out.discs.size() == 6);
    for (const auto& d : out.discs) {
        if (d.disc.infinity) {
            REQUIRE(d.zeros.size() == 1);
            CHECK(d.zeros[0].infinity);
        } else if (d.disc.x == 4) {
            REQUIRE(d.zeros.size() == 1);
            CHECK(agree(d.zeros[0].x, PadicScalar::from_integer(7, 32, 18), 16));
        } else {
            CHECK(d.zeros.empty());
        }
    }
}

TEST_CASE("second example: an order-18 pair")
{
    const auto& out = cached_run(2);
    CHECK(out.prime == 7);
    CHECK(out.rational_points() == std::vector{RationalPoint::at_infinity()});
    CHECK(out.two_torsion.empty());
    REQUIRE(out.higher_torsion.size() == 2);
    const PadicScalar x0 = PadicScalar::from_rational(7, mpq_class(-1, 8), 30);
    for (const auto& c : out.higher_torsion) {
        CHECK(c.point.x.precision() >= 16);
        CHECK(agree(c.point.x, x0, 16));
        CHECK(*c.x_minpoly == std::vector<mpz_class>{1, 8});
        CHECK(*c.y_minpoly == std::vector<mpz_class>{3, 0, mpz_class(1) << 22});
        CHECK(c.order == 18);
        CHECK(!c.p_divides_order);
    }
    CHECK(agree(out.higher_torsion[0].point.y, -out.higher_torsion[1].point.y, 16));
    CHECK(out.jacobian_order % 18 == 0);
}

TEST_CASE("third example on its original model")
{
    const auto m = scale_to_monic(fixtures::example3());
    const auto& out = cached_run(3);
    std::vector<RationalPoint> back;
    for (const auto& R : out.rational_points())
        back.push_back(m.from_monic(R));
    const std::vector<RationalPoint> want{
        RationalPoint::at_infinity(),           RationalPoint::affine(-1, 0), RationalPoint::affine(mpq_class(-1, 2), 0),
        RationalPoint::affine(0, -1), RationalPoint::affine(0, 1),  RationalPoint::affine(1, 0)};
    CHECK(sorted(back) == want);
    for (const auto& R : back) {
        if (R.infinity)
            continue;
        mpq_class rhs = 0;
        for (std::size_t i = m.original.size(); i-- > 0;)
            rhs = rhs * R.x + m.original[i];
        CHECK(R.y * R.y == rhs);
    }
    CHECK(out.two_torsion.empty());
    CHECK(out.higher_torsion.empty());
}

TEST_CASE("output points lie on the curve and are closed under the involution")
{
    for (int ex : {1, 2, 3}) {
        const auto& out = cached_run(ex);
        const auto pts = all_points(out);
        for (const auto& c : pts) {
            if (c.point.infinity)
                continue;
            const PadicScalar y2 = c.point.y * c.point.y;
            const auto coeffs = ex == 1 ? fixtures::example1()
                              : ex == 2 ? fixtures::example2()
                                        : scale_to_monic(fixtures::example3()).curve.coeffs();
            const PadicScalar F = HyperellipticCurve(coeffs).padic(out.prime, out.N).evaluate(c.point.x);
            CHECK(agree(y2, F, vanishing_floor(out.prime, out.N, out.M)));
            const PadicPoint iq = involution(c.point);
            CHECK(std::any_of(pts.begin(), pts.end(), [&](const ClassifiedPoint& o) {
                return !o.point.infinity && agree(o.point.x, iq.x, 14) && agree(o.point.y, iq.y, 14);
            }));
        }
    }
}

TEST_CASE("seeds do not change the answer")
{
    const HyperellipticCurve C(fixtures::example1());
    const auto out = run_chabauty(C, {});
    CHECK(out.rational_points() == cached_run(1).rational_points());
    CHECK(out.higher_torsion.empty());
}

TEST_CASE("another prime gives the same points")
{
    const HyperellipticCurve C(fixtures::example1());
    ChabautyConfig cfg;
    cfg.prime = 11;
    const auto out = run_chabauty(C, search_rational_points(C, 1000), cfg);
    CHECK(out.prime == 11);
    CHECK(out.N == 26);
    CHECK(out.rational_points() == cached_run(1).rational_points());
    CHECK(out.two_torsion.empty());
    CHECK(out.higher_torsion.empty());
}

TEST_CASE("doubled precision gives the same points")
{
    const HyperellipticCurve C(fixtures::example1());
    ChabautyConfig cfg;
    cfg.precision = 36;
    cfg.series_order = 30;
    const auto out = run_chabauty(C, search_rational_points(C, 1000), cfg);
    CHECK(out.N == 36);
    CHECK(out.prime == 7);
    CHECK(vanishing_floor(7, 36, 30) == 30);
    CHECK(out.rational_points() == cached_run(1).rational_points());
    CHECK(out.higher_torsion.empty());
}

TEST_CASE("disc series")
{
    const HyperellipticCurve C(fixtures::example2());
    const unsigned p = 7;
    const int N = 18, M = 15;
    const auto fa = frobenius_action(C, p, N);
    for (const FpPoint& disc : fp_points_up_to_involution(C, p)) {
        const DiscSeries ds = disc_series(C, fa, disc, {RationalPoint::at_infinity()}, M);
        REQUIRE(ds.f.size() == 3);
        for (int i = 0; i < 3; ++i) {
            const auto& f = ds.f[static_cast<std::size_t>(i)];
            CHECK(agree(f[0], ds.offsets[static_cast<std::size_t>(i)], N - 2));
            if (disc.infinity)
                continue;
            // d f_i / dt is the differential in the chart
            const LaurentSeries w = ds.chart.differential(i);
            REQUIRE(w.shift == 0);
            const auto df = f.derivative();
            for (int k = 0; k + 1 < M; ++k)
                CHECK(agree(df[static_cast<std::size_t>(k)], w.body[static_cast<std::size_t>(k)], N - 4));
        }
        if (disc.infinity || disc.y == 0)
            continue;
        // at another point of the disc the series agrees with the Coleman integral from oo
        const PadicScalar t = PadicScalar::from_integer(p, 7 * 3, N);
        const PadicPoint Q = ds.chart.point_at(t);
        const auto want = integral_functional(C, fa, Q);
        for (int i = 0; i < 3; ++i)
            CHECK(agree(ds.f[static_cast<std::size_t>(i)].evaluate(t), want[static_cast<std::size_t>(i)], N - 4));
    }
}

TEST_CASE("common zeros of identical series")
{
    const HyperellipticCurve C(fixtures::example1());
    const unsigned p = 7;
    const auto fa = frobenius_action(C, p, 18);
    DiscSeries ds = disc_series(C, fa, FpPoint::affine(0, 3), {}, 15);
    for (auto& f : ds.f) {
        f = PadicPowerSeries::zero(p, 15, 20);
        f[1] = PadicScalar::from_integer(p, 1, 20);
    }
    const CommonZeros cz = common_zeros(ds, p, 18, 15);
    CHECK(cz.series_index == 0);
    REQUIRE(cz.parameters.size() == 1);
    CHECK(cz.parameters[0].is_zero_to_precision());
    CHECK(agree(cz.points[0].x, ds.base.x, 16));

    // t^2 in every slot has a repeated root
    for (auto& f : ds.f) {
        f = PadicPowerSeries::zero(p, 15, 20);
        f[2] = PadicScalar::from_integer(p, 1, 20);
    }
    CHECK_THROWS_AS(common_zeros(ds, p, 18, 15), Error);
}

TEST_CASE("bad reduction escalates")
{
    const HyperellipticCurve C = scale_to_monic(fixtures::example3()).curve;
    ChabautyConfig cfg;
    cfg.prime = 5; // divides the discriminant
    const auto out = run_chabauty(C, search_rational_points(C, 1000), cfg);
    CHECK(out.escalations >= 1);
    CHECK(out.prime == 7);
    REQUIRE(!out.escalation_reasons.empty());
    CHECK(out.escalation_reasons[0].find("p=5") == 0);
    CHECK(out.rational_points() == cached_run(3).rational_points());

    cfg.prime = 3;
    CHECK(run_chabauty(HyperellipticCurve(fixtures::example1()), {}, cfg).prime == 7);
}
