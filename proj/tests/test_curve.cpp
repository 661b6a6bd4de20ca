#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ck/curve.hpp"
#include "fixtures.hpp"

using namespace ck;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

std::vector<FpPoint> brute_points(const std::vector<long>& f, unsigned p)
{
    std::vector<FpPoint> out{FpPoint::at_infinity()};
    for (std::uint64_t x = 0; x < p; ++x)
        for (std::uint64_t y = 0; y < p; ++y) {
            long acc = 0;
            for (auto it = f.rbegin(); it != f.rend(); ++it)
                acc = ((acc * static_cast<long>(x) + *it) % static_cast<long>(p) + p) % p;
            if (static_cast<long>(y * y % p) == acc)
                out.push_back(FpPoint::affine(x, y));
        }
    return out;
}

// y(t)^2 - F(x(t)) as a series on finite charts, t^(2(2g+1)) (y^2 - F(x)) at infinity.
void check_chart_identity(const HyperellipticCurve& C, const LocalChart& ch)
{
    const unsigned p = ch.prime();
    const int M = ch.order();
    const PadicPoly F = C.padic(p, ch.precision());
    const auto& xs = ch.x().body;
    const auto& ys = ch.y().body;
    if (ch.kind() == ChartKind::Infinity) {
        // w^2 = sum c_(2g+1-j) t^(2j)
        auto w2 = ys * ys;
        const int g = C.genus();
        for (int n = 0; n <= M; ++n) {
            PadicScalar expect = PadicScalar::zero(p, ch.precision());
            if (n % 2 == 0 && n / 2 <= 2 * g + 1)
                expect = F[static_cast<std::size_t>(2 * g + 1 - n / 2)];
            CHECK((w2[static_cast<std::size_t>(n)] - expect).is_zero() == Tri::Unknown);
        }
        return;
    }
    PadicPowerSeries Fx = PadicPowerSeries::constant(F[static_cast<std::size_t>(F.degree())], M);
    for (int k = F.degree() - 1; k >= 0; --k)
        Fx = Fx * xs + PadicPowerSeries::constant(F[static_cast<std::size_t>(k)], M);
    auto diff = ys * ys - Fx;
    for (int n = 0; n <= M; ++n)
        CHECK(diff[static_cast<std::size_t>(n)].is_zero() == Tri::Unknown);
}

} // namespace

TEST_CASE("validate")
{
    CHECK_NOTHROW(HyperellipticCurve(fixtures::q({"1", "0", "0", "0", "0", "0", "0", "1"})));
    CHECK(kind_of([] { HyperellipticCurve(fixtures::q({"0", "0", "0", "0", "0", "0", "0", "1"})); }) ==
          ErrorKind::SingularModel);
    CHECK(kind_of([] { HyperellipticCurve(fixtures::q({"1", "0", "0", "0", "0", "0", "0", "2"})); }) ==
          ErrorKind::NotMonic);
    CHECK(kind_of([] { HyperellipticCurve(fixtures::q({"1", "0", "0", "0", "0", "0", "1"})); }) ==
          ErrorKind::EvenDegree);
    CHECK_NOTHROW(HyperellipticCurve(fixtures::example1()));
    CHECK_NOTHROW(HyperellipticCurve(fixtures::example2()));
}

TEST_CASE("scale_to_monic")
{
    auto id = scale_to_monic(fixtures::example1());
    CHECK(id.is_identity());
    CHECK(id.curve.coeffs() == fixtures::example1());

    auto m3 = scale_to_monic(fixtures::example3());
    CHECK(m3.curve.coeffs() == fixtures::q({"262144", "131072", "24576", "2048", "-448", "-128", "0", "1"}));
    const auto listed = std::vector<RationalPoint>{
        RationalPoint::at_infinity(),          RationalPoint::affine(0, 1),  RationalPoint::affine(0, -1),
        RationalPoint::affine(1, 0),           RationalPoint::affine(-1, 0), RationalPoint::affine(mpq_class(-1, 2), 0)};
    for (const auto& P : listed) {
        auto U = m3.to_monic(P);
        CHECK(m3.curve.contains(U));
        CHECK(m3.from_monic(U) == P);
    }
    CHECK(m3.to_monic(RationalPoint::affine(0, 1)) == RationalPoint::affine(0, 512));

    auto m4 = scale_to_monic(fixtures::q({"4", "0", "0", "0", "0", "0", "0", "4"}));
    CHECK(m4.curve.coeffs() == fixtures::q({"16384", "0", "0", "0", "0", "0", "0", "1"}));
    CHECK(m4.to_monic(RationalPoint::affine(-1, 0)) == RationalPoint::affine(-4, 0));
}

TEST_CASE("scale_to_monic point maps are inverse bijections")
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<mpq_class> c;
        for (int k = 0; k < 7; ++k)
            c.emplace_back(static_cast<long>(rng() % 21) - 10);
        c.emplace_back(static_cast<long>(rng() % 9) + 2, static_cast<long>(rng() % 3) + 1);
        c.back().canonicalize();
        MonicModel m;
        try {
            m = scale_to_monic(c);
        } catch (const Error&) {
            continue;
        }
        for (int k = 0; k < 5; ++k) {
            RationalPoint P = RationalPoint::affine(mpq_class(static_cast<long>(rng() % 200) - 100, 1 + static_cast<long>(rng() % 50)),
                                                    mpq_class(static_cast<long>(rng() % 200) - 100, 1 + static_cast<long>(rng() % 50)));
            P.x.canonicalize();
            P.y.canonicalize();
            CHECK(m.from_monic(m.to_monic(P)) == P);
            CHECK(m.to_monic(m.from_monic(P)) == P);
        }
    }
}

TEST_CASE("good_reduction_prime")
{
    CHECK(good_reduction_prime(HyperellipticCurve(fixtures::example1())) == 7);
    CHECK(good_reduction_prime(HyperellipticCurve(fixtures::example2())) == 7);
    // Eisenstein at 7 and 11, so both divide the discriminant
    HyperellipticCurve C(fixtures::q({"77", "77", "0", "0", "0", "0", "0", "1"}));
    const mpz_class d = C.discriminant().get_num();
    CHECK(d % 7 == 0);
    CHECK(d % 11 == 0);
    CHECK(d % 13 != 0);
    CHECK(good_reduction_prime(C, 7) == 13);
}

TEST_CASE("enumerate_fp_points")
{
    HyperellipticCurve C1(fixtures::example1());
    auto pts = enumerate_fp_points(C1, 7);
    std::vector<FpPoint> expect{FpPoint::at_infinity(), FpPoint::affine(0, 3), FpPoint::affine(0, 4),
                                FpPoint::affine(1, 2), FpPoint::affine(1, 5), FpPoint::affine(2, 1),
                                FpPoint::affine(2, 6), FpPoint::affine(4, 0), FpPoint::affine(6, 2),
                                FpPoint::affine(6, 5)};
    CHECK(pts == expect);
    CHECK(fp_points_up_to_involution(C1, 7).size() == 6);

    auto m3 = scale_to_monic(fixtures::example3());
    auto pts3 = enumerate_fp_points(m3.curve, 7);
    // u = 8x = x and v = 512y = y mod 7
    std::vector<FpPoint> expect3{FpPoint::at_infinity(), FpPoint::affine(0, 1), FpPoint::affine(0, 6),
                                 FpPoint::affine(1, 0),  FpPoint::affine(3, 0), FpPoint::affine(6, 0)};
    CHECK(pts3 == expect3);

    HyperellipticCurve C(fixtures::q({"1", "0", "0", "0", "0", "0", "0", "1"}));
    for (unsigned p : {11U, 13U, 17U}) {
        auto a = enumerate_fp_points(C, p);
        auto b = brute_points({1, 0, 0, 0, 0, 0, 0, 1}, p);
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }
    CHECK_THROWS(enumerate_fp_points(C, 7));
}

TEST_CASE("point count bound and lifting round trip")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<mpq_class> c;
        for (int k = 0; k < 7; ++k)
            c.emplace_back(static_cast<long>(rng() % 41) - 20);
        c.emplace_back(1);
        if (rational_discriminant(c) == 0)
            continue;
        HyperellipticCurve C(c);
        for (unsigned p : {7U, 11U, 13U}) {
            if (!C.has_good_reduction(p))
                continue;
            auto pts = enumerate_fp_points(C, p);
            CHECK(pts.size() <= 2 * p + 2);
            for (const auto& P : pts) {
                if (P.infinity)
                    continue;
                auto L = lift_point(P, C, p, 12);
                CHECK(reduce_point(L) == P);
                CHECK(C.residual(L).valuation_at_least(12) == Tri::True);
            }
        }
    }
}

TEST_CASE("lift_point")
{
    HyperellipticCurve C1(fixtures::example1());
    auto W = lift_point(FpPoint::affine(4, 0), C1, 7, 18);
    CHECK(W.x.lift() == 32);
    CHECK(W.y.is_zero() == Tri::Unknown);
    auto P = lift_point(FpPoint::affine(0, 4), C1, 7, 18);
    CHECK(P.x.lift() == 0);
    CHECK(P.y.residue() == 4);
    auto f0 = PadicScalar::from_integer(7, mpz_class("-103079215104"), 18);
    CHECK((P.y * P.y - f0).valuation_at_least(18) == Tri::True);
}

TEST_CASE("involution")
{
    CHECK(involution(FpPoint::affine(0, 4), 7) == FpPoint::affine(0, 3));
    CHECK(involution(RationalPoint::at_infinity()).infinity);
    auto P = RationalPoint::affine(mpq_class(-1, 2), 3);
    CHECK(involution(involution(P)) == P);
    HyperellipticCurve C1(fixtures::example1());
    std::vector<FpPoint> fixed;
    for (const auto& Q : enumerate_fp_points(C1, 7))
        if (involution(Q, 7) == Q)
            fixed.push_back(Q);
    CHECK(fixed == std::vector<FpPoint>{FpPoint::at_infinity(), FpPoint::affine(4, 0)});
}

TEST_CASE("search_rational_points")
{
    HyperellipticCurve C1(fixtures::example1());
    auto pts = search_rational_points(C1, 1000);
    CHECK(pts == std::vector<RationalPoint>{RationalPoint::at_infinity(), RationalPoint::affine(32, 0)});

    auto m3 = scale_to_monic(fixtures::example3());
    auto found = search_rational_points(m3.curve, 1000);
    std::vector<RationalPoint> back;
    for (const auto& P : found)
        back.push_back(m3.from_monic(P));
    std::sort(back.begin(), back.end());
    std::vector<RationalPoint> expect{RationalPoint::at_infinity(),    RationalPoint::affine(-1, 0),
                                      RationalPoint::affine(mpq_class(-1, 2), 0), RationalPoint::affine(0, -1),
                                      RationalPoint::affine(0, 1),     RationalPoint::affine(1, 0)};
    CHECK(back == expect);

    CHECK(search_rational_points(C1, 0) == std::vector<RationalPoint>{RationalPoint::at_infinity()});
    HyperellipticCurve C2(fixtures::example2());
    CHECK(search_rational_points(C2, 300) == std::vector<RationalPoint>{RationalPoint::at_infinity()});
}

TEST_CASE("global_height")
{
    CHECK(global_height(RationalPoint::affine(1, 0)) == doctest::Approx(0.0));
    CHECK(global_height(RationalPoint::affine(32, 0)) == doctest::Approx(std::log(32.0)));
    CHECK(global_height(RationalPoint::affine(mpq_class(-1, 2), 0)) == doctest::Approx(std::log(2.0)));
    CHECK(global_height(RationalPoint::at_infinity()) == 0.0);
}

TEST_CASE("local charts satisfy the curve equation")
{
    HyperellipticCurve C1(fixtures::example1());
    const int M = 15;
    for (const auto& P : fp_points_up_to_involution(C1, 7)) {
        auto ch = LocalChart::for_disc(C1, 7, 18, P, M);
        check_chart_identity(C1, ch);
    }
    auto m3 = scale_to_monic(fixtures::example3());
    for (const auto& P : enumerate_fp_points(m3.curve, 11)) {
        auto ch = LocalChart::for_disc(m3.curve, 11, 20, P, 23);
        check_chart_identity(m3.curve, ch);
    }
}

TEST_CASE("chart valuations")
{
    HyperellipticCurve C1(fixtures::example1());
    auto W = LocalChart::for_disc(C1, 7, 18, FpPoint::affine(4, 0), 15);
    CHECK(W.kind() == ChartKind::FiniteWeierstrass);
    CHECK(W.center().x.lift() == 32);
    const auto& xs = W.x().body;
    CHECK((xs[0] - PadicScalar::from_integer(7, 32, 18)).is_zero() == Tri::Unknown);
    CHECK(xs[1].is_zero() == Tri::Unknown);
    CHECK(xs[2].is_zero() == Tri::False);

    auto I = LocalChart::for_disc(C1, 7, 18, FpPoint::at_infinity(), 15);
    CHECK(I.kind() == ChartKind::Infinity);
    auto w2 = I.differential(2);
    CHECK(w2.shift == 0);
    CHECK(w2.body[0].is_zero() == Tri::False);
    auto w0 = I.differential(0);
    CHECK(w0.shift == 4);
    CHECK(w0.body[0].is_zero() == Tri::False);
}

TEST_CASE("chart parameters round trip")
{
    HyperellipticCurve C1(fixtures::example1());
    const unsigned p = 7;
    std::mt19937_64 rng(4);
    for (const auto& P : enumerate_fp_points(C1, p)) {
        auto ch = LocalChart::for_disc(C1, p, 18, P, 15);
        for (int trial = 0; trial < 5; ++trial) {
            auto t = PadicScalar::from_integer(p, static_cast<long>(rng() % 2400 + 1) * 7, 18);
            auto Q = ch.point_at(t);
            // relative to y^2, since v(y) < 0 on the disc at infinity
            auto rel = C1.residual(Q) / (Q.y * Q.y);
            CHECK(rel.valuation_at_least(12) == Tri::True);
            CHECK(reduce_point(Q) == (P.infinity ? FpPoint::at_infinity() : P));
            auto t2 = ch.parameter(Q);
            CHECK((t2 - t).valuation_at_least(14) == Tri::True);
        }
    }
    auto ch = LocalChart::for_disc(C1, p, 18, FpPoint::affine(0, 4), 15);
    CHECK_THROWS_AS(ch.parameter(lift_point(FpPoint::affine(1, 5), C1, p, 18)), Error);
}
