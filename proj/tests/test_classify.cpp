#include <doctest.h>

#include <cmath>
#include <random>

#include "ck/classify.hpp"
#include "fixtures.hpp"

using namespace ck;

namespace {

std::vector<mpq_class> to_q(const std::vector<long>& c)
{
    std::vector<mpq_class> out;
    for (long x : c)
        out.emplace_back(x);
    return out;
}

std::vector<mpz_class> zs(std::initializer_list<long> xs)
{
    std::vector<mpz_class> out;
    for (long x : xs)
        out.emplace_back(x);
    return out;
}

// Sum of random points, as a random element of J(F_p).
MumfordDivisor random_divisor(const HyperellipticCurve& C, unsigned p, std::mt19937& rng)
{
    const auto pts = enumerate_fp_points(C, p);
    const FpPoly F = C.reduce(p);
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    MumfordDivisor D = MumfordDivisor::identity(p);
    for (int k = 0; k < 3; ++k)
        D = cantor_compose_reduce(D, MumfordDivisor::from_point(pts[pick(rng)], p), F, C.genus());
    return D;
}

} // namespace

TEST_CASE("rational reconstruction")
{
    const unsigned p = 7;
    CHECK(*rational_reconstruct(PadicScalar::from_integer(p, 32, 18)) == 32);
    CHECK(*rational_reconstruct(PadicScalar::from_rational(p, mpq_class(-1, 8), 18)) == mpq_class(-1, 8));
    CHECK(*rational_reconstruct(PadicScalar::zero(p, 18)) == 0);
    CHECK(*rational_reconstruct(PadicScalar::from_rational(p, mpq_class(3, 49), 18)) == mpq_class(3, 49));
    CHECK(*rational_reconstruct(PadicScalar::from_rational(p, mpq_class(-98, 5), 18)) == mpq_class(-98, 5));
    // a unit that is no small fraction
    CHECK(!rational_reconstruct(teichmuller_lift(p, 3, 18)).has_value());

    std::mt19937 rng(1);
    std::uniform_int_distribution<long> d(-1000000, 1000000);
    int ok = 0;
    for (int i = 0; i < 1000; ++i) {
        long n = d(rng), m = d(rng);
        if (m == 0 || m % 7 == 0)
            m = 1;
        const mpq_class q = [&] { mpq_class r(n, m); r.canonicalize(); return r; }();
        const auto r = rational_reconstruct(PadicScalar::from_rational(p, q, 18));
        ok += r && *r == q;
    }
    CHECK(ok == 1000);
}

TEST_CASE("point reconstruction")
{
    const HyperellipticCurve C(fixtures::example1());
    const auto R = RationalPoint::affine(32, 0);
    CHECK(*reconstruct_point(C, to_padic(R, 7, 18)) == R);
    CHECK(*reconstruct_point(C, PadicPoint::at_infinity()) == RationalPoint::at_infinity());
    const auto m3 = scale_to_monic(fixtures::example3());
    for (const auto& P : search_rational_points(m3.curve, 600))
        CHECK(*reconstruct_point(m3.curve, to_padic(P, 7, 18)) == P);
    CHECK(!reconstruct_point(C, lift_point(FpPoint::affine(0, 4), C, 7, 18)).has_value());
}

TEST_CASE("algebraic dependency")
{
    const unsigned p = 7;
    CHECK(*algebraic_dependency(PadicScalar::from_rational(p, mpq_class(-1, 8), 18)) == zs({1, 8}));
    CHECK(*algebraic_dependency(PadicScalar::from_integer(p, 5, 18)) == zs({-5, 1}));
    const PadicScalar r2 = hensel_sqrt(PadicScalar::from_integer(p, 2, 18), 3);
    CHECK(*algebraic_dependency(r2) == zs({-2, 0, 1}));
    // y of the order-18 points: 2^22 y^2 + 3, which needs more digits than its height suggests at N = 18
    const HyperellipticCurve C2(fixtures::example2());
    const PadicScalar y2 = C2.padic(p, 32).evaluate(PadicScalar::from_rational(p, mpq_class(-1, 8), 32));
    const PadicScalar y = hensel_sqrt(y2, static_cast<unsigned>(sqrt_mod(y2.residue(), p)));
    std::vector<mpz_class> want{3, 0, mpz_class(1) << 22};
    CHECK(*algebraic_dependency(y) == want);
    // 3 generates F_7^*, so its Teichmuller lift is a primitive sixth root of unity
    CHECK(*algebraic_dependency(teichmuller_lift(p, 3, 18)) == zs({1, -1, 1}));
    CHECK(*algebraic_dependency(teichmuller_lift(p, 2, 18)) == zs({1, 1, 1}));
    // 18 arbitrary digits
    CHECK(!algebraic_dependency(PadicScalar::from_integer(p, mpz_class("1234567890123456"), 18)).has_value());
    CHECK(*algebraic_dependency(PadicScalar::from_rational(p, mpq_class(5, 49), 18)) == zs({-5, 49}));

    // relations found agree with reconstruction and actually vanish
    std::mt19937 rng(9);
    std::uniform_int_distribution<long> d(-300, 300);
    for (int i = 0; i < 200; ++i) {
        long n = d(rng), m = std::abs(d(rng)) + 1;
        if (m % 7 == 0)
            ++m;
        mpq_class q(n, m);
        q.canonicalize();
        const auto a = PadicScalar::from_rational(p, q, 18);
        const auto g = algebraic_dependency(a);
        REQUIRE(g.has_value());
        REQUIRE(g->size() == 2);
        CHECK(mpq_class(-(*g)[0], (*g)[1]) == q);
        CHECK(*rational_reconstruct(a) == q);
    }
    for (int i = 0; i < 100; ++i) {
        // x^2 - b x - c with a root in Z_7
        const long b = d(rng) % 20, c = d(rng) % 20;
        const auto disc = b * b + 4 * c;
        if (disc <= 0 || euler_criterion(static_cast<std::uint64_t>(disc % 7), 7) != 1)
            continue;
        const long sq = static_cast<long>(std::sqrt(double(disc)));
        if (sq * sq == disc)
            continue;
        const auto root2 = hensel_sqrt(PadicScalar::from_integer(p, disc, 20), static_cast<unsigned>(sqrt_mod(static_cast<std::uint64_t>(disc % 7), 7)));
        const auto a = (root2 + PadicScalar::from_integer(p, b, 20)).divided(2);
        const auto g = algebraic_dependency(a);
        REQUIRE(g.has_value());
        CHECK(*g == zs({-c, -b, 1}));
    }
}

TEST_CASE("two-torsion extras")
{
    // F = (x^2 - 2) G with 2 a square mod 7, so (sqrt 2, 0) is a non-rational Weierstrass point
    const std::vector<long> F{-6, -2, 3, 1, 4, -2, -2, 1}; // (x^2 - 2)(x^5 - 2x^4 + x + 3)
    const HyperellipticCurve C(to_q(F));
    REQUIRE(C.has_good_reduction(7));
    const PadicScalar r = hensel_sqrt(PadicScalar::from_integer(7, 2, 18), 3);
    CHECK(C.padic(7, 18).evaluate(r).is_zero_to_precision());
    const PadicPoint W = PadicPoint::affine(r, PadicScalar::zero(7, 18));
    CHECK(is_two_torsion_extra(W));
    CHECK(!reconstruct_point(C, W).has_value());
    const auto fa = frobenius_action(C, 7, 12);
    const auto c = classify_point(C, fa, W, 9);
    CHECK(c.verdict == Verdict::TwoTorsion);
    CHECK(c.order == 2);
    CHECK(*c.x_minpoly == zs({-2, 0, 1}));

    const HyperellipticCurve C1(fixtures::example1());
    CHECK(!is_two_torsion_extra(lift_point(FpPoint::affine(0, 4), C1, 7, 18)));
    CHECK(!is_two_torsion_extra(PadicPoint::at_infinity()));
    // a rational Weierstrass point classifies as rational
    const auto fa1 = frobenius_action(C1, 7, 12);
    const auto c1 = classify_point(C1, fa1, to_padic(RationalPoint::affine(32, 0), 7, 18), 9);
    CHECK(c1.verdict == Verdict::Rational);
    CHECK(c1.order == 2);
}

TEST_CASE("Cantor group law")
{
    std::mt19937 rng(3);
    const HyperellipticCurve C(fixtures::example1());
    const unsigned p = 7;
    const FpPoly F = C.reduce(p);
    const int g = C.genus();
    const auto O = MumfordDivisor::identity(p);
    for (int i = 0; i < 30; ++i) {
        const auto a = random_divisor(C, p, rng);
        const auto b = random_divisor(C, p, rng);
        const auto c = random_divisor(C, p, rng);
        CHECK(is_valid_divisor(a, F, g));
        CHECK(cantor_compose_reduce(a, O, F, g) == a);
        CHECK(cantor_compose_reduce(a, cantor_negate(a), F, g).is_identity());
        CHECK(cantor_compose_reduce(a, b, F, g) == cantor_compose_reduce(b, a, F, g));
        CHECK(cantor_compose_reduce(cantor_compose_reduce(a, b, F, g), c, F, g) ==
              cantor_compose_reduce(a, cantor_compose_reduce(b, c, F, g), F, g));
        CHECK(is_valid_divisor(cantor_compose_reduce(a, b, F, g), F, g));
    }
    // (4, 0) is a Weierstrass point mod 7
    const auto W = MumfordDivisor::from_point(FpPoint::affine(4, 0), p);
    CHECK(!W.is_identity());
    CHECK(cantor_compose_reduce(W, W, F, g).is_identity());
    CHECK(divisor_order(W, 380, F, g) == 2);
}

TEST_CASE("orders divide the group order")
{
    std::mt19937 rng(11);
    for (const auto& coeffs : {fixtures::example1(), fixtures::example2()}) {
        const HyperellipticCurve C(coeffs);
        const unsigned p = 7;
        const auto fa = frobenius_action(C, p, 8);
        const mpz_class J = jacobian_order_fp(fa);
        const FpPoly F = C.reduce(p);
        for (int i = 0; i < 15; ++i) {
            const auto D = random_divisor(C, p, rng);
            const mpz_class n = divisor_order(D, J, F, C.genus());
            CHECK(J % n == 0);
            CHECK(cantor_multiply(D, n, F, C.genus()).is_identity());
            for (const auto& [q, e] : factor(n))
                CHECK(!cantor_multiply(D, n / q, F, C.genus()).is_identity());
        }
    }
}

TEST_CASE("torsion order of the order-18 pair")
{
    const HyperellipticCurve C(fixtures::example2());
    const unsigned p = 7;
    const auto fa = frobenius_action(C, p, 18);
    const PadicScalar x = PadicScalar::from_rational(p, mpq_class(-1, 8), 18);
    const PadicScalar y2 = C.padic(p, 18).evaluate(x);
    const PadicScalar y = hensel_sqrt(y2, static_cast<unsigned>(sqrt_mod(y2.residue(), p)));
    const auto t = torsion_order(PadicPoint::affine(x, y), C, fa);
    CHECK(t.order == 18);
    CHECK(!t.p_divides_order);
    CHECK(torsion_order(PadicPoint::at_infinity(), C, fa).order == 1);
}

TEST_CASE("factor and printing")
{
    const auto f = factor(432);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == std::pair<mpz_class, int>(2, 4));
    CHECK(f[1] == std::pair<mpz_class, int>(3, 3));
    CHECK(polynomial_to_string(zs({1, 8})) == "8*x + 1");
    CHECK(polynomial_to_string(zs({-2, 0, 1})) == "x^2 - 2");
    CHECK(polynomial_to_string(zs({3, 0, 4194304}), "y") == "4194304*y^2 + 3");
}
