#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ck/classify.hpp"
#include "ck/cohomology.hpp"
#include "ck/curve.hpp"

namespace ck {

// (N, M): p-adic and t-adic precision for prime p.
std::pair<int, int> precisions(unsigned p);

/// The integrals f_i = int_oo^z omega_i, i < g, restricted to one residue disc.
struct DiscSeries {
    FpPoint disc;
    PadicPoint base;     // point at t = 0
    bool seeded = false; // base is a known rational point
    LocalChart chart;
    std::vector<PadicPowerSeries> f;   // f_i(t), order M
    std::vector<PadicScalar> offsets;  // f_i(0) = int_oo^base omega_i
};

DiscSeries disc_series(const HyperellipticCurve& C, const FrobeniusAction& fa, const FpPoint& disc,
                       const std::vector<RationalPoint>& known, int M);

struct CommonZeros {
    int series_index = -1; // the f_i with squarefree truncation whose roots were taken
    std::vector<PadicScalar> parameters;
    std::vector<PadicPoint> points;
};

// Throws AllSeriesDegenerate when every truncation has a repeated root.
CommonZeros common_zeros(const DiscSeries& ds, unsigned p, int N, int M);

// Digits a value must vanish to: N less a small margin, and no more than the
// truncation at t^M can certify.
int vanishing_floor(unsigned p, int N, int M);

struct DiscLog {
    FpPoint disc;
    bool seeded = false;
    int series_index = -1;
    std::vector<PadicPoint> zeros;
};

struct ChabautyConfig {
    std::optional<unsigned> prime;
    std::optional<int> precision;    // N
    std::optional<int> series_order; // M
    unsigned prime_cap = 100;
};

struct ChabautyOutput {
    std::vector<ClassifiedPoint> rational;
    std::vector<ClassifiedPoint> two_torsion;
    std::vector<ClassifiedPoint> higher_torsion;
    unsigned prime = 0;
    int N = 0;
    int M = 0;
    int escalations = 0;
    std::vector<std::string> escalation_reasons;
    mpz_class fp_points;       // #C(F_p)
    mpz_class jacobian_order;  // #J(F_p)
    std::vector<DiscLog> discs;

    std::vector<RationalPoint> rational_points() const;
};

ChabautyOutput run_chabauty(const HyperellipticCurve& C, const std::vector<RationalPoint>& known, const ChabautyConfig& cfg = {});

} // namespace ck
