#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ck/chabauty.hpp"
#include "ck/curve.hpp"

namespace ck {

// One input line: `[c0,c1,...,c7]`, rational coefficients in ascending order.
struct RawCurve {
    int line = 0;
    std::vector<mpq_class> coeffs;
};

// Parses `[a,b,...]`; whitespace is ignored. Throws ParseError.
std::vector<mpq_class> parse_coefficients(std::string_view text);

// Blank lines and `#` comments are skipped. Each curve is validated after
// monic rescaling; a bad line throws ParseError naming its line number.
std::vector<RawCurve> parse_curves(std::istream& in);
std::vector<RawCurve> ingest(const std::string& path);

// `inf`, `X,Y` with rational X and Y, or `X,~R`: x = X and y the root of
// F(X) congruent to R mod p.
PadicPoint parse_point(std::string_view text, const HyperellipticCurve& C, unsigned p, int prec);

struct BatchConfig {
    long height_bound = 1000;
    std::optional<unsigned> prime;
    std::optional<int> precision;
    unsigned jobs = 1;
    unsigned prime_cap = 100; // give up on a curve past this prime
};

struct PointRecord {
    RationalPoint point;  // original model
    RationalPoint monic;  // monic model
    double height = 0;    // global height on the original model
};

struct ExtraRecord {
    std::string kind; // "two-torsion" or "higher-torsion"
    std::string x;    // p-adic digits on the monic model
    std::string y;
    std::string x_minpoly;
    std::string y_minpoly;
    std::string order;
    bool p_divides_order = false;
};

struct DiscRecord {
    std::string disc;
    bool seeded = false;
    std::vector<std::string> zeros; // monic model
};

struct CurveRecord {
    int line = 0;
    std::vector<mpq_class> coeffs;       // as given
    std::vector<mpq_class> monic_coeffs; // after (u, v) = (a x, a^g y)
    mpq_class scale = 1;
    unsigned prime = 0;
    int N = 0;
    int M = 0;
    std::vector<PointRecord> points;
    std::vector<ExtraRecord> extras;
    std::string fp_points;
    std::string jacobian_order;
    bool stoll_sharp = false; // #C(Q) = #C(F_p)
    int escalations = 0;
    std::vector<std::string> escalation_reasons;
    std::vector<DiscRecord> discs;
    double search_seconds = 0;
    double chabauty_seconds = 0;
};

struct Failure {
    int line = 0;
    std::string kind;
    std::string message;
};

struct BatchReport {
    std::vector<CurveRecord> records; // input order
    std::vector<Failure> failures;
    std::map<int, int> histogram;     // number of rational points -> curves
    double max_height = 0;
    std::vector<std::string> max_height_points; // "line: point"
};

CurveRecord process_curve(const RawCurve& raw, const BatchConfig& cfg);
BatchReport run_batch(const std::vector<RawCurve>& curves, const BatchConfig& cfg);

enum class ReportFormat { Json, Csv, Text };

struct EmitOptions {
    // Wall-clock timings break byte-for-byte reproducibility, so they are opt-in.
    bool timings = false;
};

std::string emit_report(const BatchReport& report, ReportFormat format, const EmitOptions& opts = {});

// Scalar fields of each record, as emitted in json (records[i] minus lists)
// or recovered from csv; the two agree on any report.
std::string csv_to_json(std::string_view csv);
std::string json_scalars(std::string_view json);

// Frobenius matrix, characteristic polynomial and point counts.
std::string frobenius_json(const HyperellipticCurve& C, unsigned p, int N);

} // namespace ck
