#include <doctest.h>

#include <json.hpp>

#include <sstream>

#include "ck/pipeline.hpp"
#include "fixtures.hpp"

using namespace ck;

namespace {

const char* kExamples = R"(# y^2 = F(x), coefficients c0..c7 ascending
[-103079215104,59055800320,-13656653824,1613758464,-101220352,3134464,-37024,1]
[-1/4194304,-1/65536,-27/65536,-53/8192,-243/4096,-51/256,5/64,1]

[1,4,6,4,-7,-16,0,8]  # not monic
)";

std::vector<RawCurve> parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_curves(in);
}

const BatchReport& demo_report()
{
    static const BatchReport report = run_batch(parse(kExamples), BatchConfig{});
    return report;
}

std::string parse_error(const std::string& text)
{
    try {
        parse(text);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("ingest")
{
    CHECK(parse("").empty());
    CHECK(parse("# only a comment\n\n").empty());
    const auto curves = parse(kExamples);
    REQUIRE(curves.size() == 3);
    CHECK(curves[0].line == 2);
    CHECK(curves[0].coeffs == fixtures::example1());
    CHECK(curves[1].coeffs == fixtures::example2());
    CHECK(curves[2].line == 5);
    CHECK(curves[2].coeffs == fixtures::example3());
    CHECK(scale_to_monic(curves[2].coeffs).scale == 8);
    CHECK(parse(" [ 1 , 0,0, 0,0,0,0, +1 ] ")[0].coeffs == fixtures::q({"1", "0", "0", "0", "0", "0", "0", "1"}));

    CHECK(parse_error("[1,2,3,4,5,6,7,1]\n\n[1,2,x,4,5,6,7,1]\n").find("line 3") != std::string::npos);
    CHECK(parse_error("1,2,3,4,5,6,7,1]").find("line 1") != std::string::npos);
    CHECK(parse_error("[1,2,3,4,5,6,7,1/0]").find("line 1") != std::string::npos);
    CHECK(parse_error("[1,2,3,4,5,6,,1]") != "");
    CHECK(parse_error("[0,0,1,0,0,0,0,1]").find("SingularModel") != std::string::npos); // x^2 (x^5 + 1)
    CHECK(parse_error("[1,0,0,0,0,0,1]").find("EvenDegree") != std::string::npos);
    CHECK_THROWS_AS(ingest("/nonexistent/curves.txt"), Error);
    CHECK(ingest(CK_FIXTURE_DIR "/examples.txt").size() == 3);
}

TEST_CASE("point syntax")
{
    const HyperellipticCurve C(fixtures::example1());
    CHECK(parse_point("inf", C, 7, 10).infinity);
    const PadicPoint P = parse_point("32,0", C, 7, 10);
    CHECK(P.x.lift() == 32);
    const PadicPoint Q = parse_point("0, ~3", C, 7, 10);
    CHECK(Q.y.residue() == 3);
    CHECK(C.residual(Q).is_zero_to_precision());
    CHECK_THROWS_AS(parse_point("1,1", C, 7, 10), Error);   // not on the curve
    CHECK_THROWS_AS(parse_point("0,~2", C, 7, 10), Error);  // wrong square root
    CHECK_THROWS_AS(parse_point("nowhere", C, 7, 10), Error);
}

TEST_CASE("demo batch")
{
    const BatchReport& r = demo_report();
    CHECK(r.failures.empty());
    REQUIRE(r.records.size() == 3);
    CHECK(r.histogram == std::map<int, int>{{1, 1}, {2, 1}, {6, 1}});
    int total = 0;
    for (const auto& [n, c] : r.histogram)
        total += c;
    CHECK(total == static_cast<int>(r.records.size()));

    const CurveRecord& e1 = r.records[0];
    CHECK(e1.prime == 7);
    REQUIRE(e1.points.size() == 2);
    CHECK(e1.points[1].point == RationalPoint::affine(32, 0));
    CHECK(e1.fp_points == "10");
    CHECK(!e1.stoll_sharp);
    CHECK(e1.extras.empty());

    const CurveRecord& e2 = r.records[1];
    CHECK(e2.points.size() == 1);
    REQUIRE(e2.extras.size() == 2);
    CHECK(e2.extras[0].kind == "higher-torsion");
    CHECK(e2.extras[0].x_minpoly == "8*x + 1");
    CHECK(e2.extras[0].order == "18");

    const CurveRecord& e3 = r.records[2];
    CHECK(e3.scale == 8);
    CHECK(e3.fp_points == "6");
    CHECK(e3.stoll_sharp);
    std::vector<RationalPoint> pts;
    for (const auto& P : e3.points)
        pts.push_back(P.point);
    CHECK(pts == std::vector{RationalPoint::at_infinity(), RationalPoint::affine(-1, 0),
                             RationalPoint::affine(mpq_class(-1, 2), 0), RationalPoint::affine(0, -1),
                             RationalPoint::affine(0, 1), RationalPoint::affine(1, 0)});

    for (const auto& rec : r.records) {
        CHECK(std::stoul(rec.fp_points) >= rec.points.size());
        CHECK(rec.stoll_sharp == (std::stoul(rec.fp_points) == rec.points.size()));
        for (const auto& P : rec.points) {
            // original and monic models agree through the point map
            CHECK(scale_to_monic(rec.coeffs).to_monic(P.point) == P.monic);
            CHECK(P.height >= 0);
        }
    }
    CHECK(r.max_height == doctest::Approx(std::log(32.0)));
    CHECK(r.max_height_points == std::vector<std::string>{"2: (32,0)"});
}

TEST_CASE("empty batch")
{
    const BatchReport r = run_batch({}, BatchConfig{});
    CHECK(r.records.empty());
    CHECK(r.failures.empty());
    CHECK(r.histogram.empty());
    const auto j = nlohmann::json::parse(emit_report(r, ReportFormat::Json));
    CHECK(j["curves"] == 0);
}

TEST_CASE("forced bad prime escalates")
{
    BatchConfig cfg;
    cfg.prime = 5; // 5 divides the discriminant of the monic model
    const BatchReport r = run_batch({parse(kExamples)[2]}, cfg);
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].escalations >= 1);
    CHECK(r.records[0].prime == 7);
    CHECK(r.records[0].points.size() == 6);
}

TEST_CASE("per-curve failures do not stop the batch")
{
    BatchConfig cfg;
    cfg.precision = 3;
    cfg.prime_cap = 12;
    const auto curves = parse(kExamples);
    const BatchReport r = run_batch({curves[2], curves[0]}, cfg);
    CHECK(r.records.size() + r.failures.size() == 2);
    REQUIRE(!r.failures.empty());
    CHECK(r.failures[0].line == 5);
    const std::string text = emit_report(r, ReportFormat::Text);
    CHECK(text.find("failures:") != std::string::npos);
}

TEST_CASE("text report")
{
    const std::string text = emit_report(demo_report(), ReportFormat::Text);
    CHECK(text.find("  residue disc | common roots\n") != std::string::npos);
    CHECK(text.find("  inf          | inf\n") != std::string::npos);
    for (const char* d : {"(0,3)", "(1,2)", "(2,1)", "(6,2)"})
        CHECK(text.find("  " + std::string(d) + "        | no common roots\n") != std::string::npos);
    CHECK(text.find("  (4,0)        | (32,0)\n") != std::string::npos);
    CHECK(text.find("x min poly 8*x + 1, y min poly 4194304*y^2 + 3, order 18") != std::string::npos);
    CHECK(text.find("Stoll-sharp: yes") != std::string::npos);
}

TEST_CASE("json and csv")
{
    const std::string json = emit_report(demo_report(), ReportFormat::Json);
    const auto j = nlohmann::json::parse(json);
    CHECK(j["curves"] == 3);
    CHECK(j["histogram"].size() == 3);
    CHECK(j["histogram"][2]["rational_points"] == 6);
    CHECK(j["records"][0]["discs"].size() == 6);
    CHECK(!j["records"][0].contains("timings"));
    CHECK(nlohmann::json::parse(emit_report(demo_report(), ReportFormat::Json, {true}))["records"][0].contains("timings"));

    const std::string csv = emit_report(demo_report(), ReportFormat::Csv);
    CHECK(csv_to_json(csv) == json_scalars(json));
    CHECK(nlohmann::json::parse(csv_to_json(csv)).size() == 3);
    // emission is a pure function of the report
    CHECK(emit_report(demo_report(), ReportFormat::Json) == json);
}

TEST_CASE("parallel runs emit identical json")
{
    BatchConfig cfg;
    cfg.jobs = 3;
    const BatchReport r = run_batch(parse(kExamples), cfg);
    CHECK(emit_report(r, ReportFormat::Json) == emit_report(demo_report(), ReportFormat::Json));
}

TEST_CASE("frobenius dump")
{
    const HyperellipticCurve C(fixtures::example1());
    const auto j = nlohmann::json::parse(frobenius_json(C, 7, 10));
    CHECK(j["p"] == 7);
    CHECK(j["matrix"].size() == 6);
    CHECK(j["char_poly"].size() == 7);
    CHECK(j["fp_points"] == "10");
    CHECK(j["jacobian_order"] == "380");
    const HyperellipticCurve C3 = scale_to_monic(fixtures::example3()).curve;
    CHECK_THROWS_AS(frobenius_json(C3, 5, 10), Error);
}
