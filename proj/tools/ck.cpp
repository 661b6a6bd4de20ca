#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>

#include "ck/coleman.hpp"
#include "ck/pipeline.hpp"

using namespace ck;

namespace {

void setup_logging()
{
    auto logger = spdlog::stderr_color_mt("ck");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* lvl = std::getenv("CK_LOG"))
        spdlog::set_level(spdlog::level::from_str(lvl));
}

HyperellipticCurve monic_curve(const std::string& text)
{
    const auto coeffs = parse_coefficients(text);
    const MonicModel m = scale_to_monic(coeffs);
    if (!m.is_identity())
        throw Error(ErrorKind::NotMonic, "this command needs a monic model; its monic rescaling is " +
                                             m.curve.to_string());
    return m.curve;
}

} // namespace

int main(int argc, char** argv)
{
    setup_logging();
    CLI::App app{"Chabauty-Coleman rational points on rank-0 hyperelliptic curves"};
    app.require_subcommand(1);

    std::string input, format = "text";
    BatchConfig cfg;
    std::optional<unsigned> prime;
    std::optional<int> precision;
    bool timings = false;
    auto* run = app.add_subcommand("run", "process a file of curves");
    run->add_option("--input", input, "curve file, one [c0,...,c7] per line")->required();
    run->add_option("--height-bound", cfg.height_bound, "naive height bound for the point search")->capture_default_str();
    run->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
    run->add_option("--prime", prime, "start at this prime");
    run->add_option("--precision", precision, "p-adic precision N");
    run->add_option("--jobs", cfg.jobs, "curves processed in parallel")->check(CLI::PositiveNumber)->capture_default_str();
    run->add_flag("--timings", timings, "include wall-clock timings");

    std::string curve;
    long height_bound = 1000;
    auto* search = app.add_subcommand("search-points", "naive rational point search");
    search->add_option("--curve", curve, "[c0,...,c7]")->required();
    search->add_option("--height-bound", height_bound)->capture_default_str();

    std::string from, to;
    unsigned p = 7;
    auto* integrate = app.add_subcommand("integrate", "Coleman integrals of x^i dx/2y between two points");
    integrate->add_option("--curve", curve, "[c0,...,c7], monic")->required();
    integrate->add_option("--from", from, "inf, X,Y or X,~R")->required();
    integrate->add_option("--to", to, "inf, X,Y or X,~R")->required();
    integrate->add_option("--prime", p)->required();
    integrate->add_option("--precision", precision, "p-adic precision N (default 2p+4)");

    auto* frob = app.add_subcommand("frobenius", "Frobenius matrix and zeta data");
    frob->add_option("--curve", curve, "[c0,...,c7], monic")->required();
    frob->add_option("--prime", p)->required();
    frob->add_option("--precision", precision, "p-adic precision N (default 2p+4)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*run) {
            cfg.prime = prime;
            cfg.precision = precision;
            const auto curves = ingest(input);
            const BatchReport report = run_batch(curves, cfg);
            const ReportFormat fmt = format == "json" ? ReportFormat::Json : format == "csv" ? ReportFormat::Csv : ReportFormat::Text;
            std::cout << emit_report(report, fmt, EmitOptions{timings});
            return report.failures.empty() ? 0 : 2;
        }
        if (*search) {
            const MonicModel m = scale_to_monic(parse_coefficients(curve));
            for (const auto& R : search_rational_points(m.curve, height_bound)) {
                const RationalPoint P = m.from_monic(R);
                std::cout << to_string(P) << " " << global_height(P) << "\n";
            }
            return 0;
        }
        const HyperellipticCurve C = monic_curve(curve);
        if (!is_prime(p) || !C.has_good_reduction(p))
            throw Error(ErrorKind::BadReduction, "p = " + std::to_string(p) + " is not a prime of good reduction");
        const int N = precision.value_or(precisions(p).first);
        if (*integrate) {
            const FrobeniusAction fa = frobenius_action(C, p, N);
            const PadicPoint P = parse_point(from, C, p, N + 4);
            const PadicPoint Q = parse_point(to, C, p, N + 4);
            const IntegralVector v = coleman_integral(C, fa, P, Q);
            nlohmann::ordered_json j;
            j["p"] = p;
            j["from"] = to_string(P);
            j["to"] = to_string(Q);
            std::vector<std::string> vals;
            for (const auto& a : v.values)
                vals.push_back(a.to_string());
            j["integrals"] = vals;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        std::cout << frobenius_json(C, p, N);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
