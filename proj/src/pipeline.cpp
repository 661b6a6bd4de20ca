#include "ck/pipeline.hpp"

#include <json.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "ck/classify.hpp"

namespace ck {

namespace {

using ojson = nlohmann::ordered_json;

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<mpq_class> parse_rational(std::string_view tok)
{
    std::string s;
    for (char c : tok)
        if (c != ' ' && c != '\t')
            s.push_back(c);
    if (!s.empty() && s[0] == '+')
        s.erase(0, 1);
    if (s.empty() || s.find_first_not_of("-0123456789/") != std::string::npos)
        return std::nullopt;
    const auto slash = s.find('/');
    if (slash != std::string::npos && (slash + 1 == s.size() || s.find_first_not_of("0", slash + 1) == std::string::npos))
        return std::nullopt; // empty or zero denominator
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        return std::nullopt;
    q.canonicalize();
    return q;
}

std::string rational_list(const std::vector<mpq_class>& c)
{
    std::string s = "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i)
            s += ",";
        s += c[i].get_str();
    }
    return s + "]";
}

std::string polynomial_string(const std::vector<mpq_class>& c)
{
    std::string s;
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k] == 0)
            continue;
        const mpq_class a = abs(c[k]);
        if (s.empty())
            s += c[k] < 0 ? "-" : "";
        else
            s += c[k] < 0 ? " - " : " + ";
        if (a != 1 || k == 0)
            s += a.get_str() + (k ? "*" : "");
        if (k >= 1)
            s += "x";
        if (k >= 2)
            s += "^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
}

bool on_model(const std::vector<mpq_class>& c, const RationalPoint& P)
{
    if (P.infinity)
        return true;
    mpq_class v = 0;
    for (std::size_t i = c.size(); i-- > 0;)
        v = v * P.x + c[i];
    return P.y * P.y == v;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string zero_label(const HyperellipticCurve& C, const PadicPoint& z)
{
    if (z.infinity)
        return "inf";
    if (const auto R = reconstruct_point(C, z))
        return to_string(*R);
    return to_string(z);
}

ExtraRecord extra_record(const ClassifiedPoint& c, const char* kind)
{
    ExtraRecord e;
    e.kind = kind;
    e.x = c.point.x.to_string();
    e.y = c.point.y.to_string();
    e.x_minpoly = c.x_minpoly ? polynomial_to_string(*c.x_minpoly) : "";
    e.y_minpoly = c.y_minpoly ? polynomial_to_string(*c.y_minpoly, "y") : "";
    e.order = c.order.get_str();
    e.p_divides_order = c.p_divides_order;
    return e;
}

double record_max_height(const CurveRecord& r)
{
    double h = 0;
    for (const auto& P : r.points)
        h = std::max(h, P.height);
    return h;
}

ojson record_scalars(const CurveRecord& r)
{
    std::string pts;
    for (const auto& P : r.points)
        pts += (pts.empty() ? "" : ";") + to_string(P.point);
    std::size_t two = 0, higher = 0;
    for (const auto& e : r.extras)
        (e.kind == "two-torsion" ? two : higher)++;
    ojson j;
    j["line"] = r.line;
    j["input"] = rational_list(r.coeffs);
    j["scale"] = r.scale.get_str();
    j["prime"] = r.prime;
    j["N"] = r.N;
    j["M"] = r.M;
    j["n_rational"] = r.points.size();
    j["rational_points"] = pts;
    j["n_two_torsion"] = two;
    j["n_higher_torsion"] = higher;
    j["fp_points"] = r.fp_points;
    j["jacobian_order"] = r.jacobian_order;
    j["stoll_sharp"] = r.stoll_sharp;
    j["escalations"] = r.escalations;
    j["max_height"] = record_max_height(r);
    return j;
}

// Column name and whether the csv cell is a plain string.
const std::vector<std::pair<std::string, bool>>& scalar_columns()
{
    static const std::vector<std::pair<std::string, bool>> cols{
        {"line", false},       {"input", true},           {"scale", true},          {"prime", false},
        {"N", false},          {"M", false},              {"n_rational", false},    {"rational_points", true},
        {"n_two_torsion", false}, {"n_higher_torsion", false}, {"fp_points", true}, {"jacobian_order", true},
        {"stoll_sharp", false}, {"escalations", false},   {"max_height", false}};
    return cols;
}

std::string csv_cell(const ojson& v)
{
    const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + "\"";
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text)
{
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cell += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            row.push_back(std::move(cell));
            cell.clear();
            any = true;
        } else if (c == '\n') {
            if (any || !cell.empty()) {
                row.push_back(std::move(cell));
                rows.push_back(std::move(row));
            }
            row.clear();
            cell.clear();
            any = false;
        } else if (c != '\r') {
            cell += c;
            any = true;
        }
    }
    if (any || !cell.empty()) {
        row.push_back(std::move(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

ojson report_json(const BatchReport& report, const EmitOptions& opts)
{
    ojson j;
    j["curves"] = report.records.size();
    ojson hist = ojson::array();
    for (const auto& [n, count] : report.histogram)
        hist.push_back({{"rational_points", n}, {"curves", count}});
    j["histogram"] = hist;
    j["max_height"] = report.max_height;
    j["max_height_points"] = report.max_height_points;
    ojson records = ojson::array();
    for (const auto& r : report.records) {
        ojson rec = record_scalars(r);
        std::vector<std::string> coeffs, monic;
        for (const auto& c : r.coeffs)
            coeffs.push_back(c.get_str());
        for (const auto& c : r.monic_coeffs)
            monic.push_back(c.get_str());
        rec["coefficients"] = coeffs;
        rec["monic_coefficients"] = monic;
        ojson pts = ojson::array();
        for (const auto& P : r.points)
            pts.push_back({{"point", to_string(P.point)}, {"monic", to_string(P.monic)}, {"height", P.height}});
        rec["points"] = pts;
        ojson extras = ojson::array();
        for (const auto& e : r.extras)
            extras.push_back({{"kind", e.kind},           {"x", e.x},
                              {"y", e.y},                 {"x_minpoly", e.x_minpoly},
                              {"y_minpoly", e.y_minpoly}, {"order", e.order},
                              {"p_divides_order", e.p_divides_order}});
        rec["extras"] = extras;
        rec["escalation_reasons"] = r.escalation_reasons;
        ojson discs = ojson::array();
        for (const auto& d : r.discs)
            discs.push_back({{"disc", d.disc}, {"seeded", d.seeded}, {"zeros", d.zeros}});
        rec["discs"] = discs;
        if (opts.timings)
            rec["timings"] = {{"search_seconds", r.search_seconds}, {"chabauty_seconds", r.chabauty_seconds}};
        records.push_back(std::move(rec));
    }
    j["records"] = records;
    ojson failures = ojson::array();
    for (const auto& f : report.failures)
        failures.push_back({{"line", f.line}, {"kind", f.kind}, {"message", f.message}});
    j["failures"] = failures;
    return j;
}

std::string report_csv(const BatchReport& report)
{
    std::string out;
    const auto& cols = scalar_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out += (i ? "," : "") + cols[i].first;
    out += "\n";
    for (const auto& r : report.records) {
        const ojson s = record_scalars(r);
        for (std::size_t i = 0; i < cols.size(); ++i)
            out += (i ? "," : "") + csv_cell(s[cols[i].first]);
        out += "\n";
    }
    return out;
}

std::string report_text(const BatchReport& report, const EmitOptions& opts)
{
    std::ostringstream os;
    for (const auto& r : report.records) {
        os << "curve at line " << r.line << ": y^2 = " << polynomial_string(r.coeffs) << "\n";
        if (r.scale != 1)
            os << "  monic model (u, v) = (" << r.scale.get_str() << " x, " << r.scale.get_str() << "^g y): v^2 = "
               << polynomial_string(r.monic_coeffs) << "\n";
        os << "  p = " << r.prime << ", N = " << r.N << ", M = " << r.M << ", escalations = " << r.escalations << "\n";
        for (const auto& why : r.escalation_reasons)
            os << "    " << why << "\n";
        os << "  #C(F_p) = " << r.fp_points << ", #J(F_p) = " << r.jacobian_order
           << ", Stoll-sharp: " << (r.stoll_sharp ? "yes" : "no") << "\n";
        std::size_t w = std::string("residue disc").size();
        for (const auto& d : r.discs)
            w = std::max(w, d.disc.size());
        os << "  " << std::left << std::setw(static_cast<int>(w)) << "residue disc" << " | common roots\n";
        for (const auto& d : r.discs) {
            std::string zs;
            for (const auto& z : d.zeros)
                zs += (zs.empty() ? "" : ", ") + z;
            os << "  " << std::setw(static_cast<int>(w)) << d.disc << " | " << (zs.empty() ? "no common roots" : zs) << "\n";
        }
        os << "  rational points:";
        for (const auto& P : r.points)
            os << " " << to_string(P.point) << " (h = " << std::setprecision(6) << P.height << ")";
        os << "\n";
        for (const auto& e : r.extras) {
            os << "  " << e.kind << ": x = " << e.x << "\n    x min poly " << (e.x_minpoly.empty() ? "?" : e.x_minpoly)
               << ", y min poly " << (e.y_minpoly.empty() ? "?" : e.y_minpoly) << ", order " << e.order
               << (e.p_divides_order ? " (p divides the order)" : "") << "\n";
        }
        if (opts.timings)
            os << "  time: search " << r.search_seconds << " s, chabauty " << r.chabauty_seconds << " s\n";
        os << "\n";
    }
    os << "rational points | curves\n";
    for (const auto& [n, count] : report.histogram)
        os << std::right << std::setw(15) << n << " | " << count << "\n";
    if (!report.records.empty()) {
        os << "max height " << std::setprecision(12) << report.max_height << ":";
        for (const auto& s : report.max_height_points)
            os << " " << s;
        os << "\n";
    }
    if (!report.failures.empty()) {
        os << "failures:\n";
        for (const auto& f : report.failures)
            os << "  line " << f.line << ": " << f.message << "\n";
    }
    return os.str();
}

} // namespace

std::vector<mpq_class> parse_coefficients(std::string_view text)
{
    const std::string_view t = trim(text);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw Error(ErrorKind::ParseError, "expected [c0,c1,...]");
    const std::string_view body = t.substr(1, t.size() - 2);
    std::vector<mpq_class> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = body.find(',', start);
        const std::string_view tok = trim(body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        const auto q = parse_rational(tok);
        if (!q)
            throw Error(ErrorKind::ParseError, "bad coefficient '" + std::string(tok) + "'");
        out.push_back(*q);
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

std::vector<RawCurve> parse_curves(std::istream& in)
{
    std::vector<RawCurve> out;
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        std::string_view s = line;
        if (const auto hash = s.find('#'); hash != std::string_view::npos)
            s = s.substr(0, hash);
        s = trim(s);
        if (s.empty())
            continue;
        try {
            auto c = parse_coefficients(s);
            scale_to_monic(c); // validates
            out.push_back({n, std::move(c)});
        } catch (const Error& e) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

std::vector<RawCurve> ingest(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
    return parse_curves(in);
}

PadicPoint parse_point(std::string_view text, const HyperellipticCurve& C, unsigned p, int prec)
{
    const std::string_view t = trim(text);
    if (t == "inf")
        return PadicPoint::at_infinity();
    const auto comma = t.find(',');
    if (comma == std::string_view::npos)
        throw Error(ErrorKind::ParseError, "expected inf, X,Y or X,~R");
    const auto x = parse_rational(trim(t.substr(0, comma)));
    const std::string_view ys = trim(t.substr(comma + 1));
    if (!x)
        throw Error(ErrorKind::ParseError, "bad x coordinate");
    if (!ys.empty() && ys.front() == '~') {
        const auto r = parse_rational(ys.substr(1));
        if (!r || r->get_den() != 1 || *r < 0)
            throw Error(ErrorKind::ParseError, "bad residue after ~");
        if (mpz_divisible_ui_p(x->get_den_mpz_t(), p))
            throw Error(ErrorKind::InvalidArgument, "X,~R needs x integral at p");
        const PadicScalar px = PadicScalar::from_rational(p, *x, prec);
        const PadicScalar y2 = C.padic(p, prec).evaluate(px);
        const unsigned long seed = mpz_fdiv_ui(r->get_num_mpz_t(), p);
        if (seed == 0 || (seed * seed - y2.residue()) % p != 0)
            throw Error(ErrorKind::InvalidArgument, "residue is not a square root of F(x) mod p");
        return PadicPoint::affine(px, hensel_sqrt(y2, static_cast<unsigned>(seed)));
    }
    const auto y = parse_rational(ys);
    if (!y)
        throw Error(ErrorKind::ParseError, "bad y coordinate");
    const RationalPoint P = RationalPoint::affine(*x, *y);
    if (!C.contains(P))
        throw Error(ErrorKind::InvalidArgument, to_string(P) + " is not on the curve");
    return to_padic(P, p, prec);
}

CurveRecord process_curve(const RawCurve& raw, const BatchConfig& cfg)
{
    const MonicModel m = scale_to_monic(raw.coeffs);
    CurveRecord r;
    r.line = raw.line;
    r.coeffs = raw.coeffs;
    r.monic_coeffs = m.curve.coeffs();
    r.scale = m.scale;

    auto t0 = std::chrono::steady_clock::now();
    const auto known = search_rational_points(m.curve, cfg.height_bound);
    r.search_seconds = seconds_since(t0);

    ChabautyConfig cc;
    cc.prime = cfg.prime;
    cc.precision = cfg.precision;
    cc.prime_cap = cfg.prime_cap;
    t0 = std::chrono::steady_clock::now();
    const ChabautyOutput out = run_chabauty(m.curve, known, cc);
    r.chabauty_seconds = seconds_since(t0);

    r.prime = out.prime;
    r.N = out.N;
    r.M = out.M;
    r.escalations = out.escalations;
    r.escalation_reasons = out.escalation_reasons;
    r.fp_points = out.fp_points.get_str();
    r.jacobian_order = out.jacobian_order.get_str();
    for (const auto& R : out.rational_points()) {
        const RationalPoint P = m.from_monic(R);
        if (!on_model(raw.coeffs, P))
            throw Error(ErrorKind::InvalidArgument, to_string(P) + " does not lie on the input model");
        r.points.push_back({P, R, global_height(P)});
    }
    std::sort(r.points.begin(), r.points.end(), [](const PointRecord& a, const PointRecord& b) { return a.point < b.point; });
    for (const auto& c : out.two_torsion)
        r.extras.push_back(extra_record(c, "two-torsion"));
    for (const auto& c : out.higher_torsion)
        r.extras.push_back(extra_record(c, "higher-torsion"));
    for (const auto& d : out.discs) {
        DiscRecord dr{to_string(d.disc), d.seeded, {}};
        for (const auto& z : d.zeros)
            dr.zeros.push_back(zero_label(m.curve, z));
        r.discs.push_back(std::move(dr));
    }
    // rank 0: #C(Q) <= #C(F_p)
    if (out.fp_points < static_cast<unsigned long>(r.points.size()))
        throw Error(ErrorKind::InvalidArgument, "more rational points than F_p points");
    r.stoll_sharp = out.fp_points == static_cast<unsigned long>(r.points.size());
    return r;
}

BatchReport run_batch(const std::vector<RawCurve>& curves, const BatchConfig& cfg)
{
    std::vector<std::optional<CurveRecord>> records(curves.size());
    std::vector<std::optional<Failure>> failures(curves.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < curves.size();) {
            const RawCurve& raw = curves[i];
            try {
                records[i] = process_curve(raw, cfg);
                spdlog::info("line {}: {} rational points at p = {}", raw.line, records[i]->points.size(), records[i]->prime);
            } catch (const Error& e) {
                failures[i] = Failure{raw.line, std::string(to_string(e.kind())), e.what()};
            } catch (const std::exception& e) {
                failures[i] = Failure{raw.line, "InternalError", e.what()};
            }
            if (failures[i])
                spdlog::warn("line {}: {}", raw.line, failures[i]->message);
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(curves.size())));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < jobs; ++k)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    BatchReport report;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        if (failures[i])
            report.failures.push_back(std::move(*failures[i]));
        if (!records[i])
            continue;
        CurveRecord& r = *records[i];
        ++report.histogram[static_cast<int>(r.points.size())];
        for (const auto& P : r.points) {
            const std::string label = std::to_string(r.line) + ": " + to_string(P.point);
            if (P.height > report.max_height) {
                report.max_height = P.height;
                report.max_height_points = {label};
            } else if (P.height == report.max_height && P.height > 0) {
                report.max_height_points.push_back(label);
            }
        }
        report.records.push_back(std::move(r));
    }
    return report;
}

std::string emit_report(const BatchReport& report, ReportFormat format, const EmitOptions& opts)
{
    switch (format) {
    case ReportFormat::Json: return report_json(report, opts).dump(2) + "\n";
    case ReportFormat::Csv: return report_csv(report);
    case ReportFormat::Text: return report_text(report, opts);
    }
    return {};
}

std::string csv_to_json(std::string_view csv)
{
    const auto rows = parse_csv(csv);
    ojson out = ojson::array();
    if (rows.empty())
        return out.dump();
    const auto& header = rows[0];
    const auto& cols = scalar_columns();
    for (std::size_t r = 1; r < rows.size(); ++r) {
        ojson rec;
        for (std::size_t c = 0; c < header.size() && c < rows[r].size(); ++c) {
            const auto it = std::find_if(cols.begin(), cols.end(), [&](const auto& col) { return col.first == header[c]; });
            if (it == cols.end())
                throw Error(ErrorKind::ParseError, "unknown csv column " + header[c]);
            rec[header[c]] = it->second ? ojson(rows[r][c]) : ojson::parse(rows[r][c]);
        }
        out.push_back(std::move(rec));
    }
    return out.dump();
}

std::string json_scalars(std::string_view json)
{
    const ojson j = ojson::parse(json);
    ojson out = ojson::array();
    for (const auto& rec : j.at("records")) {
        ojson s;
        for (const auto& [k, v] : rec.items())
            if (!v.is_array() && !v.is_object())
                s[k] = v;
        out.push_back(std::move(s));
    }
    return out.dump();
}

std::string frobenius_json(const HyperellipticCurve& C, unsigned p, int N)
{
    if (!C.has_good_reduction(p))
        throw Error(ErrorKind::BadReduction, "bad reduction at " + std::to_string(p));
    const FrobeniusAction fa = frobenius_action(C, p, N);
    ojson j;
    j["p"] = p;
    j["genus"] = fa.genus;
    j["precision"] = fa.precision;
    j["working_precision"] = fa.working_precision;
    j["series_terms"] = fa.series_terms;
    ojson rows = ojson::array();
    for (const auto& row : fa.M) {
        std::vector<std::string> r;
        for (const auto& a : row)
            r.push_back(a.to_string());
        rows.push_back(r);
    }
    j["matrix"] = rows;
    std::vector<std::string> cp;
    for (const auto& c : zeta_char_poly(fa))
        cp.push_back(c.get_str());
    j["char_poly"] = cp;
    j["fp_points"] = point_count_fp(fa).get_str();
    j["jacobian_order"] = jacobian_order_fp(fa).get_str();
    return j.dump(2) + "\n";
}

} // namespace ck
