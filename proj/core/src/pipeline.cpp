#include "exsum/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace exsum {

using nlohmann::ordered_json;

namespace {

std::string rational_string(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ordered_json polygon_json(const Polygon& P) {
    ordered_json a = ordered_json::array();
    for (const auto& v : P.vertices()) a.push_back({v.x, rational_string(v.y)});
    return a;
}

int64_t zeta_count_limit(const InstanceSpec& spec, int64_t two_g) {
    // direct point counts need an enumeration of F_{q^k}
    const int64_t budget = std::min<int64_t>(spec.options.cap, int64_t(1) << 22);
    int64_t k_max = 0;
    double size = 1.0;
    for (int64_t k = 1; k <= two_g; ++k) {
        for (int64_t i = 0; i < spec.a; ++i) size *= spec.p;
        if (size > static_cast<double>(budget)) break;
        k_max = k;
    }
    return k_max;
}

}  // namespace

Report run_instance(const InstanceSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    r.spec = spec;
    RationalFunction f = build_function(spec);
    const int64_t ell = f.pole_count();
    const int64_t p = spec.p;
    r.d = f.degree();
    r.lcm_d = f.lcm_orders();
    r.hodge = hodge_polygon(f.orders());
    r.L = l_polynomial(f, spec.options.paranoid, spec.options.cap);
    r.newton = newton_polygon(r.L, spec.a);
    r.verdict = theorem_verdict(f, r.newton);

    int64_t len0 = 0, len1 = 0;
    for (const auto& [slope, len] : r.newton.slope_segments()) {
        if (slope == 0) len0 = len;
        if (slope == 1) len1 = len;
    }
    r.segments_expected = (len0 == ell - 1 && len1 == ell - 1);
    if (!spec.expected_newton.empty())
        r.expected_newton_match = (r.newton == Polygon(spec.expected_newton));

    if (spec.options.zeta) {
        r.zeta.ran = true;
        r.zeta.numerator = zeta_numerator(r.L, spec.a);
        r.zeta.functional_equation = r.zeta.numerator.functional_equation_holds();
        const int64_t k_max = zeta_count_limit(spec, 2 * r.zeta.numerator.genus());
        r.zeta.point_counts_checked = k_max;
        r.zeta.point_counts_match =
            zeta_consistency(f, r.zeta.numerator, k_max, nullptr, spec.options.cap);
        auto inv = curve_np_and_prank(r.zeta.numerator);
        r.zeta.curve_np = inv.curve_np;
        r.zeta.p_rank = inv.p_rank;
        r.zeta.p_rank_expected = (inv.p_rank == (ell - 1) * (p - 1));
        r.zeta.curve_np_consistent = (inv.curve_np == r.newton.scaled(p - 1, 1));
    }

    if (spec.options.dwork && spec.a == 1) {
        DworkConfig cfg;
        cfg.precision = spec.options.precision;
        auto res = dwork_newton_polygon(f, cfg);
        r.dwork.ran = true;
        r.dwork.precision_used = res.precision_used;
        r.dwork.t_max_used = res.t_max_used;
        r.dwork.np = res.np;
        r.dwork.bound_violations = res.violations;
        r.dwork.agrees_with_direct = (res.np == r.newton);
    }

    r.ok = r.verdict.lies_over && (r.verdict.equals == r.verdict.criterion) &&
           r.segments_expected && r.expected_newton_match;
    if (r.zeta.ran)
        r.ok = r.ok && r.zeta.functional_equation && r.zeta.point_counts_match &&
               r.zeta.p_rank_expected && r.zeta.curve_np_consistent;
    if (r.dwork.ran)
        r.ok = r.ok && r.dwork.agrees_with_direct && r.dwork.bound_violations.empty();

    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::string report_to_json(const Report& r) {
    ordered_json j;
    j["instance"] = ordered_json::parse(instance_to_json(r.spec));
    j["d"] = r.d;
    j["lcm_d"] = r.lcm_d;
    j["hodge"] = polygon_json(r.hodge);
    j["newton"] = polygon_json(r.newton);
    j["lies_over"] = r.verdict.lies_over;
    j["equals_hodge"] = r.verdict.equals;
    j["criterion_p_mod"] = r.verdict.criterion;
    j["segments_expected"] = r.segments_expected;
    j["expected_newton_match"] = r.expected_newton_match;

    ordered_json L = ordered_json::array();
    for (const auto& b : r.L.coeffs) {
        ordered_json c = ordered_json::array();
        for (const auto& u : b.coeffs()) c.push_back(u.get_str());
        L.push_back(c);
    }
    j["l_coefficients"] = L;

    if (r.zeta.ran) {
        ordered_json z;
        ordered_json num = ordered_json::array();
        for (const auto& c : r.zeta.numerator.coeffs) num.push_back(c.get_str());
        z["numerator"] = num;
        z["functional_equation"] = r.zeta.functional_equation;
        z["point_counts_match"] = r.zeta.point_counts_match;
        z["point_counts_checked"] = r.zeta.point_counts_checked;
        z["p_rank"] = r.zeta.p_rank;
        z["p_rank_expected"] = r.zeta.p_rank_expected;
        z["curve_np"] = polygon_json(r.zeta.curve_np);
        z["curve_np_consistent"] = r.zeta.curve_np_consistent;
        j["zeta"] = z;
    }
    if (r.dwork.ran) {
        ordered_json dw;
        dw["precision_used"] = r.dwork.precision_used;
        dw["t_max_used"] = r.dwork.t_max_used;
        dw["np_lt1_vertices"] = polygon_json(r.dwork.np);
        dw["agrees_with_direct"] = r.dwork.agrees_with_direct;
        ordered_json viols = ordered_json::array();
        for (const auto& v : r.dwork.bound_violations) {
            ordered_json vj;
            vj["kind"] = v.kind;
            vj["J1"] = v.J1;
            vj["J"] = v.J;
            vj["n"] = v.n;
            vj["i"] = v.i;
            vj["detail"] = v.detail;
            viols.push_back(vj);
        }
        dw["bound_violations"] = viols;
        j["dwork"] = dw;
    }
    j["seconds"] = r.seconds;
    j["ok"] = r.ok;
    return j.dump(2);
}

bool CorpusSummary::ok() const {
    for (const auto& e : entries)
        if (!e.ok) return false;
    return true;
}

std::string CorpusSummary::table() const {
    std::ostringstream out;
    size_t width = 8;
    for (const auto& e : entries) width = std::max(width, e.name.size());
    for (const auto& e : entries) {
        out << e.name << std::string(width - e.name.size() + 2, ' ')
            << (e.ok ? "pass" : "FAIL");
        if (!e.error.empty()) out << "  (" << e.error << ")";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "  %.2fs", e.seconds);
        out << buf << "\n";
    }
    out << entries.size() << " instance(s), "
        << std::count_if(entries.begin(), entries.end(),
                         [](const CorpusEntry& e) { return e.ok; })
        << " passed\n";
    return out.str();
}

CorpusSummary run_corpus(const std::string& directory, int64_t jobs,
                         const OptionOverrides& overrides,
                         const std::string& report_dir) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(directory))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    CorpusSummary summary;
    summary.entries.resize(files.size());
    std::vector<std::string> reports(files.size());

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t k = next.fetch_add(1);
            if (k >= files.size()) return;
            CorpusEntry& e = summary.entries[k];
            e.name = files[k].stem().string();
            try {
                std::ifstream in(files[k]);
                std::stringstream buf;
                buf << in.rdbuf();
                InstanceSpec spec = parse_instance(buf.str());
                apply_overrides(spec, overrides);
                Report rep = run_instance(spec);
                e.ok = rep.ok;
                e.seconds = rep.seconds;
                reports[k] = report_to_json(rep);
            } catch (const std::exception& ex) {
                e.ok = false;
                e.error = ex.what();
            }
        }
    };
    const int64_t nthreads =
        std::max<int64_t>(1, std::min<int64_t>(jobs, static_cast<int64_t>(files.size())));
    std::vector<std::thread> pool;
    for (int64_t k = 0; k < nthreads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    if (!report_dir.empty()) {
        fs::create_directories(report_dir);
        for (size_t k = 0; k < files.size(); ++k) {
            if (reports[k].empty()) continue;
            std::ofstream out(fs::path(report_dir) /
                              (files[k].stem().string() + ".report.json"));
            out << reports[k] << "\n";
        }
    }
    return summary;
}

std::string polygon_csv(const Polygon& P) {
    std::ostringstream out;
    for (int64_t x = 0; x <= P.width(); ++x) {
        mpq_class y = P.value_at(x);
        out << x << "," << y.get_num().get_str() << "," << y.get_den().get_str() << "\n";
    }
    return out.str();
}

std::string polygons_svg(const Polygon& newton, const Polygon& hodge) {
    const double W = 480, H = 360, pad = 40;
    const double xmax = std::max<double>(1.0, static_cast<double>(newton.width()));
    double ymax = 1.0;
    for (const auto& v : newton.vertices()) ymax = std::max(ymax, v.y.get_d());
    for (const auto& v : hodge.vertices()) ymax = std::max(ymax, v.y.get_d());
    auto X = [&](double x) { return pad + x / xmax * (W - 2 * pad); };
    auto Y = [&](double y) { return H - pad - y / ymax * (H - 2 * pad); };
    auto polyline = [&](const Polygon& P, const char* color) {
        std::ostringstream s;
        s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& v : P.vertices())
            s << X(static_cast<double>(v.x)) << "," << Y(v.y.get_d()) << " ";
        s << "\"/>\n";
        return s.str();
    };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
        << H << "\">\n";
    out << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(xmax)
        << "\" y2=\"" << Y(0) << "\" stroke=\"#999\"/>\n";
    out << polyline(hodge, "#888888");
    out << polyline(newton, "#c0392b");
    out << "</svg>\n";
    return out.str();
}

}  // namespace exsum
