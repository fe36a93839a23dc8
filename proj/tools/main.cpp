#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "exsum/pipeline.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw exsum::validation_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

struct CommonFlags {
    bool dwork = false, zeta = false, paranoid = false;
    int64_t cap = 0, precision = 0, jobs = 1;
    std::string emit, out = ".";

    exsum::OptionOverrides overrides() const {
        exsum::OptionOverrides o;
        if (dwork) o.dwork = true;
        if (zeta) o.zeta = true;
        if (paranoid) o.paranoid = true;
        if (cap > 0) o.cap = cap;
        if (precision > 0) o.precision = precision;
        return o;
    }
};

void add_common(CLI::App* cmd, CommonFlags& fl) {
    cmd->add_flag("--dwork", fl.dwork, "also run the p-adic pipeline (a = 1 only)");
    cmd->add_flag("--zeta", fl.zeta, "also compute the curve zeta numerator");
    cmd->add_flag("--paranoid", fl.paranoid, "verify extra L-coefficients vanish");
    cmd->add_option("--cap", fl.cap, "field enumeration cap");
    cmd->add_option("--precision", fl.precision, "p-adic precision override");
    cmd->add_option("--emit", fl.emit, "write polygon files: csv or svg")
        ->check(CLI::IsMember({"csv", "svg"}));
    cmd->add_option("--out", fl.out, "output directory for emitted files");
}

int run_one(const std::string& file, const CommonFlags& fl) {
    exsum::InstanceSpec spec = exsum::parse_instance(slurp(file));
    exsum::apply_overrides(spec, fl.overrides());
    exsum::Report rep = exsum::run_instance(spec);
    std::cout << exsum::report_to_json(rep) << "\n";

    if (!fl.emit.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(fl.out);
        const std::string stem = fs::path(file).stem().string();
        if (fl.emit == "csv") {
            write_file(fs::path(fl.out) / (stem + ".newton.csv"),
                       exsum::polygon_csv(rep.newton));
            write_file(fs::path(fl.out) / (stem + ".hodge.csv"),
                       exsum::polygon_csv(rep.hodge));
            if (rep.dwork.ran)
                write_file(fs::path(fl.out) / (stem + ".dwork.csv"),
                           exsum::polygon_csv(rep.dwork.np));
        } else {
            write_file(fs::path(fl.out) / (stem + ".svg"),
                       exsum::polygons_svg(rep.newton, rep.hodge));
        }
    }
    return rep.ok ? 0 : 1;
}

int run_corpus_cmd(const std::string& dir, const CommonFlags& fl,
                   const std::string& reports) {
    exsum::CorpusSummary summary =
        exsum::run_corpus(dir, fl.jobs, fl.overrides(), reports);
    std::cout << summary.table();
    return summary.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Newton polygons of L-functions of exponential sums"};
    app.require_subcommand(1);

    CommonFlags run_fl, corpus_fl;
    std::string file, dir, reports;

    CLI::App* run = app.add_subcommand("run", "process one instance file");
    run->add_option("file", file, "instance JSON file")->required();
    add_common(run, run_fl);

    CLI::App* corpus = app.add_subcommand("corpus", "process a directory of instances");
    corpus->add_option("dir", dir, "directory of instance JSON files")->required();
    corpus->add_option("--jobs", corpus_fl.jobs, "parallel instance workers");
    corpus->add_option("--reports", reports, "directory for per-instance reports");
    add_common(corpus, corpus_fl);

    CLI11_PARSE(app, argc, argv);
    try {
        if (run->parsed()) return run_one(file, run_fl);
        return run_corpus_cmd(dir, corpus_fl, reports);
    } catch (const exsum::validation_error& e) {
        std::cerr << "{\"error\":\"validation\",\"message\":\"" << e.what() << "\"}\n";
    } catch (const exsum::cap_error& e) {
        std::cerr << "{\"error\":\"cap\",\"message\":\"" << e.what() << "\"}\n";
    } catch (const exsum::precision_error& e) {
        std::cerr << "{\"error\":\"precision\",\"message\":\"" << e.what() << "\"}\n";
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"internal\",\"message\":\"" << e.what() << "\"}\n";
    }
    return 2;
}
