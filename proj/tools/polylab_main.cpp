#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "polylab/errors.hpp"
#include "polylab/io.hpp"

using namespace polylab;

namespace {

int exit_code_for(const Error& e) {
    const std::string& n = e.name();
    if (n == "ParseError" || n == "NonIntegerVertex" || n == "RedundantVertex" ||
        n == "NotFullDimensional")
        return 2;
    if (n == "SizeLimit" || n == "TooLarge") return 4;
    return 3;  // configuration errors: NotLps, WindowOverlap, IncompatibleFringe, ...
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct CommonOpts {
    std::string file;
    std::string format = "json";
    std::string run_record;
};

Classifier parse_classifier(const std::string& s) {
    if (s == "exact_sd") return Classifier::ExactSd;
    if (s == "at_least_d") return Classifier::AtLeastD;
    if (s == "mstd") return Classifier::Mstd;
    if (s == "balanced") return Classifier::Balanced;
    if (s == "diff_dominant") return Classifier::DiffDominant;
    throw CLI::ValidationError("--classifier",
                               "must be one of exact_sd|at_least_d|mstd|balanced|diff_dominant");
}

void emit(const CommonOpts& common, const std::string& command_echo, const ojson& config,
          const ojson& payload, const std::string& csv, double wall_ms) {
    if (common.format == "csv" && !csv.empty())
        std::cout << csv;
    else
        std::cout << payload.dump(2) << '\n';
    if (!common.run_record.empty()) {
        std::string input_hash = hex64(fnv1a64(slurp(common.file)));
        write_run_record(common.run_record, command_echo, config, input_hash, payload,
                         wall_ms);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lattice-point sumset/difference-set laboratory for dilating polytopes"};
    app.require_subcommand(1);

    // --- analyze -----------------------------------------------------------
    CommonOpts a_common;
    long a_dilate = 0;
    std::string a_points;
    auto* analyze = app.add_subcommand(
        "analyze", "Geometry report (antipodal pairs, local point symmetry, witnesses)");
    analyze->add_option("file", a_common.file, "polytope JSON file")->required();
    analyze->add_option("--dilate", a_dilate, "also report |L(nP)| and |L(nP)+-L(nP)|");
    analyze->add_option("--points", a_points, "point-set CSV to size and classify");
    analyze->add_option("--run-record", a_common.run_record, "write a run record JSON");

    // --- estimate ----------------------------------------------------------
    CommonOpts e_common;
    long e_dilate = 1;
    std::int64_t e_samples = 10000;
    std::uint64_t e_seed = 0;
    std::string e_classifier = "mstd", e_fringe = "none", e_radius;
    int e_s = 0, e_d = 0, e_threads = 1;
    auto* estimate =
        app.add_subcommand("estimate", "Monte Carlo proportion estimate with Wilson CI");
    estimate->add_option("file", e_common.file, "polytope JSON file")->required();
    estimate->add_option("--dilate", e_dilate, "dilation factor n")->required();
    estimate->add_option("--samples", e_samples, "number of trials");
    estimate->add_option("--seed", e_seed, "random seed");
    estimate->add_option("--classifier", e_classifier,
                         "exact_sd|at_least_d|mstd|balanced|diff_dominant");
    estimate->add_option("--s", e_s, "target missing sums");
    estimate->add_option("--d", e_d, "target missing difference pairs");
    estimate->add_option("--fringe", e_fringe, "none|theorem1|theorem2");
    estimate->add_option("--radius", e_radius,
                         "fringe radius (rational, default: window size + 1)");
    estimate->add_option("--threads", e_threads, "worker threads");
    estimate->add_option("--format", e_common.format, "json|csv");
    estimate->add_option("--run-record", e_common.run_record, "write a run record JSON");

    // --- enumerate ---------------------------------------------------------
    CommonOpts n_common;
    long n_dilate = 1;
    int n_max_bits = 24, n_threads = 1;
    bool n_max_bits_set = false;
    auto* enumerate =
        app.add_subcommand("enumerate", "Exhaustive joint histogram of missing counts");
    enumerate->add_option("file", n_common.file, "polytope JSON file")->required();
    enumerate->add_option("--dilate", n_dilate, "dilation factor n")->required();
    enumerate->add_option("--max-bits", n_max_bits, "cap on |L(nP)|")
        ->each([&](const std::string&) { n_max_bits_set = true; });
    enumerate->add_option("--threads", n_threads, "worker threads");
    enumerate->add_option("--format", n_common.format, "json|csv");
    enumerate->add_option("--run-record", n_common.run_record, "write a run record JSON");

    CLI11_PARSE(app, argc, argv);

    std::ostringstream echo;
    for (int i = 0; i < argc; ++i) echo << (i ? " " : "") << argv[i];

    try {
        auto t0 = std::chrono::steady_clock::now();
        auto wall = [&]() {
            return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                             t0)
                .count();
        };

        if (*analyze) {
            PolytopeFile file = load_polytope_file(a_common.file);
            Polytope P = validate_polytope(file.dim, file.vertices);
            std::optional<long> dil;
            if (a_dilate > 0) dil = a_dilate;
            std::vector<Point> subset;
            if (!a_points.empty())
                subset = load_point_set(a_points);
            else
                subset = file.points;  // point set embedded in the polytope JSON
            ojson payload = analyze_payload(file, P, dil, subset.empty() ? nullptr : &subset);
            ojson config{{"file", a_common.file}, {"dilate", a_dilate}};
            emit(a_common, echo.str(), config, payload, "", wall());
            return 0;
        }

        if (*estimate) {
            PolytopeFile file = load_polytope_file(e_common.file);
            Polytope P = validate_polytope(file.dim, file.vertices);
            Classifier cls = parse_classifier(e_classifier);

            SampleConfig cfg;
            cfg.polytope = &P;
            cfg.n = e_dilate;
            cfg.samples = e_samples;
            cfg.seed = e_seed;
            cfg.classifier = cls;
            cfg.s = e_s;
            cfg.d = e_d;
            cfg.threads = e_threads;

            EstimateRun run;
            run.polytope = file.name.empty() ? e_common.file : file.name;
            run.n = e_dilate;
            run.classifier = cls;
            run.s = e_s;
            run.d = e_d;
            run.fringe_mode = e_fringe;
            run.samples = e_samples;
            run.seed = e_seed;

            if (e_fringe == "theorem1" || e_fringe == "theorem2") {
                FringeMode mode =
                    e_fringe == "theorem1" ? FringeMode::Theorem1 : FringeMode::Theorem2;
                Rat radius = e_radius.empty() ? default_fringe_radius(P, e_s, e_d, mode)
                                              : parse_rat(e_radius);
                cfg.fringe = assemble_fringe(P, e_dilate, e_s, e_d, radius, mode);
                run.radius = radius;
                run.notes = cfg.fringe->notes;
            } else if (e_fringe != "none") {
                throw std::invalid_argument("--fringe must be none|theorem1|theorem2");
            } else {
                run.radius = rat(0);
            }

            run.result = sample_estimate(cfg);
            ojson payload = estimate_payload(run);
            ojson config{{"file", e_common.file},   {"dilate", e_dilate},
                         {"samples", e_samples},    {"seed", e_seed},
                         {"classifier", e_classifier}, {"s", e_s},
                         {"d", e_d},                {"fringe", e_fringe},
                         {"radius", rat_string(run.radius)}, {"threads", e_threads}};
            emit(e_common, echo.str(), config, payload, estimate_csv(run), wall());
            return 0;
        }

        if (*enumerate) {
            PolytopeFile file = load_polytope_file(n_common.file);
            Polytope P = validate_polytope(file.dim, file.vertices);
            int cap = n_max_bits;
            if (!n_max_bits_set) {
                if (const char* env = std::getenv("POLYLAB_MAX_BITS")) cap = std::atoi(env);
            }
            JointHistogram hist = exact_enumerate(P, n_dilate, cap, n_threads);
            std::string name = file.name.empty() ? n_common.file : file.name;
            ojson payload = enumerate_payload(name, n_dilate, hist);
            ojson config{{"file", n_common.file},
                         {"dilate", n_dilate},
                         {"max_bits", cap},
                         {"threads", n_threads}};
            emit(n_common, echo.str(), config, payload, enumerate_csv(hist), wall());
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
