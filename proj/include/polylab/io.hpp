#ifndef POLYLAB_IO_HPP
#define POLYLAB_IO_HPP

#include <json.hpp>

#include <istream>
#include <optional>
#include <string>

#include "polylab/experiments.hpp"
#include "polylab/geometry.hpp"

namespace polylab {

using ojson = nlohmann::ordered_json;

// {"name": str?, "dim": int, "vertices": [[int,...],...], "points": [...]?}
// The optional points array embeds a point set alongside the polytope.
struct PolytopeFile {
    std::string name;
    int dim = 0;
    std::vector<Point> vertices;
    std::vector<Point> points;
};

PolytopeFile load_polytope_file(const std::string& path);
PolytopeFile parse_polytope_json(const std::string& text, const std::string& origin);

// One point per line, comma-separated integers. Blank lines and '#' comments
// are skipped.
std::vector<Point> parse_point_set(std::istream& in);
std::vector<Point> load_point_set(const std::string& path);

// Floats rendered with six significant digits everywhere in payloads.
std::string fmt_g6(double v);
ojson num6(double v);

std::uint64_t fnv1a64(const std::string& bytes);

std::string rat_string(const Rat& r);

// Payload builders shared by the CLI and the tests; payloads carry no
// timestamps so identical invocations serialize byte-identically.
ojson analyze_payload(const PolytopeFile& file, const Polytope& P,
                      std::optional<long> dilate,
                      const std::vector<Point>* subset = nullptr);

struct EstimateRun {
    std::string polytope;
    long n = 1;
    Classifier classifier = Classifier::Mstd;
    int s = 0, d = 0;
    std::string fringe_mode;  // none | theorem1 | theorem2
    Rat radius;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    EstimateResult result;
    std::vector<std::string> notes;
};

ojson estimate_payload(const EstimateRun& run);
std::string estimate_csv(const EstimateRun& run);

ojson enumerate_payload(const std::string& polytope, long n, const JointHistogram& hist);
std::string enumerate_csv(const JointHistogram& hist);

void write_run_record(const std::string& path, const std::string& command,
                      const ojson& config, const std::string& input_hash,
                      const ojson& results, double wall_ms);

}  // namespace polylab

#endif
