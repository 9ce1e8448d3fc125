#include "polylab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "polylab/errors.hpp"

namespace polylab {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

PolytopeFile parse_polytope_json(const std::string& text, const std::string& origin) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("vertices"))
        throw ParseError(origin + ": expected {\"dim\":..., \"vertices\":[...]}");
    PolytopeFile f;
    f.name = j.value("name", std::string());
    if (!j["dim"].is_number_integer()) throw ParseError(origin + ": dim must be an integer");
    f.dim = j["dim"].get<int>();
    auto parse_row = [&](const ojson& row, const char* what) {
        Point p;
        for (const auto& c : row) {
            if (!c.is_number_integer())
                throw NonIntegerVertex(origin + ": " + what + " " + row.dump() +
                                       " has a non-integer coordinate");
            p.x.push_back(c.get<Coord>());
        }
        if (p.dim() != f.dim)
            throw ParseError(origin + ": " + what + " " + row.dump() + " has arity " +
                             std::to_string(p.dim()) + ", expected " + std::to_string(f.dim));
        return p;
    };
    for (const auto& row : j["vertices"]) f.vertices.push_back(parse_row(row, "vertex"));
    // Optional embedded point set, same shape as the vertex list.
    if (j.contains("points"))
        for (const auto& row : j["points"]) f.points.push_back(parse_row(row, "point"));
    return f;
}

PolytopeFile load_polytope_file(const std::string& path) {
    return parse_polytope_json(read_file(path), path);
}

std::vector<Point> parse_point_set(std::istream& in) {
    std::vector<Point> pts;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Point p;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                p.x.push_back(std::stoll(tok));
            } catch (const std::exception&) {
                throw ParseError("bad point line '" + line + "'");
            }
        }
        pts.push_back(std::move(p));
    }
    for (const Point& p : pts)
        if (p.dim() != pts[0].dim()) throw ParseError("mixed point arities in point set");
    return pts;
}

std::vector<Point> load_point_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_point_set(in);
}

std::string fmt_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

ojson num6(double v) {
    return ojson::parse(fmt_g6(v));
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string rat_string(const Rat& r) {
    return r.get_str();
}

namespace {

ojson point_json(const Point& p) {
    ojson a = ojson::array();
    for (Coord c : p.x) a.push_back(c);
    return a;
}

ojson pair_list_json(const std::vector<std::pair<int, int>>& v) {
    ojson a = ojson::array();
    for (auto [i, j] : v) a.push_back(ojson::array({i, j}));
    return a;
}

}  // namespace

ojson analyze_payload(const PolytopeFile& file, const Polytope& P,
                      std::optional<long> dilate, const std::vector<Point>* subset) {
    GeometryReport rep = analyze_geometry(P);

    ojson j;
    j["name"] = file.name;
    j["dim"] = P.dim;
    j["vertex_count"] = P.vertices.size();
    ojson verts = ojson::array();
    for (const Point& v : P.vertices) verts.push_back(point_json(v));
    j["vertices"] = verts;
    j["facet_count"] = P.facets.size();
    j["edge_count"] = P.edges.size();
    j["edges"] = pair_list_json(P.edges);
    j["sa_pairs"] = pair_list_json(rep.sa_pairs);
    if (P.dim == 2) j["parallel_side_pairs"] = parallel_side_pairs(P);
    j["lps"] = rep.lps;
    j["lps_pairing"] = rep.lps_pairing ? pair_list_json(*rep.lps_pairing) : ojson(nullptr);
    if (rep.lps_certificate) {
        ojson c;
        c["reason"] = rep.lps_certificate->reason;
        c["busy_vertex"] = rep.lps_certificate->busy_vertex
                               ? ojson(*rep.lps_certificate->busy_vertex)
                               : ojson(nullptr);
        c["busy_partners"] = rep.lps_certificate->busy_partners;
        c["cone_violation"] =
            rep.lps_certificate->cone_violation
                ? ojson::array({rep.lps_certificate->cone_violation->first,
                                rep.lps_certificate->cone_violation->second})
                : ojson(nullptr);
        j["lps_certificate"] = c;
    } else {
        j["lps_certificate"] = nullptr;
    }
    if (rep.unique_diff_witness) {
        auto [v, e] = *rep.unique_diff_witness;
        ojson w;
        w["vertex"] = v;
        w["edge_index"] = e;
        w["edge"] = ojson::array({P.edges[e].first, P.edges[e].second});
        j["unique_diff_witness"] = w;
    } else {
        j["unique_diff_witness"] = nullptr;
    }
    if (dilate) {
        LatticeSet L = enumerate_lattice(P, *dilate);
        SumDiffKernel kernel(L);
        ojson d;
        d["n"] = *dilate;
        d["lattice_points"] = L.size();
        d["sumset_size"] = kernel.base_sum_count();
        d["diffset_size"] = kernel.base_diff_count();
        j["dilate"] = d;
    } else {
        j["dilate"] = nullptr;
    }
    if (subset) {
        LatticeSet A = LatticeSet::from_points(P.dim, *subset);
        SumDiffKernel kernel(A);
        ojson s;
        s["points"] = A.size();
        s["sumset_size"] = kernel.base_sum_count();
        s["diffset_size"] = kernel.base_diff_count();
        std::int64_t su = kernel.base_sum_count(), di = kernel.base_diff_count();
        s["classification"] = su > di   ? "sum_dominant"
                              : su < di ? "difference_dominant"
                                        : "balanced";
        j["subset"] = s;
    } else {
        j["subset"] = nullptr;
    }
    return j;
}

ojson estimate_payload(const EstimateRun& run) {
    ojson j;
    j["polytope"] = run.polytope;
    j["n"] = run.n;
    j["classifier"] = to_string(run.classifier);
    j["s"] = run.s;
    j["d"] = run.d;
    j["fringe"] = run.fringe_mode;
    j["radius"] = rat_string(run.radius);
    j["samples"] = run.samples;
    j["seed"] = run.seed;
    j["hits"] = run.result.hits;
    j["trials"] = run.result.trials;
    j["proportion"] = num6(run.result.proportion);
    j["ci_low"] = num6(run.result.ci_low);
    j["ci_high"] = num6(run.result.ci_high);
    j["notes"] = run.notes;
    return j;
}

std::string estimate_csv(const EstimateRun& run) {
    std::ostringstream os;
    os << "polytope,n,classifier,s,d,fringe,radius,samples,seed,hits,proportion,ci_low,"
          "ci_high\n";
    os << run.polytope << ',' << run.n << ',' << to_string(run.classifier) << ',' << run.s
       << ',' << run.d << ',' << run.fringe_mode << ',' << rat_string(run.radius) << ','
       << run.samples << ',' << run.seed << ',' << run.result.hits << ','
       << fmt_g6(run.result.proportion) << ',' << fmt_g6(run.result.ci_low) << ','
       << fmt_g6(run.result.ci_high) << '\n';
    return os.str();
}

ojson enumerate_payload(const std::string& polytope, long n, const JointHistogram& hist) {
    ojson j;
    j["polytope"] = polytope;
    j["n"] = n;
    j["total_subsets"] = hist.total;
    ojson rows = ojson::array();
    for (const auto& [key, cnt] : hist.counts)
        rows.push_back(ojson::array({key.first, key.second, cnt}));
    j["histogram"] = rows;  // rows of (missing_sums, missing_diffs, count)
    ojson cls;
    cls["mstd"] = hist.mstd;
    cls["balanced"] = hist.balanced;
    cls["difference_dominant"] = hist.diff_dominant;
    j["classes"] = cls;
    return j;
}

std::string enumerate_csv(const JointHistogram& hist) {
    std::ostringstream os;
    os << "missing_sums,missing_diffs,count\n";
    for (const auto& [key, cnt] : hist.counts)
        os << key.first << ',' << key.second << ',' << cnt << '\n';
    os << "class,mstd," << hist.mstd << '\n';
    os << "class,balanced," << hist.balanced << '\n';
    os << "class,difference_dominant," << hist.diff_dominant << '\n';
    return os.str();
}

void write_run_record(const std::string& path, const std::string& command,
                      const ojson& config, const std::string& input_hash,
                      const ojson& results, double wall_ms) {
    ojson j;
    j["command"] = command;
    j["config"] = config;
    j["input_hash"] = input_hash;
    j["results"] = results;
    j["wall_ms"] = num6(wall_ms);
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write run record '" + path + "'");
    out << j.dump(2) << '\n';
}

}  // namespace polylab
