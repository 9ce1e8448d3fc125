// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Criteria 9-13 produce a serialized payload that criterion
// 14 re-derives at several thread counts and compares byte for byte.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "polylab/errors.hpp"
#include "polylab/experiments.hpp"
#include "polylab/io.hpp"
#include "polylab/rng.hpp"

using namespace polylab;

namespace {

struct Outcome {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    double ms;
};

std::vector<Outcome> outcomes;

Polytope fixture(const std::string& name) {
    PolytopeFile f = load_polytope_file(std::string(POLYLAB_FIXTURE_DIR) + "/" + name);
    return validate_polytope(f.dim, f.vertices);
}

void run_criterion(int id, const std::string& name,
                   const std::function<std::pair<bool, std::string>()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        auto [p, d] = body();
        pass = p;
        detail = d;
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                          t0)
                    .count();
    outcomes.push_back({id, name, pass, detail, ms});
    std::printf("%s criterion %2d: %s (%.0f ms) %s\n", pass ? "PASS" : "FAIL", id,
                name.c_str(), ms, detail.c_str());
    std::fflush(stdout);
}

// ---- criteria 9-13 payload, parameterized by thread count ----------------

struct Payload {
    ojson json;
    // Extracted facts the criteria assert on.
    struct Sufficiency {
        bool assembled = false;
        std::string error;
        bool conditional_exact = false;
        std::int64_t full_event_count = 0;
    };
    std::vector<Sufficiency> sufficiency;  // (0,0), (1,0), (0,1)
    std::vector<double> necessity_exact;   // exact proportions n=1..4
    EstimateResult necessity_mc10, necessity_mc20;
    EstimateResult mstd32;
    int bound_checks_total = 0, bound_checks_held = 0;
    struct OracleCmp {
        std::string fixture;
        long n;
        double exact_mstd, mc_mstd, exact_sd00, mc_sd00;
        std::int64_t trials;
    };
    std::vector<OracleCmp> oracle_cmp;
};

Payload build_payload(int threads) {
    Payload pl;
    ojson& j = pl.json;

    // Criterion 9: theorem1 sufficiency on the square, n=16, r=4.
    Polytope square = fixture("square.json");
    ojson suff = ojson::array();
    for (auto [s, d] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}}) {
        Payload::Sufficiency out;
        ojson row;
        row["s"] = s;
        row["d"] = d;
        try {
            FringeAssignment fa =
                assemble_fringe(square, 16, s, d, rat(4), FringeMode::Theorem1);
            MiddleReport m = middle_presence_rate(square, 16, rat(4), fa, 10000, 160401,
                                                  threads);
            out.assembled = true;
            out.conditional_exact = m.conditional_exact;
            out.full_event_count = m.both_exact_count;
            row["conditional_exact"] = m.conditional_exact;
            row["full_event_count"] = m.both_exact_count;
            row["middle_sum_rate"] = num6(m.sum_rate);
            row["middle_diff_rate"] = num6(m.diff_rate);
        } catch (const Error& e) {
            out.error = e.what();
            row["error"] = e.what();
        }
        pl.sufficiency.push_back(out);
        suff.push_back(row);
    }
    j["theorem1_sufficiency_square_n16_r4"] = suff;

    // Criterion 10: necessity decay on the triangle.
    Polytope tri = fixture("triangle.json");
    ojson nec;
    ojson exact_rows = ojson::array();
    for (long n = 1; n <= 4; ++n) {
        JointHistogram h = exact_enumerate(tri, n, 24, threads);
        double p = static_cast<double>(h.exact_sd(0, 0)) / static_cast<double>(h.total);
        pl.necessity_exact.push_back(p);
        exact_rows.push_back(ojson::array({n, num6(p)}));
    }
    nec["exact"] = exact_rows;
    SampleConfig nc;
    nc.polytope = &tri;
    nc.samples = 100000;
    nc.classifier = Classifier::ExactSd;
    nc.s = 0;
    nc.d = 0;
    nc.threads = threads;
    nc.n = 10;
    nc.seed = 1010;
    pl.necessity_mc10 = sample_estimate(nc);
    nc.n = 20;
    nc.seed = 2020;
    pl.necessity_mc20 = sample_estimate(nc);
    nec["mc_n10"] = ojson::array(
        {pl.necessity_mc10.hits, num6(pl.necessity_mc10.proportion),
         num6(pl.necessity_mc10.ci_high)});
    nec["mc_n20"] = ojson::array(
        {pl.necessity_mc20.hits, num6(pl.necessity_mc20.proportion),
         num6(pl.necessity_mc20.ci_high)});
    j["theorem1_necessity_triangle"] = nec;

    // Criterion 11: MSTD proportion on the interval at n=32.
    Polytope interval = fixture("interval.json");
    SampleConfig mc;
    mc.polytope = &interval;
    mc.n = 32;
    mc.samples = 1000000;
    mc.seed = 3232;
    mc.classifier = Classifier::Mstd;
    mc.threads = threads;
    pl.mstd32 = sample_estimate(mc);
    j["mstd_interval_n32"] =
        ojson::array({pl.mstd32.hits, num6(pl.mstd32.proportion), num6(pl.mstd32.ci_low),
                      num6(pl.mstd32.ci_high)});

    // Criterion 12: probability bounds at 100 random k per mode and fixture.
    ojson bounds = ojson::array();
    for (auto [name, n] : std::vector<std::pair<std::string, long>>{{"interval.json", 30},
                                                                    {"square.json", 8}}) {
        Polytope P = fixture(name);
        LatticeSet L = enumerate_lattice(P, n);
        SumDiffKernel kernel(L);
        for (PairMode mode : {PairMode::Sum, PairMode::Diff}) {
            const auto& region = mode == PairMode::Sum ? kernel.base_sum_points()
                                                       : kernel.base_diff_points();
            RngStream pick(777, mode == PairMode::Sum ? 0 : 1);
            int held = 0;
            for (int i = 0; i < 100; ++i) {
                const Point& k = region[pick.next_below(region.size())];
                BoundCheck bc = missing_prob_bound_check(
                    P, n, k, mode, 10000, 4100 + static_cast<std::uint64_t>(i));
                ++pl.bound_checks_total;
                if (bc.holds) {
                    ++pl.bound_checks_held;
                    ++held;
                }
            }
            ojson row;
            row["fixture"] = name;
            row["n"] = n;
            row["mode"] = mode == PairMode::Sum ? "sum" : "diff";
            row["held"] = held;
            bounds.push_back(row);
        }
    }
    j["missing_probability_bounds"] = bounds;

    // Criterion 13: Monte Carlo vs exhaustive enumeration on small bases.
    ojson oracle = ojson::array();
    for (auto [name, n] : std::vector<std::pair<std::string, long>>{
             {"interval.json", 15}, {"square.json", 3}, {"triangle.json", 4},
             {"tetrahedron.json", 1}}) {
        Polytope P = fixture(name);
        JointHistogram h = exact_enumerate(P, n, 24, threads);
        Payload::OracleCmp cmp;
        cmp.fixture = name;
        cmp.n = n;
        cmp.trials = 100000;
        cmp.exact_mstd = static_cast<double>(h.mstd) / static_cast<double>(h.total);
        cmp.exact_sd00 =
            static_cast<double>(h.exact_sd(0, 0)) / static_cast<double>(h.total);
        SampleConfig sc;
        sc.polytope = &P;
        sc.n = n;
        sc.samples = cmp.trials;
        sc.threads = threads;
        sc.classifier = Classifier::Mstd;
        sc.seed = 1300;
        cmp.mc_mstd = sample_estimate(sc).proportion;
        sc.classifier = Classifier::ExactSd;
        sc.s = 0;
        sc.d = 0;
        sc.seed = 1301;
        cmp.mc_sd00 = sample_estimate(sc).proportion;
        pl.oracle_cmp.push_back(cmp);
        ojson row;
        row["fixture"] = name;
        row["n"] = n;
        row["exact_mstd"] = num6(cmp.exact_mstd);
        row["mc_mstd"] = num6(cmp.mc_mstd);
        row["exact_sd00"] = num6(cmp.exact_sd00);
        row["mc_sd00"] = num6(cmp.mc_sd00);
        oracle.push_back(row);
    }
    j["oracle_agreement"] = oracle;

    return pl;
}

bool within_3sigma(double est, double exact, std::int64_t trials) {
    double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(trials));
    return std::abs(est - exact) <= 3.0 * sigma;
}

}  // namespace

int main() {
    run_criterion(1, "triangle exact counts at n=3", [] {
        auto t0 = std::chrono::steady_clock::now();
        Polytope T = fixture("triangle.json");
        LatticeSet L = enumerate_lattice(T, 3);
        SumDiffKernel k(L);
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        bool ok = L.size() == 10 && k.base_sum_count() == 28 &&
                  k.base_diff_count() == 37 && ms < 1000;
        std::ostringstream os;
        os << "|L|=" << L.size() << " |S|=" << k.base_sum_count()
           << " |D|=" << k.base_diff_count();
        return std::make_pair(ok, os.str());
    });

    run_criterion(2, "triangle closed forms for n=1..20", [] {
        auto t0 = std::chrono::steady_clock::now();
        Polytope T = fixture("triangle.json");
        for (long n = 1; n <= 20; ++n) {
            SumDiffKernel k(enumerate_lattice(T, n));
            if (k.base_sum_count() != 2 * n * n + 3 * n + 1 ||
                k.base_diff_count() != 3 * n * n + 3 * n + 1)
                return std::make_pair(false, "mismatch at n=" + std::to_string(n));
        }
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        return std::make_pair(ms < 10000,
                              std::string("2n^2+3n+1 and 3n^2+3n+1 hold"));
    });

    run_criterion(3, "hexagon H sumset 181 / diffset 187", [] {
        Polytope H = fixture("hexagonH.json");
        SumDiffKernel k(enumerate_lattice(H, 1));
        std::ostringstream os;
        os << "|S|=" << k.base_sum_count() << " |D|=" << k.base_diff_count();
        return std::make_pair(k.base_sum_count() == 181 && k.base_diff_count() == 187,
                              os.str());
    });

    run_criterion(4, "Conway set is sum-dominant 26 vs 25", [] {
        std::vector<Point> pts;
        for (Coord x : {0, 2, 3, 4, 7, 11, 12, 14}) pts.push_back({x});
        LatticeSet A = LatticeSet::from_points(1, pts);
        SumDiffKernel k(A);
        LatticeSet base = enumerate_lattice(fixture("interval.json"), 14);
        bool ok = k.base_sum_count() == 26 && k.base_diff_count() == 25 &&
                  classify(A, base) == SetClass::SumDominant;
        return std::make_pair(ok, std::string("|A+A|=") + std::to_string(k.base_sum_count()) +
                                      " |A-A|=" + std::to_string(k.base_diff_count()));
    });

    run_criterion(5, "geometry verdicts on the fixture corpus", [] {
        auto sq = is_locally_point_symmetric(fixture("square.json"));
        auto tri = is_locally_point_symmetric(fixture("triangle.json"));
        auto hex = is_locally_point_symmetric(fixture("hexagonH.json"));
        auto tet = is_locally_point_symmetric(fixture("tetrahedron.json"));
        bool ok = sq.lps && sq.sa_pairs.size() == 2 && !tri.lps &&
                  tri.sa_pairs.size() == 3 && hex.lps && hex.sa_pairs.size() == 3 &&
                  !tet.lps;
        std::ostringstream os;
        os << "square " << sq.sa_pairs.size() << " pairs lps=" << sq.lps << "; triangle "
           << tri.sa_pairs.size() << " lps=" << tri.lps << "; hexagon "
           << hex.sa_pairs.size() << " lps=" << hex.lps << "; tetrahedron lps=" << tet.lps;
        return std::make_pair(ok, os.str());
    });

    run_criterion(6, "unique differences = antipodal vertex differences (LPS)", [] {
        for (const char* name : {"square.json", "hexagonH.json"}) {
            Polytope P = fixture(name);
            auto pairs = sa_pairs(P);
            for (long n = 1; n <= 3; ++n) {
                std::vector<Point> expected;
                for (auto [u, v] : pairs) {
                    expected.push_back((P.vertices[u] - P.vertices[v]) * n);
                    expected.push_back((P.vertices[v] - P.vertices[u]) * n);
                }
                std::sort(expected.begin(), expected.end());
                if (uniquely_formed_diffs(enumerate_lattice(P, n)) != expected)
                    return std::make_pair(false, std::string(name) + " n=" +
                                                     std::to_string(n));
            }
        }
        return std::make_pair(true, std::string("square and hexagon, n=1..3, exact"));
    });

    run_criterion(7, "unique-difference witness edges (non-LPS)", [] {
        for (const char* name : {"triangle.json", "quad.json"}) {
            Polytope P = fixture(name);
            auto w = find_unique_diff_edge(P);
            if (!w) return std::make_pair(false, std::string(name) + ": no witness");
            auto [v, e] = *w;
            Coord b = P.edge_lattice_gcd(e);
            for (long n = 1; n <= 4; ++n) {
                Point nv = P.vertices[v] * n;
                EdgeMap em = edge_map(P, e, n, P.edges[e].first);
                for (long t = 0; t <= em.length; ++t) {
                    Point k = em.at(t) - nv;
                    if (intersection_count(P, n, k, PairMode::Diff) != 1 ||
                        intersection_count(P, n, -k, PairMode::Diff) != 1)
                        return std::make_pair(false, std::string(name) +
                                                         ": non-unique witness diff");
                }
                auto uniq = uniquely_formed_diffs(enumerate_lattice(P, n));
                if (static_cast<Coord>(uniq.size()) < 2 * (n * b + 1))
                    return std::make_pair(false,
                                          std::string(name) + ": too few unique diffs");
            }
        }
        return std::make_pair(true, std::string("witnesses verified at n=1..4"));
    });

    run_criterion(8, "1-D fringe search and edge gap sets", [] {
        std::ostringstream os;
        for (int s = 0; s <= 3; ++s)
            for (int d = 0; d <= 3; ++d) {
                Fringe1D f = find_fringe_1d(s, d, 32);
                if (!validate_fringe_1d(f.low, f.high_reflected, f.r_prime, s, d))
                    return std::make_pair(false, "oracle rejects (s,d)=(" +
                                                     std::to_string(s) + "," +
                                                     std::to_string(d) + ")");
                if (s == 0 && d == 0) os << "r'(" << s << "," << d << ")=" << f.r_prime;
            }
        os << " ... all (s,d)<=3 found";
        for (int d = 0; d <= 5; ++d) {
            EdgeGapSet g = find_edge_gap_set(d);
            if (g.gap_size != d ||
                static_cast<int>(g.present.size()) != g.window + 1 - d)
                return std::make_pair(false, "edge gap set broken for d=" +
                                                 std::to_string(d));
        }
        os << "; gap sets d<=5 ok";
        return std::make_pair(true, os.str());
    });

    // Criteria 9-13 share one payload computation (threads = 1).
    auto payload_t0 = std::chrono::steady_clock::now();
    Payload base = build_payload(1);
    double payload_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - payload_t0)
                            .count();
    std::printf("---- shared payload for criteria 9-13 computed in %.0f ms\n", payload_ms);

    run_criterion(9, "theorem1 sufficiency: square n=16 r=4, (0,0),(1,0),(0,1)", [&] {
        std::ostringstream os;
        bool ok = true;
        const char* tags[3] = {"(0,0)", "(1,0)", "(0,1)"};
        for (int i = 0; i < 3; ++i) {
            const auto& sf = base.sufficiency[i];
            if (!sf.assembled) {
                ok = false;
                os << tags[i] << " failed: " << sf.error << "; ";
            } else if (!sf.conditional_exact || sf.full_event_count < 10) {
                ok = false;
                os << tags[i] << " conditional_exact=" << sf.conditional_exact
                   << " events=" << sf.full_event_count << "; ";
            } else {
                os << tags[i] << " events=" << sf.full_event_count << "; ";
            }
        }
        if (payload_ms >= 120000) {
            ok = false;
            os << "over the 2 min budget; ";
        }
        return std::make_pair(ok, os.str());
    });

    run_criterion(10, "theorem1 necessity: triangle exact_sd(0,0) decay", [&] {
        std::ostringstream os;
        bool ok = true;
        for (std::size_t i = 1; i < base.necessity_exact.size(); ++i)
            if (!(base.necessity_exact[i] < base.necessity_exact[i - 1])) ok = false;
        double p4 = base.necessity_exact.back();
        if (!(base.necessity_mc20.proportion <= base.necessity_mc10.proportion)) ok = false;
        if (!(base.necessity_mc10.ci_high < p4)) ok = false;
        if (!(base.necessity_mc20.ci_high < p4)) ok = false;
        os << "exact:";
        for (double p : base.necessity_exact) os << ' ' << fmt_g6(p);
        os << "; mc10=" << fmt_g6(base.necessity_mc10.proportion)
           << " mc20=" << fmt_g6(base.necessity_mc20.proportion);
        return std::make_pair(ok, os.str());
    });

    run_criterion(11, "MSTD proportion band on the interval at n=32", [&] {
        double p = base.mstd32.proportion;
        std::ostringstream os;
        os << "estimate " << fmt_g6(p) << " in [1e-4, 1e-3], hits " << base.mstd32.hits;
        return std::make_pair(p >= 1e-4 && p <= 1e-3, os.str());
    });

    run_criterion(12, "missing-probability bounds hold at random k", [&] {
        std::ostringstream os;
        os << base.bound_checks_held << "/" << base.bound_checks_total << " held";
        return std::make_pair(base.bound_checks_held == base.bound_checks_total &&
                                  base.bound_checks_total == 400,
                              os.str());
    });

    run_criterion(13, "Monte Carlo within 3 sigma of exhaustive enumeration", [&] {
        std::ostringstream os;
        bool ok = true;
        for (const auto& cmp : base.oracle_cmp) {
            bool mstd_ok = within_3sigma(cmp.mc_mstd, cmp.exact_mstd, cmp.trials);
            bool sd_ok = within_3sigma(cmp.mc_sd00, cmp.exact_sd00, cmp.trials);
            if (!mstd_ok || !sd_ok) {
                ok = false;
                os << cmp.fixture << " disagrees; ";
            }
        }
        os << base.oracle_cmp.size() << " fixtures compared";
        return std::make_pair(ok, os.str());
    });

    run_criterion(14, "criteria 9-13 payloads byte-identical across 1/4/8 threads", [&] {
        std::string p1 = base.json.dump(2);
        std::string p4 = build_payload(4).json.dump(2);
        std::string p8 = build_payload(8).json.dump(2);
        bool ok = p1 == p4 && p1 == p8;
        return std::make_pair(ok, ok ? "identical payloads" : "payloads differ");
    });

    int failed = 0;
    for (const auto& o : outcomes)
        if (!o.pass) ++failed;
    std::printf("%zu criteria, %d failed\n", outcomes.size(), failed);
    return failed;
}
