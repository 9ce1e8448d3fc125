#include "polylab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "polylab/errors.hpp"
#include "polylab/geometry.hpp"
#include "polylab/rng.hpp"

namespace polylab {

namespace {

struct ForcedBits {
    std::vector<std::uint64_t> forced_present;
    std::vector<std::uint64_t> free_mask;
    std::size_t words = 0;
    std::int64_t forced_absent_count = 0;
};

void check_fringe_compat(const FringeAssignment& f, const Polytope& P, long n,
                         const LatticeSet& base) {
    if (f.dim != P.dim || f.n != n || f.base_size != base.size() ||
        f.base_hash != lattice_hash(base))
        throw IncompatibleFringe("fringe assignment was built for a different (P, n)");
}

ForcedBits forced_bits(const LatticeSet& base, const FringeAssignment* fringe) {
    ForcedBits fb;
    fb.words = (base.size() + 63) / 64;
    fb.forced_present.assign(fb.words, 0);
    fb.free_mask.assign(fb.words, 0);
    if (!fringe) {
        for (std::size_t i = 0; i < base.size(); ++i)
            fb.free_mask[i >> 6] |= std::uint64_t(1) << (i & 63);
        return fb;
    }
    std::vector<char> state(base.size(), 2);  // 2 = free
    for (const Point& p : fringe->forced_present.points) {
        auto idx = base.index_of(p);
        if (!idx) throw IncompatibleFringe("forced point outside L(nP)");
        state[*idx] = 1;
    }
    for (const Point& p : fringe->forced_absent.points) {
        auto idx = base.index_of(p);
        if (!idx) throw IncompatibleFringe("forced point outside L(nP)");
        state[*idx] = 0;
        ++fb.forced_absent_count;
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (state[i] == 1) fb.forced_present[i >> 6] |= std::uint64_t(1) << (i & 63);
        if (state[i] == 2) fb.free_mask[i >> 6] |= std::uint64_t(1) << (i & 63);
    }
    return fb;
}

void draw_subset(std::vector<std::uint64_t>& words, const ForcedBits& fb, RngStream& rng) {
    for (std::size_t w = 0; w < fb.words; ++w)
        words[w] = fb.forced_present[w] | (rng.next() & fb.free_mask[w]);
}

std::size_t popcount_words(const std::vector<std::uint64_t>& words) {
    std::size_t c = 0;
    for (std::uint64_t w : words) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
}

// Runs fn(chunk_begin, chunk_end, worker_index) on `threads` workers over
// [0, total). Deterministic partition; combining is the caller's job.
void run_chunked(std::int64_t total, int threads, int& used,
                 const std::function<void(std::int64_t, std::int64_t, int)>& fn) {
    used = static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(threads, total)));
    if (used == 1) {
        fn(0, total, 0);
        return;
    }
    std::vector<std::thread> pool;
    std::int64_t chunk = (total + used - 1) / used;
    for (int t = 0; t < used; ++t) {
        std::int64_t b = t * chunk, e = std::min<std::int64_t>(total, b + chunk);
        if (b >= e) break;
        pool.emplace_back(fn, b, e, t);
    }
    for (auto& th : pool) th.join();
}

}  // namespace

const char* to_string(Classifier c) {
    switch (c) {
        case Classifier::ExactSd: return "exact_sd";
        case Classifier::AtLeastD: return "at_least_d";
        case Classifier::Mstd: return "mstd";
        case Classifier::Balanced: return "balanced";
        case Classifier::DiffDominant: return "diff_dominant";
    }
    return "?";
}

std::pair<double, double> wilson_interval(std::int64_t hits, std::int64_t trials, double z) {
    if (trials < 1 || hits < 0 || hits > trials)
        throw std::invalid_argument("wilson_interval: bad arguments");
    double n = static_cast<double>(trials);
    double p = static_cast<double>(hits) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

EstimateResult sample_estimate(const SampleConfig& cfg) {
    if (!cfg.polytope) throw std::invalid_argument("sample_estimate: missing polytope");
    if (cfg.samples < 1) throw std::invalid_argument("sample_estimate: samples must be >= 1");
    LatticeSet base = enumerate_lattice(*cfg.polytope, cfg.n);
    if (cfg.fringe) check_fringe_compat(*cfg.fringe, *cfg.polytope, cfg.n, base);
    ForcedBits fb = forced_bits(base, cfg.fringe ? &*cfg.fringe : nullptr);

    int used = 1;
    std::vector<std::int64_t> hits_by_worker(std::max(1, cfg.threads), 0);
    run_chunked(cfg.samples, cfg.threads, used, [&](std::int64_t b, std::int64_t e, int w) {
        SumDiffKernel kernel(base);
        std::vector<std::uint64_t> words(fb.words, 0);
        std::int64_t local = 0;
        for (std::int64_t t = b; t < e; ++t) {
            RngStream rng(cfg.seed, static_cast<std::uint64_t>(t));
            draw_subset(words, fb, rng);
            auto stats = kernel.eval(words);
            bool empty = popcount_words(words) == 0;
            bool hit = false;
            switch (cfg.classifier) {
                case Classifier::ExactSd:
                    hit = (kernel.base_sum_count() - stats.sum_count == cfg.s) &&
                          (kernel.base_diff_count() - stats.diff_count == 2 * cfg.d);
                    break;
                case Classifier::AtLeastD:
                    hit = (kernel.base_sum_count() - stats.sum_count == cfg.s) &&
                          (kernel.base_diff_count() - stats.diff_count >= 2 * cfg.d);
                    break;
                case Classifier::Mstd:
                    hit = !empty && stats.sum_count > stats.diff_count;
                    break;
                case Classifier::Balanced:
                    hit = !empty && stats.sum_count == stats.diff_count;
                    break;
                case Classifier::DiffDominant:
                    hit = !empty && stats.sum_count < stats.diff_count;
                    break;
            }
            if (hit) ++local;
        }
        hits_by_worker[w] = local;
    });

    EstimateResult res;
    res.trials = cfg.samples;
    for (std::int64_t h : hits_by_worker) res.hits += h;
    res.proportion = static_cast<double>(res.hits) / static_cast<double>(res.trials);
    auto [lo, hi] = wilson_interval(res.hits, res.trials);
    res.ci_low = lo;
    res.ci_high = hi;
    return res;
}

JointHistogram exact_enumerate(const Polytope& P, long n, int max_bits, int threads) {
    LatticeSet base = enumerate_lattice(P, n);
    int bits = static_cast<int>(base.size());
    if (bits > max_bits || bits > 62)
        throw TooLarge("|L(nP)| = " + std::to_string(bits) +
                       " exceeds the enumeration cap " + std::to_string(max_bits));
    std::uint64_t total = std::uint64_t(1) << bits;

    int used = 1;
    std::vector<JointHistogram> parts(std::max(1, threads));
    run_chunked(static_cast<std::int64_t>(total), threads, used,
                [&](std::int64_t b, std::int64_t e, int w) {
                    SumDiffKernel kernel(base);
                    std::vector<std::uint64_t> words(1, 0);
                    JointHistogram& part = parts[w];
                    for (std::int64_t mask = b; mask < e; ++mask) {
                        words[0] = static_cast<std::uint64_t>(mask);
                        auto stats = kernel.eval(words);
                        std::int64_t ms = kernel.base_sum_count() - stats.sum_count;
                        std::int64_t md = kernel.base_diff_count() - stats.diff_count;
                        ++part.counts[{ms, md}];
                        if (mask != 0) {
                            if (stats.sum_count > stats.diff_count)
                                ++part.mstd;
                            else if (stats.sum_count == stats.diff_count)
                                ++part.balanced;
                            else
                                ++part.diff_dominant;
                        }
                    }
                });

    JointHistogram out;
    out.total = total;
    for (const JointHistogram& part : parts) {
        for (const auto& [key, cnt] : part.counts) out.counts[key] += cnt;
        out.mstd += part.mstd;
        out.balanced += part.balanced;
        out.diff_dominant += part.diff_dominant;
    }
    return out;
}

BoundCheck missing_prob_bound_check(const Polytope& P, long n, const Point& k, PairMode mode,
                                    std::int64_t samples, std::uint64_t seed,
                                    const FringeAssignment* fringe) {
    LatticeSet base = enumerate_lattice(P, n);
    if (fringe) check_fringe_compat(*fringe, P, n, base);

    // Representations of k over base indices; for sums each unordered pair
    // once, for differences each ordered pair once.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> reps;
    std::int64_t intersection = 0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        Point partner = (mode == PairMode::Sum) ? k - base.points[i] : base.points[i] + k;
        auto j = base.index_of(partner);
        if (!j) continue;
        ++intersection;
        if (mode == PairMode::Sum) {
            if (*j >= i)
                reps.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(*j)});
        } else {
            reps.push_back({static_cast<std::uint32_t>(*j), static_cast<std::uint32_t>(i)});
        }
    }
    if (reps.empty())
        throw std::invalid_argument("k = " + to_string(k) + " is outside the potential region");

    ForcedBits fb = forced_bits(base, fringe);
    std::vector<std::uint64_t> words(fb.words, 0);
    std::int64_t missing = 0;
    for (std::int64_t t = 0; t < samples; ++t) {
        RngStream rng(seed, static_cast<std::uint64_t>(t));
        draw_subset(words, fb, rng);
        bool present = false;
        for (const auto& [i, j] : reps) {
            if (((words[i >> 6] >> (i & 63)) & 1) && ((words[j >> 6] >> (j & 63)) & 1)) {
                present = true;
                break;
            }
        }
        if (!present) ++missing;
    }

    BoundCheck out;
    out.intersection = intersection;
    out.empirical = static_cast<double>(missing) / static_cast<double>(samples);
    double l = static_cast<double>(fb.forced_absent_count);
    out.bound = std::pow(0.75, static_cast<double>(intersection) / 2.0 - l);
    double se = std::sqrt(out.empirical * (1.0 - out.empirical) /
                          static_cast<double>(samples));
    out.holds = out.empirical <= out.bound + 3.0 * se;
    return out;
}

MiddleReport middle_presence_rate(const Polytope& P, long n, const Rat& r,
                                  const FringeAssignment& fringe, std::int64_t samples,
                                  std::uint64_t seed, int threads) {
    LatticeSet base = enumerate_lattice(P, n);
    check_fringe_compat(fringe, P, n, base);
    if (fringe.radius != r)
        throw IncompatibleFringe("fringe radius differs from the requested middle radius");

    SumDiffKernel probe(base);
    Int num = r.get_num(), den = r.get_den();
    Int r2num = num * num, den2 = den * den;
    auto far_from_all = [&](const Point& p, const std::vector<Point>& verts) {
        for (const Point& v : verts) {
            Int d2 = 0;
            for (int kk = 0; kk < P.dim; ++kk) {
                Int diff = Int(p[kk]) - Int(v[kk]);
                d2 += diff * diff;
            }
            if (d2 * den2 <= r2num) return false;
        }
        return true;
    };

    std::vector<Point> sum_verts;
    for (const Point& v : P.vertices) sum_verts.push_back(v * (2 * n));
    std::vector<Point> diff_verts;
    for (auto [u, v] : sa_pairs(P)) {
        Point d = (P.vertices[u] - P.vertices[v]) * n;
        diff_verts.push_back(d);
        diff_verts.push_back(-d);
    }

    std::vector<std::int64_t> mid_sum_idx, mid_diff_idx;
    for (const Point& p : probe.base_sum_points())
        if (far_from_all(p, sum_verts)) mid_sum_idx.push_back(probe.sum_index(p));
    for (const Point& p : probe.base_diff_points())
        if (far_from_all(p, diff_verts)) mid_diff_idx.push_back(probe.diff_index(p));

    ForcedBits fb = forced_bits(base, &fringe);

    struct Acc {
        std::int64_t sum_ok = 0, diff_ok = 0, both = 0, both_exact = 0;
    };
    int used = 1;
    std::vector<Acc> parts(std::max(1, threads));
    run_chunked(samples, threads, used, [&](std::int64_t b, std::int64_t e, int w) {
        SumDiffKernel kernel(base);
        std::vector<std::uint64_t> words(fb.words, 0);
        Acc& acc = parts[w];
        for (std::int64_t t = b; t < e; ++t) {
            RngStream rng(seed, static_cast<std::uint64_t>(t));
            draw_subset(words, fb, rng);
            auto stats = kernel.eval(words);
            bool s_ok = std::all_of(mid_sum_idx.begin(), mid_sum_idx.end(),
                                    [&](std::int64_t i) { return kernel.sum_marked(i); });
            bool d_ok = std::all_of(mid_diff_idx.begin(), mid_diff_idx.end(),
                                    [&](std::int64_t i) { return kernel.diff_marked(i); });
            if (s_ok) ++acc.sum_ok;
            if (d_ok) ++acc.diff_ok;
            if (s_ok && d_ok) {
                ++acc.both;
                std::int64_t ms = kernel.base_sum_count() - stats.sum_count;
                std::int64_t md = kernel.base_diff_count() - stats.diff_count;
                bool exact = ms == fringe.predicted_missing_sums &&
                             (fringe.diffs_at_least ? md >= fringe.predicted_missing_diffs
                                                    : md == fringe.predicted_missing_diffs);
                if (exact) ++acc.both_exact;
            }
        }
    });

    MiddleReport rep;
    rep.trials = samples;
    std::int64_t s_ok = 0, d_ok = 0;
    for (const Acc& a : parts) {
        s_ok += a.sum_ok;
        d_ok += a.diff_ok;
        rep.both_count += a.both;
        rep.both_exact_count += a.both_exact;
    }
    rep.sum_rate = static_cast<double>(s_ok) / static_cast<double>(samples);
    rep.diff_rate = static_cast<double>(d_ok) / static_cast<double>(samples);
    rep.conditional_exact = rep.both_count == rep.both_exact_count;
    return rep;
}

}  // namespace polylab
