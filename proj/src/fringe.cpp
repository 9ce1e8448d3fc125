#include "polylab/fringe.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

#include "polylab/errors.hpp"
#include "polylab/geometry.hpp"

namespace polylab {

namespace {

// --- 1-D interval model ---------------------------------------------------

struct Model1D {
    int N;
    std::vector<char> present;  // indices 0..N
};

Model1D build_model(const std::vector<int>& low, const std::vector<int>& high_reflected,
                    int r_prime, int N) {
    Model1D m;
    m.N = N;
    m.present.assign(N + 1, 0);
    for (int t = r_prime + 1; t <= N - r_prime - 1; ++t) m.present[t] = 1;
    for (int t : low) m.present[t] = 1;
    for (int t : high_reflected) m.present[N - t] = 1;
    return m;
}

bool model_ok(const Model1D& m, int r_prime, int s, int d) {
    int N = m.N;
    std::vector<char> sums(2 * N + 1, 0);
    std::vector<char> diffs(2 * N + 1, 0);  // diff k stored at k + N
    for (int a = 0; a <= N; ++a) {
        if (!m.present[a]) continue;
        for (int b = a; b <= N; ++b) {
            if (!m.present[b]) continue;
            sums[a + b] = 1;
            diffs[(b - a) + N] = 1;
            diffs[(a - b) + N] = 1;
        }
    }
    int miss_s = 0;
    for (int k = 0; k <= 2 * N; ++k) {
        if (sums[k]) continue;
        ++miss_s;
        if (k > r_prime && k < 2 * N - r_prime) return false;  // middle sum missing
    }
    if (miss_s != s) return false;
    int miss_d = 0;
    for (int k = -N; k <= N; ++k) {
        if (diffs[k + N]) continue;
        ++miss_d;
        if (k > -(N - r_prime) && k < N - r_prime) return false;  // middle diff missing
    }
    return miss_d == 2 * d;
}

// Missing positions of {0..r'} in the self-sumset of a window mask.
int window_self_missing(std::uint64_t mask, int w) {
    std::uint64_t wmask = (w >= 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << w) - 1);
    std::uint64_t sums = 0;
    std::uint64_t m = mask;
    while (m) {
        int b = __builtin_ctzll(m);
        sums |= (mask << b);
        m &= m - 1;
    }
    return __builtin_popcountll(~sums & wmask);
}

int window_cross_missing(std::uint64_t low, std::uint64_t high, int w) {
    std::uint64_t wmask = (w >= 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << w) - 1);
    std::uint64_t sums = 0;
    std::uint64_t m = low;
    while (m) {
        int b = __builtin_ctzll(m);
        sums |= (high << b);
        m &= m - 1;
    }
    return __builtin_popcountll(~sums & wmask);
}

std::vector<int> mask_to_set(std::uint64_t mask, int w) {
    std::vector<int> out;
    for (int i = 0; i < w; ++i)
        if ((mask >> i) & 1) out.push_back(i);
    return out;
}

// Minimal size of A within [0,j] whose self-sumset misses at most s values
// of [0,j]. Small table driving the search prefilter.
int min_near_basis_size(int s, int j) {
    static std::mutex m;
    static std::map<std::pair<int, int>, int> memo;
    std::lock_guard<std::mutex> lock(m);
    auto it = memo.find({s, j});
    if (it != memo.end()) return it->second;

    int result = 0;
    if (j + 1 > s) {
        for (int k = 1;; ++k) {
            // DFS over ascending elements; prune when the uncovered prefix
            // below twice the smallest open slot cannot be fixed.
            std::vector<int> chosen;
            std::function<bool(int)> dfs = [&](int next) -> bool {
                std::uint64_t sums = 0;
                for (int a : chosen)
                    for (int b : chosen)
                        if (a + b <= j) sums |= std::uint64_t(1) << (a + b);
                std::uint64_t window = (j == 63) ? ~std::uint64_t(0)
                                                 : ((std::uint64_t(1) << (j + 1)) - 1);
                int missing_below = __builtin_popcountll(~sums & window &
                                                         ((std::uint64_t(1) << next) - 1));
                if (missing_below > s) return false;  // sums below `next` are final
                if (static_cast<int>(chosen.size()) == k)
                    return __builtin_popcountll(~sums & window) <= s;
                if (next > j) return false;
                for (int v = next; v <= j; ++v) {
                    chosen.push_back(v);
                    if (dfs(v + 1)) return true;
                    chosen.pop_back();
                }
                return false;
            };
            if (dfs(0)) {
                result = k;
                break;
            }
        }
    }
    memo[{s, j}] = result;
    return result;
}

}  // namespace

bool validate_fringe_1d(const std::vector<int>& low, const std::vector<int>& high_reflected,
                        int r_prime, int s, int d) {
    if (r_prime < 0) throw std::invalid_argument("negative window radius");
    for (int t : low)
        if (t < 0 || t > r_prime) throw std::invalid_argument("low set outside the window");
    for (int t : high_reflected)
        if (t < 0 || t > r_prime) throw std::invalid_argument("high set outside the window");
    for (int N : {3 * r_prime + 3, 3 * r_prime + 4})
        if (!model_ok(build_model(low, high_reflected, r_prime, N), r_prime, s, d))
            return false;
    return true;
}

Fringe1D find_fringe_1d(int s, int d, int r_max) {
    if (s < 0 || d < 0) throw std::invalid_argument("negative target counts");

    static std::mutex cache_mutex;
    static std::map<std::pair<int, int>, Fringe1D> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({s, d});
        if (it != cache.end() && it->second.r_prime <= r_max) return it->second;
    }

    for (int rp = 0; rp <= r_max; ++rp) {
        int w = rp + 1;
        if (w > 26) break;  // mask space beyond any window this search needs
        std::uint64_t nmasks = std::uint64_t(1) << w;

        // The window conditions below are necessary: missing sums split as
        // low-window self sums plus high-window self sums, and the missing
        // top differences are exactly the window values absent from
        // low + high_reflected. The full oracle stays the final word.
        std::vector<std::uint8_t> selfmiss(nmasks);
        std::vector<std::vector<std::uint32_t>> buckets(s + 1);
        for (std::uint64_t m = 0; m < nmasks; ++m) {
            int miss = window_self_missing(m, w);
            selfmiss[m] = static_cast<std::uint8_t>(std::min(miss, 255));
            if (miss <= s) buckets[miss].push_back(static_cast<std::uint32_t>(m));
        }

        std::uint64_t wmask = (std::uint64_t(1) << w) - 1;
        std::vector<int> min_high_size(s + 1);
        for (int sh = 0; sh <= s; ++sh) min_high_size[sh] = min_near_basis_size(sh, w - 1);

        // A valid high avoids every shifted-low mask of its missing set J, so
        // it lives inside the complement of their union, which must be large
        // enough for a near-basis and must itself have enough self-sums.
        // Lows where no d-subset of candidate positions survives this are
        // skipped; for survivors the surviving complements prefilter the
        // bucket scan.
        struct LowPlan {
            bool viable = false;
            bool restricted = false;          // allowed list is exhaustive
            std::vector<std::uint64_t> allowed;
        };
        auto plan_low = [&](std::uint64_t lowm, int sh) {
            LowPlan plan;
            if (d == 0) {
                plan.viable = true;
                return plan;
            }
            std::uint64_t cand = wmask;
            // A high with full self-sums contains 0 and 1, which pins down
            // where its missing cross values can sit.
            if (sh == 0) cand &= ~lowm & ~(lowm << 1);
            std::vector<std::uint64_t> shifted;  // (j - low) masks per candidate j
            for (int j = 0; j < w; ++j) {
                if (!((cand >> j) & 1)) continue;
                std::uint64_t mj = 0;
                std::uint64_t m = lowm & ((std::uint64_t(2) << j) - 1);
                while (m) {
                    int b = __builtin_ctzll(m);
                    mj |= std::uint64_t(1) << (j - b);
                    m &= m - 1;
                }
                shifted.push_back(mj);
            }
            int nc = static_cast<int>(shifted.size());
            if (nc < d) return plan;
            int budget = w - min_high_size[sh];
            const std::size_t kAllowedCap = 16;
            std::function<void(int, int, std::uint64_t)> rec = [&](int start, int left,
                                                                   std::uint64_t acc) {
                if (__builtin_popcountll(acc) > budget) return;
                if (left == 0) {
                    std::uint64_t allowed = wmask & ~acc;
                    if (window_self_missing(allowed, w) > sh) return;
                    plan.viable = true;
                    if (plan.allowed.size() < kAllowedCap)
                        plan.allowed.push_back(allowed);
                    else
                        plan.restricted = false;
                    return;
                }
                for (int i = start; i <= nc - left; ++i) rec(i + 1, left - 1, acc | shifted[i]);
            };
            plan.restricted = true;
            rec(0, d, 0);
            if (plan.allowed.size() >= kAllowedCap) plan.restricted = false;
            return plan;
        };

        // Validity is symmetric under swapping the two window sets (the
        // model reflects through N/2), so the lexicographically first valid
        // pair has high >= low and the inner scan can start there.
        auto scan_lows = [&](std::uint64_t from, std::uint64_t to)
            -> std::optional<std::pair<std::uint64_t, std::uint64_t>> {
            for (std::uint64_t lowm = from; lowm < to; ++lowm) {
                int sl = selfmiss[lowm];
                if (sl > s) continue;
                LowPlan plan = plan_low(lowm, s - sl);
                if (!plan.viable) continue;
                const auto& bucket = buckets[s - sl];
                auto it = std::lower_bound(bucket.begin(), bucket.end(),
                                           static_cast<std::uint32_t>(lowm));
                for (; it != bucket.end(); ++it) {
                    std::uint32_t highm = *it;
                    if (plan.restricted) {
                        bool inside = false;
                        for (std::uint64_t allowed : plan.allowed)
                            if ((highm & ~allowed) == 0) {
                                inside = true;
                                break;
                            }
                        if (!inside) continue;
                    }
                    if (window_cross_missing(lowm, highm, w) != d) continue;
                    if (validate_fringe_1d(mask_to_set(lowm, w), mask_to_set(highm, w), rp,
                                           s, d))
                        return std::make_pair(lowm, std::uint64_t(highm));
                }
            }
            return std::nullopt;
        };

        std::optional<std::pair<std::uint64_t, std::uint64_t>> hit;
        unsigned workers = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
        if (w < 14 || workers == 1) {
            hit = scan_lows(0, nmasks);
        } else {
            std::vector<std::optional<std::pair<std::uint64_t, std::uint64_t>>> results(
                workers);
            std::vector<std::thread> pool;
            std::uint64_t chunk = (nmasks + workers - 1) / workers;
            for (unsigned t = 0; t < workers; ++t) {
                std::uint64_t b = t * chunk, e = std::min(nmasks, b + chunk);
                if (b >= e) break;
                pool.emplace_back([&, b, e, t] { results[t] = scan_lows(b, e); });
            }
            for (auto& th : pool) th.join();
            for (const auto& res : results)
                if (res && (!hit || *res < *hit)) hit = res;
        }
        if (hit) {
            Fringe1D f{rp, mask_to_set(hit->first, w), mask_to_set(hit->second, w), s, d};
            std::lock_guard<std::mutex> lock(cache_mutex);
            cache[{s, d}] = f;
            return f;
        }
    }
    throw NotFound("no 1-D fringe for (s=" + std::to_string(s) + ", d=" + std::to_string(d) +
                   ") within r_max=" + std::to_string(r_max));
}

EdgeGapSet find_edge_gap_set(int d) {
    if (d < 0) throw std::invalid_argument("negative gap size");
    EdgeGapSet g;
    g.window = 4 * d;
    g.gap_size = d;
    for (int t = 0; t <= 2 * d; ++t) g.present.push_back(t);
    for (int t = 2 * d + 2; t <= 4 * d; t += 2) g.present.push_back(t);
    std::vector<int> full(g.window + 1);
    for (int t = 0; t <= g.window; ++t) full[t] = t;
    if (!validate_fringe_1d(g.present, full, g.window, 0, 0))
        throw NotFound("edge gap candidate failed the interval oracle for d=" +
                       std::to_string(d));
    return g;
}

std::pair<LatticeSet, LatticeSet> fringe_region(const Polytope& P, long n, const Rat& r) {
    if (r < 0) throw std::invalid_argument("negative fringe radius");
    LatticeSet L = enumerate_lattice(P, n);
    Int num = r.get_num(), den = r.get_den();
    Int r2num = num * num, den2 = den * den;
    std::vector<Point> near, far;
    for (const Point& p : L.points) {
        bool close = false;
        for (const Point& v : P.vertices) {
            Int d2 = 0;
            for (int k = 0; k < P.dim; ++k) {
                Int diff = Int(p[k]) - Int(n) * Int(v[k]);
                d2 += diff * diff;
            }
            if (d2 * den2 <= r2num) {
                close = true;
                break;
            }
        }
        (close ? near : far).push_back(p);
    }
    return {LatticeSet::from_points(P.dim, std::move(near)),
            LatticeSet::from_points(P.dim, std::move(far))};
}

std::uint64_t lattice_hash(const LatticeSet& s) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    mix(static_cast<std::uint64_t>(s.dim));
    for (const Point& p : s.points)
        for (Coord c : p.x) mix(static_cast<std::uint64_t>(c));
    return h;
}

namespace {

struct Theorem1Plan {
    int v1, v2;   // strictly antipodal pair, low end at v1
    int e1, e2;   // parallel edges, v1 in e1, v2 in e2
    Point step;   // shared primitive direction of both edge maps
};

Theorem1Plan plan_theorem1(const Polytope& P, const GeometryReport& rep) {
    Theorem1Plan plan{};
    auto [v1, v2] = (*rep.lps_pairing)[0];
    plan.v1 = v1;
    plan.v2 = v2;
    plan.e1 = P.edges_at(v1)[0];
    plan.step = primitive(P.vertices[P.edge_other(plan.e1, v1)] - P.vertices[v1]);
    plan.e2 = -1;
    for (int e : P.edges_at(v2)) {
        Point dir = primitive(P.vertices[P.edge_other(e, v2)] - P.vertices[v2]);
        if (dir == -plan.step) {
            plan.e2 = e;
            break;
        }
    }
    if (plan.e2 < 0)
        throw InternalInconsistency(
            "no negated edge direction at the antipodal partner despite cone equality");
    return plan;
}

struct Theorem2Plan {
    int witness_v;
    int e1;  // unique-difference witness edge, gap window at its lower endpoint
    int e2;  // host edge for the (s,0) end sets
};

Theorem2Plan plan_theorem2(const Polytope& P) {
    auto witness = find_unique_diff_edge(P);
    if (!witness) throw NoUniqueDiffEdge("polytope has no unique-difference witness");
    Theorem2Plan plan{};
    plan.witness_v = witness->first;
    plan.e1 = witness->second;
    plan.e2 = -1;
    auto [a, b] = P.edges[plan.e1];
    for (std::size_t e = 0; e < P.edges.size(); ++e) {
        if (static_cast<int>(e) == plan.e1) continue;
        auto [c, d] = P.edges[e];
        if (c != a && c != b && d != a && d != b) {
            plan.e2 = static_cast<int>(e);
            break;
        }
    }
    if (plan.e2 < 0)
        for (std::size_t e = 0; e < P.edges.size(); ++e)
            if (static_cast<int>(e) != plan.e1) {
                plan.e2 = static_cast<int>(e);
                break;
            }
    if (plan.e2 < 0) throw InternalInconsistency("polytope with a single edge");
    return plan;
}

Coord step_norm2(const Polytope& P, int e) {
    Point d = primitive(P.vertices[P.edges[e].second] - P.vertices[P.edges[e].first]);
    return dot(d, d);
}

Coord ceil_sqrt(Coord v) {
    Coord r = static_cast<Coord>(std::sqrt(static_cast<double>(v)));
    while (r * r < v) ++r;
    while (r > 0 && (r - 1) * (r - 1) >= v) --r;
    return r;
}

// Forced-point bookkeeping with conflict detection.
struct Placement {
    std::map<Point, bool> forced;

    void place(const Point& p, bool present) {
        auto [it, inserted] = forced.insert({p, present});
        if (!inserted && it->second != present)
            throw WindowOverlap("conflicting forced assignment at " + to_string(p));
    }
};

void check_window_in_ball(const Point& window_point, const Point& dilated_vertex,
                          const Rat& r) {
    Int d2 = 0;
    for (int k = 0; k < window_point.dim(); ++k) {
        Int diff = Int(window_point[k]) - Int(dilated_vertex[k]);
        d2 += diff * diff;
    }
    Int num = r.get_num(), den = r.get_den();
    if (d2 * den * den > num * num)
        throw WindowOverlap("window point " + to_string(window_point) +
                            " lies outside the fringe radius; increase r");
}

FringeAssignment finish_assignment(const Polytope& P, long n, const Rat& r,
                                   const Placement& placement, long predicted_s,
                                   long predicted_2d, bool at_least,
                                   std::vector<std::string> notes) {
    auto [B, M] = fringe_region(P, n, r);
    for (const auto& [p, present] : placement.forced) {
        (void)present;
        if (!B.contains(p))
            throw WindowOverlap("forced point " + to_string(p) +
                                " is not inside the fringe region");
    }
    std::vector<Point> present_pts, absent_pts;
    for (const Point& p : B.points) {
        auto it = placement.forced.find(p);
        if (it != placement.forced.end() && !it->second)
            absent_pts.push_back(p);
        else
            present_pts.push_back(p);  // window-present and filled points alike
    }
    FringeAssignment fa;
    fa.radius = r;
    fa.forced_present = LatticeSet::from_points(P.dim, std::move(present_pts));
    fa.forced_absent = LatticeSet::from_points(P.dim, std::move(absent_pts));
    fa.free_points = std::move(M);
    fa.predicted_missing_sums = predicted_s;
    fa.predicted_missing_diffs = predicted_2d;
    fa.diffs_at_least = at_least;
    fa.notes = std::move(notes);
    fa.dim = P.dim;
    fa.n = n;
    LatticeSet base = enumerate_lattice(P, n);
    fa.base_size = base.size();
    fa.base_hash = lattice_hash(base);
    return fa;
}

}  // namespace

Rat default_fringe_radius(const Polytope& P, int s, int d, FringeMode mode) {
    GeometryReport rep = is_locally_point_symmetric(P);
    Coord worst = 0;
    if (mode == FringeMode::Theorem1 || rep.lps) {
        if (!rep.lps) throw NotLps("theorem1 fringe requires local point symmetry");
        Fringe1D f = find_fringe_1d(s, d);
        Theorem1Plan plan = plan_theorem1(P, rep);
        Coord rp = f.r_prime;
        worst = rp * rp * dot(plan.step, plan.step);
    } else {
        Theorem2Plan plan = plan_theorem2(P);
        EdgeGapSet gap = find_edge_gap_set(d);
        Fringe1D f = find_fringe_1d(s, 0);
        Coord w1 = Coord(gap.window) * gap.window * step_norm2(P, plan.e1);
        Coord w2 = Coord(f.r_prime) * f.r_prime * step_norm2(P, plan.e2);
        worst = std::max(w1, w2);
    }
    return rat(ceil_sqrt(worst) + 1);
}

FringeAssignment assemble_fringe(const Polytope& P, long n, int s, int d, const Rat& r,
                                 FringeMode mode) {
    GeometryReport rep = is_locally_point_symmetric(P);

    if (mode == FringeMode::Theorem1 && !rep.lps)
        throw NotLps("theorem1 fringe requires a locally point symmetric polytope" +
                     (rep.lps_certificate ? " (" + rep.lps_certificate->reason + ")" : ""));

    if (mode == FringeMode::Theorem2 && rep.lps) mode = FringeMode::Theorem1;

    if (mode == FringeMode::Theorem1) {
        Fringe1D f = find_fringe_1d(s, d);
        Theorem1Plan plan = plan_theorem1(P, rep);
        long rp = f.r_prime;

        EdgeMap low_map = edge_map(P, plan.e1, n, plan.v1);
        // Same linear part on the partner edge, oriented so position
        // n*b_E2 is the dilated antipodal vertex.
        int u2 = P.edge_other(plan.e2, plan.v2);
        EdgeMap high_map = edge_map(P, plan.e2, n, u2);
        if (high_map.step != plan.step)
            throw InternalInconsistency("edge maps lost the shared linear part");

        long len1 = low_map.length, len2 = high_map.length;
        if (len1 <= 2 * rp || len2 <= 2 * rp)
            throw WindowOverlap("dilation too small: edge windows of radius " +
                                std::to_string(rp) + " overlap (need n*b_E > 2r')");

        Placement placement;
        std::vector<char> low_in(rp + 1, 0), high_in(rp + 1, 0);
        for (int t : f.low) low_in[t] = 1;
        for (int t : f.high_reflected) high_in[t] = 1;
        Point nv1 = P.vertices[plan.v1] * n;
        Point nv2 = P.vertices[plan.v2] * n;
        for (long t = 0; t <= rp; ++t) {
            Point p = low_map.at(t);
            check_window_in_ball(p, nv1, r);
            placement.place(p, low_in[t] != 0);
            Point q = high_map.at(len2 - t);
            check_window_in_ball(q, nv2, r);
            placement.place(q, high_in[t] != 0);
        }
        return finish_assignment(P, n, r, placement, s, 2L * d, false, {});
    }

    // theorem2 mode on a polytope without local point symmetry.
    Theorem2Plan plan = plan_theorem2(P);
    EdgeGapSet gap = find_edge_gap_set(d);
    Fringe1D f = find_fringe_1d(s, 0);
    long rp = f.r_prime;

    int a1 = P.edges[plan.e1].first;
    EdgeMap gap_map = edge_map(P, plan.e1, n, a1);
    int a2 = P.edges[plan.e2].first;
    EdgeMap end_map = edge_map(P, plan.e2, n, a2);

    if (gap_map.length < gap.window)
        throw WindowOverlap("witness edge shorter than the gap window");
    if (end_map.length <= 2 * rp)
        throw WindowOverlap("dilation too small: end windows of radius " +
                            std::to_string(rp) + " overlap (need n*b_E > 2r')");

    Placement placement;
    std::vector<char> in_gap(gap.window + 1, 0);
    for (int t : gap.present) in_gap[t] = 1;
    Point ga = P.vertices[a1] * n;
    for (long t = 0; t <= gap.window; ++t) {
        Point p = gap_map.at(t);
        check_window_in_ball(p, ga, r);
        placement.place(p, in_gap[t] != 0);
    }
    std::vector<char> low_in(rp + 1, 0), high_in(rp + 1, 0);
    for (int t : f.low) low_in[t] = 1;
    for (int t : f.high_reflected) high_in[t] = 1;
    Point ea = P.vertices[a2] * n;
    Point eb = P.vertices[P.edge_other(plan.e2, a2)] * n;
    for (long t = 0; t <= rp; ++t) {
        Point p = end_map.at(t);
        check_window_in_ball(p, ea, r);
        placement.place(p, low_in[t] != 0);
        Point q = end_map.at(end_map.length - t);
        check_window_in_ball(q, eb, r);
        placement.place(q, high_in[t] != 0);
    }

    std::vector<std::string> notes;
    if (d >= 1) {
        // The printed-form gap family [0,d-1] u [2d,3d-1] does not validate
        // under the oracle; the shipped family differs and we flag that.
        std::vector<int> rd;
        for (int t = 0; t < d; ++t) rd.push_back(t);
        for (int t = 2 * d; t < 3 * d; ++t) rd.push_back(t);
        if (rd != gap.present)
            notes.push_back("edge gap set W_d differs from R_d = [0,d-1] u [2d,3d-1]");
    }
    return finish_assignment(P, n, r, placement, s, 2L * d, true, std::move(notes));
}

}  // namespace polylab
