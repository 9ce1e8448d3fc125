#ifndef POLYLAB_EXPERIMENTS_HPP
#define POLYLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <optional>

#include "polylab/fringe.hpp"
#include "polylab/latticeset.hpp"

namespace polylab {

enum class Classifier { ExactSd, AtLeastD, Mstd, Balanced, DiffDominant };
const char* to_string(Classifier c);

struct SampleConfig {
    const Polytope* polytope = nullptr;
    long n = 1;
    std::int64_t samples = 1;
    std::uint64_t seed = 0;
    std::optional<FringeAssignment> fringe;
    Classifier classifier = Classifier::Mstd;
    int s = 0;
    int d = 0;
    int threads = 1;
};

struct EstimateResult {
    std::int64_t hits = 0;
    std::int64_t trials = 0;
    double proportion = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

// Wilson score interval; well-behaved for proportions near zero.
std::pair<double, double> wilson_interval(std::int64_t hits, std::int64_t trials,
                                          double z = 1.96);

// Monte Carlo proportion estimate: each trial draws every free point with
// probability 1/2 (fringe-forced points fixed), classifies, accumulates.
// Trial t draws from RngStream(seed, t), so results are identical for any
// thread count. The empty subset follows the exact_enumerate convention.
EstimateResult sample_estimate(const SampleConfig& cfg);

struct JointHistogram {
    std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> counts;
    std::uint64_t total = 0;
    std::uint64_t mstd = 0, balanced = 0, diff_dominant = 0;  // empty set excluded

    std::uint64_t exact_sd(std::int64_t s, std::int64_t two_d) const {
        auto it = counts.find({s, two_d});
        return it == counts.end() ? 0 : it->second;
    }
};

// Exhaustive subset enumeration: joint distribution of (missing sums,
// missing differences) plus dominance class totals. Throws TooLarge when
// |L(nP)| exceeds max_bits.
JointHistogram exact_enumerate(const Polytope& P, long n, int max_bits = 24,
                               int threads = 1);

struct BoundCheck {
    double empirical = 0.0;
    double bound = 0.0;
    bool holds = false;
    std::int64_t intersection = 0;  // |L(nP cap (k -+ nP))|
};

// Empirical missing probability of one sum/difference k against the
// (3/4)^(I/2 - l) bound, where l counts fringe-forced-absent points.
BoundCheck missing_prob_bound_check(const Polytope& P, long n, const Point& k, PairMode mode,
                                    std::int64_t samples, std::uint64_t seed,
                                    const FringeAssignment* fringe = nullptr);

struct MiddleReport {
    double sum_rate = 0.0;
    double diff_rate = 0.0;
    std::int64_t trials = 0;
    std::int64_t both_count = 0;        // all middle sums and diffs present
    std::int64_t both_exact_count = 0;  // ... and missing counts match the fringe prediction
    bool conditional_exact = true;      // both_count == both_exact_count
};

// Fraction of samples in which every middle sum (resp. difference) is
// present; middle means attainable sums/diffs farther than r from every
// vertex of the sum/difference region.
MiddleReport middle_presence_rate(const Polytope& P, long n, const Rat& r,
                                  const FringeAssignment& fringe, std::int64_t samples,
                                  std::uint64_t seed, int threads = 1);

}  // namespace polylab

#endif
