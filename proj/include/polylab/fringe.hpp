#ifndef POLYLAB_FRINGE_HPP
#define POLYLAB_FRINGE_HPP

#include <string>
#include <utility>
#include <vector>

#include "polylab/latticeset.hpp"
#include "polylab/rational.hpp"

namespace polylab {

// One-dimensional end sets over the window {0,...,r_prime}: low sits at the
// bottom end of an edge, high_reflected is the top end set reflected about
// the top. Valid means the interval oracle accepts the pair for (s, d).
struct Fringe1D {
    int r_prime = 0;
    std::vector<int> low;
    std::vector<int> high_reflected;
    int s = 0;
    int d = 0;
};

// Interval oracle: builds A_N = low u {r'+1,...,N-r'-1} u (N - high_reflected)
// on {0,...,N} for N = 3r'+3 and N = 3r'+4, and accepts iff for both sizes the
// missing sums number exactly s and stay within the end windows, and the
// missing differences number exactly 2d and stay within the top/bottom
// windows.
bool validate_fringe_1d(const std::vector<int>& low, const std::vector<int>& high_reflected,
                        int r_prime, int s, int d);

// Smallest r' <= r_max admitting a validating pair; deterministic search
// order (r' ascending, then ascending bitmask pairs with element i on bit i,
// low mask outer). Results are cached per (s, d). Throws NotFound when no
// window up to r_max works.
Fringe1D find_fringe_1d(int s, int d, int r_max = 32);

// Edge window with exactly gap_size absent positions contributing zero
// missing sums once everything above the window is present.
struct EdgeGapSet {
    int window = 0;
    std::vector<int> present;
    int gap_size = 0;
};

// Tries the family [0,2d] u {2d+2, 2d+4, ..., 4d} over window 4d and checks
// it with the interval oracle. Throws NotFound if no candidate validates.
EdgeGapSet find_edge_gap_set(int d);

// B_r / M_r split: points within exact Euclidean distance r of some dilated
// vertex, and the remainder.
std::pair<LatticeSet, LatticeSet> fringe_region(const Polytope& P, long n, const Rat& r);

enum class FringeMode { Theorem1, Theorem2 };

// Forced-present / forced-absent / free partition of L(nP) realizing a
// fringe with the prescribed missing counts.
struct FringeAssignment {
    Rat radius;
    LatticeSet forced_present;
    LatticeSet forced_absent;
    LatticeSet free_points;
    long predicted_missing_sums = 0;
    long predicted_missing_diffs = 0;  // 2d
    bool diffs_at_least = false;       // theorem2 on a non-LPS polytope
    std::vector<std::string> notes;
    int dim = 0;
    long n = 0;
    std::size_t base_size = 0;
    std::uint64_t base_hash = 0;
};

// Euclidean radius large enough to contain every 1-D window the (s, d)
// construction places on this polytope, plus one.
Rat default_fringe_radius(const Polytope& P, int s, int d, FringeMode mode);

// The theorem1 construction on a locally point symmetric polytope (end sets
// on a strictly antipodal pair of parallel edges), or the theorem2 construction
// (edge gap set on the unique-difference witness edge plus (s,0) end sets on
// another edge). Throws NotLps, WindowOverlap, NoUniqueDiffEdge.
FringeAssignment assemble_fringe(const Polytope& P, long n, int s, int d, const Rat& r,
                                 FringeMode mode);

std::uint64_t lattice_hash(const LatticeSet& s);

}  // namespace polylab

#endif
