#ifndef POLYLAB_LATTICESET_HPP
#define POLYLAB_LATTICESET_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "polylab/polytope.hpp"

namespace polylab {

// Finite set of lattice points: lexicographically sorted, duplicate free,
// with a tight per-coordinate bounding box.
struct LatticeSet {
    int dim = 0;
    std::vector<Point> points;
    std::vector<Coord> bbox_min, bbox_max;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    bool contains(const Point& p) const;
    // Index of p in the sorted point list, or nullopt.
    std::optional<std::size_t> index_of(const Point& p) const;

    static LatticeSet from_points(int dim, std::vector<Point> pts);
};

// L(nP): all integer points of the dilated polytope, enumerated over the
// dilated bounding box. Throws SizeLimit when the box has more candidates
// than candidate_cap.
LatticeSet enumerate_lattice(const Polytope& P, long n,
                             std::int64_t candidate_cap = 100000000);

// Minkowski self-sum A+A and self-difference A-A.
LatticeSet sumset(const LatticeSet& A);
LatticeSet diffset(const LatticeSet& A);

enum class SetClass { SumDominant, Balanced, DifferenceDominant };
const char* to_string(SetClass c);

// Compares |A+A| with |A-A|. A must be a nonempty subset of base.
SetClass classify(const LatticeSet& A, const LatticeSet& base);

// Subset of a LatticeSet as a bit vector over its point indices.
struct SubsetMask {
    const LatticeSet* base = nullptr;
    std::vector<std::uint64_t> bits;

    explicit SubsetMask(const LatticeSet& b)
        : base(&b), bits((b.size() + 63) / 64, 0) {}

    bool test(std::size_t i) const { return (bits[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v = true) {
        if (v)
            bits[i >> 6] |= std::uint64_t(1) << (i & 63);
        else
            bits[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }
    std::size_t count() const;
    LatticeSet materialize() const;

    static SubsetMask full(const LatticeSet& b);
    static SubsetMask of_points(const LatticeSet& b, const std::vector<Point>& pts);
};

struct MissingCounts {
    std::int64_t missing_sums = 0;
    std::int64_t missing_diffs = 0;
    std::vector<Point> missing_sum_witnesses;
    std::vector<Point> missing_diff_witnesses;
};

// Missing sums/differences of the subset relative to the potential regions
// sumset(L(nP)) and diffset(L(nP)). The empty subset reports the full region
// sizes. A.base must equal enumerate_lattice(P, n).
MissingCounts missing_counts(const SubsetMask& A, const Polytope& P, long n,
                             bool collect_witnesses = true);

enum class PairMode { Sum, Diff };

// |L(nP cap (k - nP))| for sums: the number of lattice x with x and k-x both
// in nP, i.e. representations of k counted with order. For diffs,
// |L(nP cap (nP - k))|: ordered pairs giving difference k.
std::int64_t intersection_count(const Polytope& P, long n, const Point& k, PairMode mode);

// All nonzero k in A-A with exactly one ordered representation; closed under
// negation. Representation counting uses saturating two-valued counters.
std::vector<Point> uniquely_formed_diffs(const LatticeSet& A);

// Affine parameterization of the lattice points of a dilated edge:
// at(t) = base_point + t*step for t in [0, length].
struct EdgeMap {
    Point base_point;
    Point step;
    long length = 0;

    Point at(long t) const { return base_point + step * t; }
    std::vector<Point> all_points() const;
};

// b_E = gcd of the coordinate differences of the undilated endpoints;
// length = n*b_E; enumerating t = 0..length yields exactly L(nE).
EdgeMap edge_map(const Polytope& P, int edge_index, long n, int from_vertex);

// Reusable dense-grid workspace for subset sum/diff statistics. Grids are
// allocated once for a base set and cleared per evaluation via epochs, so the
// sampling inner loop is allocation free.
class SumDiffKernel {
public:
    explicit SumDiffKernel(const LatticeSet& base);

    struct Stats {
        std::int64_t sum_count = 0;   // |A+A|
        std::int64_t diff_count = 0;  // |A-A|
    };

    // Marks the sum/diff grids for the subset given by bits (one bit per base
    // point index) and returns distinct counts.
    Stats eval(const std::vector<std::uint64_t>& bits);

    std::int64_t base_sum_count() const { return base_sum_count_; }
    std::int64_t base_diff_count() const { return base_diff_count_; }
    const LatticeSet& base() const { return *base_; }
    const std::vector<Point>& base_sum_points() const { return base_sum_points_; }
    const std::vector<Point>& base_diff_points() const { return base_diff_points_; }

    // Valid after eval(), for the most recent subset.
    bool sum_marked(std::int64_t idx) const { return sum_grid_[idx] == epoch_; }
    bool diff_marked(std::int64_t idx) const { return diff_grid_[idx] == epoch_; }
    std::int64_t sum_index(const Point& p) const;
    std::int64_t diff_index(const Point& p) const;

private:
    const LatticeSet* base_;
    int dim_;
    std::vector<Coord> strides_;
    std::vector<Coord> bmin_, width_;
    std::vector<std::int64_t> offsets_;  // f(p) per base point
    std::int64_t diff_center_ = 0;
    std::int64_t grid_size_ = 0;
    std::vector<std::uint32_t> sum_grid_, diff_grid_;
    std::uint32_t epoch_ = 0;
    std::vector<std::int64_t> chosen_;  // scratch
    std::int64_t base_sum_count_ = 0, base_diff_count_ = 0;
    std::vector<Point> base_sum_points_, base_diff_points_;
};

}  // namespace polylab

#endif
