#include "polylab/latticeset.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "polylab/errors.hpp"

namespace polylab {

namespace {

std::pair<std::vector<Coord>, std::vector<Coord>> bbox_of(int dim,
                                                          const std::vector<Point>& pts) {
    std::vector<Coord> lo(dim, 0), hi(dim, 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (int k = 0; k < dim; ++k) {
            if (i == 0 || pts[i][k] < lo[k]) lo[k] = pts[i][k];
            if (i == 0 || pts[i][k] > hi[k]) hi[k] = pts[i][k];
        }
    }
    return {lo, hi};
}

}  // namespace

bool LatticeSet::contains(const Point& p) const {
    return std::binary_search(points.begin(), points.end(), p);
}

std::optional<std::size_t> LatticeSet::index_of(const Point& p) const {
    auto it = std::lower_bound(points.begin(), points.end(), p);
    if (it == points.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - points.begin());
}

LatticeSet LatticeSet::from_points(int dim, std::vector<Point> pts) {
    for (const Point& p : pts)
        if (p.dim() != dim) throw std::invalid_argument("point arity mismatch");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    LatticeSet s;
    s.dim = dim;
    s.points = std::move(pts);
    auto [lo, hi] = bbox_of(dim, s.points);
    s.bbox_min = std::move(lo);
    s.bbox_max = std::move(hi);
    return s;
}

LatticeSet enumerate_lattice(const Polytope& P, long n, std::int64_t candidate_cap) {
    if (n < 1) throw std::invalid_argument("dilation factor must be positive");
    int dim = P.dim;
    std::vector<Coord> lo(dim), hi(dim);
    for (int k = 0; k < dim; ++k) {
        lo[k] = hi[k] = n * P.vertices[0][k];
        for (const Point& v : P.vertices) {
            lo[k] = std::min(lo[k], n * v[k]);
            hi[k] = std::max(hi[k], n * v[k]);
        }
    }
    __int128 candidates = 1;
    for (int k = 0; k < dim; ++k) candidates *= (hi[k] - lo[k] + 1);
    if (candidates > candidate_cap)
        throw SizeLimit("bounding box holds more than " + std::to_string(candidate_cap) +
                        " candidate points");

    std::vector<Point> pts;
    Point cur;
    cur.x = lo;
    for (;;) {
        if (P.contains(cur, n)) pts.push_back(cur);
        int k = dim - 1;
        while (k >= 0 && cur[k] == hi[k]) {
            cur[k] = lo[k];
            --k;
        }
        if (k < 0) break;
        ++cur[k];
    }
    return LatticeSet::from_points(dim, std::move(pts));
}

LatticeSet sumset(const LatticeSet& A) {
    if (A.empty()) throw std::invalid_argument("sumset of the empty set");
    SumDiffKernel kernel(A);
    return LatticeSet::from_points(A.dim, kernel.base_sum_points());
}

LatticeSet diffset(const LatticeSet& A) {
    if (A.empty()) throw std::invalid_argument("diffset of the empty set");
    SumDiffKernel kernel(A);
    return LatticeSet::from_points(A.dim, kernel.base_diff_points());
}

const char* to_string(SetClass c) {
    switch (c) {
        case SetClass::SumDominant: return "sum_dominant";
        case SetClass::Balanced: return "balanced";
        case SetClass::DifferenceDominant: return "difference_dominant";
    }
    return "?";
}

SetClass classify(const LatticeSet& A, const LatticeSet& base) {
    if (A.empty()) throw std::invalid_argument("classify on the empty set");
    if (A.dim != base.dim) throw std::invalid_argument("classify: dimension mismatch");
    for (const Point& p : A.points)
        if (!base.contains(p))
            throw std::invalid_argument("classify: " + to_string(p) + " outside the base set");
    SumDiffKernel kernel(A);
    std::int64_t s = kernel.base_sum_count(), d = kernel.base_diff_count();
    if (s > d) return SetClass::SumDominant;
    if (s < d) return SetClass::DifferenceDominant;
    return SetClass::Balanced;
}

std::size_t SubsetMask::count() const {
    std::size_t c = 0;
    for (std::uint64_t w : bits) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
}

LatticeSet SubsetMask::materialize() const {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < base->size(); ++i)
        if (test(i)) pts.push_back(base->points[i]);
    return LatticeSet::from_points(base->dim, std::move(pts));
}

SubsetMask SubsetMask::full(const LatticeSet& b) {
    SubsetMask m(b);
    for (std::size_t i = 0; i < b.size(); ++i) m.set(i);
    return m;
}

SubsetMask SubsetMask::of_points(const LatticeSet& b, const std::vector<Point>& pts) {
    SubsetMask m(b);
    for (const Point& p : pts) {
        auto idx = b.index_of(p);
        if (!idx) throw std::invalid_argument("subset point " + to_string(p) + " not in base");
        m.set(*idx);
    }
    return m;
}

MissingCounts missing_counts(const SubsetMask& A, const Polytope& P, long n,
                             bool collect_witnesses) {
    LatticeSet base = enumerate_lattice(P, n);
    if (!A.base || A.base->points != base.points)
        throw std::invalid_argument("missing_counts: mask base is not L(nP)");
    SumDiffKernel kernel(base);
    auto stats = kernel.eval(A.bits);
    MissingCounts out;
    out.missing_sums = kernel.base_sum_count() - stats.sum_count;
    out.missing_diffs = kernel.base_diff_count() - stats.diff_count;
    if (collect_witnesses) {
        for (const Point& p : kernel.base_sum_points())
            if (!kernel.sum_marked(kernel.sum_index(p))) out.missing_sum_witnesses.push_back(p);
        for (const Point& p : kernel.base_diff_points())
            if (!kernel.diff_marked(kernel.diff_index(p)))
                out.missing_diff_witnesses.push_back(p);
    }
    return out;
}

std::int64_t intersection_count(const Polytope& P, long n, const Point& k, PairMode mode) {
    LatticeSet L = enumerate_lattice(P, n);
    std::int64_t count = 0;
    for (const Point& x : L.points) {
        Point partner = (mode == PairMode::Sum) ? k - x : x + k;
        if (P.contains(partner, n)) ++count;
    }
    return count;
}

std::vector<Point> uniquely_formed_diffs(const LatticeSet& A) {
    if (A.empty()) return {};
    int dim = A.dim;
    std::vector<Coord> width(dim);
    std::vector<std::int64_t> strides(dim);
    std::int64_t grid = 1;
    for (int k = dim - 1; k >= 0; --k) {
        width[k] = A.bbox_max[k] - A.bbox_min[k];
        strides[k] = grid;
        grid *= 2 * width[k] + 1;
        if (grid > (std::int64_t(1) << 28))
            throw SizeLimit("difference grid too large for representation counting");
    }
    std::vector<std::int64_t> off(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        std::int64_t f = 0;
        for (int kk = 0; kk < dim; ++kk)
            f += (A.points[i][kk] - A.bbox_min[kk]) * strides[kk];
        off[i] = f;
    }
    std::int64_t center = 0;
    for (int k = 0; k < dim; ++k) center += width[k] * strides[k];

    std::vector<std::uint8_t> reps(grid, 0);
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j) {
            if (i == j) continue;
            std::uint8_t& r = reps[off[i] - off[j] + center];
            if (r < 2) ++r;
        }

    std::vector<Point> out;
    // Ascending linear index equals lexicographic point order.
    for (std::int64_t idx = 0; idx < grid; ++idx) {
        if (reps[idx] != 1) continue;
        Point p;
        p.x.resize(dim);
        std::int64_t rem = idx;
        for (int k = 0; k < dim; ++k) {
            p.x[k] = rem / strides[k] - width[k];
            rem %= strides[k];
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Point> EdgeMap::all_points() const {
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(length) + 1);
    for (long t = 0; t <= length; ++t) pts.push_back(at(t));
    return pts;
}

EdgeMap edge_map(const Polytope& P, int edge_index, long n, int from_vertex) {
    if (edge_index < 0 || edge_index >= static_cast<int>(P.edges.size()))
        throw std::invalid_argument("edge index out of range");
    auto [a, b] = P.edges[edge_index];
    if (from_vertex != a && from_vertex != b)
        throw std::invalid_argument("orientation vertex does not belong to the edge");
    int to = (from_vertex == a) ? b : a;
    Point delta = P.vertices[to] - P.vertices[from_vertex];
    Coord b_E = coord_gcd(delta);
    EdgeMap m;
    m.base_point = P.vertices[from_vertex] * n;
    m.step = primitive(delta);
    m.length = n * b_E;
    return m;
}

SumDiffKernel::SumDiffKernel(const LatticeSet& base) : base_(&base), dim_(base.dim) {
    if (base.empty()) throw std::invalid_argument("kernel needs a nonempty base set");
    bmin_ = base.bbox_min;
    width_.resize(dim_);
    strides_.resize(dim_);
    grid_size_ = 1;
    for (int k = dim_ - 1; k >= 0; --k) {
        width_[k] = base.bbox_max[k] - base.bbox_min[k];
        strides_[k] = grid_size_;
        grid_size_ *= 2 * width_[k] + 1;
        if (grid_size_ > (std::int64_t(1) << 28))
            throw SizeLimit("sum/diff grid exceeds the configured size limit");
    }
    offsets_.resize(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        std::int64_t f = 0;
        for (int k = 0; k < dim_; ++k) f += (base.points[i][k] - bmin_[k]) * strides_[k];
        offsets_[i] = f;
    }
    diff_center_ = 0;
    for (int k = 0; k < dim_; ++k) diff_center_ += width_[k] * strides_[k];
    sum_grid_.assign(grid_size_, 0);
    diff_grid_.assign(grid_size_, 0);

    auto full = SubsetMask::full(base);
    auto stats = eval(full.bits);
    base_sum_count_ = stats.sum_count;
    base_diff_count_ = stats.diff_count;
    for (std::int64_t idx = 0; idx < grid_size_; ++idx) {
        if (!sum_marked(idx) && !diff_marked(idx)) continue;
        Point p;
        p.x.resize(dim_);
        std::int64_t rem = idx;
        for (int k = 0; k < dim_; ++k) {
            p.x[k] = rem / strides_[k];
            rem %= strides_[k];
        }
        if (sum_marked(idx)) {
            Point q = p;
            for (int k = 0; k < dim_; ++k) q.x[k] += 2 * bmin_[k];
            base_sum_points_.push_back(q);
        }
        if (diff_marked(idx)) {
            Point q = p;
            for (int k = 0; k < dim_; ++k) q.x[k] -= width_[k];
            base_diff_points_.push_back(std::move(q));
        }
    }
}

SumDiffKernel::Stats SumDiffKernel::eval(const std::vector<std::uint64_t>& bits) {
    if (epoch_ == std::numeric_limits<std::uint32_t>::max()) {
        std::fill(sum_grid_.begin(), sum_grid_.end(), 0);
        std::fill(diff_grid_.begin(), diff_grid_.end(), 0);
        epoch_ = 0;
    }
    ++epoch_;
    chosen_.clear();
    std::size_t nbits = base_->size();
    for (std::size_t w = 0; w < bits.size(); ++w) {
        std::uint64_t word = bits[w];
        while (word) {
            std::size_t i = (w << 6) + static_cast<std::size_t>(__builtin_ctzll(word));
            if (i < nbits) chosen_.push_back(offsets_[i]);
            word &= word - 1;
        }
    }
    Stats st;
    const std::size_t c = chosen_.size();
    for (std::size_t i = 0; i < c; ++i) {
        std::int64_t fi = chosen_[i];
        for (std::size_t j = i; j < c; ++j) {
            std::uint32_t& cell = sum_grid_[fi + chosen_[j]];
            if (cell != epoch_) {
                cell = epoch_;
                ++st.sum_count;
            }
        }
        for (std::size_t j = 0; j < c; ++j) {
            std::uint32_t& cell = diff_grid_[fi - chosen_[j] + diff_center_];
            if (cell != epoch_) {
                cell = epoch_;
                ++st.diff_count;
            }
        }
    }
    return st;
}

std::int64_t SumDiffKernel::sum_index(const Point& p) const {
    std::int64_t idx = 0;
    for (int k = 0; k < dim_; ++k) {
        Coord rel = p[k] - 2 * bmin_[k];
        if (rel < 0 || rel > 2 * width_[k]) return -1;
        idx += rel * strides_[k];
    }
    return idx;
}

std::int64_t SumDiffKernel::diff_index(const Point& p) const {
    std::int64_t idx = 0;
    for (int k = 0; k < dim_; ++k) {
        Coord rel = p[k] + width_[k];
        if (rel < 0 || rel > 2 * width_[k]) return -1;
        idx += rel * strides_[k];
    }
    return idx;
}

}  // namespace polylab
