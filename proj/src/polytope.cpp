#include "polylab/polytope.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "polylab/errors.hpp"
#include "polylab/lp.hpp"
#include "polylab/rational.hpp"

namespace polylab {

namespace {

Int det_rec(const std::vector<std::vector<Int>>& m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Int acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        std::vector<std::vector<Int>> sub(n - 1, std::vector<Int>(n - 1));
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                sub[r - 1][cc++] = m[r][c];
            }
        }
        Int term = m[0][j] * det_rec(sub);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

int rank_of(std::vector<std::vector<Rat>> m) {
    int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        for (int r = rank + 1; r < rows; ++r) {
            if (m[r][c] == 0) continue;
            Rat f = m[r][c] / m[rank][c];
            for (int cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
        }
        ++rank;
    }
    return rank;
}

// Normal of the hyperplane through dim points (generalized cross product of
// their difference vectors); zero vector when the points are affinely
// dependent.
std::vector<Int> hyperplane_normal(const std::vector<Point>& pts) {
    int dim = pts[0].dim();
    std::vector<std::vector<Int>> diff(dim - 1, std::vector<Int>(dim));
    for (int r = 1; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            diff[r - 1][c] = Int(pts[r][c] - pts[0][c]);
    std::vector<Int> normal(dim);
    for (int j = 0; j < dim; ++j) {
        std::vector<std::vector<Int>> minor(dim - 1, std::vector<Int>(dim - 1));
        for (int r = 0; r < dim - 1; ++r) {
            int cc = 0;
            for (int c = 0; c < dim; ++c) {
                if (c == j) continue;
                minor[r][cc++] = diff[r][c];
            }
        }
        Int d = det_rec(minor);
        normal[j] = (j % 2 == 0) ? d : -d;
    }
    return normal;
}

Coord to_coord(const Int& v) {
    if (!v.fits_slong_p()) throw SizeLimit("facet coefficient exceeds 64-bit range");
    return static_cast<Coord>(v.get_si());
}

// True iff c with c.(u-v) = 0 and c.x <= c.u - 1 for all other vertices
// exists: a supporting hyperplane meeting the polytope exactly in segment uv.
bool edge_certificate(const std::vector<Point>& verts, int dim, int u, int v) {
    std::vector<LinearConstraint> sys;
    LinearConstraint eq;
    eq.rel = Rel::Eq;
    eq.rhs = rat(0);
    for (int j = 0; j < dim; ++j) eq.coeffs.push_back(rat(verts[u][j] - verts[v][j]));
    sys.push_back(std::move(eq));
    for (std::size_t w = 0; w < verts.size(); ++w) {
        if (static_cast<int>(w) == u || static_cast<int>(w) == v) continue;
        LinearConstraint c;
        c.rhs = rat(-1);
        for (int j = 0; j < dim; ++j) c.coeffs.push_back(rat(verts[w][j] - verts[u][j]));
        sys.push_back(std::move(c));
    }
    return lp_feasible(std::move(sys), dim);
}

void combinations(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

Polytope validate_polytope(int dim, std::vector<Point> vertices) {
    if (dim < 1) throw NotFullDimensional("dimension must be at least 1");
    for (const Point& p : vertices)
        if (p.dim() != dim)
            throw NonIntegerVertex("vertex " + to_string(p) + " has wrong arity");
    int m = static_cast<int>(vertices.size());
    if (m < dim + 1)
        throw NotFullDimensional("need at least dim+1 vertices, got " + std::to_string(m));

    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (vertices[i] == vertices[j])
                throw RedundantVertex("duplicate vertex " + to_string(vertices[i]));

    // Affine hull must span R^dim.
    {
        std::vector<std::vector<Rat>> diffs;
        for (int i = 1; i < m; ++i) {
            std::vector<Rat> row;
            for (int j = 0; j < dim; ++j) row.push_back(rat(vertices[i][j] - vertices[0][j]));
            diffs.push_back(std::move(row));
        }
        if (rank_of(diffs) < dim)
            throw NotFullDimensional("affine hull has dimension below " + std::to_string(dim));
    }

    Polytope P;
    P.dim = dim;
    P.vertices = std::move(vertices);

    if (dim == 1) {
        Coord lo = P.vertices[0][0], hi = P.vertices[0][0];
        for (const Point& p : P.vertices) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        P.facets.push_back({Point{1}, hi});
        P.facets.push_back({Point{-1}, -lo});
        for (const Point& p : P.vertices)
            if (p[0] != lo && p[0] != hi)
                throw RedundantVertex("vertex " + to_string(p) + " is not extreme");
        int ilo = P.vertices[0][0] == lo ? 0 : 1;
        P.edges.push_back({std::min(ilo, 1 - ilo), std::max(ilo, 1 - ilo)});
        return P;
    }

    // Facet scan over dim-subsets of vertices.
    std::set<std::pair<std::vector<Coord>, Coord>> seen;
    combinations(m, dim, [&](const std::vector<int>& idx) {
        std::vector<Point> pts;
        for (int i : idx) pts.push_back(P.vertices[i]);
        std::vector<Int> nz = hyperplane_normal(pts);
        bool zero = std::all_of(nz.begin(), nz.end(), [](const Int& v) { return v == 0; });
        if (zero) return;
        Int g = 0;
        for (const Int& v : nz) g = gcd(g, v);
        Point normal;
        for (const Int& v : nz) normal.x.push_back(to_coord(v / g));
        Coord offset = dot(normal, pts[0]);
        bool any_above = false, any_below = false;
        for (const Point& p : P.vertices) {
            Coord d = dot(normal, p);
            if (d > offset) any_above = true;
            if (d < offset) any_below = true;
        }
        if (any_above && any_below) return;
        if (any_above) {
            normal = -normal;
            offset = -offset;
        }
        if (seen.insert({normal.x, offset}).second) P.facets.push_back({normal, offset});
    });

    // A listed point is extreme iff its active facet normals span R^dim.
    for (int i = 0; i < m; ++i) {
        std::vector<std::vector<Rat>> act;
        for (const Facet& f : P.facets) {
            if (dot(f.normal, P.vertices[i]) != f.offset) continue;
            std::vector<Rat> row;
            for (int j = 0; j < dim; ++j) row.push_back(rat(f.normal[j]));
            act.push_back(std::move(row));
        }
        if (rank_of(act) < dim)
            throw RedundantVertex("vertex " + to_string(P.vertices[i]) + " is not extreme");
    }

    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v)
            if (edge_certificate(P.vertices, dim, u, v)) P.edges.push_back({u, v});

    return P;
}

}  // namespace polylab
