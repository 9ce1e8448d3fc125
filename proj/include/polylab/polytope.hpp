#ifndef POLYLAB_POLYTOPE_HPP
#define POLYLAB_POLYTOPE_HPP

#include <utility>
#include <vector>

#include "polylab/point.hpp"

namespace polylab {

// Half-space normal . x <= offset with a primitive integer normal.
struct Facet {
    Point normal;
    Coord offset;
};

// Full-dimensional convex polytope with integer vertices, carrying the
// derived exact facet and edge structure. Immutable after validation.
struct Polytope {
    int dim = 0;
    std::vector<Point> vertices;
    std::vector<Facet> facets;
    std::vector<std::pair<int, int>> edges;  // vertex index pairs, first < second

    // Membership in the dilation n*P.
    bool contains(const Point& p, Coord n = 1) const {
        for (const Facet& f : facets)
            if (dot(f.normal, p) > n * f.offset) return false;
        return true;
    }

    std::vector<int> edges_at(int v) const {
        std::vector<int> out;
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (edges[e].first == v || edges[e].second == v)
                out.push_back(static_cast<int>(e));
        return out;
    }

    // The edge endpoint opposite to v on edge e.
    int edge_other(int e, int v) const {
        return edges[e].first == v ? edges[e].second : edges[e].first;
    }

    // gcd of the coordinate differences of the (undilated) endpoints: the
    // edge holds n*b_E + 1 lattice points at dilation n.
    Coord edge_lattice_gcd(int e) const {
        return coord_gcd(vertices[edges[e].second] - vertices[edges[e].first]);
    }
};

// Validates extremality and full-dimensionality, derives facets by scanning
// affinely independent dim-subsets of vertices, and certifies edges with an
// exact supporting-hyperplane LP.
// Throws NotFullDimensional, RedundantVertex, NonIntegerVertex.
Polytope validate_polytope(int dim, std::vector<Point> vertices);

}  // namespace polylab

#endif
