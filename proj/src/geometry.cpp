#include "polylab/geometry.hpp"

#include <algorithm>
#include <map>

#include "polylab/errors.hpp"
#include "polylab/lp.hpp"

namespace polylab {

namespace {

void push_row(std::vector<LinearConstraint>& sys, const Point& diff, long rhs, Rel rel) {
    LinearConstraint c;
    c.rel = rel;
    c.rhs = rat(rhs);
    for (int j = 0; j < diff.dim(); ++j) c.coeffs.push_back(rat(diff[j]));
    sys.push_back(std::move(c));
}

}  // namespace

bool strictly_antipodal(const Polytope& P, int u, int v) {
    if (u == v) return false;
    std::vector<LinearConstraint> sys;
    int m = static_cast<int>(P.vertices.size());
    for (int x = 0; x < m; ++x) {
        // c.x <= c.u - 1 for x != u, and c.x >= c.v + 1 for x != v.
        if (x != u) push_row(sys, P.vertices[x] - P.vertices[u], -1, Rel::LessEq);
        if (x != v) push_row(sys, P.vertices[v] - P.vertices[x], -1, Rel::LessEq);
    }
    return lp_feasible(std::move(sys), P.dim);
}

int parallel_side_pairs(const Polytope& P) {
    if (P.dim != 2) throw std::invalid_argument("parallel_side_pairs needs a polygon");
    int k = 0;
    for (std::size_t a = 0; a < P.edges.size(); ++a) {
        Point da = primitive(P.vertices[P.edges[a].second] - P.vertices[P.edges[a].first]);
        for (std::size_t b = a + 1; b < P.edges.size(); ++b) {
            Point db = primitive(P.vertices[P.edges[b].second] - P.vertices[P.edges[b].first]);
            if (da == db || da == -db) ++k;
        }
    }
    return k;
}

std::vector<std::pair<int, int>> sa_pairs(const Polytope& P) {
    std::vector<std::pair<int, int>> out;
    int m = static_cast<int>(P.vertices.size());
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v)
            if (strictly_antipodal(P, u, v)) out.push_back({u, v});

    if (P.dim == 2) {
        int expected = m - parallel_side_pairs(P);
        if (static_cast<int>(out.size()) != expected)
            throw InternalInconsistency(
                "antipodal pair count " + std::to_string(out.size()) +
                " disagrees with the polygon formula m-k = " + std::to_string(expected));
    } else if (P.dim >= 3) {
        if (static_cast<int>(out.size()) < (m + 1) / 2)
            throw InternalInconsistency("antipodal pair count below ceil(m/2)");
    }
    return out;
}

std::vector<Point> supporting_cone_dirs(const Polytope& P, int v) {
    std::vector<Point> dirs;
    for (int e : P.edges_at(v))
        dirs.push_back(primitive(P.vertices[P.edge_other(e, v)] - P.vertices[v]));
    std::sort(dirs.begin(), dirs.end());
    return dirs;
}

GeometryReport is_locally_point_symmetric(const Polytope& P) {
    GeometryReport rep;
    rep.sa_pairs = sa_pairs(P);
    int m = static_cast<int>(P.vertices.size());

    std::vector<std::vector<int>> partners(m);
    for (auto [u, v] : rep.sa_pairs) {
        partners[u].push_back(v);
        partners[v].push_back(u);
    }

    bool perfect_matching = (m % 2 == 0) && static_cast<int>(rep.sa_pairs.size()) == m / 2 &&
                            std::all_of(partners.begin(), partners.end(),
                                        [](const auto& p) { return p.size() == 1; });

    bool def_ok = perfect_matching;
    LpsCertificate cert;
    if (!perfect_matching) {
        for (int v = 0; v < m && !cert.busy_vertex; ++v)
            if (partners[v].size() >= 2) {
                cert.busy_vertex = v;
                cert.busy_partners = partners[v];
            }
        cert.reason = cert.busy_vertex
                          ? "vertex " + std::to_string(*cert.busy_vertex) +
                                " is strictly antipodal to " +
                                std::to_string(cert.busy_partners.size()) + " vertices"
                          : "antipodal pairs do not form a perfect matching";
    } else {
        for (auto [u, v] : rep.sa_pairs) {
            std::vector<Point> du = supporting_cone_dirs(P, u);
            std::vector<Point> dv = supporting_cone_dirs(P, v);
            for (Point& p : dv) p = -p;
            std::sort(dv.begin(), dv.end());
            if (du != dv) {
                def_ok = false;
                cert.cone_violation = {u, v};
                cert.reason = "matched pair (" + std::to_string(u) + "," + std::to_string(v) +
                              ") violates supporting-cone reflection equality";
                break;
            }
        }
    }

    // Self-check: the definition-level verdict must agree with the pair-count
    // criterion (exactly m/2 strictly antipodal pairs).
    bool count_ok = (m % 2 == 0) && static_cast<int>(rep.sa_pairs.size()) == m / 2;
    if (def_ok != count_ok)
        throw InternalInconsistency(
            "local point symmetry verdict disagrees with the m/2 pair-count criterion");

    rep.lps = def_ok;
    if (def_ok)
        rep.lps_pairing = rep.sa_pairs;
    else
        rep.lps_certificate = cert;
    return rep;
}

std::optional<std::pair<int, int>> find_unique_diff_edge(const Polytope& P) {
    int m = static_cast<int>(P.vertices.size());
    for (int v = 0; v < m; ++v) {
        for (std::size_t e = 0; e < P.edges.size(); ++e) {
            auto [a, b] = P.edges[e];
            if (a == v || b == v) continue;
            std::vector<LinearConstraint> sys;
            // c.e1 = c.e2; c.e1 >= c.x + 1 outside E; c.v <= c.x - 1 for x != v.
            push_row(sys, P.vertices[a] - P.vertices[b], 0, Rel::Eq);
            for (int x = 0; x < m; ++x) {
                if (x != a && x != b)
                    push_row(sys, P.vertices[x] - P.vertices[a], -1, Rel::LessEq);
                if (x != v) push_row(sys, P.vertices[v] - P.vertices[x], -1, Rel::LessEq);
            }
            if (lp_feasible(std::move(sys), P.dim))
                return std::make_pair(v, static_cast<int>(e));
        }
    }
    if (!is_locally_point_symmetric(P).lps)
        throw InternalInconsistency(
            "no unique-difference witness found on a polytope without local point symmetry");
    return std::nullopt;
}

GeometryReport analyze_geometry(const Polytope& P) {
    GeometryReport rep = is_locally_point_symmetric(P);
    rep.unique_diff_witness = find_unique_diff_edge(P);
    return rep;
}

}  // namespace polylab
