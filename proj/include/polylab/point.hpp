#ifndef POLYLAB_POINT_HPP
#define POLYLAB_POINT_HPP

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace polylab {

using Coord = std::int64_t;

// Integer lattice point. Comparison is lexicographic with coordinate 0 most
// significant, which fixes the ordering of every serialized point list.
struct Point {
    std::vector<Coord> x;

    Point() = default;
    explicit Point(std::vector<Coord> coords) : x(std::move(coords)) {}
    Point(std::initializer_list<Coord> coords) : x(coords) {}

    int dim() const { return static_cast<int>(x.size()); }
    Coord& operator[](std::size_t i) { return x[i]; }
    Coord operator[](std::size_t i) const { return x[i]; }

    friend auto operator<=>(const Point&, const Point&) = default;

    Point operator+(const Point& o) const {
        Point r = *this;
        for (std::size_t i = 0; i < x.size(); ++i) r.x[i] += o.x[i];
        return r;
    }
    Point operator-(const Point& o) const {
        Point r = *this;
        for (std::size_t i = 0; i < x.size(); ++i) r.x[i] -= o.x[i];
        return r;
    }
    Point operator-() const {
        Point r = *this;
        for (auto& c : r.x) c = -c;
        return r;
    }
    Point operator*(Coord k) const {
        Point r = *this;
        for (auto& c : r.x) c *= k;
        return r;
    }
    bool is_zero() const {
        for (Coord c : x)
            if (c != 0) return false;
        return true;
    }
};

inline Coord dot(const Point& a, const Point& b) {
    Coord s = 0;
    for (std::size_t i = 0; i < a.x.size(); ++i) s += a.x[i] * b.x[i];
    return s;
}

inline Coord coord_gcd(const Point& a) {
    Coord g = 0;
    for (Coord c : a.x) g = std::gcd(g, c < 0 ? -c : c);
    return g;
}

// v / gcd(|v_i|); v must be nonzero.
inline Point primitive(Point v) {
    Coord g = coord_gcd(v);
    if (g > 1)
        for (auto& c : v.x) c /= g;
    return v;
}

inline std::string to_string(const Point& p) {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < p.dim(); ++i) {
        if (i) os << ',';
        os << p.x[i];
    }
    os << ')';
    return os.str();
}

}  // namespace polylab

#endif
