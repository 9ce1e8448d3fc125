#include "polylab/lp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace polylab {

namespace {

bool all_zero(const std::vector<Rat>& v) {
    for (const Rat& c : v)
        if (c != 0) return false;
    return true;
}

// Scale an inequality to a primitive integer row so duplicates produced by
// the elimination can be recognized and dropped.
std::vector<Int> normalized_key(const LinearConstraint& c) {
    Int lcm = 1;
    for (const Rat& q : c.coeffs) lcm = ::lcm(lcm, q.get_den());
    lcm = ::lcm(lcm, c.rhs.get_den());
    std::vector<Int> row;
    row.reserve(c.coeffs.size() + 1);
    Int g = 0;
    for (const Rat& q : c.coeffs) {
        Int v = q.get_num() * (lcm / q.get_den());
        g = ::gcd(g, v);
        row.push_back(v);
    }
    Int rb = c.rhs.get_num() * (lcm / c.rhs.get_den());
    g = ::gcd(g, rb);
    row.push_back(rb);
    if (g > 1)
        for (Int& v : row) v /= g;
    return row;
}

}  // namespace

bool lp_feasible(std::vector<LinearConstraint> system, int unknowns) {
    for (const auto& c : system)
        if (static_cast<int>(c.coeffs.size()) != unknowns)
            throw std::invalid_argument("lp_feasible: constraint arity mismatch");

    std::vector<bool> active(unknowns, true);

    // Substitute equalities away first.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < system.size(); ++i) {
            if (system[i].rel != Rel::Eq) continue;
            const auto& eq = system[i];
            int pivot = -1;
            for (int j = 0; j < unknowns; ++j)
                if (active[j] && eq.coeffs[j] != 0) {
                    pivot = j;
                    break;
                }
            if (pivot < 0) {
                if (eq.rhs != 0) return false;  // 0 = b, b != 0
                system.erase(system.begin() + i);
                changed = true;
                break;
            }
            // x_pivot = (rhs - sum_{j!=pivot} a_j x_j) / a_pivot
            LinearConstraint def = eq;
            Rat ap = def.coeffs[pivot];
            std::vector<LinearConstraint> next;
            next.reserve(system.size() - 1);
            for (std::size_t k = 0; k < system.size(); ++k) {
                if (k == i) continue;
                LinearConstraint c = system[k];
                Rat factor = c.coeffs[pivot] / ap;
                if (factor != 0) {
                    for (int j = 0; j < unknowns; ++j)
                        c.coeffs[j] -= factor * def.coeffs[j];
                    c.rhs -= factor * def.rhs;
                    c.coeffs[pivot] = 0;
                }
                next.push_back(std::move(c));
            }
            system = std::move(next);
            active[pivot] = false;
            changed = true;
            break;
        }
    }

    // Pure inequality system: eliminate remaining variables one at a time.
    for (;;) {
        // Drop variable-free rows, checking consistency.
        std::vector<LinearConstraint> rows;
        std::set<std::vector<Int>> seen;
        for (auto& c : system) {
            if (all_zero(c.coeffs)) {
                if (c.rhs < 0) return false;
                continue;
            }
            if (seen.insert(normalized_key(c)).second) rows.push_back(std::move(c));
        }
        system = std::move(rows);
        if (system.empty()) return true;

        // Pick the active variable minimizing the pos*neg fill-in.
        int best = -1;
        std::size_t best_cost = 0;
        for (int j = 0; j < unknowns; ++j) {
            if (!active[j]) continue;
            std::size_t pos = 0, neg = 0;
            for (const auto& c : system) {
                if (c.coeffs[j] > 0) ++pos;
                if (c.coeffs[j] < 0) ++neg;
            }
            if (pos + neg == 0) continue;
            std::size_t cost = pos * neg;
            if (best < 0 || cost < best_cost) {
                best = j;
                best_cost = cost;
            }
        }
        if (best < 0) return true;  // no variable left in any row, rows nonempty impossible
        active[best] = false;

        std::vector<LinearConstraint> uppers, lowers, rest;
        for (auto& c : system) {
            if (c.coeffs[best] > 0)
                uppers.push_back(std::move(c));
            else if (c.coeffs[best] < 0)
                lowers.push_back(std::move(c));
            else
                rest.push_back(std::move(c));
        }
        for (const auto& up : uppers) {
            for (const auto& lo : lowers) {
                LinearConstraint c;
                c.coeffs.assign(unknowns, rat(0));
                // up: a x <= b with a>0; lo: a' x <= b' with a'<0.
                Rat a = up.coeffs[best];
                Rat ap = -lo.coeffs[best];
                for (int j = 0; j < unknowns; ++j)
                    c.coeffs[j] = up.coeffs[j] * ap + lo.coeffs[j] * a;
                c.coeffs[best] = 0;
                c.rhs = up.rhs * ap + lo.rhs * a;
                if (all_zero(c.coeffs)) {
                    if (c.rhs < 0) return false;
                } else {
                    rest.push_back(std::move(c));
                }
            }
        }
        system = std::move(rest);
        if (system.empty()) return true;
    }
}

}  // namespace polylab
