#ifndef POLYLAB_LP_HPP
#define POLYLAB_LP_HPP

#include <vector>

#include "polylab/rational.hpp"

namespace polylab {

enum class Rel { LessEq, Eq };

// coeffs . x  (<=|=)  rhs
struct LinearConstraint {
    std::vector<Rat> coeffs;
    Rat rhs;
    Rel rel = Rel::LessEq;
};

// Exact rational feasibility by Fourier-Motzkin elimination. Equalities are
// removed first by substitution. Sized for the desk scale this project needs
// (roughly <= 16 unknowns); inputs beyond that may blow up in time, not in
// correctness.
bool lp_feasible(std::vector<LinearConstraint> system, int unknowns);

}  // namespace polylab

#endif
