#ifndef POLYLAB_RATIONAL_HPP
#define POLYLAB_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace polylab {

// Exact arithmetic is delegated to GMP. mpq_class keeps the canonical form
// (gcd 1, positive denominator) only after canonicalize(), so construction
// from a numerator/denominator pair always goes through rat().
using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "3", "-7/2" and decimal notation like "2.5".
Rat parse_rat(const std::string& s);

inline double to_double(const Rat& r) { return r.get_d(); }

}  // namespace polylab

#endif
