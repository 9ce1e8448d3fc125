#include "polylab/rational.hpp"

#include "polylab/errors.hpp"

namespace polylab {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            Int num(s.substr(0, slash));
            Int den(s.substr(slash + 1));
            if (den == 0) throw ParseError("zero denominator in '" + s + "'");
            return rat(num, den);
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string head = s.substr(0, dot);
            std::string frac = s.substr(dot + 1);
            bool neg = !head.empty() && head[0] == '-';
            if (head == "-" || head.empty()) head = "0";
            Int num(head);
            Int den = 1;
            for (char c : frac) {
                if (c < '0' || c > '9') throw ParseError("bad rational literal '" + s + "'");
                num = num * 10 + (neg ? -(c - '0') : (c - '0'));
                den *= 10;
            }
            return rat(num, den);
        }
        return rat(Int(s), Int(1));
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal '" + s + "'");
    }
}

}  // namespace polylab
