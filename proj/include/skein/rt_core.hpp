#pragma once

#include "ring.hpp"

namespace skein {

// Boundary states: 0 is +, 1 is -.
enum : int { Plus = 0, Minus = 1 };

inline char state_char(int s) { return s == Plus ? '+' : '-'; }

inline int parse_state(char ch) {
    if (ch == '+') return Plus;
    if (ch == '-') return Minus;
    throw DomainError(std::string("bad state character '") + ch + "'");
}

// C^{top}_{bottom}: C^+_- = q^{-1/2}, C^-_+ = -q^{-5/2}, zero on equal states
inline HalfLaurent arc_C(int top, int bottom) {
    if (top == bottom) return HalfLaurent();
    return top == Plus ? HalfLaurent::v(-1) : HalfLaurent::mono(-1, -5);
}

// returning arc on the left edge (a cap slice)
inline HalfLaurent cap_value(int bottom, int top) { return arc_C(top, bottom); }

// returning arc on the right edge (a cup slice): -q^3 C^{top}_{bottom}
inline HalfLaurent cup_value(int bottom, int top) { return HalfLaurent::mono(-1, 6) * arc_C(top, bottom); }

// Matrix entry of a crossing between two adjacent strands, read from the
// left states (bottom, top) to the right states (bottom, top).
//   X+ = q id + q^-1 (cap then cup),  X- = q^-1 id + q (cap then cup)
// The over strand of X+ runs from bottom left to top right.
inline HalfLaurent crossing_value(int sign, int lb, int lt, int rb, int rt) {
    HalfLaurent r;
    if (lb == rb && lt == rt) r += HalfLaurent::q(sign > 0 ? 1 : -1);
    HalfLaurent cc = cap_value(lb, lt) * cup_value(rb, rt);
    if (!cc.is_zero()) r += HalfLaurent::q(sign > 0 ? -1 : 1) * cc;
    return r;
}

} // namespace skein
