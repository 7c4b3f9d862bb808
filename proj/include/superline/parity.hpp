#ifndef SUPERLINE_PARITY_HPP
#define SUPERLINE_PARITY_HPP

namespace superline {

enum class Parity : unsigned char { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>((static_cast<unsigned>(a) ^ static_cast<unsigned>(b)) & 1u);
}

inline Parity flip(Parity p) { return p + Parity::Odd; }

inline Parity parity_of_int(long k) { return (k % 2 != 0) ? Parity::Odd : Parity::Even; }

// Koszul sign picked up when two homogeneous elements swap places.
inline int swap_sign(Parity a, Parity b) {
    return (a == Parity::Odd && b == Parity::Odd) ? -1 : 1;
}

inline const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

} // namespace superline

#endif
