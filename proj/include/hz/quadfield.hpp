#pragma once

// Exact arithmetic in the real quadratic field F = Q(sqrt(D)) for a
// fundamental discriminant D > 0. Elements are stored as rational pairs over
// the basis {1, sqrt(D)} because that is how the formulas are written;
// integral-basis coordinates (s, t) with v = s + t*omega_D,
// omega_D = (1+sqrt(D))/2 for D = 1 mod 4 and sqrt(D)/2 for D = 0 mod 4,
// are derived on demand for membership / gcd work.

#include "hz/real.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace hz {

struct QuadRat {
    Rat x;  // coefficient of 1
    Rat y;  // coefficient of sqrt(D)

    QuadRat() : x(0), y(0) {}
    QuadRat(Rat x_, Rat y_) : x(std::move(x_)), y(std::move(y_)) {}

    bool operator==(const QuadRat& o) const { return x == o.x && y == o.y; }
    bool operator!=(const QuadRat& o) const { return !(*this == o); }
    bool is_zero() const { return x == 0 && y == 0; }

    QuadRat operator+(const QuadRat& o) const { return {x + o.x, y + o.y}; }
    QuadRat operator-(const QuadRat& o) const { return {x - o.x, y - o.y}; }
    QuadRat operator-() const { return {-x, -y}; }
};

// multiplication and division need D, so they are free functions
QuadRat mul(const QuadRat& a, const QuadRat& b, long D);
QuadRat div(const QuadRat& a, const QuadRat& b, long D);
QuadRat scale(const QuadRat& a, const Rat& c);

bool valid_discriminant(long D);

QuadRat conjugate(const QuadRat& v);
Rat norm(const QuadRat& v, long D);
Rat trace(const QuadRat& v);

// omega_D, the second integral basis element
QuadRat omega(long D);
Rat omega_trace(long D);
Rat omega_norm(long D);

// sign of the embedding x + y*sqrt(D) (+1/0/-1), exact
int embedding_sign(const QuadRat& v, long D, bool conjugate_embedding);
bool is_totally_positive(const QuadRat& v, long D);

enum class Module { ring_of_integers, inverse_different };
bool membership(const QuadRat& v, long D, Module mod);

// integral-basis coordinates of an O_F element: v = s + t*omega_D.
// throws if v is not integral.
std::pair<Int, Int> integral_coords(const QuadRat& v, long D);
QuadRat from_integral_coords(const Int& s, const Int& t, long D);

// nu = ell * nu0 with nu0 primitive in the inverse different, ell > 0
std::pair<QuadRat, Int> primitive_part(const QuadRat& nu, long D);

// smallest unit > 1 of O_F
QuadRat fundamental_unit(long D);

// embeddings at working precision
Real embed(const QuadRat& v, long D, bool conjugate_embedding);

// canonical text form "x + y*sqrt(D)"; parser also accepts plain rationals,
// "y*sqrt(D)" pieces, and integral coordinates "s,t" meaning (s+t*omega)/sqrt(D)
std::string format_quadrat(const QuadRat& v, long D);
QuadRat parse_quadrat(const std::string& text, long D);
QuadRat parse_nu(const std::string& text, long D);  // CLI form; "s,t" allowed

}  // namespace hz
