#pragma once

// Hirzebruch-Zagier divisors T_m, walls {nu y1 + nu' y2 = 0} in the positive
// (y1, y2) quadrant, Weyl chambers as locally described components, and the
// positivity condition "(nu, W) > 0". All sign decisions are exact: the base
// point is rational and tr(nu y) is a quadratic irrationality with known sign.

#include "hz/lattice.hpp"
#include "hz/quadfield.hpp"
#include "hz/real.hpp"

#include "json.hpp"

#include <stdexcept>
#include <vector>

namespace hz {

// thrown when the requested sign genuinely fails to be chamber-constant: the
// base point lies on the line of nu, or the line of nu crosses the chamber
// interior (possible only when nu is not parallel to any N = m wall)
struct wall_sign_error : std::runtime_error {
    explicit wall_sign_error(const std::string& w) : std::runtime_error(w) {}
};

// thrown by chamber_of when the base point sits on a wall
struct on_wall_error : std::domain_error {
    explicit on_wall_error(const std::string& w) : std::domain_error(w) {}
};

struct WeylChamber {
    long D = 5;
    Rat m;                       // < 0
    Rat base_y1, base_y2;        // rational, positive
    Rat slope_lo, slope_hi;      // slope window around base_y1/base_y2
    std::vector<QuadRat> walls;  // N(nu) = m, first embedding > 0, slopes ascending
    std::vector<int> signs;      // sign of nu y1 + nu' y2 at the base, per wall
};

// nu y1 + nu' y2 as an element of F (evaluate under the first embedding)
QuadRat trace_form(const QuadRat& nu, const Rat& y1, const Rat& y2);

// all walls of T_m with slope -nu'/nu inside [slope_lo, slope_hi], one vector
// per wall, normalized to positive first embedding, ascending slope
std::vector<QuadRat> wall_vectors(const Rat& m, const Rat& slope_lo, const Rat& slope_hi,
                                  long D);

WeylChamber chamber_of(const Rat& y1, const Rat& y2, const Rat& m, long D);

bool positivity(const QuadRat& nu, const WeylChamber& W);

bool on_divisor(const PointH2& Z, const Rat& m, const Rat& height_bound, const Real& tol,
                long D);

bool same_signature(const WeylChamber& A, const WeylChamber& B);

// short stable label, used to stamp results with the chamber they belong to
std::string chamber_id(const WeylChamber& W);

nlohmann::json chamber_to_json(const WeylChamber& W);

}  // namespace hz
