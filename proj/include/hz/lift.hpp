#pragma once

// Coefficient formula for the Doi-Naganuma style lift of a formal vector-valued
// expansion. Everything lives on the normalized side C*Phi(F, Z), so the whole
// computation is exact rational arithmetic; the transcendental normalization
// constant never enters.

#include "hz/qexp.hpp"
#include "hz/weyl.hpp"

#include "json.hpp"

#include <utility>
#include <vector>

namespace hz {

// exact Bernoulli number by the defining recurrence; B_1 = -1/2
Rat bernoulli(long n);

struct LiftExpansion {
    long D = 5;
    long k = 4;
    Rat constant;  // -c_F(0,0) * B_k / k
    // coefficient of e(tr(nu Z)) for each requested target that lies in the
    // chamber support; targets failing the positivity gate are omitted
    std::vector<std::pair<QuadRat, Rat>> coeffs;
    std::string chamber_id;
};

// F indexed by n = Q(gamma) mod 1, integer weight; targets must sit in the
// inverse different. A mixed-signature target whose trace line crosses the
// chamber propagates wall_sign_error from the positivity test.
LiftExpansion lift_coefficients(const VVQExpansion& F, const WeylChamber& W,
                                const std::vector<QuadRat>& targets);

nlohmann::json lift_to_json(const LiftExpansion& L);

}  // namespace hz
