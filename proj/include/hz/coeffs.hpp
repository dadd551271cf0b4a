#pragma once

// Closed forms for the Fourier coefficients of omega_{beta,m}: the Bessel
// series branch on totally positive indices, the exact divisor sum on the
// rest, and the weighted combination for a full principal part. The Bessel
// branch returns a midpoint with a certified error bound; every truncation is
// covered by an explicit tail certificate or the computation refuses to
// answer.

#include "hz/quadfield.hpp"
#include "hz/real.hpp"
#include "hz/weilrep.hpp"
#include "hz/weyl.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hz {

// raised when a requested bound cannot be certified within the alpha cap (or
// when the growth envelope backing the tail certificate fails in range)
struct certification_error : std::runtime_error {
    explicit certification_error(const std::string& w) : std::runtime_error(w) {}
};

// I_n(x) by the ascending series, truncated once the geometric remainder
// bound drops below tol. Returns (value, remainder bound).
std::pair<Real, Real> bessel_I(long order, const Real& x, const Real& tol);

enum class Branch { totally_positive, divisor_sum, zero_support };
const char* branch_name(Branch b);

// The r | nu*sqrt(D) divisor sum carries a norm-normalization that the source
// leaves ambiguous (N(nu/r) = m versus = D*m). The oracle sides with norm_m;
// both readings stay selectable and oracle-compare reports which one passes.
enum class DivisorNormalization { norm_m, norm_Dm };

struct CoefficientResult {
    QuadRat nu;
    Branch branch = Branch::zero_support;
    long D = 5;
    long k = 4;
    Rat m;
    std::string chamber_id;

    bool exact = false;  // divisor / zero branches are exact rationals
    Rat exact_value;
    Real value;       // midpoint (set on every branch)
    Real error;       // certified bound, 0 when exact
    long tail_alpha = 0;  // last alpha summed in the Bessel series
    Real tail_bound;      // the alpha > tail_alpha certificate alone

    bool is_integer = false;  // error < 1/2, rounded below is meaningful
    Int rounded;
};

// exponential sum G_alpha(m, nu): full congruence count with phases on
// d^{-1}/alpha. Production path (prime-power splitting + CRT) and the
// quadratic-time reference it is tested against. Double precision; roundoff
// is absorbed into the series' numeric error budget.
double g_alpha(long alpha, const Rat& m, const QuadRat& nu, long D);
double g_alpha_brute(long alpha, const Rat& m, const QuadRat& nu, long D);

// empirical growth envelope |G_alpha| <= growth_c * alpha^{3/2} backing the
// tail certificate; checked at runtime for every alpha actually summed
constexpr double g_alpha_growth_c = 4.5;

CoefficientResult coeff_totally_positive(const QuadRat& nu, const Rat& m, long k,
                                         const WeylChamber& W, long alpha_cap = 10000,
                                         double target_error = 0.49);

CoefficientResult coeff_divisor_branch(const QuadRat& nu, const Rat& m, long k,
                                       const WeylChamber& W,
                                       DivisorNormalization dn = DivisorNormalization::norm_m);

CoefficientResult omega_coefficient(const QuadRat& nu, const Rat& m, long k,
                                    const WeylChamber& W, long alpha_cap = 10000,
                                    DivisorNormalization dn = DivisorNormalization::norm_m,
                                    double target_error = 0.49);

// one principal-part term c * q^n on the coset beta (index into G)
struct PrincipalTerm {
    long beta = 0;
    Rat n;  // < 0
    Rat c;
};

// coefficient at nu of sum_i c_i * omega_{beta_i, n_i}. Groups that cover a
// full norm class {beta : Q(beta) = n mod 1} with one weight go through the
// closed form; stray single-coset terms fall back to the torus oracle (their
// heuristic error is added to the certified part and flagged non-exact).
struct CombinationOptions {
    long alpha_cap = 10000;
    DivisorNormalization dn = DivisorNormalization::norm_m;
    double target_error = 0.49;
    long oracle_N = 64;
    Rat oracle_R = 60;
};

CoefficientResult combination_coefficients(const std::vector<PrincipalTerm>& terms,
                                           const QuadRat& nu, long k,
                                           const WeylChamber& W,
                                           const DiscriminantGroup& G,
                                           const CombinationOptions& opt = {});

nlohmann::json coefficient_to_json(const CoefficientResult& r);

}  // namespace hz
