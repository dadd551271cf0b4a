#include "hz/lift.hpp"

#include "hz/lattice.hpp"

#include <stdexcept>
#include <vector>

namespace hz {

Rat bernoulli(long n) {
    if (n < 0) throw std::invalid_argument("bernoulli: negative index");
    // sum_{j<=i} C(i+1, j) B_j = 0 with B_0 = 1
    std::vector<Rat> B(n + 1);
    for (long i = 0; i <= n; ++i) {
        if (i == 0) {
            B[0] = 1;
            continue;
        }
        Rat acc(0);
        Int binom = 1;  // C(i+1, j), starting at j = 0
        for (long j = 0; j < i; ++j) {
            acc += Rat(binom) * B[j];
            binom = binom * Int(i + 1 - j) / Int(j + 1);
        }
        B[i] = -acc / Rat(i + 1);
    }
    return B[n];
}

LiftExpansion lift_coefficients(const VVQExpansion& F, const WeylChamber& W,
                                const std::vector<QuadRat>& targets) {
    if (!F.group) throw std::invalid_argument("expansion carries no discriminant group");
    if (F.dual_flag)
        throw std::invalid_argument("lift input must be indexed by n = Q(gamma) mod 1");
    if (denominator(F.weight) != 1 || F.weight < 2)
        throw std::invalid_argument("lift needs an integer weight >= 2");
    const long D = W.D;
    const DiscriminantGroup& G = *F.group;
    if (G.size != D)
        throw std::invalid_argument("discriminant group does not match the chamber field");
    const long k = numerator(F.weight).convert_to<long>();

    LiftExpansion out;
    out.D = D;
    out.k = k;
    out.chamber_id = chamber_id(W);
    out.constant = -coefficient(F, G.index_of(G.zero()), Rat(0)) * bernoulli(k) / Rat(k);

    for (const QuadRat& nu : targets) {
        if (nu.is_zero() || !membership(nu, D, Module::inverse_different))
            throw std::invalid_argument("lift target is not in the inverse different");
        if (!positivity(nu, W)) continue;
        auto [nu0, ell] = primitive_part(nu, D);
        const Rat Nnu = norm(nu, D);
        Rat total(0);
        for (Int d = 1; d <= ell; ++d) {
            if (ell % d != 0) continue;
            const QuadRat nud = scale(nu, Rat(1) / Rat(d));
            const long gi = G.index_of(coset_of(LatticeVector{Int(0), Int(0), nud}, D, G));
            const Rat c = coefficient(F, gi, Nnu / Rat(d * d));
            if (c != 0) total += Rat(pow(d, unsigned(k - 1))) * c;
        }
        out.coeffs.emplace_back(nu, 2 * total);
    }
    return out;
}

nlohmann::json lift_to_json(const LiftExpansion& L) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [nu, c] : L.coeffs)
        arr.push_back({{"nu", format_quadrat(nu, L.D)}, {"value", c.str()}, {"error", "0"}});
    return nlohmann::json{{"D", L.D},
                          {"k", L.k},
                          {"chamber", L.chamber_id},
                          {"constant", L.constant.str()},
                          {"coefficients", arr}};
}

}  // namespace hz
