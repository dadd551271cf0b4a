#pragma once

// Formal vector-valued q-expansions with exact rational coefficients, the Bol
// operator D^{k-1} acting coefficientwise as n^{k-1}, and the residue pairing
// {F, g} against cusp-form-shaped expansions.

#include "hz/real.hpp"
#include "hz/weilrep.hpp"

#include "json.hpp"

#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace hz {

struct VVQExpansion {
    Rat weight;
    bool dual_flag = false;
    std::shared_ptr<const DiscriminantGroup> group;
    // (coset index, exponent n) -> coefficient; n == Q(gamma) mod 1 (or -Q for dual)
    std::map<std::pair<long, Rat>, Rat> terms;
};

VVQExpansion make_expansion(std::shared_ptr<const DiscriminantGroup> G, const Rat& weight,
                            bool dual_flag);

// insert/accumulate one term; validates the congruence of n against Q(gamma)
void add_term(VVQExpansion& f, const DiscElement& gamma, const Rat& n, const Rat& c);
void add_term(VVQExpansion& f, long gamma_index, const Rat& n, const Rat& c);

Rat coefficient(const VVQExpansion& f, long gamma_index, const Rat& n);

VVQExpansion principal_part(const VVQExpansion& f);  // n < 0 terms
VVQExpansion regular_part(const VVQExpansion& f);    // n >= 0 terms

VVQExpansion bol(const VVQExpansion& f, long k);

Rat pairing(const VVQExpansion& F, const VVQExpansion& g);

VVQExpansion linear_combine(const std::vector<Rat>& weights,
                            const std::vector<VVQExpansion>& forms);

nlohmann::json qexp_to_json(const VVQExpansion& f);
VVQExpansion qexp_from_json(const nlohmann::json& j,
                            std::shared_ptr<const DiscriminantGroup> G);

}  // namespace hz
