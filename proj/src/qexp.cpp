#include "hz/qexp.hpp"

#include <stdexcept>

namespace hz {

VVQExpansion make_expansion(std::shared_ptr<const DiscriminantGroup> G, const Rat& weight,
                            bool dual_flag) {
    if (!G) throw std::invalid_argument("expansion needs a discriminant group");
    VVQExpansion f;
    f.weight = weight;
    f.dual_flag = dual_flag;
    f.group = std::move(G);
    return f;
}

void add_term(VVQExpansion& f, long gamma_index, const Rat& n, const Rat& c) {
    const DiscriminantGroup& G = *f.group;
    if (gamma_index < 0 || gamma_index >= G.element_count())
        throw std::out_of_range("coset index out of range");
    Rat q = G.Q(G.element_at(gamma_index));
    if (f.dual_flag) q = -q;
    if (frac_mod1(n - q) != 0)
        throw std::invalid_argument("exponent violates the coset congruence");
    if (c == 0) return;
    auto key = std::make_pair(gamma_index, n);
    auto it = f.terms.find(key);
    if (it == f.terms.end()) {
        f.terms.emplace(key, c);
    } else {
        it->second += c;
        if (it->second == 0) f.terms.erase(it);
    }
}

void add_term(VVQExpansion& f, const DiscElement& gamma, const Rat& n, const Rat& c) {
    add_term(f, f.group->index_of(gamma), n, c);
}

Rat coefficient(const VVQExpansion& f, long gamma_index, const Rat& n) {
    auto it = f.terms.find(std::make_pair(gamma_index, n));
    return it == f.terms.end() ? Rat(0) : it->second;
}

VVQExpansion principal_part(const VVQExpansion& f) {
    VVQExpansion p = make_expansion(f.group, f.weight, f.dual_flag);
    for (auto& [key, c] : f.terms)
        if (key.second < 0) p.terms.emplace(key, c);
    return p;
}

VVQExpansion regular_part(const VVQExpansion& f) {
    VVQExpansion p = make_expansion(f.group, f.weight, f.dual_flag);
    for (auto& [key, c] : f.terms)
        if (key.second >= 0) p.terms.emplace(key, c);
    return p;
}

static Rat rat_pow(const Rat& x, long e) {
    // e >= 0
    Rat acc(1), base = x;
    for (long b = e; b > 0; b >>= 1) {
        if (b & 1) acc *= base;
        base *= base;
    }
    return acc;
}

VVQExpansion bol(const VVQExpansion& f, long k) {
    if (k < 2) throw std::invalid_argument("bol: need k >= 2");
    if (f.weight != Rat(2 - k)) throw std::invalid_argument("bol: weight must be 2-k");
    VVQExpansion g = make_expansion(f.group, Rat(k), f.dual_flag);
    for (auto& [key, c] : f.terms) {
        if (key.second == 0) continue;  // the constant term dies under D^{k-1}
        g.terms.emplace(key, c * rat_pow(key.second, k - 1));
    }
    return g;
}

Rat pairing(const VVQExpansion& F, const VVQExpansion& g) {
    for (auto& [key, c] : g.terms)
        if (key.second <= 0)
            throw std::invalid_argument("pairing: g must be cusp-form shaped (n > 0)");
    Rat acc(0);
    for (auto& [key, cg] : g.terms) acc += cg * coefficient(F, key.first, -key.second);
    return acc;
}

VVQExpansion linear_combine(const std::vector<Rat>& weights,
                            const std::vector<VVQExpansion>& forms) {
    if (weights.size() != forms.size() || forms.empty())
        throw std::invalid_argument("linear_combine: length mismatch");
    for (auto& f : forms)
        if (f.weight != forms[0].weight || f.dual_flag != forms[0].dual_flag ||
            f.group != forms[0].group)
            throw std::invalid_argument("linear_combine: incompatible expansions");
    VVQExpansion out = make_expansion(forms[0].group, forms[0].weight, forms[0].dual_flag);
    for (size_t i = 0; i < forms.size(); ++i)
        for (auto& [key, c] : forms[i].terms) {
            Rat add = weights[i] * c;
            if (add == 0) continue;
            auto it = out.terms.find(key);
            if (it == out.terms.end()) {
                out.terms.emplace(key, add);
            } else {
                it->second += add;
                if (it->second == 0) out.terms.erase(it);
            }
        }
    return out;
}

static std::string rat_str(const Rat& q) { return q.str(); }

nlohmann::json qexp_to_json(const VVQExpansion& f) {
    nlohmann::json j;
    j["weight"] = rat_str(f.weight);
    j["dual"] = f.dual_flag;
    j["terms"] = nlohmann::json::array();
    for (auto& [key, c] : f.terms) {
        nlohmann::json t;
        t["gamma"] = key.first;
        t["n"] = rat_str(key.second);
        t["c"] = rat_str(c);
        j["terms"].push_back(t);
    }
    return j;
}

VVQExpansion qexp_from_json(const nlohmann::json& j,
                            std::shared_ptr<const DiscriminantGroup> G) {
    VVQExpansion f =
        make_expansion(std::move(G), Rat(j.at("weight").get<std::string>()),
                       j.at("dual").get<bool>());
    for (auto& t : j.at("terms"))
        add_term(f, t.at("gamma").get<long>(), Rat(t.at("n").get<std::string>()),
                 Rat(t.at("c").get<std::string>()));
    return f;
}

}  // namespace hz
