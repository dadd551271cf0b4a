#pragma once

// Discriminant group L'/L of an even lattice from its Gram matrix (via Smith
// normal form) and the Weil representation matrices rho(S), rho(T) on the
// group ring. Also the Gram matrix builder for the signature (2,2) lattice
// Z^2 + O_F used everywhere else.

#include "hz/quadfield.hpp"
#include "hz/real.hpp"

#include <memory>
#include <vector>

namespace hz {

using IMat = std::vector<std::vector<Int>>;
using RMat = std::vector<std::vector<Rat>>;
using CMat = std::vector<std::vector<Cplx>>;

// Smith normal form: returns (U, diag, V) with U*A*V = diag(d_i), d_i >= 0,
// d_i | d_{i+1}, U, V unimodular.
struct SNF {
    IMat U, V;
    std::vector<Int> d;
};
SNF smith_normal_form(const IMat& A);

struct DiscriminantGroup;

struct DiscElement {
    const DiscriminantGroup* G = nullptr;
    std::vector<Int> c;  // canonical coordinates, c_i in [0, d_i)

    bool operator==(const DiscElement& o) const { return c == o.c; }
    bool operator!=(const DiscElement& o) const { return !(*this == o); }
};

struct DiscriminantGroup {
    IMat gram;          // the even Gram matrix A
    RMat gram_inv;
    SNF snf;
    IMat U_inv;
    std::vector<Int> orders;  // all d_i (some may be 1)
    Int size = 1;
    int b_plus = 0, b_minus = 0;

    DiscElement zero() const;
    DiscElement from_dual_vector(const std::vector<Rat>& v) const;  // v in L'
    DiscElement from_image(const std::vector<Int>& w) const;        // w = A v
    std::vector<Rat> representative(const DiscElement& e) const;    // some v in L'
    DiscElement add(const DiscElement& a, const DiscElement& b) const;
    DiscElement neg(const DiscElement& a) const;

    Rat Q(const DiscElement& e) const;                          // mod 1, in [0,1)
    Rat bilinear(const DiscElement& a, const DiscElement& b) const;  // mod 1

    long element_count() const;           // |L'/L| as long (small groups only)
    DiscElement element_at(long idx) const;  // mixed-radix enumeration
    long index_of(const DiscElement& e) const;
};

std::shared_ptr<DiscriminantGroup> discriminant_group(const IMat& gram);

// Gram matrix of L = Z^2 (+) O_F with Q((a,b),mu) = N(mu) - ab,
// basis (e_a, e_b, 1, omega_D)
IMat hmf_gram(long D);

// Weil representation generator matrices; dual = entrywise conjugate
enum class WeilGen { S, T, S_inv, T_inv };
CMat rho_generator(const DiscriminantGroup& G, WeilGen g, bool dual);

std::vector<Cplx> apply_word(const DiscriminantGroup& G,
                             const std::vector<WeilGen>& word,
                             std::vector<Cplx> v, bool dual);

Rat frac_mod1(const Rat& r);  // r - floor(r), in [0,1)

}  // namespace hz
