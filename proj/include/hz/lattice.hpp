#pragma once

// The signature (2,2) lattice L of matrices (a nu'; nu b) with Q(X) = -det,
// Grassmannian quantities q_Z and projection norms, coset map into L'/L and
// exact bounded enumeration of vectors with prescribed coset and norm.

#include "hz/quadfield.hpp"
#include "hz/real.hpp"
#include "hz/weilrep.hpp"

#include "json.hpp"

#include <vector>

namespace hz {

struct LatticeVector {
    Int a, b;
    QuadRat nu;

    bool operator==(const LatticeVector& o) const {
        return a == o.a && b == o.b && nu == o.nu;
    }
};

struct PointH2 {
    Cplx z1, z2;
};

Rat quadratic_form(const LatticeVector& X, long D);                    // N(nu) - ab
Rat bilinear(const LatticeVector& X, const LatticeVector& Y, long D);  // -tr(X Y~)

Cplx q_Z(const PointH2& Z, const LatticeVector& X, long D);

// (Q_pos, Q_neg) = (|q_Z|^2 / (4 y1 y2), Q(X) - Q_pos)
std::pair<Real, Real> projection_norms(const PointH2& Z, const LatticeVector& X, long D);

// dual-basis coordinates of X in L' (a, b, s, t) with nu = s + t*omega
std::vector<Rat> dual_coords(const LatticeVector& X, long D);
DiscElement coset_of(const LatticeVector& X, long D, const DiscriminantGroup& G);

// all X in L+beta with Q(X) = m and max(|a|, |b|, |nu|, |nu'|) <= bound,
// sorted lexicographically by (a, b, s, t). beta = nullptr means beta = 0.
std::vector<LatticeVector> enumerate_vectors(const DiscriminantGroup& G,
                                             const DiscElement& beta, const Rat& m,
                                             const Rat& bound, long D);

// union over all cosets: every X in L' with Q(X) = m inside the box
std::vector<LatticeVector> enumerate_vectors_all(const Rat& m, const Rat& bound, long D);

// generalized vector over R (for the transformation-law check): q_Z extends to
// tuples (a, b, n1, n2) with independent real "embeddings" n1, n2
struct RealVec4 {
    Real a, b, n1, n2;
};
RealVec4 to_realvec(const LatticeVector& X, long D);
Cplx q_Z_real(const PointH2& Z, const RealVec4& X);

// integer Moebius pair action: q_{gamma Z}(X) (c1 z1 + d1)(c2 z2 + d2) = q_Z(gamma^{-1} . X);
// implemented on the w-matrix [[-a, n2],[n1, -b]] as w -> A1 w A2^T with
// A_i = [[s_i, q_i],[r_i, p_i]] for gamma_i = [[p_i,q_i],[r_i,s_i]]
struct Mat2i {
    long p, q, r, s;
    long det() const { return p * s - q * r; }
    Mat2i inverse() const { return {s, -q, -r, p}; }
};
RealVec4 gamma_flip_act(const Mat2i& g1, const Mat2i& g2, const RealVec4& X);
Cplx moebius(const Mat2i& g, const Cplx& z);

nlohmann::json lattice_vector_to_json(const LatticeVector& X, long D);
LatticeVector lattice_vector_from_json(const nlohmann::json& j, long D);

}  // namespace hz
