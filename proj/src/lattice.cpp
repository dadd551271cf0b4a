#include "hz/lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace hz {

Rat quadratic_form(const LatticeVector& X, long D) {
    return norm(X.nu, D) - Rat(X.a) * Rat(X.b);
}

Rat bilinear(const LatticeVector& X, const LatticeVector& Y, long D) {
    // polarization of Q; equals tr(nu_X nu_Y') - a_X b_Y - a_Y b_X
    LatticeVector S{X.a + Y.a, X.b + Y.b, X.nu + Y.nu};
    return quadratic_form(S, D) - quadratic_form(X, D) - quadratic_form(Y, D);
}

Cplx q_Z(const PointH2& Z, const LatticeVector& X, long D) {
    RealVec4 v = to_realvec(X, D);
    return q_Z_real(Z, v);
}

std::pair<Real, Real> projection_norms(const PointH2& Z, const LatticeVector& X, long D) {
    if (!(Z.z1.im > 0) || !(Z.z2.im > 0))
        throw std::invalid_argument("projection_norms: Z must lie in H x H");
    Cplx q = q_Z(Z, X, D);
    Real qpos = q.abs2() / (4 * Z.z1.im * Z.z2.im);
    Real qneg = to_real(quadratic_form(X, D)) - qpos;
    return {qpos, qneg};
}

std::vector<Rat> dual_coords(const LatticeVector& X, long D) {
    QuadRat w = omega(D);
    Rat t = X.nu.y / w.y;
    Rat s = X.nu.x - t * w.x;
    return {Rat(X.a), Rat(X.b), s, t};
}

DiscElement coset_of(const LatticeVector& X, long D, const DiscriminantGroup& G) {
    return G.from_dual_vector(dual_coords(X, D));
}

RealVec4 to_realvec(const LatticeVector& X, long D) {
    RealVec4 v;
    v.a = to_real(Rat(X.a));
    v.b = to_real(Rat(X.b));
    v.n1 = embed(X.nu, D, false);
    v.n2 = embed(X.nu, D, true);
    return v;
}

Cplx q_Z_real(const PointH2& Z, const RealVec4& X) {
    Cplx r = Z.z1 * Z.z2 * (-X.b);
    r = r + Z.z1 * X.n1 + Z.z2 * X.n2;
    r.re -= X.a;
    return r;
}

namespace {

// integer coordinate window [lo, hi] containing all integers n with
// pred(n) true, seeded from a Real estimate and widened by exact checks
long floor_long(const Real& r) {
    long n = static_cast<long>(floor(r).convert_to<double>());
    // guard against stray rounding at the double conversion
    while (Real(n + 1) <= r) ++n;
    while (Real(n) > r) --n;
    return n;
}

// all integer pairs (a, b) with a*b == T and |a|, |b| <= bound
void factor_pairs(const Int& T, const Int& bound,
                  std::vector<std::pair<Int, Int>>& out) {
    out.clear();
    if (T == 0) {
        for (Int a = -bound; a <= bound; ++a) {
            out.emplace_back(a, Int(0));
            if (a != 0) out.emplace_back(Int(0), a);
        }
        return;
    }
    Int absT = abs(T);
    for (Int a = 1; a <= bound; ++a) {
        if (absT % a != 0) continue;
        Int q = absT / a;
        if (q > bound) continue;
        Int b = T / a;
        out.emplace_back(a, b);
        out.emplace_back(-a, -b);
    }
}

struct LexKey {
    Int a, b;
    Rat s, t;
    bool operator<(const LexKey& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        if (s != o.s) return s < o.s;
        return t < o.t;
    }
};

}  // namespace

std::vector<LatticeVector> enumerate_vectors_all(const Rat& m, const Rat& bound, long D) {
    if (bound < 0) return {};
    // nu = w / sqrt(D) with w = S + T*omega integral; embeddings of nu have
    // absolute value |w_i| / sqrt(D), so the box is max(|w_1|, |w_2|) <= bound*sqrt(D),
    // i.e. |x_w| + |y_w| sqrt(D) <= bound*sqrt(D) with w = x_w + y_w sqrt(D).
    QuadRat om = omega(D);
    Real rtD = sqrt(to_real(Rat(D)));
    Real Bs = to_real(bound) * rtD;

    // |y_w| <= bound exactly; y_w = T/2 in both ramified-generator conventions
    long Tlo = floor_long((-to_real(bound)) / to_real(om.y)) - 2;
    long Thi = floor_long(to_real(bound) / to_real(om.y)) + 2;

    std::vector<std::pair<LexKey, LatticeVector>> found;
    std::vector<std::pair<Int, Int>> pairs;
    Rat B2 = bound * bound;
    Int ibound = numerator(bound) / denominator(bound);  // floor, bound >= 0
    for (long T = Tlo; T <= Thi; ++T) {
        Rat yw = Rat(T) * om.y;
        if (yw * yw > B2) continue;
        // |x_w| <= (bound - |y_w|) sqrt(D)
        Rat ycap = bound - abs(yw);
        Real xr = to_real(ycap) * rtD;
        Rat x0 = Rat(T) * om.x;  // x_w = S + T*om.x
        long Slo = floor_long(-xr - to_real(x0)) - 2;
        long Shi = floor_long(xr - to_real(x0)) + 2;
        for (long S = Slo; S <= Shi; ++S) {
            Rat xw = Rat(S) + x0;
            if (xw * xw > ycap * ycap * D) continue;
            // nu = w/sqrt(D): x_nu = y_w, y_nu = x_w / D
            QuadRat nu{yw, xw / D};
            Rat Tq = norm(nu, D) - m;  // required a*b
            if (denominator(Tq) != 1) continue;
            Int Ti = numerator(Tq);
            factor_pairs(Ti, ibound, pairs);
            if (pairs.empty()) continue;
            Rat tc = nu.y / om.y;
            Rat sc = nu.x - tc * om.x;
            for (auto& [a, b] : pairs)
                found.push_back({LexKey{a, b, sc, tc}, LatticeVector{a, b, nu}});
        }
    }
    std::sort(found.begin(), found.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    std::vector<LatticeVector> out;
    out.reserve(found.size());
    for (auto& f : found) out.push_back(f.second);
    return out;
}

std::vector<LatticeVector> enumerate_vectors(const DiscriminantGroup& G,
                                             const DiscElement& beta, const Rat& m,
                                             const Rat& bound, long D) {
    std::vector<LatticeVector> all = enumerate_vectors_all(m, bound, D);
    std::vector<LatticeVector> out;
    for (auto& X : all)
        if (coset_of(X, D, G) == beta) out.push_back(X);
    return out;
}

RealVec4 gamma_flip_act(const Mat2i& g1, const Mat2i& g2, const RealVec4& X) {
    // W = [[-a, n2], [n1, -b]], W* = A1 W A2^T with A_i = [[s_i, q_i], [r_i, p_i]]
    Real W[2][2] = {{-X.a, X.n2}, {X.n1, -X.b}};
    Real A1[2][2] = {{Real(g1.s), Real(g1.q)}, {Real(g1.r), Real(g1.p)}};
    Real A2[2][2] = {{Real(g2.s), Real(g2.q)}, {Real(g2.r), Real(g2.p)}};
    Real M[2][2], W2[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) M[i][j] = A1[i][0] * W[0][j] + A1[i][1] * W[1][j];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) W2[i][j] = M[i][0] * A2[j][0] + M[i][1] * A2[j][1];
    RealVec4 Y;
    Y.a = -W2[0][0];
    Y.n2 = W2[0][1];
    Y.n1 = W2[1][0];
    Y.b = -W2[1][1];
    return Y;
}

Cplx moebius(const Mat2i& g, const Cplx& z) {
    Cplx num = z * Real(g.p);
    num.re += g.q;
    Cplx den = z * Real(g.r);
    den.re += g.s;
    return num / den;
}

nlohmann::json lattice_vector_to_json(const LatticeVector& X, long D) {
    nlohmann::json j;
    j["a"] = X.a.convert_to<long long>();
    j["b"] = X.b.convert_to<long long>();
    j["nu"] = format_quadrat(X.nu, D);
    return j;
}

LatticeVector lattice_vector_from_json(const nlohmann::json& j, long D) {
    LatticeVector X;
    X.a = Int(j.at("a").get<long long>());
    X.b = Int(j.at("b").get<long long>());
    X.nu = parse_quadrat(j.at("nu").get<std::string>(), D);
    return X;
}

}  // namespace hz
