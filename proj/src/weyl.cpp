#include "hz/weyl.hpp"

#include <algorithm>
#include <cmath>

namespace hz {

QuadRat trace_form(const QuadRat& nu, const Rat& y1, const Rat& y2) {
    // (x + y sqrt(D)) y1 + (x - y sqrt(D)) y2 = x(y1+y2) + y(y1-y2) sqrt(D)
    return {nu.x * (y1 + y2), nu.y * (y1 - y2)};
}

namespace {

// totally positive generator of the unit group
QuadRat tp_unit(long D) {
    QuadRat e = fundamental_unit(D);
    if (norm(e, D) == 1) return e;
    return mul(e, e, D);
}

// slope of the wall of nu (nu mixed-sign, first embedding > 0) is -nu'/nu.
// compare against a rational sigma: slope <=> sigma reduces to the exact sign
// of sigma*nu + nu' under the first embedding.
int slope_cmp_rat(const QuadRat& nu, const Rat& sigma, long D) {
    QuadRat t = scale(nu, sigma) + conjugate(nu);
    return embedding_sign(t, D, false);  // >0: slope < sigma; <0: slope > sigma
}

// sign of slope(nu1) - slope(nu2), both normalized to positive first embedding
int slope_cmp(const QuadRat& n1, const QuadRat& n2, long D) {
    // -n1'/n1 + n2'/n2 has the sign of n2' n1 - n1' n2 (n1, n2 > 0)
    QuadRat q = mul(conjugate(n2), n1, D) - mul(conjugate(n1), n2, D);
    return embedding_sign(q, D, false);
}

long floor_long_of(const Real& r) {
    long n = static_cast<long>(std::floor(r.convert_to<double>()));
    while (Real(n + 1) <= r) ++n;
    while (Real(n) > r) --n;
    return n;
}

QuadRat unit_pow(const QuadRat& u, long j, long D) {
    // N(u) = 1, so u^{-1} is the conjugate
    QuadRat base = j >= 0 ? u : conjugate(u);
    long e = j >= 0 ? j : -j;
    QuadRat acc{Rat(1), Rat(0)};
    for (; e > 0; --e) acc = mul(acc, base, D);
    return acc;
}

// representatives w of the totally positive solutions of N(w) = M in O_F up
// to the totally positive unit u: first embedding in [sqrt(M), sqrt(M)*u)
std::vector<QuadRat> norm_reps(const Rat& M, long D) {
    std::vector<QuadRat> reps;
    if (M <= 0 || denominator(M) != 1) return reps;
    QuadRat u = tp_unit(D);
    QuadRat om = omega(D);
    Real Ur = sqrt(to_real(M)) * embed(u, D, false);
    Real rtD = sqrt(Real(D));

    long Tcap = floor_long_of(Ur / (2 * to_real(om.y) * rtD)) + 2;
    for (long t = -Tcap; t <= Tcap; ++t) {
        Rat x0 = Rat(t) * om.x;
        long slo = floor_long_of(-to_real(x0)) - 2;
        long shi = floor_long_of(Ur - to_real(x0)) + 2;
        for (long s = slo; s <= shi; ++s) {
            QuadRat w = from_integral_coords(Int(s), Int(t), D);
            if (!is_totally_positive(w, D)) continue;
            if (norm(w, D) != M) continue;
            // fundamental domain: M <= w^2 < M u^2 under the first embedding
            QuadRat w2 = mul(w, w, D);
            QuadRat lowr = w2 - QuadRat{M, Rat(0)};
            if (embedding_sign(lowr, D, false) < 0) continue;
            QuadRat upr = scale(mul(u, u, D), M) - w2;
            if (embedding_sign(upr, D, false) <= 0) continue;
            reps.push_back(w);
        }
    }
    return reps;
}

}  // namespace

std::vector<QuadRat> wall_vectors(const Rat& m, const Rat& slope_lo, const Rat& slope_hi,
                                  long D) {
    if (m >= 0) throw std::invalid_argument("wall_vectors: m must be negative");
    if (slope_lo <= 0) throw std::invalid_argument("wall_vectors: slope window must be positive");
    if (slope_hi < slope_lo) return {};
    Rat M = -Rat(D) * m;  // norm of w = nu sqrt(D)
    std::vector<QuadRat> out;
    if (denominator(M) != 1) return out;

    QuadRat u = tp_unit(D);
    Real lnu = log(embed(u, D, false));
    for (const QuadRat& w : norm_reps(M, D)) {
        // slope of u^j w is (w'/w) u^{-2j}; bring it into the window
        Real r0 = embed(w, D, true) / embed(w, D, false);
        long jlo = floor_long_of(log(r0 / to_real(slope_hi)) / (2 * lnu)) - 2;
        long jhi = floor_long_of(log(r0 / to_real(slope_lo)) / (2 * lnu)) + 2;
        for (long j = jlo; j <= jhi; ++j) {
            QuadRat wj = mul(unit_pow(u, j, D), w, D);
            QuadRat nu{wj.y, wj.x / D};  // w_j / sqrt(D)
            if (slope_cmp_rat(nu, slope_lo, D) > 0) continue;  // slope < lo
            if (slope_cmp_rat(nu, slope_hi, D) < 0) continue;  // slope > hi
            out.push_back(nu);
        }
    }
    std::sort(out.begin(), out.end(),
              [D](const QuadRat& a, const QuadRat& b) { return slope_cmp(a, b, D) < 0; });
    return out;
}

WeylChamber chamber_of(const Rat& y1, const Rat& y2, const Rat& m, long D) {
    if (y1 <= 0 || y2 <= 0) throw std::invalid_argument("chamber_of: base must be positive");
    if (m >= 0) throw std::invalid_argument("chamber_of: m must be negative");
    WeylChamber W;
    W.D = D;
    W.m = m;
    W.base_y1 = y1;
    W.base_y2 = y2;
    Rat sigma = y1 / y2;
    W.slope_lo = sigma / 8;
    W.slope_hi = sigma * 8;
    W.walls = wall_vectors(m, W.slope_lo, W.slope_hi, D);
    for (const QuadRat& nu : W.walls) {
        int s = embedding_sign(trace_form(nu, y1, y2), D, false);
        if (s == 0) throw on_wall_error("base point lies on a wall of T_m");
        W.signs.push_back(s);
    }
    return W;
}

bool positivity(const QuadRat& nu, const WeylChamber& W) {
    long D = W.D;
    if (nu.is_zero()) throw std::invalid_argument("positivity: nu = 0");
    if (!membership(nu, D, Module::inverse_different))
        throw std::invalid_argument("positivity: nu must lie in the inverse different");

    int s1 = embedding_sign(nu, D, false), s2 = embedding_sign(nu, D, true);
    if (s1 > 0 && s2 > 0) return true;
    if (s1 < 0 && s2 < 0) return false;

    int s0 = embedding_sign(trace_form(nu, W.base_y1, W.base_y2), D, false);
    if (s0 == 0) throw wall_sign_error("base point lies on the line of nu");

    // mixed signs: the line of nu meets the quadrant. Constancy on the chamber
    // holds iff the line is one of the N = m walls or an m-wall separates it
    // from the base point.
    QuadRat mu = s1 > 0 ? nu : -nu;

    // parallel to a wall <=> mu = q * lambda with N(lambda) = m, q rational
    Rat ratio = norm(mu, D) / W.m;
    if (ratio > 0) {
        Int rn = numerator(ratio), rd = denominator(ratio);
        Int sn = sqrt(rn), sd = sqrt(rd);
        if (sn * sn == rn && sd * sd == rd) {
            QuadRat lambda = scale(mu, Rat(sd, sn));
            if (membership(lambda, D, Module::inverse_different) &&
                norm(lambda, D) == W.m)
                return s0 > 0;
        }
    }

    // search for a separating wall between sigma_base and slope(mu)
    Rat sigma = W.base_y1 / W.base_y2;
    Real smu = embed(mu, D, true) / embed(mu, D, false);
    smu = -smu;  // slope(mu) = -mu'/mu > 0
    double lo = std::min(smu.convert_to<double>(), to_real(sigma).convert_to<double>());
    double hi = std::max(smu.convert_to<double>(), to_real(sigma).convert_to<double>());
    Rat wlo(std::max(1e-12, lo / 4));
    Rat whi(hi * 4);
    int side_mu = slope_cmp_rat(mu, sigma, D);  // >0: slope(mu) < sigma
    for (const QuadRat& lam : wall_vectors(W.m, wlo, whi, D)) {
        int vs_base = slope_cmp_rat(lam, sigma, D);  // >0: slope(lam) < sigma
        if (vs_base == 0) continue;                  // cannot happen off-wall
        if ((side_mu > 0) != (vs_base > 0)) continue;  // not on mu's side
        int vs_mu = slope_cmp(lam, mu, D);  // <0: slope(lam) < slope(mu)
        bool between = side_mu > 0 ? (vs_mu > 0) : (vs_mu < 0);
        if (between) return s0 > 0;
    }
    throw wall_sign_error("sign of tr(nu y) is not constant on the chamber");
}

bool on_divisor(const PointH2& Z, const Rat& m, const Rat& height_bound, const Real& tol,
                long D) {
    for (const LatticeVector& X : enumerate_vectors_all(m, height_bound, D))
        if (abs_c(q_Z(Z, X, D)) < tol) return true;
    return false;
}

bool same_signature(const WeylChamber& A, const WeylChamber& B) {
    if (A.D != B.D || A.m != B.m) return false;
    if (A.walls.size() != B.walls.size()) return false;
    for (size_t i = 0; i < A.walls.size(); ++i)
        if (!(A.walls[i] == B.walls[i]) || A.signs[i] != B.signs[i]) return false;
    return true;
}

std::string chamber_id(const WeylChamber& W) {
    return "base=(" + W.base_y1.str() + "," + W.base_y2.str() + ")";
}

nlohmann::json chamber_to_json(const WeylChamber& W) {
    nlohmann::json j;
    j["m"] = W.m.str();
    j["base"] = {W.base_y1.str(), W.base_y2.str()};
    j["walls"] = nlohmann::json::array();
    for (const QuadRat& nu : W.walls) j["walls"].push_back(format_quadrat(nu, W.D));
    j["signs"] = W.signs;
    return j;
}

}  // namespace hz
