#include "hz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace hz {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

double rat_d(const Rat& r) { return r.convert_to<double>(); }

struct EmbeddedVec {
    double a, b, e1, e2;  // embeddings of nu
    double h;             // enumeration height max(|a|,|b|,|e1|,|e2|)
};

std::vector<EmbeddedVec> embed_vectors(const std::vector<LatticeVector>& xs, long D) {
    const double sq = std::sqrt(double(D));
    std::vector<EmbeddedVec> out;
    out.reserve(xs.size());
    for (const auto& X : xs) {
        EmbeddedVec v;
        v.a = X.a.convert_to<double>();
        v.b = X.b.convert_to<double>();
        const double x = rat_d(X.nu.x), y = rat_d(X.nu.y);
        v.e1 = x + y * sq;
        v.e2 = x - y * sq;
        v.h = std::max(std::max(std::fabs(v.a), std::fabs(v.b)),
                       std::max(std::fabs(v.e1), std::fabs(v.e2)));
        out.push_back(v);
    }
    return out;
}

double prefactor(long k) {
    double f = 1.0;  // (k-1)!
    for (long j = 2; j < k; ++j) f *= double(j);
    return f / (2.0 * std::pow(two_pi, double(k)));
}

// q^{-k} for small k, split into re/im
inline void inv_qk(double qr, double qi, long k, double& outr, double& outi) {
    double pr = qr, pi = qi;
    for (long j = 1; j < k; ++j) {
        const double nr = pr * qr - pi * qi;
        pi = pr * qi + pi * qr;
        pr = nr;
    }
    const double n2 = pr * pr + pi * pi;
    outr = pr / n2;
    outi = -pi / n2;
}

std::vector<LatticeVector> pick_vectors(long D, const Rat& m, const Rat& R,
                                        const DiscriminantGroup* G, long beta) {
    if (beta < 0) return enumerate_vectors_all(m, R, D);
    if (!G) throw oracle_error("coset restriction needs the discriminant group");
    return enumerate_vectors(*G, G->element_at(beta), m, R, D);
}

// two-shell geometric extrapolation; shared by the point and grid evaluators.
// Shells scale with R: unit-width shells hold too few vectors for the ratio
// to mean anything once R is past a few dozen.
double shell_width(double Rd) { return std::max(2.0, Rd / 8.0); }

double shell_tail(double s1, double s2, bool strict) {
    if (s1 <= 0.0 || s2 <= 0.0) {
        if (strict)
            throw oracle_error("R too small: outer shells are empty, nothing to extrapolate");
        return s2;
    }
    double rho = s2 / s1;
    if (rho >= 0.97) {
        if (strict) throw oracle_error("R too small: outer shells show no decay");
        rho = 0.97;
    }
    return s2 * rho / (1.0 - rho);
}

}  // namespace

TorusGrid make_grid(long D, const Rat& y1, const Rat& y2, long N, const Rat& R) {
    if (!valid_discriminant(D)) throw oracle_error("bad discriminant");
    if (y1 <= 0 || y2 <= 0) throw oracle_error("grid height must be positive");
    if (N < 2 || (N & (N - 1)) != 0) throw oracle_error("N must be a power of two");
    if (R <= 1) throw oracle_error("enumeration radius too small");
    return TorusGrid{D, y1, y2, N, R};
}

OmegaValue eval_omega(std::complex<double> z1, std::complex<double> z2, long D,
                      const Rat& m, long k, const Rat& R, const DiscriminantGroup* G,
                      long beta) {
    if (k < 1) throw oracle_error("k must be positive");
    // cosets with Q(beta) != m mod 1 carry no vectors at any height: the
    // restricted form is identically zero, not under-truncated
    if (beta >= 0 && G) {
        Rat frac = m - G->Q(G->element_at(beta));
        if (denominator(frac) != 1) return OmegaValue{{0.0, 0.0}, 0.0};
    }
    const auto vecs = embed_vectors(pick_vectors(D, m, R, G, beta), D);
    const double Rd = rat_d(R);
    const double pref = prefactor(k);
    const double pole_scale = 1e-9 * (1.0 + std::abs(z1) * std::abs(z2));

    double sr = 0, si = 0, cr = 0, ci = 0;  // Kahan pairs
    double s1 = 0, s2 = 0;                  // outer-shell |term| sums
    const double w = shell_width(Rd);
    for (const auto& v : vecs) {
        const std::complex<double> q =
            -v.b * (z1 * z2) + v.e1 * z1 + v.e2 * z2 - v.a;
        if (std::abs(q) < pole_scale)
            throw oracle_error("pole proximity: |q_Z| ~ 0 for a norm-m vector");
        double tr, ti;
        inv_qk(q.real(), q.imag(), k, tr, ti);
        // Kahan
        double yr = tr - cr, t0 = sr + yr;
        cr = (t0 - sr) - yr;
        sr = t0;
        double yi = ti - ci, t1 = si + yi;
        ci = (t1 - si) - yi;
        si = t1;
        if (v.h > Rd - 2.0 * w) {
            const double a = std::hypot(tr, ti);
            if (v.h > Rd - w)
                s2 += a;
            else
                s1 += a;
        }
    }
    OmegaValue out;
    out.value = pref * std::complex<double>(sr, si);
    out.tail = pref * shell_tail(s1, s2, true);
    return out;
}

GridSamples sample_torus(const TorusGrid& grid, const Rat& m, long k,
                         const DiscriminantGroup* G, long beta) {
    const long D = grid.D, N = grid.N;
    if (grid.y1 * grid.y2 <= Rat(D) * abs(m))
        throw oracle_error("strip too low: need y1*y2 > D|m| to clear the pole region");

    if (beta >= 0 && G) {
        Rat frac = m - G->Q(G->element_at(beta));
        if (denominator(frac) != 1) {
            GridSamples S;
            S.grid = grid;
            S.m = m;
            S.k = k;
            S.beta = beta;
            S.W.assign(N * N, {0.0, 0.0});
            S.tail.assign(N * N, 0.0);
            return S;
        }
    }
    const auto vecs = embed_vectors(pick_vectors(D, m, grid.R, G, beta), D);
    const double Rd = rat_d(grid.R);
    const double pref = prefactor(k);
    const double sq = std::sqrt(double(D));
    const double y1 = rat_d(grid.y1), y2 = rat_d(grid.y2);
    const double wl1 = (double(D) + sq) / 2.0, wl2 = (double(D) - sq) / 2.0;

    const long P = N * N;
    std::vector<double> Z1r(P), Z1i(P), Z2r(P), Z2i(P), Pr(P), Pi(P);
    for (long j2 = 0; j2 < N; ++j2)
        for (long j1 = 0; j1 < N; ++j1) {
            const long p = j2 * N + j1;
            const double u = double(j1) / double(N), v = double(j2) / double(N);
            Z1r[p] = u + v * wl1;
            Z1i[p] = y1;
            Z2r[p] = u + v * wl2;
            Z2i[p] = y2;
            Pr[p] = Z1r[p] * Z2r[p] - y1 * y2;
            Pi[p] = Z1r[p] * y2 + Z2r[p] * y1;
        }

    std::vector<double> wr(P, 0), wi(P, 0), kr(P, 0), ki(P, 0), sh1(P, 0), sh2(P, 0);
    const double pole_scale = 1e-9 * (1.0 + (1.0 + wl1) * (1.0 + wl1) + y1 * y2);

    const double w = shell_width(Rd);
    for (const auto& v : vecs) {
        const bool outer = v.h > Rd - 2.0 * w;
        const bool outermost = v.h > Rd - w;
        for (long p = 0; p < P; ++p) {
            const double qr = -v.b * Pr[p] + v.e1 * Z1r[p] + v.e2 * Z2r[p] - v.a;
            const double qi = -v.b * Pi[p] + v.e1 * Z1i[p] + v.e2 * Z2i[p];
            if (qr * qr + qi * qi < pole_scale * pole_scale)
                throw oracle_error("pole proximity on the sampling torus");
            double tr, ti;
            inv_qk(qr, qi, k, tr, ti);
            double y = tr - kr[p], t0 = wr[p] + y;
            kr[p] = (t0 - wr[p]) - y;
            wr[p] = t0;
            y = ti - ki[p];
            t0 = wi[p] + y;
            ki[p] = (t0 - wi[p]) - y;
            wi[p] = t0;
            if (outer) {
                const double a = std::hypot(tr, ti);
                if (outermost)
                    sh2[p] += a;
                else
                    sh1[p] += a;
            }
        }
    }

    GridSamples S;
    S.grid = grid;
    S.m = m;
    S.k = k;
    S.beta = beta;
    S.vector_count = long(vecs.size());
    S.W.resize(P);
    S.tail.resize(P);
    bool any_outer = false;
    for (long p = 0; p < P; ++p) {
        S.W[p] = pref * std::complex<double>(wr[p], wi[p]);
        if (sh1[p] > 0 || sh2[p] > 0) any_outer = true;
        S.tail[p] = pref * shell_tail(sh1[p], sh2[p], false);
    }
    if (!any_outer)
        throw oracle_error("R too small: outer shells are empty, nothing to extrapolate");
    return S;
}

NumericCoefficient fourier_coefficient_numeric(const QuadRat& nu, const GridSamples& S) {
    const long D = S.grid.D, N = S.grid.N;
    if (!membership(nu, D, Module::inverse_different))
        throw oracle_error("nu is not in the inverse different");

    const Rat t1 = trace(nu);
    const Rat t2 = trace(mul(nu, QuadRat(Rat(D) / 2, Rat(1) / 2), D));
    if (denominator(t1) != 1 || denominator(t2) != 1)
        throw oracle_error("non-integral dual frequency");
    const long n1 = t1.convert_to<long>(), n2 = t2.convert_to<long>();
    if (2 * std::labs(n1) >= N || 2 * std::labs(n2) >= N)
        throw oracle_error("aliasing: dual index exceeds N/2, refine the grid");

    // twiddle tables for e(-(n1 j1 + n2 j2)/N)
    std::vector<double> c1(N), s1v(N), c2(N), s2v(N);
    for (long j = 0; j < N; ++j) {
        const double a1 = -two_pi * double(((n1 % N) * j) % N) / double(N);
        const double a2 = -two_pi * double(((n2 % N) * j) % N) / double(N);
        c1[j] = std::cos(a1);
        s1v[j] = std::sin(a1);
        c2[j] = std::cos(a2);
        s2v[j] = std::sin(a2);
    }

    const double sq = std::sqrt(double(D));
    const double e1 = rat_d(nu.x) + rat_d(nu.y) * sq;
    const double e2 = rat_d(nu.x) - rat_d(nu.y) * sq;
    const double strip =
        std::exp(two_pi * (e1 * rat_d(S.grid.y1) + e2 * rat_d(S.grid.y2)));

    double accr = 0, acci = 0, tails = 0;
    for (long j2 = 0; j2 < N; ++j2)
        for (long j1 = 0; j1 < N; ++j1) {
            const long p = j2 * N + j1;
            const double tc = c1[j1] * c2[j2] - s1v[j1] * s2v[j2];
            const double ts = c1[j1] * s2v[j2] + s1v[j1] * c2[j2];
            accr += S.W[p].real() * tc - S.W[p].imag() * ts;
            acci += S.W[p].real() * ts + S.W[p].imag() * tc;
            tails += S.tail[p];
        }
    const double inv = 1.0 / double(N * N);

    NumericCoefficient out;
    out.nu = nu;
    out.D = D;
    out.n1 = n1;
    out.n2 = n2;
    out.value = strip * inv * std::complex<double>(accr, acci);
    out.imag_leak = std::fabs(out.value.imag());
    out.error = strip * inv * tails + out.imag_leak;
    return out;
}

void samples_csv(std::ostream& os, const GridSamples& S) {
    const long N = S.grid.N;
    os << "j1,j2,x1,x2,re,im,tail\n";
    const double sq = std::sqrt(double(S.grid.D));
    const double wl1 = (double(S.grid.D) + sq) / 2.0, wl2 = (double(S.grid.D) - sq) / 2.0;
    char line[256];
    for (long j2 = 0; j2 < N; ++j2)
        for (long j1 = 0; j1 < N; ++j1) {
            const long p = j2 * N + j1;
            const double u = double(j1) / double(N), v = double(j2) / double(N);
            std::snprintf(line, sizeof line, "%ld,%ld,%.17g,%.17g,%.17g,%.17g,%.3g\n", j1,
                          j2, u + v * wl1, u + v * wl2, S.W[p].real(), S.W[p].imag(),
                          S.tail[p]);
            os << line;
        }
}

void coefficients_csv(std::ostream& os, const std::vector<NumericCoefficient>& cs) {
    os << "nu,n1,n2,re,im,error\n";
    char line[256];
    for (const auto& c : cs) {
        std::snprintf(line, sizeof line, "%ld,%ld,%.17g,%.17g,%.3g\n", c.n1, c.n2,
                      c.value.real(), c.value.imag(), c.error);
        os << '"' << format_quadrat(c.nu, c.D) << "\"," << line;
    }
}

nlohmann::json numeric_coefficient_to_json(const NumericCoefficient& c) {
    return nlohmann::json{{"nu", format_quadrat(c.nu, c.D)},
                          {"n1", c.n1},
                          {"n2", c.n2},
                          {"re", c.value.real()},
                          {"im", c.value.imag()},
                          {"error", c.error}};
}

}  // namespace hz
