#include "hz/coeffs.hpp"

#include "hz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

namespace hz {

namespace {

constexpr double two_pi_d = 6.283185307179586476925286766559;

long lmod(long long v, long q) {
    long r = long(v % q);
    return r < 0 ? r + q : r;
}

long lmod_int(const Int& v, long q) {
    Int r = v % q;
    long rl = r.convert_to<long>();
    return rl < 0 ? rl + q : rl;
}

struct FieldConsts {
    long tw;    // tr(omega)
    long nw;    // N(omega)
    long trw2;  // tr(omega^2)
};

FieldConsts field_consts(long D) {
    if ((D - 1) % 4 == 0) return {1, (1 - D) / 4, (D + 1) / 2};
    return {0, -D / 4, D / 2};
}

std::vector<std::pair<long, long>> prime_powers(long Q) {
    std::vector<std::pair<long, long>> out;
    long n = Q;
    for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        long q = 1;
        while (n % p == 0) {
            n /= p;
            q *= p;
        }
        out.push_back({p, q});
    }
    if (n > 1) out.push_back({n, n});
    return out;
}

// phase exponent r = A*x + B*y mod Q where A = 2s + t*tr(omega),
// B = s*tr(omega) + t*tr(omega^2); (s, t) integral coords of nu*sqrt(D)
struct PhaseCoeffs {
    Int A, B;
    long c0;  // D*m as an integer
};

PhaseCoeffs phase_coeffs(const Rat& m, const QuadRat& nu, long D) {
    if (!membership(nu, D, Module::inverse_different))
        throw std::invalid_argument("nu must lie in the inverse different");
    const Rat dm = Rat(D) * m;
    if (denominator(dm) != 1)
        throw std::invalid_argument("denominator of m must divide D");
    const auto fc = field_consts(D);
    const auto [s, t] = integral_coords(mul(nu, QuadRat(Rat(0), Rat(1)), D), D);
    PhaseCoeffs pc;
    pc.A = 2 * s + t * fc.tw;
    pc.B = s * fc.tw + t * fc.trw2;
    pc.c0 = numerator(dm).convert_to<long>();
    return pc;
}

}  // namespace

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::totally_positive: return "totally_positive";
        case Branch::divisor_sum: return "divisor_sum";
        default: return "zero_support";
    }
}

std::pair<Real, Real> bessel_I(long order, const Real& x, const Real& tol) {
    if (order < 0) throw std::invalid_argument("bessel_I: order must be >= 0");
    if (x < 0) throw std::invalid_argument("bessel_I: x must be >= 0");
    if (x == 0) return {Real(order == 0 ? 1 : 0), Real(0)};

    const Real h = x / 2;
    const Real h2 = h * h;
    Real term = 1;
    for (long j = 1; j <= order; ++j) term *= h / j;  // (x/2)^n / n!
    Real sum = term;
    for (long j = 1;; ++j) {
        term *= h2 / (Real(j) * Real(order + j));
        sum += term;
        // ratios shrink monotonically, so the tail past term_j is dominated
        // by the geometric series with the next ratio
        const Real rho = h2 / (Real(j + 1) * Real(order + j + 1));
        if (rho < 1) {
            Real rem = term * rho / (1 - rho);
            if (rem < 0) rem = -rem;
            // MPFR roundoff slack: the series is positive-term, so a few ulps
            // of the partial sum cover it
            rem += abs(sum) * ldexp(Real(1), 8 - int(current_precision_bits()));
            if (rem <= tol) return {sum, rem};
        }
        if (j > 200000) throw certification_error("bessel_I: series failed to certify");
    }
}

double g_alpha_brute(long alpha, const Rat& m, const QuadRat& nu, long D) {
    const auto pc = phase_coeffs(m, nu, D);
    const auto fc = field_consts(D);
    const long Q = D * alpha;
    const long X = (D % 2) ? alpha : (D / 2) * alpha;  // transversal sizes
    const long Y = (D % 2) ? D * alpha : 2 * alpha;
    const long Aq = lmod_int(pc.A, Q), Bq = lmod_int(pc.B, Q);
    const long nwq = lmod(fc.nw, Q), c0q = lmod(pc.c0, Q);

    std::vector<long long> counts(Q, 0);
    for (long x = 0; x < X; ++x)
        for (long y = 0; y < Y; ++y) {
            const long long n =
                (long long)x * x % Q + (long long)x * y % Q * fc.tw +
                (long long)y * y % Q * nwq + c0q;
            if (n % Q) continue;
            counts[lmod((long long)Aq * x + (long long)Bq * y, Q)]++;
        }
    double g = 0;
    for (long r = 0; r < Q; ++r)
        if (counts[r]) g += double(counts[r]) * std::cos(two_pi_d * double(r) / double(Q));
    return g;
}

// prime-power split: the solution set of N(w) + Dm = 0 mod Q over (x, y) mod Q
// factors across prime powers, and the phase exponent is linear in (x, y), so
// per-prime-power residue counts multiply. The full (x, y) mod Q square counts
// every class of d^{-1}/alpha exactly D times.
double g_alpha(long alpha, const Rat& m, const QuadRat& nu, long D) {
    if (alpha < 1) throw std::invalid_argument("alpha must be >= 1");
    const auto pc = phase_coeffs(m, nu, D);
    const auto fc = field_consts(D);
    const long Q = D * alpha;

    std::vector<long> mods;
    std::vector<std::vector<long long>> counts;
    for (const auto& [p, q] : prime_powers(Q)) {
        std::vector<long long> cnt(q, 0);
        const long Aq = lmod_int(pc.A, q), Bq = lmod_int(pc.B, q);
        const long c0q = lmod(pc.c0, q);
        if (p != 2) {
            // z = 2x + y tr(omega): z^2 = D y^2 - 4 D m mod q, bucketed roots
            std::vector<long> head((size_t)q, -1), nxt((size_t)q);
            for (long z = 0; z < q; ++z) {
                const long r = long((long long)z * z % q);
                nxt[z] = head[r];
                head[r] = z;
            }
            const long inv2 = (q + 1) / 2;
            const long Dq = D % q, c4 = lmod(4LL * c0q, q);
            for (long y = 0; y < q; ++y) {
                const long rhs = lmod((long long)Dq * y % q * y - c4, q);
                for (long z = head[rhs]; z >= 0; z = nxt[z]) {
                    const long x = long((long long)lmod(z - (long long)y * fc.tw, q) * inv2 % q);
                    cnt[lmod((long long)Aq * x + (long long)Bq * y, q)]++;
                }
            }
        } else {
            const long nwq = lmod(fc.nw, q), tw = fc.tw;
            for (long x = 0; x < q; ++x)
                for (long y = 0; y < q; ++y) {
                    const long long n = (long long)x * x + (long long)x * y * tw +
                                        (long long)y * y % q * nwq + c0q;
                    if (n % q == 0) cnt[lmod((long long)Aq * x + (long long)Bq * y, q)]++;
                }
        }
        mods.push_back(q);
        counts.push_back(std::move(cnt));
    }

    const size_t J = mods.size();
    std::vector<long> rj(J, 0);
    double g = 0;
    for (long r = 0; r < Q; ++r) {
        long long prod = 1;
        for (size_t j = 0; j < J && prod; ++j) prod *= counts[j][rj[j]];
        if (prod) g += double(prod) * std::cos(two_pi_d * double(r) / double(Q));
        for (size_t j = 0; j < J; ++j)
            if (++rj[j] == mods[j]) rj[j] = 0;
    }
    return g / double(D);
}

namespace {

Real real_factorial(long n) {
    Real f = 1;
    for (long j = 2; j <= n; ++j) f *= j;
    return f;
}

void check_common(const QuadRat& nu, const Rat& m, long k, const WeylChamber& W) {
    if (nu.is_zero()) throw std::invalid_argument("nu must be nonzero");
    if (!membership(nu, W.D, Module::inverse_different))
        throw std::invalid_argument("nu must lie in the inverse different");
    if (m >= 0) throw std::invalid_argument("m must be negative");
    if (denominator(Rat(W.D) * m) != 1)
        throw std::invalid_argument("denominator of m must divide D");
    if (k < 4 || k % 2) throw std::invalid_argument("k must be even and >= 4");
    if (W.m != m) throw std::invalid_argument("chamber was cut for a different m");
}

}  // namespace

CoefficientResult coeff_totally_positive(const QuadRat& nu, const Rat& m, long k,
                                         const WeylChamber& W, long alpha_cap,
                                         double target_error) {
    check_common(nu, m, k, W);
    const long D = W.D;
    if (!is_totally_positive(nu, D))
        throw std::invalid_argument("Bessel branch requires totally positive nu");
    if (alpha_cap < 8) throw std::invalid_argument("alpha cap too small");

    const Real pi = real_pi();
    const Real am = to_real(-m);
    const Real Nr = to_real(norm(nu, D));
    const Real x = 4 * pi * sqrt(am * Nr);
    const Real pref = (2 * pi / sqrt(Real(D))) * pow(Nr / am, Real(k - 1) / 2);
    const Real kfact = real_factorial(k - 1);

    // sum_{alpha > A} alpha^{3/2-k} <= A^{5/2-k}/(k-5/2), paired with the
    // envelope |G_alpha| <= C alpha^{3/2} and I_n(u) <= (u/2)^n e^{u^2/4}/n!
    const auto tail_at = [&](long A) -> Real {
        const Real Ar(A);
        return pref * g_alpha_growth_c * pow(x / 2, k - 1) * exp(x * x / (4 * Ar * Ar)) *
               pow(Ar, Real(5) / 2 - k) / ((Real(k) - Real(5) / 2) * kfact);
    };

    if (target_error <= 0.03) throw std::invalid_argument("target error too small");
    // reserve a fixed slice for Bessel tolerances and G_alpha roundoff
    const Real budget = Real(target_error) - Real(1) / 50;
    long A = 8;
    while (A < alpha_cap && tail_at(A) > budget) A = std::min(alpha_cap, A + A / 2 + 1);
    const Real tb = tail_at(A);
    if (tb > budget)
        throw certification_error(
            "cannot certify the series tail below " + std::to_string(target_error) +
            " within alpha <= " + std::to_string(alpha_cap) + " (bound " + tb.str(6) + ")");

    // per-term Bessel tolerance so the summed Bessel slack stays well under target
    const Real tol_b =
        Real(target_error) / (100 * g_alpha_growth_c * pow(Real(A), Real(3) / 2) + 100);

    Real sum = 0, numeric = 0;
    const double env_c = g_alpha_growth_c;
    for (long alpha = 1; alpha <= A; ++alpha) {
        const double g = g_alpha(alpha, m, nu, D);
        if (std::fabs(g) > env_c * std::pow(double(alpha), 1.5))
            throw certification_error("growth envelope violated at alpha=" +
                                      std::to_string(alpha) + ", tail bound is void");
        const auto [I, dI] = bessel_I(k - 1, x / alpha, tol_b);
        sum += Real(g) / alpha * I;
        // 1e-12*alpha dominates the double roundoff of g_alpha by ~3 orders
        numeric += abs(Real(g)) / alpha * dI + Real(1e-12) * (I + dI);
    }

    CoefficientResult res;
    res.nu = nu;
    res.branch = Branch::totally_positive;
    res.D = D;
    res.k = k;
    res.m = m;
    res.chamber_id = chamber_id(W);
    res.value = pref * sum;
    res.tail_alpha = A;
    res.tail_bound = tb;
    res.error = tb + pref * numeric +
                abs(res.value) * ldexp(Real(1), 8 - int(current_precision_bits()));
    res.is_integer = res.error < Real(1) / 2;
    if (res.is_integer) {
        const Real r = round(res.value);
        res.rounded = r.convert_to<Int>();
    }
    return res;
}

CoefficientResult coeff_divisor_branch(const QuadRat& nu, const Rat& m, long k,
                                       const WeylChamber& W, DivisorNormalization dn) {
    check_common(nu, m, k, W);
    const long D = W.D;
    if (is_totally_positive(nu, D))
        throw std::invalid_argument("totally positive nu belongs to the Bessel branch");

    const auto [nu0, ell] = primitive_part(nu, D);
    (void)nu0;
    const Rat targetN = (dn == DivisorNormalization::norm_m) ? m : Rat(D) * m;

    std::vector<Int> divs;
    for (Int i = 1; i * i <= ell; ++i)
        if (ell % i == 0) {
            divs.push_back(i);
            if (i * i != ell) divs.push_back(ell / i);
        }
    std::sort(divs.begin(), divs.end());

    Int total = 0;
    bool any = false;
    for (const Int& r : divs) {
        const QuadRat mu = scale(nu, Rat(1) / Rat(r));
        if (norm(mu, D) != targetN) continue;
        if (!positivity(mu, W)) continue;
        any = true;
        Int rp = 1;
        for (long j = 1; j < k; ++j) rp *= r;
        total += rp;
    }
    const int sign = (k / 2) % 2 ? -1 : 1;

    CoefficientResult res;
    res.nu = nu;
    res.branch = any ? Branch::divisor_sum : Branch::zero_support;
    res.D = D;
    res.k = k;
    res.m = m;
    res.chamber_id = chamber_id(W);
    res.exact = true;
    res.exact_value = Rat(sign * total);
    res.value = to_real(res.exact_value);
    res.error = 0;
    res.tail_bound = 0;
    res.is_integer = true;
    res.rounded = sign * total;
    return res;
}

CoefficientResult omega_coefficient(const QuadRat& nu, const Rat& m, long k,
                                    const WeylChamber& W, long alpha_cap,
                                    DivisorNormalization dn, double target_error) {
    if (is_totally_positive(nu, W.D))
        return coeff_totally_positive(nu, m, k, W, alpha_cap, target_error);
    return coeff_divisor_branch(nu, m, k, W, dn);
}

CoefficientResult combination_coefficients(const std::vector<PrincipalTerm>& terms,
                                           const QuadRat& nu, long k,
                                           const WeylChamber& W,
                                           const DiscriminantGroup& G,
                                           const CombinationOptions& opt) {
    const long D = W.D;
    std::map<Rat, std::vector<std::pair<long, Rat>>> by_n;
    for (const auto& t : terms) {
        if (t.n >= 0) throw std::invalid_argument("principal part terms need n < 0");
        if (t.beta < 0 || t.beta >= G.element_count())
            throw std::invalid_argument("coset index out of range");
        by_n[t.n].push_back({t.beta, t.c});
    }

    CoefficientResult res;
    res.nu = nu;
    res.branch = is_totally_positive(nu, D) ? Branch::totally_positive
                                            : Branch::divisor_sum;
    res.D = D;
    res.k = k;
    res.m = 0;
    res.chamber_id = chamber_id(W);
    res.exact = true;
    res.value = 0;
    res.error = 0;
    res.tail_bound = 0;

    for (const auto& [n, group] : by_n) {
        // the full norm class {beta : Q(beta) = n mod 1}
        Rat frac = n - Rat(numerator(n) / denominator(n));
        if (frac < 0) frac += 1;
        std::vector<long> cls;
        for (long i = 0; i < G.element_count(); ++i)
            if (G.Q(G.element_at(i)) == frac) cls.push_back(i);

        std::vector<long> got;
        for (const auto& [b, c] : group) got.push_back(b);
        std::sort(got.begin(), got.end());
        const bool full_class = got == cls &&
                                std::all_of(group.begin(), group.end(),
                                            [&](const auto& p) { return p.second == group[0].second; });

        if (full_class && !cls.empty()) {
            const WeylChamber Wn = chamber_of(W.base_y1, W.base_y2, n, D);
            const auto r =
                omega_coefficient(nu, n, k, Wn, opt.alpha_cap, opt.dn, opt.target_error);
            const Rat c = group[0].second;
            res.value += to_real(c) * r.value;
            res.error += abs(to_real(c)) * r.error;
            res.tail_alpha = std::max(res.tail_alpha, r.tail_alpha);
            if (r.exact)
                res.exact_value += c * r.exact_value;
            else
                res.exact = false;
        } else {
            // stray cosets: torus oracle, heuristic error, never exact
            for (const auto& [b, c] : group) {
                const double scale_sq =
                    (4.0 * double(D) * std::fabs(n.convert_to<double>())) /
                    (W.base_y1 * W.base_y2).convert_to<double>();
                const double lam = std::sqrt(std::max(scale_sq, 1.2));
                Rat ry1 = Rat(llround(lam * W.base_y1.convert_to<double>() * 1024), 1024);
                Rat ry2 = Rat(llround(lam * W.base_y2.convert_to<double>() * 1024), 1024);
                while (ry1 * ry2 <= Rat(D) * abs(n)) {
                    ry1 *= 2;
                    ry2 *= 2;
                }
                const auto grid = make_grid(D, ry1, ry2, opt.oracle_N, opt.oracle_R);
                const auto S = sample_torus(grid, n, k, &G, b);
                const auto f = fourier_coefficient_numeric(nu, S);
                res.value += to_real(c) * f.value.real();
                res.error += abs(to_real(c)) * f.error;
                res.exact = false;
            }
        }
    }
    res.is_integer = !res.exact && res.error < Real(1) / 2;
    if (res.exact) {
        res.is_integer = denominator(res.exact_value) == 1;
        if (res.is_integer) res.rounded = numerator(res.exact_value);
    } else if (res.is_integer) {
        res.rounded = round(res.value).convert_to<Int>();
    }
    return res;
}

nlohmann::json coefficient_to_json(const CoefficientResult& r) {
    nlohmann::json j;
    j["nu"] = format_quadrat(r.nu, r.D);
    j["branch"] = branch_name(r.branch);
    if (r.exact)
        j["value"] = r.exact_value.str();
    else
        j["value"] = r.value.str(24);
    j["tail_alpha"] = r.tail_alpha;
    j["error"] = r.exact ? "0" : r.error.str(6);
    return j;
}

}  // namespace hz
