// Acceptance gate. Runs each numbered criterion, prints its evidence and one
// final verdict line per criterion. Exit 0 only if every selected criterion
// passes.
//
//   acceptance                  run all six
//   acceptance --criterion N    run a single one (N in 1..6)

#include "hz/cli.hpp"
#include "hz/coeffs.hpp"
#include "hz/divisibility.hpp"
#include "hz/lattice.hpp"
#include "hz/lift.hpp"
#include "hz/qexp.hpp"
#include "hz/weilrep.hpp"
#include "hz/weyl.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace hz;

namespace {

struct CliResult {
    int code = -1;
    std::string out, err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    std::istringstream in;
    CliResult r;
    r.code = run_cli(std::move(args), out, err, in);
    r.out = out.str();
    r.err = err.str();
    return r;
}

QuadRat nu_st(long s, long t, long D = 5) {
    // nu = (s + t*omega)/sqrt(D)
    const QuadRat w = from_integral_coords(Int(s), Int(t), D);
    return QuadRat(w.y, w.x / Rat(D));
}

long lambda_of(const QuadRat& nu, const DiscriminantGroup& G, long D = 5) {
    return G.index_of(coset_of(LatticeVector{Int(0), Int(0), nu}, D, G));
}

Rat lifted_at(const LiftExpansion& L, const QuadRat& nu) {
    for (const auto& [t, c] : L.coeffs)
        if (t == nu) return c;
    throw std::runtime_error("target missing from lift output");
}

Rat rat_pow(const Rat& x, long e) {
    return Rat(pow(numerator(x), unsigned(e)), pow(denominator(x), unsigned(e)));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

// ---------------------------------------------------------------- criterion 1
// table command vs the reference table, all cells, under 5 minutes at 192 bits

static bool criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    CliResult r = run({"table", "--format", "json"});
    const double secs = seconds_since(t0);
    if (r.code == 2) {
        std::printf("  table command failed: %s\n", r.err.c_str());
        return false;
    }
    const auto j = nlohmann::json::parse(r.out);

    struct Ref {
        const char *c, *modulus, *ell, *nrm, *factored;
    };
    static const Ref ref[8] = {
        {"3050000", "1000", "2", "4", "2^4*5^5*61"},
        {"201728", "64", "4", "16/5", "2^6*3*1051"},
        {"2649037500", "3375", "3", "9", "2^2*3^3*5^5*47*167"},
        {"-18198", "27", "3", "9/5", "-2*3^3*337"},
        {"334266850", "41", "1", "41/5", "2*5^2*41^3*97"},
        {"27675839", "29791", "1", "31/5", "31^3*929"},
        {"20708696250", "166375", "1", "11", "2*3^3*5^4*11^3*461"},
        {"31562625", "125", "5", "5", "3*5^3*17*4951"},
    };

    int matched = 0;
    std::vector<int> bad_rows;
    for (int i = 0; i < 8; ++i) {
        const auto& row = j["rows"][i];
        std::vector<std::string> diffs;
        auto cell = [&](const char* key, const char* want) {
            const std::string got = row[key].get<std::string>();
            if (got != want)
                diffs.push_back(std::string(key) + " computed " + got +
                                " vs reference " + want);
        };
        cell("c", ref[i].c);
        cell("modulus", ref[i].modulus);
        cell("ell", ref[i].ell);
        cell("norm", ref[i].nrm);
        cell("c_factored", ref[i].factored);
        if (diffs.empty()) {
            ++matched;
            std::printf("  row %d %s: all cells match (c=%s, modulus=%s)\n", i + 1,
                        row["nu"].get<std::string>().c_str(), ref[i].c,
                        ref[i].modulus);
        } else {
            bad_rows.push_back(i + 1);
            for (const std::string& d : diffs)
                std::printf("  row %d %s: MISMATCH %s\n", i + 1,
                            row["nu"].get<std::string>().c_str(), d.c_str());
        }
    }
    std::printf("  %d/8 rows reproduce the reference cells, %.1f s (budget 300 s)\n",
                matched, secs);

    // forensic notes on the known internal inconsistencies of the reference
    for (int n : bad_rows) {
        if (n == 2)
            std::printf(
                "  note row 2: the reference factored entry 2^6*3*1051 equals "
                "201792, which is the computed value; the reference decimal "
                "201728 contradicts its own factorization\n");
        if (n == 5)
            std::printf(
                "  note row 5: (D*ell*N(nu0))^(k-1) = (5*(41/5))^3 = 41^3 = "
                "68921; the computed modulus matches that and the 41^3 inside "
                "the reference factored entry 2*5^2*41^3*97, while the "
                "reference modulus cell prints 41\n");
        if (n == 8)
            std::printf(
                "  note row 8: computed 15781375 = 5^3*191*661 is confirmed by "
                "the brute-force torus oracle (reads 1.588e7 at R=480, within "
                "0.6%%); the reference prints 31562625 = 3*5^3*17*4951, "
                "self-consistent but about twice the oracle reading\n");
    }
    return matched == 8 && secs < 300.0;
}

// ---------------------------------------------------------------- criterion 2
// all eight certificates pass with delta = 1; a +1 mutation flips each one

static bool criterion_2() {
    set_precision_bits(192);
    const long D = 5, k = 4;
    const Rat m(-1, 5);
    const WeylChamber W = chamber_of(Rat(2), Rat(1), m, D);
    static const long st[8][2] = {{-2, 4}, {-4, 4}, {-3, 6}, {-3, 3},
                                  {-5, 6}, {-3, 5}, {-1, 7}, {0, 5}};

    std::vector<Rat> exact_values;
    std::vector<CoefficientResult> results;
    for (auto [s, t] : st) {
        CoefficientResult res = omega_coefficient(nu_st(s, t), m, k, W, 10000);
        if (!res.exact && !res.is_integer) {
            std::printf("  coefficient at (%ld,%ld) not pinned to an integer\n", s, t);
            return false;
        }
        if (res.exact) exact_values.push_back(res.exact_value);
        results.push_back(std::move(res));
    }

    const auto delta = denominator_search(exact_values);
    if (!delta) {
        std::printf("  no clearing denominator found\n");
        return false;
    }
    std::printf("  delta = %s (expected 1)\n", delta->str().c_str());

    bool ok = *delta == 1;
    for (const CoefficientResult& res : results) {
        const Int value = res.exact ? Int(numerator(res.exact_value * Rat(*delta)))
                                    : Int(res.rounded * *delta);
        const Certificate cert = certificate(res.nu, value, D, k);
        const Certificate flipped = certificate(res.nu, value + 1, D, k);
        std::printf("  nu=%s: c=%s, modulus=%s, %s; c+1 %s\n",
                    format_quadrat(res.nu, D).c_str(), cert.value.str().c_str(),
                    cert.modulus.str().c_str(), cert.ok ? "divisible" : "FAIL",
                    !flipped.ok ? "rejected" : "WRONGLY ACCEPTED");
        ok = ok && cert.ok && !flipped.ok;
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 3
// torus oracle vs closed forms: 2% relative on the Bessel branch, exact
// integer on the divisor branch, and the surviving normalization recorded

static bool criterion_3() {
    const auto t0 = std::chrono::steady_clock::now();
    CliResult r = run({"oracle-compare", "--format", "json"});
    const double secs = seconds_since(t0);
    if (r.code == 2) {
        std::printf("  oracle-compare failed: %s\n", r.err.c_str());
        return false;
    }
    const auto j = nlohmann::json::parse(r.out);

    bool ok = j["all_pass"].get<bool>() && r.code == 0;
    bool saw_bessel = false, saw_mixed = false;
    bool norm_m_all = true, norm_Dm_all = true;
    for (const auto& row : j["rows"]) {
        const std::string nu = row["nu"].get<std::string>();
        if (row["branch"] == "bessel") {
            const double rel = row["rel_error"].get<double>();
            std::printf("  nu=%s: closed %.10g, oracle %.10g, rel %.3g (tol 0.02)\n",
                        nu.c_str(), row["closed_form"].get<double>(),
                        row["oracle"].get<double>(), rel);
            if (nu == "2 + 0*sqrt(5)") saw_bessel = rel <= 0.02;
            ok = ok && rel <= 0.02;
        } else {
            const bool pm = row["pass_norm_m"].get<bool>();
            const bool pDm = row["pass_norm_Dm"].get<bool>();
            std::printf("  nu=%s: oracle %.6g, norm_m %s, norm_Dm %s\n", nu.c_str(),
                        row["oracle"].get<double>(), pm ? "pass" : "FAIL",
                        pDm ? "pass" : (row["closed_norm_Dm"].is_string()
                                            ? "ill-posed"
                                            : "FAIL"));
            if (nu == "1/2 + 1/2*sqrt(5)") saw_mixed = pm;
            norm_m_all = norm_m_all && pm;
            norm_Dm_all = norm_Dm_all && pDm;
            ok = ok && pm;
        }
    }
    // exactly one normalization survives the check
    std::printf("  normalization recorded: %s (norm_m %s all rows, norm_Dm %s)\n",
                j["normalization"].get<std::string>().c_str(),
                norm_m_all ? "passes" : "FAILS",
                norm_Dm_all ? "ALSO PASSES" : "fails");
    std::printf("  decisive separation: %s; runtime %.1f s (budget 900 s)\n",
                j["decisive"].get<bool>() ? "yes" : "NO", secs);
    return ok && saw_bessel && saw_mixed && norm_m_all && !norm_Dm_all &&
           j["decisive"].get<bool>() && secs < 900.0;
}

// ---------------------------------------------------------------- criterion 4
// Weil representation relation suite to 1e-12 for D in {5, 8, 13}

static bool criterion_4() {
    set_precision_bits(192);
    bool ok = true;
    for (long D : {5L, 8L, 13L}) {
        bool pass = false;
        const auto rep = weilrep_report(D, 1e-12, pass);
        double worst = 0;
        for (const auto& [name, dev] : rep["relations"].items())
            worst = std::max(worst, dev.get<double>());
        std::printf("  D=%ld: worst relation deviation %.3g (tol 1e-12) %s\n", D,
                    worst, pass ? "pass" : "FAIL");
        ok = ok && pass;
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 5
// exact-layer identities: Bol action, pairing bilinearity and principal-part
// dependence, lift linearity, divisibility transport on 100 random inputs

static bool bol_part(std::mt19937_64& rng) {
    auto G = discriminant_group(hmf_gram(5));
    std::uniform_int_distribution<long> gpick(0, G->element_count() - 1), jpick(-3, 3),
        numpick(-20, 20), denpick(1, 5), terms(1, 7);
    for (int round = 0; round < 60; ++round) {
        const long k = (round % 2) ? 6 : 4;
        VVQExpansion f = make_expansion(G, Rat(2 - k), false);
        for (long t = terms(rng); t > 0; --t) {
            const long g = gpick(rng);
            const Rat n = G->Q(G->element_at(g)) + Rat(jpick(rng));
            add_term(f, g, n, Rat(numpick(rng), denpick(rng)));
        }
        const VVQExpansion b = bol(f, k);
        if (b.weight != Rat(k)) return false;
        for (const auto& [key, c] : f.terms) {
            const Rat n = key.second;
            const Rat want = (n == 0) ? Rat(0) : c * rat_pow(n, k - 1);
            if (coefficient(b, key.first, n) != want) return false;
        }
        for (const auto& [key, c] : b.terms) {
            if (key.second == 0 && c != 0) return false;
            if (coefficient(f, key.first, key.second) * rat_pow(key.second, k - 1) != c)
                return false;
        }
    }
    return true;
}

static bool pairing_part(std::mt19937_64& rng) {
    auto G = discriminant_group(hmf_gram(5));
    std::uniform_int_distribution<long> gpick(0, G->element_count() - 1), jpick(1, 3),
        numpick(-9, 9), denpick(1, 4), terms(1, 5);
    const Rat a(3, 7), b(-2);
    for (int round = 0; round < 40; ++round) {
        const long k = (round % 2) ? 6 : 4;
        auto rand_F = [&]() {
            VVQExpansion F = make_expansion(G, Rat(2 - k), false);
            for (long t = terms(rng); t > 0; --t) {
                const long g = gpick(rng);
                // a principal term plus a regular one
                add_term(F, g, G->Q(G->element_at(g)) - Rat(jpick(rng)),
                         Rat(numpick(rng), denpick(rng)));
                add_term(F, g, G->Q(G->element_at(g)) + Rat(jpick(rng)),
                         Rat(numpick(rng), denpick(rng)));
            }
            return F;
        };
        VVQExpansion F1 = rand_F(), F2 = rand_F();
        VVQExpansion g = make_expansion(G, Rat(k), true);
        for (long t = terms(rng); t > 0; --t) {
            const long gi = gpick(rng);
            add_term(g, gi, Rat(jpick(rng)) - G->Q(G->element_at(gi)),
                     Rat(numpick(rng), denpick(rng)));
        }
        const Rat p1 = pairing(F1, g), p2 = pairing(F2, g);
        if (pairing(linear_combine({a, b}, {F1, F2}), g) != a * p1 + b * p2)
            return false;
        if (pairing(principal_part(F1), g) != p1) return false;
        if (pairing(regular_part(F1), g) != 0) return false;
    }
    return true;
}

static bool lift_linearity_part(std::mt19937_64& rng) {
    auto G = discriminant_group(hmf_gram(5));
    const WeylChamber W = chamber_of(Rat(1), Rat(2), Rat(-1, 5), 5);
    std::uniform_int_distribution<long> st(-6, 6), ellpick(1, 4), numpick(-9, 9),
        denpick(1, 4);
    const Rat a(3, 7), b(-2);
    long done = 0;
    while (done < 20) {
        const long k = (done % 2) ? 6 : 4;
        const QuadRat w = from_integral_coords(Int(st(rng)), Int(st(rng)), 5);
        if (w.is_zero()) continue;
        // nu = w/sqrt5 totally positive needs w > 0 > w'
        if (!(embedding_sign(w, 5, false) > 0 && embedding_sign(w, 5, true) < 0))
            continue;
        const QuadRat nu0(w.y, w.x / Rat(5));
        if (primitive_part(nu0, 5).second != 1) continue;
        const Int ell(ellpick(rng));
        const QuadRat nu = scale(nu0, Rat(ell));

        // support both inputs exactly at the divisor-read positions
        auto rand_F = [&]() {
            VVQExpansion F = make_expansion(G, Rat(k), false);
            add_term(F, G->zero(), Rat(0), Rat(numpick(rng), denpick(rng)));
            for (Int d = 1; d <= ell; ++d) {
                if (ell % d != 0) continue;
                add_term(F, lambda_of(scale(nu, Rat(1) / Rat(d)), *G),
                         norm(nu, 5) / Rat(d * d), Rat(numpick(rng), denpick(rng)));
            }
            return F;
        };
        const VVQExpansion F1 = rand_F(), F2 = rand_F();
        const auto L1 = lift_coefficients(F1, W, {nu});
        const auto L2 = lift_coefficients(F2, W, {nu});
        const auto Lc = lift_coefficients(linear_combine({a, b}, {F1, F2}), W, {nu});
        if (Lc.constant != a * L1.constant + b * L2.constant) return false;
        if (lifted_at(Lc, nu) != a * lifted_at(L1, nu) + b * lifted_at(L2, nu))
            return false;
        ++done;
    }
    return true;
}

static bool transport_part(std::mt19937_64& rng) {
    auto G = discriminant_group(hmf_gram(5));
    const WeylChamber W = chamber_of(Rat(1), Rat(2), Rat(-1, 5), 5);
    std::uniform_int_distribution<long> st(-6, 6), tv(-9, 9), ellpick(1, 6);
    long done = 0;
    while (done < 100) {
        const long k = (done % 2) ? 6 : 4;
        const QuadRat w = from_integral_coords(Int(st(rng)), Int(st(rng)), 5);
        if (w.is_zero()) continue;
        if (!(embedding_sign(w, 5, false) > 0 && embedding_sign(w, 5, true) < 0))
            continue;
        const QuadRat nu0(w.y, w.x / Rat(5));
        if (primitive_part(nu0, 5).second != 1) continue;
        const Int ell(ellpick(rng));
        const QuadRat nu = scale(nu0, Rat(ell));

        // inputs carrying the (D n)^{k-1} integrality the statement assumes
        VVQExpansion F = make_expansion(G, Rat(k), false);
        for (Int d = 1; d <= ell; ++d) {
            if (ell % d != 0) continue;
            const Rat n = norm(nu, 5) / Rat(d * d);
            add_term(F, lambda_of(scale(nu, Rat(1) / Rat(d)), *G), n,
                     rat_pow(Rat(5) * n, k - 1) * Rat(tv(rng)));
        }
        const Rat v = lifted_at(lift_coefficients(F, W, {nu}), nu);
        if (denominator(v) != 1) return false;
        const Int M = pow(abs(numerator(Rat(5) * Rat(ell) * norm(nu0, 5))),
                          unsigned(k - 1));
        if (numerator(v) % M != 0) return false;
        ++done;
    }
    return true;
}

static bool criterion_5() {
    std::mt19937_64 rng(0xacce5501);
    const bool b1 = bol_part(rng);
    std::printf("  Bol operator is coefficientwise n^(k-1) on 60 random expansions: %s\n",
                b1 ? "exact" : "FAIL");
    const bool b2 = pairing_part(rng);
    std::printf("  pairing bilinearity and principal-part dependence, 40 rounds: %s\n",
                b2 ? "exact" : "FAIL");
    const bool b3 = lift_linearity_part(rng);
    std::printf("  lift linearity on 20 random inputs: %s\n", b3 ? "exact" : "FAIL");
    const bool b4 = transport_part(rng);
    std::printf(
        "  divisibility transport (D*ell*N(nu0))^(k-1) on 100 random integral "
        "inputs: %s\n",
        b4 ? "exact" : "FAIL");
    return b1 && b2 && b3 && b4;
}

// ---------------------------------------------------------------- criterion 6
// geometry invariants at 128 bits on 1000 random triples, plus exact
// enumeration against a brute-force box scan

static Mat2i word_matrix(std::mt19937_64& rng) {
    // short random word in the two standard generators
    Mat2i M{1, 0, 0, 1};
    for (int i = 0; i < 6; ++i) {
        const Mat2i g = (rng() % 2) ? Mat2i{1, long(rng() % 3) - 1, 0, 1}
                                    : Mat2i{0, -1, 1, 0};
        M = Mat2i{M.p * g.p + M.q * g.r, M.p * g.q + M.q * g.s,
                  M.r * g.p + M.s * g.r, M.r * g.q + M.s * g.s};
    }
    return M;
}

struct Key {
    long long a, b, s_num, s_den, t_num, t_den;
    auto tied() const { return std::tie(a, b, s_num, s_den, t_num, t_den); }
    bool operator<(const Key& o) const { return tied() < o.tied(); }
    bool operator==(const Key& o) const { return tied() == o.tied(); }
};

static Key key_of(const LatticeVector& X, long D) {
    const auto c = dual_coords(X, D);
    return {X.a.convert_to<long long>(),
            X.b.convert_to<long long>(),
            numerator(c[2]).convert_to<long long>(),
            denominator(c[2]).convert_to<long long>(),
            numerator(c[3]).convert_to<long long>(),
            denominator(c[3]).convert_to<long long>()};
}

// independent enumerator: double-precision triple loop over a padded window
static std::set<Key> brute_vectors(long D, double m, double bound) {
    std::set<Key> out;
    const double rtD = std::sqrt(double(D));
    const double omx = (D % 4 == 1) ? 0.5 : 0.0;
    const long w = long(bound * rtD) + 4;
    const long ab_cap = long(bound) + 2;
    for (long S = -2 * w; S <= 2 * w; ++S)
        for (long T = -2 * w; T <= 2 * w; ++T) {
            const double xw = S + T * omx, yw = T * 0.5;
            const double n1 = (xw + yw * rtD) / rtD;
            const double n2 = (xw - yw * rtD) / (-rtD);
            if (std::fabs(n1) > bound + 1e-9 || std::fabs(n2) > bound + 1e-9) continue;
            const double target = n1 * n2 - m;
            const long ti = std::lround(target);
            if (std::fabs(target - ti) > 1e-9) continue;
            for (long a = -ab_cap; a <= ab_cap; ++a)
                for (long b = -ab_cap; b <= ab_cap; ++b) {
                    if (a * b != ti) continue;
                    if (std::abs(a) > bound + 1e-9 || std::abs(b) > bound + 1e-9)
                        continue;
                    const QuadRat w2 = from_integral_coords(Int(S), Int(T), D);
                    out.insert(key_of(LatticeVector{a, b, QuadRat(w2.y, w2.x / D)}, D));
                }
        }
    return out;
}

static bool criterion_6() {
    set_precision_bits(128);
    const long D = 5;
    const Real tol("1e-20");
    std::mt19937_64 rng(0xacce5506);
    std::uniform_int_distribution<long> xi(-200, 200), yi(30, 250), vi(-4, 4);

    double worst_proj = 0, worst_law = 0;
    long bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const PointH2 Z{Cplx{Real(xi(rng)) / 100, Real(yi(rng)) / 100},
                        Cplx{Real(xi(rng)) / 100, Real(yi(rng)) / 100}};
        const LatticeVector X{vi(rng), vi(rng), nu_st(vi(rng), vi(rng))};

        const auto [qpos, qneg] = projection_norms(Z, X, D);
        const Real resid = abs(qpos + qneg - to_real(quadratic_form(X, D)));
        worst_proj = std::max(worst_proj, resid.convert_to<double>());
        if (!(resid < tol)) ++bad;

        const Mat2i g1 = word_matrix(rng), g2 = word_matrix(rng);
        const RealVec4 v = to_realvec(X, D);
        const Cplx w1 = moebius(g1, Z.z1), w2 = moebius(g2, Z.z2);
        Cplx j1 = Z.z1 * Real(g1.r);
        j1.re += g1.s;
        Cplx j2 = Z.z2 * Real(g2.r);
        j2.re += g2.s;
        const RealVec4 vstar = gamma_flip_act(g1, g2, v);
        const Real law =
            abs_c(q_Z_real(PointH2{w1, w2}, v) * j1 * j2 - q_Z_real(Z, vstar));
        worst_law = std::max(worst_law, law.convert_to<double>());
        if (!(law < tol)) ++bad;
    }
    std::printf(
        "  1000 random (X, Z, gamma) triples at 128 bits: worst projection "
        "residual %.3g, worst transformation residual %.3g (tol 1e-20), %ld "
        "failures\n",
        worst_proj, worst_law, bad);

    bool enum_ok = true;
    auto Gp = discriminant_group(hmf_gram(D));
    for (long bound = 1; bound <= 3; ++bound) {
        for (const Rat& m : {Rat(0), Rat(1), Rat(2), Rat(-1, 5), Rat(-4, 5), Rat(-1)}) {
            const auto got = enumerate_vectors_all(m, Rat(bound), D);
            std::set<Key> seen;
            for (const auto& X : got) seen.insert(key_of(X, D));
            const std::set<Key> want = brute_vectors(
                D, numerator(m).convert_to<double>() / denominator(m).convert_to<double>(),
                double(bound));
            if (seen != want || seen.size() != got.size()) {
                std::printf("  enumeration MISMATCH at box %ld, m=%s\n", bound,
                            m.str().c_str());
                enum_ok = false;
            }
        }
    }
    // per-coset lists partition the full box
    size_t total = 0;
    const auto all3 = enumerate_vectors_all(Rat(1), Rat(3), D);
    for (long i = 0; i < Gp->element_count(); ++i)
        total += enumerate_vectors(*Gp, Gp->element_at(i), Rat(1), Rat(3), D).size();
    enum_ok = enum_ok && total == all3.size();
    std::printf(
        "  enumerate_vectors vs brute-force scan, boxes 1..3, six norms: %s "
        "(box 3 m=1 holds %zu vectors; coset lists partition it)\n",
        enum_ok ? "identical" : "FAIL", all3.size());

    return bad == 0 && enum_ok;
}

int main(int argc, char** argv) {
    long want = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) {
            want = std::atol(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
            return 2;
        }
    }
    if (want < 0 || want > 6) {
        std::fprintf(stderr, "usage: acceptance [--criterion N] with N in 1..6\n");
        return 2;
    }

    struct Entry {
        int n;
        const char* name;
        bool (*fn)();
    };
    static const Entry gates[] = {
        {1, "reference table reproduction", criterion_1},
        {2, "divisibility certificates", criterion_2},
        {3, "oracle cross-check", criterion_3},
        {4, "Weil representation relations", criterion_4},
        {5, "exact-layer identities", criterion_5},
        {6, "geometry invariants", criterion_6},
    };

    bool all_ok = true;
    for (const Entry& e : gates) {
        if (want != 0 && e.n != want) continue;
        bool ok = false;
        try {
            ok = e.fn();
        } catch (const std::exception& ex) {
            std::printf("  unexpected exception: %s\n", ex.what());
        }
        std::printf("criterion %d (%s): %s\n", e.n, e.name, ok ? "PASS" : "FAIL");
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
