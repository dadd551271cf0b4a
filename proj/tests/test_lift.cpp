#include "hz/lift.hpp"

#include "hz/lattice.hpp"
#include "testkit.hpp"

#include <random>

using namespace hz;

static QuadRat nu_st(long s, long t, long D = 5) {
    // nu = (s + t*omega)/sqrt(D)
    const QuadRat w = from_integral_coords(Int(s), Int(t), D);
    return QuadRat(w.y, w.x / Rat(D));
}

static long lambda_of(const QuadRat& nu, const DiscriminantGroup& G, long D = 5) {
    return G.index_of(coset_of(LatticeVector{Int(0), Int(0), nu}, D, G));
}

static Rat lifted_at(const LiftExpansion& L, const QuadRat& nu) {
    for (const auto& [t, c] : L.coeffs)
        if (t == nu) return c;
    throw std::runtime_error("target missing from lift output");
}

static bool has_target(const LiftExpansion& L, const QuadRat& nu) {
    for (const auto& [t, c] : L.coeffs)
        if (t == nu) return true;
    return false;
}

static void test_bernoulli() {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == Rat(-1, 2));
    CHECK(bernoulli(2) == Rat(1, 6));
    CHECK(bernoulli(4) == Rat(-1, 30));
    CHECK(bernoulli(5) == 0);
    CHECK(bernoulli(7) == 0);
    CHECK(bernoulli(8) == Rat(-1, 30));
    CHECK(bernoulli(12) == Rat(-691, 2730));
    bool threw = false;
    try {
        bernoulli(-2);
    } catch (const std::invalid_argument&) {
        threw = true;
    }
    CHECK(threw);
}

static void test_examples() {
    auto G = discriminant_group(hmf_gram(5));
    WeylChamber W12 = chamber_of(Rat(1), Rat(2), Rat(-1, 5), 5);
    WeylChamber W21 = chamber_of(Rat(2), Rat(1), Rat(-1, 5), 5);

    // constant-only input: the lift is the constant 1/120, every target 0
    {
        VVQExpansion F = make_expansion(G, Rat(4), false);
        add_term(F, G->zero(), Rat(0), Rat(1));
        auto L = lift_coefficients(F, W12, {QuadRat(Rat(1), Rat(0)), QuadRat(Rat(2), Rat(0))});
        CHECK(L.constant == Rat(1, 120));
        CHECK(L.coeffs.size() == 2);
        CHECK(lifted_at(L, QuadRat(Rat(1), Rat(0))) == 0);
        CHECK(lifted_at(L, QuadRat(Rat(2), Rat(0))) == 0);
        CHECK(L.k == 4 && L.D == 5);
    }

    // single primitive input coefficient, totally positive target family
    {
        const QuadRat one(Rat(1), Rat(0));
        VVQExpansion F = make_expansion(G, Rat(4), false);
        add_term(F, lambda_of(one, *G), Rat(1), Rat(1));  // c_{lambda(1)}(N(1)) = 1
        auto L = lift_coefficients(
            F, W12, {one, QuadRat(Rat(2), Rat(0)), QuadRat(Rat(3), Rat(0))});
        CHECK(L.constant == 0);
        CHECK(lifted_at(L, one) == 2);                       // d = 1 only
        CHECK(lifted_at(L, QuadRat(Rat(2), Rat(0))) == 16);  // 2*(0 + 2^3)
        CHECK(lifted_at(L, QuadRat(Rat(3), Rat(0))) == 54);  // 2*(0 + 3^3)
    }

    // same shape on a mixed-signature primitive, supported at (2,1)
    {
        const QuadRat p = nu_st(1, 0);  // 1/sqrt5
        VVQExpansion F = make_expansion(G, Rat(4), false);
        add_term(F, lambda_of(p, *G), Rat(-1, 5), Rat(1));
        auto L = lift_coefficients(F, W21, {p, nu_st(2, 0), nu_st(-1, 0), -nu_st(2, 0)});
        CHECK(lifted_at(L, p) == 2);
        CHECK(lifted_at(L, nu_st(2, 0)) == 16);
        // mirror and totally negative targets fail the positivity gate
        CHECK(!has_target(L, nu_st(-1, 0)));
        CHECK(!has_target(L, -nu_st(2, 0)));
    }

    // primitive output reads exactly one input coefficient: junk elsewhere
    // in the expansion leaves it alone
    {
        const QuadRat one(Rat(1), Rat(0));
        VVQExpansion F = make_expansion(G, Rat(4), false);
        add_term(F, lambda_of(one, *G), Rat(1), Rat(7, 3));
        add_term(F, lambda_of(one, *G), Rat(2), Rat(11));            // wrong index
        add_term(F, lambda_of(nu_st(1, 0), *G), Rat(-1, 5), Rat(5));  // wrong coset
        add_term(F, G->zero(), Rat(0), Rat(-4));                      // constant only
        auto L = lift_coefficients(F, W12, {one});
        CHECK(lifted_at(L, one) == Rat(14, 3));
        CHECK(L.constant == Rat(-4) * Rat(-1, 30) / Rat(-4));  // -c0(0) B4/4 = -1/30
    }
}

static void test_validation() {
    auto G = discriminant_group(hmf_gram(5));
    WeylChamber W = chamber_of(Rat(1), Rat(2), Rat(-1, 5), 5);

    auto expect_throw = [&](auto&& f) {
        try {
            f();
        } catch (const std::invalid_argument&) {
            return true;
        }
        return false;
    };

    VVQExpansion dual = make_expansion(G, Rat(4), true);
    CHECK(expect_throw([&] { lift_coefficients(dual, W, {}); }));

    VVQExpansion half = make_expansion(G, Rat(7, 2), false);
    CHECK(expect_throw([&] { lift_coefficients(half, W, {}); }));

    VVQExpansion F = make_expansion(G, Rat(4), false);
    CHECK(expect_throw([&] { lift_coefficients(F, W, {QuadRat(Rat(1, 3), Rat(0))}); }));
    CHECK(expect_throw([&] { lift_coefficients(F, W, {QuadRat()}); }));

    auto G8 = discriminant_group(hmf_gram(8));
    VVQExpansion F8 = make_expansion(G8, Rat(4), false);
    CHECK(expect_throw([&] { lift_coefficients(F8, W, {}); }));
}

static void test_linearity() {
    auto G = discriminant_group(hmf_gram(5));
    WeylChamber W = chamber_of(Rat(1), Rat(2), Rat(-1, 5), 5);
    std::mt19937_64 rng(0x11f7);
    std::uniform_int_distribution<long> st(-5, 5), cval(-9, 9), den(1, 4);

    for (int round = 0; round < 20; ++round) {
        // a handful of totally positive targets with small multiplier
        std::vector<QuadRat> targets;
        while (targets.size() < 3) {
            QuadRat w = from_integral_coords(Int(st(rng)), Int(st(rng)), 5);
            if (w.is_zero()) continue;
            // nu = w/sqrt5 totally positive needs w > 0 > w'
            if (embedding_sign(w, 5, false) <= 0 || embedding_sign(w, 5, true) >= 0) continue;
            long ell = den(rng);
            targets.push_back(scale(QuadRat(w.y, w.x / Rat(5)), Rat(ell)));
        }
        // two random inputs supported exactly where the lift reads
        VVQExpansion F = make_expansion(G, Rat(4), false);
        VVQExpansion H = make_expansion(G, Rat(4), false);
        add_term(F, G->zero(), Rat(0), Rat(cval(rng)));
        add_term(H, G->zero(), Rat(0), Rat(cval(rng), den(rng)));
        for (const QuadRat& nu : targets) {
            auto [nu0, ell] = primitive_part(nu, 5);
            for (Int d = 1; d <= ell; ++d) {
                if (ell % d != 0) continue;
                QuadRat nud = scale(nu, Rat(1) / Rat(d));
                Rat n = norm(nu, 5) / Rat(d * d);
                add_term(F, lambda_of(nud, *G), n, Rat(cval(rng), den(rng)));
                add_term(H, lambda_of(nud, *G), n, Rat(cval(rng)));
            }
        }
        const Rat a(3, 7), b(-2);
        VVQExpansion M = linear_combine({a, b}, {F, H});
        auto LM = lift_coefficients(M, W, targets);
        auto LF = lift_coefficients(F, W, targets);
        auto LH = lift_coefficients(H, W, targets);
        CHECK(LM.constant == a * LF.constant + b * LH.constant);
        for (const QuadRat& nu : targets)
            CHECK(lifted_at(LM, nu) == a * lifted_at(LF, nu) + b * lifted_at(LH, nu));
    }
}

// synthetic integral inputs c_gamma(n) = (Dn)^{k-1} t_gamma(n) make every
// output coefficient divisible by (D l_nu |N(nu0)|)^{k-1}
static void test_divisibility_transport() {
    auto G = discriminant_group(hmf_gram(5));
    WeylChamber W12 = chamber_of(Rat(1), Rat(2), Rat(-1, 5), 5);
    WeylChamber W21 = chamber_of(Rat(2), Rat(1), Rat(-1, 5), 5);
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<long> st(-6, 6), tv(-9, 9), ellpick(1, 6);

    long done = 0;
    while (done < 100) {
        const long k = (done % 2) ? 6 : 4;
        QuadRat w = from_integral_coords(Int(st(rng)), Int(st(rng)), 5);
        if (w.is_zero()) continue;
        const bool totpos = embedding_sign(w, 5, false) > 0 && embedding_sign(w, 5, true) < 0;
        if (!totpos) continue;
        QuadRat nu0 = QuadRat(w.y, w.x / Rat(5));
        auto [p0, c0] = primitive_part(nu0, 5);
        if (c0 != 1) continue;  // force a primitive base so ell is the multiplier
        const Int ell(ellpick(rng));
        const QuadRat nu = scale(nu0, Rat(ell));

        VVQExpansion F = make_expansion(G, Rat(k), false);
        for (Int d = 1; d <= ell; ++d) {
            if (ell % d != 0) continue;
            const QuadRat nud = scale(nu, Rat(1) / Rat(d));
            const Rat n = norm(nu, 5) / Rat(d * d);
            const Rat cin = Rat(pow(numerator(Rat(5) * n), unsigned(k - 1)),
                                pow(denominator(Rat(5) * n), unsigned(k - 1))) *
                            Rat(tv(rng));
            CHECK(denominator(cin) == 1);  // (Dn)^{k-1} is an integer here
            add_term(F, lambda_of(nud, *G), n, cin);
        }
        auto L = lift_coefficients(F, W12, {nu});
        const Rat v = lifted_at(L, nu);
        CHECK(denominator(v) == 1);
        const Int M = pow(abs(numerator(Rat(5) * Rat(ell) * norm(nu0, 5))), unsigned(k - 1));
        CHECK_MSG(numerator(v) % M == 0, "transport fails: v=%s M=%s",
                  numerator(v).str().c_str(), M.str().c_str());
        ++done;
    }

    // the mixed-signature divisor family transports as well
    for (long r : {2L, 3L, 4L}) {
        const long k = 4;
        const QuadRat nu = nu_st(r, 0);  // r/sqrt5, nu0 = 1/sqrt5, N(nu0) = -1/5
        VVQExpansion F = make_expansion(G, Rat(k), false);
        for (Int d = 1; d <= r; ++d) {
            if (Int(r) % d != 0) continue;
            const Rat n = norm(nu, 5) / Rat(d * d);
            add_term(F, lambda_of(scale(nu, Rat(1) / Rat(d)), *G), n,
                     Rat(pow(numerator(Rat(5) * n), unsigned(k - 1)),
                         pow(denominator(Rat(5) * n), unsigned(k - 1))));
        }
        auto L = lift_coefficients(F, W21, {nu});
        const Rat v = lifted_at(L, nu);
        const Int M = pow(Int(r), unsigned(k - 1));  // |D ell N(nu0)| = r
        CHECK(denominator(v) == 1 && numerator(v) % M == 0);
    }
}

static void test_json() {
    auto G = discriminant_group(hmf_gram(5));
    WeylChamber W = chamber_of(Rat(1), Rat(2), Rat(-1, 5), 5);
    VVQExpansion F = make_expansion(G, Rat(4), false);
    add_term(F, G->zero(), Rat(0), Rat(1));
    auto L = lift_coefficients(F, W, {QuadRat(Rat(1), Rat(0))});
    auto j = lift_to_json(L);
    CHECK(j["constant"] == "1/120");
    CHECK(j["k"] == 4 && j["D"] == 5);
    CHECK(j["coefficients"].size() == 1);
    CHECK(j["coefficients"][0]["value"] == "0");
    CHECK(j["coefficients"][0].contains("nu"));
}

int main() {
    set_precision_bits(128);
    test_bernoulli();
    test_examples();
    test_validation();
    test_linearity();
    test_divisibility_transport();
    test_json();
    return testkit::finish("test_lift");
}
