#include "hz/divisibility.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hz {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 n) { return u64(u128(a) * b % n); }

u64 powmod(u64 a, u64 e, u64 n) {
    u64 r = 1;
    a %= n;
    while (e) {
        if (e & 1) r = mulmod(r, a, n);
        a = mulmod(a, a, n);
        e >>= 1;
    }
    return r;
}

// deterministic Miller-Rabin below 2^64
bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

u64 brent_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto step = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
        u64 x = 2, y = 2, d = 1;
        u64 power = 1, lam = 0;
        while (d == 1) {
            if (lam == power) {
                x = y;
                power <<= 1;
                lam = 0;
            }
            y = step(y);
            ++lam;
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
        // cycle collapsed onto n itself: retry with the next polynomial
    }
}

void factor_u64(u64 n, std::map<u64, unsigned>& out) {
    if (n == 1) return;
    // strip small primes first; rho only sees hard cofactors
    for (u64 p = 2; p * p <= n && p < 20000; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n == 1) return;
    if (is_prime_u64(n)) {
        ++out[n];
        return;
    }
    u64 d = brent_rho(n);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

}  // namespace

Factorization factorize(const Int& n) {
    Factorization f;
    if (n == 0) return f;
    f.sign = n < 0 ? -1 : 1;
    Int a = abs(n);
    if (a >> 64 != 0) throw std::invalid_argument("factorize expects |n| < 2^64");
    std::map<u64, unsigned> acc;
    factor_u64(a.convert_to<u64>(), acc);
    for (const auto& [p, e] : acc) f.factors.emplace_back(Int(p), e);
    return f;
}

std::string format_factorization(const Factorization& f) {
    if (f.sign == 0) return "0";
    std::ostringstream os;
    if (f.sign < 0) os << "-";
    if (f.factors.empty()) {
        os << "1";
        return os.str();
    }
    bool first = true;
    for (const auto& [p, e] : f.factors) {
        if (!first) os << "*";
        first = false;
        os << p;
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

Int factorization_value(const Factorization& f) {
    if (f.sign == 0) return Int(0);
    Int v = f.sign;
    for (const auto& [p, e] : f.factors)
        for (unsigned i = 0; i < e; ++i) v *= p;
    return v;
}

Certificate certificate(const QuadRat& nu, const Int& value, long D, long k) {
    if (k < 2) throw std::invalid_argument("weight must be at least 2");
    Certificate c;
    c.nu = nu;
    std::tie(c.nu0, c.ell) = primitive_part(nu, D);  // rejects 0 and non-d^{-1}
    const Rat dn0 = Rat(D) * norm(c.nu0, D);
    if (denominator(dn0) != 1)
        throw std::logic_error("D*N(nu0) fails to be an integer");
    c.modulus = pow(abs(c.ell * numerator(dn0)), unsigned(k - 1));
    c.value = value;
    c.ok = value % c.modulus == 0;
    c.quotient = c.ok ? Int(value / c.modulus) : Int(0);
    if (abs(value) >> 64 == 0) c.value_factored = factorize(value);
    return c;
}

std::optional<Int> denominator_search(const std::vector<Rat>& values, const Int& bound) {
    if (bound < 1) throw std::invalid_argument("bound must be at least 1");
    Int delta = 1;
    for (const Rat& v : values) {
        delta = lcm(delta, denominator(v));
        if (delta > bound) return std::nullopt;
    }
    return delta;
}

std::string certificate_csv(const std::vector<Certificate>& certs, long D) {
    std::ostringstream os;
    os << "nu,ell,modulus,norm,c,c_factored,ok\n";
    for (const Certificate& c : certs) {
        os << '"' << format_quadrat(c.nu, D) << "\"," << c.ell << "," << c.modulus << ","
           << norm(c.nu, D).str() << "," << c.value << ","
           << format_factorization(c.value_factored) << "," << (c.ok ? 1 : 0) << "\n";
    }
    return os.str();
}

nlohmann::json certificate_to_json(const Certificate& c, long D) {
    return nlohmann::json{{"nu", format_quadrat(c.nu, D)},
                          {"nu0", format_quadrat(c.nu0, D)},
                          {"ell", c.ell.str()},
                          {"modulus", c.modulus.str()},
                          {"norm", norm(c.nu, D).str()},
                          {"c", c.value.str()},
                          {"c_factored", format_factorization(c.value_factored)},
                          {"quotient", c.quotient.str()},
                          {"ok", c.ok}};
}

nlohmann::json certificate_table_json(const std::vector<Certificate>& certs, long D,
                                      long k) {
    nlohmann::json rows = nlohmann::json::array();
    for (const Certificate& c : certs) rows.push_back(certificate_to_json(c, D));
    return nlohmann::json{{"D", D}, {"k", k}, {"rows", rows}};
}

}  // namespace hz
