#pragma once

// Divisibility certificates for the coefficient theorem: writing nu = l nu0
// with nu0 primitive, the nu-th coefficient is divisible by
// (D l |N(nu0)|)^{k-1}. Also the empirical denominator search (least delta
// clearing all denominators, up to a bound) and small-integer factorization
// for the table's factored column.

#include "hz/quadfield.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hz {

struct Factorization {
    int sign = 0;                                    // -1 / 0 / +1
    std::vector<std::pair<Int, unsigned>> factors;   // ascending primes
};

// |n| < 2^64; trial division then Brent-Pollard rho on the cofactor
Factorization factorize(const Int& n);

// "2^4*5^5*61", "-2*3^3*337", "1", "0"; exponent 1 omitted
std::string format_factorization(const Factorization& f);

Int factorization_value(const Factorization& f);

struct Certificate {
    QuadRat nu;
    QuadRat nu0;
    Int ell;
    Int modulus;    // (D ell |N(nu0)|)^{k-1}, a positive integer
    Int value;
    Int quotient;   // value / modulus when ok, else 0
    bool ok = false;
    Factorization value_factored;  // filled when |value| < 2^64, empty otherwise
};

// exact division test for one candidate coefficient; nu in d^{-1} \ {0}
Certificate certificate(const QuadRat& nu, const Int& value, long D, long k);

// least delta <= bound with delta*v integral for every v, nullopt if none
std::optional<Int> denominator_search(const std::vector<Rat>& values,
                                      const Int& bound = Int(1000000));

// table emitters, columns: nu, ell, modulus, N(nu), c, c factored
std::string certificate_csv(const std::vector<Certificate>& certs, long D);
nlohmann::json certificate_to_json(const Certificate& c, long D);
nlohmann::json certificate_table_json(const std::vector<Certificate>& certs, long D,
                                      long k);

}  // namespace hz
