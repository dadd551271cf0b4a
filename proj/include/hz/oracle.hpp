#pragma once

// Brute-force numerical cross-check: omega_{beta,m} evaluated as a truncated
// lattice sum on a torus grid, coefficients recovered by discrete inversion
// against the characters e(tr(nu x)). Everything here runs in double precision
// with heuristic error estimates. The closed forms in coeffs.hpp are the
// precision instruments; this module only has to be independently wrong.

#include "hz/lattice.hpp"
#include "hz/quadfield.hpp"
#include "hz/weilrep.hpp"

#include "json.hpp"

#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace hz {

struct oracle_error : std::runtime_error {
    explicit oracle_error(const std::string& w) : std::runtime_error(w) {}
};

struct TorusGrid {
    long D = 5;
    Rat y1, y2;   // strip height, rational so reruns are byte-identical
    long N = 64;  // samples per axis, power of two
    Rat R;        // height cutoff for the lattice sum
};

TorusGrid make_grid(long D, const Rat& y1, const Rat& y2, long N, const Rat& R);

struct OmegaValue {
    std::complex<double> value;
    double tail;  // heuristic truncation estimate from the two outer shells
};

// omega_{beta,m}(z1, z2) truncated at height R; beta = -1 sums every coset.
// Throws oracle_error near a pole of the sum or when R leaves fewer than two
// populated outer shells to extrapolate from.
OmegaValue eval_omega(std::complex<double> z1, std::complex<double> z2, long D,
                      const Rat& m, long k, const Rat& R,
                      const DiscriminantGroup* G = nullptr, long beta = -1);

struct GridSamples {
    TorusGrid grid;
    Rat m;
    long k = 4;
    long beta = -1;                       // coset index into G, -1 = all
    std::vector<std::complex<double>> W;  // N*N values, row-major in (j1, j2)
    std::vector<double> tail;             // per-point truncation estimate
    long vector_count = 0;
};

GridSamples sample_torus(const TorusGrid& grid, const Rat& m, long k,
                         const DiscriminantGroup* G = nullptr, long beta = -1);

struct NumericCoefficient {
    QuadRat nu;
    long D = 5;
    long n1 = 0, n2 = 0;         // dual frequencies tr(nu), tr(nu * (D+sqrt(D))/2)
    std::complex<double> value;  // strip-corrected DFT bin
    double error = 0;            // heuristic: truncation + imaginary leak
    double imag_leak = 0;
};

// inversion over one period of the torus; rejects nu aliased past N/2
NumericCoefficient fourier_coefficient_numeric(const QuadRat& nu, const GridSamples& S);

void samples_csv(std::ostream& os, const GridSamples& S);
void coefficients_csv(std::ostream& os, const std::vector<NumericCoefficient>& cs);
nlohmann::json numeric_coefficient_to_json(const NumericCoefficient& c);

}  // namespace hz
