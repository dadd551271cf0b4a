#pragma once

// Command-line front end: flag parsing into RunConfig, command dispatch, and
// deterministic report emission. Every report embeds the config it ran under;
// identical invocations produce byte-identical output. Exit codes: 0 success,
// 1 verification failure, 2 usage or certification failure.

#include "hz/quadfield.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hz {

struct RunConfig {
    long D = 5;
    long k = 4;
    Rat m = Rat(-1, 5);
    Rat base_y1 = Rat(2), base_y2 = Rat(1);  // chamber of the frozen table
    long precision_bits = 192;
    long alpha_cap = 10000;
    Rat oracle_R = Rat(60);
    long oracle_N = 64;
    std::string format = "text";  // text | csv | json
    bool assume_trivial_cusp_space = false;
    Int delta_bound = Int(1000000);
    std::vector<QuadRat> nus;
};

nlohmann::json runconfig_to_json(const RunConfig& c);

// Weil representation relations report for one discriminant, entrywise
// tolerance tol: unitarity, T diagonal with e(Q), (ST)^3 = S^2, S^4 = 1,
// S^2 e_beta = e_{-beta}. pass is the AND over all five.
nlohmann::json weilrep_report(long D, double tol, bool& pass);

// args excludes the program name
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err,
            std::istream& in);

}  // namespace hz
