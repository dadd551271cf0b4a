#include "hz/quadfield.hpp"

#include <cctype>
#include <sstream>

namespace hz {

bool valid_discriminant(long D) {
    if (D <= 1) return false;
    long r = D % 4;
    if (r != 0 && r != 1) return false;
    // fundamental: D squarefree if D=1 mod 4; D/4 squarefree and = 2,3 mod 4 if D=0 mod 4
    long core = (r == 0) ? D / 4 : D;
    for (long p = 2; p * p <= core; ++p)
        if (core % (p * p) == 0) return false;
    if (r == 0) {
        long c4 = core % 4;
        if (c4 == 1) return false;  // would make D/4 = 1 mod 4, not fundamental
    }
    // perfect squares are excluded by the squarefree test except D=4
    if (D == 4) return false;
    return true;
}

QuadRat mul(const QuadRat& a, const QuadRat& b, long D) {
    return {a.x * b.x + Rat(D) * a.y * b.y, a.x * b.y + a.y * b.x};
}

QuadRat div(const QuadRat& a, const QuadRat& b, long D) {
    Rat n = norm(b, D);
    if (n == 0) throw std::domain_error("division by zero element");
    QuadRat num = mul(a, conjugate(b), D);
    return {num.x / n, num.y / n};
}

QuadRat scale(const QuadRat& a, const Rat& c) { return {a.x * c, a.y * c}; }

QuadRat conjugate(const QuadRat& v) { return {v.x, -v.y}; }

Rat norm(const QuadRat& v, long D) { return v.x * v.x - Rat(D) * v.y * v.y; }

Rat trace(const QuadRat& v) { return 2 * v.x; }

QuadRat omega(long D) {
    if (D % 4 == 1) return {Rat(1, 2), Rat(1, 2)};
    return {Rat(0), Rat(1, 2)};  // sqrt(D)/2, integral since D = 0 mod 4
}

Rat omega_trace(long D) { return trace(omega(D)); }
Rat omega_norm(long D) { return norm(omega(D), D); }

int embedding_sign(const QuadRat& v, long D, bool conj_emb) {
    Rat y = conj_emb ? -v.y : v.y;
    const Rat& x = v.x;
    int sx = (x > 0) - (x < 0);
    int sy = (y > 0) - (y < 0);
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    // opposite signs: compare |x| vs |y|sqrt(D) via squares
    Rat lhs = x * x, rhs = Rat(D) * y * y;
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? sx : sy;
}

bool is_totally_positive(const QuadRat& v, long D) {
    return embedding_sign(v, D, false) > 0 && embedding_sign(v, D, true) > 0;
}

bool membership(const QuadRat& v, long D, Module mod) {
    QuadRat w = v;
    if (mod == Module::inverse_different) {
        // v in d^{-1} iff v*sqrt(D) in O_F
        w = mul(v, QuadRat(Rat(0), Rat(1)), D);
    }
    // w = s + t*omega: t = 2*w.y (both basis choices have omega y-coord 1/2)
    Rat t = 2 * w.y;
    Rat s = w.x - t * omega(D).x;
    return denominator(t) == 1 && denominator(s) == 1;
}

std::pair<Int, Int> integral_coords(const QuadRat& v, long D) {
    Rat t = 2 * v.y;
    Rat s = v.x - t * omega(D).x;
    if (denominator(t) != 1 || denominator(s) != 1)
        throw std::domain_error("not an integral element: " + format_quadrat(v, D));
    return {numerator(s), numerator(t)};
}

QuadRat from_integral_coords(const Int& s, const Int& t, long D) {
    QuadRat om = omega(D);
    return {Rat(s) + Rat(t) * om.x, Rat(t) * om.y};
}

std::pair<QuadRat, Int> primitive_part(const QuadRat& nu, long D) {
    if (nu.is_zero()) throw std::domain_error("primitive_part of zero");
    if (!membership(nu, D, Module::inverse_different))
        throw std::domain_error("nu not in the inverse different");
    QuadRat scaled = mul(nu, QuadRat(Rat(0), Rat(1)), D);  // nu*sqrt(D) in O_F
    auto [s, t] = integral_coords(scaled, D);
    Int ell = gcd(abs(s), abs(t));
    QuadRat nu0{nu.x / Rat(ell), nu.y / Rat(ell)};
    return {nu0, ell};
}

QuadRat fundamental_unit(long D) {
    if (!valid_discriminant(D)) throw std::domain_error("invalid discriminant");
    // smallest-unit search in integral coordinates: eps = s + t*omega, t >= 1.
    // For fixed t the norm is quadratic in s, so only s near the real roots of
    // N(s + t*omega) = +-1 can work; scan that window exactly.
    QuadRat om = omega(D);
    Rat tr_om = trace(om), n_om = norm(om, D);
    for (long t = 1; t < 100000; ++t) {
        // N = s^2 + s*t*tr_om + t^2*n_om; solve for s around the roots
        // s ~ (-t*tr_om +- sqrt(t^2*(tr_om^2-4n_om) +- 4))/2 ; just scan a
        // conservative window |2s + t*tr_om| <= sqrt(D*t^2+4)+1
        double width = std::sqrt(static_cast<double>(D) * t * t + 4.0) + 2.0;
        double center = -static_cast<double>(t) * boost::multiprecision::numerator(tr_om).convert_to<double>() /
                        boost::multiprecision::denominator(tr_om).convert_to<double>() / 2.0;
        long lo = static_cast<long>(std::floor(center - width / 2));
        long hi = static_cast<long>(std::ceil(center + width / 2));
        QuadRat best;
        bool found = false;
        const QuadRat one{Rat(1), Rat(0)};
        for (long s = lo; s <= hi; ++s) {
            QuadRat u = from_integral_coords(Int(s), Int(t), D);
            Rat n = norm(u, D);
            if (n != 1 && n != -1) continue;
            if (embedding_sign(u, D, false) < 0) u = -u;
            if (embedding_sign(u - one, D, false) <= 0) continue;  // need u > 1
            if (!found || embedding_sign(best - u, D, false) > 0) { best = u; found = true; }
        }
        // units > 1 with minimal positive omega-coordinate t are fundamental:
        // powers of the fundamental unit have strictly increasing t
        if (found) return best;
    }
    throw std::runtime_error("fundamental unit search exhausted");
}

Real embed(const QuadRat& v, long D, bool conj_emb) {
    Real sq = sqrt(Real(D));
    Real y = to_real(v.y);
    if (conj_emb) y = -y;
    return to_real(v.x) + y * sq;
}

static std::string rat_str(const Rat& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

std::string format_quadrat(const QuadRat& v, long D) {
    std::ostringstream os;
    os << rat_str(v.x);
    if (v.y >= 0)
        os << " + " << rat_str(v.y);
    else
        os << " - " << rat_str(-v.y);
    os << "*sqrt(" << D << ")";
    return os.str();
}

// --- parsing ---------------------------------------------------------------

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    void skip_ws() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    bool eat_str(const char* t) {
        skip_ws();
        size_t n = std::string(t).size();
        if (s.compare(i, n, t) == 0) { i += n; return true; }
        return false;
    }
    bool done() { skip_ws(); return i >= s.size(); }
};

Rat parse_rational(Cursor& c) {
    c.skip_ws();
    size_t start = c.i;
    if (c.i < c.s.size() && (c.s[c.i] == '+' || c.s[c.i] == '-')) ++c.i;
    size_t digits = 0;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) { ++c.i; ++digits; }
    if (digits == 0) throw std::invalid_argument("expected number in '" + c.s + "'");
    std::string num = c.s.substr(start, c.i - start);
    if (c.eat('/')) {
        c.skip_ws();
        size_t dstart = c.i;
        while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
        if (c.i == dstart) throw std::invalid_argument("expected denominator in '" + c.s + "'");
        std::string den = c.s.substr(dstart, c.i - dstart);
        return Rat(Int(num), Int(den));
    }
    return Rat(Int(num));
}

// one term: [rational] [* ] [sqrt(D)]; returns (x-part, y-part)
std::pair<Rat, Rat> parse_term(Cursor& c, long D, int sign) {
    Rat coeff(sign);
    bool have_coeff = false;
    c.skip_ws();
    if (c.i < c.s.size() && (std::isdigit(static_cast<unsigned char>(c.s[c.i])) ||
                             c.s[c.i] == '+' || c.s[c.i] == '-')) {
        coeff = coeff * parse_rational(c);
        have_coeff = true;
    }
    bool star = c.eat('*');
    if (c.eat_str("sqrt(")) {
        Rat d = parse_rational(c);
        if (!c.eat(')')) throw std::invalid_argument("missing ')' in '" + c.s + "'");
        if (d != D) throw std::invalid_argument("sqrt argument must equal the discriminant");
        return {Rat(0), coeff};
    }
    if (star || !have_coeff) throw std::invalid_argument("malformed term in '" + c.s + "'");
    return {coeff, Rat(0)};
}

}  // namespace

QuadRat parse_quadrat(const std::string& text, long D) {
    Cursor c{text};
    Rat x(0), y(0);
    int sign = 1;
    if (c.eat('-')) sign = -1;
    else c.eat('+');
    auto [tx, ty] = parse_term(c, D, sign);
    x += tx; y += ty;
    while (!c.done()) {
        if (c.eat('+')) sign = 1;
        else if (c.eat('-')) sign = -1;
        else throw std::invalid_argument("expected '+' or '-' in '" + text + "'");
        auto [ux, uy] = parse_term(c, D, sign);
        x += ux; y += uy;
    }
    return {x, y};
}

QuadRat parse_nu(const std::string& text, long D) {
    // integral-coordinate form "s,t" meaning (s + t*omega)/sqrt(D)
    if (text.find(',') != std::string::npos) {
        Cursor c{text};
        Rat s = parse_rational(c);
        if (!c.eat(',')) throw std::invalid_argument("expected 's,t'");
        Rat t = parse_rational(c);
        if (!c.done()) throw std::invalid_argument("trailing junk in '" + text + "'");
        if (denominator(s) != 1 || denominator(t) != 1)
            throw std::invalid_argument("integral coordinates must be integers");
        QuadRat num = from_integral_coords(numerator(s), numerator(t), D);
        return div(num, QuadRat(Rat(0), Rat(1)), D);
    }
    return parse_quadrat(text, D);
}

}  // namespace hz
