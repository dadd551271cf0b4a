#include "hz/weilrep.hpp"

#include <stdexcept>

namespace hz {

Rat frac_mod1(const Rat& r) {
    Int fl = numerator(r) / denominator(r);
    // mpz division truncates toward zero; fix up for negatives
    if (r < 0 && fl * denominator(r) != numerator(r)) fl -= 1;
    return r - Rat(fl);
}

static IMat identity_mat(size_t n) {
    IMat I(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

static IMat mat_mul(const IMat& A, const IMat& B) {
    size_t n = A.size(), m = B[0].size(), k = B.size();
    IMat C(n, std::vector<Int>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l)
            if (A[i][l] != 0)
                for (size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
    return C;
}

SNF smith_normal_form(const IMat& A0) {
    size_t n = A0.size();
    IMat A = A0;
    IMat U = identity_mat(n), V = identity_mat(n);

    auto row_swap = [&](size_t i, size_t j) { std::swap(A[i], A[j]); std::swap(U[i], U[j]); };
    auto col_swap = [&](size_t i, size_t j) {
        for (size_t r = 0; r < n; ++r) { std::swap(A[r][i], A[r][j]); }
        for (size_t r = 0; r < n; ++r) { std::swap(V[r][i], V[r][j]); }
    };
    auto row_add = [&](size_t dst, size_t src, const Int& f) {
        for (size_t c = 0; c < n; ++c) { A[dst][c] += f * A[src][c]; U[dst][c] += f * U[src][c]; }
    };
    auto col_add = [&](size_t dst, size_t src, const Int& f) {
        for (size_t r = 0; r < n; ++r) { A[r][dst] += f * A[r][src]; V[r][dst] += f * V[r][src]; }
    };
    auto row_neg = [&](size_t i) {
        for (size_t c = 0; c < n; ++c) { A[i][c] = -A[i][c]; U[i][c] = -U[i][c]; }
    };

    for (size_t t = 0; t < n; ++t) {
        // find a nonzero pivot in the lower-right block
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < n && !found; ++i)
            for (size_t j = t; j < n && !found; ++j)
                if (A[i][j] != 0) { pi = i; pj = j; found = true; }
        if (!found) break;
        row_swap(t, pi);
        col_swap(t, pj);
        // clear row and column t
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = t + 1; i < n; ++i) {
                if (A[i][t] == 0) continue;
                Int q = A[i][t] / A[t][t];
                row_add(i, t, -q);
                if (A[i][t] != 0) { row_swap(t, i); dirty = true; }
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (A[t][j] == 0) continue;
                Int q = A[t][j] / A[t][t];
                col_add(j, t, -q);
                if (A[t][j] != 0) { col_swap(t, j); dirty = true; }
            }
        }
        if (A[t][t] < 0) row_neg(t);
    }
    // enforce divisibility chain d_i | d_{i+1}
    for (size_t t = 0; t + 1 < n; ++t) {
        for (size_t s = t + 1; s < n; ++s) {
            if (A[t][t] == 0) { std::swap(A[t][t], A[s][s]); continue; }
            if (A[s][s] % A[t][t] == 0) continue;
            // standard trick: add column s to column t, re-reduce the 2x2 block
            col_add(t, s, 1);
            while (A[s][t] != 0 || A[t][s] != 0 || A[s][s] % A[t][t] != 0) {
                // gcd dance on the 2x2 block via row/col ops
                if (A[s][t] != 0) {
                    Int q = A[s][t] / A[t][t];
                    row_add(s, t, -q);
                    if (A[s][t] != 0) row_swap(t, s);
                }
                if (A[t][s] != 0) {
                    Int q = A[t][s] / A[t][t];
                    col_add(s, t, -q);
                    if (A[t][s] != 0) col_swap(t, s);
                }
                if (A[s][t] == 0 && A[t][s] == 0 && A[s][s] % A[t][t] != 0) col_add(t, s, 1);
            }
            if (A[t][t] < 0) row_neg(t);
            if (A[s][s] < 0) row_neg(s);
        }
    }
    SNF out;
    out.U = U;
    out.V = V;
    out.d.resize(n);
    for (size_t i = 0; i < n; ++i) out.d[i] = A[i][i];
    return out;
}

// exact inverse of a unimodular integer matrix by rational Gauss-Jordan
static IMat unimodular_inverse(const IMat& M) {
    size_t n = M.size();
    RMat a(n, std::vector<Rat>(2 * n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = Rat(M[i][j]);
        a[i][n + i] = 1;
    }
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw std::runtime_error("singular matrix in inverse");
        std::swap(a[c], a[p]);
        Rat piv = a[c][c];
        for (size_t j = 0; j < 2 * n; ++j) a[c][j] /= piv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    IMat inv(n, std::vector<Int>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Rat v = a[i][n + j];
            if (denominator(v) != 1) throw std::runtime_error("matrix not unimodular");
            inv[i][j] = numerator(v);
        }
    return inv;
}

static RMat rational_inverse(const IMat& M) {
    size_t n = M.size();
    RMat a(n, std::vector<Rat>(2 * n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = Rat(M[i][j]);
        a[i][n + i] = 1;
    }
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw std::runtime_error("singular gram matrix");
        std::swap(a[c], a[p]);
        Rat piv = a[c][c];
        for (size_t j = 0; j < 2 * n; ++j) a[c][j] /= piv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    RMat inv(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

// signature by rational congruence diagonalization
static void signature_of(const IMat& A, int& bp, int& bm) {
    size_t n = A.size();
    RMat M(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) M[i][j] = Rat(A[i][j]);
    bp = bm = 0;
    for (size_t t = 0; t < n; ++t) {
        if (M[t][t] == 0) {
            // find j > t with M[t][j] != 0 and mix it in: row/col t += row/col j
            size_t j = t + 1;
            while (j < n && M[t][j] == 0) ++j;
            if (j == n) continue;  // zero row: degenerate (rejected elsewhere)
            for (size_t c = 0; c < n; ++c) M[t][c] += M[j][c];
            for (size_t r = 0; r < n; ++r) M[r][t] += M[r][j];
        }
        Rat p = M[t][t];
        if (p > 0) ++bp; else if (p < 0) ++bm;
        for (size_t i = t + 1; i < n; ++i) {
            if (M[i][t] == 0) continue;
            Rat f = M[i][t] / p;
            for (size_t c = 0; c < n; ++c) M[i][c] -= f * M[t][c];
            for (size_t r = 0; r < n; ++r) M[r][i] -= f * M[r][t];
        }
    }
}

std::shared_ptr<DiscriminantGroup> discriminant_group(const IMat& gram) {
    size_t n = gram.size();
    for (size_t i = 0; i < n; ++i) {
        if (gram[i].size() != n) throw std::invalid_argument("gram not square");
        if (gram[i][i] % 2 != 0) throw std::invalid_argument("gram not even");
        for (size_t j = 0; j < n; ++j)
            if (gram[i][j] != gram[j][i]) throw std::invalid_argument("gram not symmetric");
    }
    auto G = std::make_shared<DiscriminantGroup>();
    G->gram = gram;
    G->snf = smith_normal_form(gram);
    for (const Int& d : G->snf.d)
        if (d == 0) throw std::invalid_argument("gram is singular");
    G->U_inv = unimodular_inverse(G->snf.U);
    G->gram_inv = rational_inverse(gram);
    G->orders = G->snf.d;
    for (const Int& d : G->orders) G->size *= d;
    signature_of(gram, G->b_plus, G->b_minus);
    return G;
}

DiscElement DiscriminantGroup::zero() const {
    DiscElement e;
    e.G = this;
    e.c.assign(orders.size(), 0);
    return e;
}

static Int mod_pos(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

DiscElement DiscriminantGroup::from_image(const std::vector<Int>& w) const {
    size_t n = orders.size();
    DiscElement e;
    e.G = this;
    e.c.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        Int s = 0;
        for (size_t j = 0; j < n; ++j) s += snf.U[i][j] * w[j];
        e.c[i] = mod_pos(s, orders[i]);
    }
    return e;
}

DiscElement DiscriminantGroup::from_dual_vector(const std::vector<Rat>& v) const {
    size_t n = orders.size();
    std::vector<Int> w(n);
    for (size_t i = 0; i < n; ++i) {
        Rat s = 0;
        for (size_t j = 0; j < n; ++j) s += Rat(gram[i][j]) * v[j];
        if (denominator(s) != 1)
            throw std::invalid_argument("vector not in the dual lattice");
        w[i] = numerator(s);
    }
    return from_image(w);
}

std::vector<Rat> DiscriminantGroup::representative(const DiscElement& e) const {
    size_t n = orders.size();
    // w = U^{-1} c, v = gram^{-1} w
    std::vector<Rat> v(n, 0);
    std::vector<Int> w(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) w[i] += U_inv[i][j] * e.c[j];
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) v[i] += gram_inv[i][j] * Rat(w[j]);
    return v;
}

DiscElement DiscriminantGroup::add(const DiscElement& a, const DiscElement& b) const {
    DiscElement e;
    e.G = this;
    size_t n = orders.size();
    e.c.resize(n);
    for (size_t i = 0; i < n; ++i) e.c[i] = mod_pos(a.c[i] + b.c[i], orders[i]);
    return e;
}

DiscElement DiscriminantGroup::neg(const DiscElement& a) const {
    DiscElement e;
    e.G = this;
    size_t n = orders.size();
    e.c.resize(n);
    for (size_t i = 0; i < n; ++i) e.c[i] = mod_pos(-a.c[i], orders[i]);
    return e;
}

Rat DiscriminantGroup::Q(const DiscElement& e) const {
    auto v = representative(e);
    size_t n = orders.size();
    Rat q = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) q += v[i] * Rat(gram[i][j]) * v[j];
    return frac_mod1(q / 2);
}

Rat DiscriminantGroup::bilinear(const DiscElement& a, const DiscElement& b) const {
    auto va = representative(a), vb = representative(b);
    size_t n = orders.size();
    Rat s = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) s += va[i] * Rat(gram[i][j]) * vb[j];
    return frac_mod1(s);
}

long DiscriminantGroup::element_count() const { return size.convert_to<long>(); }

DiscElement DiscriminantGroup::element_at(long idx) const {
    DiscElement e;
    e.G = this;
    size_t n = orders.size();
    e.c.resize(n);
    for (size_t i = 0; i < n; ++i) {
        long d = orders[i].convert_to<long>();
        e.c[i] = idx % d;
        idx /= d;
    }
    return e;
}

long DiscriminantGroup::index_of(const DiscElement& e) const {
    long idx = 0, mult = 1;
    for (size_t i = 0; i < orders.size(); ++i) {
        idx += e.c[i].convert_to<long>() * mult;
        mult *= orders[i].convert_to<long>();
    }
    return idx;
}

IMat hmf_gram(long D) {
    if (!valid_discriminant(D)) throw std::invalid_argument("invalid discriminant");
    Rat t = omega_trace(D), n = omega_norm(D);
    IMat A(4, std::vector<Int>(4, 0));
    A[0][1] = A[1][0] = -1;
    A[2][2] = 2;
    A[2][3] = A[3][2] = numerator(t);
    A[3][3] = numerator(Rat(2 * n));
    return A;
}

CMat rho_generator(const DiscriminantGroup& G, WeilGen g, bool dual) {
    long n = G.element_count();
    CMat M(n, std::vector<Cplx>(n));
    if (g == WeilGen::T || g == WeilGen::T_inv) {
        for (long i = 0; i < n; ++i) {
            Rat q = G.Q(G.element_at(i));
            if (g == WeilGen::T_inv) q = -q;
            M[i][i] = unit_phase(to_real(q));
        }
    } else {
        // rho(S) e_beta = sqrt(i)^{b_minus - b_plus} / sqrt(|G|) *
        //                 sum_gamma e(-(gamma,beta)) e_gamma
        Real root_g = sqrt(Real(n));
        Rat sig_phase(G.b_minus - G.b_plus, 8);
        Cplx lead = unit_phase(to_real(sig_phase));
        for (long col = 0; col < n; ++col) {
            DiscElement beta = G.element_at(col);
            for (long row = 0; row < n; ++row) {
                DiscElement gamma = G.element_at(row);
                Rat b = G.bilinear(gamma, beta);
                Cplx e = unit_phase(to_real(-b));
                M[row][col] = lead * e * (Real(1) / root_g);
            }
        }
        if (g == WeilGen::S_inv) {
            // unitary: inverse = conjugate transpose
            CMat Mi(n, std::vector<Cplx>(n));
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j) Mi[i][j] = M[j][i].conj();
            M = Mi;
        }
    }
    if (dual) {
        for (auto& row : M)
            for (auto& e : row) e = e.conj();
    }
    return M;
}

std::vector<Cplx> apply_word(const DiscriminantGroup& G,
                             const std::vector<WeilGen>& word,
                             std::vector<Cplx> v, bool dual) {
    long n = G.element_count();
    for (WeilGen g : word) {
        CMat M = rho_generator(G, g, dual);
        std::vector<Cplx> out(n);
        for (long i = 0; i < n; ++i) {
            Cplx acc;
            for (long j = 0; j < n; ++j) acc += M[i][j] * v[j];
            out[i] = acc;
        }
        v = std::move(out);
    }
    return v;
}

}  // namespace hz
