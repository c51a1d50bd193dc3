#include "algdyn/snf.hpp"

#include <map>
#include <set>

namespace algdyn {

mpz_class SmithDecomposition::divisor_product() const {
    mpz_class p = 1;
    for (const auto& d : divisors) p *= d;
    return abs(p);
}

mpz_class SmithDecomposition::divisor_lcm() const {
    mpz_class l = 1;
    for (const auto& d : divisors) {
        if (d == 0) return 0;
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l;
}

static void maybe_mod(mpz_class& v, const mpz_class* mod) {
    if (mod) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), mod->get_mpz_t());
}

void SmithDecomposition::mul_U_inplace(std::vector<mpz_class>& z, const mpz_class* mod) const {
    // z * U = z * E_t * ... * E_1: right-multiply by the recorded row ops in
    // reverse order. For E = (row_i += c * row_j): z*E adds c*z_i to z_j.
    // With mod set, inputs are taken mod m and outputs are canonical residues.
    if (mod)
        for (auto& v : z) maybe_mod(v, mod);
    for (auto it = row_ops.rbegin(); it != row_ops.rend(); ++it) {
        switch (it->kind) {
            case OpKind::Swap: std::swap(z[static_cast<std::size_t>(it->i)],
                                         z[static_cast<std::size_t>(it->j)]); break;
            case OpKind::Negate: {
                auto& v = z[static_cast<std::size_t>(it->i)];
                v = -v;
                maybe_mod(v, mod);
                break;
            }
            case OpKind::AddMul: {
                auto& v = z[static_cast<std::size_t>(it->j)];
                v += it->c * z[static_cast<std::size_t>(it->i)];
                maybe_mod(v, mod);
                break;
            }
        }
    }
}

void SmithDecomposition::mul_V_inplace(std::vector<mpz_class>& z, const mpz_class* mod) const {
    // z * V = z * F_1 * ... * F_s: recorded order. For F = (col_i += c * col_j):
    // z*F adds c*z_j to z_i.
    // With mod set, inputs are taken mod m and outputs are canonical residues.
    if (mod)
        for (auto& v : z) maybe_mod(v, mod);
    for (const auto& op : col_ops) {
        switch (op.kind) {
            case OpKind::Swap: std::swap(z[static_cast<std::size_t>(op.i)],
                                         z[static_cast<std::size_t>(op.j)]); break;
            case OpKind::Negate: {
                auto& v = z[static_cast<std::size_t>(op.i)];
                v = -v;
                maybe_mod(v, mod);
                break;
            }
            case OpKind::AddMul: {
                auto& v = z[static_cast<std::size_t>(op.i)];
                v += op.c * z[static_cast<std::size_t>(op.j)];
                maybe_mod(v, mod);
                break;
            }
        }
    }
}

std::vector<mpz_class> SmithDecomposition::U_column(int j) const {
    // U e_j = E_t(...(E_1 e_j)...) applied as left-multiplications on a
    // column vector, in recorded order. For E = (row_i += c * row_j):
    // (E w)_i = w_i + c * w_j.
    std::vector<mpz_class> w(static_cast<std::size_t>(n), 0);
    w[static_cast<std::size_t>(j)] = 1;
    for (const auto& op : row_ops) {
        switch (op.kind) {
            case OpKind::Swap: std::swap(w[static_cast<std::size_t>(op.i)],
                                         w[static_cast<std::size_t>(op.j)]); break;
            case OpKind::Negate: {
                auto& v = w[static_cast<std::size_t>(op.i)];
                v = -v;
                break;
            }
            case OpKind::AddMul:
                w[static_cast<std::size_t>(op.i)] += op.c * w[static_cast<std::size_t>(op.j)];
                break;
        }
    }
    return w;
}

std::vector<mpz_class> SmithDecomposition::V_column(int j, const mpz_class* mod) const {
    // V e_j = F_1(...(F_s e_j)...): left-multiply by the recorded column ops
    // in reverse order. For F = (col_i += c * col_j): (F w)_j = w_j + c * w_i.
    std::vector<mpz_class> w(static_cast<std::size_t>(n), 0);
    w[static_cast<std::size_t>(j)] = 1;
    maybe_mod(w[static_cast<std::size_t>(j)], mod);
    for (auto it = col_ops.rbegin(); it != col_ops.rend(); ++it) {
        switch (it->kind) {
            case OpKind::Swap: std::swap(w[static_cast<std::size_t>(it->i)],
                                         w[static_cast<std::size_t>(it->j)]); break;
            case OpKind::Negate: {
                auto& v = w[static_cast<std::size_t>(it->i)];
                v = -v;
                maybe_mod(v, mod);
                break;
            }
            case OpKind::AddMul: {
                auto& v = w[static_cast<std::size_t>(it->j)];
                v += it->c * w[static_cast<std::size_t>(it->i)];
                maybe_mod(v, mod);
                break;
            }
        }
    }
    return w;
}

SparseIntMat SmithDecomposition::U_matrix() const {
    // Start from I and replay the row ops in recorded order (U = E_t ... E_1 I).
    std::vector<std::vector<mpz_class>> m(static_cast<std::size_t>(n),
                                          std::vector<mpz_class>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    for (const auto& op : row_ops) {
        switch (op.kind) {
            case OpKind::Swap:
                std::swap(m[static_cast<std::size_t>(op.i)], m[static_cast<std::size_t>(op.j)]);
                break;
            case OpKind::Negate:
                for (auto& v : m[static_cast<std::size_t>(op.i)]) v = -v;
                break;
            case OpKind::AddMul:
                for (int c = 0; c < n; ++c)
                    m[static_cast<std::size_t>(op.i)][static_cast<std::size_t>(c)] +=
                        op.c * m[static_cast<std::size_t>(op.j)][static_cast<std::size_t>(c)];
                break;
        }
    }
    SparseIntMat out = SparseIntMat::zero(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0)
                out.accumulate(r, c, m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    out.finalize();
    return out;
}

SparseIntMat SmithDecomposition::V_matrix() const {
    std::vector<std::vector<mpz_class>> m(static_cast<std::size_t>(n),
                                          std::vector<mpz_class>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    for (const auto& op : col_ops) {
        switch (op.kind) {
            case OpKind::Swap:
                for (int r = 0; r < n; ++r)
                    std::swap(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(op.i)],
                              m[static_cast<std::size_t>(r)][static_cast<std::size_t>(op.j)]);
                break;
            case OpKind::Negate:
                for (int r = 0; r < n; ++r)
                    m[static_cast<std::size_t>(r)][static_cast<std::size_t>(op.i)] =
                        -m[static_cast<std::size_t>(r)][static_cast<std::size_t>(op.i)];
                break;
            case OpKind::AddMul:
                for (int r = 0; r < n; ++r)
                    m[static_cast<std::size_t>(r)][static_cast<std::size_t>(op.i)] +=
                        op.c * m[static_cast<std::size_t>(r)][static_cast<std::size_t>(op.j)];
                break;
        }
    }
    SparseIntMat out = SparseIntMat::zero(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0)
                out.accumulate(r, c, m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    out.finalize();
    return out;
}

namespace {

// Sparse working copy with synchronized column index sets, plus the op log.
struct SnfWork {
    int n;
    std::vector<std::map<int, mpz_class>> rows;
    std::vector<std::set<int>> colrows;
    SmithDecomposition* out;

    explicit SnfWork(const SparseIntMat& a, SmithDecomposition* rec) : n(a.n), out(rec) {
        rows.resize(static_cast<std::size_t>(n));
        colrows.resize(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r)
            for (const auto& [c, v] : a.rows[static_cast<std::size_t>(r)]) {
                rows[static_cast<std::size_t>(r)][c] = v;
                colrows[static_cast<std::size_t>(c)].insert(r);
            }
    }

    mpz_class entry(int r, int c) const {
        auto it = rows[static_cast<std::size_t>(r)].find(c);
        return it == rows[static_cast<std::size_t>(r)].end() ? mpz_class(0) : it->second;
    }

    void set_entry(int r, int c, const mpz_class& v) {
        auto& row = rows[static_cast<std::size_t>(r)];
        if (v == 0) {
            if (row.erase(c)) colrows[static_cast<std::size_t>(c)].erase(r);
        } else {
            auto [it, inserted] = row.emplace(c, v);
            if (inserted)
                colrows[static_cast<std::size_t>(c)].insert(r);
            else
                it->second = v;
        }
    }

    // row_dst += c * row_src
    void add_row(int dst, int src, const mpz_class& c) {
        out->row_ops.push_back({OpKind::AddMul, dst, src, c});
        for (const auto& [col, v] : rows[static_cast<std::size_t>(src)]) {
            mpz_class nv = entry(dst, col) + c * v;
            set_entry(dst, col, nv);
        }
    }

    // col_dst += c * col_src
    void add_col(int dst, int src, const mpz_class& c) {
        out->col_ops.push_back({OpKind::AddMul, dst, src, c});
        std::vector<int> rs(colrows[static_cast<std::size_t>(src)].begin(),
                            colrows[static_cast<std::size_t>(src)].end());
        for (int r : rs) {
            mpz_class nv = entry(r, dst) + c * rows[static_cast<std::size_t>(r)].at(src);
            set_entry(r, dst, nv);
        }
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        out->row_ops.push_back({OpKind::Swap, i, j, 0});
        std::set<int> cols;
        for (const auto& [c, v] : rows[static_cast<std::size_t>(i)]) cols.insert(c);
        for (const auto& [c, v] : rows[static_cast<std::size_t>(j)]) cols.insert(c);
        std::swap(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(j)]);
        for (int c : cols) {
            auto& cr = colrows[static_cast<std::size_t>(c)];
            bool has_i = rows[static_cast<std::size_t>(i)].count(c) > 0;
            bool has_j = rows[static_cast<std::size_t>(j)].count(c) > 0;
            if (has_i) cr.insert(i); else cr.erase(i);
            if (has_j) cr.insert(j); else cr.erase(j);
        }
    }

    void swap_cols(int i, int j) {
        if (i == j) return;
        out->col_ops.push_back({OpKind::Swap, i, j, 0});
        std::set<int> rs = colrows[static_cast<std::size_t>(i)];
        for (int r : colrows[static_cast<std::size_t>(j)]) rs.insert(r);
        for (int r : rs) {
            auto& row = rows[static_cast<std::size_t>(r)];
            auto it_i = row.find(i);
            auto it_j = row.find(j);
            mpz_class vi = it_i == row.end() ? mpz_class(0) : it_i->second;
            mpz_class vj = it_j == row.end() ? mpz_class(0) : it_j->second;
            set_entry(r, i, vj);
            set_entry(r, j, vi);
        }
    }

    void negate_row(int i) {
        out->row_ops.push_back({OpKind::Negate, i, i, 0});
        for (auto& [c, v] : rows[static_cast<std::size_t>(i)]) v = -v;
    }
};

// Quotient nearest to a/b: |a - q*b| <= |b|/2.
mpz_class nearest_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_class twice = 2 * r;
    if (mpz_cmpabs(twice.get_mpz_t(), b.get_mpz_t()) >= 0) q += 1;
    return q;
}

}  // namespace

SmithDecomposition smith_normal_form(const SparseIntMat& a) {
    SmithDecomposition out;
    out.n = a.n;
    out.divisors.assign(static_cast<std::size_t>(a.n), 0);
    SnfWork w(a, &out);
    const int n = a.n;

    for (int k = 0; k < n; ++k) {
        // Pivot: smallest |value| in the active region; ties by row then col.
        int pr = -1, pc = -1;
        {
            bool found_unit = false;
            mpz_class best;
            for (int r = k; r < n && !found_unit; ++r) {
                for (const auto& [c, v] : w.rows[static_cast<std::size_t>(r)]) {
                    if (pr < 0 || mpz_cmpabs(v.get_mpz_t(), best.get_mpz_t()) < 0) {
                        pr = r;
                        pc = c;
                        best = v;
                        if (mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0) {
                            found_unit = true;
                            break;
                        }
                    }
                }
            }
        }
        if (pr < 0) break;  // all remaining divisors are zero
        w.swap_rows(k, pr);
        w.swap_cols(k, pc);

        // Clear row/column k; adopt any nonzero remainder as the new, smaller
        // pivot and retry until clean.
        for (;;) {
            bool again = false;
            mpz_class piv = w.entry(k, k);
            std::vector<int> col_rs(w.colrows[static_cast<std::size_t>(k)].begin(),
                                    w.colrows[static_cast<std::size_t>(k)].end());
            for (int r : col_rs) {
                if (r == k) continue;
                mpz_class v = w.entry(r, k);
                if (v == 0) continue;
                mpz_class q = nearest_div(v, piv);
                if (q != 0) w.add_row(r, k, -q);
                if (w.entry(r, k) != 0) {
                    w.swap_rows(k, r);
                    again = true;
                    break;
                }
            }
            if (again) continue;
            std::vector<int> row_cs;
            for (const auto& [c, v] : w.rows[static_cast<std::size_t>(k)])
                if (c != k) row_cs.push_back(c);
            for (int c : row_cs) {
                mpz_class v = w.entry(k, c);
                if (v == 0) continue;
                mpz_class q = nearest_div(v, piv);
                if (q != 0) w.add_col(c, k, -q);
                if (w.entry(k, c) != 0) {
                    w.swap_cols(k, c);
                    again = true;
                    break;
                }
            }
            if (again) continue;
            if (w.colrows[static_cast<std::size_t>(k)].size() == 1 &&
                w.rows[static_cast<std::size_t>(k)].size() == 1)
                break;
        }
        out.divisors[static_cast<std::size_t>(k)] = w.entry(k, k);
    }

    // Sign normalization.
    for (int i = 0; i < n; ++i) {
        if (out.divisors[static_cast<std::size_t>(i)] < 0) {
            w.negate_row(i);
            out.divisors[static_cast<std::size_t>(i)] =
                -out.divisors[static_cast<std::size_t>(i)];
        }
    }

    // Move zero divisors to the end (swap both rows and columns to keep the
    // matrix diagonal).
    for (int i = 0; i < n; ++i) {
        if (out.divisors[static_cast<std::size_t>(i)] != 0) continue;
        int nz = -1;
        for (int j = i + 1; j < n; ++j)
            if (out.divisors[static_cast<std::size_t>(j)] != 0) {
                nz = j;
                break;
            }
        if (nz < 0) break;
        w.swap_rows(i, nz);
        w.swap_cols(i, nz);
        std::swap(out.divisors[static_cast<std::size_t>(i)],
                  out.divisors[static_cast<std::size_t>(nz)]);
    }

    // Divisibility chain: for i < j with d_i not dividing d_j, replace
    // (d_i, d_j) by (gcd, lcm) via recorded elementary ops on the 2x2 block.
    for (int i = 0; i < n; ++i) {
        if (out.divisors[static_cast<std::size_t>(i)] == 0) break;
        for (int j = i + 1; j < n; ++j) {
            const mpz_class di = out.divisors[static_cast<std::size_t>(i)];
            const mpz_class dj = out.divisors[static_cast<std::size_t>(j)];
            if (dj == 0 || dj % di == 0) continue;

            // Put d_j into column i (block becomes [[d_i, 0], [d_j, d_j]]).
            w.add_col(i, j, 1);
            // Euclid on rows i, j restricted to column i: reduce row i by the
            // nearest multiple of row j, then swap, so |entry(j, i)| at least
            // halves per round and must vanish.
            for (;;) {
                mpz_class vi = w.entry(i, i);
                mpz_class vj = w.entry(j, i);
                if (vj == 0) break;
                mpz_class q = nearest_div(vi, vj);
                if (q != 0) w.add_row(i, j, -q);
                w.swap_rows(i, j);
            }
            mpz_class g = w.entry(i, i);
            if (g < 0) {
                w.negate_row(i);
                g = -g;
            }
            // Clear the off-diagonal remnant in row i (col j); g divides it.
            mpz_class x = w.entry(i, j);
            if (x != 0) {
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
                w.add_col(j, i, -q);
            }
            mpz_class y = w.entry(j, j);
            if (y < 0) {
                w.negate_row(j);
                y = -y;
            }
            if (w.entry(j, i) != 0 || w.entry(i, j) != 0)
                fail("det_mismatch", "divisor chain fixup failed to rediagonalize");
            out.divisors[static_cast<std::size_t>(i)] = g;
            out.divisors[static_cast<std::size_t>(j)] = y;
            // d_i changed; rescan from the start of the inner loop.
            j = i;
        }
    }

    return out;
}

}  // namespace algdyn
