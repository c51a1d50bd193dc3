#include "algdyn/intmat.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace algdyn {

SparseIntMat SparseIntMat::zero(int n) {
    SparseIntMat m;
    m.n = n;
    m.rows.assign(static_cast<std::size_t>(n), {});
    return m;
}

SparseIntMat SparseIntMat::identity(int n) {
    SparseIntMat m = zero(n);
    for (int i = 0; i < n; ++i) m.rows[static_cast<std::size_t>(i)].push_back({i, 1});
    return m;
}

void SparseIntMat::accumulate(int r, int c, const mpz_class& v) {
    if (r < 0 || r >= n || c < 0 || c >= n) fail("out_of_range", "matrix index out of range");
    rows[static_cast<std::size_t>(r)].push_back({c, v});
}

void SparseIntMat::finalize() {
    for (auto& row : rows) {
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, mpz_class>> merged;
        for (auto& [c, v] : row) {
            if (!merged.empty() && merged.back().first == c)
                merged.back().second += v;
            else
                merged.push_back({c, v});
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [](const auto& e) { return e.second == 0; }),
                     merged.end());
        row = std::move(merged);
    }
}

mpz_class SparseIntMat::entry(int r, int c) const {
    for (const auto& [col, v] : rows[static_cast<std::size_t>(r)])
        if (col == c) return v;
    return 0;
}

std::vector<mpz_class> SparseIntMat::dense() const {
    std::vector<mpz_class> d(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r)
        for (const auto& [c, v] : rows[static_cast<std::size_t>(r)])
            d[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) +
              static_cast<std::size_t>(c)] = v;
    return d;
}

std::size_t SparseIntMat::nnz() const {
    std::size_t t = 0;
    for (const auto& row : rows) t += row.size();
    return t;
}

SparseIntMat transpose(const SparseIntMat& a) {
    SparseIntMat t = SparseIntMat::zero(a.n);
    for (int r = 0; r < a.n; ++r)
        for (const auto& [c, v] : a.rows[static_cast<std::size_t>(r)])
            t.rows[static_cast<std::size_t>(c)].push_back({r, v});
    t.finalize();
    return t;
}

SparseIntMat mat_mul(const SparseIntMat& a, const SparseIntMat& b) {
    if (a.n != b.n) fail("out_of_range", "dimension mismatch");
    SparseIntMat out = SparseIntMat::zero(a.n);
    for (int r = 0; r < a.n; ++r) {
        std::map<int, mpz_class> acc;
        for (const auto& [k, va] : a.rows[static_cast<std::size_t>(r)])
            for (const auto& [c, vb] : b.rows[static_cast<std::size_t>(k)]) acc[c] += va * vb;
        for (auto& [c, v] : acc)
            if (v != 0) out.rows[static_cast<std::size_t>(r)].push_back({c, v});
    }
    return out;
}

mpz_class det_bareiss(const SparseIntMat& a) {
    int n = a.n;
    if (n == 0) return 1;
    std::vector<mpz_class> m = a.dense();
    auto at = [&](int r, int c) -> mpz_class& {
        return m[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(c)];
    };
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        // Smallest nonzero pivot keeps intermediate growth down.
        int piv = -1;
        for (int r = k; r < n; ++r) {
            if (at(r, k) == 0) continue;
            if (piv < 0 || mpz_cmpabs(at(r, k).get_mpz_t(), at(piv, k).get_mpz_t()) < 0) piv = r;
        }
        if (piv < 0) return 0;
        if (piv != k) {
            for (int c = k; c < n; ++c) std::swap(at(piv, c), at(k, c));
            sign = -sign;
        }
        for (int r = k + 1; r < n; ++r) {
            for (int c = k + 1; c < n; ++c) {
                mpz_class num = at(r, c) * at(k, k) - at(r, k) * at(k, c);
                mpz_divexact(at(r, c).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            at(r, k) = 0;
        }
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Modular determinants.

static inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

static std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, p);
        b = mulmod_u64(b, b, p);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                            31ULL, 37ULL}) {
        if (v % q == 0) return v == q;
    }
    std::uint64_t d = v - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t wit : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                              31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(wit, d, v);
        if (x == 1 || x == v - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, v);
            if (x == v - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Fixed descending list of ~62-bit primes, extended on demand. Returns a
// copy of the prefix so callers never hold references across reallocations.
static std::vector<std::uint64_t> prime_prefix(std::size_t count) {
    static std::vector<std::uint64_t> pool;
    static std::uint64_t cursor = (1ULL << 62) - 1;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (pool.size() < count) {
        while (!is_prime_u64(cursor)) cursor -= 2;
        pool.push_back(cursor);
        cursor -= 2;
    }
    return {pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count)};
}

static std::uint64_t det_mod_prime_dense(const SparseIntMat& a, std::uint64_t p) {
    int n = a.n;
    std::vector<std::uint64_t> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    for (int r = 0; r < n; ++r)
        for (const auto& [c, v] : a.rows[static_cast<std::size_t>(r)])
            m[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) +
              static_cast<std::size_t>(c)] = mpz_fdiv_ui(v.get_mpz_t(), p);
    auto at = [&](int r, int c) -> std::uint64_t& {
        return m[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(c)];
    };
    std::uint64_t det = 1;
    bool neg = false;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int r = k; r < n; ++r)
            if (at(r, k) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != k) {
            for (int c = k; c < n; ++c) std::swap(at(piv, c), at(k, c));
            neg = !neg;
        }
        std::uint64_t pv = at(k, k);
        det = mulmod_u64(det, pv, p);
        std::uint64_t inv = powmod_u64(pv, p - 2, p);
        for (int r = k + 1; r < n; ++r) {
            std::uint64_t f = at(r, k);
            if (f == 0) continue;
            f = mulmod_u64(f, inv, p);
            for (int c = k; c < n; ++c) {
                std::uint64_t sub = mulmod_u64(f, at(k, c), p);
                std::uint64_t cur = at(r, c);
                at(r, c) = cur >= sub ? cur - sub : cur + p - sub;
            }
        }
    }
    return neg ? (p - det) % p : det;
}

// Sparse elimination with a minimum-degree style pivot rule; intended for
// large structured matrices (quotient convolution operators).
static std::uint64_t det_mod_prime_sparse(const SparseIntMat& a, std::uint64_t p) {
    int n = a.n;
    std::vector<std::vector<std::pair<int, std::uint64_t>>> rows(static_cast<std::size_t>(n));
    std::vector<std::set<int>> colrows(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        for (const auto& [c, v] : a.rows[static_cast<std::size_t>(r)]) {
            std::uint64_t rv = mpz_fdiv_ui(v.get_mpz_t(), p);
            if (rv != 0) {
                rows[static_cast<std::size_t>(r)].push_back({c, rv});
                colrows[static_cast<std::size_t>(c)].insert(r);
            }
        }
    }

    std::vector<bool> row_done(static_cast<std::size_t>(n), false);
    std::vector<bool> col_done(static_cast<std::size_t>(n), false);
    std::vector<int> pivot_row_of_col(static_cast<std::size_t>(n), -1);
    // Active columns ordered by fill degree; rebuilt lazily via scan.
    std::uint64_t det = 1;

    for (int step = 0; step < n; ++step) {
        int best_col = -1;
        std::size_t best_deg = ~std::size_t(0);
        for (int c = 0; c < n; ++c) {
            if (col_done[static_cast<std::size_t>(c)]) continue;
            std::size_t deg = colrows[static_cast<std::size_t>(c)].size();
            if (deg == 0) return 0;  // structurally singular remainder
            if (deg < best_deg) {
                best_deg = deg;
                best_col = c;
                if (deg == 1) break;
            }
        }
        int best_row = -1;
        std::size_t best_nnz = ~std::size_t(0);
        for (int r : colrows[static_cast<std::size_t>(best_col)]) {
            std::size_t sz = rows[static_cast<std::size_t>(r)].size();
            if (sz < best_nnz) {
                best_nnz = sz;
                best_row = r;
            }
        }

        auto& prow = rows[static_cast<std::size_t>(best_row)];
        std::uint64_t pval = 0;
        for (const auto& [c, v] : prow)
            if (c == best_col) pval = v;
        det = mulmod_u64(det, pval, p);
        std::uint64_t pinv = powmod_u64(pval, p - 2, p);

        row_done[static_cast<std::size_t>(best_row)] = true;
        col_done[static_cast<std::size_t>(best_col)] = true;
        pivot_row_of_col[static_cast<std::size_t>(best_col)] = best_row;
        for (const auto& [c, v] : prow) colrows[static_cast<std::size_t>(c)].erase(best_row);

        std::vector<int> victims(colrows[static_cast<std::size_t>(best_col)].begin(),
                                 colrows[static_cast<std::size_t>(best_col)].end());
        for (int r : victims) {
            auto& row = rows[static_cast<std::size_t>(r)];
            std::uint64_t rv = 0;
            for (const auto& [c, v] : row)
                if (c == best_col) rv = v;
            std::uint64_t factor = mulmod_u64(rv, pinv, p);
            // row <- row - factor * pivot_row (merge of two sorted lists)
            std::vector<std::pair<int, std::uint64_t>> merged;
            merged.reserve(row.size() + prow.size());
            std::size_t i = 0, j = 0;
            while (i < row.size() || j < prow.size()) {
                int ci = i < row.size() ? row[i].first : n;
                int cj = j < prow.size() ? prow[j].first : n;
                if (ci < cj) {
                    merged.push_back(row[i]);
                    ++i;
                } else if (cj < ci) {
                    std::uint64_t nv = p - mulmod_u64(factor, prow[j].second, p);
                    if (nv == p) nv = 0;
                    if (nv != 0) {
                        merged.push_back({cj, nv});
                        colrows[static_cast<std::size_t>(cj)].insert(r);
                    }
                    ++j;
                } else {
                    std::uint64_t sub = mulmod_u64(factor, prow[j].second, p);
                    std::uint64_t cur = row[i].second;
                    std::uint64_t nv = cur >= sub ? cur - sub : cur + p - sub;
                    if (nv != 0)
                        merged.push_back({ci, nv});
                    else
                        colrows[static_cast<std::size_t>(ci)].erase(r);
                    ++i;
                    ++j;
                }
            }
            row = std::move(merged);
        }
        prow.clear();
    }

    // Sign of the pivot permutation (column -> row).
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    bool neg = false;
    for (int c = 0; c < n; ++c) {
        if (seen[static_cast<std::size_t>(c)]) continue;
        int len = 0;
        int cur = c;
        while (!seen[static_cast<std::size_t>(cur)]) {
            seen[static_cast<std::size_t>(cur)] = true;
            cur = pivot_row_of_col[static_cast<std::size_t>(cur)];
            ++len;
        }
        if (len % 2 == 0) neg = !neg;
    }
    return neg ? (p - det) % p : det;
}

std::uint64_t det_mod_prime(const SparseIntMat& a, std::uint64_t p) {
    if (a.n <= 384) return det_mod_prime_dense(a, p);
    return det_mod_prime_sparse(a, p);
}

mpz_class hadamard_bound(const SparseIntMat& a) {
    mpz_class bound = 1;
    for (const auto& row : a.rows) {
        mpz_class s = 0;
        for (const auto& [c, v] : row) s += v * v;
        if (s == 0) return 0;
        mpz_class r = sqrt(s);
        if (r * r < s) r += 1;
        bound *= r;
    }
    return bound;
}

mpz_class det_modular(const SparseIntMat& a, int threads) {
    if (a.n == 0) return 1;
    mpz_class bound = hadamard_bound(a);
    if (bound == 0) return 0;

    mpz_class target = 2 * bound + 1;
    std::size_t bits = mpz_sizeinbase(target.get_mpz_t(), 2);
    std::vector<std::uint64_t> primes = prime_prefix(bits / 61 + 2);
    std::size_t count = 0;
    {
        mpz_class prod = 1;
        while (prod < target) {
            if (count >= primes.size()) primes = prime_prefix(primes.size() + 8);
            prod *= static_cast<unsigned long>(primes[count]);
            ++count;
        }
    }
    if (primes.size() < count + 1) primes = prime_prefix(count + 1);  // spare verification prime

    std::vector<std::uint64_t> residues(count + 1);
    parallel_chunks(static_cast<int>(count) + 1, threads, [&](int i) {
        residues[static_cast<std::size_t>(i)] =
            det_mod_prime(a, primes[static_cast<std::size_t>(i)]);
    });

    // CRT combine in fixed order.
    mpz_class x = 0, mod = 1;
    for (std::size_t i = 0; i < count; ++i) {
        unsigned long p = static_cast<unsigned long>(primes[i]);
        unsigned long xr = mpz_fdiv_ui(x.get_mpz_t(), p);
        unsigned long mr = mpz_fdiv_ui(mod.get_mpz_t(), p);
        std::uint64_t diff = (residues[i] + p - xr) % p;
        std::uint64_t inv = powmod_u64(mr, p - 2, p);
        std::uint64_t t = mulmod_u64(diff, inv, p);
        x += mod * mpz_class(static_cast<unsigned long>(t));
        mod *= p;
    }
    if (x > mod / 2) x -= mod;

    // Independent re-check against the spare prime (mpz_fdiv_ui returns the
    // nonnegative residue for negative x as well).
    {
        unsigned long p = static_cast<unsigned long>(primes[count]);
        if (mpz_fdiv_ui(x.get_mpz_t(), p) != residues[count])
            fail("det_mismatch", "modular determinant failed the verification prime");
    }
    return x;
}

mpz_class exact_determinant(const SparseIntMat& a, const DetOptions& opt) {
    mpz_class modular = det_modular(a, opt.threads);
    if (a.n <= opt.dual_route_cap) {
        mpz_class direct = det_bareiss(a);
        if (direct != modular)
            fail("det_mismatch", "independent determinant routes disagree");
    }
    return modular;
}

}  // namespace algdyn
