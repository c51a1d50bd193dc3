#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "algdyn/intmat.hpp"
#include "algdyn/quotient_op.hpp"  // row_vec_mul
#include "algdyn/rng.hpp"
#include "algdyn/snf.hpp"

using namespace algdyn;

namespace {

SparseIntMat from_dense(int n, const std::vector<long>& vals) {
    SparseIntMat m = SparseIntMat::zero(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            long v = vals[static_cast<std::size_t>(r * n + c)];
            if (v) m.accumulate(r, c, v);
        }
    m.finalize();
    return m;
}

SparseIntMat random_mat(Rng& rng, int dim, int spread) {
    SparseIntMat m = SparseIntMat::zero(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            long v = static_cast<long>(rng.below(static_cast<std::uint64_t>(2 * spread + 1))) -
                     spread;
            if (v) m.accumulate(r, c, v);
        }
    m.finalize();
    return m;
}

// Circulant of f = a - 2e on Z/n: row i has -2 at i and 1 at i+1 mod n.
SparseIntMat circulant_2n(int n) {
    SparseIntMat m = SparseIntMat::zero(n);
    for (int i = 0; i < n; ++i) {
        m.accumulate(i, i, -2);
        m.accumulate(i, (i + 1) % n, 1);
    }
    m.finalize();
    return m;
}

}  // namespace

TEST_CASE("U A V equals the divisor diagonal and U, V are unimodular") {
    Rng rng(19);
    for (int t = 0; t < 40; ++t) {
        int dim = 1 + static_cast<int>(rng.below(7));
        SparseIntMat a = random_mat(rng, dim, 5);
        SmithDecomposition s = smith_normal_form(a);
        REQUIRE(s.n == dim);

        SparseIntMat u = s.U_matrix();
        SparseIntMat v = s.V_matrix();
        CHECK(abs(det_bareiss(u)) == 1);
        CHECK(abs(det_bareiss(v)) == 1);

        SparseIntMat prod = mat_mul(mat_mul(u, a), v);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                CHECK(prod.entry(i, j) == (i == j ? s.divisors[static_cast<std::size_t>(i)] : 0));

        // Divisibility chain and determinant identity.
        for (int i = 0; i + 1 < dim; ++i) {
            const mpz_class& d = s.divisors[static_cast<std::size_t>(i)];
            const mpz_class& e = s.divisors[static_cast<std::size_t>(i + 1)];
            CHECK(d >= 0);
            if (d != 0) CHECK(e % d == 0);
        }
        CHECK(s.divisor_product() == abs(det_bareiss(a)));
    }
}

TEST_CASE("known Smith forms") {
    {
        SmithDecomposition s = smith_normal_form(from_dense(2, {2, 0, 0, 6}));
        CHECK(s.divisors == std::vector<mpz_class>{2, 6});
    }
    {
        // gcd mixing: diag(2,3) ~ diag(1,6).
        SmithDecomposition s = smith_normal_form(from_dense(2, {2, 0, 0, 3}));
        CHECK(s.divisors == std::vector<mpz_class>{1, 6});
    }
    {
        SmithDecomposition s = smith_normal_form(from_dense(2, {1, 2, 2, 4}));
        CHECK(s.divisors == std::vector<mpz_class>{1, 0});
        CHECK(s.divisor_lcm() == 0);
    }
}

TEST_CASE("circulant divisors multiply to 2^n - 1") {
    for (int n : {1, 2, 3, 5, 8, 13}) {
        SmithDecomposition s = smith_normal_form(circulant_2n(n));
        CHECK(s.divisor_product() == (mpz_class(1) << n) - 1);
        CHECK(s.divisor_lcm() != 0);
    }
}

TEST_CASE("operation replays match the materialized matrices") {
    Rng rng(29);
    for (int t = 0; t < 30; ++t) {
        int dim = 1 + static_cast<int>(rng.below(6));
        SparseIntMat a = random_mat(rng, dim, 4);
        SmithDecomposition s = smith_normal_form(a);
        SparseIntMat u = s.U_matrix();
        SparseIntMat v = s.V_matrix();

        std::vector<mpz_class> z;
        for (int i = 0; i < dim; ++i)
            z.emplace_back(static_cast<long>(rng.below(19)) - 9);

        std::vector<mpz_class> zu = z;
        s.mul_U_inplace(zu, nullptr);
        CHECK(zu == row_vec_mul(z, u));

        std::vector<mpz_class> zv = z;
        s.mul_V_inplace(zv, nullptr);
        CHECK(zv == row_vec_mul(z, v));

        for (int j = 0; j < dim; ++j) {
            std::vector<mpz_class> ucol = s.U_column(j);
            std::vector<mpz_class> vcol = s.V_column(j);
            for (int i = 0; i < dim; ++i) {
                CHECK(ucol[static_cast<std::size_t>(i)] == u.entry(i, j));
                CHECK(vcol[static_cast<std::size_t>(i)] == v.entry(i, j));
            }
        }

        // Modular replay reduces every intermediate; results agree mod m.
        mpz_class mod(97);
        std::vector<mpz_class> zm = z;
        s.mul_U_inplace(zm, &mod);
        for (int i = 0; i < dim; ++i) {
            mpz_class want = zu[static_cast<std::size_t>(i)] % mod;
            if (want < 0) want += mod;
            CHECK(zm[static_cast<std::size_t>(i)] == want);
        }
        std::vector<mpz_class> vc = s.V_column(dim - 1, &mod);
        std::vector<mpz_class> vfull = s.V_column(dim - 1);
        for (int i = 0; i < dim; ++i) {
            mpz_class want = vfull[static_cast<std::size_t>(i)] % mod;
            if (want < 0) want += mod;
            CHECK(vc[static_cast<std::size_t>(i)] == want);
        }
    }
}
