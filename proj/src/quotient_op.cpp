#include "algdyn/quotient_op.hpp"

#include <algorithm>

namespace algdyn {

SparseIntMat right_convolution_matrix(const RingElement& g, const FiniteQuotient& q) {
    if (!(g.spec() == q.spec())) fail("family_mismatch", "ring element from a different group");
    if (!g.integer_valued())
        fail("non_integer", "convolution matrices require integer coefficients");
    int n = static_cast<int>(q.index());
    SparseIntMat m = SparseIntMat::zero(n);
    for (const auto& [beta, c] : g.coeffs()) {
        std::vector<int> table = q.translation_table(beta);
        mpz_class cz = c.get_num();
        for (int r = 0; r < n; ++r)
            m.accumulate(r, table[static_cast<std::size_t>(r)], cz);
    }
    m.finalize();
    return m;
}

SparseIntMat convolution_matrix(const RingElement& f, const FiniteQuotient& q) {
    return right_convolution_matrix(adjoint(f), q);
}

template <typename T>
static std::vector<T> row_vec_mul_impl(const std::vector<T>& v, const SparseIntMat& a) {
    if (static_cast<int>(v.size()) != a.n) fail("out_of_range", "dimension mismatch");
    std::vector<T> out(v.size(), T(0));
    for (int r = 0; r < a.n; ++r)
        for (const auto& [c, val] : a.rows[static_cast<std::size_t>(r)])
            out[static_cast<std::size_t>(c)] += v[static_cast<std::size_t>(r)] * val;
    return out;
}

std::vector<mpz_class> row_vec_mul(const std::vector<mpz_class>& v, const SparseIntMat& a) {
    return row_vec_mul_impl(v, a);
}

std::vector<mpq_class> row_vec_mul(const std::vector<mpq_class>& v, const SparseIntMat& a) {
    return row_vec_mul_impl(v, a);
}

mpz_class fixed_point_count(const RingElement& f, const FiniteQuotient& q,
                            const DetOptions& opt) {
    SparseIntMat m = convolution_matrix(f, q);
    mpz_class det = exact_determinant(m, opt);
    if (det == 0)
        fail("degenerate_quotient", "singular convolution matrix on " + q.describe());
    return abs(det);
}

GrowthSeries growth_rate_series(const RingElement& f, const GroupSpec& spec,
                                const std::vector<QuotientParams>& family,
                                const DetOptions& opt) {
    if (!(f.spec() == spec)) fail("family_mismatch", "ring element from a different group");
    GrowthSeries series;
    for (const auto& params : family) {
        FiniteQuotient q = build_quotient(spec, params);
        GrowthPoint p;
        p.quotient = q.describe();
        p.index = q.index();
        p.count = fixed_point_count(f, q, opt);
        p.log_count_over_index = log_abs_mpz(p.count) / static_cast<double>(p.index);
        series.points.push_back(std::move(p));
    }
    std::size_t half = series.points.size() - (series.points.size() + 1) / 2;
    double tail = 0.0;
    for (std::size_t i = half; i < series.points.size(); ++i)
        tail = std::max(tail, series.points[i].log_count_over_index);
    series.tail_max = tail;
    return series;
}

FixedPointSpace::FixedPointSpace(const RingElement& f, const FiniteQuotient& q)
    : q_(q), f_(f), mat_(convolution_matrix(f, q)), snf_(smith_normal_form(mat_)) {
    count_ = snf_.divisor_product();
    den_ = snf_.divisor_lcm();
    if (den_ == 0)
        fail("degenerate_quotient", "singular convolution matrix on " + q.describe());
    int n = snf_.n;
    for (int i = 0; i < n; ++i)
        if (snf_.divisors[static_cast<std::size_t>(i)] > 1) nontrivial_.push_back(i);
    rows_.reserve(nontrivial_.size());
    cols_.reserve(nontrivial_.size());
    for (int i : nontrivial_) {
        mpz_class scale;
        mpz_divexact(scale.get_mpz_t(), den_.get_mpz_t(),
                     snf_.divisors[static_cast<std::size_t>(i)].get_mpz_t());
        std::vector<mpz_class> row(static_cast<std::size_t>(n), 0);
        row[static_cast<std::size_t>(i)] = scale;
        snf_.mul_U_inplace(row, &den_);
        rows_.push_back(std::move(row));
        cols_.push_back(snf_.V_column(i, &den_));
    }
}

// x * D for x = sum_i k_i * rows_[i] / D.
std::vector<mpz_class> FixedPointSpace::combine(const std::vector<mpz_class>& ks) const {
    std::vector<mpz_class> w(static_cast<std::size_t>(snf_.n), 0);
    for (std::size_t t = 0; t < ks.size(); ++t) {
        if (ks[t] == 0) continue;
        const auto& row = rows_[t];
        for (std::size_t j = 0; j < w.size(); ++j)
            if (row[j] != 0) w[j] += ks[t] * row[j];
    }
    for (auto& v : w) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), den_.get_mpz_t());
    return w;
}

TorusPoint FixedPointSpace::sample(Rng& rng) const {
    std::vector<mpz_class> ks;
    ks.reserve(nontrivial_.size());
    for (int i : nontrivial_)
        ks.push_back(rng.below_mpz(snf_.divisors[static_cast<std::size_t>(i)]));
    TorusPoint x;
    x.den = den_;
    x.num = combine(ks);
    return x;
}

std::vector<mpz_class> FixedPointSpace::sample_at(Rng& rng, const std::vector<int>& coords) const {
    std::vector<mpz_class> ks;
    ks.reserve(nontrivial_.size());
    for (int i : nontrivial_)
        ks.push_back(rng.below_mpz(snf_.divisors[static_cast<std::size_t>(i)]));
    std::vector<mpz_class> out;
    out.reserve(coords.size());
    for (int j : coords) {
        if (j < 0 || j >= snf_.n) fail("out_of_range", "coordinate out of range");
        mpz_class acc = 0;
        for (std::size_t t = 0; t < ks.size(); ++t)
            acc += ks[t] * rows_[t][static_cast<std::size_t>(j)];
        mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), den_.get_mpz_t());
        out.push_back(std::move(acc));
    }
    return out;
}

TorusPoint FixedPointSpace::xi(const std::vector<mpz_class>& h) const {
    if (static_cast<int>(h.size()) != snf_.n)
        fail("out_of_range", "vector length does not match quotient index");
    // (h V)_i mod d_i picks the cyclic coordinate k_i; components with d_i = 1
    // are integers and vanish mod 1.
    std::vector<mpz_class> ks;
    ks.reserve(nontrivial_.size());
    for (std::size_t t = 0; t < nontrivial_.size(); ++t) {
        const auto& col = cols_[t];
        mpz_class acc = 0;
        for (std::size_t j = 0; j < col.size(); ++j)
            if (col[j] != 0 && h[j] != 0) acc += h[j] * col[j];
        mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(),
                   snf_.divisors[static_cast<std::size_t>(nontrivial_[t])].get_mpz_t());
        ks.push_back(std::move(acc));
    }
    TorusPoint x;
    x.den = den_;
    x.num = combine(ks);
    return x;
}

std::vector<TorusPoint> FixedPointSpace::enumerate(std::uint64_t cap) const {
    if (count_ > static_cast<unsigned long>(cap))
        fail("cap_exceeded", "fixed-point space too large to enumerate");
    std::size_t m = nontrivial_.size();
    std::vector<mpz_class> k(m, 0);
    std::vector<TorusPoint> out;
    out.reserve(count_.get_ui());
    for (;;) {
        TorusPoint x;
        x.den = den_;
        x.num = combine(k);
        out.push_back(std::move(x));
        // Odometer: last index fastest.
        std::size_t pos = m;
        bool advanced = false;
        while (pos > 0) {
            --pos;
            k[pos] += 1;
            if (k[pos] < snf_.divisors[static_cast<std::size_t>(nontrivial_[pos])]) {
                advanced = true;
                break;
            }
            k[pos] = 0;
        }
        if (!advanced) return out;
    }
}

}  // namespace algdyn
