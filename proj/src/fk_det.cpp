#include "algdyn/fk_det.hpp"

#include <cmath>
#include <complex>

namespace algdyn {

namespace {

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// Coefficients flattened for the hot loop.
struct FlatSymbol {
    std::vector<std::vector<std::int64_t>> exponents;
    std::vector<double> coeffs;
    int dim = 0;
};

FlatSymbol flatten(const RingElement& f) {
    if (f.spec().family != GroupFamily::FreeAbelian)
        fail("family_mismatch", "character evaluation needs a free abelian group");
    FlatSymbol s;
    s.dim = f.spec().rank;
    for (const auto& [g, c] : f.coeffs()) {
        s.exponents.push_back(g.payload());
        s.coeffs.push_back(c.get_d());
    }
    return s;
}

std::complex<double> eval_symbol(const FlatSymbol& s, const std::vector<double>& theta) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t t = 0; t < s.coeffs.size(); ++t) {
        double phase = 0.0;
        for (int j = 0; j < s.dim; ++j)
            phase += theta[static_cast<std::size_t>(j)] *
                     static_cast<double>(s.exponents[t][static_cast<std::size_t>(j)]);
        phase -= std::floor(phase);
        double ang = 2.0 * M_PI * phase;
        acc += s.coeffs[t] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return acc;
}

}  // namespace

CharacterDet character_determinant_abelian(const RingElement& f,
                                           const std::vector<std::int64_t>& moduli) {
    FlatSymbol s = flatten(f);
    if (static_cast<int>(moduli.size()) != s.dim)
        fail("config_invalid", "need one modulus per coordinate");
    std::int64_t total = 1;
    for (auto m : moduli) {
        if (m < 1) fail("config_invalid", "moduli must be >= 1");
        total *= m;
        if (total > (1 << 24)) fail("cap_exceeded", "character grid too large");
    }

    // Exact reconstruction is worthwhile only while the product of |F| values
    // stays well inside double precision.
    mpq_class norm = l1_norm(f);
    bool want_exact =
        total <= 12 && std::pow(norm.get_d() + 1.0, static_cast<double>(total)) < 1e15;
    std::complex<long double> prod{1.0L, 0.0L};

    KahanSum logsum;
    double max_abs_log = 0.0;
    std::vector<std::int64_t> k(static_cast<std::size_t>(s.dim), 0);
    std::vector<double> theta(static_cast<std::size_t>(s.dim), 0.0);
    for (std::int64_t step = 0; step < total; ++step) {
        for (int j = 0; j < s.dim; ++j)
            theta[static_cast<std::size_t>(j)] =
                static_cast<double>(k[static_cast<std::size_t>(j)]) /
                static_cast<double>(moduli[static_cast<std::size_t>(j)]);
        std::complex<double> v = eval_symbol(s, theta);
        double mag = std::abs(v);
        if (mag < 1e-12)
            fail("degenerate_quotient", "character value vanishes; determinant is 0");
        double lg = std::log(mag);
        logsum.add(lg);
        max_abs_log = std::max(max_abs_log, std::fabs(lg));
        if (want_exact) prod *= std::complex<long double>(v.real(), v.imag());
        // Mixed-radix increment, last coordinate fastest.
        for (int j = s.dim - 1; j >= 0; --j) {
            if (++k[static_cast<std::size_t>(j)] < moduli[static_cast<std::size_t>(j)]) break;
            k[static_cast<std::size_t>(j)] = 0;
        }
    }

    CharacterDet out;
    out.log_abs = logsum.sum;
    out.err_bound =
        static_cast<double>(total) * (max_abs_log + 2.0) * 4.0e-15;  // crude forward bound
    if (want_exact) {
        long double mag = std::abs(prod);
        long long rounded = llroundl(mag);
        if (std::fabs(static_cast<double>(mag - static_cast<long double>(rounded))) < 0.01)
            out.exact = mpz_class(static_cast<long>(rounded));
    }
    return out;
}

double mahler_measure(const RingElement& f, std::int64_t grid_per_dim) {
    FlatSymbol s = flatten(f);
    if (grid_per_dim < 1) fail("out_of_range", "grid must be >= 1");
    double total_d = std::pow(static_cast<double>(grid_per_dim), s.dim);
    if (total_d > static_cast<double>(1LL << 22))
        fail("cap_exceeded", "quadrature grid too large");
    std::int64_t total = 1;
    for (int j = 0; j < s.dim; ++j) total *= grid_per_dim;

    KahanSum logsum;
    std::vector<std::int64_t> k(static_cast<std::size_t>(s.dim), 0);
    std::vector<double> theta(static_cast<std::size_t>(s.dim), 0.0);
    for (std::int64_t step = 0; step < total; ++step) {
        for (int j = 0; j < s.dim; ++j)
            theta[static_cast<std::size_t>(j)] =
                static_cast<double>(k[static_cast<std::size_t>(j)]) /
                static_cast<double>(grid_per_dim);
        std::complex<double> v = eval_symbol(s, theta);
        double mag = std::abs(v);
        if (mag < 1e-12)
            fail("degenerate_quotient",
                 "symbol vanishes on the quadrature grid; measure undefined here");
        logsum.add(std::log(mag));
        for (int j = s.dim - 1; j >= 0; --j) {
            if (++k[static_cast<std::size_t>(j)] < grid_per_dim) break;
            k[static_cast<std::size_t>(j)] = 0;
        }
    }
    return logsum.sum / static_cast<double>(total);
}

FkReport fk_estimate(const RingElement& f, const GroupSpec& spec,
                     const std::vector<QuotientParams>& family, std::int64_t mahler_grid,
                     const DetOptions& opt) {
    FkReport report;
    GrowthSeries series = growth_rate_series(f, spec, family, opt);
    for (const auto& p : series.points) {
        FkEntry e;
        e.quotient = p.quotient;
        e.index = p.index;
        e.count_dec = p.count.get_str();
        e.log_det_over_index = p.log_count_over_index;
        report.series.push_back(std::move(e));
    }
    report.tail_max = series.tail_max;
    if (spec.family == GroupFamily::FreeAbelian) {
        report.oracle_kind = "mahler";
        report.oracle = mahler_measure(f, mahler_grid);
        if (!report.series.empty())
            report.gap = std::fabs(report.series.back().log_det_over_index - *report.oracle);
    } else {
        report.oracle_kind = "none";
    }
    return report;
}

}  // namespace algdyn
