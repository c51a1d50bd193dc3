#include "algdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace algdyn {

int bound_M_for(const RingElement& f) {
    mpz_class m = ceil_rational(l1_norm(f));
    if (!m.fits_sint_p()) fail("out_of_range", "l1 norm too large");
    return static_cast<int>(m.get_si());
}

mpq_class kappa_for_denominator(const mpz_class& torus_den) {
    if (torus_den <= 0) fail("out_of_range", "torus denominator must be positive");
    mpz_class q = 2 * torus_den + 1;
    // round(kKappaFloat * q) computed exactly from the decimal expansion of
    // the float cut (0.7071067811865476 = 7071067811865476 / 10^16).
    mpz_class num = mpz_class("7071067811865476") * q;
    mpz_class den = mpz_class(10) * 1000000000 * 1000000;  // 10^16
    mpz_class p = (2 * num + den) / (2 * den);             // nearest integer
    if (p <= 0) p = 1;
    if (p >= q) p = q - 1;
    return make_rational(p, q);
}

LiftConfig lift_config_for(const RingElement& f, const mpz_class& torus_den) {
    return LiftConfig{kappa_for_denominator(torus_den), bound_M_for(f)};
}

ScaledVec lift_L(const TorusPoint& x, const LiftConfig& cfg) {
    if (cfg.kappa <= 0 || cfg.kappa >= 1) fail("out_of_range", "kappa must lie in (0,1)");
    // num/den < kappa = p/q  <=>  num <= floor((p*den - 1) / q).
    mpz_class cut;
    {
        mpz_class t = cfg.kappa.get_num() * x.den - 1;
        mpz_fdiv_q(cut.get_mpz_t(), t.get_mpz_t(), cfg.kappa.get_den().get_mpz_t());
    }
    ScaledVec out;
    out.den = x.den;
    out.num.reserve(x.num.size());
    for (const auto& v : x.num) {
        if (v < 0 || v >= x.den) fail("out_of_range", "torus point not reduced");
        out.num.push_back(v <= cut ? v : v - x.den);
    }
    return out;
}

std::vector<std::int64_t> map_P(const TorusPoint& x, const RingElement& f,
                                const FiniteQuotient& q, const LiftConfig& cfg) {
    if (static_cast<std::int64_t>(x.num.size()) != q.index())
        fail("out_of_range", "point length does not match quotient index");
    ScaledVec lift = lift_L(x, cfg);
    std::vector<mpz_class> acc = quotient_convolve(lift.num, adjoint(f), q);
    std::vector<std::int64_t> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) {
        mpz_class quot, rem;
        mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), acc[i].get_mpz_t(),
                    lift.den.get_mpz_t());
        if (rem != 0)
            fail("not_fixed_point", "point is not annihilated by the defining operator");
        if (!quot.fits_slong_p()) fail("internal_error", "encoded symbol out of range");
        std::int64_t sym = quot.get_si();
        if (sym > cfg.bound_M || sym < -cfg.bound_M)
            fail("internal_error", "encoded symbol exceeds the alphabet bound");
        out[i] = sym;
    }
    return out;
}

TorusPoint map_xi(const std::vector<mpz_class>& h, const FixedPointSpace& space) {
    return space.xi(h);
}

std::vector<int> window_tuple(const std::vector<std::int64_t>& p_config,
                              const FiniteQuotient& q, const std::vector<GroupElement>& window,
                              int coset) {
    std::vector<int> tuple(window.size());
    for (std::size_t i = 0; i < window.size(); ++i) {
        int pos = q.translate(coset, element_inv(window[i]));
        tuple[i] = static_cast<int>(p_config[static_cast<std::size_t>(pos)]);
    }
    return tuple;
}

void WindowDistribution::check_total() const {
    mpq_class total = 0;
    for (const auto& [t, p] : probs) {
        if (p < 0) fail("internal_error", "negative probability mass");
        total += p;
    }
    if (total != 1) fail("internal_error", "window distribution does not sum to 1");
}

WindowDistribution WindowDistribution::marginal_to(const std::vector<GroupElement>& sub) const {
    std::vector<std::size_t> idx;
    for (const auto& g : sub) {
        auto it = std::find(window.begin(), window.end(), g);
        if (it == window.end())
            fail("window_mismatch", "marginal target is not a subset of the window");
        idx.push_back(static_cast<std::size_t>(it - window.begin()));
    }
    WindowDistribution out;
    out.window = sub;
    out.alphabet_M = alphabet_M;
    out.aliased = aliased;
    for (const auto& [t, p] : probs) {
        std::vector<int> proj;
        proj.reserve(idx.size());
        for (std::size_t i : idx) proj.push_back(t[i]);
        out.probs[proj] += p;
    }
    return out;
}

mpq_class l1_distance(const WindowDistribution& a, const WindowDistribution& b) {
    if (a.window != b.window)
        fail("window_mismatch", "distributions live on different windows");
    mpq_class d = 0;
    auto ia = a.probs.begin();
    auto ib = b.probs.begin();
    while (ia != a.probs.end() || ib != b.probs.end()) {
        if (ib == b.probs.end() || (ia != a.probs.end() && ia->first < ib->first)) {
            d += abs(ia->second);
            ++ia;
        } else if (ia == a.probs.end() || ib->first < ia->first) {
            d += abs(ib->second);
            ++ib;
        } else {
            d += abs(ia->second - ib->second);
            ++ia;
            ++ib;
        }
    }
    return d;
}

bool window_aliased(const FiniteQuotient& q, const std::vector<GroupElement>& window) {
    std::set<int> images;
    for (const auto& w : window) images.insert(q.project(w));
    return images.size() != window.size();
}

WindowDistribution window_distribution(const std::vector<std::int64_t>& p_config,
                                       const FiniteQuotient& q,
                                       const std::vector<GroupElement>& window, int alphabet_M) {
    WindowDistribution out;
    out.window = window;
    out.alphabet_M = alphabet_M;
    out.aliased = window_aliased(q, window);
    std::int64_t n = q.index();
    std::vector<std::vector<int>> tables;
    tables.reserve(window.size());
    for (const auto& w : window) tables.push_back(q.translation_table(element_inv(w)));
    mpq_class mass = make_rational(1, n);
    std::vector<int> tuple(window.size());
    for (std::int64_t c = 0; c < n; ++c) {
        for (std::size_t i = 0; i < window.size(); ++i) {
            std::int64_t sym =
                p_config[static_cast<std::size_t>(tables[i][static_cast<std::size_t>(c)])];
            if (sym > alphabet_M || sym < -alphabet_M)
                fail("out_of_range", "symbol exceeds the alphabet bound");
            tuple[i] = static_cast<int>(sym);
        }
        out.probs[tuple] += mass;
    }
    return out;
}

BernoulliSampler::BernoulliSampler(const RingElement& f, const TruncatedInverse& fh,
                                   int noise_n, const std::vector<GroupElement>& window)
    : noise_n_(noise_n), window_(window) {
    if (noise_n < 1) fail("out_of_range", "noise level must be >= 1");
    if (!(f.spec() == fh.approx.spec()))
        fail("family_mismatch", "inverse from a different group");
    bound_M_ = bound_M_for(f);

    // Resolution requirement: n * tail <= 1e-9.
    if (mpq_class(noise_n) * fh.tail_bound > make_rational(1, 1000000000))
        fail("tail_too_loose", "truncation too coarse to resolve torus coordinates");

    RingElement fstar = adjoint(f);

    // x coordinates: gamma = w^-1 beta^-1 over window slots and supp(f^*).
    std::set<GroupElement> xset;
    for (const auto& w : window_) {
        GroupElement winv = element_inv(w);
        for (const auto& [beta, c] : fstar.coeffs())
            xset.insert(element_mul(winv, element_inv(beta)));
    }
    std::vector<GroupElement> xcoords(xset.begin(), xset.end());

    // y coordinates: gamma * alpha^-1 over x coords and supp(fhat).
    std::set<GroupElement> yset;
    for (const auto& g : xcoords)
        for (const auto& [alpha, c] : fh.approx.coeffs())
            yset.insert(element_mul(g, element_inv(alpha)));
    std::vector<GroupElement> ycoords(yset.begin(), yset.end());
    y_count_ = ycoords.size();
    std::map<GroupElement, std::size_t> yindex;
    for (std::size_t i = 0; i < ycoords.size(); ++i) yindex[ycoords[i]] = i;

    x_terms_.resize(xcoords.size());
    for (std::size_t xi = 0; xi < xcoords.size(); ++xi) {
        for (const auto& [alpha, c] : fh.approx.coeffs()) {
            GroupElement yg = element_mul(xcoords[xi], element_inv(alpha));
            x_terms_[xi].push_back({yindex.at(yg), c.get_d()});
        }
    }

    std::map<GroupElement, std::size_t> xindex;
    for (std::size_t i = 0; i < xcoords.size(); ++i) xindex[xcoords[i]] = i;
    p_terms_.resize(window_.size());
    for (std::size_t wi = 0; wi < window_.size(); ++wi) {
        GroupElement winv = element_inv(window_[wi]);
        for (const auto& [beta, c] : fstar.coeffs()) {
            GroupElement xg = element_mul(winv, element_inv(beta));
            p_terms_[wi].push_back({xindex.at(xg), c.get_d()});
        }
    }

    double tail = fh.tail_bound.get_d();
    double roundoff = 4.0e-16 * static_cast<double>(noise_n_) *
                      (l1_norm(fh.approx).get_d() + 1.0) *
                      static_cast<double>(fh.approx.support_size() + 1);
    x_err_ = static_cast<double>(noise_n_) * tail * (1.0 + 1e-9) + roundoff;
}

std::vector<int> BernoulliSampler::sample(Rng& rng) {
    std::vector<double> y(y_count_);
    std::vector<double> lifts(x_terms_.size());
    for (;;) {
        ++attempts_;
        if (attempts_ >= 200 && rejections_ * 10 > attempts_)
            fail("rejection_rate", "lift-ambiguity rejection rate exceeds 10%");
        for (std::size_t i = 0; i < y_count_; ++i)
            y[i] = static_cast<double>(
                static_cast<std::int64_t>(rng.below(2 * static_cast<std::uint64_t>(noise_n_) + 1)) -
                noise_n_);
        bool ok = true;
        for (std::size_t xi = 0; xi < x_terms_.size() && ok; ++xi) {
            double v = 0.0;
            for (const auto& [yi, c] : x_terms_[xi]) v += y[yi] * c;
            double frac = v - std::floor(v);
            double dist = std::fabs(frac - kKappaFloat);
            if (dist <= x_err_) {
                ok = false;
                break;
            }
            lifts[xi] = frac < kKappaFloat ? frac : frac - 1.0;
        }
        if (!ok) {
            ++rejections_;
            continue;
        }
        std::vector<int> tuple(window_.size());
        for (std::size_t wi = 0; wi < window_.size(); ++wi) {
            double s = 0.0;
            for (const auto& [xi, c] : p_terms_[wi]) s += lifts[xi] * c;
            long long r = std::llround(s);
            if (std::fabs(s - static_cast<double>(r)) > 0.25)
                fail("internal_error", "encoded symbol failed to round cleanly");
            if (r > bound_M_ || r < -bound_M_)
                fail("internal_error", "encoded symbol exceeds the alphabet bound");
            tuple[wi] = static_cast<int>(r);
        }
        return tuple;
    }
}

WindowDistribution reference_marginal(const RingElement& f,
                                      const std::vector<GroupElement>& window,
                                      const SamplerSpec& sampler, std::int64_t samples,
                                      Rng& rng) {
    if (samples < 1) fail("out_of_range", "sample count must be >= 1");
    WindowDistribution out;
    out.window = window;
    out.alphabet_M = bound_M_for(f);
    std::map<std::vector<int>, std::int64_t> counts;

    if (sampler.kind == SamplerSpec::Kind::Bernoulli) {
        mpq_class tol = make_rational(1, 2000000000) / sampler.bernoulli_n;
        TruncatedInverse fh = fhat(f, tol);
        BernoulliSampler bs(f, fh, sampler.bernoulli_n, window);
        for (std::int64_t s = 0; s < samples; ++s) counts[bs.sample(rng)] += 1;
        out.aliased = false;
    } else {
        FiniteQuotient q = build_quotient(f.spec(), sampler.params);
        FixedPointSpace space(f, q);
        out.aliased = window_aliased(q, window);
        RingElement fstar = adjoint(f);
        std::vector<GroupElement> betas = fstar.support();
        // Positions of the window symbols relative to the identity coset, and
        // the torus coordinates feeding each.
        std::vector<int> positions;
        for (const auto& w : window) positions.push_back(q.translate(0, element_inv(w)));
        std::set<int> coordset;
        std::vector<std::vector<int>> term_coord(window.size());
        for (std::size_t wi = 0; wi < window.size(); ++wi) {
            for (const auto& beta : betas) {
                int c = q.translate(positions[wi], element_inv(beta));
                coordset.insert(c);
                term_coord[wi].push_back(c);
            }
        }
        std::vector<int> coords(coordset.begin(), coordset.end());
        std::map<int, std::size_t> coord_index;
        for (std::size_t i = 0; i < coords.size(); ++i)
            coord_index[coords[i]] = i;

        const mpz_class& den = space.torus_den();
        LiftConfig cfg = lift_config_for(f, den);
        mpz_class cut;
        {
            mpz_class t = cfg.kappa.get_num() * den - 1;
            mpz_fdiv_q(cut.get_mpz_t(), t.get_mpz_t(), cfg.kappa.get_den().get_mpz_t());
        }
        std::vector<mpz_class> fstar_coeffs;
        for (const auto& beta : betas) fstar_coeffs.push_back(fstar.coeff(beta).get_num());

        std::vector<int> tuple(window.size());
        for (std::int64_t s = 0; s < samples; ++s) {
            std::vector<mpz_class> nums = space.sample_at(rng, coords);
            for (auto& v : nums)
                if (v > cut) v -= den;  // exact lift into [kappa-1, kappa)
            for (std::size_t wi = 0; wi < window.size(); ++wi) {
                mpz_class acc = 0;
                for (std::size_t t = 0; t < betas.size(); ++t)
                    acc += fstar_coeffs[t] *
                           nums[coord_index.at(term_coord[wi][static_cast<std::size_t>(t)])];
                mpz_class quot, rem;
                mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), acc.get_mpz_t(),
                            den.get_mpz_t());
                if (rem != 0) fail("internal_error", "sampled point is not a fixed point");
                if (!quot.fits_slong_p() || quot > cfg.bound_M || quot < -cfg.bound_M)
                    fail("internal_error", "encoded symbol exceeds the alphabet bound");
                tuple[wi] = static_cast<int>(quot.get_si());
            }
            counts[tuple] += 1;
        }
    }

    for (const auto& [t, c] : counts) out.probs[t] = make_rational(c, samples);
    out.check_total();
    return out;
}

}  // namespace algdyn
