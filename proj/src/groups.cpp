#include "algdyn/groups.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <sstream>

namespace algdyn {

GroupSpec GroupSpec::free_abelian(int d) {
    if (d < 1) fail("config_invalid", "free abelian rank must be >= 1");
    return GroupSpec{GroupFamily::FreeAbelian, d};
}

GroupSpec GroupSpec::free_group(int k) {
    if (k < 1 || k > 26) fail("config_invalid", "free group rank must be in 1..26");
    return GroupSpec{GroupFamily::Free, k};
}

GroupSpec GroupSpec::heisenberg() { return GroupSpec{GroupFamily::Heisenberg, 0}; }

std::string GroupSpec::name() const {
    switch (family) {
        case GroupFamily::FreeAbelian: return "Z^" + std::to_string(rank);
        case GroupFamily::Free: return "F_" + std::to_string(rank);
        case GroupFamily::Heisenberg: return "H3";
    }
    return "?";
}

static void check_same_family(const GroupSpec& a, const GroupSpec& b) {
    if (!(a == b)) fail("family_mismatch", "operands belong to different groups");
}

GroupElement GroupElement::identity(const GroupSpec& spec) {
    switch (spec.family) {
        case GroupFamily::FreeAbelian:
            return GroupElement(spec, std::vector<std::int64_t>(spec.rank, 0));
        case GroupFamily::Free:
            return GroupElement(spec, {});
        case GroupFamily::Heisenberg:
            return GroupElement(spec, {0, 0, 0});
    }
    fail("config_invalid", "unknown group family");
}

GroupElement GroupElement::vector_of(const GroupSpec& spec, std::vector<std::int64_t> coords) {
    std::size_t want = spec.family == GroupFamily::Heisenberg
                           ? 3
                           : static_cast<std::size_t>(spec.rank);
    if (spec.family == GroupFamily::Free)
        fail("config_invalid", "free-group elements are words, not coordinate tuples");
    if (coords.size() != want)
        fail("config_invalid", "coordinate tuple has wrong length");
    return GroupElement(spec, std::move(coords));
}

GroupElement GroupElement::word_of(const GroupSpec& spec, const std::vector<std::int64_t>& letters) {
    if (spec.family != GroupFamily::Free)
        fail("config_invalid", "letter words only apply to free groups");
    std::vector<std::int64_t> red;
    red.reserve(letters.size());
    for (std::int64_t l : letters) {
        if (l == 0 || std::llabs(l) > spec.rank)
            fail("word_parse", "letter index out of range");
        if (!red.empty() && red.back() == -l)
            red.pop_back();
        else
            red.push_back(l);
    }
    return GroupElement(spec, std::move(red));
}

bool GroupElement::is_identity() const {
    switch (spec_.family) {
        case GroupFamily::Free: return data_.empty();
        default:
            return std::all_of(data_.begin(), data_.end(), [](std::int64_t v) { return v == 0; });
    }
}

bool GroupElement::operator<(const GroupElement& o) const {
    if (data_.size() != o.data_.size()) return data_.size() < o.data_.size();
    return data_ < o.data_;
}

GroupElement element_mul(const GroupElement& g, const GroupElement& h) {
    check_same_family(g.spec(), h.spec());
    const GroupSpec& spec = g.spec();
    switch (spec.family) {
        case GroupFamily::FreeAbelian: {
            std::vector<std::int64_t> out(g.payload());
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += h.payload()[i];
            return GroupElement::vector_of(spec, std::move(out));
        }
        case GroupFamily::Heisenberg: {
            const auto& a = g.payload();
            const auto& b = h.payload();
            return GroupElement::vector_of(
                spec, {a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]});
        }
        case GroupFamily::Free: {
            std::vector<std::int64_t> letters(g.payload());
            letters.insert(letters.end(), h.payload().begin(), h.payload().end());
            return GroupElement::word_of(spec, letters);
        }
    }
    fail("config_invalid", "unknown group family");
}

GroupElement element_inv(const GroupElement& g) {
    const GroupSpec& spec = g.spec();
    switch (spec.family) {
        case GroupFamily::FreeAbelian: {
            std::vector<std::int64_t> out(g.payload());
            for (auto& v : out) v = -v;
            return GroupElement::vector_of(spec, std::move(out));
        }
        case GroupFamily::Heisenberg: {
            const auto& a = g.payload();
            // (a,b,c)^-1 = (-a, -b, a*b - c)
            return GroupElement::vector_of(spec, {-a[0], -a[1], a[0] * a[1] - a[2]});
        }
        case GroupFamily::Free: {
            std::vector<std::int64_t> out(g.payload().rbegin(), g.payload().rend());
            for (auto& l : out) l = -l;
            return GroupElement::word_of(spec, out);
        }
    }
    fail("config_invalid", "unknown group family");
}

std::string format_word(const GroupElement& g) {
    if (g.is_identity()) return "e";
    const GroupSpec& spec = g.spec();
    std::ostringstream os;
    if (spec.family == GroupFamily::Free) {
        const auto& w = g.payload();
        std::size_t i = 0;
        bool first = true;
        while (i < w.size()) {
            std::size_t j = i;
            while (j < w.size() && w[j] == w[i]) ++j;
            std::int64_t run = static_cast<std::int64_t>(j - i);
            std::int64_t exp = w[i] > 0 ? run : -run;
            char letter = static_cast<char>('a' + std::llabs(w[i]) - 1);
            if (!first) os << ' ';
            os << letter;
            if (exp != 1) os << '^' << exp;
            first = false;
            i = j;
        }
        return os.str();
    }
    os << '(';
    for (std::size_t i = 0; i < g.payload().size(); ++i) {
        if (i) os << ',';
        os << g.payload()[i];
    }
    os << ')';
    return os.str();
}

static std::int64_t parse_int64(const std::string& tok) {
    if (tok.empty()) fail("word_parse", "empty integer");
    std::size_t i = (tok[0] == '+' || tok[0] == '-') ? 1 : 0;
    if (i >= tok.size()) fail("word_parse", "bad integer '" + tok + "'");
    for (; i < tok.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(tok[i])))
            fail("word_parse", "bad integer '" + tok + "'");
    errno = 0;
    long long v = std::strtoll(tok.c_str(), nullptr, 10);
    if (errno != 0) fail("word_parse", "integer out of range '" + tok + "'");
    return v;
}

GroupElement parse_word(const GroupSpec& spec, const std::string& text) {
    if (spec.family == GroupFamily::Free) {
        // Whitespace-separated tokens "a", "b^-1", "a^3"; "e" is the identity.
        std::vector<std::int64_t> letters;
        std::istringstream is(text);
        std::string tok;
        bool any = false;
        while (is >> tok) {
            any = true;
            if (tok == "e") continue;
            char letter = tok[0];
            if (letter < 'a' || letter >= 'a' + spec.rank)
                fail("word_parse", "unknown generator in '" + tok + "'");
            std::int64_t idx = letter - 'a' + 1;
            std::int64_t exp = 1;
            if (tok.size() > 1) {
                if (tok[1] != '^') fail("word_parse", "bad token '" + tok + "'");
                exp = parse_int64(tok.substr(2));
            }
            if (std::llabs(exp) > 1000000)
                fail("word_parse", "exponent too large in '" + tok + "'");
            std::int64_t letter_signed = exp >= 0 ? idx : -idx;
            for (std::int64_t i = 0; i < std::llabs(exp); ++i) letters.push_back(letter_signed);
        }
        if (!any) fail("word_parse", "empty word");
        return GroupElement::word_of(spec, letters);
    }

    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) fail("word_parse", "empty word");
    if (s == "e") return GroupElement::identity(spec);
    if (s.front() != '(' || s.back() != ')')
        fail("word_parse", "expected coordinate tuple, got '" + text + "'");
    std::vector<std::int64_t> coords;
    std::string body = s.substr(1, s.size() - 2);
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) coords.push_back(parse_int64(tok));
    if (body.empty() || body.back() == ',')
        fail("word_parse", "bad coordinate tuple '" + text + "'");
    return GroupElement::vector_of(spec, std::move(coords));
}

std::string QuotientParams::describe(const GroupSpec& spec) const {
    std::ostringstream os;
    switch (spec.family) {
        case GroupFamily::FreeAbelian: {
            os << "Z^" << spec.rank << " mod (";
            for (std::size_t i = 0; i < moduli.size(); ++i) {
                if (i) os << ',';
                os << moduli[i];
            }
            os << ')';
            break;
        }
        case GroupFamily::Heisenberg:
            os << "H3 mod " << modulus;
            break;
        case GroupFamily::Free:
            os << "F_" << spec.rank << " perm-rep deg " << degree;
            break;
    }
    return os.str();
}

static std::vector<int> perm_mul(const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[static_cast<std::size_t>(p[i])];
    return r;
}

int FiniteQuotient::free_letter_slot(std::int64_t letter) const {
    int idx = static_cast<int>(std::llabs(letter)) - 1;
    return 2 * idx + (letter < 0 ? 1 : 0);
}

std::vector<int> FiniteQuotient::free_image(const GroupElement& g) const {
    std::vector<int> img(static_cast<std::size_t>(degree_));
    for (int i = 0; i < degree_; ++i) img[static_cast<std::size_t>(i)] = i;
    for (std::int64_t l : g.payload()) {
        int idx = static_cast<int>(std::llabs(l)) - 1;
        const std::vector<int>& gen = params_.generator_images[static_cast<std::size_t>(idx)];
        if (l > 0) {
            img = perm_mul(img, gen);
        } else {
            std::vector<int> inv(gen.size());
            for (std::size_t x = 0; x < gen.size(); ++x)
                inv[static_cast<std::size_t>(gen[x])] = static_cast<int>(x);
            img = perm_mul(img, inv);
        }
    }
    return img;
}

int FiniteQuotient::project(const GroupElement& g) const {
    if (!(g.spec() == spec_)) fail("family_mismatch", "element from a different group");
    switch (spec_.family) {
        case GroupFamily::FreeAbelian: {
            std::int64_t idx = 0;
            for (std::size_t i = 0; i < params_.moduli.size(); ++i) {
                std::int64_t n = params_.moduli[i];
                std::int64_t c = ((g.payload()[i] % n) + n) % n;
                idx += c * strides_[i];
            }
            return static_cast<int>(idx);
        }
        case GroupFamily::Heisenberg: {
            std::int64_t n = hmod_;
            auto red = [n](std::int64_t v) { return ((v % n) + n) % n; };
            const auto& p = g.payload();
            return static_cast<int>((red(p[0]) * n + red(p[1])) * n + red(p[2]));
        }
        case GroupFamily::Free:
            // The image group is closed, so every word lands on a known coset.
            return perm_index_.at(free_image(g));
    }
    fail("config_invalid", "unknown group family");
}

int FiniteQuotient::translate(int coset, const GroupElement& g) const {
    if (!(g.spec() == spec_)) fail("family_mismatch", "element from a different group");
    if (coset < 0 || coset >= index_) fail("out_of_range", "coset index out of range");
    switch (spec_.family) {
        case GroupFamily::FreeAbelian: {
            std::int64_t idx = 0;
            std::int64_t rem = coset;
            for (std::size_t i = params_.moduli.size(); i-- > 0;) {
                std::int64_t n = params_.moduli[i];
                std::int64_t c = (rem / strides_[i]) % n;
                rem -= c * strides_[i];
                std::int64_t v = (((c + g.payload()[i]) % n) + n) % n;
                idx += v * strides_[i];
            }
            return static_cast<int>(idx);
        }
        case GroupFamily::Heisenberg: {
            std::int64_t n = hmod_;
            std::int64_t a = coset / (n * n);
            std::int64_t b = (coset / n) % n;
            std::int64_t c = coset % n;
            const auto& p = g.payload();
            auto red = [n](std::int64_t v) { return ((v % n) + n) % n; };
            std::int64_t a2 = red(a + p[0]);
            std::int64_t b2 = red(b + p[1]);
            std::int64_t c2 = red(c + p[2] + a * red(p[1]));
            return static_cast<int>((a2 * n + b2) * n + c2);
        }
        case GroupFamily::Free: {
            int cur = coset;
            for (std::int64_t l : g.payload())
                cur = letter_translate_[static_cast<std::size_t>(free_letter_slot(l))]
                                       [static_cast<std::size_t>(cur)];
            return cur;
        }
    }
    fail("config_invalid", "unknown group family");
}

std::vector<int> FiniteQuotient::translation_table(const GroupElement& g) const {
    std::vector<int> table(static_cast<std::size_t>(index_));
    if (spec_.family == GroupFamily::Free) {
        for (std::int64_t i = 0; i < index_; ++i) table[static_cast<std::size_t>(i)] = static_cast<int>(i);
        for (std::int64_t l : g.payload()) {
            const auto& step = letter_translate_[static_cast<std::size_t>(free_letter_slot(l))];
            for (auto& c : table) c = step[static_cast<std::size_t>(c)];
        }
        return table;
    }
    for (std::int64_t c = 0; c < index_; ++c)
        table[static_cast<std::size_t>(c)] = translate(static_cast<int>(c), g);
    return table;
}

int FiniteQuotient::translate_left(int coset, const GroupElement& g) const {
    if (!(g.spec() == spec_)) fail("family_mismatch", "element from a different group");
    if (coset < 0 || coset >= index_) fail("out_of_range", "coset index out of range");
    switch (spec_.family) {
        case GroupFamily::FreeAbelian:
            return translate(coset, g);
        case GroupFamily::Heisenberg: {
            std::int64_t n = hmod_;
            std::int64_t a = coset / (n * n);
            std::int64_t b = (coset / n) % n;
            std::int64_t c = coset % n;
            const auto& p = g.payload();
            auto red = [n](std::int64_t v) { return ((v % n) + n) % n; };
            std::int64_t a2 = red(p[0] + a);
            std::int64_t b2 = red(p[1] + b);
            std::int64_t c2 = red(p[2] + c + red(p[0]) * b);
            return static_cast<int>((a2 * n + b2) * n + c2);
        }
        case GroupFamily::Free: {
            std::vector<int> prod = perm_mul(free_image(g), perms_[static_cast<std::size_t>(coset)]);
            return perm_index_.at(prod);
        }
    }
    fail("config_invalid", "unknown group family");
}

FiniteQuotient build_quotient(const GroupSpec& spec, const QuotientParams& params,
                              std::int64_t order_cap) {
    FiniteQuotient q;
    q.spec_ = spec;
    q.params_ = params;
    switch (spec.family) {
        case GroupFamily::FreeAbelian: {
            if (static_cast<int>(params.moduli.size()) != spec.rank)
                fail("config_invalid", "need one modulus per coordinate");
            q.strides_.assign(params.moduli.size(), 1);
            std::int64_t idx = 1;
            // Row-major layout: the first coordinate has the largest stride.
            for (std::size_t i = params.moduli.size(); i-- > 0;) {
                if (params.moduli[i] < 1) fail("config_invalid", "moduli must be >= 1");
                q.strides_[i] = idx;
                idx *= params.moduli[i];
                if (idx > order_cap) fail("cap_exceeded", "quotient order exceeds cap");
            }
            q.index_ = idx;
            break;
        }
        case GroupFamily::Heisenberg: {
            if (params.modulus < 1) fail("config_invalid", "modulus must be >= 1");
            std::int64_t n = params.modulus;
            if (n * n * n > order_cap) fail("cap_exceeded", "quotient order exceeds cap");
            q.hmod_ = n;
            q.index_ = n * n * n;
            break;
        }
        case GroupFamily::Free: {
            if (static_cast<int>(params.generator_images.size()) != spec.rank)
                fail("config_invalid", "need one permutation per generator");
            int m = params.degree;
            if (m < 1) fail("config_invalid", "permutation degree must be >= 1");
            std::vector<std::vector<int>> gens;
            for (const auto& img : params.generator_images) {
                if (static_cast<int>(img.size()) != m)
                    fail("config_invalid", "permutation has wrong degree");
                std::vector<bool> seen(static_cast<std::size_t>(m), false);
                for (int v : img) {
                    if (v < 0 || v >= m || seen[static_cast<std::size_t>(v)])
                        fail("config_invalid", "generator image is not a permutation");
                    seen[static_cast<std::size_t>(v)] = true;
                }
                gens.push_back(img);
                std::vector<int> inv(img.size());
                for (std::size_t x = 0; x < img.size(); ++x)
                    inv[static_cast<std::size_t>(img[x])] = static_cast<int>(x);
                gens.push_back(std::move(inv));
            }
            q.degree_ = m;
            std::vector<int> id(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) id[static_cast<std::size_t>(i)] = i;
            q.perms_.push_back(id);
            q.perm_index_[id] = 0;
            std::deque<int> frontier{0};
            while (!frontier.empty()) {
                int cur = frontier.front();
                frontier.pop_front();
                for (const auto& gen : gens) {
                    std::vector<int> next = perm_mul(q.perms_[static_cast<std::size_t>(cur)], gen);
                    if (q.perm_index_.emplace(next, static_cast<int>(q.perms_.size())).second) {
                        q.perms_.push_back(next);
                        if (static_cast<std::int64_t>(q.perms_.size()) > order_cap)
                            fail("cap_exceeded", "image group exceeds order cap");
                        frontier.push_back(static_cast<int>(q.perms_.size()) - 1);
                    }
                }
            }
            q.index_ = static_cast<std::int64_t>(q.perms_.size());
            q.letter_translate_.assign(gens.size(), std::vector<int>(q.perms_.size()));
            for (std::size_t s = 0; s < gens.size(); ++s)
                for (std::size_t c = 0; c < q.perms_.size(); ++c)
                    q.letter_translate_[s][c] = q.perm_index_.at(perm_mul(q.perms_[c], gens[s]));
            break;
        }
    }
    return q;
}

}  // namespace algdyn
