#include "etass/algebra.hpp"

#include "etass/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>

namespace etass {

namespace {

constexpr const char* kSuperscripts[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
constexpr const char* kSubscripts[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};

std::string digits(std::uint64_t x, const char* const* table)
{
    std::string s = std::to_string(x);
    std::string out;
    for (char ch : s)
        out += table[ch - '0'];
    return out;
}

void check_v_index(int n)
{
    if (n < 2 || n > kMaxVIndex)
        throw std::out_of_range(fmt::format("v-index {} outside [2, {}]", n, kMaxVIndex));
}

} // namespace

std::string to_string(Bidegree d) { return fmt::format("({},{})", d.mw, d.c); }

GeneratorSymbol GeneratorSymbol::v(int n)
{
    check_v_index(n);
    return {GeneratorKind::V, n};
}

Bidegree GeneratorSymbol::degree() const
{
    switch (kind) {
    case GeneratorKind::Rho:
        return {0, 1};
    case GeneratorKind::P:
        return {4, 4};
    case GeneratorKind::V:
        return {(1 << n) - 1, 1};
    }
    return {};
}

std::string GeneratorSymbol::name() const
{
    switch (kind) {
    case GeneratorKind::Rho:
        return "rho";
    case GeneratorKind::P:
        return "P";
    case GeneratorKind::V:
        return fmt::format("v{}", n);
    }
    return {};
}

Monomial Monomial::of(GeneratorSymbol g, std::uint32_t exponent)
{
    Monomial m;
    m.set_exponent(g, exponent);
    return m;
}

Monomial& Monomial::set_v(int n, std::uint32_t a)
{
    check_v_index(n);
    if (a > 0xFFFF)
        throw std::out_of_range("v-exponent too large");
    v_[n] = static_cast<std::uint16_t>(a);
    return *this;
}

std::uint32_t Monomial::exponent(GeneratorSymbol g) const
{
    switch (g.kind) {
    case GeneratorKind::Rho:
        return rho_;
    case GeneratorKind::P:
        return p_;
    case GeneratorKind::V:
        return v(g.n);
    }
    return 0;
}

Monomial& Monomial::set_exponent(GeneratorSymbol g, std::uint32_t a)
{
    switch (g.kind) {
    case GeneratorKind::Rho:
        return set_rho(a);
    case GeneratorKind::P:
        return set_p(a);
    case GeneratorKind::V:
        return set_v(g.n, a);
    }
    return *this;
}

int Monomial::min_v() const
{
    for (int n = 2; n <= kMaxVIndex; ++n)
        if (v_[n])
            return n;
    return 0;
}

int Monomial::max_v() const
{
    for (int n = kMaxVIndex; n >= 2; --n)
        if (v_[n])
            return n;
    return 0;
}

std::uint32_t Monomial::v_count() const
{
    std::uint32_t s = 0;
    for (int n = 2; n <= kMaxVIndex; ++n)
        s += v_[n];
    return s;
}

Bidegree Monomial::bidegree() const
{
    long mw = 4L * p_;
    long c = static_cast<long>(rho_) + 4L * p_;
    for (int n = 2; n <= kMaxVIndex; ++n) {
        mw += static_cast<long>(v_[n]) * ((1L << n) - 1);
        c += v_[n];
    }
    return {static_cast<int>(mw), static_cast<int>(c)};
}

std::uint32_t Monomial::total_degree() const { return rho_ + p_ + v_count(); }

Monomial Monomial::operator*(const Monomial& o) const
{
    Monomial m;
    m.rho_ = rho_ + o.rho_;
    m.p_ = p_ + o.p_;
    for (int n = 2; n <= kMaxVIndex; ++n) {
        const std::uint32_t a = std::uint32_t{v_[n]} + o.v_[n];
        if (a > 0xFFFF)
            throw std::out_of_range("v-exponent overflow");
        m.v_[n] = static_cast<std::uint16_t>(a);
    }
    return m;
}

bool Monomial::divisible_by(const Monomial& o) const
{
    if (o.rho_ > rho_ || o.p_ > p_)
        return false;
    for (int n = 2; n <= kMaxVIndex; ++n)
        if (o.v_[n] > v_[n])
            return false;
    return true;
}

Monomial Monomial::operator/(const Monomial& o) const
{
    if (!divisible_by(o))
        throw std::invalid_argument("monomial division with remainder");
    Monomial m;
    m.rho_ = rho_ - o.rho_;
    m.p_ = p_ - o.p_;
    for (int n = 2; n <= kMaxVIndex; ++n)
        m.v_[n] = static_cast<std::uint16_t>(v_[n] - o.v_[n]);
    return m;
}

std::string Monomial::label() const
{
    std::string s;
    auto put = [&](const std::string& name, std::uint32_t a) {
        if (a == 0)
            return;
        s += name;
        if (a > 1)
            s += fmt::format("^{}", a);
    };
    put("rho", rho_);
    put("P", p_);
    for (int n = 2; n <= kMaxVIndex; ++n)
        put(fmt::format("v{}", n), v_[n]);
    return s.empty() ? "1" : s;
}

std::string Monomial::pretty() const
{
    std::string s;
    auto put = [&](const std::string& name, std::uint32_t a) {
        if (a == 0)
            return;
        s += name;
        if (a > 1)
            s += digits(a, kSuperscripts);
    };
    put("ρ", rho_);
    put("P", p_);
    for (int n = 2; n <= kMaxVIndex; ++n)
        put("v" + digits(static_cast<std::uint64_t>(n), kSubscripts), v_[n]);
    return s.empty() ? "1" : s;
}

Monomial Monomial::parse(std::string_view label)
{
    Monomial m;
    if (label == "1")
        return m;
    auto fail = [&]() -> Monomial {
        throw std::invalid_argument(fmt::format("cannot parse monomial '{}'", label));
    };
    auto read_int = [&](std::size_t& i, std::uint32_t& out) {
        const char* first = label.data() + i;
        const char* last = label.data() + label.size();
        auto [ptr, ec] = std::from_chars(first, last, out);
        if (ec != std::errc{} || ptr == first)
            return false;
        i += static_cast<std::size_t>(ptr - first);
        return true;
    };
    std::size_t i = 0;
    if (label.empty())
        return fail();
    while (i < label.size()) {
        GeneratorSymbol g;
        if (label.substr(i, 3) == "rho") {
            g = GeneratorSymbol::rho();
            i += 3;
        } else if (label[i] == 'P') {
            g = GeneratorSymbol::p();
            i += 1;
        } else if (label[i] == 'v') {
            ++i;
            std::uint32_t n = 0;
            if (!read_int(i, n) || n < 2 || n > static_cast<std::uint32_t>(kMaxVIndex))
                return fail();
            g = GeneratorSymbol::v(static_cast<int>(n));
        } else {
            return fail();
        }
        std::uint32_t a = 1;
        if (i < label.size() && label[i] == '^') {
            ++i;
            if (!read_int(i, a) || a == 0)
                return fail();
        }
        if (m.exponent(g) != 0)
            return fail();
        m.set_exponent(g, a);
    }
    return m;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
{
    if (auto c = a.total_degree() <=> b.total_degree(); c != 0)
        return c;
    // Reverse lexicographic: scan from the last variable; a larger exponent there sorts first.
    for (int n = kMaxVIndex; n >= 2; --n)
        if (a.v_[n] != b.v_[n])
            return b.v_[n] <=> a.v_[n];
    if (a.p_ != b.p_)
        return b.p_ <=> a.p_;
    return b.rho_ <=> a.rho_;
}

Polynomial::Polynomial(std::initializer_list<Monomial> terms)
{
    for (const auto& m : terms)
        toggle(m);
}

void Polynomial::toggle(const Monomial& m)
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m);
    if (it != terms_.end() && *it == m)
        terms_.erase(it);
    else
        terms_.insert(it, m);
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    std::vector<Monomial> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
                                  std::back_inserter(out));
    terms_ = std::move(out);
    return *this;
}

std::string Polynomial::label() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    for (const auto& t : terms_) {
        if (!s.empty())
            s += " + ";
        s += t.label();
    }
    return s;
}

std::uint64_t Relations::p_divisor(int min_v) const
{
    if (min_v == 0)
        return level >= kAll ? 0 : std::uint64_t{1} << (level - 1);
    return std::uint64_t{1} << (std::min(min_v, level) - 1);
}

std::optional<NormalMonomial> normalize(const Monomial& m, const Relations& rel)
{
    const int n = m.min_v();
    if (rel.torsion && n != 0 && n <= rel.level && m.rho() >= (std::uint32_t{1} << n) - 1)
        return std::nullopt;
    const std::uint64_t div = rel.p_divisor(n);
    const bool ok = div == 0 ? m.p() == 0 : m.p() % div == 0;
    if (!ok)
        throw NormalizationFailure(fmt::format("{}: P-exponent not divisible by {}", m.label(),
                                               div == 0 ? std::string("anything (must vanish)")
                                                        : std::to_string(div)));
    return NormalMonomial(m);
}

bool is_normal(const Monomial& m, const Relations& rel)
{
    try {
        return normalize(m, rel).has_value();
    } catch (const NormalizationFailure&) {
        return false;
    }
}

std::optional<NormalMonomial> multiply(const NormalMonomial& a, const NormalMonomial& b, const Relations& rel)
{
    return normalize(a.monomial() * b.monomial(), rel);
}

Polynomial normalize(const Polynomial& p, const Relations& rel)
{
    Polynomial out;
    for (const auto& t : p.terms())
        if (auto n = normalize(t, rel))
            out.toggle(n->monomial());
    return out;
}

std::vector<Monomial> enumerate_monomials(Bidegree deg, std::span<const GeneratorSymbol> generators)
{
    std::vector<Monomial> out;
    if (deg.mw < 0 || deg.c < 0)
        return out;
    bool have_rho = false;
    std::vector<GeneratorSymbol> others;
    for (const auto& g : generators) {
        if (g.kind == GeneratorKind::Rho)
            have_rho = true;
        else
            others.push_back(g);
    }

    Monomial cur;
    auto rec = [&](auto&& self, std::size_t i, Bidegree left) -> void {
        if (i == others.size()) {
            if (left.mw != 0)
                return;
            if (have_rho)
                out.push_back(Monomial(cur).set_rho(static_cast<std::uint32_t>(left.c)));
            else if (left.c == 0)
                out.push_back(cur);
            return;
        }
        const Bidegree d = others[i].degree();
        for (std::uint32_t a = 0;; ++a) {
            const Bidegree used = d * static_cast<int>(a);
            if (used.mw > left.mw || used.c > left.c)
                break;
            cur.set_exponent(others[i], a);
            self(self, i + 1, left - used);
        }
        cur.set_exponent(others[i], 0);
    };
    rec(rec, 0, deg);
    std::sort(out.begin(), out.end());
    return out;
}

int Truncation::max_v_index() const
{
    int n = 1;
    while (n + 1 <= kMaxVIndex && (1 << (n + 1)) - 1 <= internal_mw())
        ++n;
    return n;
}

std::vector<GeneratorSymbol> Truncation::generators() const { return generators_up_to(internal_mw()); }

std::vector<GeneratorSymbol> Truncation::generators_up_to(int extent_mw)
{
    std::vector<GeneratorSymbol> g{GeneratorSymbol::rho(), GeneratorSymbol::p()};
    for (int n = 2; n <= kMaxVIndex && (1 << n) - 1 <= extent_mw; ++n)
        g.push_back(GeneratorSymbol::v(n));
    return g;
}

const DerivationRule* Derivation::rule_for(GeneratorSymbol g) const
{
    for (const auto& r : rules)
        if (r.generator == g)
            return &r;
    return nullptr;
}

bool Derivation::is_cycle(GeneratorSymbol g) const
{
    return std::find(cycles.begin(), cycles.end(), g) != cycles.end();
}

bool Derivation::degrees_consistent() const
{
    for (const auto& r : rules) {
        const Bidegree want = r.generator.degree() * static_cast<int>(r.unit) + shift;
        for (const auto& t : r.image.terms())
            if (t.bidegree() != want)
                return false;
    }
    return true;
}

Polynomial leibniz_apply(const Derivation& d, const Monomial& m)
{
    Polynomial out;
    std::vector<GeneratorSymbol> present;
    if (m.rho())
        present.push_back(GeneratorSymbol::rho());
    if (m.p())
        present.push_back(GeneratorSymbol::p());
    for (int n = 2; n <= kMaxVIndex; ++n)
        if (m.v(n))
            present.push_back(GeneratorSymbol::v(n));

    for (const auto& g : present) {
        const std::uint32_t a = m.exponent(g);
        const DerivationRule* rule = d.rule_for(g);
        if (!rule) {
            if (d.is_cycle(g))
                continue;
            throw MissingRule(fmt::format("d_{}: no rule or cycle declaration for {} in {}", d.page,
                                          g.name(), m.label()));
        }
        const std::uint32_t u = rule->unit;
        if (a % u != 0) {
            if (d.p_remainder_is_cycle && g.kind == GeneratorKind::P && m.has_v())
                continue;
            throw MissingRule(fmt::format("d_{}: {}^{} is not a power of the rule unit {}^{}", d.page,
                                          g.name(), a, g.name(), u));
        }
        // d(x^(u q)) = q x^(u(q-1)) d(x^u); only odd q survive mod 2.
        if ((a / u) % 2 == 0)
            continue;
        Monomial rest = m;
        rest.set_exponent(g, a - u);
        for (const auto& t : rule->image.terms())
            if (auto nm = normalize(rest * t, d.target_relations))
                out.toggle(nm->monomial());
    }
    return out;
}

} // namespace etass
