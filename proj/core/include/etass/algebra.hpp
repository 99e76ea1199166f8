#pragma once

// Graded monomial algebra F2[rho, P, v2, v3, ...] in (Milnor-Witt, Chow)
// degrees. h1 has degree (0,0) and is never written.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace etass {

/// Largest supported v-index. v15 sits in Milnor-Witt stem 32767.
inline constexpr int kMaxVIndex = 15;

struct Bidegree
{
    int mw = 0; ///< Milnor-Witt degree s - w
    int c = 0;  ///< Chow degree s + f - 2w

    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
    Bidegree operator+(Bidegree o) const { return {mw + o.mw, c + o.c}; }
    Bidegree operator-(Bidegree o) const { return {mw - o.mw, c - o.c}; }
    Bidegree operator*(int k) const { return {mw * k, c * k}; }
};

std::string to_string(Bidegree d);

enum class GeneratorKind { Rho, P, V };

struct GeneratorSymbol
{
    GeneratorKind kind = GeneratorKind::Rho;
    int n = 0; ///< index for V, unused otherwise

    static GeneratorSymbol rho() { return {GeneratorKind::Rho, 0}; }
    static GeneratorSymbol p() { return {GeneratorKind::P, 0}; }
    static GeneratorSymbol v(int n);

    Bidegree degree() const;
    std::string name() const;

    friend bool operator==(const GeneratorSymbol&, const GeneratorSymbol&) = default;
};

/// rho^b P^e v2^a2 v3^a3 ...
///
/// Ordered by graded reverse-lexicographic order on the exponent vector
/// (rho, P, v2, v3, ...): lower total degree first, then the monomial with
/// the larger exponent in the last differing variable comes first.
class Monomial
{
public:
    Monomial() { v_.fill(0); }

    static Monomial one() { return {}; }
    static Monomial of(GeneratorSymbol g, std::uint32_t exponent = 1);
    /// Parses labels produced by label(): "1", "rho^3P^4v3", "P^2v2^2", "v2v5".
    static Monomial parse(std::string_view label);

    std::uint32_t rho() const { return rho_; }
    std::uint32_t p() const { return p_; }
    std::uint32_t v(int n) const { return (n >= 2 && n <= kMaxVIndex) ? v_[n] : 0; }

    Monomial& set_rho(std::uint32_t b)
    {
        rho_ = b;
        return *this;
    }
    Monomial& set_p(std::uint32_t e)
    {
        p_ = e;
        return *this;
    }
    Monomial& set_v(int n, std::uint32_t a);

    std::uint32_t exponent(GeneratorSymbol g) const;
    Monomial& set_exponent(GeneratorSymbol g, std::uint32_t a);

    /// Smallest n with a positive v_n exponent, or 0 when there is none.
    int min_v() const;
    int max_v() const;
    /// Sum of v-exponents.
    std::uint32_t v_count() const;
    bool has_v() const { return min_v() != 0; }
    Bidegree bidegree() const;
    /// Sum of all exponents.
    std::uint32_t total_degree() const;

    /// Exponentwise product.
    Monomial operator*(const Monomial& o) const;
    /// Exponentwise quotient; requires o | *this.
    Monomial operator/(const Monomial& o) const;
    bool divisible_by(const Monomial& o) const;

    /// Machine label: "1", "rho^3P^4v3", "P^6v2^2", "v2v5".
    std::string label() const;
    /// Label in chart typography: "ρ³P⁴v₃".
    std::string pretty() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

private:
    std::uint32_t rho_ = 0;
    std::uint32_t p_ = 0;
    std::array<std::uint16_t, kMaxVIndex + 1> v_; // v_[n] for 2 <= n <= kMaxVIndex
};

/// An F2-linear combination of distinct monomials, kept sorted.
class Polynomial
{
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<Monomial> terms);
    explicit Polynomial(Monomial m) { terms_.push_back(m); }

    /// Adds m with coefficient 1 (cancels an existing copy).
    void toggle(const Monomial& m);
    Polynomial& operator+=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    std::span<const Monomial> terms() const { return terms_; }
    std::string label() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<Monomial> terms_;
};

/// Which relations are in force on a page.
///
/// `level` is the largest family index n whose Bockstein differential has
/// run: families n <= level carry rho-torsion rho^(2^n - 1) = 0 and their
/// P-exponents are shifted onto the minimal v. Monomials whose v-indices all
/// exceed `level` must have P-exponent divisible by 2^(level-1).
struct Relations
{
    static constexpr int kAll = 1 << 20;

    int level = 1;
    bool torsion = true;

    /// E1 page of the Bockstein spectral sequence: no relations.
    static Relations free() { return {1, true}; }
    /// After the Bockstein differentials for families 2..processed have run.
    static Relations bockstein(int processed) { return {processed, true}; }
    /// Ext over R with h1 inverted (all families processed).
    static Relations ext() { return {kAll, true}; }
    static Relations ext_without_torsion() { return {kAll, false}; }

    /// Required divisor of the P-exponent for a monomial with minimal v-index
    /// min_v (0 when there is none). Returns 0 when the P-exponent must vanish.
    std::uint64_t p_divisor(int min_v) const;

    friend bool operator==(const Relations&, const Relations&) = default;
};

/// A monomial certified to satisfy the P-shift normal form for some Relations.
class NormalMonomial
{
public:
    const Monomial& monomial() const { return m_; }
    operator const Monomial&() const { return m_; }
    Bidegree bidegree() const { return m_.bidegree(); }
    std::string label() const { return m_.label(); }

    friend bool operator==(const NormalMonomial&, const NormalMonomial&) = default;
    friend auto operator<=>(const NormalMonomial& a, const NormalMonomial& b) { return a.m_ <=> b.m_; }

private:
    explicit NormalMonomial(const Monomial& m) : m_(m) {}
    friend std::optional<NormalMonomial> normalize(const Monomial&, const Relations&);
    Monomial m_;
};

/// P-shift normal form under `rel`. Returns nullopt when the monomial is
/// killed by rho-torsion. Throws NormalizationFailure when the P-exponent is
/// not a multiple of the required power of two.
std::optional<NormalMonomial> normalize(const Monomial& m, const Relations& rel = Relations::ext());

/// Convenience: true iff normalize() would return a value (never throws).
bool is_normal(const Monomial& m, const Relations& rel = Relations::ext());

/// Product in Ext over R with h1 inverted: exponent sum, then normalize.
std::optional<NormalMonomial> multiply(const NormalMonomial& a, const NormalMonomial& b,
                                       const Relations& rel = Relations::ext());

/// Normalizes each term of a polynomial, dropping the ones that vanish.
Polynomial normalize(const Polynomial& p, const Relations& rel);

/// Every monomial of bidegree `deg` over the given generators, in canonical order.
std::vector<Monomial> enumerate_monomials(Bidegree deg, std::span<const GeneratorSymbol> generators);

/// Truncation window shared by all pages.
struct Truncation
{
    int mw_max = 64;
    /// Chow bound; negative means the default 2 * mw_max + 8.
    int c_max_override = -1;

    /// Columns through internal_mw() are exact on every page.
    int internal_mw() const { return mw_max + 1; }
    /// Last stored column. It is exact on Bockstein pages and on the Adams
    /// E2-page, where it only feeds d2 into internal_mw().
    int grid_mw() const { return mw_max + 2; }
    int c_max() const { return c_max_override >= 0 ? c_max_override : 2 * mw_max + 8; }
    /// Largest n with 2^n - 1 <= internal_mw().
    int max_v_index() const;
    /// {rho, P} together with every v_n with 2^n - 1 <= internal_mw().
    std::vector<GeneratorSymbol> generators() const;
    /// {rho, P} together with every v_n with 2^n - 1 <= extent_mw.
    static std::vector<GeneratorSymbol> generators_up_to(int extent_mw);
    bool reported(Bidegree d) const { return d.mw >= 0 && d.mw <= mw_max && d.c >= 0 && d.c <= c_max(); }
};

struct DerivationRule
{
    GeneratorSymbol generator;
    /// The rule is stated on generator^unit (e.g. P^(2^(n-2)) for Bockstein pages).
    std::uint32_t unit = 1;
    Polynomial image;
};

/// A derivation specified on multiplicative generators and extended by the
/// Leibniz rule. Terms are normalized with `target_relations`.
struct Derivation
{
    int page = 0;
    Bidegree shift;
    std::vector<DerivationRule> rules;
    std::vector<GeneratorSymbol> cycles;
    /// When set, a P-power left over after dividing by the rule's unit is
    /// absorbed into the cycle P^e v_min carried over from earlier pages.
    bool p_remainder_is_cycle = false;
    Relations target_relations = Relations::ext();

    const DerivationRule* rule_for(GeneratorSymbol g) const;
    bool is_cycle(GeneratorSymbol g) const;
    /// True when every rule image is homogeneous of degree
    /// degree(generator^unit) + shift.
    bool degrees_consistent() const;
};

/// Leibniz extension of d to m. Throws MissingRule when some factor of m has
/// neither a rule nor a cycle declaration.
Polynomial leibniz_apply(const Derivation& d, const Monomial& m);

} // namespace etass
