#pragma once

// Exact linear algebra over F2 with 64-bit packed rows.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace etass::gf2 {

class F2Vector
{
public:
    F2Vector() = default;
    explicit F2Vector(std::size_t length);
    F2Vector(std::initializer_list<int> bits);

    static F2Vector unit(std::size_t length, std::size_t index);

    std::size_t size() const noexcept { return length_; }
    bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool value = true) noexcept;
    void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    bool is_zero() const noexcept;
    std::size_t popcount() const noexcept;
    /// Index of the lowest set bit, or size() when zero.
    std::size_t lowest_set() const noexcept;
    std::vector<std::size_t> support() const;

    F2Vector& operator^=(const F2Vector& other);
    friend F2Vector operator^(F2Vector a, const F2Vector& b) { return a ^= b; }
    /// Dot product over F2.
    bool dot(const F2Vector& other) const;

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    friend bool operator==(const F2Vector&, const F2Vector&) = default;
    friend std::strong_ordering operator<=>(const F2Vector& a, const F2Vector& b);

private:
    std::size_t length_ = 0;
    std::vector<std::uint64_t> words_;
};

class F2Matrix
{
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols);
    F2Matrix(std::initializer_list<std::initializer_list<int>> rows);
    static F2Matrix identity(std::size_t n);
    static F2Matrix from_rows(std::size_t cols, std::vector<F2Vector> rows);

    std::size_t rows() const noexcept { return data_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool value = true) { data_[r].set(c, value); }
    const F2Vector& row(std::size_t r) const { return data_[r]; }
    F2Vector& row(std::size_t r) { return data_[r]; }
    std::span<const F2Vector> row_span() const noexcept { return data_; }

    F2Matrix transpose() const;
    /// this * v for a column vector v of length cols().
    F2Vector apply(const F2Vector& v) const;
    F2Matrix operator*(const F2Matrix& rhs) const;
    bool is_zero() const;

    friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

private:
    std::size_t cols_ = 0;
    std::vector<F2Vector> data_;
};

struct RowReduction
{
    F2Matrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row-echelon form. Zero rows are moved to the bottom.
RowReduction row_reduce(const F2Matrix& m);

std::size_t rank(const F2Matrix& m);

/// Basis of { v : m v = 0 }, one vector per free column, in column order.
std::vector<F2Vector> kernel_basis(const F2Matrix& m);

/// Coset representatives for span(ambient) / span(subspace).
///
/// Standard basis vectors e_0, e_1, ... are tried first, in index order; a
/// representative is taken only when it lies in the ambient span and is
/// independent of the subspace and the representatives already chosen.
/// Remaining dimensions are filled from the echelonized ambient basis.
/// Throws SubspaceNotContained when some subspace vector is not in the
/// ambient span.
std::vector<F2Vector> quotient_basis(std::span<const F2Vector> subspace,
                                     std::span<const F2Vector> ambient);

/// Incrementally built, fully reduced echelon basis.
class F2Span
{
public:
    explicit F2Span(std::size_t length = 0) : length_(length) {}

    std::size_t length() const noexcept { return length_; }
    std::size_t dim() const noexcept { return rows_.size(); }

    /// Reduces v against the basis; returns the residual (zero iff v is in the span).
    F2Vector reduce(F2Vector v) const;
    bool contains(const F2Vector& v) const { return reduce(v).is_zero(); }
    /// Adds v if independent. Returns true when the dimension grew.
    bool insert(const F2Vector& v);

    std::span<const F2Vector> basis() const noexcept { return rows_; }

private:
    std::size_t length_;
    std::vector<F2Vector> rows_;
    std::vector<std::size_t> pivots_; // pivot column of rows_[i]
};

} // namespace etass::gf2
