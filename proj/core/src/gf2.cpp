#include "etass/gf2.hpp"

#include "etass/errors.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace etass::gf2 {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

} // namespace

F2Vector::F2Vector(std::size_t length) : length_(length), words_(word_count(length), 0) {}

F2Vector::F2Vector(std::initializer_list<int> bits) : F2Vector(bits.size())
{
    std::size_t i = 0;
    for (int b : bits)
        set(i++, b != 0);
}

F2Vector F2Vector::unit(std::size_t length, std::size_t index)
{
    F2Vector v(length);
    v.set(index);
    return v;
}

void F2Vector::set(std::size_t i, bool value) noexcept
{
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value)
        words_[i >> 6] |= mask;
    else
        words_[i >> 6] &= ~mask;
}

bool F2Vector::is_zero() const noexcept
{
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t F2Vector::popcount() const noexcept
{
    std::size_t n = 0;
    for (auto w : words_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::size_t F2Vector::lowest_set() const noexcept
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] != 0)
            return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return length_;
}

std::vector<std::size_t> F2Vector::support() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        while (w) {
            out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

F2Vector& F2Vector::operator^=(const F2Vector& other)
{
    if (other.length_ != length_)
        throw std::invalid_argument("F2Vector length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] ^= other.words_[i];
    return *this;
}

bool F2Vector::dot(const F2Vector& other) const
{
    if (other.length_ != length_)
        throw std::invalid_argument("F2Vector length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
        acc ^= words_[i] & other.words_[i];
    return (std::popcount(acc) & 1) != 0;
}

std::strong_ordering operator<=>(const F2Vector& a, const F2Vector& b)
{
    if (auto c = a.length_ <=> b.length_; c != 0)
        return c;
    // Compare as bit strings read from index 0 upwards.
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
        std::uint64_t diff = a.words_[i] ^ b.words_[i];
        if (diff) {
            const auto bit = std::countr_zero(diff);
            const bool av = (a.words_[i] >> bit) & 1U;
            return av ? std::strong_ordering::greater : std::strong_ordering::less;
        }
    }
    return std::strong_ordering::equal;
}

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows, F2Vector(cols)) {}

F2Matrix::F2Matrix(std::initializer_list<std::initializer_list<int>> rows)
{
    cols_ = rows.size() ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw std::invalid_argument("ragged F2Matrix initializer");
        data_.emplace_back(r);
    }
}

F2Matrix F2Matrix::identity(std::size_t n)
{
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i);
    return m;
}

F2Matrix F2Matrix::from_rows(std::size_t cols, std::vector<F2Vector> rows)
{
    for (const auto& r : rows)
        if (r.size() != cols)
            throw std::invalid_argument("F2Matrix row length mismatch");
    F2Matrix m;
    m.cols_ = cols;
    m.data_ = std::move(rows);
    return m;
}

F2Matrix F2Matrix::transpose() const
{
    F2Matrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r)
        for (auto c : data_[r].support())
            t.set(c, r);
    return t;
}

F2Vector F2Matrix::apply(const F2Vector& v) const
{
    if (v.size() != cols_)
        throw std::invalid_argument("F2Matrix::apply dimension mismatch");
    F2Vector out(rows());
    for (std::size_t r = 0; r < rows(); ++r)
        out.set(r, data_[r].dot(v));
    return out;
}

F2Matrix F2Matrix::operator*(const F2Matrix& rhs) const
{
    if (cols_ != rhs.rows())
        throw std::invalid_argument("F2Matrix product dimension mismatch");
    F2Matrix out(rows(), rhs.cols());
    for (std::size_t r = 0; r < rows(); ++r)
        for (auto k : data_[r].support())
            out.data_[r] ^= rhs.data_[k];
    return out;
}

bool F2Matrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const F2Vector& r) { return r.is_zero(); });
}

RowReduction row_reduce(const F2Matrix& m)
{
    RowReduction out{m, 0, {}};
    auto& a = out.reduced;
    const std::size_t nrows = a.rows();
    for (std::size_t col = 0; col < a.cols() && out.rank < nrows; ++col) {
        std::size_t pivot = out.rank;
        while (pivot < nrows && !a.get(pivot, col))
            ++pivot;
        if (pivot == nrows)
            continue;
        std::swap(a.row(pivot), a.row(out.rank));
        for (std::size_t r = 0; r < nrows; ++r)
            if (r != out.rank && a.get(r, col))
                a.row(r) ^= a.row(out.rank);
        out.pivot_cols.push_back(col);
        ++out.rank;
    }
    return out;
}

std::size_t rank(const F2Matrix& m)
{
    F2Span span(m.cols());
    for (const auto& r : m.row_span())
        span.insert(r);
    return span.dim();
}

std::vector<F2Vector> kernel_basis(const F2Matrix& m)
{
    const auto red = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : red.pivot_cols)
        is_pivot[c] = true;

    std::vector<F2Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        F2Vector v(m.cols());
        v.set(free);
        for (std::size_t i = 0; i < red.rank; ++i)
            if (red.reduced.get(i, free))
                v.set(red.pivot_cols[i]);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<F2Vector> quotient_basis(std::span<const F2Vector> subspace,
                                     std::span<const F2Vector> ambient)
{
    std::size_t length = 0;
    if (!ambient.empty())
        length = ambient.front().size();
    else if (!subspace.empty())
        length = subspace.front().size();

    F2Span amb(length);
    for (const auto& v : ambient)
        amb.insert(v);

    F2Span current(length);
    for (const auto& v : subspace) {
        if (!amb.contains(v))
            throw SubspaceNotContained("quotient_basis: subspace vector outside ambient span");
        current.insert(v);
    }

    const std::size_t target = amb.dim() - current.dim();
    std::vector<F2Vector> reps;
    for (std::size_t i = 0; i < length && reps.size() < target; ++i) {
        auto e = F2Vector::unit(length, i);
        if (amb.contains(e) && current.insert(e))
            reps.push_back(std::move(e));
    }
    for (const auto& v : amb.basis()) {
        if (reps.size() == target)
            break;
        if (current.insert(v))
            reps.push_back(v);
    }
    return reps;
}

F2Vector F2Span::reduce(F2Vector v) const
{
    if (v.size() != length_)
        throw std::invalid_argument("F2Span length mismatch");
    // Rows are kept fully reduced, so one pass suffices.
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (v.get(pivots_[i]))
            v ^= rows_[i];
    return v;
}

bool F2Span::insert(const F2Vector& v)
{
    F2Vector r = reduce(v);
    if (r.is_zero())
        return false;
    const auto pivot = r.lowest_set();
    for (auto& row : rows_)
        if (row.get(pivot))
            row ^= r;
    pivots_.push_back(pivot);
    rows_.push_back(std::move(r));
    return true;
}

} // namespace etass::gf2
