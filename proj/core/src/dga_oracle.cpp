// Independent oracles. Nothing here goes through Monomial, normalize or the
// gf2 module: exponent vectors, the normal-form predicate, the Leibniz rule
// and the rank computation are all re-derived locally.

#include "etass/adams.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <map>
#include <random>
#include <vector>

namespace etass {

namespace {

using Row = std::vector<std::uint8_t>;

// Plain Gaussian elimination, one byte per entry.
std::size_t naive_rank(std::vector<Row> rows)
{
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && !rows[piv][c])
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && rows[i][c])
                for (std::size_t j = c; j < cols; ++j)
                    rows[i][j] ^= rows[rank][j];
        ++rank;
    }
    return rank;
}

// All exponent vectors e (e[i] >= 0) with sum weight[i] * e[i] == target.
void enumerate_weighted(const std::vector<int>& weight, int target, std::size_t i, std::vector<int>& cur,
                        std::vector<std::vector<int>>& out)
{
    if (i == weight.size()) {
        if (target == 0)
            out.push_back(cur);
        return;
    }
    for (int e = 0; e * weight[i] <= target; ++e) {
        cur[i] = e;
        enumerate_weighted(weight, target - e * weight[i], i + 1, cur, out);
    }
    cur[i] = 0;
}

std::size_t rank_of(const std::vector<std::vector<int>>& src, const std::map<std::vector<int>, std::size_t>& tgt,
                    auto&& boundary)
{
    if (src.empty() || tgt.empty())
        return 0;
    std::vector<Row> rows;
    for (const auto& s : src) {
        Row row(tgt.size(), 0);
        for (const auto& t : boundary(s))
            if (auto it = tgt.find(t); it != tgt.end())
                row[it->second] ^= 1;
        rows.push_back(std::move(row));
    }
    return naive_rank(std::move(rows));
}

// ---- DGA F2[w1..wN] -------------------------------------------------------

std::vector<int> dga_weights(int n)
{
    std::vector<int> w;
    for (int i = 1; i <= n; ++i)
        w.push_back((1 << i) - 1);
    return w;
}

std::vector<std::vector<int>> dga_boundary(const std::vector<int>& e)
{
    std::vector<std::vector<int>> out;
    for (std::size_t i = 1; i < e.size(); ++i)
        if (e[i] % 2 == 1) {
            auto t = e;
            t[i] -= 1;
            t[i - 1] += 2;
            out.push_back(std::move(t));
        }
    return out;
}

// ---- E2 model --------------------------------------------------------------
// Coordinates: e[0] = rho, e[1] = P, e[2 + j] = v_(j+2).

struct E2Model
{
    int max_v = 2;

    static int v_stem(int n) { return (1 << n) - 1; }

    bool normal(const std::vector<int>& e) const
    {
        int nmin = 0;
        for (int n = 2; n <= max_v; ++n)
            if (e[n]) {
                nmin = n;
                break;
            }
        if (nmin == 0)
            return e[1] == 0;
        return e[0] < v_stem(nmin) && e[1] % (1 << (nmin - 1)) == 0;
    }

    std::vector<std::vector<int>> basis(Bidegree d) const
    {
        std::vector<std::vector<int>> out;
        if (d.mw < 0 || d.c < 0)
            return out;
        // Stem: 4 P + sum (2^n - 1) v_n; then rho fills the remaining Chow degree.
        std::vector<int> weight{4};
        for (int n = 2; n <= max_v; ++n)
            weight.push_back(v_stem(n));
        std::vector<std::vector<int>> stems;
        std::vector<int> cur(weight.size(), 0);
        enumerate_weighted(weight, d.mw, 0, cur, stems);
        for (const auto& s : stems) {
            int c = 4 * s[0];
            for (std::size_t i = 1; i < s.size(); ++i)
                c += s[i];
            if (c > d.c)
                continue;
            std::vector<int> e(max_v + 1, 0);
            e[0] = d.c - c;
            e[1] = s[0];
            for (std::size_t i = 1; i < s.size(); ++i)
                e[i + 1] = s[i];
            if (normal(e))
                out.push_back(std::move(e));
        }
        return out;
    }

    // d2 v_n = v_(n-1)^2 for n >= 3; rho, P, v2 are cycles. Terms outside the
    // normal form are zero.
    std::vector<std::vector<int>> d2(const std::vector<int>& e) const
    {
        std::vector<std::vector<int>> out;
        for (int n = 3; n <= max_v; ++n)
            if (e[n] % 2 == 1) {
                auto t = e;
                t[n] -= 1;
                t[n - 1] += 2;
                if (normal(t))
                    out.push_back(std::move(t));
            }
        return out;
    }
};

std::map<std::vector<int>, std::size_t> index_of(const std::vector<std::vector<int>>& basis)
{
    std::map<std::vector<int>, std::size_t> idx;
    for (std::size_t i = 0; i < basis.size(); ++i)
        idx.emplace(basis[i], i);
    return idx;
}

} // namespace

DgaHomology dga_homology(int num_gens, int degree_bound)
{
    DgaHomology h;
    h.num_gens = num_gens;
    h.degree_bound = degree_bound;
    h.faithful_degree = std::min(degree_bound - 1, (1 << (num_gens + 1)) - 3);
    const auto w = dga_weights(num_gens);
    std::vector<std::vector<std::vector<int>>> chains(degree_bound + 1);
    for (int d = 0; d <= degree_bound; ++d) {
        std::vector<int> cur(w.size(), 0);
        enumerate_weighted(w, d, 0, cur, chains[d]);
    }
    std::vector<std::size_t> rank_out(degree_bound + 1, 0);
    for (int d = 1; d <= degree_bound; ++d)
        rank_out[d] = rank_of(chains[d], index_of(chains[d - 1]), dga_boundary);
    for (int d = 0; d <= h.faithful_degree; ++d)
        h.dims.push_back(chains[d].size() - rank_out[d] - (d + 1 <= degree_bound ? rank_out[d + 1] : 0));
    return h;
}

Report dga_homology_oracle(int num_gens, int degree_bound)
{
    Report rep;
    const auto h = dga_homology(num_gens, degree_bound);
    std::size_t bad = 0;
    for (int d = 0; d <= h.faithful_degree; ++d) {
        const std::size_t want = d <= 1 ? 1 : 0;
        if (h.dims[d] != want) {
            ++bad;
            rep.add("dga.homology", fmt::format("N={} degree {}", num_gens, d), false,
                    fmt::format("dim {} expected {}", h.dims[d], want));
        }
    }
    rep.add("dga.homology", fmt::format("N={} degrees 0..{}", num_gens, h.faithful_degree), bad == 0,
            "homology is F2[w1]/(w1^2)");
    return rep;
}

Report e2_oracle_check(const Page& e3, int samples, std::uint64_t seed)
{
    Report rep;
    const auto& t = e3.truncation();
    const int top = std::min(t.internal_mw(), t.mw_max);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_mw(0, top);
    std::uniform_int_distribution<int> pick_c(0, t.c_max());
    E2Model model;
    while (model.max_v < kMaxVIndex && E2Model::v_stem(model.max_v + 1) <= top + 1)
        ++model.max_v;

    const Bidegree d2_shift{-1, 1};
    int done = 0;
    int attempts = 0;
    std::size_t bad = 0;
    while (done < samples && attempts < 100 * samples) {
        ++attempts;
        const Bidegree d{pick_mw(rng), pick_c(rng)};
        const auto here = model.basis(d);
        if (here.empty())
            continue;
        ++done;
        const auto below = model.basis(d + d2_shift);
        const auto above = model.basis(d - d2_shift);
        auto d2 = [&](const std::vector<int>& e) { return model.d2(e); };
        const std::size_t r_out = rank_of(here, index_of(below), d2);
        const std::size_t r_in = rank_of(above, index_of(here), d2);
        const std::size_t want = here.size() - r_out - r_in;
        const std::size_t got = e3.dim(d);
        if (want != got)
            ++bad;
        rep.add("adams.e2_oracle", to_string(d), want == got,
                fmt::format("oracle dim {} (E2 dim {}), engine dim {}", want, here.size(), got));
    }
    rep.add("adams.e2_oracle", fmt::format("{} samples, seed {}", done, seed), bad == 0 && done == samples,
            fmt::format("{} mismatches", bad));
    return rep;
}

} // namespace etass
