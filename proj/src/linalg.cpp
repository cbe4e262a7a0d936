#include "csh/linalg.hpp"

#include <algorithm>

namespace csh {

std::int64_t gf2_rank_sparse(std::vector<BitColumn> cols, std::size_t nrows) {
    std::vector<std::int32_t> pivot_col(nrows, -1);
    std::int64_t rank = 0;
    BitColumn scratch;
    // short columns first keeps fill-in down
    std::vector<std::uint32_t> order(cols.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t x, std::uint32_t y) { return cols[x].size() < cols[y].size(); });
    for (std::uint32_t ci : order) {
        BitColumn& col = cols[ci];
        while (!col.empty()) {
            std::uint32_t low = col.back();
            std::int32_t p = pivot_col[low];
            if (p < 0) break;
            const BitColumn& other = cols[p];
            scratch.clear();
            std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                          std::back_inserter(scratch));
            col.swap(scratch);
        }
        if (!col.empty()) {
            pivot_col[col.back()] = static_cast<std::int32_t>(ci);
            ++rank;
        }
    }
    return rank;
}

std::int64_t gf2_rank_dense(const std::vector<BitColumn>& cols, std::size_t nrows) {
    const std::size_t words = (nrows + 63) / 64;
    std::vector<std::vector<std::uint64_t>> m;
    m.reserve(cols.size());
    for (auto& c : cols) {
        std::vector<std::uint64_t> v(words, 0);
        for (auto r : c) v[r / 64] ^= std::uint64_t(1) << (r % 64);
        m.push_back(std::move(v));
    }
    std::int64_t rank = 0;
    std::size_t row = 0;
    for (std::size_t r = 0; r < nrows && row < m.size(); ++r) {
        std::size_t w = r / 64;
        std::uint64_t bit = std::uint64_t(1) << (r % 64);
        std::size_t p = row;
        while (p < m.size() && !(m[p][w] & bit)) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        for (std::size_t i = row + 1; i < m.size(); ++i)
            if (m[i][w] & bit)
                for (std::size_t k = w; k < words; ++k) m[i][k] ^= m[row][k];
        ++row;
        ++rank;
    }
    return rank;
}

std::int64_t field_rank_dense(Field f, const std::vector<FieldColumn>& cols, std::size_t nrows) {
    std::vector<std::vector<Coeff>> m(cols.size(), std::vector<Coeff>(nrows, Coeff{}));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (auto& [r, c] : cols[j]) m[j][r] = coeff_add(f, m[j][r], c);
    std::int64_t rank = 0;
    std::size_t row = 0;
    for (std::size_t r = 0; r < nrows && row < m.size(); ++r) {
        std::size_t p = row;
        while (p < m.size() && m[p][r].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Coeff inv = coeff_inv(f, m[row][r]);
        for (std::size_t i = row + 1; i < m.size(); ++i) {
            if (m[i][r].is_zero()) continue;
            Coeff factor = coeff_neg(f, coeff_mul(f, m[i][r], inv));
            for (std::size_t k = r; k < nrows; ++k)
                if (!m[row][k].is_zero()) m[i][k] = coeff_add(f, m[i][k], coeff_mul(f, factor, m[row][k]));
        }
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace csh
