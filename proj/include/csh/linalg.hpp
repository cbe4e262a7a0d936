#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "csh/novikov.hpp"

namespace csh {

using BitColumn = std::vector<std::uint32_t>;  // sorted row indices with coefficient 1

// column reduction with a pivot table; consumes the columns
std::int64_t gf2_rank_sparse(std::vector<BitColumn> cols, std::size_t nrows);
// dense bit-packed Gaussian elimination, serial
std::int64_t gf2_rank_dense(const std::vector<BitColumn>& cols, std::size_t nrows);

using FieldColumn = std::vector<std::pair<std::uint32_t, Coeff>>;

// dense elimination over Q or Q(i) (F2 accepted too)
std::int64_t field_rank_dense(Field f, const std::vector<FieldColumn>& cols, std::size_t nrows);

}  // namespace csh
