#pragma once

#include <optional>
#include <vector>

#include "wallcross/rational.hpp"

namespace wallcross {

// Dense exact matrices, row-major. Everything here is plain Gaussian
// elimination over the rationals; sizes in this project stay tiny.
using MatQ = std::vector<VecQ>;

std::size_t rank(MatQ m);

// Basis of { x : <row, x> = 0 for every row }. Rows may be dependent.
std::vector<VecQ> kernel_basis(const MatQ& rows, std::size_t ambient_dim);

// Unique solution of a square nonsingular system; nullopt when singular.
std::optional<VecQ> solve_square(MatQ a, VecQ b);

}  // namespace wallcross
