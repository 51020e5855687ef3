#pragma once

#include "casimir/error.hpp"
#include "casimir/real.hpp"

#include <utility>
#include <vector>

namespace casimir::detail {

// Dense solve by Gaussian elimination with partial pivoting. Small systems only.
inline std::vector<Real> solve_linear(std::vector<std::vector<Real>> m, std::vector<Real> rhs) {
    namespace mp = boost::multiprecision;
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (mp::abs(m[r][col]) > mp::abs(m[pivot][col])) pivot = r;
        }
        if (m[pivot][col] == 0) throw Error(ErrorCode::FitSingular, "singular linear system");
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Real f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Real> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Real acc = rhs[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= m[i][c] * x[c];
        x[i] = acc / m[i][i];
    }
    return x;
}

}  // namespace casimir::detail
