#ifndef MSUM_LINALG_HPP
#define MSUM_LINALG_HPP

#include <optional>
#include <vector>

namespace msum {

/// Dense exact linear algebra over a field K (needs K(long), +, -, *, /,
/// is_zero()). Deterministic: first nonzero pivot in column order.
template <typename K>
struct LinearSystem {
    // rows of [A | b]; solve A x = b
    std::vector<std::vector<K>> a;
    std::vector<K> b;

    std::size_t rows() const { return a.size(); }
    std::size_t cols() const { return a.empty() ? 0 : a[0].size(); }

    void add_row(std::vector<K> row, K rhs) {
        a.push_back(std::move(row));
        b.push_back(std::move(rhs));
    }
};

template <typename K>
struct LinearSolution {
    bool consistent = false;
    std::vector<K> particular;            // one solution (zeros in free slots)
    std::vector<std::vector<K>> nullspace; // basis of homogeneous solutions
    std::vector<std::size_t> free_cols;
};

template <typename K>
LinearSolution<K> solve_linear(LinearSystem<K> s) {
    const std::size_t m = s.rows(), n = s.cols();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && s.a[p][c].is_zero()) ++p;
        if (p == m) continue;
        std::swap(s.a[p], s.a[r]);
        std::swap(s.b[p], s.b[r]);
        K inv = K(1) / s.a[r][c];
        for (std::size_t j = c; j < n; ++j) s.a[r][j] = s.a[r][j] * inv;
        s.b[r] = s.b[r] * inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || s.a[i][c].is_zero()) continue;
            K f = s.a[i][c];
            for (std::size_t j = c; j < n; ++j) s.a[i][j] = s.a[i][j] - f * s.a[r][j];
            s.b[i] = s.b[i] - f * s.b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }

    LinearSolution<K> out;
    for (std::size_t i = r; i < m; ++i)
        if (!s.b[i].is_zero()) return out; // inconsistent (consistent stays false)
    out.consistent = true;

    std::vector<char> is_pivot(n, 0);
    for (std::size_t c : pivot_col) is_pivot[c] = 1;
    out.particular.assign(n, K(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
        out.particular[pivot_col[i]] = s.b[i];
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        out.free_cols.push_back(c);
        std::vector<K> v(n, K(0));
        v[c] = K(1);
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            v[pivot_col[i]] = K(0) - s.a[i][c];
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

} // namespace msum

#endif
