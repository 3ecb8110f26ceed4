#pragma once

#include <optional>
#include <vector>

#include "qlab/errors.hpp"

namespace qlab {

// Dense matrix over an abstract field F.  F must provide: default ctor
// (zero), member one(), inv(), is_zero(), + - * and compound assignment.
// Every routine is pure; matrices are treated as immutable values.
template <class F>
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<F> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}
    Matrix(int r, int c, F fill) : rows(r), cols(c), a((size_t)r * c, fill) {}

    F& at(int i, int j) { return a[(size_t)i * cols + j]; }
    const F& at(int i, int j) const { return a[(size_t)i * cols + j]; }

    static Matrix identity(int n, const F& one) {
        Matrix m(n, n, one - one);
        for (int i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols != y.rows) throw domain_error("Matrix: shape mismatch in product");
        Matrix r(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const F& v = x.at(i, k);
                if (v.is_zero()) continue;
                for (int j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
            }
        return r;
    }
    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        if (x.rows != y.rows || x.cols != y.cols)
            throw domain_error("Matrix: shape mismatch in sum");
        Matrix r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
        return r;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        if (x.rows != y.rows || x.cols != y.cols)
            throw domain_error("Matrix: shape mismatch in difference");
        Matrix r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
        return r;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        if (x.rows != y.rows || x.cols != y.cols) return false;
        for (size_t i = 0; i < x.a.size(); ++i)
            if (!(x.a[i] - y.a[i]).is_zero()) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    // In-place reduction to reduced row echelon form; returns pivot columns.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols && r < rows; ++c) {
            int p = -1;
            for (int i = r; i < rows; ++i)
                if (!at(i, c).is_zero()) { p = i; break; }
            if (p < 0) continue;
            if (p != r)
                for (int j = 0; j < cols; ++j) std::swap(at(p, j), at(r, j));
            F s = at(r, c).inv();
            for (int j = c; j < cols; ++j) at(r, j) = at(r, j) * s;
            for (int i = 0; i < rows; ++i) {
                if (i == r || at(i, c).is_zero()) continue;
                F f = at(i, c);
                for (int j = c; j < cols; ++j) at(i, j) -= f * at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    int rank() const {
        Matrix m = *this;
        return (int)m.rref().size();
    }
};

// Basis of ker(M) as vectors in F^cols, canonical (free-column) order.
// `one` supplies the field unit; an all-zero matrix cannot provide it.
template <class F>
std::vector<std::vector<F>> kernel(const Matrix<F>& M, const F& one) {
    Matrix<F> R = M;
    std::vector<int> piv = R.rref();
    std::vector<bool> is_pivot(M.cols, false);
    for (int c : piv) is_pivot[c] = true;
    F zero = one - one;
    std::vector<std::vector<F>> basis;
    for (int c = 0; c < M.cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<F> v((size_t)M.cols, zero);
        v[c] = one;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = zero - R.at((int)r, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

// First solution of A x = b, if any.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& A, const std::vector<F>& b, const F& one) {
    if ((int)b.size() != A.rows) throw domain_error("solve: shape mismatch");
    F zero = one - one;
    Matrix<F> aug(A.rows, A.cols + 1, zero);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[i];
    }
    std::vector<int> piv = aug.rref();
    if (!piv.empty() && piv.back() == A.cols) return std::nullopt;  // inconsistent
    std::vector<F> x((size_t)A.cols, zero);
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at((int)r, A.cols);
    return x;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& A, const F& one) {
    if (A.rows != A.cols) throw domain_error("inverse: not square");
    int n = A.rows;
    F zero = one - one;
    Matrix<F> aug(n, 2 * n, zero);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, n + i) = one;
    }
    std::vector<int> piv = aug.rref();
    if ((int)piv.size() < n || piv[n - 1] != n - 1)
        throw domain_error("inverse: singular matrix");
    Matrix<F> r(n, n, zero);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = aug.at(i, n + j);
    return r;
}

// A linear subspace of F^n, stored as a row-reduced basis matrix (dim x n)
// together with the field unit (needed when the basis is empty).
template <class F>
struct Subspace {
    int n = 0;
    F unit;
    Matrix<F> basis;  // RREF rows

    static Subspace zero(int n, const F& one) {
        Subspace s;
        s.n = n;
        s.unit = one;
        s.basis = Matrix<F>(0, n);
        return s;
    }
    static Subspace full(int n, const F& one) {
        Subspace s;
        s.n = n;
        s.unit = one;
        s.basis = Matrix<F>::identity(n, one);
        return s;
    }
    static Subspace span(int n, const std::vector<std::vector<F>>& vecs, const F& one) {
        Matrix<F> m((int)vecs.size(), n, one - one);
        for (size_t i = 0; i < vecs.size(); ++i)
            for (int j = 0; j < n; ++j) m.at((int)i, j) = vecs[i][j];
        std::vector<int> piv = m.rref();
        Subspace s;
        s.n = n;
        s.unit = one;
        s.basis = Matrix<F>((int)piv.size(), n, one - one);
        for (size_t i = 0; i < piv.size(); ++i)
            for (int j = 0; j < n; ++j) s.basis.at((int)i, j) = m.at((int)i, j);
        return s;
    }

    int dim() const { return basis.rows; }

    // rows c with c . v = 0 for every v in the subspace
    Matrix<F> constraints() const {
        auto k = kernel(basis.rows ? basis : Matrix<F>(0, n), unit);
        Matrix<F> c((int)k.size(), n, unit - unit);
        for (size_t i = 0; i < k.size(); ++i)
            for (int j = 0; j < n; ++j) c.at((int)i, j) = k[i][j];
        return c;
    }

    bool contains(const std::vector<F>& v) const {
        Matrix<F> c = constraints();
        for (int i = 0; i < c.rows; ++i) {
            F acc = unit - unit;
            for (int j = 0; j < n; ++j) acc += c.at(i, j) * v[j];
            if (!acc.is_zero()) return false;
        }
        return true;
    }

    bool contains(const Subspace& w) const {
        for (int i = 0; i < w.basis.rows; ++i) {
            std::vector<F> v((size_t)n, unit - unit);
            for (int j = 0; j < n; ++j) v[j] = w.basis.at(i, j);
            if (!contains(v)) return false;
        }
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.n == b.n && a.basis == b.basis;
    }
};

template <class F>
Subspace<F> intersect(const Subspace<F>& a, const Subspace<F>& b) {
    if (a.n != b.n) throw domain_error("intersect: ambient mismatch");
    Matrix<F> ca = a.constraints(), cb = b.constraints();
    Matrix<F> stacked(ca.rows + cb.rows, a.n, a.unit - a.unit);
    for (int i = 0; i < ca.rows; ++i)
        for (int j = 0; j < a.n; ++j) stacked.at(i, j) = ca.at(i, j);
    for (int i = 0; i < cb.rows; ++i)
        for (int j = 0; j < a.n; ++j) stacked.at(ca.rows + i, j) = cb.at(i, j);
    auto k = kernel(stacked, a.unit);
    return Subspace<F>::span(a.n, k, a.unit);
}

template <class F>
Subspace<F> subspace_sum(const Subspace<F>& a, const Subspace<F>& b) {
    if (a.n != b.n) throw domain_error("sum: ambient mismatch");
    std::vector<std::vector<F>> vecs;
    for (int i = 0; i < a.basis.rows; ++i) {
        std::vector<F> v((size_t)a.n, a.unit - a.unit);
        for (int j = 0; j < a.n; ++j) v[j] = a.basis.at(i, j);
        vecs.push_back(std::move(v));
    }
    for (int i = 0; i < b.basis.rows; ++i) {
        std::vector<F> v((size_t)a.n, a.unit - a.unit);
        for (int j = 0; j < a.n; ++j) v[j] = b.basis.at(i, j);
        vecs.push_back(std::move(v));
    }
    return Subspace<F>::span(a.n, vecs, a.unit);
}

// {x : M x in W}
template <class F>
Subspace<F> preimage(const Matrix<F>& M, const Subspace<F>& w) {
    if (M.rows != w.n) throw domain_error("preimage: shape mismatch");
    Matrix<F> c = w.constraints();
    Matrix<F> cm = c.rows ? c * M : Matrix<F>(0, M.cols);
    auto k = kernel(cm, w.unit);
    return Subspace<F>::span(M.cols, k, w.unit);
}

// M(W)
template <class F>
Subspace<F> image(const Matrix<F>& M, const Subspace<F>& w) {
    if (M.cols != w.n) throw domain_error("image: shape mismatch");
    F zero = w.unit - w.unit;
    std::vector<std::vector<F>> vecs;
    for (int i = 0; i < w.basis.rows; ++i) {
        std::vector<F> v((size_t)M.rows, zero);
        for (int r = 0; r < M.rows; ++r) {
            F acc = zero;
            for (int j = 0; j < M.cols; ++j) acc += M.at(r, j) * w.basis.at(i, j);
            v[r] = acc;
        }
        vecs.push_back(std::move(v));
    }
    return Subspace<F>::span(M.rows, vecs, w.unit);
}

// Largest subspace W of K with A(W) <= W for every A in ops, computed by
// iterating W <- W cap (cap_A A^{-1} W) until the dimension stabilizes.
template <class F>
Subspace<F> largest_stable_inside(const std::vector<Matrix<F>>& ops, const Subspace<F>& K) {
    Subspace<F> w = K;
    for (;;) {
        Subspace<F> next = w;
        for (const auto& A : ops) next = intersect(next, preimage(A, w));
        if (next.dim() == w.dim()) {
#ifndef NDEBUG
            for (const auto& A : ops)
                if (!next.contains(image(A, next)))
                    throw consistency_error("largest_stable_inside: result not stable");
            if (!K.contains(next))
                throw consistency_error("largest_stable_inside: result not inside K");
#endif
            return next;
        }
        w = next;
    }
}

// Smallest subspace W containing U with A(W) <= W for every A in ops.
template <class F>
Subspace<F> smallest_stable_containing(const std::vector<Matrix<F>>& ops, const Subspace<F>& U) {
    Subspace<F> w = U;
    for (;;) {
        Subspace<F> next = w;
        for (const auto& A : ops) next = subspace_sum(next, image(A, w));
        if (next.dim() == w.dim()) {
#ifndef NDEBUG
            for (const auto& A : ops)
                if (!next.contains(image(A, next)))
                    throw consistency_error("smallest_stable_containing: result not stable");
            if (!next.contains(U))
                throw consistency_error("smallest_stable_containing: result misses U");
#endif
            return next;
        }
        w = next;
    }
}

}  // namespace qlab
