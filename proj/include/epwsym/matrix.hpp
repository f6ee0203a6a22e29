#pragma once

#include "epwsym/multipoly.hpp"

namespace epwsym {

// Dense matrix over GF(p), row-major.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<uint64_t> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a((size_t)r * c, 0) {}

    uint64_t& at(int r, int c) { return a[(size_t)r * cols + c]; }
    uint64_t at(int r, int c) const { return a[(size_t)r * cols + c]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline Mat mat_mul(const Fp& F, const Mat& x, const Mat& y) {
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            uint64_t v = x.at(i, k);
            if (!v) continue;
            const uint64_t* yr = &y.a[(size_t)k * y.cols];
            uint64_t* rr = &r.a[(size_t)i * r.cols];
            for (int j = 0; j < y.cols; ++j)
                if (yr[j]) rr[j] = F.add(rr[j], F.mul(v, yr[j]));
        }
    return r;
}

inline Mat mat_add(const Fp& F, const Mat& x, const Mat& y) {
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = F.add(r.a[i], y.a[i]);
    return r;
}

inline Mat mat_scale(const Fp& F, const Mat& x, uint64_t s) {
    Mat r = x;
    for (auto& v : r.a) v = F.mul(v, s);
    return r;
}

inline Mat mat_transpose(const Mat& x) {
    Mat r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

inline std::vector<uint64_t> mat_apply(const Fp& F, const Mat& m, const std::vector<uint64_t>& v) {
    std::vector<uint64_t> r(m.rows, 0);
    for (int i = 0; i < m.rows; ++i) {
        uint64_t s = 0;
        for (int j = 0; j < m.cols; ++j) s = F.add(s, F.mul(m.at(i, j), v[j]));
        r[i] = s;
    }
    return r;
}

// In-place reduced row echelon form; returns rank.  Records pivot columns.
inline int mat_rref(const Fp& F, Mat& m, std::vector<int>* pivots = nullptr) {
    int rank = 0;
    if (pivots) pivots->clear();
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int sel = -1;
        for (int r = rank; r < m.rows; ++r)
            if (m.at(r, col)) { sel = r; break; }
        if (sel < 0) continue;
        if (sel != rank)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(rank, j));
        uint64_t inv = F.inv(m.at(rank, col));
        for (int j = col; j < m.cols; ++j) m.at(rank, j) = F.mul(m.at(rank, j), inv);
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank) continue;
            uint64_t f = m.at(r, col);
            if (!f) continue;
            for (int j = col; j < m.cols; ++j)
                m.at(r, j) = F.sub(m.at(r, j), F.mul(f, m.at(rank, j)));
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    m.rows = rank;  // callers treat trailing zero rows as dropped
    m.a.resize((size_t)rank * m.cols);
    return rank;
}

inline int mat_rank(const Fp& F, Mat m) { return mat_rref(F, m); }

// Basis of the right kernel, rows of the returned matrix.
inline Mat mat_kernel(const Fp& F, Mat m) {
    int n = m.cols;
    std::vector<int> pivots;
    int rank = mat_rref(F, m, &pivots);
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    Mat ker(n - rank, n);
    int kr = 0;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        ker.at(kr, c) = 1;
        for (int r = 0; r < rank; ++r)
            ker.at(kr, pivots[r]) = F.neg(m.at(r, c));
        ++kr;
    }
    return ker;
}

inline uint64_t mat_det(const Fp& F, Mat m) {
    if (m.rows != m.cols) throw Error("DimMismatch", "det of non-square matrix");
    uint64_t det = 1;
    int n = m.rows;
    for (int col = 0; col < n; ++col) {
        int sel = -1;
        for (int r = col; r < n; ++r)
            if (m.at(r, col)) { sel = r; break; }
        if (sel < 0) return 0;
        if (sel != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(col, j));
            det = F.neg(det);
        }
        det = F.mul(det, m.at(col, col));
        uint64_t inv = F.inv(m.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            uint64_t f = F.mul(m.at(r, col), inv);
            if (!f) continue;
            for (int j = col; j < n; ++j)
                m.at(r, j) = F.sub(m.at(r, j), F.mul(f, m.at(col, j)));
        }
    }
    return det;
}

inline Mat mat_inverse(const Fp& F, const Mat& m) {
    if (m.rows != m.cols) throw Error("DimMismatch", "inverse of non-square matrix");
    int n = m.rows;
    Mat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    if (mat_rref(F, aug) != n) throw Error("Singular", "matrix not invertible");
    Mat r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = aug.at(i, n + j);
    return r;
}

inline Mat mat_pow(const Fp& F, Mat m, uint64_t e) {
    Mat r = Mat::identity(m.rows);
    while (e) {
        if (e & 1) r = mat_mul(F, r, m);
        m = mat_mul(F, m, m);
        e >>= 1;
    }
    return r;
}

inline uint64_t mat_trace(const Fp& F, const Mat& m) {
    uint64_t t = 0;
    for (int i = 0; i < m.rows; ++i) t = F.add(t, m.at(i, i));
    return t;
}

// Characteristic polynomial by Faddeev-LeVerrier (n < p, so the integer
// divisions are invertible mod p).
inline FpPoly mat_charpoly(const Fp& F, const Mat& m) {
    int n = m.rows;
    FpK k(F);
    std::vector<uint64_t> c(n + 1, 0);
    c[n] = 1;
    Mat prod(n, n);  // m * M_{i-1}, starts at 0
    for (int i = 1; i <= n; ++i) {
        Mat M = prod;  // M_i = m*M_{i-1} + c_{n-i+1} I
        for (int d = 0; d < n; ++d) M.at(d, d) = F.add(M.at(d, d), c[n - i + 1]);
        prod = mat_mul(F, m, M);
        c[n - i] = F.neg(F.mul(mat_trace(F, prod), F.inv(i % F.p)));
    }
    FpPoly r;
    r.c = c;
    r.trim(k);
    return r;
}

// Multiplicative order of an invertible matrix, bounded search.
inline uint64_t mat_order(const Fp& F, const Mat& m, uint64_t bound = 100000) {
    Mat x = m;
    Mat id = Mat::identity(m.rows);
    for (uint64_t n = 1; n <= bound; ++n) {
        if (x == id) return n;
        x = mat_mul(F, x, m);
    }
    throw Error("NotFiniteOrder", "matrix order exceeds bound");
}

struct Eigenspace {
    uint64_t eigenvalue_fp;  // valid when degree == 1
    FpPoly min_poly;         // irreducible factor of the characteristic polynomial
    int degree;              // extension degree of the eigenvalue
    int multiplicity;        // algebraic multiplicity
    Mat basis;               // rows span the eigenspace (degree 1 only)
    int geometric_dim;
};

// Eigen decomposition of a finite-order matrix; eigenvalues of degree > 1 are
// reported with their minimal polynomial and geometric dimension over the
// extension field.
std::vector<Eigenspace> eigenspaces(const Fp& F, const Mat& m, Prng& rng);

// Determinant of a matrix whose entries are affine-linear MultiPoly in nvars
// variables, by evaluation on a tensor grid and Newton interpolation.
MultiPoly det_interpolated(const Fp& F, const std::vector<std::vector<MultiPoly>>& m,
                           int degree_bound, Prng& rng);

}  // namespace epwsym
