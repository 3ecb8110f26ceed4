#include "qlab/repenum.hpp"

#include <omp.h>

#include <atomic>
#include <cstring>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qlab/series.hpp"

namespace qlab {

namespace {

using i64 = std::int64_t;
using u64 = unsigned long long;

// Hard caps for the fixed-size kernels below; anything larger is far beyond
// what point-counting over F_p can enumerate anyway.
constexpr int MAXN = 12;   // total dimension
constexpr int MAXV = 12;   // vertices
constexpr int MAXA = 12;   // arrows

bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

i64 inv_mod(i64 a, i64 p) {
    i64 b = p, x0 = 1, x1 = 0;
    while (b != 0) {
        i64 q = a / b, t = a - q * b;
        a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
    }
    x0 %= p;
    if (x0 < 0) x0 += p;
    return x0;
}

u64 pow_sat(u64 base, int exp, u64 cap) {
    u64 r = 1;
    while (exp-- > 0) {
        if (base != 0 && r > cap / base) return cap;
        r *= base;
    }
    return r;
}

// ---- flat exact linear algebra over F_p ----------------------------------
// Row-major int64 buffers with entries in [0, p).  The fixed-capacity Mat is
// the workhorse of the membership hot loop: no heap traffic at all.

struct Mat {
    int r = 0, c = 0;
    i64 a[MAXN * MAXN];

    i64& at(int i, int j) { return a[i * c + j]; }
    i64 at(int i, int j) const { return a[i * c + j]; }
};

void copy_mat(Mat& dst, const Mat& src) {
    dst.r = src.r;
    dst.c = src.c;
    std::memcpy(dst.a, src.a, sizeof(i64) * (size_t)src.r * src.c);
}

// In-place reduced row echelon form; returns the rank, pivot columns in piv.
int rref_raw(i64* m, int rows, int cols, i64 p, int* piv) {
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pr = -1;
        for (int i = rank; i < rows; ++i)
            if (m[i * cols + c]) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != rank)
            for (int j = 0; j < cols; ++j) std::swap(m[pr * cols + j], m[rank * cols + j]);
        i64 s = inv_mod(m[rank * cols + c], p);
        for (int j = c; j < cols; ++j) m[rank * cols + j] = m[rank * cols + j] * s % p;
        for (int i = 0; i < rows; ++i) {
            i64 f = m[i * cols + c];
            if (i == rank || f == 0) continue;
            for (int j = c; j < cols; ++j) {
                i64 x = (m[i * cols + j] - f * m[rank * cols + j]) % p;
                m[i * cols + j] = x < 0 ? x + p : x;
            }
        }
        piv[rank++] = c;
    }
    return rank;
}

// Kernel basis of an arbitrary (rows x cols) heap matrix; rows of the result
// are vectors in F_p^cols.
std::vector<i64> kernel_vec(std::vector<i64> m, int rows, int cols, i64 p, int& k_out) {
    std::vector<int> piv(cols);
    int rank = rref_raw(m.data(), rows, cols, p, piv.data());
    std::vector<char> isp(cols, 0);
    for (int r = 0; r < rank; ++r) isp[piv[r]] = 1;
    k_out = cols - rank;
    std::vector<i64> out((size_t)k_out * cols, 0);
    int k = 0;
    for (int c = 0; c < cols; ++c) {
        if (isp[c]) continue;
        i64* v = out.data() + (size_t)k * cols;
        v[c] = 1;
        for (int r = 0; r < rank; ++r) v[piv[r]] = (p - m[r * cols + c]) % p;
        ++k;
    }
    return out;
}

// Kernel of a stacked matrix with at most MAXA*MAXN rows and MAXN columns;
// the result (cols - rank vectors in F_p^cols) goes into `out`.
void kernel_stacked(const i64* m, int rows, int cols, i64 p, Mat& out) {
    i64 tmp[MAXA * MAXN * MAXN];
    std::memcpy(tmp, m, sizeof(i64) * (size_t)rows * cols);
    int piv[MAXN];
    int rank = rref_raw(tmp, rows, cols, p, piv);
    bool isp[MAXN] = {};
    for (int r = 0; r < rank; ++r) isp[piv[r]] = true;
    out.r = cols - rank;
    out.c = cols;
    int k = 0;
    for (int c = 0; c < cols; ++c) {
        if (isp[c]) continue;
        i64* v = out.a + (size_t)k * cols;
        std::memset(v, 0, sizeof(i64) * (size_t)cols);
        v[c] = 1;
        for (int r = 0; r < rank; ++r) v[piv[r]] = (p - tmp[r * cols + c]) % p;
        ++k;
    }
}

void kernel_mat(const Mat& m, i64 p, Mat& out) { kernel_stacked(m.a, m.r, m.c, p, out); }

void mul_mat(const Mat& A, const Mat& B, i64 p, Mat& out) {
    out.r = A.r;
    out.c = B.c;
    for (int i = 0; i < A.r; ++i)
        for (int j = 0; j < B.c; ++j) {
            i64 acc = 0;
            for (int k = 0; k < A.c; ++k) acc += A.at(i, k) * B.at(k, j) % p;
            out.at(i, j) = acc % p;
        }
}

// A subspace of F_p^n is a Mat whose rows form a basis (not necessarily
// reduced); only dimensions are compared, so canonical form is unneeded.

// {x : op x in W}; op is n x n, W.r rows in F_p^n.
void preimage_mat(const Mat& op, const Mat& W, i64 p, Mat& out) {
    Mat C, CM;
    kernel_mat(W, p, C);  // constraint rows of W
    if (C.r == 0) {       // W is everything: preimage is everything
        out.r = op.c;
        out.c = op.c;
        std::memset(out.a, 0, sizeof(i64) * (size_t)op.c * op.c);
        for (int i = 0; i < op.c; ++i) out.at(i, i) = 1;
        return;
    }
    mul_mat(C, op, p, CM);
    kernel_mat(CM, p, out);
}

void intersect_mat(const Mat& A, const Mat& B, i64 p, Mat& out) {
    Mat CA, CB;
    kernel_mat(A, p, CA);
    kernel_mat(B, p, CB);
    i64 st[2 * MAXN * MAXN];
    int n = A.c;
    std::memcpy(st, CA.a, sizeof(i64) * (size_t)CA.r * n);
    std::memcpy(st + (size_t)CA.r * n, CB.a, sizeof(i64) * (size_t)CB.r * n);
    kernel_stacked(st, CA.r + CB.r, n, p, out);
}

// Largest subspace of K invariant under every op; W <- W cap op^{-1}(W)
// shrinks monotonically, so dimension stabilization is convergence.
void largest_stable_inside_mat(const Mat* ops, int nops, const Mat& K, i64 p, Mat& out) {
    Mat W, next, pre;
    copy_mat(W, K);
    for (;;) {
        copy_mat(next, W);
        for (int t = 0; t < nops; ++t) {
            preimage_mat(ops[t], W, p, pre);
            Mat tmp;
            intersect_mat(next, pre, p, tmp);
            copy_mat(next, tmp);
        }
        if (next.r == W.r) {
            copy_mat(out, next);
            return;
        }
        copy_mat(W, next);
    }
}

// ---- graded representations on flat storage -------------------------------

struct FRep {
    i64 p = 0;
    int nv = 0, na = 0, n = 0;
    int dim[MAXV], off[MAXV];
    int as[MAXA], at[MAXA];  // arrow source / target vertex
    Mat x[MAXA];             // dim[at] x dim[as]
    Mat xs[MAXA];            // dim[as] x dim[at]

    void set_offsets() {
        n = 0;
        for (int i = 0; i < nv; ++i) {
            off[i] = n;
            n += dim[i];
        }
    }
    bool x_is_zero() const {
        for (int a = 0; a < na; ++a)
            for (int i = 0; i < x[a].r * x[a].c; ++i)
                if (x[a].a[i]) return false;
        return true;
    }
    bool loops_only() const {
        for (int a = 0; a < na; ++a)
            if (as[a] != at[a]) return false;
        return true;
    }
};

void embed_op(const FRep& r, const Mat& M, int src, int tgt, Mat& out) {
    out.r = r.n;
    out.c = r.n;
    std::memset(out.a, 0, sizeof(i64) * (size_t)r.n * r.n);
    for (int i = 0; i < M.r; ++i)
        for (int j = 0; j < M.c; ++j) out.at(r.off[tgt] + i, r.off[src] + j) = M.at(i, j);
}

// Joint kernel of the x-operators as a subspace of the total space.
void joint_x_kernel(const FRep& r, Mat& out) {
    i64 st[MAXA * MAXN * MAXN];
    int rows = 0;
    for (int a = 0; a < r.na; ++a) {
        const Mat& M = r.x[a];
        for (int i = 0; i < M.r; ++i) {
            i64* row = st + (size_t)(rows + i) * r.n;
            std::memset(row, 0, sizeof(i64) * (size_t)r.n);
            for (int j = 0; j < M.c; ++j) row[r.off[r.as[a]] + j] = M.at(i, j);
        }
        rows += M.r;
    }
    kernel_stacked(st, rows, r.n, r.p, out);
}

// Quotient of a graded representation by an invariant graded subspace W.
// W's basis rows must each be supported in a single vertex block (true for
// any kernel-derived basis of a graded subspace; verified).
void quotient_rep(const FRep& r, const Mat& W, FRep& out) {
    // split W into per-block local bases and reduce each block locally
    i64 blk[MAXV][MAXN * MAXN];
    int brows[MAXV] = {};
    for (int k = 0; k < W.r; ++k) {
        int home = -1;
        for (int i = 0; i < r.nv; ++i)
            for (int j = 0; j < r.dim[i]; ++j)
                if (W.at(k, r.off[i] + j)) {
                    if (home == -1) home = i;
                    else if (home != i)
                        throw consistency_error("quotient_rep: basis row spans two blocks");
                }
        if (home == -1) throw consistency_error("quotient_rep: zero basis row");
        for (int j = 0; j < r.dim[home]; ++j)
            blk[home][brows[home] * r.dim[home] + j] = W.at(k, r.off[home] + j);
        ++brows[home];
    }
    int piv[MAXV][MAXN];
    int bdim[MAXV];
    bool isp[MAXV][MAXN];
    for (int i = 0; i < r.nv; ++i) {
        bdim[i] = rref_raw(blk[i], brows[i], r.dim[i], r.p, piv[i]);
        for (int j = 0; j < r.dim[i]; ++j) isp[i][j] = false;
        for (int k = 0; k < bdim[i]; ++k) isp[i][piv[i][k]] = true;
    }
    out.p = r.p;
    out.nv = r.nv;
    out.na = r.na;
    for (int i = 0; i < r.nv; ++i) out.dim[i] = r.dim[i] - bdim[i];
    out.set_offsets();
    for (int a = 0; a < r.na; ++a) {
        out.as[a] = r.as[a];
        out.at[a] = r.at[a];
    }
    // induced map on quotient coordinates (non-pivot columns)
    auto induce = [&](const Mat& M, int s, int t, Mat& Q) {
        Q.r = out.dim[t];
        Q.c = out.dim[s];
        int js = 0;
        for (int cs = 0; cs < r.dim[s]; ++cs) {
            if (isp[s][cs]) continue;
            i64 u[MAXN];
            for (int i = 0; i < r.dim[t]; ++i) u[i] = M.at(i, cs);
            for (int k = 0; k < bdim[t]; ++k) {
                i64 f = u[piv[t][k]];
                if (!f) continue;
                for (int j = 0; j < r.dim[t]; ++j) {
                    i64 v = (u[j] - f * blk[t][k * r.dim[t] + j]) % r.p;
                    u[j] = v < 0 ? v + r.p : v;
                }
            }
            int jt = 0;
            for (int ct = 0; ct < r.dim[t]; ++ct) {
                if (isp[t][ct]) continue;
                Q.at(jt, js) = u[ct];
                ++jt;
            }
            ++js;
        }
    };
    for (int a = 0; a < r.na; ++a) {
        induce(r.x[a], r.as[a], r.at[a], out.x[a]);
        induce(r.xs[a], r.at[a], r.as[a], out.xs[a]);
    }
}

// ---- membership tests ------------------------------------------------------

// Flag with x strictly decreasing and x* preserving: recurse on the canonical
// first step W1 = largest x*-invariant subspace of the joint x-kernel.  Any
// admissible first step sits inside W1, so W1 = 0 is conclusive.
bool sn_member(const FRep& rep) {
    FRep bufs[2];
    int bi = 0;
    const FRep* cur = &rep;
    for (;;) {
        if (cur->n == 0) return true;
        if (cur->x_is_zero()) return true;  // whole space in a single step
        Mat K, W;
        joint_x_kernel(*cur, K);
        Mat ops[MAXA];
        for (int a = 0; a < cur->na; ++a) embed_op(*cur, cur->xs[a], cur->at[a], cur->as[a], ops[a]);
        largest_stable_inside_mat(ops, cur->na, K, cur->p, W);
        if (W.r == 0) return false;
        if (W.r == cur->n) return true;
        quotient_rep(*cur, W, bufs[bi]);
        cur = &bufs[bi];
        bi ^= 1;
    }
}

std::vector<i64> frep_key(const FRep& r) {
    std::vector<i64> key;
    key.reserve(r.nv + 2 * r.na * MAXN);
    for (int i = 0; i < r.nv; ++i) key.push_back(r.dim[i]);
    for (int a = 0; a < r.na; ++a)
        for (int i = 0; i < r.x[a].r * r.x[a].c; ++i) key.push_back(r.x[a].a[i]);
    for (int a = 0; a < r.na; ++a)
        for (int i = 0; i < r.xs[a].r * r.xs[a].c; ++i) key.push_back(r.xs[a].a[i]);
    return key;
}

// Restricted flags (each step inside one vertex).  Greedy on the maximal
// admissible step per vertex, DFS over the vertex choice; relies on the
// quotient-closure assumption guarded by the exhaustive oracle in tests.
bool ssn_rec(const FRep& r, std::map<std::vector<i64>, bool>& memo) {
    if (r.n == 0) return true;
    if (r.x_is_zero() && r.loops_only()) return true;  // blocks absorbed one at a time
    std::vector<i64> key = frep_key(r);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool res = false;
    FRep child;
    for (int i = 0; i < r.nv && !res; ++i) {
        int m = r.dim[i];
        if (m == 0) continue;
        // step must be killed by x-arrows out of i and by non-loop reversed
        // arrows out of i, and be invariant under reversed loops at i
        i64 st[MAXA * MAXN * MAXN];
        int rows = 0;
        for (int a = 0; a < r.na; ++a) {
            if (r.as[a] == i) {
                std::memcpy(st + (size_t)rows * m, r.x[a].a, sizeof(i64) * (size_t)r.x[a].r * m);
                rows += r.x[a].r;
            }
            if (r.at[a] == i && r.as[a] != i) {
                std::memcpy(st + (size_t)rows * m, r.xs[a].a, sizeof(i64) * (size_t)r.xs[a].r * m);
                rows += r.xs[a].r;
            }
        }
        Mat K, U;
        kernel_stacked(st, rows, m, r.p, K);
        Mat loops[MAXA];
        int nl = 0;
        for (int a = 0; a < r.na; ++a)
            if (r.as[a] == i && r.at[a] == i) copy_mat(loops[nl++], r.xs[a]);
        largest_stable_inside_mat(loops, nl, K, r.p, U);
        if (U.r == 0) continue;
        // embed U at block i and quotient
        Mat W;
        W.r = U.r;
        W.c = r.n;
        std::memset(W.a, 0, sizeof(i64) * (size_t)U.r * r.n);
        for (int k = 0; k < U.r; ++k)
            for (int j = 0; j < m; ++j) W.at(k, r.off[i] + j) = U.at(k, j);
        quotient_rep(r, W, child);
        if (ssn_rec(child, memo)) res = true;
    }
    memo.emplace(std::move(key), res);
    return res;
}

bool ssn_member(const FRep& rep) {
    std::map<std::vector<i64>, bool> memo;
    return ssn_rec(rep, memo);
}

// ---- exhaustive flag oracle ------------------------------------------------

// All subspaces of F_p^m as reduced-basis Mats, by closure under adding one
// vector at a time.  Only used under the oracle's tiny caps.
std::vector<Mat> all_subspaces(int m, i64 p) {
    std::map<std::vector<i64>, Mat> seen;
    Mat zero;
    zero.r = 0;
    zero.c = m;
    seen.emplace(std::vector<i64>{}, zero);
    std::vector<Mat> frontier{zero};
    u64 nvec = pow_sat((u64)p, m, 1u << 20);
    while (!frontier.empty()) {
        std::vector<Mat> next;
        for (const Mat& S : frontier) {
            for (u64 vi = 1; vi < nvec; ++vi) {
                i64 buf[(MAXN + 1) * MAXN];
                std::memcpy(buf, S.a, sizeof(i64) * (size_t)S.r * m);
                u64 t = vi;
                for (int j = 0; j < m; ++j) {
                    buf[S.r * m + j] = (i64)(t % (u64)p);
                    t /= (u64)p;
                }
                int piv[MAXN];
                Mat T;
                T.c = m;
                T.r = rref_raw(buf, S.r + 1, m, p, piv);
                std::memcpy(T.a, buf, sizeof(i64) * (size_t)T.r * m);
                std::vector<i64> key(T.a, T.a + (size_t)T.r * m);
                if (seen.emplace(key, T).second) next.push_back(T);
            }
        }
        frontier = std::move(next);
    }
    std::vector<Mat> out;
    for (auto& kv : seen) out.push_back(kv.second);
    return out;
}

bool oracle_rec(const FRep& r, bool restricted) {
    if (r.n == 0) return true;
    // candidate first steps: nonzero graded subspaces, restricted to a single
    // vertex when asked
    std::vector<Mat> cands;
    std::vector<std::vector<Mat>> per_vertex(r.nv);
    for (int i = 0; i < r.nv; ++i) per_vertex[i] = all_subspaces(r.dim[i], r.p);
    auto embed_blocks = [&](const std::vector<const Mat*>& parts) {
        Mat W;
        W.c = r.n;
        W.r = 0;
        for (int i = 0; i < r.nv; ++i) {
            for (int k = 0; k < parts[i]->r; ++k) {
                std::memset(W.a + (size_t)W.r * r.n, 0, sizeof(i64) * (size_t)r.n);
                for (int j = 0; j < r.dim[i]; ++j) W.at(W.r, r.off[i] + j) = parts[i]->at(k, j);
                ++W.r;
            }
        }
        return W;
    };
    if (restricted) {
        for (int i = 0; i < r.nv; ++i)
            for (const Mat& S : per_vertex[i]) {
                if (S.r == 0) continue;
                std::vector<const Mat*> parts;
                Mat zero[MAXV];
                for (int j = 0; j < r.nv; ++j) {
                    zero[j].r = 0;
                    zero[j].c = r.dim[j];
                    parts.push_back(j == i ? &S : &zero[j]);
                }
                cands.push_back(embed_blocks(parts));
            }
    } else {
        std::vector<size_t> idx(r.nv, 0);
        for (;;) {
            std::vector<const Mat*> parts;
            int total = 0;
            for (int i = 0; i < r.nv; ++i) {
                parts.push_back(&per_vertex[i][idx[i]]);
                total += parts.back()->r;
            }
            if (total > 0) cands.push_back(embed_blocks(parts));
            int i = 0;
            while (i < r.nv && ++idx[i] == per_vertex[i].size()) idx[i++] = 0;
            if (i == r.nv) break;
        }
    }
    for (const Mat& W : cands) {
        // x(W) = 0 and x*(W) <= W
        Mat C;
        kernel_mat(W, r.p, C);
        bool ok = true;
        Mat emb, prod;
        for (int a = 0; a < r.na && ok; ++a) {
            embed_op(r, r.x[a], r.as[a], r.at[a], emb);
            for (int k = 0; k < W.r && ok; ++k)
                for (int i = 0; i < r.n && ok; ++i) {
                    i64 acc = 0;
                    for (int j = 0; j < r.n; ++j) acc += emb.at(i, j) * W.at(k, j) % r.p;
                    if (acc % r.p) ok = false;
                }
            embed_op(r, r.xs[a], r.at[a], r.as[a], emb);
            for (int k = 0; k < W.r && ok; ++k) {
                i64 v[MAXN];
                for (int i = 0; i < r.n; ++i) {
                    i64 acc = 0;
                    for (int j = 0; j < r.n; ++j) acc += emb.at(i, j) * W.at(k, j) % r.p;
                    v[i] = acc % r.p;
                }
                for (int ci = 0; ci < C.r && ok; ++ci) {
                    i64 acc = 0;
                    for (int j = 0; j < r.n; ++j) acc += C.at(ci, j) * v[j] % r.p;
                    if (acc % r.p) ok = false;
                }
            }
        }
        if (!ok) continue;
        FRep child;
        quotient_rep(r, W, child);
        if (oracle_rec(child, restricted)) return true;
    }
    return false;
}

// ---- conversions -----------------------------------------------------------

FRep to_frep(const Representation& rep) {
    rep.check();
    const Quiver& q = rep.q;
    if (q.nv() > MAXV || q.na() > MAXA) throw size_error("representation: too many vertices/arrows");
    FRep r;
    r.p = rep.p;
    r.nv = q.nv();
    r.na = q.na();
    i64 total = 0;
    for (int i = 0; i < r.nv; ++i) {
        r.dim[i] = (int)rep.dim[i];
        total += rep.dim[i];
    }
    if (total > MAXN) throw size_error("representation: total dimension exceeds enumeration cap");
    r.set_offsets();
    for (int a = 0; a < r.na; ++a) {
        r.as[a] = q.arrows[a].first;
        r.at[a] = q.arrows[a].second;
        r.x[a].r = r.dim[r.at[a]];
        r.x[a].c = r.dim[r.as[a]];
        for (int i = 0; i < r.x[a].r; ++i)
            for (int j = 0; j < r.x[a].c; ++j) r.x[a].at(i, j) = rep.x[a].at(i, j).v;
        r.xs[a].r = r.dim[r.as[a]];
        r.xs[a].c = r.dim[r.at[a]];
        for (int i = 0; i < r.xs[a].r; ++i)
            for (int j = 0; j < r.xs[a].c; ++j) r.xs[a].at(i, j) = rep.xs[a].at(i, j).v;
    }
    return r;
}

// ---- counting helpers ------------------------------------------------------

struct EnumLayout {
    i64 p;
    int nv, na, n;
    std::vector<int> dim, off;
    std::vector<std::pair<int, int>> arrows;
    int nx = 0, nxs = 0, neq = 0;
    std::vector<int> xbase, xsbase, eqbase;

    EnumLayout(const Quiver& q, const DimVector& v, i64 p_) : p(p_) {
        nv = q.nv();
        na = q.na();
        dim.assign(nv, 0);
        off.assign(nv, 0);
        n = 0;
        for (int i = 0; i < nv; ++i) {
            dim[i] = (int)v[i];
            off[i] = n;
            n += dim[i];
        }
        arrows = q.arrows;
        for (auto [s, t] : arrows) {
            xbase.push_back(nx);
            nx += dim[t] * dim[s];
            xsbase.push_back(nxs);
            nxs += dim[s] * dim[t];
        }
        for (int i = 0; i < nv; ++i) {
            eqbase.push_back(neq);
            neq += dim[i] * dim[i];
        }
    }

    void init_frep(FRep& r) const {
        r.p = p;
        r.nv = nv;
        r.na = na;
        for (int i = 0; i < nv; ++i) r.dim[i] = dim[i];
        r.set_offsets();
        for (int a = 0; a < na; ++a) {
            r.as[a] = arrows[a].first;
            r.at[a] = arrows[a].second;
            r.x[a].r = dim[arrows[a].second];
            r.x[a].c = dim[arrows[a].first];
            r.xs[a].r = dim[arrows[a].first];
            r.xs[a].c = dim[arrows[a].second];
        }
    }

    void decode_x(u64 xi, FRep& r) const {
        for (int a = 0; a < na; ++a) {
            int sz = r.x[a].r * r.x[a].c;
            for (int e = 0; e < sz; ++e) {
                r.x[a].a[e] = (i64)(xi % (u64)p);
                xi /= (u64)p;
            }
        }
    }

    void fill_xs(const i64* flat, FRep& r) const {
        for (int a = 0; a < na; ++a) {
            int sz = r.xs[a].r * r.xs[a].c;
            std::memcpy(r.xs[a].a, flat + xsbase[a], sizeof(i64) * (size_t)sz);
        }
    }

    // The moment map is linear in the x*-part for fixed x: build the matrix
    // of that linear map (rows = per-vertex equation entries, cols = x*
    // coordinates).
    void build_Lx(const FRep& r, std::vector<i64>& L) const {
        L.assign((size_t)neq * nxs, 0);
        for (int a = 0; a < na; ++a) {
            int s = arrows[a].first, t = arrows[a].second;
            int ds = dim[s], dt = dim[t];
            // + x_a . xs_a at vertex t: coeff of xs_a[u][c] in mu_t[r][c]
            for (int rr = 0; rr < dt; ++rr)
                for (int c = 0; c < dt; ++c)
                    for (int u = 0; u < ds; ++u) {
                        i64& e = L[(size_t)(eqbase[t] + rr * dt + c) * nxs + xsbase[a] + u * dt + c];
                        e = (e + r.x[a].at(rr, u)) % p;
                    }
            // - xs_a . x_a at vertex s: coeff of xs_a[r][w] in mu_s[r][c]
            for (int rr = 0; rr < ds; ++rr)
                for (int c = 0; c < ds; ++c)
                    for (int w = 0; w < dt; ++w) {
                        i64& e = L[(size_t)(eqbase[s] + rr * ds + c) * nxs + xsbase[a] + rr * dt + w];
                        e = ((e - r.x[a].at(w, c)) % p + p) % p;
                    }
        }
    }

    bool total_x_nilpotent(const FRep& r) const {
        Mat X, emb, tmp;
        X.r = X.c = n;
        std::memset(X.a, 0, sizeof(i64) * (size_t)n * n);
        for (int a = 0; a < na; ++a) {
            embed_op(r, r.x[a], arrows[a].first, arrows[a].second, emb);
            for (int e = 0; e < n * n; ++e) X.a[e] = (X.a[e] + emb.a[e]) % p;
        }
        Mat P;
        copy_mat(P, X);
        for (int k = 1; k < n; ++k) {
            mul_mat(P, X, p, tmp);
            copy_mat(P, tmp);
        }
        for (int e = 0; e < n * n; ++e)
            if (P.a[e]) return false;
        return true;
    }

    bool mu_is_zero(const FRep& r) const {
        Mat acc[MAXV], prod;
        for (int i = 0; i < nv; ++i) {
            acc[i].r = acc[i].c = dim[i];
            std::memset(acc[i].a, 0, sizeof(i64) * (size_t)dim[i] * dim[i]);
        }
        for (int a = 0; a < na; ++a) {
            int s = arrows[a].first, t = arrows[a].second;
            mul_mat(r.x[a], r.xs[a], p, prod);
            for (int e = 0; e < dim[t] * dim[t]; ++e) acc[t].a[e] = (acc[t].a[e] + prod.a[e]) % p;
            mul_mat(r.xs[a], r.x[a], p, prod);
            for (int e = 0; e < dim[s] * dim[s]; ++e)
                acc[s].a[e] = ((acc[s].a[e] - prod.a[e]) % p + p) % p;
        }
        for (int i = 0; i < nv; ++i)
            for (int e = 0; e < dim[i] * dim[i]; ++e)
                if (acc[i].a[e]) return false;
        return true;
    }
};

}  // namespace

// ---- public API ------------------------------------------------------------

Representation Representation::zero(const Quiver& q, const DimVector& dim, std::int64_t p) {
    q.check_dim(dim, "Representation");
    Representation r;
    r.q = q;
    r.dim = dim;
    r.p = p;
    Fp z = Fp::zero_of(p);
    for (auto [s, t] : q.arrows) {
        r.x.emplace_back((int)dim[t], (int)dim[s], z);
        r.xs.emplace_back((int)dim[s], (int)dim[t], z);
    }
    return r;
}

void Representation::check() const {
    q.check_dim(dim, "Representation");
    if ((int)x.size() != q.na() || (int)xs.size() != q.na())
        throw domain_error("Representation: arrow matrix count mismatch");
    for (int a = 0; a < q.na(); ++a) {
        auto [s, t] = q.arrows[a];
        if (x[a].rows != dim[t] || x[a].cols != dim[s] || xs[a].rows != dim[s] ||
            xs[a].cols != dim[t])
            throw domain_error("Representation: matrix shape mismatch");
        for (const Fp& e : x[a].a)
            if (e.p != 0 && e.p != p) throw domain_error("Representation: mixed moduli");
        for (const Fp& e : xs[a].a)
            if (e.p != 0 && e.p != p) throw domain_error("Representation: mixed moduli");
    }
}

std::string kind_name(VarietyKind k) {
    switch (k) {
        case VarietyKind::Rep: return "rep";
        case VarietyKind::M: return "m";
        case VarietyKind::Lambda0: return "lambda0";
        case VarietyKind::Lambda1: return "lambda1";
    }
    throw domain_error("kind_name: bad kind");
}

VarietyKind kind_from_name(const std::string& s) {
    if (s == "rep") return VarietyKind::Rep;
    if (s == "m" || s == "M") return VarietyKind::M;
    if (s == "lambda0") return VarietyKind::Lambda0;
    if (s == "lambda1") return VarietyKind::Lambda1;
    throw domain_error("unknown variety kind: " + s);
}

std::vector<Matrix<Fp>> moment_map(const Representation& rep) {
    rep.check();
    Fp z = Fp::zero_of(rep.p);
    std::vector<Matrix<Fp>> mu;
    for (int i = 0; i < rep.q.nv(); ++i)
        mu.emplace_back((int)rep.dim[i], (int)rep.dim[i], z);
    for (int a = 0; a < rep.q.na(); ++a) {
        auto [s, t] = rep.q.arrows[a];
        mu[t] = mu[t] + rep.x[a] * rep.xs[a];
        mu[s] = mu[s] - rep.xs[a] * rep.x[a];
    }
    return mu;
}

bool is_semi_nilpotent(const Representation& rep) { return sn_member(to_frep(rep)); }

bool is_strongly_semi_nilpotent(const Representation& rep) { return ssn_member(to_frep(rep)); }

bool exhaustive_flag_oracle(const Representation& rep, bool restricted) {
    i64 total = 0;
    for (i64 d : rep.dim) total += d;
    if (total > 4 || rep.p > 3)
        throw size_error("exhaustive_flag_oracle: capped at total dim 4, p <= 3");
    return oracle_rec(to_frep(rep), restricted);
}

int epsilon_i(const Representation& rep, int i) {
    rep.check();
    if (i < 0 || i >= rep.q.nv()) throw domain_error("epsilon_i: bad vertex");
    int m = (int)rep.dim[i];
    Fp one(1, rep.p);
    std::vector<Matrix<Fp>> loop_ops;
    std::vector<std::vector<Fp>> gens;
    for (int a = 0; a < rep.q.na(); ++a) {
        auto [s, t] = rep.q.arrows[a];
        if (s == i && t == i) {
            loop_ops.push_back(rep.x[a]);
            loop_ops.push_back(rep.xs[a]);
            continue;
        }
        // incoming double-quiver arrows: x of (j -> i), reversed of (i -> j)
        const Matrix<Fp>* M = nullptr;
        if (t == i) M = &rep.x[a];
        else if (s == i) M = &rep.xs[a];
        if (!M) continue;
        for (int c = 0; c < M->cols; ++c) {
            std::vector<Fp> col((size_t)m, Fp::zero_of(rep.p));
            for (int r = 0; r < m; ++r) col[r] = M->at(r, c);
            gens.push_back(std::move(col));
        }
    }
    Subspace<Fp> U = Subspace<Fp>::span(m, gens, one);
    Subspace<Fp> W = smallest_stable_containing(loop_ops, U);
    return m - W.dim();
}

mpz_class order_G(const DimVector& v, std::int64_t p) {
    mpz_class g = 1;
    for (i64 vi : v) {
        mpz_class pn;
        mpz_ui_pow_ui(pn.get_mpz_t(), (unsigned long)p, (unsigned long)vi);
        for (i64 j = 0; j < vi; ++j) {
            mpz_class pj;
            mpz_ui_pow_ui(pj.get_mpz_t(), (unsigned long)p, (unsigned long)j);
            g *= pn - pj;
        }
    }
    return g;
}

mpz_class order_T(int tau, std::int64_t p) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), (unsigned long)(p - 1), (unsigned long)tau);
    return t;
}

CountRecord count_variety(const Quiver& q, const DimVector& v, std::int64_t p, VarietyKind kind,
                          const CountOptions& opt) {
    q.check_dim(v, "count_variety");
    if (!is_prime(p)) throw domain_error("count_variety: modulus must be prime");
    CountRecord rec;
    rec.q = q;
    rec.dim = v;
    rec.prime = p;
    rec.kind = kind;

    i64 total = 0;
    for (i64 d : v) total += d;
    if (kind == VarietyKind::Rep) {
        // the whole double-quiver representation space is an affine space
        unsigned long dimR = 0;
        for (auto [s, t] : q.arrows) dimR += 2ul * (unsigned long)(v[s] * v[t]);
        mpz_ui_pow_ui(rec.raw.get_mpz_t(), (unsigned long)p, dimR);
        rec.stack = mpq_class(rec.raw) / mpq_class(order_G(v, p));
        rec.stack.canonicalize();
        return rec;
    }
    if (q.nv() > MAXV || q.na() > MAXA || total > MAXN)
        throw size_error("count_variety: quiver/dimension beyond enumeration caps");

    EnumLayout lay(q, v, p);
    u64 budget = opt.budget;
    u64 pw = pow_sat((u64)p, lay.nx, ~0ULL);
    if (pw > budget)
        throw budget_error("count_variety: x-part enumeration needs " + std::to_string(pw) +
                               " candidates (budget " + std::to_string(budget) + ")",
                           pw);
    if (opt.naive_m) {
        if (kind != VarietyKind::M) throw domain_error("naive enumeration applies to kind=M only");
        u64 full = pow_sat((u64)p, lay.nx + lay.nxs, ~0ULL);
        if (full > budget)
            throw budget_error("count_variety: naive enumeration needs " + std::to_string(full) +
                                   " candidates (budget " + std::to_string(budget) + ")",
                               full);
    }

    int nt = opt.threads > 0 ? opt.threads : omp_get_max_threads();
    bool par = !opt.serial_reference && nt > 1;
    if (!par) nt = 1;

    std::vector<mpz_class> fiber_tot((size_t)nt, mpz_class(0));
    std::vector<u64> hit_tot((size_t)nt, 0);
    std::atomic<u64> consumed{0};
    std::atomic<bool> over{false};

#pragma omp parallel num_threads(nt) if (par)
    {
        int tid = omp_get_thread_num();
        mpz_class local = 0, fiber;
        u64 hits = 0;
        FRep rep;
        lay.init_frep(rep);
        std::vector<i64> L, ker, digits, xsflat((size_t)lay.nxs);
        std::vector<int> piv((size_t)lay.nxs);
#pragma omp for schedule(dynamic, 64)
        for (long long xi = 0; xi < (long long)pw; ++xi) {
            if (over.load(std::memory_order_relaxed)) continue;
            lay.decode_x((u64)xi, rep);
            if (kind == VarietyKind::M && opt.naive_m) {
                u64 xspts = pow_sat((u64)p, lay.nxs, ~0ULL);
                for (u64 yi = 0; yi < xspts; ++yi) {
                    u64 t = yi;
                    for (int a = 0; a < rep.na; ++a) {
                        int sz = rep.xs[a].r * rep.xs[a].c;
                        for (int e = 0; e < sz; ++e) {
                            rep.xs[a].a[e] = (i64)(t % (u64)p);
                            t /= (u64)p;
                        }
                    }
                    if (lay.mu_is_zero(rep)) ++hits;
                }
                continue;
            }
            if (kind == VarietyKind::M) {
                lay.build_Lx(rep, L);
                int rank = rref_raw(L.data(), lay.neq, lay.nxs, p, piv.data());
                mpz_ui_pow_ui(fiber.get_mpz_t(), (unsigned long)p, (unsigned long)(lay.nxs - rank));
                local += fiber;
                continue;
            }
            // Lambda kinds: a flag strictly decreasing for x forces the total
            // x-operator to be nilpotent, so prune early
            if (!lay.total_x_nilpotent(rep)) continue;
            lay.build_Lx(rep, L);
            int k = 0;
            ker = kernel_vec(L, lay.neq, lay.nxs, p, k);
            u64 pts = pow_sat((u64)p, k, ~0ULL);
            if (pts > budget) {
                consumed.store(~0ULL, std::memory_order_relaxed);
                over.store(true, std::memory_order_relaxed);
                continue;
            }
            u64 before = consumed.fetch_add(pts, std::memory_order_relaxed);
            if (before + pts > budget) {
                over.store(true, std::memory_order_relaxed);
                continue;
            }
            digits.assign((size_t)k, 0);
            for (u64 ci = 0; ci < pts; ++ci) {
                u64 t = ci;
                for (int d = 0; d < k; ++d) {
                    digits[d] = (i64)(t % (u64)p);
                    t /= (u64)p;
                }
                for (int j = 0; j < lay.nxs; ++j) {
                    i64 acc = 0;
                    for (int d = 0; d < k; ++d) acc += digits[d] * ker[(size_t)d * lay.nxs + j] % p;
                    xsflat[j] = acc % p;
                }
                lay.fill_xs(xsflat.data(), rep);
                bool in = kind == VarietyKind::Lambda0 ? sn_member(rep) : ssn_member(rep);
                if (in) ++hits;
            }
        }
        fiber_tot[(size_t)tid] = local;
        hit_tot[(size_t)tid] = hits;
    }
    if (over.load())
        throw budget_error("count_variety: membership tests exceed budget " +
                               std::to_string(budget),
                           consumed.load());

    rec.raw = 0;
    for (int t = 0; t < nt; ++t) rec.raw += fiber_tot[(size_t)t] + mpz_class((unsigned long)hit_tot[(size_t)t]);
    rec.stack = mpq_class(rec.raw) / mpq_class(order_G(v, p));
    rec.stack.canonicalize();
    return rec;
}

QPoly count_polynomial(const Quiver& q, const DimVector& v, VarietyKind kind,
                       const std::vector<std::int64_t>& primes, int degree_bound,
                       const CountOptions& opt) {
    if ((int)primes.size() < degree_bound + 1)
        throw domain_error("count_polynomial: need at least degree_bound + 1 primes");
    std::vector<std::pair<mpz_class, mpz_class>> pts;
    for (i64 p : primes) {
        CountRecord r = count_variety(q, v, p, kind, opt);
        pts.emplace_back(mpz_class(p), r.raw);
    }
    InterpolationResult ir = interpolate_poly(pts, degree_bound);
    if (!ir.integer_coefficients)
        throw consistency_error("count_polynomial: interpolation has non-integer coefficients");
    if (!ir.consistent)
        throw consistency_error("count_polynomial: extra primes reject the interpolation");
    return ir.poly;
}

std::string count_record_to_json(const CountRecord& r) {
    nlohmann::json j;
    j["quiver"] = nlohmann::json::parse(quiver_to_json(r.q));
    j["dim"] = nlohmann::json::parse(dimvector_to_json(r.q, r.dim));
    j["prime"] = r.prime;
    j["kind"] = kind_name(r.kind);
    j["raw"] = r.raw.get_str();
    mpq_class s = r.stack;
    s.canonicalize();
    j["stack"] = {{"num", s.get_num().get_str()}, {"den", s.get_den().get_str()}};
    return j.dump();
}

}  // namespace qlab
