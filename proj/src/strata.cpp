#include "qlab/strata.hpp"

#include <random>

namespace qlab {

namespace {

using i64 = std::int64_t;

i64 sym_form_1v(int g, i64 a, i64 b) { return 2 * (1 - (i64)g) * a * b; }

// Compositions of l into ordered positive parts.
std::vector<std::vector<i64>> int_compositions(i64 l) {
    std::vector<std::vector<i64>> out;
    std::vector<i64> cur;
    auto rec = [&](auto&& self, i64 left) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (i64 k = 1; k <= left; ++k) {
            cur.push_back(k);
            self(self, left - k);
            cur.pop_back();
        }
    };
    rec(rec, l);
    return out;
}

i64 parabolic_dim(const std::vector<i64>& blocks) {
    i64 d = 0;
    for (size_t s = 0; s < blocks.size(); ++s)
        for (size_t t = s; t < blocks.size(); ++t) d += blocks[s] * blocks[t];
    return d;
}

Matrix<Fp> mat_zero(int r, int c, i64 p) { return Matrix<Fp>(r, c, Fp::zero_of(p)); }

bool mat_is_zero(const Matrix<Fp>& m) {
    for (const Fp& e : m.a)
        if (!e.is_zero()) return false;
    return true;
}

}  // namespace

DimVector rep_type_total(const RepType& tau) {
    if (tau.parts.empty()) throw domain_error("rep_type_total: empty type");
    DimVector total(tau.parts.front().dim.size(), 0);
    for (const RepTypePart& part : tau.parts) {
        if (part.mult < 1 || part.dim.size() != total.size())
            throw domain_error("rep_type_total: malformed part");
        for (size_t i = 0; i < total.size(); ++i) total[i] += part.mult * part.dim[i];
    }
    return total;
}

std::int64_t dim_M0_stratum(const Quiver& q, const DimVector& w, const RepType& tau) {
    q.check_dim(w, "dim_M0_stratum");
    rep_type_total(tau);  // validates shapes
    bool has_w = false;
    for (i64 wi : w) has_w = has_w || wi != 0;
    int framed = 0;
    for (const RepTypePart& part : tau.parts)
        if (part.framed) {
            ++framed;
            if (part.mult != 1)
                throw domain_error("dim_M0_stratum: framed part must have multiplicity 1");
        }
    if (framed > 1 || (has_w && framed != 1))
        throw domain_error("dim_M0_stratum: exactly one part carries the framing");
    FramedQuiver fq = framed_quiver(q, w);
    i64 dim = 0;
    for (const RepTypePart& part : tau.parts) {
        DimVector u = fq.lift(part.dim, part.framed ? 1 : 0);
        dim += 2 - euler_form(fq.q, u, u);
    }
    return dim;
}

std::int64_t lambda_flag_dim(int g, std::int64_t v, const std::vector<std::int64_t>& nu) {
    i64 sum = 0, cross = 0;
    for (size_t i = 0; i < nu.size(); ++i) {
        if (nu[i] < 1) throw domain_error("lambda_flag_dim: composition parts must be positive");
        sum += nu[i];
        for (size_t j = i + 1; j < nu.size(); ++j) cross += nu[i] * nu[j];
    }
    if (sum != v) throw domain_error("lambda_flag_dim: composition does not sum to v");
    return (i64)g * v * v - cross;
}

std::int64_t lambda_prime_dim(int g, std::int64_t l, const std::vector<std::int64_t>& nu,
                              std::int64_t n1) {
    i64 cross = 0;
    i64 sum = 0;
    for (size_t i = 0; i < nu.size(); ++i) {
        if (nu[i] < 1) throw domain_error("lambda_prime_dim: composition parts must be positive");
        sum += nu[i];
        for (size_t j = i + 1; j < nu.size(); ++j) cross += nu[i] * nu[j];
    }
    if (sum != l) throw domain_error("lambda_prime_dim: composition does not sum to l");
    if (n1 < 0) throw domain_error("lambda_prime_dim: negative n1");
    return (i64)g * (n1 + l) * (n1 + l) - cross - n1 * l;
}

std::int64_t hecke_dim(const Quiver& q, const DimVector& v1, const DimVector& v2,
                       const DimVector& w) {
    q.check_dim(v1, "hecke_dim");
    q.check_dim(v2, "hecke_dim");
    DimVector v(v1.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = v1[i] + v2[i];
    i64 total = d_vw(q, v, w) + d_vw(q, v1, w);
    if (total % 2 != 0) throw consistency_error("hecke_dim: non-integral total");
    return total / 2;
}

std::int64_t hecke_stratum_dim(int g, std::int64_t v1, std::int64_t w,
                               const std::vector<std::int64_t>& nu, std::int64_t n1,
                               std::int64_t n2) {
    if (!(0 <= n1 && n1 <= n2 && n2 <= v1))
        throw domain_error("hecke_stratum_dim: need 0 <= n1 <= n2 <= v1");
    i64 l = 0;
    for (i64 part : nu) {
        if (part < 1) throw domain_error("hecke_stratum_dim: composition parts must be positive");
        l += part;
    }
    Quiver q = loop_quiver(g);
    i64 v = v1 + l;
    i64 halves = d_vw(q, {v1}, {w}) + d_vw(q, {v}, {w});
    std::vector<i64> blocks;
    blocks.push_back(v1);
    blocks.insert(blocks.end(), nu.begin(), nu.end());
    // (n1, n2 - n1/2) expands to (1-g)(2 n1 n2 - n1^2); everything else is
    // integral once the two d/2 terms are combined.
    i64 rest = parabolic_dim(blocks) - w * n2 + sym_form_1v(g, n2, v1 - n2) +
               (1 - (i64)g) * (2 * n1 * n2 - n1 * n1) + (n1 < n2 ? 1 : 0);
    if (halves % 2 != 0) throw consistency_error("hecke_stratum_dim: non-integral total");
    return halves / 2 + rest;
}

HeckeScanReport hecke_stratum_scan(const std::vector<int>& gs, int v1_max, int l_max, int w_max) {
    HeckeScanReport rep;
    for (int g : gs)
        for (i64 v1 = 1; v1 <= v1_max; ++v1)
            for (i64 l = 1; l <= l_max; ++l)
                for (const auto& nu : int_compositions(l))
                    for (i64 w = 0; w <= w_max; ++w) {
                        i64 top = hecke_stratum_dim(g, v1, w, nu, 0, 0);
                        for (i64 n2 = 0; n2 <= v1; ++n2)
                            for (i64 n1 = 0; n1 <= n2; ++n1) {
                                if (n1 == 0 && n2 == 0) continue;
                                ++rep.checked;
                                i64 d = hecke_stratum_dim(g, v1, w, nu, n1, n2);
                                if (n2 == v1 && w * v1 <= 1) {
                                    // side conditions of the maximality
                                    // statement fail: no framing/neighbor
                                    // keeps the top exterior step down
                                    ++rep.excluded;
                                    rep.excluded_log.push_back(
                                        "g=" + std::to_string(g) + " v1=" + std::to_string(v1) +
                                        " w=" + std::to_string(w) + " n1=" + std::to_string(n1) +
                                        " n2=" + std::to_string(n2) + " d=" + std::to_string(d) +
                                        " d00=" + std::to_string(top));
                                    continue;
                                }
                                if (d >= top)
                                    rep.violations.push_back(
                                        "g=" + std::to_string(g) + " v1=" + std::to_string(v1) +
                                        " w=" + std::to_string(w) + " n1=" + std::to_string(n1) +
                                        " n2=" + std::to_string(n2) + " d=" + std::to_string(d) +
                                        " d00=" + std::to_string(top));
                            }
                    }
    return rep;
}

FramedRep FramedRep::zero(const Quiver& q, const DimVector& v, const DimVector& w,
                          std::int64_t p) {
    q.check_dim(v, "FramedRep");
    q.check_dim(w, "FramedRep");
    FramedRep r;
    r.q = q;
    r.p = p;
    r.v = v;
    r.w = w;
    for (const auto& [s, t] : q.arrows) {
        r.x.push_back(mat_zero((int)v[t], (int)v[s], p));
        r.xs.push_back(mat_zero((int)v[s], (int)v[t], p));
    }
    for (int i = 0; i < q.nv(); ++i) {
        r.a.push_back(mat_zero((int)v[i], (int)w[i], p));
        r.as.push_back(mat_zero((int)w[i], (int)v[i], p));
    }
    return r;
}

std::vector<Matrix<Fp>> framed_moment_map(const FramedRep& r) {
    std::vector<Matrix<Fp>> mu;
    for (int i = 0; i < r.q.nv(); ++i)
        mu.push_back(r.a[i].cols ? r.a[i] * r.as[i]
                                 : mat_zero((int)r.v[i], (int)r.v[i], r.p));
    for (size_t h = 0; h < r.q.arrows.size(); ++h) {
        auto [s, t] = r.q.arrows[h];
        mu[t] = mu[t] + r.x[h] * r.xs[h];
        mu[s] = mu[s] - r.xs[h] * r.x[h];
    }
    return mu;
}

bool framed_moment_zero(const FramedRep& r) {
    for (const Matrix<Fp>& m : framed_moment_map(r))
        if (!mat_is_zero(m)) return false;
    return true;
}

DiamondRep diamond_lift(const FramedRep& rep, const std::vector<Matrix<Fp>>& g) {
    if (!framed_moment_zero(rep))
        throw domain_error("diamond_lift: moment map does not vanish on the input");
    if ((int)g.size() != rep.q.nv()) throw domain_error("diamond_lift: one g per vertex");
    Fp one(1, rep.p);
    std::vector<Matrix<Fp>> ginv;
    for (int i = 0; i < rep.q.nv(); ++i) {
        if (g[i].rows != (int)rep.v[i] || g[i].cols != (int)rep.v[i])
            throw domain_error("diamond_lift: g shape mismatch");
        ginv.push_back(rep.v[i] ? inverse(g[i], one) : g[i]);
    }
    DiamondRep d;
    d.base = rep.q;
    d.p = rep.p;
    d.v = rep.v;
    d.w = rep.w;
    d.a = rep.a;
    d.as = rep.as;
    for (size_t h = 0; h < rep.q.arrows.size(); ++h) {
        int t = rep.q.arrows[h].second;
        d.x.push_back(g[t] * rep.x[h]);
        d.xs.push_back(rep.xs[h] * ginv[t]);
    }
    for (int i = 0; i < rep.q.nv(); ++i) {
        d.e.push_back(g[i]);
        Matrix<Fp> acc = mat_zero((int)rep.v[i], (int)rep.v[i], rep.p);
        for (size_t h = 0; h < rep.q.arrows.size(); ++h)
            if (rep.q.arrows[h].second == i) acc = acc + d.x[h] * d.xs[h];
        Matrix<Fp> es = ginv[i] * acc;
        for (Fp& eentry : es.a) eentry = -eentry;
        d.es.push_back(std::move(es));
    }
    // postconditions: the diamond moment map vanishes at both vertex levels
    for (int i = 0; i < rep.q.nv(); ++i) {
        // level 2: incoming lifted arrows plus the vertex edge
        Matrix<Fp> mu2 = d.e[i] * d.es[i];
        for (size_t h = 0; h < rep.q.arrows.size(); ++h)
            if (rep.q.arrows[h].second == i) mu2 = mu2 + d.x[h] * d.xs[h];
        // level 1: outgoing lifted arrows, the vertex edge, the framing
        Matrix<Fp> mu1 = mat_zero((int)rep.v[i], (int)rep.v[i], rep.p) - d.es[i] * d.e[i];
        for (size_t h = 0; h < rep.q.arrows.size(); ++h)
            if (rep.q.arrows[h].first == i) mu1 = mu1 - d.xs[h] * d.x[h];
        if (rep.a[i].cols) mu1 = mu1 + rep.a[i] * rep.as[i];
        if (!mat_is_zero(mu1) || !mat_is_zero(mu2))
            throw consistency_error("diamond_lift: diamond moment map does not vanish");
    }
    return d;
}

FramedRep random_m_point(const Quiver& q, const DimVector& v, const DimVector& w,
                         std::int64_t p, std::uint64_t seed) {
    FramedRep r = FramedRep::zero(q, v, w, p);
    std::mt19937_64 rng(seed);
    auto rnd = [&] { return Fp((i64)(rng() % (std::uint64_t)p), p); };
    for (Matrix<Fp>& m : r.x)
        for (Fp& e : m.a) e = rnd();
    for (Matrix<Fp>& m : r.a)
        for (Fp& e : m.a) e = rnd();
    // mu is linear in (xs, as); pick a random kernel element
    int nunk = 0;
    for (size_t h = 0; h < q.arrows.size(); ++h) nunk += r.xs[h].rows * r.xs[h].cols;
    for (int i = 0; i < q.nv(); ++i) nunk += r.as[i].rows * r.as[i].cols;
    int neq = 0;
    for (int i = 0; i < q.nv(); ++i) neq += (int)(v[i] * v[i]);
    Matrix<Fp> L(neq, nunk, Fp::zero_of(p));
    auto eq_base = [&](int i) {
        int b = 0;
        for (int k = 0; k < i; ++k) b += (int)(v[k] * v[k]);
        return b;
    };
    int col0 = 0;
    for (size_t h = 0; h < q.arrows.size(); ++h) {
        auto [s, t] = q.arrows[h];
        // xs_h[u][c] appears in mu_t[rr][c] with weight x_h[rr][u] and in
        // mu_s[u][cc] with weight -x_h[cc]... indices spelled out below
        for (int u = 0; u < r.xs[h].rows; ++u)
            for (int c = 0; c < r.xs[h].cols; ++c) {
                int col = col0 + u * r.xs[h].cols + c;
                for (int rr = 0; rr < (int)v[t]; ++rr)
                    L.at(eq_base(t) + rr * (int)v[t] + c, col) += r.x[h].at(rr, u);
                for (int cc = 0; cc < (int)v[s]; ++cc)
                    L.at(eq_base(s) + u * (int)v[s] + cc, col) -= r.x[h].at(c, cc);
            }
        col0 += r.xs[h].rows * r.xs[h].cols;
    }
    for (int i = 0; i < q.nv(); ++i) {
        for (int u = 0; u < r.as[i].rows; ++u)
            for (int c = 0; c < r.as[i].cols; ++c) {
                int col = col0 + u * r.as[i].cols + c;
                for (int rr = 0; rr < (int)v[i]; ++rr)
                    L.at(eq_base(i) + rr * (int)v[i] + c, col) += r.a[i].at(rr, u);
            }
        col0 += r.as[i].rows * r.as[i].cols;
    }
    auto basis = kernel(L, Fp(1, p));
    std::vector<Fp> sol((size_t)nunk, Fp::zero_of(p));
    for (const auto& kv : basis) {
        Fp coeff = rnd();
        for (int j = 0; j < nunk; ++j) sol[(size_t)j] += coeff * kv[(size_t)j];
    }
    int pos = 0;
    for (size_t h = 0; h < q.arrows.size(); ++h)
        for (Fp& e : r.xs[h].a) e = sol[(size_t)pos++];
    for (int i = 0; i < q.nv(); ++i)
        for (Fp& e : r.as[i].a) e = sol[(size_t)pos++];
    return r;
}

}  // namespace qlab
