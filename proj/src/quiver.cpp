#include "qlab/quiver.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"

namespace qlab {

Quiver::Quiver(std::vector<std::string> vertex_ids,
               const std::vector<std::pair<std::string, std::string>>& named_arrows) {
    verts = std::move(vertex_ids);
    std::sort(verts.begin(), verts.end());
    if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
        throw domain_error("Quiver: duplicate vertex id");
    for (const auto& [s, t] : named_arrows) arrows.emplace_back(index(s), index(t));
}

int Quiver::index(const std::string& id) const {
    auto it = std::lower_bound(verts.begin(), verts.end(), id);
    if (it == verts.end() || *it != id)
        throw domain_error("Quiver: unknown vertex id '" + id + "'");
    return (int)(it - verts.begin());
}

int Quiver::loops(int i) const {
    int n = 0;
    for (const auto& [s, t] : arrows)
        if (s == i && t == i) ++n;
    return n;
}

int Quiver::arrow_count(int i, int j) const {
    int n = 0;
    for (const auto& [s, t] : arrows)
        if (s == i && t == j) ++n;
    return n;
}

std::vector<std::vector<int>> Quiver::adjacency() const {
    std::vector<std::vector<int>> m(nv(), std::vector<int>(nv(), 0));
    for (const auto& [s, t] : arrows) m[s][t]++;
    return m;
}

void Quiver::check_dim(const DimVector& v, const char* what) const {
    if ((int)v.size() != nv())
        throw domain_error(std::string(what) + ": dimension vector has wrong length");
    for (auto x : v)
        if (x < 0) throw domain_error(std::string(what) + ": negative dimension");
}

Quiver jordan_quiver() { return Quiver({"i"}, {{"i", "i"}}); }

Quiver loop_quiver(int g) {
    std::vector<std::pair<std::string, std::string>> as((size_t)g, {"i", "i"});
    return Quiver({"i"}, as);
}

Quiver a2_quiver() { return Quiver({"i", "j"}, {{"i", "j"}}); }

std::int64_t ringel_form(const Quiver& q, const DimVector& v, const DimVector& w) {
    q.check_dim(v, "ringel_form");
    q.check_dim(w, "ringel_form");
    std::int64_t r = 0;
    for (int i = 0; i < q.nv(); ++i) r += v[i] * w[i];
    for (const auto& [s, t] : q.arrows) r -= v[s] * w[t];
    return r;
}

std::int64_t euler_form(const Quiver& q, const DimVector& v, const DimVector& w) {
    return ringel_form(q, v, w) + ringel_form(q, w, v);
}

std::int64_t d_v(const Quiver& q, const DimVector& v) {
    std::int64_t dot = 0;
    q.check_dim(v, "d_v");
    for (int i = 0; i < q.nv(); ++i) dot += v[i] * v[i];
    return dot - euler_form(q, v, v) / 2;
}

std::int64_t d_vw(const Quiver& q, const DimVector& v, const DimVector& w) {
    std::int64_t dot = 0;
    q.check_dim(v, "d_vw");
    q.check_dim(w, "d_vw");
    for (int i = 0; i < q.nv(); ++i) dot += v[i] * w[i];
    return 2 * dot - euler_form(q, v, v);
}

FramedQuiver framed_quiver(const Quiver& q, const DimVector& w) {
    q.check_dim(w, "framed_quiver");
    std::string inf_name = "inf";
    while (std::binary_search(q.verts.begin(), q.verts.end(), inf_name))
        inf_name = "_" + inf_name;
    std::vector<std::string> ids = q.verts;
    ids.push_back(inf_name);
    std::vector<std::pair<std::string, std::string>> as;
    for (const auto& [s, t] : q.arrows) as.emplace_back(q.verts[s], q.verts[t]);
    for (int i = 0; i < q.nv(); ++i)
        for (std::int64_t k = 0; k < w[i]; ++k) as.emplace_back(inf_name, q.verts[i]);
    FramedQuiver f;
    f.q = Quiver(ids, as);
    f.inf = f.q.index(inf_name);
    f.vmap.resize(q.nv());
    for (int i = 0; i < q.nv(); ++i) f.vmap[i] = f.q.index(q.verts[i]);
    return f;
}

DimVector FramedQuiver::lift(const DimVector& v, std::int64_t a) const {
    DimVector out(q.nv(), 0);
    for (size_t i = 0; i < vmap.size(); ++i) out[vmap[i]] = v[i];
    out[inf] = a;
    return out;
}

std::int64_t framed_pairing_printed(const Quiver& q, const DimVector& w,
                                    const DimVector& v, const DimVector& vp,
                                    std::int64_t a, std::int64_t ap) {
    std::int64_t r = euler_form(q, v, vp) + a * ap;
    for (int i = 0; i < q.nv(); ++i) r -= w[i] * (v[i] * ap + vp[i] * a);
    return r;
}

Quiver double_quiver(const Quiver& q) {
    Quiver d = q;
    for (const auto& [s, t] : q.arrows) d.arrows.emplace_back(t, s);
    return d;
}

static std::string level_name(const std::string& base, int l) {
    return base + "@" + std::to_string(l);
}

Quiver graded_quiver(const Quiver& q, int lmin, int lmax) {
    if (lmin > lmax) throw domain_error("graded_quiver: empty level window");
    std::vector<std::string> ids;
    for (const auto& v : q.verts)
        for (int l = lmin; l <= lmax; ++l) ids.push_back(level_name(v, l));
    std::vector<std::pair<std::string, std::string>> as;
    for (int l = lmin; l <= lmax; ++l) {
        for (const auto& [s, t] : q.arrows) {
            // forward copy drops the level by one
            if (l - 1 >= lmin)
                as.emplace_back(level_name(q.verts[s], l), level_name(q.verts[t], l - 1));
            // reversed copy preserves the level
            as.emplace_back(level_name(q.verts[t], l), level_name(q.verts[s], l));
        }
    }
    return Quiver(ids, as);
}

Quiver bipartite_quiver(const Quiver& q) {
    std::vector<std::string> ids;
    for (const auto& v : q.verts) {
        ids.push_back(v + "@1");
        ids.push_back(v + "@2");
    }
    std::vector<std::pair<std::string, std::string>> as;
    for (const auto& [s, t] : q.arrows)
        as.emplace_back(q.verts[s] + "@1", q.verts[t] + "@2");
    for (const auto& v : q.verts) as.emplace_back(v + "@1", v + "@2");
    Quiver b(ids, as);
    // invariant: the result has no oriented cycle (Kahn's algorithm)
    std::vector<int> indeg(b.nv(), 0);
    for (const auto& [s, t] : b.arrows) indeg[t]++;
    std::vector<int> stack;
    for (int i = 0; i < b.nv(); ++i)
        if (indeg[i] == 0) stack.push_back(i);
    int seen = 0;
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        ++seen;
        for (const auto& [s, t] : b.arrows)
            if (s == i && --indeg[t] == 0) stack.push_back(t);
    }
    if (seen != b.nv())
        throw consistency_error("bipartite_quiver: oriented cycle detected");
    return b;
}

// All nonzero u with 0 <= u <= v, lexicographically increasing.
static void enum_box(const DimVector& v, DimVector& u, size_t i,
                     std::vector<DimVector>& out) {
    if (i == v.size()) {
        for (auto x : u)
            if (x != 0) { out.push_back(u); break; }
        return;
    }
    for (std::int64_t x = 0; x <= v[i]; ++x) {
        u[i] = x;
        enum_box(v, u, i + 1, out);
    }
    u[i] = 0;
}

static void enum_comps(const DimVector& rest, const std::vector<DimVector>& parts_pool,
                       std::vector<DimVector>& acc, bool restricted,
                       std::vector<Composition>& out, std::size_t cap) {
    bool done = true;
    for (auto x : rest)
        if (x != 0) { done = false; break; }
    if (done) {
        if (!acc.empty()) {
            if (out.size() >= cap) throw size_error("compositions: enumeration cap exceeded");
            out.push_back(Composition{acc, restricted});
        }
        return;
    }
    for (const auto& p : parts_pool) {
        bool fits = true;
        for (size_t i = 0; i < rest.size(); ++i)
            if (p[i] > rest[i]) { fits = false; break; }
        if (!fits) continue;
        DimVector next = rest;
        for (size_t i = 0; i < rest.size(); ++i) next[i] -= p[i];
        acc.push_back(p);
        enum_comps(next, parts_pool, acc, restricted, out, cap);
        acc.pop_back();
    }
}

std::vector<Composition> compositions(const DimVector& v, bool restricted, std::size_t cap) {
    std::int64_t total = 0;
    for (auto x : v) {
        if (x < 0) throw domain_error("compositions: negative dimension");
        total += x;
    }
    if (total > 24) throw size_error("compositions: total dimension too large");
    std::vector<DimVector> pool;
    if (restricted) {
        for (size_t i = 0; i < v.size(); ++i)
            for (std::int64_t x = 1; x <= v[i]; ++x) {
                DimVector p(v.size(), 0);
                p[i] = x;
                pool.push_back(p);
            }
        std::sort(pool.begin(), pool.end());
    } else {
        DimVector u(v.size(), 0);
        enum_box(v, u, 0, pool);  // already lexicographic
    }
    std::vector<Composition> out;
    std::vector<DimVector> acc;
    enum_comps(v, pool, acc, restricted, out, cap);
    return out;
}

bool antidominant_leq(const Composition& mu, const Composition& nu) {
    if (mu.parts.empty() || nu.parts.empty())
        throw domain_error("antidominant_leq: empty composition");
    size_t n = mu.parts[0].size();
    DimVector tm(n, 0), tn(n, 0);
    for (const auto& p : mu.parts)
        for (size_t i = 0; i < n; ++i) tm[i] += p[i];
    for (const auto& p : nu.parts)
        for (size_t i = 0; i < n; ++i) tn[i] += p[i];
    if (tm != tn) throw domain_error("antidominant_leq: totals differ");
    size_t len = std::max(mu.parts.size(), nu.parts.size());
    DimVector sm(n, 0), sn(n, 0);
    for (size_t k = 0; k < len; ++k) {
        if (k < mu.parts.size())
            for (size_t i = 0; i < n; ++i) sm[i] += mu.parts[k][i];
        if (k < nu.parts.size())
            for (size_t i = 0; i < n; ++i) sn[i] += nu.parts[k][i];
        for (size_t i = 0; i < n; ++i)
            if (sm[i] < sn[i]) return false;
    }
    return true;
}

bool is_generic_character(const Quiver& q, const std::vector<std::int64_t>& theta,
                          const DimVector& v, const DimVector& w, std::size_t cap) {
    q.check_dim(v, "is_generic_character");
    q.check_dim(w, "is_generic_character");
    if ((int)theta.size() != q.nv())
        throw domain_error("is_generic_character: theta has wrong length");
    std::size_t boxsize = 1;
    for (auto x : v) {
        boxsize *= (std::size_t)(x + 1);
        if (boxsize > cap) throw size_error("is_generic_character: box search cap exceeded");
    }
    std::int64_t theta_inf = 0;
    for (int i = 0; i < q.nv(); ++i) theta_inf -= theta[i] * v[i];
    DimVector u(v.size(), 0);
    for (;;) {
        bool trivial_zero = true, trivial_full = true;
        std::int64_t s = 0;
        for (size_t i = 0; i < u.size(); ++i) {
            s += theta[i] * u[i];
            if (u[i] != 0) trivial_zero = false;
            if (u[i] != v[i]) trivial_full = false;
        }
        if (!trivial_zero && !trivial_full && (s == 0 || s + theta_inf == 0)) return false;
        // advance the box counter
        size_t i = 0;
        while (i < u.size() && u[i] == v[i]) u[i++] = 0;
        if (i == u.size()) break;
        ++u[i];
    }
    return true;
}

std::string quiver_to_json(const Quiver& q) {
    nlohmann::json j;
    j["vertices"] = q.verts;
    j["arrows"] = nlohmann::json::array();
    for (const auto& [s, t] : q.arrows)
        j["arrows"].push_back({{"src", q.verts[s]}, {"tgt", q.verts[t]}});
    return j.dump();
}

Quiver quiver_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<std::string> ids = j.at("vertices").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> as;
    for (const auto& a : j.at("arrows"))
        as.emplace_back(a.at("src").get<std::string>(), a.at("tgt").get<std::string>());
    return Quiver(ids, as);
}

std::string dimvector_to_json(const Quiver& q, const DimVector& v) {
    q.check_dim(v, "dimvector_to_json");
    nlohmann::json j = nlohmann::json::object();
    for (int i = 0; i < q.nv(); ++i) j[q.verts[i]] = v[i];
    return j.dump();
}

DimVector dimvector_from_json(const Quiver& q, const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    DimVector v(q.nv(), 0);
    for (auto it = j.begin(); it != j.end(); ++it)
        v[q.index(it.key())] = it.value().get<std::int64_t>();
    return v;
}

}  // namespace qlab
