#include "msum/ansatz.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "msum/linalg.hpp"
#include "msum/roots.hpp"

namespace msum {

namespace {

/// Scalar that is affine in a set of free parameters: c + sum t[p] * param_p.
struct Affine {
    Rat c = Rat(0);
    std::map<std::size_t, Rat> t;
};

Affine resolve(const Affine& a, const std::map<std::size_t, Affine>& defs) {
    Affine r;
    r.c = a.c;
    for (const auto& [p, co] : a.t) {
        auto it = defs.find(p);
        if (it == defs.end()) {
            Rat& slot = r.t[p];
            slot = slot + co;
            if (slot.is_zero()) r.t.erase(p);
        } else {
            Affine sub = resolve(it->second, defs);
            r.c = r.c + sub.c * co;
            for (const auto& [q, cq] : sub.t) {
                Rat& slot = r.t[q];
                slot = slot + cq * co;
                if (slot.is_zero()) r.t.erase(q);
            }
        }
    }
    return r;
}

std::string key_str(const HKey& k) {
    std::string s;
    if (k.alt) s += "(-1)^N";
    if (!k.zeta.empty()) {
        if (!s.empty()) s += "*";
        s += zeta_mon_str(k.zeta);
    }
    if (!k.sum.empty()) {
        if (!s.empty()) s += "*";
        s += hindex_str(k.sum);
    }
    return s.empty() ? "1" : s;
}

/// Suggested sum adjunctions for an unmatched residual at the given key.
std::vector<std::string> residual_hints(const HKey& key, const RatFuncQ& res) {
    std::vector<std::string> out;
    if (res.is_zero()) return out;
    for (long r : integer_roots(res.den())) {
        int p = root_multiplicity(res.den(), Rat(r));
        HIndex m;
        m.push_back(key.alt ? -p : p);
        m.insert(m.end(), key.sum.begin(), key.sum.end());
        out.push_back("adjoin " + hindex_str(m));
    }
    if (out.empty()) out.push_back("increase --weight");
    return out;
}

class SliceSolver {
public:
    SliceSolver(std::vector<RatFuncQ> coeffs, const AnsatzConfig& cfg)
        : a_(std::move(coeffs)) {
        skel_ = basis_enumerate(cfg.basis);
        skel_key_.reserve(skel_.size());
        for (const auto& t : skel_) skel_key_.push_back(HKey{t.alt, t.zeta, t.sum});
        image_.resize(skel_.size());
        const long n = (long)skel_.size();
#pragma omp parallel for schedule(dynamic)
        for (long u = 0; u < n; ++u) {
            HExpr b = HExpr::term(skel_[(std::size_t)u]);
            HExpr img;
            for (std::size_t i = 0; i < a_.size(); ++i) {
                if (a_[i].is_zero()) continue;
                HExpr sh = b.shifted(-(long)i);
                img += sh * a_[i];
            }
            image_[(std::size_t)u] = std::move(img);
        }
    }

    const std::vector<HTerm>& skeletons() const { return skel_; }
    const std::vector<std::string>& unmatched() const { return unmatched_; }
    const std::vector<std::string>& hints() const { return hints_; }

    /// Solve  sum_i a_i(N) I(N-i) = rhs  within the basis span.  On success
    /// returns one affine coefficient per skeleton (parameters allocated from
    /// `param_counter`); empty vector on basis failure.
    std::vector<Affine> run(const HExpr& rhs, std::size_t& param_counter) {
        struct Bucket {
            std::map<std::size_t, RatFuncQ> lhs;
            RatFuncQ rhs;
        };
        std::map<HKey, Bucket> buckets;
        for (std::size_t u = 0; u < skel_.size(); ++u)
            for (const auto& t : image_[u].terms()) {
                RatFuncQ& slot = buckets[HKey{t.alt, t.zeta, t.sum}].lhs[u];
                slot = slot + t.coeff;
            }
        for (const auto& t : rhs.terms()) {
            RatFuncQ& slot = buckets[HKey{t.alt, t.zeta, t.sum}].rhs;
            slot = slot + t.coeff;
        }

        std::vector<std::optional<Affine>> val(skel_.size());
        std::map<std::size_t, Affine> defs;
        bool failed = false;

        // The operator maps an index only to itself and its proper suffixes,
        // so processing depth levels from the deepest down makes every bucket
        // involve only its own unknowns plus already-determined deeper ones.
        std::size_t max_depth = 0;
        for (const auto& [k, b] : buckets) max_depth = std::max(max_depth, k.sum.size());
        for (const auto& k : skel_key_) max_depth = std::max(max_depth, k.sum.size());

        for (std::size_t depth = max_depth + 1; depth-- > 0;) {
            for (auto& [key, bucket] : buckets) {
                if (key.sum.size() != depth) continue;
                solve_bucket(key, bucket.lhs, bucket.rhs, val, defs, param_counter, failed);
            }
            // unknowns of this depth that appear in no bucket: kernel elements
            for (std::size_t u = 0; u < skel_.size(); ++u) {
                if (skel_key_[u].sum.size() != depth || val[u]) continue;
                Affine f;
                f.t[param_counter++] = Rat(1);
                val[u] = f;
            }
        }

        if (failed) return {};
        std::vector<Affine> out;
        out.reserve(skel_.size());
        for (std::size_t u = 0; u < skel_.size(); ++u) out.push_back(resolve(*val[u], defs));
        return out;
    }

private:
    void solve_bucket(const HKey& key, const std::map<std::size_t, RatFuncQ>& lhs,
                      const RatFuncQ& rhs, std::vector<std::optional<Affine>>& val,
                      std::map<std::size_t, Affine>& defs, std::size_t& param_counter,
                      bool& failed) {
        std::map<std::size_t, RatFuncQ> col_u; // unsolved unknowns of this key
        std::map<std::size_t, RatFuncQ> col_p; // active free parameters
        RatFuncQ F = rhs;
        for (const auto& [u, R] : lhs) {
            if (!val[u]) {
                col_u[u] = R;
                continue;
            }
            Affine v = resolve(*val[u], defs);
            if (!v.c.is_zero()) F = F - R * RatFuncQ(PolyQ(v.c));
            for (const auto& [p, co] : v.t) {
                RatFuncQ& slot = col_p[p];
                slot = slot + R * RatFuncQ(PolyQ(co));
            }
        }
        for (auto it = col_p.begin(); it != col_p.end();)
            it = it->second.is_zero() ? col_p.erase(it) : std::next(it);

        if (col_u.empty() && col_p.empty()) {
            if (!F.is_zero()) {
                failed = true;
                unmatched_.push_back(key_str(key));
                for (auto& h : residual_hints(key, F)) hints_.push_back(h);
            }
            return;
        }

        // identity of rational functions: clear denominators, match powers
        PolyQ D(Rat(1));
        auto lcm_in = [&D](const RatFuncQ& g) { D = D * (g.den() / gcd(D, g.den())); };
        for (const auto& [u, g] : col_u) lcm_in(g);
        for (const auto& [p, g] : col_p) lcm_in(g);
        lcm_in(F);

        std::vector<PolyQ> cols;
        std::vector<std::size_t> uid, pid;
        for (const auto& [u, g] : col_u) {
            uid.push_back(u);
            cols.push_back(g.num() * (D / g.den()));
        }
        for (const auto& [p, g] : col_p) {
            pid.push_back(p);
            cols.push_back(g.num() * (D / g.den()));
        }
        PolyQ bpoly = F.num() * (D / F.den());
        long maxdeg = bpoly.degree();
        for (const auto& c : cols) maxdeg = std::max(maxdeg, c.degree());

        LinearSystem<Rat> sys;
        for (long e = 0; e <= maxdeg; ++e) {
            std::vector<Rat> row;
            for (const auto& c : cols) row.push_back(c[(std::size_t)e]);
            sys.add_row(std::move(row), bpoly[(std::size_t)e]);
        }
        LinearSolution<Rat> sol = solve_linear(std::move(sys));
        if (!sol.consistent) {
            failed = true;
            unmatched_.push_back(key_str(key));
            for (auto& h : residual_hints(key, F)) hints_.push_back(h);
            for (std::size_t u : uid) val[u] = Affine{};
            return;
        }

        std::vector<std::size_t> fresh;
        for (std::size_t j = 0; j < sol.nullspace.size(); ++j)
            fresh.push_back(param_counter++);
        auto column_value = [&](std::size_t c) {
            Affine v;
            v.c = sol.particular[c];
            for (std::size_t j = 0; j < sol.nullspace.size(); ++j) {
                const Rat& co = sol.nullspace[j][c];
                if (!co.is_zero()) v.t[fresh[j]] = co;
            }
            return v;
        };
        for (std::size_t i = 0; i < uid.size(); ++i) val[uid[i]] = column_value(i);
        for (std::size_t i = 0; i < pid.size(); ++i)
            defs[pid[i]] = column_value(uid.size() + i);
    }

    std::vector<RatFuncQ> a_;
    std::vector<HTerm> skel_;
    std::vector<HKey> skel_key_;
    std::vector<HExpr> image_;
    std::vector<std::string> unmatched_;
    std::vector<std::string> hints_;
};

/// Affine value with coefficients in Q[zeta]: used for ic rows.
struct AffineZ {
    ZetaValue c;
    std::map<std::size_t, ZetaValue> t;
};

} // namespace

AnsatzResult solve_ansatz(const Recurrence& rec, const AnsatzConfig& cfg,
                          const InitialConditions& ics) {
    if (!rec.rhs_resolved)
        throw std::invalid_argument("solve: rhs references unresolved external sequences");

    // normalize the operator's eps-leading order to zero
    long lam = 0;
    bool any = false, eps_dep = false;
    for (const auto& c : rec.coeffs) {
        if (c.is_zero()) continue;
        lam = any ? std::min(lam, c.lead()) : c.lead();
        any = true;
        if (c.high() != c.lead() || c.lead() != 0 || !c.is_exact()) eps_dep = true;
    }
    if (!any) throw std::invalid_argument("solve: zero operator");
    long jmax = 0;
    for (const auto& c : rec.coeffs)
        if (!c.is_zero()) jmax = std::max(jmax, c.high() - lam);

    std::vector<RatFuncQ> a0;
    for (int i = 0; i <= rec.order; ++i) a0.push_back(rec.coeff_q(i, lam));

    const EExpr& rhs = rec.rhs;
    long t_lo = rhs.is_zero() ? 0 : rhs.lead() - lam;
    long t_hi;
    if (cfg.eps_order)
        t_hi = *cfg.eps_order;
    else if (rec.eps_order)
        t_hi = *rec.eps_order;
    else if (eps_dep || !rhs.is_exact())
        throw std::invalid_argument(
            "solve: eps-dependent recurrence without an eps truncation order");
    else
        t_hi = rhs.is_zero() ? t_lo : rhs.high() - lam;
    if (t_hi < t_lo) t_hi = t_lo;

    SliceSolver solver(a0, cfg);
    const auto& skel = solver.skeletons();
    std::size_t params = 0;

    AnsatzResult result;
    std::vector<HExpr> slices;
    for (long t = t_lo; t <= t_hi; ++t) {
        HExpr srhs = rhs.coeff(t + lam);
        for (long j = 1; j <= jmax && t - j >= t_lo; ++j) {
            const HExpr& prev = slices[(std::size_t)(t - j - t_lo)];
            if (prev.is_zero()) continue;
            for (int i = 0; i <= rec.order; ++i) {
                RatFuncQ aij = rec.coeff_q(i, lam + j);
                if (aij.is_zero()) continue;
                srhs -= prev.shifted(-i) * aij;
            }
        }

        std::vector<Affine> vals = solver.run(srhs, params);
        if (vals.empty() && !skel.empty()) {
            result.status = AnsatzStatus::BasisInsufficient;
            result.unmatched = solver.unmatched();
            result.hints = solver.hints();
            std::sort(result.hints.begin(), result.hints.end());
            result.hints.erase(std::unique(result.hints.begin(), result.hints.end()),
                               result.hints.end());
            result.message = "basis insufficient: unmatched key " +
                             (result.unmatched.empty() ? "?" : result.unmatched.front());
            return result;
        }

        // Pin free constants with the ics: they fix the eps^0 slice's values
        // and force every other slice to vanish at the same points.
        std::set<std::size_t> active;
        for (const auto& v : vals)
            for (const auto& [p, co] : v.t) active.insert(p);

        if (!active.empty() && !ics.empty()) {
            std::vector<std::size_t> pids(active.begin(), active.end());
            std::map<std::size_t, std::size_t> pslot;
            for (std::size_t i = 0; i < pids.size(); ++i) pslot[pids[i]] = i;
            LinearSystem<Rat> sys;
            bool singular_ic = false;
            long singular_at = 0;

            for (const auto& [n0, v0] : ics) {
                ZetaValue target = (t == 0) ? v0 : ZetaValue{};
                AffineZ acc;
                for (std::size_t u = 0; u < skel.size(); ++u) {
                    const Affine& av = vals[u];
                    if (av.c.is_zero() && av.t.empty()) continue;
                    if (skel[u].coeff.has_pole_at(Rat(n0))) {
                        // a basis element singular at the ic point must drop
                        // out: its total coefficient is constrained to zero
                        if (av.t.empty()) {
                            if (!av.c.is_zero()) { singular_ic = true; singular_at = n0; }
                            continue;
                        }
                        std::vector<Rat> row(pids.size(), Rat(0));
                        for (const auto& [p, co] : av.t) row[pslot[p]] = co;
                        sys.add_row(std::move(row), -av.c);
                        continue;
                    }
                    ZetaValue bval = HExpr::term(skel[u]).eval(n0);
                    acc.c += bval * av.c;
                    for (const auto& [p, co] : av.t) acc.t[p] += bval * co;
                }
                if (singular_ic) break;
                std::set<ZetaMon> mons;
                for (const auto& [m, c] : target.terms()) mons.insert(m);
                for (const auto& [m, c] : acc.c.terms()) mons.insert(m);
                for (const auto& [p, zv] : acc.t)
                    for (const auto& [m, c] : zv.terms()) mons.insert(m);
                for (const auto& mon : mons) {
                    std::vector<Rat> row(pids.size(), Rat(0));
                    for (const auto& [p, zv] : acc.t) row[pslot[p]] = zv.coeff(mon);
                    sys.add_row(std::move(row), target.coeff(mon) - acc.c.coeff(mon));
                }
            }
            if (singular_ic) {
                result.status = AnsatzStatus::InconsistentIcs;
                result.message = "solution is singular at the initial-condition point N=" +
                                 std::to_string(singular_at);
                return result;
            }
            LinearSolution<Rat> icsol = solve_linear(std::move(sys));
            if (!icsol.consistent) {
                result.status = AnsatzStatus::InconsistentIcs;
                result.message = "initial conditions are inconsistent with the recurrence";
                return result;
            }
            std::map<std::size_t, Affine> icdefs;
            for (std::size_t i = 0; i < pids.size(); ++i) {
                Affine v;
                v.c = icsol.particular[i];
                for (std::size_t j = 0; j < icsol.nullspace.size(); ++j) {
                    const Rat& co = icsol.nullspace[j][i];
                    if (!co.is_zero()) v.t[params + j] = co;
                }
                icdefs[pids[i]] = v;
            }
            params += icsol.nullspace.size();
            for (auto& v : vals) v = resolve(v, icdefs);
            active.clear();
            for (const auto& v : vals)
                for (const auto& [p, co] : v.t) active.insert(p);
        }

        if (!active.empty() && !cfg.zero_free_constants) {
            result.status = AnsatzStatus::Underdetermined;
            result.message = std::to_string(active.size()) +
                             " free homogeneous constant(s) remain; supply initial conditions";
            return result;
        }

        HExpr pinned; // telescoping mode: drop the free directions (set to 0)
        for (std::size_t u = 0; u < skel.size(); ++u)
            if (!vals[u].c.is_zero()) pinned += HExpr::term(skel[u]) * vals[u].c;
        slices.push_back(std::move(pinned));
    }

    std::optional<long> trunc;
    if (eps_dep || !rhs.is_exact() || cfg.eps_order || rec.eps_order) trunc = t_hi;
    result.solution = EExpr(t_lo, std::move(slices), trunc);
    result.status = AnsatzStatus::Solved;
    result.message = "solved";
    return result;
}

AnsatzConfig telescope_envelope(const HExpr& f) {
    AnsatzConfig cfg;
    cfg.basis.max_weight = f.weight() + 1;
    cfg.basis.pole_lo = -1; // the rhs shift f(N-1) moves poles one step
    cfg.basis.pole_hi = 0;
    cfg.basis.pole_degree = std::max(2, f.weight());
    cfg.basis.use_alt = false;
    std::set<ZetaMon> zs;
    for (const auto& t : f.terms()) {
        if (t.alt) cfg.basis.use_alt = true;
        for (int idx : t.sum)
            if (idx < 0) cfg.basis.use_alt = true;
        if (!t.zeta.empty()) zs.insert(t.zeta);
        for (long r : integer_roots(t.coeff.den())) {
            cfg.basis.pole_lo = std::min(cfg.basis.pole_lo, -r - 1);
            cfg.basis.pole_hi = std::max(cfg.basis.pole_hi, -r);
        }
    }
    cfg.basis.zetas.assign(zs.begin(), zs.end());
    cfg.zero_free_constants = true;
    return cfg;
}

HarmonicTelescope telescope_harmonic(const HExpr& f, std::optional<AnsatzConfig> cfg) {
    AnsatzConfig c = cfg ? *cfg : telescope_envelope(f);
    c.zero_free_constants = true;

    // g(k+1) - g(k) = f(k)  <=>  g(N) - g(N-1) = f(N-1)
    Recurrence rec;
    rec.order = 1;
    rec.coeffs = {EExpr(HExpr(Rat(1))), EExpr(HExpr(Rat(-1)))};
    rec.rhs = EExpr(f.shifted(-1));
    rec.rhs_resolved = true;

    HarmonicTelescope out;
    AnsatzResult r = solve_ansatz(rec, c, {});
    if (r.solved()) {
        out.solved = true;
        out.g = r.solution.is_zero() ? HExpr() : r.solution.coeff(0);
        out.message = "solved";
    } else {
        out.hints = r.hints;
        out.message = r.message;
    }
    return out;
}

} // namespace msum
