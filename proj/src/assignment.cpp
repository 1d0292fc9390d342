#include "ksvi/assignment.hpp"

#include <algorithm>
#include <memory>

namespace ksvi {

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::Seed: return "seed";
        case Rule::Admissibility1: return "admissibility1";
        case Rule::Admissibility2: return "admissibility2";
        case Rule::NoncontextualTransfer: return "noncontextual-transfer";
    }
    return "?";
}

const char* conflict_name(Conflict c) {
    switch (c) {
        case Conflict::None: return "none";
        case Conflict::TwoOnes: return "two-ones";
        case Conflict::AllZeros: return "all-zeros";
        case Conflict::Bivaluation: return "bivaluation";
    }
    return "?";
}

namespace {

struct SeedIdx {
    int obs;
    int ctx;
    int value;
};

// Resolve seed ids to indices, rejecting raw duplicates with differing
// values.  Duplicate identical seeds collapse to one entry.
std::vector<SeedIdx> index_seeds(const Hypergraph& h, const std::vector<Seed>& seeds) {
    std::vector<SeedIdx> out;
    for (const Seed& s : seeds) {
        if (s.value != 0 && s.value != 1) {
            throw Error("seed value must be 0 or 1");
        }
        int oi = h.obs_index(s.observable);
        int ci = h.ctx_index(s.context);
        const auto& m = h.context_member_indices()[static_cast<size_t>(ci)];
        if (std::find(m.begin(), m.end(), oi) == m.end()) {
            throw Error("seed observable '" + s.observable +
                        "' is not a member of context '" + s.context + "'");
        }
        bool duplicate = false;
        for (const SeedIdx& prev : out) {
            if (prev.obs == oi && prev.ctx == ci) {
                if (prev.value != s.value) {
                    throw SeedConflict("seeds assign both values to (" +
                                       s.observable + ", " + s.context + ")");
                }
                duplicate = true;
            }
        }
        if (!duplicate) {
            out.push_back({oi, ci, s.value});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Index-level search cores.  Values are -1/0/1 per observable (noncontextual)
// or per context slot (contextual); a trail records definitions for undo.
// ---------------------------------------------------------------------------

struct NcSearch {
    const std::vector<std::vector<int>>& ctx_members;
    const std::vector<std::vector<int>>& obs_ctxs;
    int nobs;
    std::vector<int8_t> val;
    std::vector<int> trail;
    std::vector<int> queue;
    std::vector<int8_t> inq;
    size_t qhead = 0;

    explicit NcSearch(const Hypergraph& h)
        : ctx_members(h.context_member_indices()),
          obs_ctxs(h.contexts_of_observable()),
          nobs(static_cast<int>(h.observables().size())),
          val(h.observables().size(), -1),
          inq(h.contexts().size(), 0) {}

    void reset() {
        std::fill(val.begin(), val.end(), -1);
        std::fill(inq.begin(), inq.end(), 0);
        trail.clear();
        queue.clear();
        qhead = 0;
    }

    void push_ctx(int ci) {
        if (!inq[static_cast<size_t>(ci)]) {
            inq[static_cast<size_t>(ci)] = 1;
            queue.push_back(ci);
        }
    }

    void set_val(int oi, int8_t v) {
        val[static_cast<size_t>(oi)] = v;
        trail.push_back(oi);
        for (int ci : obs_ctxs[static_cast<size_t>(oi)]) {
            push_ctx(ci);
        }
    }

    bool close_context(int ci) {
        const auto& m = ctx_members[static_cast<size_t>(ci)];
        int n = static_cast<int>(m.size());
        int ones = 0, zeros = 0, undef_at = -1;
        for (int oi : m) {
            int8_t v = val[static_cast<size_t>(oi)];
            if (v == 1) {
                ++ones;
            } else if (v == 0) {
                ++zeros;
            } else {
                undef_at = oi;
            }
        }
        if (ones >= 2) {
            return false;
        }
        if (ones == 1) {
            for (int oi : m) {
                if (val[static_cast<size_t>(oi)] == -1) {
                    set_val(oi, 0);
                }
            }
            return true;
        }
        if (zeros == n) {
            return false;
        }
        if (zeros == n - 1 && undef_at >= 0) {
            set_val(undef_at, 1);
        }
        return true;
    }

    // Process pending contexts to fixpoint.  Leaves the queue empty; false on
    // contradiction.
    bool drain() {
        bool ok = true;
        while (qhead < queue.size()) {
            int ci = queue[qhead++];
            inq[static_cast<size_t>(ci)] = 0;
            if (ok) {
                ok = close_context(ci);
            }
        }
        queue.clear();
        qhead = 0;
        return ok;
    }

    void undo_to(size_t mark) {
        while (trail.size() > mark) {
            val[static_cast<size_t>(trail.back())] = -1;
            trail.pop_back();
        }
    }

    bool apply_seeds(const std::vector<SeedIdx>& seeds) {
        for (const SeedIdx& s : seeds) {
            int8_t cur = val[static_cast<size_t>(s.obs)];
            if (cur == -1) {
                set_val(s.obs, static_cast<int8_t>(s.value));
            } else if (cur != s.value) {
                return false; // cross-context seed conflict under noncontextuality
            }
        }
        // whole-instance sweep in declaration order
        for (int ci = 0; ci < static_cast<int>(ctx_members.size()); ++ci) {
            push_ctx(ci);
        }
        return drain();
    }

    bool dfs(int cursor) {
        while (cursor < nobs && val[static_cast<size_t>(cursor)] != -1) {
            ++cursor;
        }
        if (cursor == nobs) {
            return true;
        }
        for (int8_t v : {static_cast<int8_t>(1), static_cast<int8_t>(0)}) {
            size_t mark = trail.size();
            set_val(cursor, v);
            if (drain() && dfs(cursor + 1)) {
                return true;
            }
            undo_to(mark);
        }
        return false;
    }

    bool solve(const std::vector<SeedIdx>& seeds) {
        reset();
        return apply_seeds(seeds) && dfs(0);
    }
};

struct CtxSearch {
    const std::vector<std::vector<int>>& ctx_members;
    int nslots;
    std::vector<int> offset;      // per context, start of its slot range
    std::vector<int> slot_ctx;    // slot -> context
    std::vector<int8_t> val;      // per slot
    std::vector<int> trail;

    explicit CtxSearch(const Hypergraph& h)
        : ctx_members(h.context_member_indices()) {
        int off = 0;
        for (const auto& m : ctx_members) {
            offset.push_back(off);
            for (size_t k = 0; k < m.size(); ++k) {
                slot_ctx.push_back(static_cast<int>(offset.size()) - 1);
            }
            off += static_cast<int>(m.size());
        }
        nslots = off;
        val.assign(static_cast<size_t>(nslots), -1);
    }

    void reset() {
        std::fill(val.begin(), val.end(), -1);
        trail.clear();
    }

    void set_slot(int f, int8_t v) {
        val[static_cast<size_t>(f)] = v;
        trail.push_back(f);
    }

    // Local closure of one context; no cross-context coupling exists.
    bool close_context(int ci) {
        const auto& m = ctx_members[static_cast<size_t>(ci)];
        int base = offset[static_cast<size_t>(ci)];
        int n = static_cast<int>(m.size());
        int ones = 0, zeros = 0, undef_at = -1;
        for (int k = 0; k < n; ++k) {
            int8_t v = val[static_cast<size_t>(base + k)];
            if (v == 1) {
                ++ones;
            } else if (v == 0) {
                ++zeros;
            } else {
                undef_at = base + k;
            }
        }
        if (ones >= 2) {
            return false;
        }
        if (ones == 1) {
            for (int k = 0; k < n; ++k) {
                if (val[static_cast<size_t>(base + k)] == -1) {
                    set_slot(base + k, 0);
                }
            }
            return true;
        }
        if (zeros == n) {
            return false;
        }
        if (zeros == n - 1 && undef_at >= 0) {
            set_slot(undef_at, 1);
        }
        return true;
    }

    void undo_to(size_t mark) {
        while (trail.size() > mark) {
            val[static_cast<size_t>(trail.back())] = -1;
            trail.pop_back();
        }
    }

    bool apply_seeds(const std::vector<SeedIdx>& seeds) {
        for (const SeedIdx& s : seeds) {
            const auto& m = ctx_members[static_cast<size_t>(s.ctx)];
            int base = offset[static_cast<size_t>(s.ctx)];
            for (size_t k = 0; k < m.size(); ++k) {
                if (m[k] != s.obs) {
                    continue;
                }
                int f = base + static_cast<int>(k);
                if (val[static_cast<size_t>(f)] == -1) {
                    set_slot(f, static_cast<int8_t>(s.value));
                } else if (val[static_cast<size_t>(f)] != s.value) {
                    return false;
                }
            }
        }
        for (int ci = 0; ci < static_cast<int>(ctx_members.size()); ++ci) {
            if (!close_context(ci)) {
                return false;
            }
        }
        return true;
    }

    bool dfs(int cursor) {
        while (cursor < nslots && val[static_cast<size_t>(cursor)] != -1) {
            ++cursor;
        }
        if (cursor == nslots) {
            return true;
        }
        for (int8_t v : {static_cast<int8_t>(1), static_cast<int8_t>(0)}) {
            size_t mark = trail.size();
            set_slot(cursor, v);
            if (close_context(slot_ctx[static_cast<size_t>(cursor)]) &&
                dfs(cursor + 1)) {
                return true;
            }
            undo_to(mark);
        }
        return false;
    }

    bool solve(const std::vector<SeedIdx>& seeds) {
        reset();
        return apply_seeds(seeds) && dfs(0);
    }
};

// Plain enumerating counters: no propagation, only per-extension
// admissibility (exactly-one-1) pruning.

struct NcCount {
    const std::vector<std::vector<int>>& ctx_members;
    const std::vector<std::vector<int>>& obs_ctxs;
    int nobs;
    std::vector<int8_t> val;
    long long count = 0;
    long long cap;
    bool capped = false;

    NcCount(const Hypergraph& h, long long cap_limit)
        : ctx_members(h.context_member_indices()),
          obs_ctxs(h.contexts_of_observable()),
          nobs(static_cast<int>(h.observables().size())),
          val(h.observables().size(), -1),
          cap(cap_limit) {}

    bool extension_ok(int oi) const {
        for (int ci : obs_ctxs[static_cast<size_t>(oi)]) {
            const auto& m = ctx_members[static_cast<size_t>(ci)];
            int ones = 0, assigned = 0;
            for (int x : m) {
                int8_t v = val[static_cast<size_t>(x)];
                if (v != -1) {
                    ++assigned;
                    ones += (v == 1);
                }
            }
            if (ones >= 2) {
                return false;
            }
            if (assigned == static_cast<int>(m.size()) && ones == 0) {
                return false;
            }
        }
        return true;
    }

    // returns false only when enumeration stops at the cap
    bool rec(int i) {
        if (i == nobs) {
            if (++count >= cap) {
                capped = true;
                return false;
            }
            return true;
        }
        if (val[static_cast<size_t>(i)] != -1) {
            if (!extension_ok(i)) {
                return true;
            }
            return rec(i + 1);
        }
        for (int8_t v : {static_cast<int8_t>(1), static_cast<int8_t>(0)}) {
            val[static_cast<size_t>(i)] = v;
            if (extension_ok(i) && !rec(i + 1)) {
                val[static_cast<size_t>(i)] = -1;
                return false;
            }
        }
        val[static_cast<size_t>(i)] = -1;
        return true;
    }

    long long run(const std::vector<SeedIdx>& seeds, bool* hit_cap) {
        std::fill(val.begin(), val.end(), -1);
        count = 0;
        capped = false;
        for (const SeedIdx& s : seeds) {
            int8_t cur = val[static_cast<size_t>(s.obs)];
            if (cur != -1 && cur != s.value) {
                *hit_cap = false;
                return 0; // noncontextually inconsistent seeds: nothing extends them
            }
            val[static_cast<size_t>(s.obs)] = static_cast<int8_t>(s.value);
        }
        rec(0);
        *hit_cap = capped;
        return count;
    }
};

struct CtxCount {
    const std::vector<std::vector<int>>& ctx_members;
    int nslots;
    std::vector<int> offset;
    std::vector<int> slot_ctx;
    std::vector<int8_t> val;
    long long count = 0;
    long long cap;
    bool capped = false;

    CtxCount(const Hypergraph& h, long long cap_limit)
        : ctx_members(h.context_member_indices()), cap(cap_limit) {
        int off = 0;
        for (const auto& m : ctx_members) {
            offset.push_back(off);
            for (size_t k = 0; k < m.size(); ++k) {
                slot_ctx.push_back(static_cast<int>(offset.size()) - 1);
            }
            off += static_cast<int>(m.size());
        }
        nslots = off;
        val.assign(static_cast<size_t>(nslots), -1);
    }

    bool extension_ok(int ci) const {
        const auto& m = ctx_members[static_cast<size_t>(ci)];
        int base = offset[static_cast<size_t>(ci)];
        int ones = 0, assigned = 0;
        for (size_t k = 0; k < m.size(); ++k) {
            int8_t v = val[static_cast<size_t>(base + static_cast<int>(k))];
            if (v != -1) {
                ++assigned;
                ones += (v == 1);
            }
        }
        if (ones >= 2) {
            return false;
        }
        return !(assigned == static_cast<int>(m.size()) && ones == 0);
    }

    bool rec(int i) {
        if (i == nslots) {
            if (++count >= cap) {
                capped = true;
                return false;
            }
            return true;
        }
        if (val[static_cast<size_t>(i)] != -1) {
            if (!extension_ok(slot_ctx[static_cast<size_t>(i)])) {
                return true;
            }
            return rec(i + 1);
        }
        for (int8_t v : {static_cast<int8_t>(1), static_cast<int8_t>(0)}) {
            val[static_cast<size_t>(i)] = v;
            if (extension_ok(slot_ctx[static_cast<size_t>(i)]) && !rec(i + 1)) {
                val[static_cast<size_t>(i)] = -1;
                return false;
            }
        }
        val[static_cast<size_t>(i)] = -1;
        return true;
    }

    long long run(const std::vector<SeedIdx>& seeds, bool* hit_cap) {
        std::fill(val.begin(), val.end(), -1);
        count = 0;
        capped = false;
        for (const SeedIdx& s : seeds) {
            const auto& m = ctx_members[static_cast<size_t>(s.ctx)];
            int base = offset[static_cast<size_t>(s.ctx)];
            for (size_t k = 0; k < m.size(); ++k) {
                if (m[k] == s.obs) {
                    val[static_cast<size_t>(base + static_cast<int>(k))] =
                        static_cast<int8_t>(s.value);
                }
            }
        }
        rec(0);
        *hit_cap = capped;
        return count;
    }
};

Assignment project_nc(const Hypergraph& h, const std::vector<int8_t>& val) {
    Assignment out;
    const auto& obs = h.observables();
    const auto& octx = h.contexts_of_observable();
    for (size_t oi = 0; oi < obs.size(); ++oi) {
        if (val[oi] == -1) {
            continue;
        }
        for (int ci : octx[oi]) {
            out.set(obs[oi].id, h.contexts()[static_cast<size_t>(ci)].id, val[oi]);
        }
    }
    return out;
}

Assignment project_ctx(const Hypergraph& h, const CtxSearch& cs) {
    Assignment out;
    const auto& ctxs = h.contexts();
    const auto& members = h.context_member_indices();
    for (size_t ci = 0; ci < ctxs.size(); ++ci) {
        int base = cs.offset[ci];
        for (size_t k = 0; k < members[ci].size(); ++k) {
            int8_t v = cs.val[static_cast<size_t>(base + static_cast<int>(k))];
            if (v != -1) {
                out.set(h.observables()[static_cast<size_t>(members[ci][k])].id,
                        ctxs[ci].id, v);
            }
        }
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// propagate with trace
// ---------------------------------------------------------------------------

std::pair<Assignment, PropagationTrace> propagate(const Hypergraph& h,
                                                  const std::vector<Seed>& seeds,
                                                  bool noncontextual) {
    std::vector<SeedIdx> sidx = index_seeds(h, seeds);
    const auto& obs = h.observables();
    const auto& ctxs = h.contexts();
    const auto& members = h.context_member_indices();
    const auto& octx = h.contexts_of_observable();
    PropagationTrace trace;

    auto fail = [&](int ci, Conflict kind, std::string what) {
        trace.contradiction = true;
        trace.conflict = kind;
        trace.context = ctxs[static_cast<size_t>(ci)].id;
        trace.detail = std::move(what);
    };

    if (noncontextual) {
        std::vector<int8_t> val(obs.size(), -1);
        std::vector<int> queue;
        std::vector<int8_t> inq(ctxs.size(), 0);
        size_t qhead = 0;
        auto push_ctx = [&](int ci) {
            if (!inq[static_cast<size_t>(ci)]) {
                inq[static_cast<size_t>(ci)] = 1;
                queue.push_back(ci);
            }
        };
        // one transfer step per rule firing, covering all just-set observables
        auto transfer = [&](int origin_ci, const std::vector<int>& just_set) {
            TraceStep st{Rule::NoncontextualTransfer,
                         ctxs[static_cast<size_t>(origin_ci)].id, {}};
            for (int oi : just_set) {
                for (int ci : octx[static_cast<size_t>(oi)]) {
                    if (ci != origin_ci) {
                        st.derived.push_back({obs[static_cast<size_t>(oi)].id,
                                              ctxs[static_cast<size_t>(ci)].id,
                                              val[static_cast<size_t>(oi)]});
                    }
                }
            }
            if (!st.derived.empty()) {
                trace.steps.push_back(std::move(st));
            }
        };

        for (const SeedIdx& s : sidx) {
            int8_t cur = val[static_cast<size_t>(s.obs)];
            const std::string& oid = obs[static_cast<size_t>(s.obs)].id;
            const std::string& cid = ctxs[static_cast<size_t>(s.ctx)].id;
            if (cur == -1) {
                val[static_cast<size_t>(s.obs)] = static_cast<int8_t>(s.value);
                trace.steps.push_back(
                    {Rule::Seed, cid, {{oid, cid, s.value}}});
                transfer(s.ctx, {s.obs});
                push_ctx(s.ctx);
            } else if (cur == s.value) {
                trace.steps.push_back(
                    {Rule::Seed, cid, {{oid, cid, s.value}}});
            } else {
                fail(s.ctx, Conflict::Bivaluation,
                     "seed gives '" + oid + "' value " + std::to_string(s.value) +
                         " but it already carries " + std::to_string(cur) +
                         " under noncontextuality");
                return {project_nc(h, val), trace};
            }
        }
        for (int ci = 0; ci < static_cast<int>(ctxs.size()); ++ci) {
            push_ctx(ci);
        }
        while (qhead < queue.size() && !trace.contradiction) {
            int ci = queue[qhead++];
            inq[static_cast<size_t>(ci)] = 0;
            const auto& m = members[static_cast<size_t>(ci)];
            int n = static_cast<int>(m.size());
            int ones = 0, zeros = 0, undef_at = -1, first_one = -1, second_one = -1;
            for (int oi : m) {
                int8_t v = val[static_cast<size_t>(oi)];
                if (v == 1) {
                    ++ones;
                    if (first_one < 0) {
                        first_one = oi;
                    } else {
                        second_one = oi;
                    }
                } else if (v == 0) {
                    ++zeros;
                } else {
                    undef_at = oi;
                }
            }
            if (ones >= 2) {
                fail(ci, Conflict::TwoOnes,
                     "'" + obs[static_cast<size_t>(first_one)].id + "' and '" +
                         obs[static_cast<size_t>(second_one)].id +
                         "' both carry 1");
            } else if (ones == 1) {
                std::vector<int> just_set;
                TraceStep st{Rule::Admissibility1, ctxs[static_cast<size_t>(ci)].id, {}};
                for (int oi : m) {
                    if (val[static_cast<size_t>(oi)] == -1) {
                        val[static_cast<size_t>(oi)] = 0;
                        st.derived.push_back({obs[static_cast<size_t>(oi)].id,
                                              ctxs[static_cast<size_t>(ci)].id, 0});
                        just_set.push_back(oi);
                        for (int cj : octx[static_cast<size_t>(oi)]) {
                            push_ctx(cj);
                        }
                    }
                }
                if (!st.derived.empty()) {
                    trace.steps.push_back(std::move(st));
                    transfer(ci, just_set);
                }
            } else if (zeros == n) {
                fail(ci, Conflict::AllZeros, "all members carry 0");
            } else if (zeros == n - 1 && undef_at >= 0) {
                val[static_cast<size_t>(undef_at)] = 1;
                trace.steps.push_back({Rule::Admissibility2,
                                       ctxs[static_cast<size_t>(ci)].id,
                                       {{obs[static_cast<size_t>(undef_at)].id,
                                         ctxs[static_cast<size_t>(ci)].id, 1}}});
                transfer(ci, {undef_at});
                for (int cj : octx[static_cast<size_t>(undef_at)]) {
                    push_ctx(cj);
                }
            }
        }
        return {project_nc(h, val), trace};
    }

    // contextual: values per (context, slot), no transfer between contexts
    CtxSearch cs(h);
    for (const SeedIdx& s : sidx) {
        const auto& m = members[static_cast<size_t>(s.ctx)];
        int base = cs.offset[static_cast<size_t>(s.ctx)];
        const std::string& oid = obs[static_cast<size_t>(s.obs)].id;
        const std::string& cid = ctxs[static_cast<size_t>(s.ctx)].id;
        for (size_t k = 0; k < m.size(); ++k) {
            if (m[k] != s.obs) {
                continue;
            }
            cs.val[static_cast<size_t>(base + static_cast<int>(k))] =
                static_cast<int8_t>(s.value);
        }
        trace.steps.push_back({Rule::Seed, cid, {{oid, cid, s.value}}});
    }
    for (int ci = 0; ci < static_cast<int>(ctxs.size()) && !trace.contradiction;
         ++ci) {
        const auto& m = members[static_cast<size_t>(ci)];
        int base = cs.offset[static_cast<size_t>(ci)];
        int n = static_cast<int>(m.size());
        bool changed = true;
        while (changed && !trace.contradiction) {
            changed = false;
            int ones = 0, zeros = 0, undef_at = -1, first_one = -1, second_one = -1;
            for (int k = 0; k < n; ++k) {
                int8_t v = cs.val[static_cast<size_t>(base + k)];
                if (v == 1) {
                    ++ones;
                    if (first_one < 0) {
                        first_one = m[static_cast<size_t>(k)];
                    } else {
                        second_one = m[static_cast<size_t>(k)];
                    }
                } else if (v == 0) {
                    ++zeros;
                } else {
                    undef_at = k;
                }
            }
            if (ones >= 2) {
                fail(ci, Conflict::TwoOnes,
                     "'" + obs[static_cast<size_t>(first_one)].id + "' and '" +
                         obs[static_cast<size_t>(second_one)].id +
                         "' both carry 1");
            } else if (ones == 1) {
                TraceStep st{Rule::Admissibility1, ctxs[static_cast<size_t>(ci)].id, {}};
                for (int k = 0; k < n; ++k) {
                    if (cs.val[static_cast<size_t>(base + k)] == -1) {
                        cs.val[static_cast<size_t>(base + k)] = 0;
                        st.derived.push_back(
                            {obs[static_cast<size_t>(m[static_cast<size_t>(k)])].id,
                             ctxs[static_cast<size_t>(ci)].id, 0});
                        changed = true;
                    }
                }
                if (!st.derived.empty()) {
                    trace.steps.push_back(std::move(st));
                }
            } else if (zeros == n) {
                fail(ci, Conflict::AllZeros, "all members carry 0");
            } else if (zeros == n - 1 && undef_at >= 0) {
                cs.val[static_cast<size_t>(base + undef_at)] = 1;
                trace.steps.push_back(
                    {Rule::Admissibility2, ctxs[static_cast<size_t>(ci)].id,
                     {{obs[static_cast<size_t>(m[static_cast<size_t>(undef_at)])].id,
                       ctxs[static_cast<size_t>(ci)].id, 1}}});
                changed = true;
            }
        }
    }
    return {project_ctx(h, cs), trace};
}

// ---------------------------------------------------------------------------
// admissibility check
// ---------------------------------------------------------------------------

std::pair<bool, std::vector<std::string>> is_admissible(const Hypergraph& h,
                                                        const Assignment& v) {
    std::vector<std::string> problems;
    // resolve keys; tolerate aliases, flag anything else
    std::map<std::pair<std::string, std::string>, int> values;
    for (const auto& [key, value] : v.values) {
        if (!h.has_observable(key.first)) {
            problems.push_back("entry references unknown observable '" + key.first + "'");
            continue;
        }
        if (!h.has_context(key.second)) {
            problems.push_back("entry references unknown context '" + key.second + "'");
            continue;
        }
        std::string primary = h.resolve(key.first);
        const Context& c = h.context(key.second);
        if (std::find(c.members.begin(), c.members.end(), primary) == c.members.end()) {
            problems.push_back("'" + key.first + "' is not a member of context '" +
                               key.second + "'");
            continue;
        }
        values[{primary, key.second}] = value;
    }
    for (const Context& c : h.contexts()) {
        auto value_of = [&](const std::string& oid) -> int {
            auto it = values.find({oid, c.id});
            return it == values.end() ? -1 : it->second;
        };
        for (const std::string& oid : c.members) {
            if (value_of(oid) == 1) {
                for (const std::string& other : c.members) {
                    if (other != oid && value_of(other) != 0) {
                        problems.push_back("first condition violated in '" + c.id +
                                           "': '" + oid + "' carries 1 but '" +
                                           other + "' is not 0");
                    }
                }
            }
        }
        for (const std::string& oid : c.members) {
            bool others_all_zero = true;
            for (const std::string& other : c.members) {
                if (other != oid && value_of(other) != 0) {
                    others_all_zero = false;
                    break;
                }
            }
            if (others_all_zero && value_of(oid) != 1) {
                problems.push_back("second condition violated in '" + c.id +
                                   "': every other member carries 0 but '" + oid +
                                   "' is not 1");
            }
        }
    }
    return {problems.empty(), problems};
}

// ---------------------------------------------------------------------------
// search / count / star
// ---------------------------------------------------------------------------

std::optional<Assignment> search_completion(const Hypergraph& h,
                                            const std::vector<Seed>& seeds,
                                            SearchMode mode) {
    std::vector<SeedIdx> sidx = index_seeds(h, seeds);
    if (mode == SearchMode::NoncontextualValueDefinite) {
        NcSearch s(h);
        if (!s.solve(sidx)) {
            return std::nullopt;
        }
        return project_nc(h, s.val);
    }
    CtxSearch s(h);
    if (!s.solve(sidx)) {
        return std::nullopt;
    }
    return project_ctx(h, s);
}

CountResult count_completions(const Hypergraph& h, const std::vector<Seed>& seeds,
                              SearchMode mode, long long cap) {
    if (cap <= 0) {
        throw Error("count_completions cap must be positive");
    }
    std::vector<SeedIdx> sidx = index_seeds(h, seeds);
    CountResult r;
    if (mode == SearchMode::NoncontextualValueDefinite) {
        NcCount c(h, cap);
        r.count = c.run(sidx, &r.capped);
    } else {
        CtxCount c(h, cap);
        r.count = c.run(sidx, &r.capped);
    }
    return r;
}

struct Solver::Impl {
    const Hypergraph& h;
    NcSearch nc_search;
    CtxSearch ctx_search;
    NcCount nc_count;
    CtxCount ctx_count;

    explicit Impl(const Hypergraph& hg)
        : h(hg), nc_search(hg), ctx_search(hg), nc_count(hg, 1), ctx_count(hg, 1) {}
};

Solver::Solver(const Hypergraph& h) : impl_(std::make_unique<Impl>(h)) {}
Solver::~Solver() = default;

bool Solver::completion_exists(const std::vector<Seed>& seeds, SearchMode mode) {
    std::vector<SeedIdx> sidx = index_seeds(impl_->h, seeds);
    if (mode == SearchMode::NoncontextualValueDefinite) {
        return impl_->nc_search.solve(sidx);
    }
    return impl_->ctx_search.solve(sidx);
}

CountResult Solver::count(const std::vector<Seed>& seeds, SearchMode mode,
                          long long cap) {
    if (cap <= 0) {
        throw Error("count cap must be positive");
    }
    std::vector<SeedIdx> sidx = index_seeds(impl_->h, seeds);
    CountResult r;
    if (mode == SearchMode::NoncontextualValueDefinite) {
        impl_->nc_count.cap = cap;
        r.count = impl_->nc_count.run(sidx, &r.capped);
    } else {
        impl_->ctx_count.cap = cap;
        r.count = impl_->ctx_count.run(sidx, &r.capped);
    }
    return r;
}

Assignment build_star_assignment(const Hypergraph& h, const std::string& obs_id) {
    std::string primary = h.resolve(obs_id);
    std::vector<std::string> star = h.star_contexts(primary);
    std::vector<Seed> seeds;
    for (const std::string& cid : star) {
        seeds.push_back({primary, cid, 1});
    }
    auto completion = search_completion(h, seeds, SearchMode::ContextualAllowed);
    if (!completion) {
        throw CompletionFailed("no admissible contextual extension of the star at '" +
                               obs_id + "'");
    }
    return *completion;
}

// ---------------------------------------------------------------------------
// theorem regression
// ---------------------------------------------------------------------------

const std::vector<std::pair<std::string, int>>& table1_reference_labels() {
    // Observable -> value along the propagation walk, in declaration order.
    // (1,1,2) holds 0 at the stop: the 1 forced on it in C24 is the located
    // contradiction.
    static const std::vector<std::pair<std::string, int>> labels = {
        {"1,0,0", 1},    {"0,1,0", 0},    {"0,0,1", 0},    {"3,2,1", 1},
        {"2,-3,0", 0},   {"3,2,-13", 0},  {"0,1,1", 0},    {"0,1,-1", 0},
        {"1,-1,-1", 0},  {"1,-4,5", 0},   {"2,1,1", 1},    {"3,2,0", 1},
        {"1,0,-2", 0},   {"2,-5,1", 0},   {"2,-3,3", 0},   {"6,-9,-13", 0},
        {"2,0,1", 1},    {"3,1,-1", 1},   {"1,1,-2", 0},   {"1,-5,-2", 0},
        {"1,-1,2", 0},   {"1,-7,-4", 0},  {"1,1,0", 1},    {"1,-1,0", 0},
        {"1,-1,1", 0},   {"1,-1,-2", 0},  {"1,1,1", 1},    {"2,1,-1", 1},
        {"1,0,-1", 0},   {"1,-2,1", 0},   {"1,0,2", 0},    {"2,-5,-1", 0},
        {"1,0,1", 1},    {"2,0,-1", 1},   {"1,1,-1", 0},   {"1,-2,-1", 0},
        {"1,1,2", 0},    {"1,-5,2", 0},
    };
    return labels;
}

PropagationTrace verify_theorem1() {
    Hypergraph h = table1_hypergraph();
    std::vector<Seed> seeds{{"1,0,0", "C1", 1}, {"3,2,1", "C2", 1}};
    auto [assignment, trace] = propagate(h, seeds, true);
    if (!trace.contradiction) {
        throw TheoremCheckFailed("propagation reached a fixpoint; expected a contradiction");
    }
    if (trace.context != "C24") {
        throw TheoremCheckFailed("contradiction located in " + trace.context +
                                 ", expected C24");
    }
    if (trace.conflict != Conflict::AllZeros) {
        throw TheoremCheckFailed(std::string("unexpected conflict shape: ") +
                                 conflict_name(trace.conflict));
    }
    const Context& c24 = h.context("C24");
    std::vector<std::string> want{"1,1,-1", "1,-1,0", "1,1,2"};
    for (const std::string& m : want) {
        if (std::find(c24.members.begin(), c24.members.end(), m) == c24.members.end()) {
            throw TheoremCheckFailed("C24 does not contain '" + m + "'");
        }
    }
    const auto& labels = table1_reference_labels();
    if (labels.size() != h.observables().size()) {
        throw TheoremCheckFailed("reference label count mismatch");
    }
    for (const auto& [id, expected] : labels) {
        for (const std::string& cid : h.star_contexts(id)) {
            auto got = assignment.get(id, cid);
            if (!got || *got != expected) {
                throw TheoremCheckFailed(
                    "value of ('" + id + "', '" + cid + "') is " +
                    (got ? std::to_string(*got) : std::string("undefined")) +
                    ", reference label says " + std::to_string(expected));
            }
        }
    }
    return trace;
}

} // namespace ksvi
