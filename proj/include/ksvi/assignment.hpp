#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ksvi/hypergraph.hpp"

namespace ksvi {

/// Partial value assignment v: pairs absent from the map are value
/// indefinite.  Keys are (observable id, context id).
struct Assignment {
    std::map<std::pair<std::string, std::string>, int> values;

    std::optional<int> get(const std::string& obs, const std::string& ctx) const {
        auto it = values.find({obs, ctx});
        if (it == values.end()) {
            return std::nullopt;
        }
        return it->second;
    }
    void set(const std::string& obs, const std::string& ctx, int value) {
        values[{obs, ctx}] = value;
    }
    size_t size() const { return values.size(); }
};

struct Seed {
    std::string observable;
    std::string context;
    int value = 1;
};

enum class Rule { Seed, Admissibility1, Admissibility2, NoncontextualTransfer };
enum class Conflict { None, TwoOnes, AllZeros, Bivaluation };

const char* rule_name(Rule r);
const char* conflict_name(Conflict c);

struct TraceEntry {
    std::string observable;
    std::string context;
    int value;
};

/// One inference during propagation: the rule that fired, the context it
/// fired in (for transfers, the context where the value originated), and the
/// pairs it newly defined.
struct TraceStep {
    Rule rule;
    std::string context;
    std::vector<TraceEntry> derived;
};

/// Ordered inference log ending in a fixpoint or a located contradiction.
/// Replaying the steps' derived entries from an empty assignment reproduces
/// the propagation output exactly.
struct PropagationTrace {
    std::vector<TraceStep> steps;
    bool contradiction = false;
    Conflict conflict = Conflict::None;
    std::string context; // contradicting context when contradiction is set
    std::string detail;

    bool fixpoint() const { return !contradiction; }
};

enum class SearchMode { NoncontextualValueDefinite, ContextualAllowed };

/// Close the seeds under the admissibility rules:
///   (R1) a 1 in a context forces 0 on its other members,
///   (R2) two 0s in a context force 1 on the third,
/// plus, when noncontextual, transfer of each observable's value to every
/// context containing it.  Contexts are processed first-in-first-out, seeded
/// contexts first (in seed order), then all contexts in declaration order,
/// re-enqueued on change; the first context to violate admissibility stops
/// the run with a Contradiction status.  Throws SeedConflict when two seeds
/// give the same (observable, context) key different values.
std::pair<Assignment, PropagationTrace> propagate(const Hypergraph& h,
                                                  const std::vector<Seed>& seeds,
                                                  bool noncontextual);

/// Both admissibility clauses over the defined entries of v.  Clause 1 also
/// demands that the remaining members of a 1-carrying context be defined 0;
/// clause 2 that a context with two defined 0s have its third member defined
/// 1 (an undefined slot there is a violation).
std::pair<bool, std::vector<std::string>> is_admissible(const Hypergraph& h,
                                                        const Assignment& v);

/// Backtracking search for a total admissible assignment extending the
/// seeds.  NoncontextualValueDefinite mode assigns one value per observable
/// (lifted to all pairs); ContextualAllowed assigns per pair.  Propagation
/// prunes the tree; branching follows observable declaration order with 1
/// tried before 0, so the returned completion is deterministic.
std::optional<Assignment> search_completion(const Hypergraph& h,
                                            const std::vector<Seed>& seeds,
                                            SearchMode mode);

struct CountResult {
    long long count = 0;
    bool capped = false; // true when enumeration stopped at the cap
};

/// Exhaustive completion count by plain backtracking with per-extension
/// admissibility checks only (no propagation shortcuts); serves as an
/// independent oracle for search_completion and propagate.
CountResult count_completions(const Hypergraph& h, const std::vector<Seed>& seeds,
                              SearchMode mode, long long cap = 10000000);

/// Search state bound to one hypergraph, for callers issuing many queries
/// against the same instance (avoids per-call setup).  Not thread-safe per
/// instance; use one Solver per thread.
class Solver {
public:
    explicit Solver(const Hypergraph& h);
    ~Solver();
    Solver(const Solver&) = delete;
    Solver& operator=(const Solver&) = delete;

    /// Same decision as search_completion(...).has_value().
    bool completion_exists(const std::vector<Seed>& seeds, SearchMode mode);
    /// Same result as count_completions.
    CountResult count(const std::vector<Seed>& seeds, SearchMode mode, long long cap);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// The star assignment v_a: value 1 for a and 0 elsewhere on every context
/// through a, extended to a total admissible assignment by contextual search
/// on the remaining contexts.  Throws CompletionFailed if no extension exists
/// (it always does: any one member per remaining context can carry the 1).
Assignment build_star_assignment(const Hypergraph& h, const std::string& obs_id);

/// Reproduce the 24-context contradiction on the built-in instance: seeds
/// v(1,0,0 @ C1) = 1 and v(3,2,1 @ C2) = 1 under noncontextuality propagate
/// to an all-zero context C24 = {(1,1,-1), (1,-1,0), (1,1,2)}, and every
/// propagated observable value matches the instance's reference labels.
/// Throws TheoremCheckFailed on any mismatch (transcription or engine bug).
PropagationTrace verify_theorem1();

/// Reference labels for the built-in instance: observable id -> the value it
/// acquires along the propagation walk.  (1,1,2) carries 0: its forced 1 in
/// C24 is exactly the located contradiction.
const std::vector<std::pair<std::string, int>>& table1_reference_labels();

} // namespace ksvi
