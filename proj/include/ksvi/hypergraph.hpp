#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ksvi/geometry.hpp"

namespace ksvi {

struct Assignment; // assignment.hpp

struct Observable {
    std::string id;
    Ray ray;
};

/// A maximal set of compatible projection observables: three pairwise
/// orthogonal rays spanning C^3.  Stored as member ids; arity and
/// orthogonality are enforced by validate(), not by construction, so that
/// loading can surface broken documents as violation reports.
struct Context {
    std::string id;
    std::vector<std::string> members;
};

struct Violation {
    std::string where; // context or observable id
    std::string what;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<std::string> notes; // e.g. id-alias merges during load
    bool ok() const { return violations.empty(); }
};

/// Observables plus contexts over them (a Greechie orthogonality hypergraph
/// of rank 3).  Observable identity is the canonical ray: inserting a ray
/// projectively equal to an existing observable merges the two, recording the
/// requested id as an alias.  Instances are immutable once built; all queries
/// are safe to run concurrently.
class Hypergraph {
public:
    int dimension() const { return 3; }

    /// Insert an observable, deduplicating on projective ray equality.
    /// Returns the id that ends up naming the ray (the existing one when the
    /// insertion merges).
    std::string add_observable(const std::string& preferred_id, const Ray& ray);

    /// Insert a context whose members may be given by primary ids or aliases.
    /// Throws UnknownObservable for unresolvable members.
    void add_context(const std::string& id, const std::vector<std::string>& member_ids);

    const std::vector<Observable>& observables() const { return observables_; }
    const std::vector<Context>& contexts() const { return contexts_; }

    bool has_observable(const std::string& id) const;
    bool has_context(const std::string& id) const;
    const Observable& observable(const std::string& id) const;
    const Context& context(const std::string& id) const;

    /// Resolve an id or alias to the primary observable id.
    std::string resolve(const std::string& id_or_alias) const;

    /// S_a: ids of exactly the contexts containing the observable.
    std::vector<std::string> star_contexts(const std::string& obs_id) const;

    /// (alias, primary) pairs recorded by merging insertions.
    const std::vector<std::pair<std::string, std::string>>& aliases() const {
        return aliases_;
    }

    // Index-based views used by the propagation engine.
    int obs_index(const std::string& id) const;
    int ctx_index(const std::string& id) const;
    const std::vector<std::vector<int>>& context_member_indices() const {
        return ctx_members_;
    }
    const std::vector<std::vector<int>>& contexts_of_observable() const {
        return obs_contexts_;
    }

private:
    std::vector<Observable> observables_;
    std::vector<Context> contexts_;
    std::unordered_map<std::string, int> obs_by_id_;
    std::unordered_map<std::string, int> ctx_by_id_;
    std::unordered_map<std::string, std::string> alias_to_primary_;
    std::vector<std::pair<std::string, std::string>> aliases_;
    std::vector<std::vector<int>> ctx_members_;
    std::vector<std::vector<int>> obs_contexts_;
};

/// Check every type invariant: member resolution, context arity, exact or
/// numeric pairwise orthogonality, and that every observable appears in at
/// least one context.  Violations are data, not faults.
ValidationReport validate(const Hypergraph& h);

/// The built-in 24-context instance over canonical integer rays (contexts
/// C1..C24, shared vectors deduplicated).  validate() returns an empty report
/// on it, which doubles as a transcription self-check.
Hypergraph table1_hypergraph();

/// Greechie diagram as DOT text: one node per observable, each context drawn
/// as a distinctly coloured chain through its members.  With an overlay,
/// value-1 nodes are boxes, value-0 nodes circles, value-indefinite nodes
/// dashed.  Throws UnknownObservable if the overlay references foreign ids.
std::string export_greechie_dot(const Hypergraph& h,
                                const Assignment* overlay = nullptr);

} // namespace ksvi
