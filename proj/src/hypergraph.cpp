#include "ksvi/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "ksvi/assignment.hpp"

namespace ksvi {

std::string Hypergraph::add_observable(const std::string& preferred_id,
                                       const Ray& ray) {
    for (const Observable& o : observables_) {
        if (rays_equal(o.ray, ray)) {
            if (preferred_id != o.id &&
                alias_to_primary_.find(preferred_id) == alias_to_primary_.end() &&
                obs_by_id_.find(preferred_id) == obs_by_id_.end()) {
                alias_to_primary_.emplace(preferred_id, o.id);
                aliases_.emplace_back(preferred_id, o.id);
            }
            return o.id;
        }
    }
    if (obs_by_id_.count(preferred_id) || alias_to_primary_.count(preferred_id)) {
        throw Error("observable id '" + preferred_id +
                    "' already names a different ray");
    }
    obs_by_id_.emplace(preferred_id, static_cast<int>(observables_.size()));
    observables_.push_back(Observable{preferred_id, ray});
    obs_contexts_.emplace_back();
    return preferred_id;
}

void Hypergraph::add_context(const std::string& id,
                             const std::vector<std::string>& member_ids) {
    if (ctx_by_id_.count(id)) {
        throw Error("duplicate context id '" + id + "'");
    }
    std::vector<std::string> resolved;
    std::vector<int> indices;
    for (const std::string& m : member_ids) {
        std::string primary = resolve(m);
        auto it = obs_by_id_.find(primary);
        if (it == obs_by_id_.end()) {
            throw UnknownObservable("context '" + id +
                                    "' references unknown observable '" + m + "'");
        }
        resolved.push_back(primary);
        indices.push_back(it->second);
    }
    int ci = static_cast<int>(contexts_.size());
    ctx_by_id_.emplace(id, ci);
    contexts_.push_back(Context{id, resolved});
    ctx_members_.push_back(indices);
    for (int oi : indices) {
        auto& lst = obs_contexts_[static_cast<size_t>(oi)];
        if (std::find(lst.begin(), lst.end(), ci) == lst.end()) {
            lst.push_back(ci);
        }
    }
}

bool Hypergraph::has_observable(const std::string& id) const {
    return obs_by_id_.count(id) != 0 || alias_to_primary_.count(id) != 0;
}

bool Hypergraph::has_context(const std::string& id) const {
    return ctx_by_id_.count(id) != 0;
}

std::string Hypergraph::resolve(const std::string& id_or_alias) const {
    auto it = alias_to_primary_.find(id_or_alias);
    return it == alias_to_primary_.end() ? id_or_alias : it->second;
}

const Observable& Hypergraph::observable(const std::string& id) const {
    auto it = obs_by_id_.find(resolve(id));
    if (it == obs_by_id_.end()) {
        throw UnknownObservable("unknown observable '" + id + "'");
    }
    return observables_[static_cast<size_t>(it->second)];
}

const Context& Hypergraph::context(const std::string& id) const {
    auto it = ctx_by_id_.find(id);
    if (it == ctx_by_id_.end()) {
        throw Error("unknown context '" + id + "'");
    }
    return contexts_[static_cast<size_t>(it->second)];
}

int Hypergraph::obs_index(const std::string& id) const {
    auto it = obs_by_id_.find(resolve(id));
    if (it == obs_by_id_.end()) {
        throw UnknownObservable("unknown observable '" + id + "'");
    }
    return it->second;
}

int Hypergraph::ctx_index(const std::string& id) const {
    auto it = ctx_by_id_.find(id);
    if (it == ctx_by_id_.end()) {
        throw Error("unknown context '" + id + "'");
    }
    return it->second;
}

std::vector<std::string> Hypergraph::star_contexts(const std::string& obs_id) const {
    int oi = obs_index(obs_id);
    std::vector<std::string> out;
    for (int ci : obs_contexts_[static_cast<size_t>(oi)]) {
        out.push_back(contexts_[static_cast<size_t>(ci)].id);
    }
    return out;
}

ValidationReport validate(const Hypergraph& h) {
    ValidationReport report;
    const auto& ctxs = h.contexts();
    const auto& members = h.context_member_indices();
    for (size_t ci = 0; ci < ctxs.size(); ++ci) {
        const Context& c = ctxs[ci];
        std::set<int> distinct(members[ci].begin(), members[ci].end());
        if (distinct.size() != 3) {
            report.violations.push_back(
                {c.id, "size != 3 (" + std::to_string(distinct.size()) +
                           " distinct members)"});
            continue;
        }
        const auto& idx = members[ci];
        for (size_t i = 0; i < idx.size(); ++i) {
            for (size_t j = i + 1; j < idx.size(); ++j) {
                const Observable& a = h.observables()[static_cast<size_t>(idx[i])];
                const Observable& b = h.observables()[static_cast<size_t>(idx[j])];
                bool orthogonal;
                std::string value;
                if (a.ray.is_exact() && b.ray.is_exact()) {
                    long long d = dot_exact(a.ray.exact(), b.ray.exact());
                    orthogonal = d == 0;
                    value = std::to_string(d);
                } else {
                    Complex ip = inner_product(a.ray, b.ray);
                    orthogonal = std::abs(ip) < kOrthTol;
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%.3e", std::abs(ip));
                    value = buf;
                }
                if (!orthogonal) {
                    report.violations.push_back(
                        {c.id, "<" + a.id + "|" + b.id + "> = " + value + " != 0"});
                }
            }
        }
    }
    const auto& per_obs = h.contexts_of_observable();
    for (size_t oi = 0; oi < h.observables().size(); ++oi) {
        if (per_obs[oi].empty()) {
            report.violations.push_back(
                {h.observables()[oi].id, "appears in no context"});
        }
    }
    return report;
}

namespace {

// The 24 built-in contexts.  Paired columns of the source table hold one
// context in the upper three rows and one in the lower three; single columns
// hold one context.  This is the only reading under which every triple is
// exactly orthogonal, and validate() enforces that mechanically.
constexpr long long kTable1[24][3][3] = {
    {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},         // C1
    {{3, 2, 1}, {2, -3, 0}, {3, 2, -13}},      // C2
    {{1, 0, 0}, {0, 1, 1}, {0, 1, -1}},        // C3
    {{3, 2, 1}, {1, -1, -1}, {1, -4, 5}},      // C4
    {{2, 1, 1}, {1, -1, -1}, {0, 1, -1}},      // C5
    {{3, 2, 0}, {2, -3, 0}, {0, 0, 1}},        // C6
    {{2, 1, 1}, {1, 0, -2}, {2, -5, 1}},       // C7
    {{3, 2, 0}, {2, -3, 3}, {6, -9, -13}},     // C8
    {{2, 0, 1}, {1, 0, -2}, {0, 1, 0}},        // C9
    {{3, 1, -1}, {2, -3, 3}, {0, 1, 1}},       // C10
    {{2, 0, 1}, {1, 1, -2}, {1, -5, -2}},      // C11
    {{3, 1, -1}, {1, -1, 2}, {1, -7, -4}},     // C12
    {{1, 1, 0}, {1, -1, 2}, {1, -1, -1}},      // C13
    {{1, 1, 0}, {1, -1, 0}, {0, 0, 1}},        // C14
    {{1, 1, 0}, {1, -1, 1}, {1, -1, -2}},      // C15
    {{1, 1, 1}, {1, -1, 0}, {1, 1, -2}},       // C16
    {{2, 1, -1}, {1, -1, 1}, {0, 1, 1}},       // C17
    {{1, 1, 1}, {1, 0, -1}, {1, -2, 1}},       // C18
    {{2, 1, -1}, {1, 0, 2}, {2, -5, -1}},      // C19
    {{1, 0, 1}, {1, 0, -1}, {0, 1, 0}},        // C20
    {{2, 0, -1}, {1, 0, 2}, {0, 1, 0}},        // C21
    {{1, 0, 1}, {1, 1, -1}, {1, -2, -1}},      // C22
    {{2, 0, -1}, {1, 1, 2}, {1, -5, 2}},       // C23
    {{1, 1, -1}, {1, -1, 0}, {1, 1, 2}},       // C24
};

} // namespace

Hypergraph table1_hypergraph() {
    Hypergraph h;
    for (int ci = 0; ci < 24; ++ci) {
        std::vector<std::string> members;
        for (int k = 0; k < 3; ++k) {
            const auto& v = kTable1[ci][k];
            Ray r(canonicalize_ray({v[0], v[1], v[2]}));
            members.push_back(h.add_observable(ray_repr(r), r));
        }
        h.add_context("C" + std::to_string(ci + 1), members);
    }
    return h;
}

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') {
            out += '\\';
        }
        out += ch;
    }
    out += '"';
    return out;
}

// Evenly spaced hues so all context chains get distinct colours.
std::string palette_color(size_t index, size_t total) {
    double hue = 360.0 * static_cast<double>(index) / static_cast<double>(std::max<size_t>(total, 1));
    double s = 0.72, v = 0.85;
    double c = v * s;
    double hp = hue / 60.0;
    double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(hp) % 6) {
        case 0: r = c; g = x; break;
        case 1: r = x; g = c; break;
        case 2: g = c; b = x; break;
        case 3: g = x; b = c; break;
        case 4: r = x; b = c; break;
        default: r = c; b = x; break;
    }
    double m = v - c;
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround((r + m) * 255)),
                  static_cast<int>(std::lround((g + m) * 255)),
                  static_cast<int>(std::lround((b + m) * 255)));
    return buf;
}

} // namespace

std::string export_greechie_dot(const Hypergraph& h, const Assignment* overlay) {
    if (overlay != nullptr) {
        for (const auto& [key, value] : overlay->values) {
            (void)value;
            if (!h.has_observable(key.first) || !h.has_context(key.second)) {
                throw UnknownObservable("overlay references unknown pair (" +
                                        key.first + ", " + key.second + ")");
            }
        }
    }
    std::ostringstream os;
    os << "digraph greechie {\n";
    if (!h.observables().empty()) {
        os << "  edge [dir=none];\n";
    }
    for (const Observable& o : h.observables()) {
        // Node value: defined and equal across the overlay's entries for this
        // observable -> that value; no entry -> indefinite; mixed -> both
        // shapes' cues (dashed box).
        bool any = false, mixed = false;
        int val = -1;
        if (overlay != nullptr) {
            for (const auto& [key, value] : overlay->values) {
                if (h.resolve(key.first) == o.id) {
                    if (!any) {
                        any = true;
                        val = value;
                    } else if (value != val) {
                        mixed = true;
                    }
                }
            }
        }
        os << "  " << quote(o.id);
        if (overlay != nullptr) {
            if (!any) {
                os << " [shape=circle, style=dashed]";
            } else if (mixed) {
                os << " [shape=box, style=dashed]";
            } else if (val == 1) {
                os << " [shape=box]";
            } else {
                os << " [shape=circle]";
            }
        } else {
            os << " [shape=circle]";
        }
        os << ";\n";
    }
    const auto& ctxs = h.contexts();
    for (size_t ci = 0; ci < ctxs.size(); ++ci) {
        const std::string color = palette_color(ci, ctxs.size());
        const auto& m = ctxs[ci].members;
        for (size_t k = 0; k + 1 < m.size(); ++k) {
            os << "  " << quote(m[k]) << " -> " << quote(m[k + 1]) << " [color="
               << quote(color) << ", label=" << quote(k == 0 ? ctxs[ci].id : "")
               << "];\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace ksvi
