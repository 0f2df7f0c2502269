#include <ordo/semantics.hpp>

#include <ordo/errors.hpp>

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace ordo {

AtomId AspProgram::max_atom_id() const {
    AtomId m = 0;
    auto   bump = [&m](AtomId a) {
        if (a > m) { m = a; }
    };
    for (const auto& stmt : statements) {
        if (const auto parts = rule_parts(stmt)) {
            for (AtomId a : parts->heads) { bump(a); }
            for (AtomId a : *parts->pos_body) { bump(a); }
            for (AtomId a : *parts->neg_body) { bump(a); }
        }
        else if (const auto* agg = std::get_if<AggregateDef>(&stmt)) {
            bump(agg->head_id);
            for (const auto& e : agg->elements) { bump(e.literal.atom); }
        }
    }
    for (const auto& [id, name] : symbol_table) { bump(id); }
    return m;
}

std::optional<RuleParts> rule_parts(const Statement& stmt) {
    if (const auto* n = std::get_if<NormalRule>(&stmt)) {
        RuleParts p;
        if (n->head) { p.heads.push_back(*n->head); }
        p.pos_body = &n->pos_body;
        p.neg_body = &n->neg_body;
        return p;
    }
    if (const auto* d = std::get_if<DisjunctiveRule>(&stmt)) {
        return RuleParts{d->heads, &d->pos_body, &d->neg_body, false};
    }
    if (const auto* c = std::get_if<ChoiceRule>(&stmt)) {
        return RuleParts{c->heads, &c->pos_body, &c->neg_body, true};
    }
    return std::nullopt;
}

/////////////////////////////////////////////////////////////////////////////////////////
// Shortcut elimination
/////////////////////////////////////////////////////////////////////////////////////////

AggregateDef count_to_sum(const AggregateDef& agg) {
    AggregateDef out = agg;
    out.kind         = AggregateKind::sum;
    for (auto& e : out.elements) { e.weight = 1; }
    return out;
}

IdAllocator IdAllocator::after(const AspProgram& program) { return IdAllocator(program.max_atom_id() + 1); }

AtomId IdAllocator::fresh() {
    if (next_ == std::numeric_limits<AtomId>::max()) {
        throw FormatError("atom id space exhausted");
    }
    return next_++;
}

std::vector<DisjunctiveRule> expand_choice(const ChoiceRule& rule, IdAllocator& ids) {
    std::vector<DisjunctiveRule> out;
    out.reserve(rule.heads.size());
    for (AtomId h : rule.heads) {
        DisjunctiveRule r;
        r.heads    = {h, ids.fresh()};
        r.pos_body = rule.pos_body;
        r.neg_body = rule.neg_body;
        out.push_back(std::move(r));
    }
    return out;
}

AspProgram expand_all_choices(const AspProgram& program) {
    AspProgram  out;
    out.symbol_table     = program.symbol_table;
    out.compute_sections = program.compute_sections;
    IdAllocator ids      = IdAllocator::after(program);
    for (const auto& stmt : program.statements) {
        if (const auto* c = std::get_if<ChoiceRule>(&stmt)) {
            for (auto& r : expand_choice(*c, ids)) { out.statements.emplace_back(std::move(r)); }
        }
        else {
            out.statements.push_back(stmt);
        }
    }
    return out;
}

/////////////////////////////////////////////////////////////////////////////////////////
// Atom universes
/////////////////////////////////////////////////////////////////////////////////////////

std::set<AtomId> atoms_of(const CnfFormula& cnf) {
    std::set<AtomId> out;
    for (const auto& c : cnf.clauses) {
        for (const auto& l : c.literals) { out.insert(l.atom); }
    }
    return out;
}

std::set<AtomId> atoms_of(const AspProgram& program) {
    std::set<AtomId> out;
    for (const auto& stmt : program.statements) {
        if (const auto parts = rule_parts(stmt)) {
            out.insert(parts->heads.begin(), parts->heads.end());
            out.insert(parts->pos_body->begin(), parts->pos_body->end());
            out.insert(parts->neg_body->begin(), parts->neg_body->end());
        }
        else if (const auto* agg = std::get_if<AggregateDef>(&stmt)) {
            out.insert(agg->head_id);
            for (const auto& e : agg->elements) { out.insert(e.literal.atom); }
        }
    }
    return out;
}

std::map<AtomId, const AggregateDef*> aggregate_index(const AspProgram& program) {
    std::map<AtomId, const AggregateDef*> out;
    for (const auto& stmt : program.statements) {
        if (const auto* agg = std::get_if<AggregateDef>(&stmt)) { out.emplace(agg->head_id, agg); }
    }
    return out;
}

/////////////////////////////////////////////////////////////////////////////////////////
// Satisfaction
/////////////////////////////////////////////////////////////////////////////////////////

bool satisfies(const Interpretation& i, const Literal& l) {
    return l.negative ? !i.contains(l.atom) : i.contains(l.atom);
}

bool satisfies(const Interpretation& i, const Clause& c) {
    return std::any_of(c.literals.begin(), c.literals.end(),
                       [&i](const Literal& l) { return satisfies(i, l); });
}

bool satisfies(const Interpretation& i, const CnfFormula& cnf) {
    return std::all_of(cnf.clauses.begin(), cnf.clauses.end(),
                       [&i](const Clause& c) { return satisfies(i, c); });
}

namespace {

using AggMap = std::map<AtomId, const AggregateDef*>;

bool aggregate_true(const Interpretation& i, const AggregateDef& agg, const AggMap& aggs, std::size_t depth);

bool literal_true(const Interpretation& i, const Literal& l, const AggMap& aggs, std::size_t depth) {
    if (const auto it = aggs.find(l.atom); it != aggs.end()) {
        const bool t = aggregate_true(i, *it->second, aggs, depth);
        return l.negative ? !t : t;
    }
    return satisfies(i, l);
}

bool aggregate_true(const Interpretation& i, const AggregateDef& agg, const AggMap& aggs, std::size_t depth) {
    if (depth > aggs.size()) {
        throw PreconditionError("recursive aggregate atoms are not supported");
    }
    std::int64_t total = 0;
    for (const auto& e : agg.elements) {
        if (literal_true(i, e.literal, aggs, depth + 1)) { total += e.weight; }
    }
    return total >= agg.bound;
}

bool body_true(const Interpretation& i, const RuleParts& parts, const AggMap& aggs) {
    for (AtomId a : *parts.pos_body) {
        if (!literal_true(i, pos(a), aggs, 0)) { return false; }
    }
    for (AtomId a : *parts.neg_body) {
        if (!literal_true(i, neg(a), aggs, 0)) { return false; }
    }
    return true;
}

bool head_true(const Interpretation& i, const RuleParts& parts) {
    return std::any_of(parts.heads.begin(), parts.heads.end(), [&i](AtomId a) { return i.contains(a); });
}

} // namespace

bool satisfies(const Interpretation& i, const AggregateDef& agg, const AspProgram& context) {
    return aggregate_true(i, agg, aggregate_index(context), 0);
}

bool satisfies_body(const Interpretation& i, const Statement& stmt, const AspProgram& context) {
    const auto parts = rule_parts(stmt);
    if (!parts) {
        throw PreconditionError("statement has no rule body");
    }
    return body_true(i, *parts, aggregate_index(context));
}

bool satisfies(const Interpretation& i, const Statement& stmt, const AspProgram& context) {
    if (const auto* agg = std::get_if<AggregateDef>(&stmt)) { return satisfies(i, *agg, context); }
    if (std::holds_alternative<OpaqueStatement>(stmt) || std::holds_alternative<ChoiceRule>(stmt)) {
        return true;
    }
    const auto parts = rule_parts(stmt);
    return !body_true(i, *parts, aggregate_index(context)) || head_true(i, *parts);
}

bool satisfies(const Interpretation& i, const AspProgram& program) {
    const AggMap aggs = aggregate_index(program);
    for (const auto& stmt : program.statements) {
        const auto parts = rule_parts(stmt);
        if (!parts || parts->is_choice) { continue; }
        if (body_true(i, *parts, aggs) && !head_true(i, *parts)) { return false; }
    }
    return true;
}

/////////////////////////////////////////////////////////////////////////////////////////
// Reduct
/////////////////////////////////////////////////////////////////////////////////////////

AspProgram reduct(const AspProgram& program, const Interpretation& i) {
    AspProgram out;
    out.symbol_table     = program.symbol_table;
    out.compute_sections = program.compute_sections;
    const AggMap aggs    = aggregate_index(program);
    for (const auto& stmt : program.statements) {
        if (std::holds_alternative<AggregateDef>(stmt)) {
            out.statements.push_back(stmt);
            continue;
        }
        if (std::holds_alternative<OpaqueStatement>(stmt)) { continue; }
        const auto parts = rule_parts(stmt);
        if (parts->is_choice) {
            throw PreconditionError("reduct requires choice rules to be expanded first");
        }
        if (body_true(i, *parts, aggs)) { out.statements.push_back(stmt); }
    }
    return out;
}

/////////////////////////////////////////////////////////////////////////////////////////
// CNF model enumeration
/////////////////////////////////////////////////////////////////////////////////////////

std::vector<std::uint32_t> enumerate_model_masks(const CnfFormula& cnf, std::vector<AtomId>& atoms,
                                                 int atom_cap) {
    const std::set<AtomId> universe = atoms_of(cnf);
    atoms.assign(universe.begin(), universe.end());
    if (static_cast<int>(atoms.size()) > std::min(atom_cap, 31)) {
        throw CapError("formula has " + std::to_string(atoms.size()) + " atoms, oracle cap is " +
                       std::to_string(std::min(atom_cap, 31)));
    }
    std::unordered_map<AtomId, int> index;
    for (std::size_t k = 0; k < atoms.size(); ++k) { index.emplace(atoms[k], static_cast<int>(k)); }

    struct BitLit {
        std::uint32_t mask;
        bool          negative;
    };
    std::vector<std::vector<BitLit>> clauses;
    clauses.reserve(cnf.clauses.size());
    for (const auto& c : cnf.clauses) {
        std::vector<BitLit> bits;
        bits.reserve(c.literals.size());
        for (const auto& l : c.literals) { bits.push_back({1u << index.at(l.atom), l.negative}); }
        clauses.push_back(std::move(bits));
    }

    std::vector<std::uint32_t> models;
    const std::uint64_t        limit = 1ull << atoms.size();
    for (std::uint64_t m = 0; m < limit; ++m) {
        const auto mask = static_cast<std::uint32_t>(m);
        bool       ok   = true;
        for (const auto& c : clauses) {
            bool sat = false;
            for (const auto& b : c) {
                if (((mask & b.mask) != 0) != b.negative) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok) { models.push_back(mask); }
    }
    return models;
}

std::set<Interpretation> enumerate_models(const CnfFormula& cnf, int atom_cap) {
    std::vector<AtomId> atoms;
    const auto          masks = enumerate_model_masks(cnf, atoms, atom_cap);
    std::set<Interpretation> out;
    for (const std::uint32_t mask : masks) {
        Interpretation i;
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            if (mask & (1u << k)) { i.true_atoms.insert(atoms[k]); }
        }
        out.insert(std::move(i));
    }
    return out;
}

/////////////////////////////////////////////////////////////////////////////////////////
// Stable model enumeration
/////////////////////////////////////////////////////////////////////////////////////////

namespace {

// Program compiled onto bit positions over the plain (non-aggregate) atoms.
struct MaskProgram {
    struct Ref {
        int  slot;     // bit index or aggregate index
        bool negative;
        bool is_aggregate;
    };
    struct Agg {
        std::int64_t                             bound;
        std::vector<std::pair<std::int64_t, Ref>> elements;
    };
    struct Rule {
        std::vector<int> head_bits;
        std::vector<Ref> body;
    };
    std::vector<Agg>  aggregates;
    std::vector<Rule> rules;

    [[nodiscard]] bool ref_true(std::uint32_t mask, const Ref& r, std::size_t depth) const {
        bool t;
        if (r.is_aggregate) {
            if (depth > aggregates.size()) {
                throw PreconditionError("recursive aggregate atoms are not supported");
            }
            const Agg&   a     = aggregates[static_cast<std::size_t>(r.slot)];
            std::int64_t total = 0;
            for (const auto& [w, ref] : a.elements) {
                if (ref_true(mask, ref, depth + 1)) { total += w; }
            }
            t = total >= a.bound;
        }
        else {
            t = (mask & (1u << r.slot)) != 0;
        }
        return r.negative ? !t : t;
    }

    [[nodiscard]] bool body_true(std::uint32_t mask, const Rule& rule) const {
        return std::all_of(rule.body.begin(), rule.body.end(),
                           [&](const Ref& r) { return ref_true(mask, r, 0); });
    }

    [[nodiscard]] bool head_true(std::uint32_t mask, const Rule& rule) const {
        return std::any_of(rule.head_bits.begin(), rule.head_bits.end(),
                           [&](int b) { return (mask & (1u << b)) != 0; });
    }
};

} // namespace

std::set<Interpretation> enumerate_stable_models(const AspProgram& program, int atom_cap) {
    const std::set<AtomId> original = atoms_of(program);
    const AspProgram       expanded = expand_all_choices(program);
    const AggMap           aggs     = aggregate_index(expanded);

    std::vector<AtomId> plain;
    for (AtomId a : atoms_of(expanded)) {
        if (!aggs.count(a)) { plain.push_back(a); }
    }
    if (static_cast<int>(plain.size()) > std::min(atom_cap, 31)) {
        throw CapError("program has " + std::to_string(plain.size()) + " atoms after choice expansion, "
                       "oracle cap is " + std::to_string(std::min(atom_cap, 31)));
    }
    std::unordered_map<AtomId, int> bit;
    for (std::size_t k = 0; k < plain.size(); ++k) { bit.emplace(plain[k], static_cast<int>(k)); }

    std::map<AtomId, int> agg_slot;
    MaskProgram           mp;
    for (const auto& [id, def] : aggs) {
        agg_slot.emplace(id, static_cast<int>(mp.aggregates.size()));
        mp.aggregates.push_back({def->bound, {}});
    }
    auto make_ref = [&](AtomId a, bool negative) -> MaskProgram::Ref {
        if (const auto it = agg_slot.find(a); it != agg_slot.end()) { return {it->second, negative, true}; }
        return {bit.at(a), negative, false};
    };
    for (const auto& [id, def] : aggs) {
        auto& slots = mp.aggregates[static_cast<std::size_t>(agg_slot.at(id))].elements;
        for (const auto& e : def->elements) {
            slots.emplace_back(e.weight, make_ref(e.literal.atom, e.literal.negative));
        }
    }
    for (const auto& stmt : expanded.statements) {
        const auto parts = rule_parts(stmt);
        if (!parts) { continue; }
        MaskProgram::Rule rule;
        for (AtomId h : parts->heads) {
            if (agg_slot.count(h)) {
                throw PreconditionError("rule head uses an aggregate identifier");
            }
            rule.head_bits.push_back(bit.at(h));
        }
        for (AtomId a : *parts->pos_body) { rule.body.push_back(make_ref(a, false)); }
        for (AtomId a : *parts->neg_body) { rule.body.push_back(make_ref(a, true)); }
        mp.rules.push_back(std::move(rule));
    }

    std::set<Interpretation>        out;
    std::vector<const MaskProgram::Rule*> kept;
    const std::uint64_t             limit = 1ull << plain.size();
    for (std::uint64_t m = 0; m < limit; ++m) {
        const auto mask  = static_cast<std::uint32_t>(m);
        bool       model = true;
        kept.clear();
        for (const auto& rule : mp.rules) {
            if (!mp.body_true(mask, rule)) { continue; }
            if (!mp.head_true(mask, rule)) {
                model = false;
                break;
            }
            kept.push_back(&rule);
        }
        if (!model) { continue; }

        bool minimal = true;
        if (mask != 0) {
            for (std::uint32_t sub = (mask - 1) & mask;; sub = (sub - 1) & mask) {
                bool models_reduct = true;
                for (const auto* rule : kept) {
                    if (mp.body_true(sub, *rule) && !mp.head_true(sub, *rule)) {
                        models_reduct = false;
                        break;
                    }
                }
                if (models_reduct) {
                    minimal = false;
                    break;
                }
                if (sub == 0) { break; }
            }
        }
        if (!minimal) { continue; }

        Interpretation i;
        for (std::size_t k = 0; k < plain.size(); ++k) {
            if ((mask & (1u << k)) && original.count(plain[k])) { i.true_atoms.insert(plain[k]); }
        }
        out.insert(std::move(i));
    }
    return out;
}

/////////////////////////////////////////////////////////////////////////////////////////
// Dependency graph
/////////////////////////////////////////////////////////////////////////////////////////

DependencyGraph dependency_graph(const AspProgram& program) {
    DependencyGraph g;
    const auto      universe = atoms_of(program);
    g.nodes.assign(universe.begin(), universe.end());
    auto add_arc = [&g](AtomId from, AtomId to) { g.arcs[from].push_back(to); };
    for (const auto& stmt : program.statements) {
        if (const auto parts = rule_parts(stmt)) {
            for (AtomId h : parts->heads) {
                for (AtomId a : *parts->pos_body) { add_arc(h, a); }
                for (AtomId a : *parts->neg_body) { add_arc(h, a); }
            }
        }
        else if (const auto* agg = std::get_if<AggregateDef>(&stmt)) {
            for (const auto& e : agg->elements) { add_arc(agg->head_id, e.literal.atom); }
        }
    }
    for (auto& [from, tos] : g.arcs) {
        std::sort(tos.begin(), tos.end());
        tos.erase(std::unique(tos.begin(), tos.end()), tos.end());
    }
    return g;
}

namespace {

// Iterative Tarjan; atoms in components of size >= 2 or with a self-loop.
struct SccFinder {
    const DependencyGraph&            g;
    std::map<AtomId, int>             index;
    std::map<AtomId, int>             lowlink;
    std::map<AtomId, bool>            on_stack;
    std::vector<AtomId>               stack;
    int                               counter = 0;
    std::set<AtomId>                  recursive;
    static const std::vector<AtomId>& successors(const DependencyGraph& g, AtomId v) {
        static const std::vector<AtomId> none;
        const auto                       it = g.arcs.find(v);
        return it == g.arcs.end() ? none : it->second;
    }

    void run(AtomId root) {
        struct Frame {
            AtomId      v;
            std::size_t next = 0;
        };
        std::vector<Frame> frames{{root}};
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame&      f    = frames.back();
            const auto& succ = successors(g, f.v);
            if (f.next < succ.size()) {
                const AtomId w = succ[f.next++];
                if (!index.count(w)) {
                    index[w] = lowlink[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w});
                }
                else if (on_stack[w]) {
                    lowlink[f.v] = std::min(lowlink[f.v], index[w]);
                }
            }
            else {
                if (lowlink[f.v] == index[f.v]) {
                    std::vector<AtomId> comp;
                    for (;;) {
                        const AtomId w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                        if (w == f.v) { break; }
                    }
                    const auto& succ_v   = successors(g, f.v);
                    const bool  selfloop = comp.size() == 1 &&
                                          std::find(succ_v.begin(), succ_v.end(), f.v) != succ_v.end();
                    if (comp.size() >= 2 || selfloop) { recursive.insert(comp.begin(), comp.end()); }
                }
                const AtomId v = f.v;
                frames.pop_back();
                if (!frames.empty()) {
                    lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
                }
            }
        }
    }
};

} // namespace

std::set<AtomId> recursive_atoms(const AspProgram& program) {
    const DependencyGraph g = dependency_graph(program);
    SccFinder             finder{g};
    for (AtomId v : g.nodes) {
        if (!finder.index.count(v)) { finder.run(v); }
    }
    return finder.recursive;
}

} // namespace ordo
