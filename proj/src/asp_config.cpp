#include <ordo/asp_config.hpp>

#include <ordo/errors.hpp>
#include <ordo/semantics.hpp>

#include <algorithm>
#include <numeric>

namespace ordo {

namespace {

std::set<AtomId> to_set(const std::vector<AtomId>& v) { return {v.begin(), v.end()}; }

// A body literal set, deduplicated, with the counts the scoring functions use.
struct BodyView {
    std::set<AtomId> pos;
    std::set<AtomId> neg;

    [[nodiscard]] std::size_t size() const { return pos.size() + neg.size(); }
};

BodyView body_view(const RuleParts& parts) {
    return {to_set(*parts.pos_body), to_set(*parts.neg_body)};
}

} // namespace

ProgramIndex index_program(const AspProgram& program) {
    ProgramIndex index;
    index.max_id = program.max_atom_id();
    index.atom.resize(static_cast<std::size_t>(index.max_id) + 1);
    index.recursive = recursive_atoms(program);

    auto at = [&index](AtomId a) -> AtomOccurrences& { return index.atom[static_cast<std::size_t>(a)]; };

    for (const auto& stmt : program.statements) {
        if (const auto parts = rule_parts(stmt)) {
            for (AtomId h : to_set(parts->heads)) { at(h).head_occ++; }
            const BodyView body    = body_view(*parts);
            const bool     shortb  = body.size() <= 2;
            for (AtomId a : body.pos) {
                at(a).pos_body_occ++;
                if (shortb) { at(a).short_pos_body_occ++; }
            }
            for (AtomId a : body.neg) {
                at(a).neg_body_occ++;
                if (shortb) { at(a).short_neg_body_occ++; }
            }
            std::set<AtomId> both = body.pos;
            both.insert(body.neg.begin(), body.neg.end());
            for (AtomId a : both) {
                at(a).body_occ++;
                if (shortb) { at(a).short_body_occ++; }
            }
        }
        else if (const auto* agg = std::get_if<AggregateDef>(&stmt)) {
            std::set<AtomId> atoms;
            for (const auto& e : agg->elements) { atoms.insert(e.literal.atom); }
            for (AtomId a : atoms) { at(a).aggregate_occ++; }
        }
    }
    return index;
}

double literal_score(AtomId atom, const ProgramIndex& index, const AspWeights& w) {
    const AtomOccurrences& o = index.atom[static_cast<std::size_t>(atom)];
    return static_cast<double>(o.head_occ) * w.head_occ + static_cast<double>(o.body_occ) * w.body_occ +
           static_cast<double>(o.pos_body_occ) * w.pos_body_occ +
           static_cast<double>(o.neg_body_occ) * w.neg_body_occ +
           static_cast<double>(o.short_body_occ) * w.short_body_occ +
           static_cast<double>(o.short_pos_body_occ) * w.short_pos_body_occ +
           static_cast<double>(o.short_neg_body_occ) * w.short_neg_body_occ +
           static_cast<double>(o.aggregate_occ) * w.aggregate_occ;
}

double rule_score(const Statement& rule, const ProgramIndex& index, const AspWeights& w,
                  const ScoringConstants& consts) {
    const auto parts = rule_parts(rule);
    if (!parts) {
        throw PreconditionError("rule_score needs a normal, disjunctive or choice rule");
    }
    const std::set<AtomId> heads = to_set(parts->heads);
    const BodyView         body  = body_view(*parts);
    const auto             nh    = static_cast<double>(heads.size());
    const auto             npos  = static_cast<double>(body.pos.size());
    const auto             nneg  = static_cast<double>(body.neg.size());
    const double           nb    = npos + nneg;

    double s = 0;
    if (heads.empty()) { s += w.constraints; }
    if (heads.size() == 1) { s += w.normal; }
    if (heads.size() > 1) { s += w.disjunctive; }
    if (parts->is_choice) { s += w.choice * consts.t1; }

    s += nb * w.body + npos * w.p_body + nneg * w.n_body;
    if (nneg != 0) { s += (npos / nneg) * w.ratio_pos_neg; }
    if (body.pos.size() == 1) { s += w.horn; }

    std::int64_t rec_heads = 0, rec_bodies = 0;
    for (AtomId a : heads) { rec_heads += index.recursive.count(a); }
    for (AtomId a : body.pos) { rec_bodies += index.recursive.count(a); }
    for (AtomId a : body.neg) { rec_bodies += index.recursive.count(a); }
    s += static_cast<double>(rec_heads) * w.rec_head + static_cast<double>(rec_bodies) * w.rec_body;

    if (nh + nb >= 2 && nh + nb <= 3) { s += w.short_rule; }

    if (nh + nb > 0) {
        // distinct literals of the rule: heads positively, body as written
        std::set<Literal> lits;
        for (AtomId a : heads) { lits.insert(pos(a)); }
        for (AtomId a : body.pos) { lits.insert(pos(a)); }
        for (AtomId a : body.neg) { lits.insert(neg(a)); }
        double occ_sum = 0;
        for (const Literal& l : lits) { occ_sum += literal_score(l.atom, index, w); }
        s += occ_sum / (nh + nb);
    }
    return s;
}

double aggregate_score(const AggregateDef& agg, const ProgramIndex& index, const AspWeights& w,
                       const ScoringConstants& consts) {
    if (agg.elements.empty()) {
        throw PreconditionError("aggregate with empty element list");
    }
    const auto   n = static_cast<double>(agg.elements.size());
    std::int64_t weight_sum = 0;
    double       occ_sum    = 0;
    for (const auto& e : agg.elements) {
        weight_sum += e.weight;
        occ_sum += literal_score(e.literal.atom, index, w);
    }
    double s = consts.t2 * w.aggregate + n * w.aggregate_size;
    s += (static_cast<double>(agg.bound) / static_cast<double>(weight_sum)) * w.aggregate_ratio_bound_size;
    s += occ_sum / n;
    return s;
}

double statement_score(const Statement& stmt, const ProgramIndex& index, const AspWeights& w,
                       const ScoringConstants& consts) {
    if (std::holds_alternative<OpaqueStatement>(stmt)) { return 0.0; }
    if (const auto* agg = std::get_if<AggregateDef>(&stmt)) {
        return aggregate_score(*agg, index, w, consts);
    }
    return rule_score(stmt, index, w, consts);
}

AspProgram reorder_program(const AspProgram& program, const AspWeights& w,
                           const ScoringConstants& consts, bool pin_opaque) {
    const ProgramIndex  index = index_program(program);
    std::vector<double> score(program.statements.size(), 0.0);
    std::vector<std::size_t> movable;
    for (std::size_t k = 0; k < program.statements.size(); ++k) {
        const bool opaque = std::holds_alternative<OpaqueStatement>(program.statements[k]);
        if (opaque && pin_opaque) { continue; }
        score[k] = statement_score(program.statements[k], index, w, consts);
        movable.push_back(k);
    }
    std::stable_sort(movable.begin(), movable.end(),
                     [&score](std::size_t a, std::size_t b) { return score[a] > score[b]; });

    AspProgram out;
    out.symbol_table     = program.symbol_table;
    out.compute_sections = program.compute_sections;
    out.statements.resize(program.statements.size());
    if (pin_opaque) {
        std::vector<std::size_t> slots; // positions not held by a pinned statement
        for (std::size_t k = 0; k < program.statements.size(); ++k) {
            if (std::holds_alternative<OpaqueStatement>(program.statements[k])) {
                out.statements[k] = program.statements[k];
            }
            else {
                slots.push_back(k);
            }
        }
        for (std::size_t k = 0; k < movable.size(); ++k) {
            out.statements[slots[k]] = program.statements[movable[k]];
        }
    }
    else {
        for (std::size_t k = 0; k < movable.size(); ++k) {
            out.statements[k] = program.statements[movable[k]];
        }
    }
    return out;
}

std::vector<AtomId> id_map_by_score(const AspProgram& program, const AspWeights& w) {
    const ProgramIndex  index = index_program(program);
    std::vector<AtomId> ids(static_cast<std::size_t>(index.max_id));
    std::iota(ids.begin(), ids.end(), AtomId{1});
    std::vector<double> score(ids.size() + 1, 0.0);
    for (AtomId a : ids) { score[static_cast<std::size_t>(a)] = literal_score(a, index, w); }
    std::stable_sort(ids.begin(), ids.end(), [&score](AtomId a, AtomId b) {
        const double sa = score[static_cast<std::size_t>(a)];
        const double sb = score[static_cast<std::size_t>(b)];
        return sa != sb ? sa > sb : a < b;
    });
    std::vector<AtomId> new_from_old(static_cast<std::size_t>(index.max_id) + 1, 0);
    for (std::size_t k = 0; k < ids.size(); ++k) {
        new_from_old[static_cast<std::size_t>(ids[k])] = static_cast<AtomId>(k) + 1;
    }
    return new_from_old;
}

std::vector<AtomId> invert_id_map(const std::vector<AtomId>& new_from_old) {
    std::vector<AtomId> out(new_from_old.size(), 0);
    for (std::size_t old_id = 1; old_id < new_from_old.size(); ++old_id) {
        out[static_cast<std::size_t>(new_from_old[old_id])] = static_cast<AtomId>(old_id);
    }
    return out;
}

AspProgram apply_id_map(const AspProgram& program, const std::vector<AtomId>& new_from_old) {
    auto map = [&new_from_old](AtomId a) -> AtomId {
        if (a < 1 || static_cast<std::size_t>(a) >= new_from_old.size() ||
            new_from_old[static_cast<std::size_t>(a)] == 0) {
            throw PreconditionError("id map does not cover atom " + std::to_string(a));
        }
        return new_from_old[static_cast<std::size_t>(a)];
    };
    auto map_all = [&map](std::vector<AtomId>& v) {
        for (AtomId& a : v) { a = map(a); }
    };

    AspProgram out = program;
    for (auto& stmt : out.statements) {
        if (auto* n = std::get_if<NormalRule>(&stmt)) {
            if (n->head) { n->head = map(*n->head); }
            map_all(n->pos_body);
            map_all(n->neg_body);
        }
        else if (auto* d = std::get_if<DisjunctiveRule>(&stmt)) {
            map_all(d->heads);
            map_all(d->pos_body);
            map_all(d->neg_body);
        }
        else if (auto* c = std::get_if<ChoiceRule>(&stmt)) {
            map_all(c->heads);
            map_all(c->pos_body);
            map_all(c->neg_body);
        }
        else if (auto* agg = std::get_if<AggregateDef>(&stmt)) {
            agg->head_id = map(agg->head_id);
            for (auto& e : agg->elements) { e.literal.atom = map(e.literal.atom); }
        }
        // opaque payloads have an unknown token layout and stay verbatim
    }
    std::map<AtomId, std::string> symbols;
    for (const auto& [id, name] : program.symbol_table) { symbols.emplace(map(id), name); }
    out.symbol_table = std::move(symbols);
    return out;
}

AspProgram remap_ids_by_score(const AspProgram& program, const AspWeights& w) {
    return apply_id_map(program, id_map_by_score(program, w));
}

} // namespace ordo
