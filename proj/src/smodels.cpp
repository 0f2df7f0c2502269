#include <ordo/smodels.hpp>

#include <ordo/errors.hpp>

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace ordo {

namespace {

void warn(ParseDiagnostics& diag, int line, const std::string& message) {
    if (diag.strict) {
        throw ParseError(line, message);
    }
    diag.warnings.push_back({line, message});
}

std::int64_t parse_int(const std::string& token, int line) {
    std::int64_t value  = 0;
    const char*  last   = token.data() + token.size();
    const auto   result = std::from_chars(token.data(), last, value);
    if (result.ec == std::errc::result_out_of_range) {
        throw ParseError(line, "integer out of 64-bit range: " + token);
    }
    if (result.ec != std::errc() || result.ptr != last) {
        throw ParseError(line, "expected an integer, got '" + token + "'");
    }
    return value;
}

// Sequential reader over the integer tokens of one statement line.
struct LineReader {
    const std::vector<std::int64_t>& tokens;
    std::size_t                      pos = 0;
    int                              line;

    std::int64_t take(const char* what) {
        if (pos >= tokens.size()) {
            throw ParseError(line, std::string("truncated statement line, expected ") + what);
        }
        return tokens[pos++];
    }
    std::int64_t take_count(const char* what) {
        const std::int64_t v = take(what);
        if (v < 0) {
            throw ParseError(line, std::string("negative ") + what);
        }
        return v;
    }
    AtomId take_atom(const char* what) {
        const std::int64_t v = take(what);
        if (v < 1) {
            throw ParseError(line, std::string("invalid atom id in ") + what);
        }
        return v;
    }
    void finish() const {
        if (pos != tokens.size()) {
            throw ParseError(line, "trailing tokens after statement");
        }
    }
};

struct Body {
    std::vector<AtomId> neg;
    std::vector<AtomId> pos;
};

Body read_body(LineReader& in) {
    const std::int64_t nlits = in.take_count("#literals");
    const std::int64_t nneg  = in.take_count("#negative");
    if (nneg > nlits) {
        throw ParseError(in.line, "#negative exceeds #literals");
    }
    Body b;
    for (std::int64_t k = 0; k < nneg; ++k) { b.neg.push_back(in.take_atom("body")); }
    for (std::int64_t k = nneg; k < nlits; ++k) { b.pos.push_back(in.take_atom("body")); }
    return b;
}

std::vector<WeightedLiteral> body_to_elements(const Body& b, const std::vector<std::int64_t>* weights) {
    std::vector<WeightedLiteral> out;
    out.reserve(b.neg.size() + b.pos.size());
    std::size_t k = 0;
    for (AtomId a : b.neg) {
        out.push_back({weights ? (*weights)[k++] : 1, neg(a)});
    }
    for (AtomId a : b.pos) {
        out.push_back({weights ? (*weights)[k++] : 1, pos(a)});
    }
    return out;
}

void check_aggregate(const AggregateDef& agg, ParseDiagnostics& diag, int line) {
    if (agg.elements.empty()) { warn(diag, line, "aggregate with empty element list"); }
    if (agg.bound < 1) { warn(diag, line, "aggregate bound below 1"); }
    std::set<Literal> seen;
    for (const auto& e : agg.elements) {
        if (e.weight < 1) { warn(diag, line, "aggregate weight below 1"); }
        if (!seen.insert(e.literal).second) { warn(diag, line, "duplicate literal in aggregate"); }
    }
}

Statement decode_statement(const std::vector<std::int64_t>& tokens, int line, ParseDiagnostics& diag) {
    LineReader in{tokens, 0, line};
    const std::int64_t type = in.take("rule type");
    switch (type) {
        case 1: {
            NormalRule         r;
            const std::int64_t head = in.take("head");
            if (head < 0) {
                throw ParseError(line, "invalid atom id in head");
            }
            if (head > 0) { r.head = head; }
            Body b = read_body(in);
            in.finish();
            r.neg_body = std::move(b.neg);
            r.pos_body = std::move(b.pos);
            return r;
        }
        case 2: {
            AggregateDef agg;
            agg.kind    = AggregateKind::count;
            agg.head_id = in.take_atom("head");
            Body b; // layout: head #lits #neg bound body...
            const std::int64_t nlits = in.take_count("#literals");
            const std::int64_t nneg  = in.take_count("#negative");
            if (nneg > nlits) {
                throw ParseError(line, "#negative exceeds #literals");
            }
            agg.bound = in.take("bound");
            for (std::int64_t k = 0; k < nneg; ++k) { b.neg.push_back(in.take_atom("body")); }
            for (std::int64_t k = nneg; k < nlits; ++k) { b.pos.push_back(in.take_atom("body")); }
            in.finish();
            agg.elements = body_to_elements(b, nullptr);
            check_aggregate(agg, diag, line);
            return agg;
        }
        case 3:
        case 8: {
            const std::int64_t nheads = in.take_count("#heads");
            if (nheads < 1) {
                throw ParseError(line, "statement without head atoms");
            }
            std::vector<AtomId> heads;
            for (std::int64_t k = 0; k < nheads; ++k) { heads.push_back(in.take_atom("head")); }
            Body b = read_body(in);
            in.finish();
            if (type == 3) {
                return ChoiceRule{std::move(heads), std::move(b.pos), std::move(b.neg)};
            }
            if (nheads == 1) { warn(diag, line, "disjunctive rule with a single head atom"); }
            return DisjunctiveRule{std::move(heads), std::move(b.pos), std::move(b.neg)};
        }
        case 5: {
            AggregateDef agg;
            agg.kind    = AggregateKind::sum;
            agg.head_id = in.take_atom("head");
            agg.bound   = in.take("bound");
            Body               b     = read_body(in);
            const std::int64_t nlits = static_cast<std::int64_t>(b.neg.size() + b.pos.size());
            std::vector<std::int64_t> weights;
            for (std::int64_t k = 0; k < nlits; ++k) { weights.push_back(in.take("weight")); }
            in.finish();
            agg.elements = body_to_elements(b, &weights);
            check_aggregate(agg, diag, line);
            return agg;
        }
        default: {
            warn(diag, line, "unknown rule type " + std::to_string(type) + ", kept verbatim");
            return OpaqueStatement{tokens};
        }
    }
}

} // namespace

std::pair<AspProgram, ParseDiagnostics> parse_smodels(const std::string& text, bool strict) {
    AspProgram       program;
    ParseDiagnostics diag;
    diag.strict = strict;

    std::istringstream in(text);
    std::string        raw;
    int                line         = 0;
    int                section      = 0; // 0 rules, 1 symbols, 2 done
    std::size_t        consumed     = 0; // bytes handled so far, for the verbatim tail
    std::set<AtomId>   agg_heads;

    while (section < 2 && std::getline(in, raw)) {
        ++line;
        consumed += raw.size() + 1;
        std::istringstream        ls(raw);
        std::vector<std::string>  fields;
        std::string               f;
        while (ls >> f) { fields.push_back(f); }
        if (fields.empty()) { continue; }

        if (section == 0) {
            if (fields.size() == 1 && fields[0] == "0") {
                section = 1;
                continue;
            }
            std::vector<std::int64_t> tokens;
            tokens.reserve(fields.size());
            for (const auto& t : fields) { tokens.push_back(parse_int(t, line)); }
            Statement stmt = decode_statement(tokens, line, diag);
            if (const auto* agg = std::get_if<AggregateDef>(&stmt)) {
                if (!agg_heads.insert(agg->head_id).second) {
                    warn(diag, line, "duplicate aggregate identifier " + std::to_string(agg->head_id));
                }
            }
            program.statements.push_back(std::move(stmt));
        }
        else {
            if (fields.size() == 1 && fields[0] == "0") {
                section = 2;
                continue;
            }
            const std::int64_t id = parse_int(fields[0], line);
            if (id < 1) {
                throw ParseError(line, "invalid atom id in symbol table");
            }
            const std::size_t name_at = raw.find(fields[0]) + fields[0].size();
            std::string       name    = raw.substr(std::min(name_at + 1, raw.size()));
            if (fields.size() < 2) {
                warn(diag, line, "symbol table entry without a name");
            }
            if (!program.symbol_table.emplace(id, std::move(name)).second) {
                warn(diag, line, "duplicate symbol table entry for atom " + std::to_string(id));
            }
        }
    }
    if (section == 0) {
        warn(diag, line, "missing rule section terminator");
    }
    else if (section == 1) {
        warn(diag, line, "missing symbol table terminator");
    }
    if (section == 2 && consumed < text.size()) {
        program.compute_sections = text.substr(consumed);
    }
    return {std::move(program), std::move(diag)};
}

namespace {

struct TokenEncoder {
    std::vector<std::int64_t> out;

    void body(const std::vector<AtomId>& posb, const std::vector<AtomId>& negb) {
        out.push_back(static_cast<std::int64_t>(posb.size() + negb.size()));
        out.push_back(static_cast<std::int64_t>(negb.size()));
        out.insert(out.end(), negb.begin(), negb.end());
        out.insert(out.end(), posb.begin(), posb.end());
    }

    void operator()(const NormalRule& r) {
        out.push_back(1);
        out.push_back(r.head.value_or(0));
        body(r.pos_body, r.neg_body);
    }
    void operator()(const DisjunctiveRule& r) {
        out.push_back(8);
        out.push_back(static_cast<std::int64_t>(r.heads.size()));
        out.insert(out.end(), r.heads.begin(), r.heads.end());
        body(r.pos_body, r.neg_body);
    }
    void operator()(const ChoiceRule& r) {
        out.push_back(3);
        out.push_back(static_cast<std::int64_t>(r.heads.size()));
        out.insert(out.end(), r.heads.begin(), r.heads.end());
        body(r.pos_body, r.neg_body);
    }
    void operator()(const AggregateDef& agg) {
        std::vector<std::int64_t> neg_ids, pos_ids, neg_w, pos_w;
        for (const auto& e : agg.elements) {
            (e.literal.negative ? neg_ids : pos_ids).push_back(e.literal.atom);
            (e.literal.negative ? neg_w : pos_w).push_back(e.weight);
        }
        const auto nlits = static_cast<std::int64_t>(agg.elements.size());
        const auto nneg  = static_cast<std::int64_t>(neg_ids.size());
        if (agg.kind == AggregateKind::count) {
            out.push_back(2);
            out.push_back(agg.head_id);
            out.push_back(nlits);
            out.push_back(nneg);
            out.push_back(agg.bound);
            out.insert(out.end(), neg_ids.begin(), neg_ids.end());
            out.insert(out.end(), pos_ids.begin(), pos_ids.end());
        }
        else {
            out.push_back(5);
            out.push_back(agg.head_id);
            out.push_back(agg.bound);
            out.push_back(nlits);
            out.push_back(nneg);
            out.insert(out.end(), neg_ids.begin(), neg_ids.end());
            out.insert(out.end(), pos_ids.begin(), pos_ids.end());
            out.insert(out.end(), neg_w.begin(), neg_w.end());
            out.insert(out.end(), pos_w.begin(), pos_w.end());
        }
    }
    void operator()(const OpaqueStatement& s) { out.insert(out.end(), s.tokens.begin(), s.tokens.end()); }
};

} // namespace

std::vector<std::int64_t> statement_tokens(const Statement& stmt) {
    TokenEncoder enc;
    std::visit(enc, stmt);
    return std::move(enc.out);
}

std::vector<std::int64_t> rule_section_tokens(const AspProgram& program) {
    std::vector<std::int64_t> out;
    for (const auto& stmt : program.statements) {
        const auto t = statement_tokens(stmt);
        out.insert(out.end(), t.begin(), t.end());
    }
    return out;
}

std::string write_smodels(const AspProgram& program) {
    std::string out;
    for (const auto& stmt : program.statements) {
        const auto tokens = statement_tokens(stmt);
        for (std::size_t k = 0; k < tokens.size(); ++k) {
            if (k > 0) { out += ' '; }
            out += std::to_string(tokens[k]);
        }
        out += '\n';
    }
    out += "0\n";
    for (const auto& [id, name] : program.symbol_table) {
        out += std::to_string(id);
        out += ' ';
        out += name;
        out += '\n';
    }
    out += "0\n";
    out += program.compute_sections;
    return out;
}

} // namespace ordo
