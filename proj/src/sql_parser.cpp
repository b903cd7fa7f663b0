#include "tindb/sqlfe.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_map>

#include "tindb/wkt.hpp"

namespace tindb::sqlfe {

const char* sqlstate_for(SqlErrorKind kind) {
    switch (kind) {
        case SqlErrorKind::Syntax: return "42601";
        case SqlErrorKind::UnknownFunction: return "42883";
        case SqlErrorKind::UnknownColumn: return "42703";
        case SqlErrorKind::UnknownTable: return "42P01";
        case SqlErrorKind::TypeError: return "42804";
        case SqlErrorKind::InvalidGeometry: return "22023";
        case SqlErrorKind::Unsupported: return "0A000";
    }
    return "XX000";
}

const char* spatial_function_name(SpatialFunction fn) {
    switch (fn) {
        case SpatialFunction::Volume: return "st_volume";
        case SpatialFunction::Distance3D: return "st_3ddistance";
        case SpatialFunction::Intersects3D: return "st_3dintersects";
    }
    return "?";
}

namespace {

enum class Tok {
    End, Ident, Number, String,
    Comma, LParen, RParen, Semi, Star,
    Lt, Le, Gt, Ge, Eq, Ne,
};

struct Token {
    Tok type = Tok::End;
    std::string text;   // as written (string tokens: unescaped content)
    std::string lower;  // case-folded identifier text
    std::size_t pos = 0;  // 1-based byte offset
};

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void fail(SqlErrorKind kind, std::string message, std::size_t pos) {
    throw SqlError(kind, std::move(message), pos);
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    const std::size_t n = text.size();

    auto push = [&](Tok type, std::size_t start, std::string value) {
        Token t;
        t.type = type;
        t.pos = start + 1;
        if (type == Tok::Ident) t.lower = to_lower(value);
        t.text = std::move(value);
        tokens.push_back(std::move(t));
    };

    while (i < n) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            push(Tok::Ident, start, text.substr(i, j - i));
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            std::size_t j = i;
            while (j < n && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.'))
                ++j;
            if (j < n && (text[j] == 'e' || text[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < n && (text[k] == '+' || text[k] == '-')) ++k;
                if (k < n && std::isdigit(static_cast<unsigned char>(text[k]))) {
                    ++k;
                    while (k < n && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                    j = k;
                }
            }
            push(Tok::Number, start, text.substr(i, j - i));
            i = j;
            continue;
        }
        if (c == '\'') {
            std::string value;
            std::size_t j = i + 1;
            for (;;) {
                if (j >= n) fail(SqlErrorKind::Syntax, "unterminated string literal", start + 1);
                if (text[j] == '\'') {
                    if (j + 1 < n && text[j + 1] == '\'') {
                        value.push_back('\'');
                        j += 2;
                        continue;
                    }
                    ++j;
                    break;
                }
                value.push_back(text[j]);
                ++j;
            }
            push(Tok::String, start, std::move(value));
            i = j;
            continue;
        }
        switch (c) {
            case ',': push(Tok::Comma, start, ","); ++i; continue;
            case '(': push(Tok::LParen, start, "("); ++i; continue;
            case ')': push(Tok::RParen, start, ")"); ++i; continue;
            case ';': push(Tok::Semi, start, ";"); ++i; continue;
            case '*': push(Tok::Star, start, "*"); ++i; continue;
            case '=': push(Tok::Eq, start, "="); ++i; continue;
            case '<':
                if (i + 1 < n && text[i + 1] == '=') { push(Tok::Le, start, "<="); i += 2; }
                else if (i + 1 < n && text[i + 1] == '>') { push(Tok::Ne, start, "<>"); i += 2; }
                else { push(Tok::Lt, start, "<"); ++i; }
                continue;
            case '>':
                if (i + 1 < n && text[i + 1] == '=') { push(Tok::Ge, start, ">="); i += 2; }
                else { push(Tok::Gt, start, ">"); ++i; }
                continue;
            case '!':
                if (i + 1 < n && text[i + 1] == '=') { push(Tok::Ne, start, "!="); i += 2; continue; }
                fail(SqlErrorKind::Syntax, "unexpected character '!'", start + 1);
            case '-':
                // Only unary minus (before a number) occurs in this grammar.
                push(Tok::Number, start, "-");
                ++i;
                continue;
            default:
                fail(SqlErrorKind::Syntax,
                     std::string("unexpected character '") + c + "'", start + 1);
        }
    }
    Token end;
    end.pos = n + 1;
    tokens.push_back(end);
    return tokens;
}

bool is_unsupported_verb(const std::string& w) {
    static const char* verbs[] = {"insert", "update", "delete", "create", "drop",
                                  "alter",  "copy",   "set",    "show",   "explain",
                                  "with",   "declare", "fetch", "vacuum", "truncate"};
    for (const char* v : verbs)
        if (w == v) return true;
    return false;
}

bool is_join_word(const std::string& w) {
    return w == "join" || w == "inner" || w == "left" || w == "right" || w == "full" ||
           w == "cross" || w == "natural";
}

bool is_reserved_word(const std::string& w) {
    static const char* words[] = {"select", "from",  "where", "limit",  "and",   "or",
                                  "not",    "as",    "group", "order",  "having", "union",
                                  "offset", "by"};
    for (const char* r : words)
        if (w == r) return true;
    return is_join_word(w);
}

enum class ValueType { Num, Bool };

class Parser {
  public:
    explicit Parser(const std::string& text) : tokens_(tokenize(text)) {}

    Statement parse() {
        Statement stmt;
        if (peek().type == Tok::End || peek().type == Tok::Semi) {
            stmt.kind = StatementKind::Empty;
            return stmt;
        }
        const Token& first = peek();
        if (first.type == Tok::Ident) {
            if (first.lower == "begin") return transaction_noop(StatementKind::Begin);
            if (first.lower == "commit" || first.lower == "end")
                return transaction_noop(StatementKind::Commit);
            if (first.lower == "rollback" || first.lower == "abort")
                return transaction_noop(StatementKind::Rollback);
            if (is_unsupported_verb(first.lower))
                fail(SqlErrorKind::Unsupported,
                     "unsupported statement: " + upper_word(first), first.pos);
        }
        expect_keyword("select");
        stmt_ = &stmt;

        parse_select_list();
        if (peek_keyword("from")) {
            advance();
            const Token table = expect(Tok::Ident, "table name");
            if (is_join_word(table.lower))
                fail(SqlErrorKind::Syntax, "expected table name", table.pos);
            stmt.source_table = table.lower;
            if (peek().type == Tok::Ident && is_join_word(peek().lower))
                fail(SqlErrorKind::Unsupported, "unsupported construct: JOIN", peek().pos);
            if (peek().type == Tok::Comma)
                fail(SqlErrorKind::Unsupported, "unsupported construct: multiple tables",
                     peek().pos);
            if (peek_keyword("where")) {
                advance();
                stmt.where = parse_or();
                const ValueType t = check_types(*stmt.where);
                if (t != ValueType::Bool)
                    fail(SqlErrorKind::TypeError, "WHERE must be a boolean predicate",
                         stmt.where->position);
            }
            reject_unsupported_clause();
            if (peek_keyword("limit")) {
                advance();
                const Token num = expect(Tok::Number, "LIMIT count");
                std::int64_t v = 0;
                auto [p, ec] =
                    std::from_chars(num.text.data(), num.text.data() + num.text.size(), v);
                if (ec != std::errc() || p != num.text.data() + num.text.size() || v < 0)
                    fail(SqlErrorKind::Syntax, "LIMIT requires a nonnegative integer", num.pos);
                stmt.limit = v;
            }
            reject_unsupported_clause();
        } else {
            // Table-less probes: only literal/version projections make sense.
            for (const auto& p : stmt.projections) {
                if (p.kind != Projection::Kind::Number && p.kind != Projection::Kind::Version)
                    fail(SqlErrorKind::Syntax, "column reference requires a FROM clause",
                         first.pos);
            }
            if (!stmt.calls.empty())
                fail(SqlErrorKind::Unsupported,
                     "spatial functions over literals require a FROM clause", first.pos);
        }

        if (peek().type == Tok::Semi) advance();
        if (peek().type != Tok::End)
            fail(SqlErrorKind::Syntax, "unexpected input after statement end", peek().pos);
        return stmt;
    }

  private:
    std::vector<Token> tokens_;
    std::size_t idx_ = 0;
    Statement* stmt_ = nullptr;
    std::unordered_map<std::string, std::size_t> aliases_;  // alias -> call index

    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t i = std::min(idx_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }
    const Token& advance() { return tokens_[std::min(idx_++, tokens_.size() - 1)]; }

    bool peek_keyword(const char* kw) const {
        return peek().type == Tok::Ident && peek().lower == kw;
    }

    Token expect(Tok type, const char* what) {
        if (peek().type != type)
            fail(SqlErrorKind::Syntax, std::string("expected ") + what, peek().pos);
        return advance();
    }

    void expect_keyword(const char* kw) {
        if (!peek_keyword(kw))
            fail(SqlErrorKind::Syntax, std::string("expected ") + to_upper_str(kw), peek().pos);
        advance();
    }

    static std::string to_upper_str(std::string s) {
        std::transform(s.begin(), s.end(), s.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        return s;
    }

    static std::string upper_word(const Token& t) { return to_upper_str(t.lower); }

    Statement transaction_noop(StatementKind kind) {
        Statement stmt;
        stmt.kind = kind;
        advance();
        // Swallow modifiers like WORK or TRANSACTION.
        while (peek().type == Tok::Ident) advance();
        if (peek().type == Tok::Semi) advance();
        if (peek().type != Tok::End)
            fail(SqlErrorKind::Syntax, "unexpected input after statement end", peek().pos);
        return stmt;
    }

    void reject_unsupported_clause() {
        if (peek().type != Tok::Ident) return;
        const std::string& w = peek().lower;
        if (w == "group") fail(SqlErrorKind::Unsupported, "unsupported construct: GROUP BY", peek().pos);
        if (w == "order") fail(SqlErrorKind::Unsupported, "unsupported construct: ORDER BY", peek().pos);
        if (w == "having") fail(SqlErrorKind::Unsupported, "unsupported construct: HAVING", peek().pos);
        if (w == "union") fail(SqlErrorKind::Unsupported, "unsupported construct: UNION", peek().pos);
        if (w == "offset") fail(SqlErrorKind::Unsupported, "unsupported construct: OFFSET", peek().pos);
        if (is_join_word(w)) fail(SqlErrorKind::Unsupported, "unsupported construct: JOIN", peek().pos);
    }

    static std::optional<SpatialFunction> spatial_function_from(const std::string& lower) {
        if (lower == "st_volume") return SpatialFunction::Volume;
        if (lower == "st_3ddistance") return SpatialFunction::Distance3D;
        if (lower == "st_3dintersects") return SpatialFunction::Intersects3D;
        return std::nullopt;
    }

    // ---- select list ----

    void parse_select_list() {
        for (;;) {
            parse_select_item();
            if (peek().type == Tok::Comma) {
                advance();
                continue;
            }
            break;
        }
    }

    void parse_select_item() {
        const Token& t = peek();
        Projection proj;
        if (t.type == Tok::Star) {
            advance();
            Projection idp;
            idp.kind = Projection::Kind::Id;
            idp.label = "id";
            stmt_->projections.push_back(std::move(idp));
            Projection geomp;
            geomp.kind = Projection::Kind::GeomColumn;
            stmt_->projections.push_back(std::move(geomp));
            return;  // `*` takes no alias
        }
        if (t.type == Tok::Number) {
            const Token num = advance();
            std::string text = num.text;
            if (text == "-") {  // unary minus token carries just the sign
                const Token mag = expect(Tok::Number, "number");
                text += mag.text;
            }
            proj.kind = Projection::Kind::Number;
            proj.number_text = text;
            proj.number_is_integer = text.find_first_of(".eE") == std::string::npos;
            proj.label = "?column?";
        } else if (t.type == Tok::Ident) {
            if (t.lower == "select")
                fail(SqlErrorKind::Unsupported, "unsupported construct: subquery", t.pos);
            if (is_reserved_word(t.lower))
                fail(SqlErrorKind::Syntax, "expected a projection", t.pos);
            if (t.lower == "version" && peek(1).type == Tok::LParen) {
                advance();
                advance();
                expect(Tok::RParen, ")");
                proj.kind = Projection::Kind::Version;
                proj.label = "version";
            } else if (auto fn = spatial_function_from(t.lower)) {
                const std::size_t call = parse_spatial_call(*fn);
                proj.kind = Projection::Kind::Call;
                proj.call_index = call;
                proj.label = spatial_function_name(stmt_->calls[call].function);
            } else if (t.lower == "st_geomfromtext") {
                fail(SqlErrorKind::Unsupported,
                     "ST_GeomFromText is only supported as a spatial function argument", t.pos);
            } else if (peek(1).type == Tok::LParen) {
                fail(SqlErrorKind::UnknownFunction,
                     "unknown function " + t.lower + "(...)", t.pos);
            } else if (t.lower == "id") {
                advance();
                proj.kind = Projection::Kind::Id;
                proj.label = "id";
            } else {
                advance();
                proj.kind = Projection::Kind::GeomColumn;
                proj.column_name = t.lower;
                proj.label = t.lower;
                stmt_->referenced_columns.push_back(t.lower);
            }
        } else {
            fail(SqlErrorKind::Syntax, "expected a projection", t.pos);
        }

        if (peek_keyword("as")) {
            advance();
            const Token alias = expect(Tok::Ident, "alias name");
            proj.label = alias.lower;
            if (proj.kind == Projection::Kind::Call) aliases_[alias.lower] = proj.call_index;
        }
        stmt_->projections.push_back(std::move(proj));
    }

    // ---- spatial calls ----

    std::size_t parse_spatial_call(SpatialFunction fn) {
        const Token name = advance();
        expect(Tok::LParen, "(");
        SpatialCall call;
        call.function = fn;
        call.args.push_back(parse_spatial_arg());
        const std::size_t arity = fn == SpatialFunction::Volume ? 1 : 2;
        if (arity == 2) {
            if (peek().type != Tok::Comma) {
                fail(SqlErrorKind::Unsupported,
                     std::string(spatial_function_name(fn)) + " takes exactly two arguments",
                     name.pos);
            }
            advance();
            call.args.push_back(parse_spatial_arg());
        }
        if (peek().type == Tok::Comma) {
            fail(SqlErrorKind::Unsupported,
                 std::string(spatial_function_name(fn)) + " takes exactly " +
                     (arity == 1 ? "one argument" : "two arguments"),
                 name.pos);
        }
        expect(Tok::RParen, ")");

        std::size_t column_args = 0;
        for (std::size_t i = 0; i < call.args.size(); ++i) {
            if (call.args[i].is_column) {
                call.column_arg_index = i;
                ++column_args;
            }
        }
        if (column_args != 1) {
            fail(SqlErrorKind::Unsupported,
                 std::string(spatial_function_name(fn)) +
                     " requires exactly one geometry-column argument" +
                     (arity == 2 ? " (the other must be an ST_GeomFromText literal)" : ""),
                 name.pos);
        }

        // Distance and intersection are symmetric, so the key is built with
        // the column slot first regardless of written argument order.
        call.dedup_key = spatial_function_name(fn);
        call.dedup_key += "(<geom>";
        for (const auto& arg : call.args) {
            if (arg.is_column) continue;
            call.dedup_key += ';';
            call.dedup_key += arg.literal_text;
        }
        call.dedup_key += ')';

        for (std::size_t i = 0; i < stmt_->calls.size(); ++i) {
            if (stmt_->calls[i].dedup_key == call.dedup_key) return i;
        }
        stmt_->calls.push_back(std::move(call));
        return stmt_->calls.size() - 1;
    }

    SpatialArg parse_spatial_arg() {
        const Token& t = peek();
        if (t.type != Tok::Ident)
            fail(SqlErrorKind::Syntax, "expected a column name or ST_GeomFromText(...)", t.pos);
        if (t.lower == "st_geomfromtext") {
            advance();
            expect(Tok::LParen, "(");
            const Token wkt = expect(Tok::String, "WKT string literal");
            expect(Tok::RParen, ")");
            SpatialArg arg;
            try {
                arg.literal = parse_wkt(wkt.text);
            } catch (const WktParseError& ex) {
                fail(SqlErrorKind::InvalidGeometry,
                     std::string("invalid geometry: ") + ex.what(), wkt.pos);
            }
            arg.literal_text = serialize_wkt(*arg.literal);
            return arg;
        }
        if (spatial_function_from(t.lower))
            fail(SqlErrorKind::Unsupported, "nested spatial calls are not supported", t.pos);
        if (peek(1).type == Tok::LParen)
            fail(SqlErrorKind::UnknownFunction, "unknown function " + t.lower + "(...)", t.pos);
        advance();
        SpatialArg arg;
        arg.is_column = true;
        arg.column_name = t.lower;
        stmt_->referenced_columns.push_back(t.lower);
        return arg;
    }

    // ---- predicates ----

    std::unique_ptr<Expr> make_node(Expr::Kind kind, std::size_t pos) {
        auto e = std::make_unique<Expr>();
        e->kind = kind;
        e->position = pos;
        return e;
    }

    std::unique_ptr<Expr> parse_or() {
        auto lhs = parse_and();
        while (peek_keyword("or")) {
            const std::size_t pos = peek().pos;
            advance();
            auto node = make_node(Expr::Kind::Or, pos);
            node->lhs = std::move(lhs);
            node->rhs = parse_and();
            lhs = std::move(node);
        }
        return lhs;
    }

    std::unique_ptr<Expr> parse_and() {
        auto lhs = parse_not();
        while (peek_keyword("and")) {
            const std::size_t pos = peek().pos;
            advance();
            auto node = make_node(Expr::Kind::And, pos);
            node->lhs = std::move(lhs);
            node->rhs = parse_not();
            lhs = std::move(node);
        }
        return lhs;
    }

    std::unique_ptr<Expr> parse_not() {
        if (peek_keyword("not")) {
            const std::size_t pos = peek().pos;
            advance();
            auto node = make_node(Expr::Kind::Not, pos);
            node->lhs = parse_not();
            return node;
        }
        return parse_comparison();
    }

    std::unique_ptr<Expr> parse_comparison() {
        auto lhs = parse_atom();
        CompareOp op;
        switch (peek().type) {
            case Tok::Lt: op = CompareOp::Lt; break;
            case Tok::Le: op = CompareOp::Le; break;
            case Tok::Gt: op = CompareOp::Gt; break;
            case Tok::Ge: op = CompareOp::Ge; break;
            case Tok::Eq: op = CompareOp::Eq; break;
            case Tok::Ne: op = CompareOp::Ne; break;
            default: return lhs;
        }
        const std::size_t pos = peek().pos;
        advance();
        auto node = make_node(Expr::Kind::Compare, pos);
        node->op = op;
        node->lhs = std::move(lhs);
        node->rhs = parse_atom();
        return node;
    }

    std::unique_ptr<Expr> parse_atom() {
        const Token& t = peek();
        if (t.type == Tok::LParen) {
            advance();
            auto inner = parse_or();
            expect(Tok::RParen, ")");
            return inner;
        }
        if (t.type == Tok::Number) {
            const Token num = advance();
            std::string text = num.text;
            if (text == "-") {
                const Token mag = expect(Tok::Number, "number");
                text += mag.text;
            }
            auto node = make_node(Expr::Kind::Number, num.pos);
            node->number = std::stod(text);
            return node;
        }
        if (t.type == Tok::Ident) {
            if (t.lower == "select")
                fail(SqlErrorKind::Unsupported, "unsupported construct: subquery", t.pos);
            if (t.lower == "true" || t.lower == "false") {
                advance();
                auto node = make_node(Expr::Kind::Bool, t.pos);
                node->boolean = (t.lower == "true");
                return node;
            }
            if (t.lower == "id") {
                advance();
                return make_node(Expr::Kind::IdRef, t.pos);
            }
            if (auto fn = spatial_function_from(t.lower)) {
                const std::size_t pos = t.pos;
                const std::size_t call = parse_spatial_call(*fn);
                auto node = make_node(Expr::Kind::CallRef, pos);
                node->call_index = call;
                return node;
            }
            if (t.lower == "st_geomfromtext")
                fail(SqlErrorKind::TypeError,
                     "geometry literals cannot appear directly in predicates", t.pos);
            if (peek(1).type == Tok::LParen)
                fail(SqlErrorKind::UnknownFunction, "unknown function " + t.lower + "(...)",
                     t.pos);
            auto alias = aliases_.find(t.lower);
            if (alias != aliases_.end()) {
                advance();
                auto node = make_node(Expr::Kind::CallRef, t.pos);
                node->call_index = alias->second;
                return node;
            }
            fail(SqlErrorKind::UnknownColumn,
                 "column \"" + t.lower +
                     "\" is not usable in predicates (use id, spatial-call aliases, or literals)",
                 t.pos);
        }
        fail(SqlErrorKind::Syntax, "expected a predicate operand", t.pos);
    }

    ValueType check_types(const Expr& e) {
        switch (e.kind) {
            case Expr::Kind::Number: return ValueType::Num;
            case Expr::Kind::Bool: return ValueType::Bool;
            case Expr::Kind::IdRef: return ValueType::Num;
            case Expr::Kind::CallRef:
                return stmt_->calls[e.call_index].function == SpatialFunction::Intersects3D
                           ? ValueType::Bool
                           : ValueType::Num;
            case Expr::Kind::Compare: {
                const ValueType lt = check_types(*e.lhs);
                const ValueType rt = check_types(*e.rhs);
                if (lt != rt)
                    fail(SqlErrorKind::TypeError, "cannot compare boolean with number",
                         e.position);
                if (lt == ValueType::Bool && e.op != CompareOp::Eq && e.op != CompareOp::Ne)
                    fail(SqlErrorKind::TypeError,
                         "booleans support only = and <> comparisons", e.position);
                return ValueType::Bool;
            }
            case Expr::Kind::And:
            case Expr::Kind::Or: {
                if (check_types(*e.lhs) != ValueType::Bool ||
                    check_types(*e.rhs) != ValueType::Bool)
                    fail(SqlErrorKind::TypeError, "AND/OR require boolean operands", e.position);
                return ValueType::Bool;
            }
            case Expr::Kind::Not: {
                if (check_types(*e.lhs) != ValueType::Bool)
                    fail(SqlErrorKind::TypeError, "NOT requires a boolean operand", e.position);
                return ValueType::Bool;
            }
        }
        return ValueType::Num;
    }
};

}  // namespace

Statement parse_sql(const std::string& text) {
    Parser parser(text);
    return parser.parse();
}

std::vector<std::string> split_statements(const std::string& text) {
    std::vector<std::string> out;
    std::string current;
    bool in_single = false;
    bool in_double = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_single) {
            current.push_back(c);
            if (c == '\'') {
                if (i + 1 < text.size() && text[i + 1] == '\'') {
                    current.push_back(text[++i]);
                } else {
                    in_single = false;
                }
            }
            continue;
        }
        if (in_double) {
            current.push_back(c);
            if (c == '"') in_double = false;
            continue;
        }
        if (c == '\'') {
            in_single = true;
            current.push_back(c);
            continue;
        }
        if (c == '"') {
            in_double = true;
            current.push_back(c);
            continue;
        }
        if (c == ';') {
            out.push_back(current);
            current.clear();
            continue;
        }
        current.push_back(c);
    }
    out.push_back(current);

    std::vector<std::string> filtered;
    for (auto& s : out) {
        const bool blank = std::all_of(s.begin(), s.end(), [](unsigned char c) {
            return std::isspace(c) != 0;
        });
        if (!blank) filtered.push_back(std::move(s));
    }
    return filtered;
}

}  // namespace tindb::sqlfe
