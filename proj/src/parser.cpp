#include "flagcalc/parser.hpp"

#include <cctype>
#include <string>

#include "flagcalc/errors.hpp"

namespace flagcalc {

namespace {

enum class Tok {
    Number, GraphLit, FlagLit,
    LParen, RParen, Plus, Minus, Star,
    Geq, Leq, Eq, Lt, Gt,
    Not, And, Or, Implies,
    True, False,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    size_t pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view input) : in_(input) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        while (true) {
            skip_space();
            size_t start = pos_;
            if (pos_ >= in_.size()) {
                tokens.push_back({Tok::End, "", start});
                return tokens;
            }
            char c = in_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                tokens.push_back({Tok::Number, lex_rational(), start});
            } else if (c == 'g' && peek_at(pos_ + 1) == ':') {
                tokens.push_back({Tok::GraphLit, lex_graph_like(), start});
            } else if (c == 'f' && peek_at(pos_ + 1) == ':') {
                tokens.push_back({Tok::FlagLit, lex_flag(), start});
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                std::string word = lex_word();
                if (word == "true")
                    tokens.push_back({Tok::True, word, start});
                else if (word == "false")
                    tokens.push_back({Tok::False, word, start});
                else
                    throw ParseError("unknown word \"" + word + "\"", start);
            } else {
                tokens.push_back(lex_symbol());
            }
        }
    }

private:
    void skip_space() {
        while (pos_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[pos_]))) ++pos_;
    }

    char peek_at(size_t i) const { return i < in_.size() ? in_[i] : '\0'; }

    std::string lex_digits() {
        size_t start = pos_;
        while (pos_ < in_.size() && std::isdigit(static_cast<unsigned char>(in_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected digits", start);
        return std::string(in_.substr(start, pos_ - start));
    }

    std::string lex_rational() {
        std::string text = lex_digits();
        if (peek_at(pos_) == '/' && std::isdigit(static_cast<unsigned char>(peek_at(pos_ + 1)))) {
            ++pos_;
            text += '/';
            text += lex_digits();
        }
        return text;
    }

    // <prefix>:<digits>:{...}
    std::string lex_graph_like() {
        size_t start = pos_;
        pos_ += 2;  // prefix and ':'
        lex_digits();
        if (peek_at(pos_) != ':') throw ParseError("expected ':' in literal", pos_);
        ++pos_;
        if (peek_at(pos_) != '{') throw ParseError("expected '{' in literal", pos_);
        size_t close = in_.find('}', pos_);
        if (close == std::string_view::npos) throw ParseError("unterminated literal", start);
        pos_ = close + 1;
        return std::string(in_.substr(start, pos_ - start));
    }

    std::string lex_flag() {
        size_t start = pos_;
        lex_graph_like();
        if (peek_at(pos_) != '|') throw ParseError("expected '|' in flag literal", pos_);
        ++pos_;
        if (peek_at(pos_) != 't' || peek_at(pos_ + 1) != ':')
            throw ParseError("expected type part in flag literal", pos_);
        lex_graph_like();
        if (in_.substr(pos_, 7) != "|theta:")
            throw ParseError("expected |theta: in flag literal", pos_);
        pos_ += 7;
        lex_digits();
        return std::string(in_.substr(start, pos_ - start));
    }

    std::string lex_word() {
        size_t start = pos_;
        while (pos_ < in_.size() && std::isalpha(static_cast<unsigned char>(in_[pos_]))) ++pos_;
        return std::string(in_.substr(start, pos_ - start));
    }

    Token lex_symbol() {
        size_t start = pos_;
        auto two = in_.substr(pos_, 2);
        if (two == ">=") { pos_ += 2; return {Tok::Geq, ">=", start}; }
        if (two == "<=") { pos_ += 2; return {Tok::Leq, "<=", start}; }
        if (two == "=>") { pos_ += 2; return {Tok::Implies, "=>", start}; }
        char c = in_[pos_++];
        switch (c) {
            case '(': return {Tok::LParen, "(", start};
            case ')': return {Tok::RParen, ")", start};
            case '+': return {Tok::Plus, "+", start};
            case '-': return {Tok::Minus, "-", start};
            case '*': return {Tok::Star, "*", start};
            case '=': return {Tok::Eq, "=", start};
            case '<': return {Tok::Lt, "<", start};
            case '>': return {Tok::Gt, ">", start};
            case '!': return {Tok::Not, "!", start};
            case '&': return {Tok::And, "&", start};
            case '|': return {Tok::Or, "|", start};
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }

    std::string_view in_;
    size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

    ExprPtr parse_full_expr() {
        ExprPtr e = parse_add();
        expect(Tok::End, "end of input");
        return e;
    }

    AssertionPtr parse_full_assertion() {
        AssertionPtr a = parse_implies();
        expect(Tok::End, "end of input");
        return a;
    }

    ParsedTarget parse_full_target() {
        ParsedTarget target;
        std::vector<ParsedComparison> comparisons{parse_comparison()};
        while (peek().kind == Tok::And) {
            advance();
            comparisons.push_back(parse_comparison());
        }
        if (peek().kind == Tok::Implies) {
            advance();
            target.assumptions = std::move(comparisons);
            target.consequent = parse_comparison();
        } else {
            if (comparisons.size() != 1)
                throw ParseError("expected '=>' after conjunction of assumptions", peek().pos);
            target.consequent = comparisons.front();
        }
        expect(Tok::End, "end of input");
        return target;
    }

private:
    const Token& peek(size_t ahead = 0) const {
        size_t i = std::min(index_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }

    const Token& advance() { return tokens_[index_ < tokens_.size() - 1 ? index_++ : index_]; }

    void expect(Tok kind, const std::string& what) {
        if (peek().kind != kind)
            throw ParseError("expected " + what, peek().pos);
        if (kind != Tok::End) advance();
    }

    // expr := scaleterm (('+'|'-') scaleterm)*
    ExprPtr parse_add() {
        ExprPtr e = parse_scaleterm();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = advance().kind == Tok::Minus;
            ExprPtr rhs = parse_scaleterm();
            e = minus ? DensityExpr::subtract(std::move(e), std::move(rhs))
                      : DensityExpr::add(std::move(e), std::move(rhs));
        }
        return e;
    }

    // scaleterm := rational '*' scaleterm | '-' scaleterm | mulchain
    // Multiplication binds tighter than scaling, scaling tighter than sums.
    ExprPtr parse_scaleterm() {
        if (peek().kind == Tok::Minus) {
            advance();
            return DensityExpr::negate(parse_scaleterm());
        }
        if (peek().kind == Tok::Number && peek(1).kind == Tok::Star) {
            Rational r = parse_rational_token(advance());
            advance();  // '*'
            return DensityExpr::scale(std::move(r), parse_scaleterm());
        }
        return parse_mul();
    }

    // mulchain := primary ('*' primary)*
    ExprPtr parse_mul() {
        ExprPtr e = parse_primary();
        while (peek().kind == Tok::Star) {
            advance();
            e = DensityExpr::mul(std::move(e), parse_primary());
        }
        return e;
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number: {
                Rational r = parse_rational_token(advance());
                if (r == Rational(0)) return DensityExpr::zero();
                if (r == Rational(1)) return DensityExpr::one();
                return DensityExpr::constant(std::move(r));
            }
            case Tok::GraphLit: {
                const Token& tok = advance();
                return DensityExpr::graph_atom(parse_literal<Graph>(tok));
            }
            case Tok::FlagLit: {
                const Token& tok = advance();
                return DensityExpr::flag_atom(parse_literal<Flag>(tok));
            }
            case Tok::LParen: {
                advance();
                ExprPtr e = parse_add();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Minus: {
                advance();
                return DensityExpr::negate(parse_scaleterm());
            }
            default:
                throw ParseError("expected an expression", t.pos);
        }
    }

    template <typename T>
    T parse_literal(const Token& tok) {
        try {
            return T::parse(tok.text);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), tok.pos);
        }
    }

    static Rational parse_rational_token(const Token& tok) {
        return Rational::parse(tok.text);
    }

    // assertion := or ('=>' assertion)?   (implication binds loosest)
    AssertionPtr parse_implies() {
        AssertionPtr a = parse_or();
        if (peek().kind == Tok::Implies) {
            advance();
            return Assertion::implication(std::move(a), parse_implies());
        }
        return a;
    }

    AssertionPtr parse_or() {
        AssertionPtr a = parse_and();
        while (peek().kind == Tok::Or) {
            advance();
            a = Assertion::disjunction(std::move(a), parse_and());
        }
        return a;
    }

    AssertionPtr parse_and() {
        AssertionPtr a = parse_not();
        while (peek().kind == Tok::And) {
            advance();
            a = Assertion::conjunction(std::move(a), parse_not());
        }
        return a;
    }

    AssertionPtr parse_not() {
        if (peek().kind == Tok::Not) {
            advance();
            return Assertion::negation(parse_not());
        }
        return parse_assertion_primary();
    }

    AssertionPtr parse_assertion_primary() {
        const Token& t = peek();
        if (t.kind == Tok::True) {
            advance();
            return Assertion::verum();
        }
        if (t.kind == Tok::False) {
            advance();
            return Assertion::falsum();
        }
        if (t.kind == Tok::LParen && paren_wraps_assertion()) {
            advance();
            AssertionPtr a = parse_implies();
            expect(Tok::RParen, "')'");
            return a;
        }
        ParsedComparison cmp = parse_comparison();
        return build_comparison(cmp);
    }

    // A '(' opens a parenthesized assertion exactly when the parenthesized
    // region contains a token that cannot occur inside an expression.
    bool paren_wraps_assertion() const {
        int depth = 0;
        for (size_t i = index_; i < tokens_.size(); ++i) {
            Tok k = tokens_[i].kind;
            if (k == Tok::LParen) ++depth;
            if (k == Tok::RParen && --depth == 0) return false;
            if (depth >= 1)
                switch (k) {
                    case Tok::Geq: case Tok::Leq: case Tok::Eq: case Tok::Lt: case Tok::Gt:
                    case Tok::Not: case Tok::And: case Tok::Or: case Tok::Implies:
                    case Tok::True: case Tok::False:
                        return true;
                    default:
                        break;
                }
        }
        return false;
    }

    ParsedComparison parse_comparison() {
        ParsedComparison cmp;
        cmp.lhs = parse_add();
        switch (peek().kind) {
            case Tok::Geq: cmp.op = ParsedComparison::Op::Geq; break;
            case Tok::Leq: cmp.op = ParsedComparison::Op::Leq; break;
            case Tok::Eq:  cmp.op = ParsedComparison::Op::Eq; break;
            case Tok::Lt:  cmp.op = ParsedComparison::Op::Lt; break;
            case Tok::Gt:  cmp.op = ParsedComparison::Op::Gt; break;
            default:
                throw ParseError("expected a comparison operator", peek().pos);
        }
        advance();
        cmp.rhs = parse_add();
        return cmp;
    }

    static AssertionPtr build_comparison(const ParsedComparison& cmp) {
        switch (cmp.op) {
            case ParsedComparison::Op::Geq: return Assertion::geq(cmp.lhs, cmp.rhs);
            case ParsedComparison::Op::Leq: return Assertion::leq(cmp.lhs, cmp.rhs);
            case ParsedComparison::Op::Eq:  return Assertion::equals(cmp.lhs, cmp.rhs);
            case ParsedComparison::Op::Lt:  return Assertion::lt(cmp.lhs, cmp.rhs);
            case ParsedComparison::Op::Gt:  return Assertion::gt(cmp.lhs, cmp.rhs);
        }
        throw ParseError("bad comparison", 0);
    }

    std::vector<Token> tokens_;
    size_t index_ = 0;
};

}  // namespace

ExprPtr parse_expr(std::string_view text) {
    return Parser(text).parse_full_expr();
}

AssertionPtr parse_assertion(std::string_view text) {
    return Parser(text).parse_full_assertion();
}

ParsedTarget parse_target_shape(std::string_view text) {
    return Parser(text).parse_full_target();
}

}  // namespace flagcalc
