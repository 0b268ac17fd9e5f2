#include "lamvm/parse.hpp"

#include <cctype>
#include <vector>

namespace lamvm {
namespace {

struct Token {
    enum class Kind { Lambda, Ident, Num, Dot, LParen, RParen, End };
    Kind kind;
    std::string text;
    int value = 0;
    std::size_t pos = 0;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '\\') {
            out.push_back({Token::Kind::Lambda, "\\", 0, i});
            ++i;
        } else if (text.compare(i, 2, "\xce\xbb") == 0) {
            out.push_back({Token::Kind::Lambda, "\xce\xbb", 0, i});
            i += 2;
        } else if (c == '.') {
            out.push_back({Token::Kind::Dot, ".", 0, i});
            ++i;
        } else if (c == '(') {
            out.push_back({Token::Kind::LParen, "(", 0, i});
            ++i;
        } else if (c == ')') {
            out.push_back({Token::Kind::RParen, ")", 0, i});
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            int v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + (text[i] - '0');
                ++i;
            }
            out.push_back({Token::Kind::Num, std::string(text.substr(start, i - start)), v, start});
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' ||
                    text[i] == '\''))
                ++i;
            out.push_back({Token::Kind::Ident, std::string(text.substr(start, i - start)), 0, start});
        } else {
            throw ParseError("unexpected character '" + std::string(1, c) + "'", i);
        }
    }
    out.push_back({Token::Kind::End, "", 0, text.size()});
    return out;
}

class Parser {
  public:
    Parser(std::vector<Token> toks, Notation notation)
        : toks_(std::move(toks)), notation_(notation) {}

    TermPtr parse_all() {
        TermPtr t = parse_term();
        if (cur().kind != Token::Kind::End) throw ParseError("trailing input", cur().pos);
        return t;
    }

  private:
    const Token& cur() const { return toks_[pos_]; }
    void advance() { ++pos_; }

    TermPtr parse_term() {
        if (cur().kind == Token::Kind::Lambda) return parse_lam();
        return parse_app();
    }

    TermPtr parse_lam() {
        advance();  // lambda
        if (notation_ == Notation::Named) {
            if (cur().kind != Token::Kind::Ident)
                throw ParseError("expected binder name after lambda", cur().pos);
            std::string name = cur().text;
            advance();
            if (cur().kind != Token::Kind::Dot)
                throw ParseError("expected '.' after binder", cur().pos);
            advance();
            binders_.push_back(name);
            TermPtr body = parse_term();
            binders_.pop_back();
            return lam(body);
        }
        if (cur().kind == Token::Kind::Ident || cur().kind == Token::Kind::Dot)
            throw ParseError("named binder in de Bruijn notation", cur().pos);
        return lam(parse_term());
    }

    TermPtr parse_app() {
        TermPtr t = parse_atom();
        while (starts_atom(cur().kind)) t = app(t, parse_atom());
        // A lambda may only follow an atom sequence under parentheses.
        if (cur().kind == Token::Kind::Lambda)
            throw ParseError("lambda in argument position needs parentheses", cur().pos);
        return t;
    }

    static bool starts_atom(Token::Kind k) {
        return k == Token::Kind::Num || k == Token::Kind::Ident || k == Token::Kind::LParen;
    }

    TermPtr parse_atom() {
        const Token& t = cur();
        switch (t.kind) {
            case Token::Kind::Num:
                if (notation_ == Notation::Named)
                    throw ParseError("numeral in named notation", t.pos);
                advance();
                return var(t.value);
            case Token::Kind::Ident: {
                if (notation_ == Notation::DeBruijn)
                    throw ParseError("identifier in de Bruijn notation", t.pos);
                for (std::size_t i = binders_.size(); i-- > 0;) {
                    if (binders_[i] == t.text) {
                        advance();
                        return var(static_cast<int>(binders_.size() - 1 - i));
                    }
                }
                throw UnboundNameError(t.text, t.pos);
            }
            case Token::Kind::LParen: {
                advance();
                TermPtr inner = parse_term();
                if (cur().kind != Token::Kind::RParen)
                    throw ParseError("expected ')'", cur().pos);
                advance();
                return inner;
            }
            default:
                throw ParseError("expected a term", t.pos);
        }
    }

    std::vector<Token> toks_;
    Notation notation_;
    std::size_t pos_ = 0;
    std::vector<std::string> binders_;
};

std::string fresh_name(std::size_t depth) {
    static const char* pool[] = {"x", "y", "z", "u", "v", "w", "s", "t"};
    std::string name = pool[depth % 8];
    if (depth >= 8) name += std::to_string(depth / 8);
    return name;
}

void print_rec(const TermPtr& t, Notation notation, std::size_t depth, std::string& out);

void print_atom(const TermPtr& t, Notation notation, std::size_t depth, std::string& out) {
    if (t->kind == Term::Kind::Var) {
        print_rec(t, notation, depth, out);
    } else {
        out += '(';
        print_rec(t, notation, depth, out);
        out += ')';
    }
}

void print_rec(const TermPtr& t, Notation notation, std::size_t depth, std::string& out) {
    switch (t->kind) {
        case Term::Kind::Var:
            if (notation == Notation::DeBruijn) {
                out += std::to_string(t->index);
            } else {
                std::size_t d = depth - 1 - static_cast<std::size_t>(t->index);
                out += fresh_name(d);
            }
            break;
        case Term::Kind::Lam:
            if (notation == Notation::DeBruijn) {
                out += "\xce\xbb ";
            } else {
                out += '\\';
                out += fresh_name(depth);
                out += ". ";
            }
            print_rec(t->body, notation, depth + 1, out);
            break;
        case Term::Kind::App:
            if (t->fun->kind == Term::Kind::Lam) {
                print_atom(t->fun, notation, depth, out);
            } else {
                print_rec(t->fun, notation, depth, out);
            }
            out += ' ';
            print_atom(t->arg, notation, depth, out);
            break;
    }
}

}  // namespace

TermPtr parse(std::string_view text, Notation notation) {
    return Parser(tokenize(text), notation).parse_all();
}

Notation detect_notation(std::string_view text) {
    bool idents = false, nums = false;
    std::size_t ident_pos = 0, num_pos = 0;
    for (const Token& t : tokenize(text)) {
        if (t.kind == Token::Kind::Ident) idents = true, ident_pos = t.pos;
        if (t.kind == Token::Kind::Num) nums = true, num_pos = t.pos;
    }
    if (idents && nums)
        throw ParseError("mixed named and de Bruijn notation", std::max(ident_pos, num_pos));
    return idents ? Notation::Named : Notation::DeBruijn;
}

std::string print(const TermPtr& t, Notation notation) {
    if (notation == Notation::Named && t->open > 0)
        throw std::invalid_argument("cannot print an open term in named notation");
    std::string out;
    print_rec(t, notation, 0, out);
    return out;
}

}  // namespace lamvm
