#include "gra/syntax/lexer.hpp"

#include <cctype>
#include <cstring>

#include "gra/error.hpp"
#include "gra/relalg/registry.hpp"

namespace gra {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

bool valid_symbol_name(const std::string& name) {
    if (name.empty() || !ident_start(name[0])) return false;
    for (char c : name) {
        if (!ident_char(c)) return false;
    }
    if (OperatorRegistry::is_builtin(name)) return false;
    if (name.size() >= 2 && name[0] == 'v') {
        bool digits = true;
        for (std::size_t i = 1; i < name.size(); ++i) digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
        if (digits) return false;
    }
    return true;
}

void Lexer::skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

bool Lexer::peek_is(const char* s) {
    skip_space();
    return text_.compare(pos_, std::strlen(s), s) == 0;
}

bool Lexer::accept(char c) {
    if (peek() == c) {
        ++pos_;
        return true;
    }
    return false;
}

bool Lexer::accept(const char* s) {
    if (peek_is(s)) {
        pos_ += std::strlen(s);
        return true;
    }
    return false;
}

void Lexer::expect(char c) {
    if (!accept(c)) {
        fail(pos(), std::string("expected '") + c + "'");
    }
}

void Lexer::expect_end() {
    if (!at_end()) fail(pos(), "unexpected trailing input");
}

std::string Lexer::identifier() {
    const std::size_t start = pos();
    if (start >= text_.size() || !ident_start(text_[start])) fail(start, "expected an identifier");
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
}

std::size_t Lexer::number() {
    const std::size_t start = pos();
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
        if (value > 1000000) fail(start, "number too large");
        ++pos_;
    }
    if (pos_ == start) fail(start, "expected a number");
    return value;
}

void Lexer::fail(std::size_t at, const std::string& what) const {
    throw Error(ErrorKind::syntax, "syntax error at column " + std::to_string(at + 1) + ": " + what);
}

}  // namespace gra
