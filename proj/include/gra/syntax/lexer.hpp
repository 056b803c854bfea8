#pragma once

#include <cstddef>
#include <string>

namespace gra {

// Identifier usable as a relation symbol: [A-Za-z_][A-Za-z0-9_]*, excluding
// built-in operator spellings, quantifier keywords and variable names vN.
bool valid_symbol_name(const std::string& name);

// Character-level scanner shared by the term and formula parsers.
class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    std::size_t pos() {
        skip_space();
        return pos_;
    }
    bool at_end() { return pos() >= text_.size(); }
    char peek() { return at_end() ? '\0' : text_[pos_]; }
    bool peek_is(const char* s);

    bool accept(char c);
    bool accept(const char* s);
    void expect(char c);
    void expect_end();

    std::string identifier();
    std::size_t number();

    [[noreturn]] void fail(std::size_t at, const std::string& what) const;

private:
    void skip_space();

    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace gra
