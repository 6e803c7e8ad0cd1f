#include <cctype>
#include <charconv>

#include "grothsym/errors.hpp"
#include "grothsym/polyring.hpp"

namespace grothsym {

std::string to_string(const Monomial &m) {
    std::string s;
    for (auto &[v, e] : m.factors()) {
        if (!s.empty())
            s += '*';
        s += to_string(v);
        if (e != 1) {
            s += '^';
            s += std::to_string(e);
        }
    }
    return s;
}

std::string lp_canonical_string(const LaurentPoly &p) {
    if (p.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (auto &t : p.terms()) {
        const bool negative = t.coefficient < 0;
        Integer mag = abs(t.coefficient);
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        if (t.monomial.is_unit()) {
            out += mag.get_str();
        } else {
            if (mag != 1) {
                out += mag.get_str();
                out += '*';
            }
            out += to_string(t.monomial);
        }
    }
    return out;
}

namespace {

class Parser {
  public:
    explicit Parser(std::string_view s) : s_(s) {}

    LaurentPoly parse() {
        skip_ws();
        if (at_end())
            fail("empty polynomial");
        std::vector<Term> terms;
        bool negative = false;
        if (peek() == '-') {
            negative = true;
            ++pos_;
            skip_ws();
        } else if (peek() == '+') {
            ++pos_;
            skip_ws();
        }
        for (;;) {
            Term t = term();
            if (negative)
                t.coefficient = -t.coefficient;
            terms.push_back(std::move(t));
            skip_ws();
            if (at_end())
                break;
            char c = peek();
            if (c != '+' && c != '-')
                fail("expected '+' or '-'");
            negative = c == '-';
            ++pos_;
            skip_ws();
        }
        return LaurentPoly::from_terms(std::move(terms));
    }

  private:
    Term term() {
        Integer coeff = 1;
        std::vector<Monomial::Factor> factors;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = integer_literal();
            skip_ws();
            if (at_end() || peek() != '*')
                return {Monomial(), coeff};
            ++pos_;
            skip_ws();
        }
        for (;;) {
            factors.push_back(factor());
            skip_ws();
            if (at_end() || peek() != '*')
                break;
            ++pos_;
            skip_ws();
        }
        return {Monomial(std::move(factors)), coeff};
    }

    Monomial::Factor factor() {
        auto fam = at_end() ? std::nullopt : family_from_char(peek());
        if (!fam)
            fail("expected a variable family (A, L, X, Y, y)");
        ++pos_;
        expect('[');
        int i = small_int();
        expect(',');
        int k = small_int();
        expect(']');
        int e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
            ++pos_;
            e = small_int();
            if (e == 0)
                fail("zero exponent");
        }
        try {
            return {VarId(*fam, i, k), e};
        } catch (const InvalidArgument &err) {
            fail(err.what());
        }
    }

    Integer integer_literal() {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    int small_int() {
        skip_ws();
        std::size_t start = pos_;
        if (!at_end() && (peek() == '-' || peek() == '+'))
            ++pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        int v = 0;
        const char *b = s_.data() + start + ((start < s_.size() && s_[start] == '+') ? 1 : 0);
        auto [ptr, ec] = std::from_chars(b, s_.data() + pos_, v);
        if (ec != std::errc() || ptr != s_.data() + pos_ || b == s_.data() + pos_)
            fail("expected an integer");
        skip_ws();
        return v;
    }

    void expect(char c) {
        skip_ws();
        if (at_end() || peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
            ++pos_;
    }

    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }

    [[noreturn]] void fail(const std::string &what) const {
        throw ParseError("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + what +
                         " in \"" + std::string(s_) + "\"");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

LaurentPoly lp_parse(std::string_view text) { return Parser(text).parse(); }

} // namespace grothsym
