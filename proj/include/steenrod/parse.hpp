#pragma once

#include <sstream>

#include "steenrod/admissible.hpp"
#include "steenrod/dual.hpp"

namespace steenrod {

class ParseError : public std::runtime_error {
public:
    size_t position;
    ParseError(size_t pos, const std::string& msg)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

namespace detail {

/// Whitespace-skipping cursor over the input.
struct Cursor {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool accept_word(const char* w) {
        skip_ws();
        size_t len = std::strlen(w);
        if (s.compare(pos, len, w) == 0) {
            pos += len;
            return true;
        }
        return false;
    }
    long long integer() {
        skip_ws();
        size_t start = pos;
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
            neg = s[pos] == '-';
            ++pos;
        }
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw ParseError(start, "expected an integer");
        long long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > 1000000) throw ParseError(start, "integer too large");
            ++pos;
        }
        return neg ? -v : v;
    }
    std::vector<int> int_list_paren() {
        if (!accept('(')) throw ParseError(pos, "expected '('");
        std::vector<int> v;
        if (!accept(')')) {
            for (;;) {
                long long x = integer();
                if (x < 0) throw ParseError(pos, "negative entry");
                v.push_back(static_cast<int>(x));
                if (accept(')')) break;
                if (!accept(',')) throw ParseError(pos, "expected ',' or ')'");
            }
        }
        return v;
    }
};

}  // namespace detail

/// One multiplicative factor of the element grammar: Sq(r...), Q(e...),
/// P(r...), a word letter Sq^a / P^i / b, or the literal 1.
inline Element parse_factor(detail::Cursor& cur, const PrimeContext& ctx) {
    size_t start = cur.pos;
    if (cur.accept_word("Sq")) {
        if (ctx.p != 2) throw ParseError(start, "Sq notation requires p = 2");
        if (cur.peek() == '(')
            return Element::single(MilnorMonomial{BSeq{}, Seq(cur.int_list_paren())}, 1, 2);
        cur.accept('^');
        long long i = cur.integer();
        if (i < 0) throw ParseError(start, "negative exponent");
        return milnor_sq(static_cast<int>(i));
    }
    if (cur.accept_word("Q")) {
        if (ctx.p == 2) throw ParseError(start, "Q notation requires odd p");
        return Element::single(MilnorMonomial{BSeq(cur.int_list_paren()), Seq{}}, 1, ctx.p);
    }
    if (cur.accept_word("P")) {
        if (ctx.p == 2) throw ParseError(start, "P notation requires odd p");
        if (cur.peek() == '(')
            return Element::single(MilnorMonomial{BSeq{}, Seq(cur.int_list_paren())}, 1, ctx.p);
        cur.accept('^');
        long long i = cur.integer();
        if (i < 0) throw ParseError(start, "negative exponent");
        return milnor_P(static_cast<int>(i));
    }
    if (cur.accept_word("b")) {
        if (ctx.p == 2) throw ParseError(start, "beta requires odd p");
        return milnor_Q(0);
    }
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
        long long v = cur.integer();
        return milnor_unit().scaled(fp_reduce(v, ctx.p), ctx.p);
    }
    throw ParseError(cur.pos, "expected a monomial, word letter, or integer");
}

/// Element grammar: terms separated by '+', each an optional integer
/// coefficient followed by factors multiplied out left to right.
inline Element parse_element(const std::string& text, const PrimeContext& ctx) {
    detail::Cursor cur{text};
    Element result;
    bool first_term = true;
    for (;;) {
        if (!first_term && !cur.accept('+')) break;
        first_term = false;
        int coeff = 1;
        cur.skip_ws();
        // coefficient prefix: an integer followed by more factors, or a bare term
        size_t save = cur.pos;
        if (cur.peek() == '-' || std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            long long v = cur.integer();
            cur.skip_ws();
            if (cur.done() || cur.peek() == '+') {
                result = result.plus(milnor_unit().scaled(fp_reduce(v, ctx.p), ctx.p), ctx.p);
                if (cur.done()) break;
                continue;
            }
            coeff = fp_reduce(v, ctx.p);
            (void)save;
        }
        Element term = milnor_unit();
        bool has_factor = false;
        while (!cur.done() && cur.peek() != '+') {
            term = milnor_product(term, parse_factor(cur, ctx), ctx);
            has_factor = true;
        }
        if (!has_factor) throw ParseError(cur.pos, "empty term");
        result = result.plus(term.scaled(coeff, ctx.p), ctx.p);
        if (cur.done()) break;
    }
    if (!cur.done()) throw ParseError(cur.pos, "trailing input");
    return result;
}

/// Word grammar: a sequence of letters b / P^i (odd p) or Sq^a (p = 2).
inline Word parse_word(const std::string& text, const PrimeContext& ctx) {
    detail::Cursor cur{text};
    if (ctx.p == 2) {
        std::vector<int> ops;
        while (!cur.done()) {
            size_t start = cur.pos;
            if (!cur.accept_word("Sq")) throw ParseError(start, "expected Sq");
            cur.accept('^');
            long long i = cur.integer();
            if (i < 0) throw ParseError(start, "negative exponent");
            ops.push_back(static_cast<int>(i));
        }
        return Word::sq(std::move(ops));
    }
    std::vector<int> eps{0}, ops;
    while (!cur.done()) {
        size_t start = cur.pos;
        if (cur.accept_word("b")) {
            if (eps.back() == 0) {
                eps.back() = 1;
            } else {
                ops.push_back(0);
                eps.push_back(1);
            }
            continue;
        }
        if (cur.accept_word("P")) {
            cur.accept('^');
            long long i = cur.integer();
            if (i < 0) throw ParseError(start, "negative exponent");
            ops.push_back(static_cast<int>(i));
            eps.push_back(0);
            continue;
        }
        throw ParseError(start, "expected b or P");
    }
    return Word::odd(std::move(eps), std::move(ops));
}

// ---------------------------------------------------------------------------
// Text rendering (the inverse direction).
// ---------------------------------------------------------------------------

inline std::string mono_to_text(const MilnorMonomial& m, int p) {
    if (m.is_unit()) return "1";
    std::ostringstream os;
    if (p == 2) {
        os << "Sq(";
        for (int t = 1; t <= m.r.size(); ++t) os << (t > 1 ? "," : "") << m.r.at(t);
        os << ")";
        return os.str();
    }
    bool space = false;
    if (!m.e.empty()) {
        os << "Q(";
        for (int s = 0; s < m.e.size(); ++s) os << (s ? "," : "") << m.e.at(s);
        os << ")";
        space = true;
    }
    if (!m.r.empty()) {
        if (space) os << " ";
        os << "P(";
        for (int t = 1; t <= m.r.size(); ++t) os << (t > 1 ? "," : "") << m.r.at(t);
        os << ")";
    }
    return os.str();
}

inline std::string dual_mono_to_text(const DualMonomial& m, int p) {
    if (m.is_unit()) return "1";
    std::ostringstream os;
    if (p == 2) {
        os << "zeta(";
        for (int t = 1; t <= m.r.size(); ++t) os << (t > 1 ? "," : "") << m.r.at(t);
        os << ")";
        return os.str();
    }
    bool space = false;
    if (!m.e.empty()) {
        os << "tau(";
        for (int s = 0; s < m.e.size(); ++s) os << (s ? "," : "") << m.e.at(s);
        os << ")";
        space = true;
    }
    if (!m.r.empty()) {
        if (space) os << " ";
        os << "xi(";
        for (int t = 1; t <= m.r.size(); ++t) os << (t > 1 ? "," : "") << m.r.at(t);
        os << ")";
    }
    return os.str();
}

inline std::string word_to_text(const Word& w, int p) {
    if (w.is_unit()) return "1";
    std::ostringstream os;
    bool space = false;
    auto emit = [&](const std::string& tok) {
        if (space) os << " ";
        os << tok;
        space = true;
    };
    if (p == 2) {
        for (int s = 1; s <= w.length(); ++s) emit("Sq^" + std::to_string(w.op(s)));
        return os.str();
    }
    if (w.eps(0)) emit("b");
    for (int s = 1; s <= w.length(); ++s) {
        emit("P^" + std::to_string(w.op(s)));
        if (w.eps(s)) emit("b");
    }
    return os.str();
}

/// Canonical text of an element: terms sorted by (degree, E, R), coefficients
/// of 1 omitted.
inline std::string element_to_text(const Element& x, const PrimeContext& ctx) {
    if (x.is_zero()) return "0";
    std::vector<std::pair<const MilnorMonomial*, int>> terms;
    for (const auto& [m, c] : x.terms()) terms.push_back({&m, c});
    std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
        return a.first->degree(ctx.p) < b.first->degree(ctx.p);
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms) {
        if (!first) os << " + ";
        first = false;
        if (c != 1) os << c << " ";
        os << mono_to_text(*m, ctx.p);
    }
    return os.str();
}

inline std::string admissible_to_text(const AdmissibleElement& a, const PrimeContext& ctx) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : a.terms) {
        if (!first) os << " + ";
        first = false;
        if (c != 1) os << c << " ";
        os << word_to_text(w, ctx.p);
    }
    return os.str();
}

}  // namespace steenrod
