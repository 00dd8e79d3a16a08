#include "svir/text.hpp"

#include <cctype>

namespace svir {

namespace {

std::string rational_text(const Rational& q) {
    return q.get_str();
}

// magnitude of an imaginary part, with the trailing i: "i", "2i", "1/2i"
std::string imag_mag_text(const Rational& mag) {
    if (mag == 1) return "i";
    return rational_text(mag) + "i";
}

} // namespace

std::string scalar_text(const Scalar& s) {
    if (s.is_zero()) return "0";
    if (s.im == 0) return rational_text(s.re);
    std::string im_part = (s.im < 0 ? "-" : "") + imag_mag_text(abs(s.im));
    if (s.re == 0) return im_part;
    if (s.im < 0) return rational_text(s.re) + "-" + imag_mag_text(abs(s.im));
    return rational_text(s.re) + "+" + imag_mag_text(s.im);
}

std::string degree2_text(std::int64_t d2) {
    if (d2 % 2 == 0) return std::to_string(d2 / 2);
    return std::to_string(d2) + "/2";
}

std::string element_text(const Element& e) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [sym, c] : e.terms) {
        bool negative_real = c.is_real() && c.re < 0;
        Scalar mag = negative_real ? -c : c;
        std::string coeff;
        if (!mag.is_one()) {
            if (mag.is_real() && mag.re.get_den() == 1)
                coeff = rational_text(mag.re) + "*";
            else
                coeff = "(" + scalar_text(mag) + ")*";
        }
        if (first) {
            if (negative_real) out += "-";
            first = false;
        } else {
            out += negative_real ? " - " : " + ";
        }
        out += coeff + sym.str();
    }
    return out;
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw parse_error(std::string("expected '") + c + "'", pos);
    }
    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos); }
};

mpz_class parse_integer(Cursor& cur, bool allow_sign = true) {
    cur.skip_ws();
    std::size_t start = cur.pos;
    std::string digits;
    if (allow_sign && cur.pos < cur.text.size() &&
        (cur.text[cur.pos] == '-' || cur.text[cur.pos] == '+')) {
        if (cur.text[cur.pos] == '-') digits += '-';
        ++cur.pos;
    }
    bool any = false;
    while (cur.pos < cur.text.size() && std::isdigit(static_cast<unsigned char>(cur.text[cur.pos]))) {
        digits += cur.text[cur.pos++];
        any = true;
    }
    if (!any) {
        cur.pos = start;
        cur.fail("expected an integer");
    }
    return mpz_class(digits);
}

Rational parse_rational(Cursor& cur, bool allow_sign = true) {
    mpz_class num = parse_integer(cur, allow_sign);
    // a '/' introduces a denominator unless it is the "/2)" of a G index --
    // callers that parse indices use parse_integer directly
    if (cur.pos < cur.text.size() && cur.text[cur.pos] == '/') {
        std::size_t save = cur.pos;
        ++cur.pos;
        if (cur.pos < cur.text.size() && std::isdigit(static_cast<unsigned char>(cur.text[cur.pos]))) {
            mpz_class den = parse_integer(cur, false);
            if (den == 0) cur.fail("zero denominator");
            return make_rational(num, den);
        }
        cur.pos = save;
    }
    return make_rational(num, mpz_class(1));
}

// complex body without enclosing parentheses:
//   [sign] ( "i" | rational ["i" | sign (rational)? "i"] )
Scalar parse_complex_body(Cursor& cur) {
    cur.skip_ws();
    if (cur.peek() == 'i') {
        ++cur.pos;
        return Scalar::i();
    }
    if (cur.peek() == '-' || cur.peek() == '+') {
        std::size_t save = cur.pos;
        bool neg = cur.text[cur.pos] == '-';
        ++cur.pos;
        cur.skip_ws();
        if (cur.pos < cur.text.size() && cur.text[cur.pos] == 'i') {
            ++cur.pos;
            return Scalar(Rational(0), Rational(neg ? -1 : 1));
        }
        cur.pos = save;
    }

    Rational first = parse_rational(cur);
    cur.skip_ws();
    if (cur.pos < cur.text.size() && cur.text[cur.pos] == 'i') {
        ++cur.pos;
        return Scalar(Rational(0), first);  // pure imaginary "2i"
    }
    if (cur.pos < cur.text.size() && (cur.text[cur.pos] == '+' || cur.text[cur.pos] == '-')) {
        bool neg = cur.text[cur.pos] == '-';
        ++cur.pos;
        cur.skip_ws();
        Rational mag(1);
        if (cur.pos < cur.text.size() && cur.text[cur.pos] != 'i') mag = parse_rational(cur, false);
        cur.skip_ws();
        if (cur.pos >= cur.text.size() || cur.text[cur.pos] != 'i')
            cur.fail("expected 'i' after imaginary part");
        ++cur.pos;
        return Scalar(first, neg ? -mag : mag);
    }
    return Scalar(first);
}

} // namespace

Scalar parse_scalar(const std::string& text) {
    Cursor cur{text};
    Scalar s;
    if (cur.peek() == '(') {
        cur.expect('(');
        s = parse_complex_body(cur);
        cur.expect(')');
    } else {
        s = parse_complex_body(cur);
    }
    if (!cur.done()) cur.fail("trailing input after scalar");
    return s;
}

namespace {

BasisSymbol parse_generator(Cursor& cur, const AlgebraConfig& cfg) {
    cur.skip_ws();
    char k = cur.peek();
    if (k == 'C') {
        ++cur.pos;
        BasisSymbol s = BasisSymbol::C();
        validate_symbol(cfg, s);
        return s;
    }
    if (k != 'L' && k != 'G') cur.fail("expected generator L(...), G(...) or C");
    ++cur.pos;
    cur.expect('(');
    mpz_class idx = parse_integer(cur);
    if (!idx.fits_slong_p()) cur.fail("index out of range");
    std::int64_t n = idx.get_si();
    bool halved = false;
    cur.skip_ws();
    if (cur.pos + 1 < cur.text.size() && cur.text[cur.pos] == '/' && cur.text[cur.pos + 1] == '2') {
        cur.pos += 2;
        halved = true;
    }
    cur.expect(')');
    BasisSymbol s;
    if (k == 'L') {
        if (halved) cur.fail("L indices are integers");
        s = BasisSymbol::L(n);
    } else {
        s = BasisSymbol{Kind::G, halved ? n : 2 * n};
        if (halved && n % 2 == 0) cur.fail("halved index must be odd (write G(" +
                                           std::to_string(n / 2) + ") instead)");
    }
    validate_symbol(cfg, s);  // config_mismatch on grid violations
    return s;
}

} // namespace

Element parse_element(const AlgebraConfig& cfg, const std::string& text) {
    Cursor cur{text};
    Element out;
    bool negate = false;
    if (cur.peek() == '-') {
        cur.expect('-');
        negate = true;
    }
    while (true) {
        // one term: [coeff '*'] gen | coeff
        Scalar coeff(1);
        bool have_coeff = false;
        cur.skip_ws();
        char c = cur.peek();
        if (c == '(') {
            cur.expect('(');
            coeff = parse_complex_body(cur);
            cur.expect(')');
            have_coeff = true;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == 'i') {
            coeff = parse_complex_body(cur);
            have_coeff = true;
        }
        if (have_coeff && cur.eat('*')) {
            BasisSymbol sym = parse_generator(cur, cfg);
            out.add_term(sym, negate ? -coeff : coeff);
        } else if (have_coeff) {
            if (!coeff.is_zero())
                cur.fail("a bare coefficient term must be 0 (elements have no constant term)");
        } else {
            BasisSymbol sym = parse_generator(cur, cfg);
            out.add_term(sym, negate ? Scalar(-1) : Scalar(1));
        }
        cur.skip_ws();
        if (cur.done()) break;
        if (cur.eat('+'))
            negate = false;
        else if (cur.eat('-'))
            negate = true;
        else
            cur.fail("expected '+', '-' or end of element");
    }
    return out;
}

} // namespace svir
