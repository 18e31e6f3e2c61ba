#include "qmcoh/witt.hpp"

#include "qmcoh/errors.hpp"

#include <cctype>

namespace qmcoh {

namespace {

void require_same_base(const WittElement& x, const WittElement& y) {
    if (!x.base.same_table(y.base) || x.factors != y.factors) throw InputError("Witt elements over different groups");
}

ClassCoordinates reduce(const std::vector<Integer>& factors, std::vector<Integer> coords) {
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = floor_mod(coords[i], factors[i]);
    return {std::move(coords)};
}

void add_to_word(FreeWord& w, const std::string& sym, const Integer& k) {
    if (k == 0) return;
    Integer& e = w[sym];
    e += k;
    if (e == 0) w.erase(sym);
}

class Parser {
public:
    Parser(const std::string& text, const CohomologyGroup& h4) : s_(text), h4_(h4) {}

    WittElement parse() {
        WittElement x = product();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_, 1) + "'");
        return x;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("ledger expression: " + what + " at position " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    std::string word() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size()) {
            const char c = s_[pos_];
            if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',' || c == '*') break;
            ++pos_;
        }
        return s_.substr(start, pos_ - start);
    }
    Integer integer() {
        const std::string w = word();
        if (w.empty()) fail("expected an integer");
        try {
            return parse_integer(w);
        } catch (const std::exception&) {
            fail("malformed integer '" + w + "'");
        }
    }

    WittElement product() {
        WittElement x = term();
        while (accept('*')) x = compose(x, term());
        return x;
    }

    WittElement term() {
        if (accept('(')) {
            WittElement x = product();
            expect(')');
            return x;
        }
        const std::string name = word();
        if (name == "S") {
            expect('(');
            const std::string sym = word();
            if (sym.empty()) fail("expected a symbol");
            expect(')');
            return section_S(FreeWord{{sym, 1}}, h4_);
        }
        if (name == "H4") {
            expect('(');
            std::vector<Integer> coords;
            if (!accept(')')) {
                do {
                    coords.push_back(integer());
                } while (accept(','));
                expect(')');
            }
            return h4_element(h4_, std::move(coords));
        }
        if (name == "inv") {
            expect('(');
            WittElement x = product();
            expect(')');
            return inverse(x);
        }
        if (name == "pow") {
            expect('(');
            WittElement x = product();
            expect(',');
            const Integer n = integer();
            expect(')');
            return power(x, n);
        }
        if (name.empty()) fail("expected a term");
        fail("unknown function '" + name + "'");
    }

    std::string s_;
    const CohomologyGroup& h4_;
    std::size_t pos_ = 0;
};

} // namespace

WittElement witt_identity(const CohomologyGroup& h4) {
    if (h4.degree != 4) throw InputError("Witt ledger needs H^4");
    return {h4.group, h4.invariant_factors, {}, {std::vector<Integer>(h4.invariant_factors.size(), 0)}};
}

WittElement h4_element(const CohomologyGroup& h4, std::vector<Integer> coords) {
    WittElement x = witt_identity(h4);
    x.h4_part = normalize_coordinates(h4, std::move(coords));
    return x;
}

WittElement compose(const WittElement& x, const WittElement& y) {
    require_same_base(x, y);
    WittElement out = x;
    for (const auto& [sym, k] : y.w_part) add_to_word(out.w_part, sym, k);
    for (std::size_t i = 0; i < out.factors.size(); ++i) out.h4_part.coords[i] += y.h4_part.coords[i];
    out.h4_part = reduce(out.factors, std::move(out.h4_part.coords));
    return out;
}

WittElement inverse(const WittElement& x) {
    WittElement out = x;
    for (auto& [sym, k] : out.w_part) k = -k;
    for (auto& c : out.h4_part.coords) c = -c;
    out.h4_part = reduce(out.factors, std::move(out.h4_part.coords));
    return out;
}

WittElement power(const WittElement& x, const Integer& n) {
    if (n < 1) throw InputError("power needs an exponent of at least 1");
    WittElement out = x;
    for (auto& [sym, k] : out.w_part) k *= n;
    for (auto& c : out.h4_part.coords) c *= n;
    out.h4_part = reduce(out.factors, std::move(out.h4_part.coords));
    return out;
}

FreeWord phi(const WittElement& x) { return x.w_part; }

WittElement section_S(const FreeWord& w, const CohomologyGroup& h4) {
    WittElement out = witt_identity(h4);
    for (const auto& [sym, k] : w) add_to_word(out.w_part, sym, k);
    return out;
}

ClassCoordinates eta(const WittElement& x) { return x.h4_part; }

bool admits_minimal_extension(const WittElement& x) { return x.h4_part.is_zero(); }

bool is_identity(const WittElement& x) { return x.w_part.empty() && x.h4_part.is_zero(); }

WittElement defect_to_witt(const PentagonDefect& d, const CohomologyGroup& h4) {
    if (!d.base.same_table(h4.group)) throw InputError("defect and H^4 live on different groups");
    WittElement out = witt_identity(h4);
    out.h4_part = class_coordinates(d.cocycle, h4);
    return out;
}

WittElement evaluate_witt_expression(const std::string& expr, const CohomologyGroup& h4) {
    return Parser(expr, h4).parse();
}

std::string format_word(const FreeWord& w) {
    if (w.empty()) return "1";
    std::string out;
    for (const auto& [sym, k] : w) {
        if (!out.empty()) out += " * ";
        out += sym;
        if (k != 1) out += "^" + k.str();
    }
    return out;
}

std::string format_coordinates(const ClassCoordinates& c) {
    std::string out = "(";
    for (std::size_t i = 0; i < c.coords.size(); ++i) {
        if (i) out += ",";
        out += c.coords[i].str();
    }
    return out + ")";
}

} // namespace qmcoh
