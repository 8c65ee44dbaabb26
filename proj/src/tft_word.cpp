#include <cctype>
#include <sstream>

#include "hft/error.hpp"
#include "hft/tft.hpp"

namespace hft {

namespace {

struct Arity {
    int in, out, labels_min, labels_max;
    bool bside_ok;
};

const std::map<std::string, Arity>& arities() {
    static const std::map<std::string, Arity> table = {
        {"m", {2, 1, 2, 2, true}},   {"cm", {1, 2, 2, 2, true}},  {"f1", {1, 2, 2, 2, false}},
        {"f2", {2, 1, 2, 2, false}}, {"f3", {1, 2, 2, 2, false}}, {"f4", {2, 1, 2, 2, false}},
        {"sx", {2, 2, 1, 1, true}},  {"sy", {2, 2, 1, 1, true}},  {"cup", {2, 0, 1, 1, true}},
        {"cap", {0, 2, 1, 1, true}}, {"tw", {1, 1, 2, 2, true}},  {"b", {2, 2, 0, 0, false}},
        {"id", {1, 1, 0, 1, true}},  {"one", {0, 1, 0, 0, true}},
    };
    return table;
}

class Lexer {
public:
    Lexer(const std::string& s, const GroupTable& g) : s_(s), g_(g) {}

    [[noreturn]] void fail(const std::string& kind, const std::string& msg, std::size_t line, std::size_t col) const {
        throw Error(kind, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
    }
    [[noreturn]] void fail(const std::string& msg) const { fail("Syntax", msg, line_, col_); }

    void skip_space() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }
    bool done() {
        skip_space();
        return pos_ >= s_.size();
    }
    bool peek(const std::string& tok) {
        skip_space();
        return s_.compare(pos_, tok.size(), tok) == 0;
    }
    bool accept(const std::string& tok) {
        if (!peek(tok)) return false;
        for (std::size_t i = 0; i < tok.size(); ++i) advance();
        return true;
    }
    bool accept_tensor() {
        skip_space();
        if (accept("\xE2\x8A\x97")) return true;  // U+2297
        if (pos_ < s_.size() && s_[pos_] == 'x' &&
            (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
            advance();
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_space();
        std::string out;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            out += s_[pos_];
            advance();
        }
        return out;
    }
    // Raw text up to (not including) any of the stop characters.
    std::string until(const std::string& stops) {
        std::string out;
        while (pos_ < s_.size() && stops.find(s_[pos_]) == std::string::npos) {
            out += s_[pos_];
            advance();
        }
        return out;
    }
    int element(std::string text) {
        auto trim = [](std::string& t) {
            while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
            std::size_t i = 0;
            while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
            t = t.substr(i);
        };
        trim(text);
        bool invert = false;
        if (text.size() > 3 && text.ends_with("^-1")) {
            invert = true;
            text = text.substr(0, text.size() - 3);
            trim(text);
        }
        try {
            int g = g_.lookup(text);
            return invert ? g_.inv(g) : g;
        } catch (const Error&) {
            fail("unknown group element '" + text + "'");
        }
    }
    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    void advance() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(s_[pos_]) & 0xC0) != 0x80) {
            ++col_;
        }
        ++pos_;
    }
    const std::string& s_;
    const GroupTable& g_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

Symbol parse_symbol(Lexer& lx) {
    Symbol s;
    lx.skip_space();
    s.line = lx.line();
    s.col = lx.col();
    std::string name = lx.ident();
    if (name == "B" && lx.accept(":")) {
        s.bside = true;
        name = lx.ident();
    }
    if (name.empty()) lx.fail("expected a generator");
    auto it = arities().find(name);
    if (it == arities().end()) lx.fail("Syntax", "unknown generator '" + name + "'", s.line, s.col);
    s.name = name;
    if (s.bside && !it->second.bside_ok) lx.fail("Syntax", "generator '" + name + "' has no B-side form", s.line, s.col);
    if (name == "b" && lx.accept("(")) {
        std::string body = lx.until(")");
        if (!lx.accept(")")) lx.fail("unterminated transposition");
        std::istringstream in(body);
        int i = 0, j = 0;
        if (!(in >> i >> j) || j != i + 1 || i < 1) lx.fail("Syntax", "transposition must be b(i i+1)", s.line, s.col);
        s.swap_at = i - 1;
        return s;
    }
    if (lx.accept("[")) {
        std::string body = lx.until("]");
        if (!lx.accept("]")) lx.fail("unterminated label list");
        std::size_t start = 0;
        while (true) {
            std::size_t comma = body.find(',', start);
            s.labels.push_back(lx.element(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    const int nl = static_cast<int>(s.labels.size());
    if (nl < it->second.labels_min || nl > it->second.labels_max)
        lx.fail("Syntax", "generator '" + name + "' takes " + std::to_string(it->second.labels_min) + " labels", s.line,
                s.col);
    return s;
}

StrandKind kind_of(Lexer& lx, const std::string& k) {
    if (k == "A") return StrandKind::A;
    if (k == "B" || k == "C") return StrandKind::C;
    if (k == "M") return StrandKind::M;
    if (k == "N") return StrandKind::N;
    lx.fail("unknown strand kind '" + k + "'");
}

const char* kind_name(StrandKind k) {
    switch (k) {
        case StrandKind::A: return "A";
        case StrandKind::C: return "C";
        case StrandKind::M: return "M";
        case StrandKind::N: return "N";
    }
    return "?";
}

bool whole_swap(const Slice& s) { return s.symbols.size() == 1 && s.symbols[0].swap_at >= 0; }

// (in, out) per slice, with whole-slice transpositions resolved from their neighbours.
std::vector<std::pair<std::size_t, std::size_t>> slice_counts(const GeneratorWord& w) {
    const std::size_t n = w.slices.size();
    std::vector<std::pair<std::size_t, std::size_t>> counts(n);
    std::optional<std::size_t> cur;
    if (w.source) cur = w.source->size();
    if (!cur) {
        for (std::size_t k = n; k-- > 0;)
            if (!whole_swap(w.slices[k])) {
                std::size_t in = 0;
                for (const auto& s : w.slices[k].symbols) in += static_cast<std::size_t>(arities().at(s.name).in);
                cur = in;
                break;
            }
        if (!cur) {
            if (n == 0) return counts;
            const auto& s = w.slices.back().symbols[0];
            throw Error("Syntax", "line " + std::to_string(s.line) + ", column " + std::to_string(s.col) +
                                      ": cannot infer the strand count of a word made only of transpositions");
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        const Slice& sl = w.slices[k];
        const Symbol& first = sl.symbols.front();
        auto where = "line " + std::to_string(first.line) + ", column " + std::to_string(first.col) + ": ";
        if (whole_swap(sl)) {
            if (static_cast<std::size_t>(sl.symbols[0].swap_at) + 1 >= *cur)
                throw Error("SignatureMismatch", where + "transposition outside the " + std::to_string(*cur) + " strands");
            counts[k] = {*cur, *cur};
            continue;
        }
        std::size_t in = 0, out = 0;
        for (const auto& s : sl.symbols) {
            if (s.swap_at >= 0) throw Error("Syntax", where + "b(i i+1) must stand alone in its slice");
            in += static_cast<std::size_t>(arities().at(s.name).in);
            out += static_cast<std::size_t>(arities().at(s.name).out);
        }
        if (in != *cur)
            throw Error("SignatureMismatch", where + "slice expects " + std::to_string(in) + " strands but receives " +
                                                 std::to_string(*cur));
        counts[k] = {in, out};
        cur = out;
    }
    return counts;
}

// Rewrites whole-slice transpositions as explicit id/b lists.
GeneratorWord expand_swaps(const GeneratorWord& w) {
    auto counts = slice_counts(w);
    GeneratorWord out = w;
    for (std::size_t k = 0; k < w.slices.size(); ++k) {
        if (!whole_swap(w.slices[k])) continue;
        const int at = w.slices[k].symbols[0].swap_at;
        Slice sl;
        for (std::size_t i = 0; i < counts[k].first;) {
            Symbol s;
            if (static_cast<int>(i) == at) {
                s.name = "b";
                i += 2;
            } else {
                s.name = "id";
                i += 1;
            }
            sl.symbols.push_back(s);
        }
        out.slices[k] = sl;
    }
    return out;
}

Slice id_slice(std::size_t n) {
    Slice s;
    for (std::size_t i = 0; i < n; ++i) s.symbols.push_back(Symbol{"id", false, {}, -1, 1, 1});
    return s;
}

}  // namespace

GeneratorWord parse_word(const std::string& text, const GroupTable& group) {
    Lexer lx(text, group);
    GeneratorWord w;
    if (lx.accept("{")) {
        Signature sig;
        if (!lx.accept("}")) {
            while (true) {
                std::string k = lx.ident();
                if (!lx.accept(":")) lx.fail("expected ':' in signature");
                lx.skip_space();
                std::string label = lx.until(",}");
                sig.push_back({kind_of(lx, k), lx.element(label)});
                if (lx.accept("}")) break;
                if (!lx.accept(",")) lx.fail("expected ',' or '}' in signature");
            }
        }
        w.source = sig;
    }
    if (lx.done()) lx.fail("empty word");
    while (true) {
        Slice sl;
        sl.symbols.push_back(parse_symbol(lx));
        while (lx.accept_tensor()) sl.symbols.push_back(parse_symbol(lx));
        w.slices.push_back(std::move(sl));
        if (lx.done()) break;
        if (!lx.accept(".")) lx.fail("expected '.', 'x' or end of word");
    }
    slice_counts(w);
    return w;
}

std::string print_signature(const Signature& s, const GroupTable& group) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        out += std::string(kind_name(s[i].kind)) + ":" + group.name(s[i].degree);
    }
    return out + "}";
}

std::string print_word(const GeneratorWord& w, const GroupTable& group) {
    std::string out;
    if (w.source) out = print_signature(*w.source, group) + " ";
    for (std::size_t k = 0; k < w.slices.size(); ++k) {
        if (k) out += " . ";
        const auto& syms = w.slices[k].symbols;
        for (std::size_t i = 0; i < syms.size(); ++i) {
            if (i) out += " x ";
            const Symbol& s = syms[i];
            if (s.bside) out += "B:";
            out += s.name;
            if (s.swap_at >= 0) {
                out += "(" + std::to_string(s.swap_at + 1) + " " + std::to_string(s.swap_at + 2) + ")";
            } else if (!s.labels.empty()) {
                out += "[";
                for (std::size_t j = 0; j < s.labels.size(); ++j) out += (j ? "," : "") + group.name(s.labels[j]);
                out += "]";
            }
        }
    }
    return out;
}

std::size_t input_count(const GeneratorWord& w) {
    auto c = slice_counts(w);
    return c.empty() ? (w.source ? w.source->size() : 0) : c.back().first;
}

std::size_t output_count(const GeneratorWord& w) {
    auto c = slice_counts(w);
    return c.empty() ? (w.source ? w.source->size() : 0) : c.front().second;
}

GeneratorWord compose(const GeneratorWord& w1, const GeneratorWord& w2) {
    GeneratorWord out;
    out.source = w2.source;
    out.slices = w1.slices;
    out.slices.insert(out.slices.end(), w2.slices.begin(), w2.slices.end());
    slice_counts(out);
    return out;
}

GeneratorWord tensor_words(const GeneratorWord& w1, const GeneratorWord& w2) {
    GeneratorWord a = expand_swaps(w1), b = expand_swaps(w2);
    auto pad = [](GeneratorWord& w, std::size_t levels) {
        const std::size_t top = output_count(w);
        while (w.slices.size() < levels) w.slices.insert(w.slices.begin(), id_slice(top));
    };
    const std::size_t levels = std::max(a.slices.size(), b.slices.size());
    pad(a, levels);
    pad(b, levels);
    GeneratorWord out;
    if (a.source && b.source) {
        Signature s = *a.source;
        s.insert(s.end(), b.source->begin(), b.source->end());
        out.source = s;
    }
    for (std::size_t k = 0; k < levels; ++k) {
        Slice sl = a.slices[k];
        sl.symbols.insert(sl.symbols.end(), b.slices[k].symbols.begin(), b.slices[k].symbols.end());
        if (!sl.symbols.empty()) out.slices.push_back(std::move(sl));
    }
    slice_counts(out);
    return out;
}

}  // namespace hft
