#include "iwalg/iwm.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "iwalg/error.hpp"

namespace iwalg {

namespace {

constexpr const char* kHeisenberg = "congruence-heisenberg";

class Cursor {
public:
    Cursor(std::string_view text, int line) : s_(text), line_(line) {}

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    int column() const { return static_cast<int>(pos_) + 1; }
    int line() const { return line_; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, column(), what); }
    [[noreturn]] void fail_at(const std::string& what, int col) const { throw ParseError(line_, col, what); }
    [[noreturn]] void invalid(const std::string& what, int col) const {
        throw Error(ErrorKind::validation, "line " + std::to_string(line_) + ", column " + std::to_string(col) + ": " + what);
    }

    std::string word() {
        skip_ws();
        std::size_t b = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                    s_[pos_] == '-'))
            ++pos_;
        return std::string(s_.substr(b, pos_ - b));
    }
    std::string ident() {
        skip_ws();
        std::size_t b = pos_;
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            ++pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        }
        if (b == pos_) fail("expected a name");
        return std::string(s_.substr(b, pos_ - b));
    }
    mpz_class integer() {
        skip_ws();
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (b == pos_) fail("expected an integer");
        return mpz_class(std::string(s_.substr(b, pos_ - b)));
    }
    long small_integer(long limit) {
        int col = (skip_ws(), column());
        mpz_class v = integer();
        if (v > limit) invalid("value " + v.get_str() + " is too large", col);
        return v.get_si();
    }
    /// key=<integer>
    long keyed(const char* key, long limit) {
        std::string k = word();
        if (k != key) fail(std::string("expected '") + key + "='");
        expect('=');
        return small_integer(limit);
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
    int line_;
};

class PolyParser {
public:
    PolyParser(Cursor& c, long p, int vars) : c_(c), p_(p), vars_(vars) {}

    Poly expr() {
        Poly out;
        bool neg = c_.accept('-');
        out = term();
        if (neg) out = -out;
        for (;;) {
            if (c_.accept('+')) {
                out = out + term();
            } else if (c_.accept('-')) {
                out = out - term();
            } else {
                return out;
            }
        }
    }

private:
    Poly term() {
        Poly out = factor();
        while (c_.accept('*')) out = out * factor();
        return out;
    }
    Poly factor() {
        Poly base = atom();
        if (!c_.accept('^')) return base;
        long e = c_.small_integer(1000);
        Poly out = Poly::constant(1);
        for (long k = 0; k < e; ++k) out = out * base;
        return out;
    }
    Poly atom() {
        char ch = c_.peek();
        if (ch == '(') {
            c_.expect('(');
            Poly e = expr();
            c_.expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) return Poly::constant(c_.integer());
        if (ch == 'p' || ch == 'b') {
            int col = c_.column();
            std::string w = c_.ident();
            if (w == "p") return Poly::constant(p_);
            if (w.size() > 1 && w[0] == 'b' && w.find_first_not_of("0123456789", 1) == std::string::npos) {
                long i = std::stol(w.substr(1));
                if (i < 1 || i > vars_) c_.invalid("variable " + w + " outside b1..b" + std::to_string(vars_), col);
                return Poly::monomial(Monomial::var(static_cast<std::size_t>(i - 1)));
            }
            c_.invalid("unknown token '" + w + "'", col);
        }
        c_.fail("expected one of: integer, p, b<i>, '('");
    }

    Cursor& c_;
    long p_;
    int vars_;
};

}  // namespace

Ring IwmDocument::make_ring(Precision prec, int max_escalations) const {
    if (preset == kHeisenberg) return RingContext::congruence_heisenberg(p, prec, max_escalations);
    if (mode == RingMode::rules) return RingContext::with_rules(p, vars, rules, prec, max_escalations);
    return RingContext::abelian(p, vars, prec, max_escalations);
}

Presentation IwmDocument::presentation(const IwmModule& m, const Ring& ring, Precision prec) const {
    return Presentation::make(ring, prec, m.rank, m.rels, m.name);
}

const IwmModule& IwmDocument::module(const std::string& name) const {
    for (const auto& m : modules)
        if (m.name == name) return m;
    throw Error(ErrorKind::validation, "no module named '" + name + "'");
}

IwmDocument parse_iwm(std::string_view text) {
    IwmDocument doc;
    bool have_ring = false;
    std::set<std::string> names;
    int lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        Cursor c(line, lineno);
        if (c.done()) continue;
        int kw_col = c.column();
        std::string kw = c.word();
        if (kw.empty()) c.fail("expected one of: ring, prec, rule, module, rel");
        if (!have_ring && kw != "ring") c.fail("expected 'ring' header first");

        if (kw == "ring") {
            if (have_ring) c.invalid("duplicate ring header", kw_col);
            have_ring = true;
            int pcol = (c.skip_ws(), c.column());
            doc.p = c.keyed("p", 1L << 30);
            if (!is_odd_prime(doc.p)) c.invalid("p must be an odd prime", pcol);
            std::string k = c.word();
            if (k == "preset") {
                c.expect('=');
                int col = (c.skip_ws(), c.column());
                std::string v = c.word();
                if (v != kHeisenberg) c.invalid("unknown preset '" + v + "'", col);
                doc.preset = v;
                doc.vars = 3;
                doc.mode = RingMode::rules;
            } else if (k == "vars") {
                c.expect('=');
                int col = (c.skip_ws(), c.column());
                doc.vars = static_cast<int>(c.small_integer(kMaxVars));
                if (doc.vars < 1) c.invalid("vars must be at least 1", col);
                if (c.word() != "mode") c.fail("expected 'mode='");
                c.expect('=');
                int vcol = (c.skip_ws(), c.column());
                std::string v = c.word();
                if (v == "abelian") {
                    doc.mode = RingMode::abelian;
                } else if (v == "rules") {
                    doc.mode = RingMode::rules;
                } else {
                    c.fail_at("expected one of: abelian, rules", vcol);
                }
            } else {
                c.fail("expected one of: vars=, preset=");
            }
        } else if (kw == "prec") {
            if (doc.prec) c.invalid("duplicate prec header", kw_col);
            int col = (c.skip_ws(), c.column());
            Precision q;
            q.a = static_cast<int>(c.keyed("a", 64));
            q.N = static_cast<int>(c.keyed("N", 256));
            if (q.a < 1 || q.N < 1) c.invalid("precision must be positive", col);
            doc.prec = q;
        } else if (kw == "rule") {
            if (doc.mode != RingMode::rules || !doc.preset.empty())
                c.invalid("rule lines need mode=rules without a preset", kw_col);
            int col = (c.skip_ws(), c.column());
            long j = c.small_integer(kMaxVars), i = c.small_integer(kMaxVars);
            if (!(1 <= i && i < j && j <= doc.vars)) c.invalid("rule indices need 1 <= i < j <= vars", col);
            c.expect(':');
            PolyParser pp(c, doc.p, doc.vars);
            Poly h = pp.expr();
            if (!doc.rules.emplace(std::make_pair(static_cast<int>(j), static_cast<int>(i)), h).second)
                c.invalid("duplicate rule " + std::to_string(j) + " " + std::to_string(i), col);
        } else if (kw == "module") {
            int col = (c.skip_ws(), c.column());
            IwmModule m;
            m.name = c.ident();
            m.line = lineno;
            if (!names.insert(m.name).second) c.invalid("duplicate module name '" + m.name + "'", col);
            m.rank = static_cast<std::size_t>(c.keyed("rank", 1 << 16));
            doc.modules.push_back(std::move(m));
        } else if (kw == "rel") {
            if (doc.modules.empty()) c.invalid("rel before any module", kw_col);
            IwmModule& m = doc.modules.back();
            c.expect(':');
            int col = (c.skip_ws(), c.column());
            c.expect('[');
            Row row;
            PolyParser pp(c, doc.p, doc.vars);
            if (!c.accept(']')) {
                do {
                    row.push_back(pp.expr());
                } while (c.accept(','));
                c.expect(']');
            }
            if (row.size() != m.rank)
                c.invalid("relation has " + std::to_string(row.size()) + " entries, module " + m.name + " has rank " +
                              std::to_string(m.rank),
                          col);
            m.rels.push_back(std::move(row));
        } else {
            throw ParseError(lineno, kw_col, "expected one of: ring, prec, rule, module, rel");
        }
        if (!c.done()) c.fail("unexpected trailing text");
    }
    if (!have_ring) throw ParseError(lineno, 1, "expected 'ring' header");
    if (doc.modules.empty()) throw ParseError(lineno, 1, "expected at least one module");
    return doc;
}

std::string print_iwm(const IwmDocument& doc) {
    std::ostringstream os;
    auto names = b_names(static_cast<std::size_t>(doc.vars));
    os << "ring p=" << doc.p;
    if (!doc.preset.empty())
        os << " preset=" << doc.preset << "\n";
    else
        os << " vars=" << doc.vars << " mode=" << (doc.mode == RingMode::rules ? "rules" : "abelian") << "\n";
    if (doc.prec) os << "prec a=" << doc.prec->a << " N=" << doc.prec->N << "\n";
    if (doc.preset.empty())
        for (const auto& [key, h] : doc.rules)
            os << "rule " << key.first << " " << key.second << " : " << h.to_string(names, doc.p) << "\n";
    for (const auto& m : doc.modules) {
        os << "module " << m.name << " rank=" << m.rank << "\n";
        for (const auto& row : m.rels) {
            os << "rel : [";
            for (std::size_t k = 0; k < row.size(); ++k) os << (k ? ", " : "") << row[k].to_string(names, doc.p);
            os << "]\n";
        }
    }
    return os.str();
}

IwmDocument to_document(const Presentation& m, const std::string& name) {
    if (m.ring->coefficients() != Coefficients::padic)
        throw Error(ErrorKind::unsupported_mode, "only p-adic rings have an IWM header");
    IwmDocument doc;
    doc.p = m.ring->p();
    doc.vars = m.ring->r();
    doc.mode = m.ring->mode();
    if (m.ring->is_heisenberg()) {
        doc.preset = kHeisenberg;
    } else {
        doc.rules = m.ring->rules();
    }
    doc.prec = m.prec;
    doc.modules.push_back(IwmModule{name, m.rank, m.rels, 0});
    return doc;
}

}  // namespace iwalg
