#include <cctype>
#include <sstream>
#include <vector>

#include <json.hpp>

#include <superlax/error.hpp>
#include <superlax/io.hpp>

namespace superlax
{
namespace io
{

namespace
{

enum class tok { number, ident, lparen, rparen, plus, minus, star, slash, caret, end };

struct token {
    tok kind = tok::end;
    std::string text;
    int line = 1;
    int column = 1;
    // Generator tokens: kind letter 'u' or 'e', indices and derivative order.
    char gen = 0;
    int i = 0;
    int j = 0;
    int ord = 0;
};

class lexer
{
public:
    explicit lexer(const std::string &s) : s_(s) {}

    std::vector<token> run()
    {
        std::vector<token> out;
        for (;;) {
            skip_space();
            token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= s_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                t.kind = tok::number;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    t.text += take();
                }
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                t.kind = tok::ident;
                while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
                    t.text += take();
                }
                if (t.text == "u" || t.text == "e") {
                    generator(t);
                }
            } else {
                take();
                switch (c) {
                case '(': t.kind = tok::lparen; break;
                case ')': t.kind = tok::rparen; break;
                case '+': t.kind = tok::plus; break;
                case '-': t.kind = tok::minus; break;
                case '*': t.kind = tok::star; break;
                case '/': t.kind = tok::slash; break;
                case '^': t.kind = tok::caret; break;
                default:
                    throw parse_error(std::string("unexpected character '") + c + "'", t.line, t.column);
                }
                t.text = std::string(1, c);
            }
            out.push_back(t);
        }
    }

private:
    char take()
    {
        const char c = s_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            take();
        }
    }

    int integer(const token &t)
    {
        std::string d;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            d += take();
        }
        if (d.empty()) {
            throw parse_error("expected an index", line_, col_);
        }
        if (d.size() > 6) {
            throw parse_error("index too large in '" + t.text + "'", t.line, t.column);
        }
        return std::stoi(d);
    }

    void expect(char c)
    {
        if (pos_ >= s_.size() || s_[pos_] != c) {
            throw parse_error(std::string("expected '") + c + "'", line_, col_);
        }
        take();
    }

    // u1, u1'', u[1,2], e[1,2], e[1,2]', e[1,2,3].
    void generator(token &t)
    {
        t.gen = t.text[0];
        t.kind = tok::ident;
        if (t.gen == 'u' && pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            t.i = integer(t);
        } else if (pos_ < s_.size() && s_[pos_] == '[') {
            take();
            t.i = integer(t);
            expect(',');
            if (t.gen == 'u') {
                t.ord = integer(t);
            } else {
                t.j = integer(t);
                if (pos_ < s_.size() && s_[pos_] == ',') {
                    take();
                    t.ord = integer(t);
                }
            }
            expect(']');
            if (t.gen == 'u' || t.ord > 0) {
                t.text = "gen";
                return;
            }
        } else {
            t.gen = 0;
            return;
        }
        while (pos_ < s_.size() && s_[pos_] == '\'') {
            take();
            ++t.ord;
        }
        t.text = "gen";
    }

    const std::string &s_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

family_ptr infer_family(const std::vector<token> &toks)
{
    int max_u = 0;
    int max_e = 0;
    for (const auto &t : toks) {
        if (t.gen == 'u') {
            max_u = std::max(max_u, t.i);
        } else if (t.gen == 'e') {
            max_e = std::max({max_e, t.i, t.j});
        }
    }
    if (max_u > 0 && max_e > 0) {
        throw unknown_generator("u and e generators cannot be mixed");
    }
    if (max_u > 0) {
        return generator_family::wn(max_u);
    }
    if (max_e > 0) {
        return generator_family::affine_gl((max_e + 1) / 2, max_e / 2);
    }
    return nullptr;
}

class parser
{
public:
    parser(std::vector<token> toks, family_ptr fam, truncation t) : toks_(std::move(toks)), fam_(std::move(fam)), t_(t)
    {
    }

    chi_op run()
    {
        chi_op r = expr();
        if (peek().kind != tok::end) {
            fail("unexpected '" + peek().text + "'");
        }
        return r;
    }

private:
    const token &peek() const { return toks_[pos_]; }
    const token &next() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string &msg) const { throw parse_error(msg, peek().line, peek().column); }

    bool accept(tok k)
    {
        if (peek().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }

    chi_op expr()
    {
        chi_op r;
        const bool neg = accept(tok::minus);
        r = term();
        if (neg) {
            r = -r;
        }
        for (;;) {
            if (accept(tok::plus)) {
                r += term();
            } else if (accept(tok::minus)) {
                r -= term();
            } else {
                return r;
            }
        }
    }

    chi_op term()
    {
        chi_op r = factor();
        while (accept(tok::star)) {
            r = mul(r, factor(), t_);
        }
        return r;
    }

    int exponent()
    {
        const bool neg = accept(tok::minus);
        if (peek().kind != tok::number) {
            fail("expected an integer exponent");
        }
        const std::string d = next().text;
        if (d.size() > 6) {
            fail("exponent too large");
        }
        return neg ? -std::stoi(d) : std::stoi(d);
    }

    chi_op factor()
    {
        if (accept(tok::minus)) {
            return -factor();
        }
        const token start = peek();
        atom a = parse_atom();
        if (!accept(tok::caret)) {
            return a.value;
        }
        const int k = exponent();
        if (a.is_d) {
            return chi_op::D(k);
        }
        if (k < 0) {
            throw parse_error("negative powers are only allowed for D", start.line, start.column);
        }
        if (a.odd_generator && k > 1) {
            throw parity_error("odd generator raised to power " + std::to_string(k) + " at "
                               + std::to_string(start.line) + ":" + std::to_string(start.column));
        }
        chi_op r(super_poly(1));
        for (int i = 0; i < k; ++i) {
            r = mul(r, a.value, t_);
        }
        return r;
    }

    struct atom {
        chi_op value;
        bool is_d = false;
        bool odd_generator = false;
    };

    atom parse_atom()
    {
        const token &t = peek();
        atom a;
        if (t.kind == tok::number) {
            rational q(next().text);
            q.canonicalize();
            if (accept(tok::slash)) {
                if (peek().kind != tok::number) {
                    fail("expected a denominator");
                }
                const rational den(next().text);
                if (den == 0) {
                    throw parse_error("zero denominator", t.line, t.column);
                }
                q /= den;
            }
            a.value = chi_op(super_poly(q));
            return a;
        }
        if (t.kind == tok::lparen) {
            next();
            a.value = expr();
            if (!accept(tok::rparen)) {
                fail("expected ')'");
            }
            return a;
        }
        if (t.kind != tok::ident) {
            fail(t.kind == tok::end ? "unexpected end of input" : "unexpected '" + t.text + "'");
        }
        next();
        if (t.gen != 0) {
            if (!fam_) {
                throw unknown_generator("no generator family for '" + t.text + "'");
            }
            const std::string name = t.gen == 'u' ? "u" + std::to_string(t.i)
                                                  : "e[" + std::to_string(t.i) + "," + std::to_string(t.j) + "]";
            const int id = fam_->find(name);
            a.value = chi_op(super_poly::generator(fam_, id, t.ord));
            a.odd_generator = (fam_->parity(id) + t.ord) % 2 == 1;
            return a;
        }
        if (t.text == "D") {
            a.value = chi_op::D(1);
            a.is_d = true;
        } else if (t.text == "chi") {
            a.value = chi_op::chi(1);
        } else if (t.text == "gamma") {
            a.value = chi_op::gamma(1);
        } else if (t.text == "O") {
            // O(D^k): D^k and lower are unknown.
            if (!accept(tok::lparen) || peek().kind != tok::ident || next().text != "D" || !accept(tok::caret)) {
                fail("expected O(D^k)");
            }
            const int k = exponent();
            if (!accept(tok::rparen)) {
                fail("expected ')'");
            }
            a.value.set_floor(k + 1);
        } else {
            throw unknown_generator("unknown symbol '" + t.text + "' at " + std::to_string(t.line) + ":"
                                    + std::to_string(t.column));
        }
        return a;
    }

    std::vector<token> toks_;
    std::size_t pos_ = 0;
    family_ptr fam_;
    truncation t_;
};

std::string gen_name(const family_ptr &fam, var_key v, bool latex)
{
    const int id = var_gen(v);
    const int ord = var_ord(v);
    if (!fam) {
        throw unknown_generator("polynomial without a family");
    }
    std::ostringstream os;
    if (fam->kind() == family_kind::affine_gl) {
        const auto [i, j] = fam->affine_pair(id);
        if (latex) {
            os << "\\bar e_{" << i << j << "}";
            if (ord > 0) {
                os << "^{(" << ord << ")}";
            }
        } else if (ord > 0) {
            os << "e[" << i << "," << j << "," << ord << "]";
        } else {
            os << "e[" << i << "," << j << "]";
        }
        return os.str();
    }
    const std::string &name = fam->name(id);
    if (latex) {
        if (fam->kind() == family_kind::wn && id < fam->rank()) {
            os << "u_{" << id + 1 << "}";
        } else {
            os << "\\mathrm{" << name << "}";
        }
        if (ord > 0) {
            os << "^{(" << ord << ")}";
        }
    } else if (ord > 0) {
        if (fam->kind() != family_kind::wn || id >= fam->rank()) {
            throw unknown_generator("bracket form is only defined for u and e generators");
        }
        os << "u[" << id + 1 << "," << ord << "]";
    } else {
        os << name;
    }
    return os.str();
}

struct flat_term {
    chi_key key;
    const monomial *mono;
    rational coeff;
};

std::vector<flat_term> flatten(const chi_op &x)
{
    std::vector<flat_term> out;
    for (const auto &[k, c] : x.terms()) {
        for (const auto &[m, q] : c.terms()) {
            out.push_back({k, &m, q});
        }
    }
    return out;
}

std::string latex_rational(const rational &q)
{
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

std::string emit_text(const chi_op &x, bool latex)
{
    const family_ptr fam = x.family();
    std::ostringstream os;
    bool first = true;
    for (const auto &ft : flatten(x)) {
        rational q = ft.coeff;
        if (first) {
            if (q < 0) {
                os << "-";
                q = -q;
            }
        } else {
            os << (q < 0 ? " - " : " + ");
            q = abs(q);
        }
        first = false;
        std::vector<std::string> parts;
        const bool bare = ft.key.chi == 0 && ft.key.gamma == 0 && ft.key.dpow == 0 && ft.mono->is_one();
        if (q != 1 || bare) {
            parts.push_back(latex ? latex_rational(q) : q.get_str());
        }
        const auto power = [&](const std::string &sym, int k) {
            if (k == 1) {
                parts.push_back(sym);
            } else if (k != 0) {
                parts.push_back(latex ? sym + "^{" + std::to_string(k) + "}" : sym + "^" + std::to_string(k));
            }
        };
        power(latex ? "\\chi" : "chi", ft.key.chi);
        power(latex ? "\\gamma" : "gamma", ft.key.gamma);
        for (var_key v : ft.mono->factors()) {
            parts.push_back(gen_name(fam, v, latex));
        }
        power("D", ft.key.dpow);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i > 0) {
                os << (latex ? " " : "*");
            }
            os << parts[i];
        }
    }
    if (first) {
        os << "0";
    }
    if (!x.is_exact()) {
        os << (latex ? " + O(D^{" : " + O(D^") << x.floor() - 1 << (latex ? "})" : ")");
    }
    return os.str();
}

} // namespace

chi_op parse(const std::string &text, const family_ptr &fam, truncation t)
{
    std::vector<token> toks = lexer(text).run();
    family_ptr f = fam ? fam : infer_family(toks);
    return parser(std::move(toks), std::move(f), t).run();
}

spdo parse_spdo(const std::string &text, const family_ptr &fam, truncation t)
{
    const chi_op x = parse(text, fam, t);
    spdo r;
    for (const auto &[k, c] : x.terms()) {
        if (k.chi != 0 || k.gamma != 0) {
            throw kind_mismatch("expression contains chi or gamma");
        }
        r.add_term(k.dpow, c);
    }
    if (!x.is_exact()) {
        r.set_floor(x.floor());
    }
    return r;
}

super_poly parse_poly(const std::string &text, const family_ptr &fam)
{
    const chi_op x = parse(text, fam);
    super_poly r;
    for (const auto &[k, c] : x.terms()) {
        if (k.chi != 0 || k.gamma != 0 || k.dpow != 0) {
            throw kind_mismatch("expression is not a differential polynomial");
        }
        r += c;
    }
    return r;
}

format parse_format(const std::string &s)
{
    if (s == "json") {
        return format::json;
    }
    if (s == "latex") {
        return format::latex;
    }
    if (s == "plain") {
        return format::plain;
    }
    throw error("unknown format '" + s + "'");
}

std::string emit(const chi_op &x, format f)
{
    if (f != format::json) {
        return emit_text(x, f == format::latex);
    }
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto &ft : flatten(x)) {
        nlohmann::ordered_json mono = nlohmann::ordered_json::array();
        for (var_key v : ft.mono->factors()) {
            mono.push_back({var_gen(v) + 1, var_ord(v)});
        }
        nlohmann::ordered_json t;
        t["coeff"] = ft.coeff.get_str();
        t["monomial"] = std::move(mono);
        t["dpow"] = ft.key.dpow;
        t["chipow"] = ft.key.chi;
        if (ft.key.gamma != 0) {
            t["gammapow"] = ft.key.gamma;
        }
        terms.push_back(std::move(t));
    }
    nlohmann::ordered_json out;
    out["terms"] = std::move(terms);
    if (!x.is_exact()) {
        out["floor"] = x.floor();
    }
    return out.dump();
}

std::string emit(const spdo &x, format f)
{
    return emit(chi_op(x), f);
}

std::string emit(const super_poly &x, format f)
{
    return emit(chi_op(x), f);
}

chi_op parse_json(const std::string &text, const family_ptr &fam)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw parse_error(e.what(), 1, static_cast<int>(e.byte));
    }
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
        throw parse_error("expected an object with a \"terms\" array", 1, 1);
    }
    family_ptr f = fam;
    if (!f) {
        int max_id = 0;
        for (const auto &t : j["terms"]) {
            for (const auto &m : t.at("monomial")) {
                max_id = std::max(max_id, m.at(0).get<int>());
            }
        }
        if (max_id > 0) {
            f = generator_family::wn(max_id);
        }
    }
    chi_op r;
    try {
        for (const auto &t : j["terms"]) {
            rational q(t.at("coeff").get<std::string>());
            if (q.get_den() == 0) {
                throw parse_error("zero denominator in coefficient", 1, 1);
            }
            q.canonicalize();
            super_poly c(q);
            for (const auto &m : t.at("monomial")) {
                c = c * super_poly::generator(f, m.at(0).get<int>() - 1, m.at(1).get<int>());
            }
            chi_key k;
            k.dpow = t.at("dpow").get<int>();
            k.chi = t.at("chipow").get<int>();
            k.gamma = t.value("gammapow", 0);
            r.add_term(k, c);
        }
        if (j.contains("floor")) {
            r.set_floor(j["floor"].get<int>());
        }
    } catch (const nlohmann::json::exception &e) {
        throw parse_error(e.what(), 1, 1);
    } catch (const std::invalid_argument &e) {
        throw parse_error(std::string("bad rational: ") + e.what(), 1, 1);
    }
    return r;
}

} // namespace io
} // namespace superlax
