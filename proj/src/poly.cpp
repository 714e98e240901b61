#include "census/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace census {

IntPolynomial::IntPolynomial(int arity) : arity_(arity) {
    if (arity < 1) throw std::invalid_argument("IntPolynomial: arity must be positive");
}

IntPolynomial IntPolynomial::zero(int arity) { return IntPolynomial(arity); }

IntPolynomial IntPolynomial::constant(int arity, mpz_class c) {
    IntPolynomial p(arity);
    p.add_term(Monomial(static_cast<std::size_t>(arity)), c);
    return p;
}

IntPolynomial IntPolynomial::variable(int arity, int index) {
    if (index < 0 || index >= arity) throw std::invalid_argument("variable: index out of range");
    IntPolynomial p(arity);
    Monomial m(static_cast<std::size_t>(arity));
    m.e[static_cast<std::size_t>(index)] = 1;
    p.add_term(m, 1);
    return p;
}

void IntPolynomial::add_term(const Monomial& m, const mpz_class& c) {
    if (m.e.size() != static_cast<std::size_t>(arity_))
        throw std::invalid_argument("add_term: monomial arity mismatch");
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

int IntPolynomial::degree() const {
    if (terms_.empty()) return kDegreeNegInf;
    return terms_.begin()->first.total_degree();
}

bool IntPolynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = terms_.begin()->first.total_degree();
    for (const auto& [m, c] : terms_)
        if (m.total_degree() != d) return false;
    return true;
}

const std::pair<const Monomial, mpz_class>& IntPolynomial::leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading_term: zero polynomial");
    return *terms_.begin();
}

IntPolynomial IntPolynomial::operator-() const {
    IntPolynomial r(arity_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    if (arity_ != o.arity_) throw std::invalid_argument("operator+: arity mismatch");
    IntPolynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
    if (arity_ != o.arity_) throw std::invalid_argument("operator-: arity mismatch");
    IntPolynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (arity_ != o.arity_) throw std::invalid_argument("operator*: arity mismatch");
    IntPolynomial r(arity_);
    Monomial prod(static_cast<std::size_t>(arity_));
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            for (std::size_t i = 0; i < prod.e.size(); ++i) prod.e[i] = ma.e[i] + mb.e[i];
            r.add_term(prod, ca * cb);
        }
    }
    return r;
}

IntPolynomial IntPolynomial::operator*(const mpz_class& c) const {
    IntPolynomial r(arity_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

namespace {

bool evaluate_i64(const IntPolynomial::TermMap& terms, const std::vector<i64>& x, i64& out) {
    i64 acc = 0;
    for (const auto& [m, c] : terms) {
        if (!fits_i64(c)) return false;
        i64 term = to_i64(c);
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            for (std::uint32_t k = 0; k < m.e[i]; ++k) {
                if (!checked_mul(term, x[i], term)) return false;
            }
        }
        if (!checked_add(acc, term, acc)) return false;
    }
    out = acc;
    return true;
}

}  // namespace

mpz_class IntPolynomial::evaluate(const LatticePoint& x) const {
    if (x.arity() != static_cast<std::size_t>(arity_))
        throw std::invalid_argument("evaluate: point arity mismatch");
    std::vector<i64> fast(x.arity());
    bool all_small = true;
    for (std::size_t i = 0; i < x.coords.size() && all_small; ++i) {
        if (fits_i64(x.coords[i]))
            fast[i] = to_i64(x.coords[i]);
        else
            all_small = false;
    }
    if (all_small) {
        i64 v;
        if (evaluate_i64(terms_, fast, v)) return mpz_class(static_cast<long>(v));
    }
    mpz_class acc = 0, term, pw;
    for (const auto& [m, c] : terms_) {
        term = c;
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] == 0) continue;
            mpz_pow_ui(pw.get_mpz_t(), x.coords[i].get_mpz_t(), m.e[i]);
            term *= pw;
        }
        acc += term;
    }
    return acc;
}

mpz_class IntPolynomial::evaluate(const std::vector<i64>& x) const {
    if (x.size() != static_cast<std::size_t>(arity_))
        throw std::invalid_argument("evaluate: point arity mismatch");
    i64 v;
    if (evaluate_i64(terms_, x, v)) return mpz_class(static_cast<long>(v));
    return evaluate(LatticePoint::from_i64(x));
}

IntPolynomial homogenize(const IntPolynomial& f, int delta) {
    if (!f.is_zero() && delta < f.degree())
        throw std::invalid_argument("homogenize: delta below degree of input");
    IntPolynomial F(f.arity() + 1);
    for (const auto& [m, c] : f.terms()) {
        Monomial hm(static_cast<std::size_t>(f.arity() + 1));
        hm.e[0] = static_cast<std::uint32_t>(delta - m.total_degree());
        std::copy(m.e.begin(), m.e.end(), hm.e.begin() + 1);
        F.add_term(hm, c);
    }
    return F;
}

IntPolynomial slice(const IntPolynomial& F, int var_index, const mpz_class& value) {
    if (var_index < 0 || var_index >= F.arity())
        throw std::invalid_argument("slice: variable index out of range");
    if (F.arity() < 2) throw std::invalid_argument("slice: arity must be at least 2");
    IntPolynomial g(F.arity() - 1);
    mpz_class pw, coeff;
    for (const auto& [m, c] : F.terms()) {
        std::uint32_t e = m.e[static_cast<std::size_t>(var_index)];
        if (e == 0) {
            coeff = c;
        } else {
            mpz_pow_ui(pw.get_mpz_t(), value.get_mpz_t(), e);
            coeff = c * pw;
        }
        Monomial sm;
        sm.e.reserve(m.e.size() - 1);
        for (std::size_t i = 0; i < m.e.size(); ++i)
            if (i != static_cast<std::size_t>(var_index)) sm.e.push_back(m.e[i]);
        g.add_term(sm, coeff);
    }
    return g;
}

mpz_class content(const IntPolynomial& p) {
    if (p.is_zero()) throw std::domain_error("content: zero polynomial");
    mpz_class g = 0;
    for (const auto& [m, c] : p.terms()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPolynomial primitive_part(const IntPolynomial& p) {
    mpz_class g = content(p);
    IntPolynomial r(p.arity());
    mpz_class q;
    for (const auto& [m, c] : p.terms()) {
        mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        r.add_term(m, q);
    }
    return r;
}

mpz_class height(const IntPolynomial& p) {
    if (p.is_zero()) throw std::domain_error("height: zero polynomial");
    mpz_class h = 0;
    for (const auto& [m, c] : p.terms()) {
        mpz_class a = abs(c);
        if (a > h) h = a;
    }
    return h;
}

IntPolynomial derivative(const IntPolynomial& p, int var_index) {
    if (var_index < 0 || var_index >= p.arity())
        throw std::invalid_argument("derivative: variable index out of range");
    IntPolynomial d(p.arity());
    for (const auto& [m, c] : p.terms()) {
        std::uint32_t e = m.e[static_cast<std::size_t>(var_index)];
        if (e == 0) continue;
        Monomial dm = m;
        dm.e[static_cast<std::size_t>(var_index)] = e - 1;
        d.add_term(dm, c * e);
    }
    return d;
}

std::vector<IntPolynomial> gradient(const IntPolynomial& p) {
    std::vector<IntPolynomial> g;
    g.reserve(static_cast<std::size_t>(p.arity()));
    for (int i = 0; i < p.arity(); ++i) g.push_back(derivative(p, i));
    return g;
}

IntPolynomial reduce_mod_p(const IntPolynomial& p, i64 prime) {
    if (prime < 2) throw std::invalid_argument("reduce_mod_p: modulus must be at least 2");
    IntPolynomial r(p.arity());
    mpz_class m = static_cast<long>(prime), c;
    for (const auto& [mon, coeff] : p.terms()) {
        mpz_mod(c.get_mpz_t(), coeff.get_mpz_t(), m.get_mpz_t());
        r.add_term(mon, c);
    }
    return r;
}

IntPolynomial substitute(const IntPolynomial& f, const std::vector<IntPolynomial>& repl) {
    if (repl.size() != static_cast<std::size_t>(f.arity()))
        throw std::invalid_argument("substitute: replacement count must equal arity");
    int target_arity = repl.empty() ? 1 : repl[0].arity();
    for (const auto& r : repl)
        if (r.arity() != target_arity)
            throw std::invalid_argument("substitute: replacement arity mismatch");

    // per-variable power cache
    std::vector<std::vector<IntPolynomial>> powers(repl.size());
    auto power_of = [&](std::size_t v, std::uint32_t e) -> const IntPolynomial& {
        auto& cache = powers[v];
        if (cache.empty()) cache.push_back(IntPolynomial::constant(target_arity, 1));
        while (cache.size() <= e) cache.push_back(cache.back() * repl[v]);
        return cache[e];
    };

    IntPolynomial out(target_arity);
    for (const auto& [m, c] : f.terms()) {
        IntPolynomial term = IntPolynomial::constant(target_arity, c);
        for (std::size_t v = 0; v < m.e.size(); ++v)
            if (m.e[v] > 0) term = term * power_of(v, m.e[v]);
        out = out + term;
    }
    return out;
}

namespace {

struct Token {
    enum Kind { Int, Var, Caret, Star, Plus, Minus, End } kind;
    std::string text;  // digits for Int
    int var_index = -1;
    bool t_style = false;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        Token t;
        t.pos = i_;
        if (i_ >= s_.size()) {
            t.kind = Token::End;
            return t;
        }
        char c = s_[i_];
        if (c == '^') { ++i_; t.kind = Token::Caret; return t; }
        if (c == '*') { ++i_; t.kind = Token::Star; return t; }
        if (c == '+') { ++i_; t.kind = Token::Plus; return t; }
        if (c == '-') { ++i_; t.kind = Token::Minus; return t; }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            t.kind = Token::Int;
            t.text = s_.substr(i_, j - i_);
            i_ = j;
            return t;
        }
        if (c == 'x' || c == 'X' || c == 't' || c == 'T') {
            if (i_ + 1 >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))
                throw ParseError("variable name must be x<digit> or t<digit>", i_);
            int digit = s_[i_ + 1] - '0';
            t.kind = Token::Var;
            t.t_style = (c == 't' || c == 'T');
            if (t.t_style) {
                if (digit == 0) throw ParseError("t-variables are numbered from t1", i_);
                t.var_index = digit - 1;
            } else {
                t.var_index = digit;
            }
            i_ += 2;
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

struct RawTerm {
    mpz_class coeff;
    std::map<int, std::uint32_t> exps;
};

}  // namespace

IntPolynomial parse_polynomial(const std::string& text, int min_arity) {
    Lexer lex(text);
    Token tok = lex.next();
    if (tok.kind == Token::End) throw ParseError("empty polynomial", 0);

    std::vector<RawTerm> raw;
    bool saw_x = false, saw_t = false;
    int max_index = -1;

    while (tok.kind != Token::End) {
        int sign = 1;
        bool have_sign = false;
        while (tok.kind == Token::Plus || tok.kind == Token::Minus) {
            if (tok.kind == Token::Minus) sign = -sign;
            have_sign = true;
            tok = lex.next();
        }
        if (!have_sign && !raw.empty())
            throw ParseError("expected '+' or '-' between terms", tok.pos);

        RawTerm term;
        term.coeff = sign;
        bool have_factor = false;
        for (;;) {
            if (tok.kind == Token::Star) {
                if (!have_factor) throw ParseError("'*' without preceding factor", tok.pos);
                tok = lex.next();
                if (tok.kind != Token::Int && tok.kind != Token::Var)
                    throw ParseError("expected factor after '*'", tok.pos);
                continue;
            }
            if (tok.kind == Token::Int) {
                term.coeff *= mpz_class(tok.text);
                have_factor = true;
                tok = lex.next();
                continue;
            }
            if (tok.kind == Token::Var) {
                if (tok.t_style) saw_t = true; else saw_x = true;
                if (saw_x && saw_t)
                    throw ParseError("cannot mix x- and t-style variables", tok.pos);
                int v = tok.var_index;
                max_index = std::max(max_index, v);
                std::uint32_t e = 1;
                tok = lex.next();
                if (tok.kind == Token::Caret) {
                    tok = lex.next();
                    if (tok.kind != Token::Int)
                        throw ParseError("expected integer exponent after '^'", tok.pos);
                    unsigned long long val = 0;
                    if (tok.text.size() > 6)
                        throw ParseError("exponent too large", tok.pos);
                    val = std::stoull(tok.text);
                    e = static_cast<std::uint32_t>(val);
                    tok = lex.next();
                }
                term.exps[v] += e;
                have_factor = true;
                continue;
            }
            break;
        }
        if (!have_factor) throw ParseError("expected a term", tok.pos);
        raw.push_back(std::move(term));
    }

    int arity = std::max({max_index + 1, min_arity, 1});
    IntPolynomial p(arity);
    for (const auto& t : raw) {
        Monomial m(static_cast<std::size_t>(arity));
        for (const auto& [v, e] : t.exps) m.e[static_cast<std::size_t>(v)] = e;
        p.add_term(m, t.coeff);
    }
    return p;
}

std::string to_string(const IntPolynomial& p, VarStyle style) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        mpz_class mag = abs(c);
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        bool has_var = m.total_degree() > 0;
        bool need_coeff = !has_var || mag != 1;
        if (need_coeff) os << mag.get_str();
        bool first_var = !need_coeff;
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] == 0) continue;
            if (!first_var || need_coeff) os << "*";
            first_var = false;
            if (style == VarStyle::X)
                os << "x" << i;
            else
                os << "t" << (i + 1);
            if (m.e[i] > 1) os << "^" << m.e[i];
        }
    }
    return os.str();
}

}  // namespace census
