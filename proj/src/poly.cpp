#include "logchi/poly.hpp"

#include <sstream>

namespace logchi {

Poly Poly::constant(ContextPtr ctx, const Rational& c) {
    Poly p(std::move(ctx));
    if (c != 0) p.terms_.emplace(ExpVec(p.ctx_->size(), 0), c);
    return p;
}

Poly Poly::variable(ContextPtr ctx, std::size_t index) {
    if (index >= ctx->size()) throw internal_error("variable index out of range");
    Poly p(std::move(ctx));
    ExpVec e(p.ctx_->size(), 0);
    e[index] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

Poly Poly::monomial(ContextPtr ctx, ExpVec exp, const Rational& coeff) {
    if (exp.size() != ctx->size()) throw internal_error("exponent vector length mismatch");
    Poly p(std::move(ctx));
    if (coeff != 0) p.terms_.emplace(std::move(exp), coeff);
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

Rational Poly::constant_value() const {
    ExpVec zero(ctx_ ? ctx_->size() : 0, 0);
    auto it = terms_.find(zero);
    return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Poly::degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
}

unsigned Poly::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
    return d;
}

void Poly::check_same_context(const Poly& rhs) const {
    if (!same_context(ctx_, rhs.ctx_))
        throw input_error("context mismatch between polynomials");
}

void Poly::add_term(const ExpVec& exp, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(exp, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(ctx_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Poly Poly::operator+(const Poly& rhs) const {
    check_same_context(rhs);
    Poly r = *this;
    r.ctx_ = ctx_ ? ctx_ : rhs.ctx_;
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly& rhs) const {
    check_same_context(rhs);
    Poly r = *this;
    r.ctx_ = ctx_ ? ctx_ : rhs.ctx_;
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, -c);
    return r;
}

Poly Poly::operator*(const Poly& rhs) const {
    check_same_context(rhs);
    Poly r(ctx_ ? ctx_ : rhs.ctx_);
    ExpVec sum;
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            sum = ea;
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += eb[i];
            r.add_term(sum, ca * cb);
        }
    }
    return r;
}

Poly Poly::operator*(const Rational& c) const {
    Poly r(ctx_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly acc = Poly::constant(ctx_, Rational(1));
    Poly base = *this;
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return acc;
}

bool Poly::operator==(const Poly& rhs) const {
    if (!same_context(ctx_, rhs.ctx_)) return false;
    return terms_ == rhs.terms_;
}

Poly Poly::partial(std::size_t var) const {
    if (!ctx_ || var >= ctx_->size()) throw input_error("unknown variable in partial");
    Poly r(ctx_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        ExpVec d = e;
        d[var] -= 1;
        r.add_term(d, c * Rational(static_cast<long>(e[var])));
    }
    return r;
}

Poly Poly::log_derive(std::size_t var) const {
    if (!ctx_ || var >= ctx_->size()) throw input_error("unknown variable in log_derive");
    Poly r(ctx_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        r.add_term(e, c * Rational(static_cast<long>(e[var])));
    }
    return r;
}

Poly Poly::compose(const ContextPtr& target, const std::vector<Poly>& images) const {
    if (!ctx_) throw internal_error("compose on context-free polynomial");
    if (images.size() != ctx_->size()) throw internal_error("compose: wrong image count");
    Poly r = Poly::zero(target);
    for (const auto& [e, c] : terms_) {
        Poly t = Poly::constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) t = t * images[i].pow(e[i]);
        r = r + t;
    }
    return r;
}

Poly Poly::substitute(std::size_t var, const Rational& value) const {
    Poly r(ctx_);
    for (const auto& [e, c] : terms_) {
        Rational k = c;
        for (unsigned j = 0; j < e[var]; ++j) k *= value;
        ExpVec d = e;
        d[var] = 0;
        r.add_term(d, k);
    }
    return r;
}

Poly Poly::coefficient_of(std::size_t var, unsigned k) const {
    Poly r(ctx_);
    for (const auto& [e, c] : terms_) {
        if (e[var] != k) continue;
        ExpVec d = e;
        d[var] = 0;
        r.add_term(d, c);
    }
    return r;
}

bool Poly::homogeneous_in(const std::vector<std::size_t>& vars) const {
    bool first = true;
    unsigned deg = 0;
    for (const auto& [e, c] : terms_) {
        unsigned d = 0;
        for (std::size_t v : vars) d += e[v];
        if (first) {
            deg = d;
            first = false;
        } else if (d != deg) {
            return false;
        }
    }
    return true;
}

namespace {

// Descending graded order for printing: higher total degree first, then
// reverse-lexicographic tie break, so "x^2 - x + y" comes out stably.
bool print_before(const ExpVec& a, const ExpVec& b) {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

void print_monomial(std::ostringstream& out, const VarContext& ctx, const ExpVec& e,
                    const Rational& coeff, bool leading) {
    Rational c = coeff;
    if (c < 0) {
        out << (leading ? "-" : " - ");
        c = -c;
    } else if (!leading) {
        out << " + ";
    }
    bool unit = (c == 1);
    bool any_var = total_degree(e) > 0;
    if (!unit || !any_var) out << c.get_str();
    bool need_star = !unit || !any_var;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (need_star) out << "*";
        out << ctx.name(i);
        if (e[i] > 1) out << "^" << e[i];
        need_star = true;
    }
}

} // namespace

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const ExpVec, Rational>*> ordered;
    ordered.reserve(terms_.size());
    for (const auto& t : terms_) ordered.push_back(&t);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto* a, const auto* b) { return print_before(a->first, b->first); });
    std::ostringstream out;
    bool leading = true;
    for (const auto* t : ordered) {
        print_monomial(out, *ctx_, t->first, t->second, leading);
        leading = false;
    }
    return out.str();
}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (!same_context(num_.context(), den_.context()))
        throw input_error("context mismatch in rational function");
    if (den_.is_zero()) throw input_error("division by the zero polynomial");
}

RatFunc::RatFunc(Poly num)
    : RatFunc(num, Poly::constant(num.context(), Rational(1))) {}

RatFunc RatFunc::operator+(const RatFunc& rhs) const {
    return RatFunc(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

RatFunc RatFunc::operator-(const RatFunc& rhs) const {
    return RatFunc(num_ * rhs.den_ - rhs.num_ * den_, den_ * rhs.den_);
}

RatFunc RatFunc::operator*(const RatFunc& rhs) const {
    return RatFunc(num_ * rhs.num_, den_ * rhs.den_);
}

RatFunc RatFunc::operator/(const RatFunc& rhs) const {
    if (rhs.num_.is_zero()) throw input_error("division by the zero polynomial");
    return RatFunc(num_ * rhs.den_, den_ * rhs.num_);
}

std::string RatFunc::str() const {
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

} // namespace logchi
