#include "logchi/chow.hpp"

#include <sstream>

#include "logchi/errors.hpp"

namespace logchi {

ChowClass::ChowClass(std::vector<std::size_t> factor_dims) : dims_(std::move(factor_dims)) {}

ChowClass ChowClass::zero(const Space& X) {
    std::vector<std::size_t> d;
    for (std::size_t i = 0; i < X.factor_count(); ++i) d.push_back(X.factor_dim(i));
    return ChowClass(d);
}

ChowClass ChowClass::one(const Space& X) {
    ChowClass c = zero(X);
    c.terms_[std::vector<unsigned>(c.dims_.size(), 0)] = 1;
    return c;
}

ChowClass ChowClass::hyperplane(const Space& X, std::size_t factor) {
    ChowClass c = zero(X);
    std::vector<unsigned> e(c.dims_.size(), 0);
    e.at(factor) = 1;
    c.add_term(e, 1);
    return c;
}

void ChowClass::add_term(const std::vector<unsigned>& e, long long c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > dims_[i]) return; // truncated away
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

ChowClass ChowClass::operator+(const ChowClass& rhs) const {
    ChowClass r = *this;
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, c);
    return r;
}

ChowClass ChowClass::operator-(const ChowClass& rhs) const {
    ChowClass r = *this;
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, -c);
    return r;
}

ChowClass ChowClass::operator*(const ChowClass& rhs) const {
    ChowClass r(dims_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            std::vector<unsigned> e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

ChowClass ChowClass::operator*(long long c) const {
    ChowClass r(dims_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
}

bool ChowClass::operator==(const ChowClass& rhs) const {
    return dims_ == rhs.dims_ && terms_ == rhs.terms_;
}

long long ChowClass::coefficient(const std::vector<unsigned>& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
}

ChowClass ChowClass::graded_part(unsigned d) const {
    ChowClass r(dims_);
    for (const auto& [e, c] : terms_) {
        unsigned deg = 0;
        for (unsigned x : e) deg += x;
        if (deg == d) r.terms_[e] = c;
    }
    return r;
}

long long ChowClass::degree_of_top() const {
    unsigned top = 0;
    for (std::size_t d : dims_) top += static_cast<unsigned>(d);
    std::vector<unsigned> top_exp(dims_.begin(), dims_.end());
    for (const auto& [e, c] : terms_) {
        unsigned deg = 0;
        for (unsigned x : e) deg += x;
        if (deg != top) throw input_error("degree of a class that is not pure top-degree");
    }
    return coefficient(top_exp);
}

std::string ChowClass::str() const {
    if (terms_.empty()) return "0";
    // ascending total degree, then map order; explicit * and ^.
    std::vector<std::pair<std::vector<unsigned>, long long>> ts(terms_.begin(), terms_.end());
    std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        unsigned da = 0, db = 0;
        for (unsigned x : a.first) da += x;
        for (unsigned x : b.first) db += x;
        return da < db;
    });
    std::ostringstream out;
    bool leading = true;
    for (const auto& [e, c] : ts) {
        long long v = c;
        if (v < 0) {
            out << (leading ? "-" : " - ");
            v = -v;
        } else if (!leading) {
            out << " + ";
        }
        unsigned deg = 0;
        for (unsigned x : e) deg += x;
        bool unit = (v == 1);
        if (!unit || deg == 0) out << v;
        bool need_star = !unit || deg == 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (need_star) out << "*";
            out << (dims_.size() == 1 ? "h" : "h" + std::to_string(i + 1));
            if (e[i] > 1) out << "^" << e[i];
            need_star = true;
        }
        leading = false;
    }
    return out.str();
}

ChowClass chern_log_cotangent(const Space& X) {
    ChowClass total = ChowClass::one(X);
    // c(Omega^1) per factor from the Euler sequence: (1 - h_i)^{n_i + 1}.
    for (std::size_t i = 0; i < X.factor_count(); ++i) {
        ChowClass f = ChowClass::one(X) - ChowClass::hyperplane(X, i);
        for (std::size_t k = 0; k <= X.factor_dim(i); ++k) total = total * f;
    }
    // Residue sequence: each component contributes c(O_D) = 1/(1 - d) with
    // d its hyperplane class, i.e. the truncated geometric series.
    for (const auto& comp : X.boundary()) {
        ChowClass series = ChowClass::zero(X);
        ChowClass h = ChowClass::hyperplane(X, comp.factor);
        ChowClass pow = ChowClass::one(X);
        for (std::size_t k = 0; k <= X.factor_dim(comp.factor); ++k) {
            series = series + pow;
            pow = pow * h;
        }
        total = total * series;
    }
    return total;
}

long long euler_open(const Space& X) {
    ChowClass total = chern_log_cotangent(X);
    unsigned n = static_cast<unsigned>(X.dim());
    long long top = total.graded_part(n).degree_of_top();
    return (n % 2 == 0) ? top : -top;
}

} // namespace logchi
