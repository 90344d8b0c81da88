#include "logchi/space.hpp"

#include <algorithm>
#include <cctype>

namespace logchi {

namespace {

std::vector<std::vector<std::string>> default_hom_names(const std::vector<std::size_t>& dims) {
    // Single factor: X,Y,Z,W. Two factors: X,Y,Z / U,V,W. Beyond that,
    // indexed names.
    static const char* first[] = {"X", "Y", "Z", "W"};
    static const char* second[] = {"U", "V", "W", "T"};
    std::vector<std::vector<std::string>> names(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
        for (std::size_t a = 0; a <= dims[i]; ++a) {
            if (dims.size() <= 2 && dims[i] <= 3 && i < 2) {
                names[i].push_back(i == 0 ? first[a] : second[a]);
            } else {
                names[i].push_back("Z" + std::to_string(i) + "_" + std::to_string(a));
            }
        }
    }
    return names;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

} // namespace

bool BoundaryComponent::is_coordinate(std::size_t& hom_index) const {
    std::size_t nonzero = 0, where = 0;
    for (std::size_t a = 0; a < form.size(); ++a)
        if (form[a] != 0) {
            ++nonzero;
            where = a;
        }
    if (nonzero != 1) return false;
    hom_index = where;
    return true;
}

Space::Space(std::vector<std::size_t> factor_dims) : dims_(std::move(factor_dims)) {
    if (dims_.empty()) throw input_error("space needs at least one factor");
    for (std::size_t d : dims_)
        if (d == 0) throw input_error("projective factors must have positive dimension");
    hom_names_ = default_hom_names(dims_);
    std::vector<std::string> all;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        hom_offsets_.push_back(all.size());
        for (const auto& n : hom_names_[i]) all.push_back(n);
    }
    hom_ctx_ = make_context(std::move(all));
}

std::size_t Space::dim() const {
    std::size_t n = 0;
    for (std::size_t d : dims_) n += d;
    return n;
}

std::size_t Space::hom_var(std::size_t factor, std::size_t a) const {
    return hom_offsets_.at(factor) + a;
}

void Space::check_new_component(const BoundaryComponent& c) const {
    for (const auto& b : boundary_)
        if (b.factor == c.factor && b.form == c.form)
            throw input_error("duplicate boundary component: " + c.label);
}

void Space::add_coordinate_component(std::size_t factor, std::size_t a) {
    if (factor >= dims_.size() || a > dims_[factor])
        throw input_error("coordinate component out of range");
    BoundaryComponent c;
    c.factor = factor;
    c.form.assign(dims_[factor] + 1, Rational(0));
    c.form[a] = 1;
    c.label = hom_names_[factor][a];
    check_new_component(c);
    boundary_.push_back(std::move(c));
}

void Space::add_p1_point(std::size_t factor, const Rational& lambda) {
    if (factor >= dims_.size() || dims_[factor] != 1)
        throw input_error("point components only exist on P^1 factors");
    if (lambda == 0) {
        add_coordinate_component(factor, 0);
        return;
    }
    BoundaryComponent c;
    c.factor = factor;
    // x = first/second homogeneous coordinate; the point x = lambda is
    // the zero of Z0 - lambda*Z1, scaled monic.
    c.form = {Rational(1), -lambda};
    c.label = lower(hom_names_[factor][0]) + "=" + to_string(lambda);
    check_new_component(c);
    boundary_.push_back(std::move(c));
}

void Space::add_p1_infinity(std::size_t factor) {
    if (factor >= dims_.size() || dims_[factor] != 1)
        throw input_error("point components only exist on P^1 factors");
    add_coordinate_component(factor, 1);
}

void Space::add_toric_boundary() {
    for (std::size_t i = 0; i < dims_.size(); ++i)
        for (std::size_t a = 0; a <= dims_[i]; ++a)
            add_coordinate_component(i, a);
}

Poly Space::component_form(std::size_t comp) const {
    const BoundaryComponent& c = boundary_.at(comp);
    Poly f = Poly::zero(hom_ctx_);
    for (std::size_t a = 0; a < c.form.size(); ++a)
        if (c.form[a] != 0)
            f = f + Poly::variable(hom_ctx_, hom_var(c.factor, a)) * c.form[a];
    return f;
}

std::optional<std::size_t> Space::component_by_label(const std::string& label) const {
    for (std::size_t i = 0; i < boundary_.size(); ++i)
        if (boundary_[i].label == label) return i;
    return std::nullopt;
}

std::size_t Space::chart_count() const {
    std::size_t n = 1;
    for (std::size_t d : dims_) n *= d + 1;
    return n;
}

std::vector<std::size_t> Space::chart_dehom(std::size_t chart) const {
    // Lexicographic decode: the first factor varies slowest.
    std::vector<std::size_t> dehom(dims_.size());
    for (std::size_t i = dims_.size(); i-- > 0;) {
        dehom[i] = chart % (dims_[i] + 1);
        chart /= dims_[i] + 1;
    }
    return dehom;
}

std::string Space::chart_label(std::size_t chart) const {
    auto dehom = chart_dehom(chart);
    std::string label;
    for (std::size_t i = 0; i < dehom.size(); ++i) {
        if (i) label += ",";
        label += hom_names_[i][dehom[i]];
    }
    return label;
}

bool Space::boundary_contains_all_coordinate_hyperplanes() const {
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        for (std::size_t a = 0; a <= dims_[i]; ++a) {
            bool found = false;
            for (const auto& c : boundary_) {
                std::size_t idx;
                if (c.factor == i && c.is_coordinate(idx) && idx == a) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
    }
    return true;
}

std::size_t ChartGeometry::var_of_hom(std::size_t factor, std::size_t a) const {
    for (std::size_t v = 0; v < var_hom.size(); ++v)
        if (var_hom[v] == std::make_pair(factor, a)) return v;
    return static_cast<std::size_t>(-1);
}

std::optional<std::size_t> ChartGeometry::visible_index_of(std::size_t comp) const {
    for (std::size_t i = 0; i < visible.size(); ++i)
        if (visible[i].comp == comp) return i;
    return std::nullopt;
}

Poly ChartGeometry::product_of_visible_forms() const {
    Poly p = Poly::constant(base, Rational(1));
    for (const auto& v : visible) p = p * v.affine_form;
    return p;
}

ChartGeometry make_chart_geometry(const Space& X, std::size_t chart_index) {
    ChartGeometry g;
    g.chart_index = chart_index;
    g.dehom = X.chart_dehom(chart_index);
    g.label = X.chart_label(chart_index);

    std::vector<std::string> base_names;
    for (std::size_t i = 0; i < X.factor_count(); ++i) {
        for (std::size_t a = 0; a <= X.factor_dim(i); ++a) {
            if (a == g.dehom[i]) continue;
            base_names.push_back(lower(X.hom_name(i, a)));
            g.var_hom.emplace_back(i, a);
        }
    }
    g.base = make_context(base_names);

    for (std::size_t c = 0; c < X.boundary().size(); ++c) {
        const BoundaryComponent& comp = X.boundary()[c];
        // Dehomogenized form: sum of coeff * affine var, dehomogenizer -> 1.
        Poly form = Poly::zero(g.base);
        std::size_t dir = static_cast<std::size_t>(-1);
        for (std::size_t a = 0; a < comp.form.size(); ++a) {
            if (comp.form[a] == 0) continue;
            if (a == g.dehom[comp.factor]) {
                form = form + Poly::constant(g.base, comp.form[a]);
            } else {
                std::size_t v = g.var_of_hom(comp.factor, a);
                form = form + Poly::variable(g.base, v) * comp.form[a];
                dir = v;
            }
        }
        if (dir == static_cast<std::size_t>(-1)) continue; // constant: not visible here
        g.visible.push_back(VisibleComponent{c, dir, std::move(form)});
    }

    std::vector<std::string> phase_names = base_names;
    for (const auto& n : base_names) phase_names.push_back("xi_" + n);
    g.phase = make_context(phase_names);
    return g;
}

Poly dehomogenize(const Space& X, const ChartGeometry& g, const Poly& hom_poly) {
    std::vector<Poly> images;
    images.reserve(X.hom_context()->size());
    for (std::size_t i = 0; i < X.factor_count(); ++i) {
        for (std::size_t a = 0; a <= X.factor_dim(i); ++a) {
            if (a == g.dehom[i]) {
                images.push_back(Poly::constant(g.base, Rational(1)));
            } else {
                images.push_back(Poly::variable(g.base, g.var_of_hom(i, a)));
            }
        }
    }
    return hom_poly.compose(g.base, images);
}

Poly homogenize(const Space& X, const ChartGeometry& g, const Poly& affine_poly) {
    const ContextPtr& hom = X.hom_context();
    // Per-factor degree of each term, then pad with the dehomogenizer.
    std::vector<unsigned> maxdeg(X.factor_count(), 0);
    for (const auto& [e, c] : affine_poly.terms()) {
        std::vector<unsigned> d(X.factor_count(), 0);
        for (std::size_t v = 0; v < e.size(); ++v) d[g.var_hom[v].first] += e[v];
        for (std::size_t i = 0; i < d.size(); ++i) maxdeg[i] = std::max(maxdeg[i], d[i]);
    }
    Poly out = Poly::zero(hom);
    for (const auto& [e, c] : affine_poly.terms()) {
        ExpVec he(hom->size(), 0);
        std::vector<unsigned> d(X.factor_count(), 0);
        for (std::size_t v = 0; v < e.size(); ++v) {
            auto [factor, a] = g.var_hom[v];
            he[X.hom_var(factor, a)] = e[v];
            d[factor] += e[v];
        }
        for (std::size_t i = 0; i < X.factor_count(); ++i)
            he[X.hom_var(i, g.dehom[i])] = maxdeg[i] - d[i];
        out.add_term(he, c);
    }
    return out;
}

} // namespace logchi
