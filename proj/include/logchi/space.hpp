#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "logchi/poly.hpp"

namespace logchi {

// One irreducible boundary component: the zero locus of a linear form in
// the homogeneous coordinates of a single factor. Factors of dimension
// >= 2 only carry coordinate hyperplanes; on P^1 factors any rational
// point is allowed (distinct points are automatically normal crossing).
struct BoundaryComponent {
    std::size_t factor = 0;
    std::vector<Rational> form; // length = factor dim + 1, first nonzero coeff = 1
    std::string label;

    bool is_coordinate(std::size_t& hom_index) const;
};

// A product of projective spaces with a boundary divisor made of
// factor-wise linear components. U is the complement of the divisor.
class Space {
public:
    explicit Space(std::vector<std::size_t> factor_dims);

    std::size_t factor_count() const { return dims_.size(); }
    std::size_t factor_dim(std::size_t i) const { return dims_.at(i); }
    std::size_t dim() const; // sum of factor dims

    const std::string& hom_name(std::size_t factor, std::size_t a) const {
        return hom_names_.at(factor).at(a);
    }
    // Context of all homogeneous coordinates, factor by factor.
    const ContextPtr& hom_context() const { return hom_ctx_; }
    std::size_t hom_var(std::size_t factor, std::size_t a) const;

    void add_coordinate_component(std::size_t factor, std::size_t a);
    // Finite point x = lambda on a P^1 factor (x = first/second hom coord).
    void add_p1_point(std::size_t factor, const Rational& lambda);
    void add_p1_infinity(std::size_t factor);
    void add_toric_boundary(); // every coordinate hyperplane of every factor

    const std::vector<BoundaryComponent>& boundary() const { return boundary_; }
    // Component form as a polynomial over hom_context().
    Poly component_form(std::size_t comp) const;
    // Index of the component with this label, if any.
    std::optional<std::size_t> component_by_label(const std::string& label) const;

    // Charts: one dehomogenizing coordinate per factor, enumerated in
    // lexicographic order of the index tuples.
    std::size_t chart_count() const;
    std::vector<std::size_t> chart_dehom(std::size_t chart) const;
    std::string chart_label(std::size_t chart) const;
    // The chart dehomogenizing by the last coordinate of every factor
    // (the standard affine patch; x = X/Z, y = Y/Z on P^2).
    std::size_t default_chart() const { return chart_count() - 1; }

    // True when every coordinate hyperplane of every factor lies on the
    // boundary (full toric boundary possibly plus extra P^1 points).
    bool boundary_contains_all_coordinate_hyperplanes() const;

private:
    void check_new_component(const BoundaryComponent& c) const;

    std::vector<std::size_t> dims_;
    std::vector<std::vector<std::string>> hom_names_;
    std::vector<BoundaryComponent> boundary_;
    ContextPtr hom_ctx_;
    std::vector<std::size_t> hom_offsets_;
};

// Everything the cycle machinery needs about one chart: affine variable
// layout, visible boundary components with their affine equations, the
// phase-space context with ordinary fiber coordinates appended.
struct VisibleComponent {
    std::size_t comp;     // index into Space::boundary()
    std::size_t dir_var;  // base variable whose differential spans d(form)
    Poly affine_form;     // over the base context
};

struct ChartGeometry {
    std::size_t chart_index = 0;
    std::vector<std::size_t> dehom;
    std::string label;
    ContextPtr base; // n affine coordinates
    // Per base variable: (factor, hom index) it dehomogenizes.
    std::vector<std::pair<std::size_t, std::size_t>> var_hom;
    std::vector<VisibleComponent> visible;
    // base vars followed by ordinary fiber coordinates xi_<var>.
    ContextPtr phase;

    std::size_t fiber_slot(std::size_t base_var) const { return base->size() + base_var; }
    // Affine variable for homogeneous coordinate (factor, a); npos when a
    // is the dehomogenizer.
    std::size_t var_of_hom(std::size_t factor, std::size_t a) const;
    std::optional<std::size_t> visible_index_of(std::size_t comp) const;
    Poly product_of_visible_forms() const;
};

ChartGeometry make_chart_geometry(const Space& X, std::size_t chart_index);

// Dehomogenize a multi-homogeneous polynomial over hom_context() into the
// chart's base context (set the dehomogenizing coordinates to 1).
Poly dehomogenize(const Space& X, const ChartGeometry& g, const Poly& hom_poly);

// Homogenize an affine polynomial from the chart back to hom_context(),
// factor by factor (minimal multi-degree).
Poly homogenize(const Space& X, const ChartGeometry& g, const Poly& affine_poly);

} // namespace logchi
