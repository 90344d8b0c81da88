#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logchi/ideal.hpp"
#include "logchi/space.hpp"

namespace logchi {

// The section of the log cotangent bundle given by scale * dlog f, for a
// rational function f whose divisor is supported on the boundary. f is
// stored as integer exponents over the boundary components (this is what
// guarantees div f lies on D).
class LogSection {
public:
    LogSection(const Space& X, std::vector<long long> exponents, Rational scale);

    // Parses f as a ratio of products of boundary component forms, given
    // either in homogeneous coordinates ("X/Y") or in the default chart's
    // affine coordinates ("x/(x-1)"); validated by trial division.
    static LogSection from_expression(const Space& X, const std::string& f_text,
                                      const Rational& scale);

    const std::vector<long long>& exponents() const { return exps_; }
    const Rational& scale() const { return scale_; }

    // Ordinary-frame component of scale * dlog f along d(base var) in a
    // chart; regular away from the visible boundary.
    RatFunc xi_value(const ChartGeometry& g, std::size_t base_var) const;

    std::string f_str(const Space& X) const;

private:
    std::vector<long long> exps_;
    Rational scale_;
};

// A conic Lagrangian cycle in the log cotangent bundle, presented by
// constructors (zero section, conormals of smooth hypersurfaces in U) or
// by raw per-chart ideals. Internally every component knows its
// ordinary-frame ideal over each chart's torus part; log closures are
// taken chart-by-chart during counting.
class LagCycle {
public:
    enum class Kind { ZeroSection, Conormal, Raw };

    struct Component {
        std::string label;
        long long multiplicity = 1;
        Kind kind = Kind::ZeroSection;
        Poly hom_form;                                     // Conormal
        std::map<std::size_t, std::vector<Poly>> raw_gens; // Raw: chart -> ordinary gens
    };

    static LagCycle zero_section(const Space& X);
    // f_affine over the chart's base context; the hypersurface must be
    // smooth on U and meet U (checked in every chart).
    static LagCycle conormal(const Space& X, std::size_t input_chart, const Poly& f_affine,
                             std::string label = {}, const GbOptions& opts = {});
    // gens over the chart's toric log frame (eta_<v> for directions with a
    // unique visible component, xi_<v> otherwise); each generator must be
    // homogeneous in the fiber variables. The component must be the
    // closure of its restriction to this chart's torus.
    static LagCycle raw(const Space& X, std::size_t chart,
                        const std::vector<std::string>& gen_texts, long long multiplicity,
                        std::string label);
    // Raw from ordinary-frame generators, possibly on several charts.
    static LagCycle raw_ordinary(const Space& X,
                                 std::map<std::size_t, std::vector<Poly>> gens_by_chart,
                                 long long multiplicity, std::string label);

    LagCycle& operator+=(const LagCycle& more);
    LagCycle scaled(long long multiplier) const;
    const std::vector<Component>& components() const { return components_; }

    // Ordinary-frame generators of one component over g.phase (raw
    // components are transported by the monomial chart transition).
    std::vector<Poly> ordinary_gens(const Space& X, const ChartGeometry& g,
                                    std::size_t comp_idx, const GbOptions& opts = {}) const;

    // Log closure of the component over the chart: generators saturated by
    // every visible boundary equation.
    Ideal closure_ideal(const Space& X, const ChartGeometry& g, std::size_t comp_idx,
                        const GbOptions& opts = {}) const;

private:
    std::vector<Component> components_;
};

// The toric log frame names eta_<v>/xi_<v> for a chart (used by the raw
// constructor and the sharp-family printer).
ContextPtr toric_frame_context(const ChartGeometry& g);
// eta_v -> g_v * xi_v : toric-frame polynomial into the ordinary frame.
Poly toric_frame_to_ordinary(const ChartGeometry& g, const Poly& p);

// Display helper: rewrite generators over [base, xi fiber, extra...] into
// the chart's toric log frame (eta_v = g_v xi_v cleared and saturated),
// returning the renamed context and transformed generators.
std::pair<ContextPtr, std::vector<Poly>> toric_display(const ChartGeometry& g,
                                                       const std::vector<Poly>& gens,
                                                       const GbOptions& opts = {});

struct PointRecord {
    std::vector<std::pair<std::string, std::string>> coordinates; // name -> value
};

struct StratumEntry {
    std::string chart;
    std::vector<std::string> stratum; // component labels; empty = open stratum U
    long long count = 0;
    std::vector<PointRecord> points;
};

struct ComponentCount {
    std::string label;
    long long multiplicity = 1;
    long long degree = 0; // sum of stratum counts (unweighted)
    std::vector<StratumEntry> strata;
};

struct CountReport {
    long long total = 0; // sum of multiplicity * degree
    std::vector<ComponentCount> components;
    std::vector<std::string> warnings;
    std::string f;
    std::string scale;
};

struct CountOptions {
    GbOptions gb;
    bool extract_points = true;
    // Rotates the chart enumeration (testing hook: totals must not move).
    std::size_t chart_rotation = 0;
};

// Stratified intersection count of the closed cycle with the section.
// Throws nontransverse_error when the combined ideal is positive-
// dimensional over some stratum.
CountReport intersect_count(const Space& X, const LagCycle& cycle, const LogSection& section,
                            const CountOptions& opts = {});

// Sum of n_v * gdeg over the listed cycles (outer multiplicities applied).
long long euler_char(const Space& X, const std::vector<std::pair<LagCycle, long long>>& cycles,
                     const LogSection& section, const CountOptions& opts = {});

// The deformation family obtained by shearing a cycle with
// sum_l s_l * dlog f_l; the fiber at s = 0 is the input cycle. One
// parameter per section: "s" for a single f, "s1", "s2", ... for a list.
class SharpFamily {
public:
    SharpFamily(const Space& X, const LagCycle& cycle, const LogSection& section,
                const GbOptions& opts = {});
    SharpFamily(const Space& X, const LagCycle& cycle, std::vector<LogSection> sections,
                const GbOptions& opts = {});

    std::size_t parameter_count() const { return nparams_; }
    // Family context of a chart: base vars, ordinary fiber vars, parameters.
    const ContextPtr& family_context(std::size_t chart) const;
    const std::vector<Poly>& gens(std::size_t chart, std::size_t comp_idx) const;

    // Fiber at rational parameter values, as a raw multichart cycle.
    LagCycle fiber(const std::vector<Rational>& s0, const GbOptions& opts = {}) const;
    LagCycle fiber(const Rational& s0, const GbOptions& opts = {}) const;

    const Space& space() const { return *space_; }
    std::size_t component_count() const { return gens_.empty() ? 0 : gens_.front().size(); }

private:
    const Space* space_;
    std::size_t nparams_ = 1;
    std::vector<std::string> labels_;
    std::vector<long long> mults_;
    std::vector<ContextPtr> ctx_;                 // per chart
    std::vector<std::vector<std::vector<Poly>>> gens_; // [chart][component]
};

} // namespace logchi
