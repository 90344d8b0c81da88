#pragma once

#include <stdexcept>
#include <string>

namespace logchi {

// Bad user input: malformed expressions, unknown variables, context
// mismatches, invalid geometry descriptions.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A step budget (Groebner reductions, span depth) was exhausted.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// A cycle/section intersection was positive-dimensional on some stratum.
class nontransverse_error : public std::runtime_error {
public:
    nontransverse_error(const std::string& what, std::string component,
                        std::string stratum, std::string chart)
        : std::runtime_error(what),
          component_(std::move(component)),
          stratum_(std::move(stratum)),
          chart_(std::move(chart)) {}

    const std::string& component() const { return component_; }
    const std::string& stratum() const { return stratum_; }
    const std::string& chart() const { return chart_; }

private:
    std::string component_;
    std::string stratum_;
    std::string chart_;
};

// An internal invariant broke; always a bug.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace logchi
