#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "logchi/errors.hpp"

namespace logchi {

// An ordered, immutable list of variable names. Every Poly refers to
// exactly one context; the order fixes exponent-vector layout for life.
class VarContext {
public:
    explicit VarContext(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty()) throw input_error("empty variable name");
            if (!index_.emplace(names_[i], i).second)
                throw input_error("duplicate variable name: " + names_[i]);
        }
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<std::size_t> index_of(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool operator==(const VarContext& other) const { return names_ == other.names_; }
    bool operator!=(const VarContext& other) const { return !(*this == other); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

using ContextPtr = std::shared_ptr<const VarContext>;

inline ContextPtr make_context(std::vector<std::string> names) {
    return std::make_shared<const VarContext>(std::move(names));
}

inline bool same_context(const ContextPtr& a, const ContextPtr& b) {
    return a == b || (a && b && *a == *b);
}

} // namespace logchi
