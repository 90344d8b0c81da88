#pragma once

#include <cstddef>
#include <string>

#include "logchi/poly.hpp"

namespace logchi {

enum class OrderKind { Grevlex, Lex, Block };

// A monomial order refining divisibility. Block orders compare the
// leading block [0, split) first (grevlex within blocks) and are what
// elimination and saturation run on; the engine never auto-selects lex.
struct MonomialOrder {
    OrderKind kind = OrderKind::Grevlex;
    std::size_t block_split = 0;

    static MonomialOrder grevlex() { return {OrderKind::Grevlex, 0}; }
    static MonomialOrder lex() { return {OrderKind::Lex, 0}; }
    static MonomialOrder block(std::size_t split) { return {OrderKind::Block, split}; }

    // +1 if a > b, 0 if equal, -1 if a < b.
    int compare(const ExpVec& a, const ExpVec& b) const;

    std::string cache_key() const;
};

} // namespace logchi
