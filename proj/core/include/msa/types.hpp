#pragma once

#include <cstdint>
#include <limits>

namespace msa {

// Dense 0-based identifier of a concept (one retained corpus article).
using ConceptId = std::uint32_t;

inline constexpr ConceptId kNoConcept = std::numeric_limits<ConceptId>::max();

}  // namespace msa
