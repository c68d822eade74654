#pragma once

#include "higman/words.hpp"

namespace higman {

enum class EmbeddingVariant { General, Short };

EmbeddingVariant parse_variant(const std::string& s);  // "general" | "short"
std::string variant_name(EmbeddingVariant v);

// a_i(b,c) for the general variant, the shorter torsion-free word otherwise.
// Throws std::invalid_argument for a concrete index below 1.
Word universal_word(const Affine& i, EmbeddingVariant v);

// Replaces every a[i] by universal_word(i); result is a presentation over b, c.
Presentation embed_presentation(const Presentation& p, EmbeddingVariant v);

}  // namespace higman
