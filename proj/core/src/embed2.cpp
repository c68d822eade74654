#include "higman/embed2.hpp"

namespace higman {

EmbeddingVariant parse_variant(const std::string& s) {
  if (s == "general") return EmbeddingVariant::General;
  if (s == "short") return EmbeddingVariant::Short;
  throw std::invalid_argument("unknown variant '" + s + "' (general|short)");
}

std::string variant_name(EmbeddingVariant v) {
  return v == EmbeddingVariant::General ? "general" : "short";
}

Word universal_word(const Affine& i, EmbeddingVariant v) {
  if (i.is_constant() && i.c < 1)
    throw std::invalid_argument("universal word index must be >= 1, got " + std::to_string(i.c));
  const Generator b = Generator::b(), c = Generator::c();
  std::vector<Syllable> s = {{b, 1}, {c, -i}, {b, -1}, {c, -i}, {b, -1}, {c, 1},
                             {b, 1}, {c, i},  {b, 1},  {c, i}};
  if (v == EmbeddingVariant::General) {
    s.push_back({b, -2});
    s.push_back({c, -1});
    s.push_back({b, 1});
  } else {
    s.push_back({b, -1});
  }
  return Word(s);
}

Presentation embed_presentation(const Presentation& p, EmbeddingVariant v) {
  Presentation out;
  out.plain_gens = {"b", "c"};
  auto hom = [v](const Generator& g) -> std::optional<Word> {
    if (g.kind != Generator::Kind::AIndexed) return std::nullopt;
    return universal_word(g.index, v);
  };
  for (const auto& r : p.relators) {
    RelatorTemplate t;
    t.params = r.params;
    t.body = substitute(r.body, hom);
    out.relators.push_back(t);
  }
  return out;
}

}  // namespace higman
