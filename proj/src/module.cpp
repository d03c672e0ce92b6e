#include <censtab/module.hpp>

#include <algorithm>
#include <string>

namespace censtab {

int ModulePresentation::presentation_degree() const {
  int d = 0;
  for (int g : gen_degrees) d = std::max(d, g);
  for (const auto& r : relations) d = std::max(d, r.degree);
  return d;
}

ModulePresentation ModulePresentation::free_module(CategoryPtr cat, RingSpec ring,
                                                   std::vector<int> degrees) {
  ModulePresentation p;
  p.cat = std::move(cat);
  p.ring = ring;
  p.gen_degrees = std::move(degrees);
  validate_presentation(p);
  return p;
}

void validate_presentation(const ModulePresentation& p) {
  if (!p.cat) throw InvalidInput("module presentation has no category");
  const Category& cat = *p.cat;
  int top = -1;
  if (cat.family() == Category::Family::Presented) {
    top = cat.presentation().objects_max;
  }
  for (int d : p.gen_degrees) {
    if (d < 0) throw InvalidInput("generator degree must be nonnegative");
    if (top >= 0 && d > top) throw InvalidInput("generator degree exceeds the object range");
  }
  for (std::size_t j = 0; j < p.relations.size(); ++j) {
    const auto& rel = p.relations[j];
    if (rel.degree < 0) throw InvalidInput("relation degree must be nonnegative");
    if (top >= 0 && rel.degree > top) throw InvalidInput("relation degree exceeds the object range");
    if (rel.terms.empty()) throw InvalidInput("relation " + std::to_string(j) + " has no terms");
    for (const auto& t : rel.terms) {
      if (t.gen < 0 || t.gen >= static_cast<int>(p.gen_degrees.size())) {
        throw InvalidInput("relation " + std::to_string(j) + " references an unknown generator");
      }
      int gd = p.gen_degrees[static_cast<std::size_t>(t.gen)];
      if (gd > rel.degree) {
        throw InvalidInput("relation " + std::to_string(j) +
                           " uses a generator of higher degree than the relation");
      }
      Int count = cat.hom_size(gd, rel.degree);
      if (t.hom_index < 0 || Int(t.hom_index) >= count) {
        throw InvalidInput("relation " + std::to_string(j) + " indexes a morphism out of range");
      }
    }
  }
}

DegreeBasis degree_basis(const ModulePresentation& p, int degree) {
  DegreeBasis b;
  b.degree = degree;
  b.offsets.reserve(p.gen_degrees.size());
  for (int gd : p.gen_degrees) {
    b.offsets.push_back(b.total);
    if (gd <= degree) {
      b.total += static_cast<std::int64_t>(p.cat->hom(gd, degree).size());
    }
  }
  if (b.total > (std::int64_t(1) << 31) - 1) {
    throw ResourceLimit("degree basis too large");
  }
  return b;
}

PresentedModule evaluate_degree(const ModulePresentation& p, int degree) {
  const Category& cat = *p.cat;
  DegreeBasis basis = degree_basis(p, degree);
  PresentedModule m;
  m.ring = p.ring;
  m.ambient = basis.total;
  for (const auto& rel : p.relations) {
    if (rel.degree > degree) continue;
    const auto& translates = cat.hom(rel.degree, degree);
    for (std::size_t bi = 0; bi < translates.size(); ++bi) {
      SparseVec col;
      col.reserve(rel.terms.size());
      for (const auto& t : rel.terms) {
        int gd = p.gen_degrees[static_cast<std::size_t>(t.gen)];
        std::int32_t composite = cat.compose_index(gd, rel.degree, degree,
                                                   static_cast<int>(bi), t.hom_index);
        col.emplace_back(static_cast<std::int32_t>(basis.index(t.gen, composite)), t.coeff);
      }
      sparse_normalize(col);
      if (p.ring.is_field()) reduce_mod_p(col, p.ring.p);
      if (!col.empty()) m.relations.push_back(std::move(col));
    }
  }
  return m;
}

ModuleMap induced_map(const ModulePresentation& p, const Morphism& f) {
  const Category& cat = *p.cat;
  ModuleMap map;
  map.domain = evaluate_degree(p, f.src);
  map.codomain = evaluate_degree(p, f.tgt);
  DegreeBasis src = degree_basis(p, f.src);
  DegreeBasis tgt = degree_basis(p, f.tgt);
  map.cols.assign(static_cast<std::size_t>(src.total), {});
  const int f_idx = cat.hom_index(f);
  for (std::size_t i = 0; i < p.gen_degrees.size(); ++i) {
    int gd = p.gen_degrees[i];
    if (gd > f.src) continue;
    const std::size_t block = cat.hom(gd, f.src).size();
    for (std::size_t a = 0; a < block; ++a) {
      std::int32_t composite = cat.compose_index(gd, f.src, f.tgt, f_idx, static_cast<int>(a));
      map.cols[static_cast<std::size_t>(src.index(static_cast<int>(i), static_cast<int>(a)))] = {
          {static_cast<std::int32_t>(tgt.index(static_cast<int>(i), composite)), Int(1)}};
    }
  }
  return map;
}

}  // namespace censtab
