#include <censtab/kan.hpp>

#include <algorithm>
#include <map>
#include <string>

namespace censtab {

namespace {

constexpr std::int64_t kMaxRelationColumns = 5'000'000;

// per-construction cache of evaluations and bases at each window level
struct DegreeCache {
  const ModulePresentation& p;
  std::map<int, PresentedModule> value;
  std::map<int, DegreeBasis> basis;

  explicit DegreeCache(const ModulePresentation& pres) : p(pres) {}
  const PresentedModule& val(int s) {
    auto it = value.find(s);
    if (it == value.end()) it = value.emplace(s, evaluate_degree(p, s)).first;
    return it->second;
  }
  const DegreeBasis& bas(int s) {
    auto it = basis.find(s);
    if (it == basis.end()) it = basis.emplace(s, degree_basis(p, s)).first;
    return it->second;
  }
};

void check_window(int lo, int hi) {
  if (lo < 0 || hi < lo) throw InvalidInput("window bounds must satisfy 0 <= lo <= hi");
}

BlockLayout make_layout(const ModulePresentation& p, DegreeCache& cache, int lo, int hi,
                        int degree) {
  BlockLayout layout;
  const Category& cat = *p.cat;
  for (int s = lo; s <= std::min(hi, degree); ++s) {
    const std::size_t homs = cat.hom(s, degree).size();
    const std::int64_t size = cache.val(s).ambient;
    for (std::size_t a = 0; a < homs; ++a) {
      layout.blocks.push_back({s, static_cast<int>(a), layout.total, size});
      layout.total += size;
    }
  }
  if (layout.total > (std::int64_t(1) << 31) - 1) {
    throw ResourceLimit("windowed ambient too large");
  }
  return layout;
}

// module relations of each level, embedded block by block
void append_block_relations(const BlockLayout& layout, DegreeCache& cache,
                            std::vector<SparseVec>& out) {
  for (const auto& b : layout.blocks) {
    for (const SparseVec& rel : cache.val(b.s).relations) {
      SparseVec col;
      col.reserve(rel.size());
      for (const auto& [r, v] : rel) {
        col.emplace_back(static_cast<std::int32_t>(b.offset + r), v);
      }
      out.push_back(std::move(col));
      if (static_cast<std::int64_t>(out.size()) > kMaxRelationColumns) {
        throw ResourceLimit("windowed construction exceeds the relation budget");
      }
    }
  }
}

// canonical comparison into the plain evaluation at `degree`: block (s, alpha)
// basis (i, a) -> basis (i, alpha o a)
ModuleMap make_canonical(const ModulePresentation& p, DegreeCache& cache,
                         const BlockLayout& layout, const PresentedModule& value,
                         int degree) {
  const Category& cat = *p.cat;
  ModuleMap map;
  map.domain = value;
  map.codomain = evaluate_degree(p, degree);
  DegreeBasis target = degree_basis(p, degree);
  map.cols.assign(static_cast<std::size_t>(layout.total), {});
  for (const auto& b : layout.blocks) {
    const DegreeBasis& src = cache.bas(b.s);
    for (std::size_t i = 0; i < p.gen_degrees.size(); ++i) {
      int gd = p.gen_degrees[i];
      if (gd > b.s) continue;
      const std::size_t fiber = cat.hom(gd, b.s).size();
      for (std::size_t a = 0; a < fiber; ++a) {
        std::int32_t comp = cat.compose_index(gd, b.s, degree, b.alpha, static_cast<int>(a));
        map.cols[static_cast<std::size_t>(b.offset + src.index(static_cast<int>(i),
                                                               static_cast<int>(a)))] = {
            {static_cast<std::int32_t>(target.index(static_cast<int>(i), comp)), Int(1)}};
      }
    }
  }
  return map;
}

void finalize_columns(const RingSpec& ring, std::vector<SparseVec>& cols) {
  std::vector<SparseVec> kept;
  kept.reserve(cols.size());
  for (auto& c : cols) {
    sparse_normalize(c);
    if (ring.is_field()) reduce_mod_p(c, ring.p);
    if (!c.empty()) kept.push_back(std::move(c));
  }
  cols = std::move(kept);
}

}  // namespace

int CommaCategory::object_index(int s, int alpha) const {
  auto it = std::lower_bound(objects.begin(), objects.end(), std::pair(s, alpha),
                             [](const Object& o, const std::pair<int, int>& key) {
                               return std::pair(o.s, o.alpha) < key;
                             });
  if (it == objects.end() || it->s != s || it->alpha != alpha) return -1;
  return static_cast<int>(it - objects.begin());
}

int BlockLayout::block_index(int s, int alpha) const {
  auto it = std::lower_bound(blocks.begin(), blocks.end(), std::pair(s, alpha),
                             [](const Block& b, const std::pair<int, int>& key) {
                               return std::pair(b.s, b.alpha) < key;
                             });
  if (it == blocks.end() || it->s != s || it->alpha != alpha) return -1;
  return static_cast<int>(it - blocks.begin());
}

CommaCategory comma_category(const Category& cat, int window_lo, int window_hi, int target) {
  check_window(window_lo, window_hi);
  if (target < 0) throw InvalidInput("target object must be nonnegative");
  CommaCategory comma;
  comma.window_lo = window_lo;
  comma.window_hi = window_hi;
  comma.target = target;

  std::map<int, int> level_offset;  // s -> index of first object at s
  for (int s = window_lo; s <= std::min(window_hi, target); ++s) {
    const std::size_t homs = cat.hom(s, target).size();
    if (homs == 0) continue;
    level_offset[s] = static_cast<int>(comma.objects.size());
    for (std::size_t a = 0; a < homs; ++a) {
      comma.objects.push_back({s, static_cast<int>(a)});
    }
  }
  for (const auto& [s_src, src_off] : level_offset) {
    for (const auto& [s_tgt, tgt_off] : level_offset) {
      if (s_tgt < s_src) continue;
      const std::size_t n_phi = cat.hom(s_src, s_tgt).size();
      const std::size_t n_alpha = cat.hom(s_tgt, target).size();
      if (n_phi == 0) continue;
      const auto& table = cat.compose_table(s_src, s_tgt, target);
      for (std::size_t al = 0; al < n_alpha; ++al) {
        for (std::size_t phi = 0; phi < n_phi; ++phi) {
          int src_alpha = table[al * n_phi + phi];
          comma.arrows.push_back({src_off + src_alpha, tgt_off + static_cast<int>(al),
                                  static_cast<int>(phi)});
        }
      }
    }
  }
  return comma;
}

KanValue kan_value_colimit(const ModulePresentation& p, int window_lo, int window_hi,
                           int degree) {
  check_window(window_lo, window_hi);
  validate_presentation(p);
  const Category& cat = *p.cat;
  DegreeCache cache(p);
  CommaCategory comma = comma_category(cat, window_lo, window_hi, degree);

  KanValue out;
  out.window_lo = window_lo;
  out.window_hi = window_hi;
  out.degree = degree;
  out.layout = make_layout(p, cache, window_lo, window_hi, degree);

  std::vector<SparseVec> cols;
  append_block_relations(out.layout, cache, cols);

  for (const auto& arrow : comma.arrows) {
    const auto& src_obj = comma.objects[static_cast<std::size_t>(arrow.src)];
    const auto& tgt_obj = comma.objects[static_cast<std::size_t>(arrow.tgt)];
    const int s = src_obj.s, t = tgt_obj.s;
    if (s == t && cat.hom(s, t)[static_cast<std::size_t>(arrow.phi)] == cat.identity(s)) {
      continue;  // identity arrows contribute zero columns
    }
    int src_block = out.layout.block_index(src_obj.s, src_obj.alpha);
    int tgt_block = out.layout.block_index(tgt_obj.s, tgt_obj.alpha);
    const auto& sb = out.layout.blocks[static_cast<std::size_t>(src_block)];
    const auto& tb = out.layout.blocks[static_cast<std::size_t>(tgt_block)];
    const DegreeBasis& src_basis = cache.bas(s);
    const DegreeBasis& tgt_basis = cache.bas(t);
    for (std::size_t i = 0; i < p.gen_degrees.size(); ++i) {
      int gd = p.gen_degrees[i];
      if (gd > s) continue;
      const std::size_t fiber = cat.hom(gd, s).size();
      for (std::size_t a = 0; a < fiber; ++a) {
        std::int32_t comp = cat.compose_index(gd, s, t, arrow.phi, static_cast<int>(a));
        SparseVec col;
        col.emplace_back(
            static_cast<std::int32_t>(tb.offset +
                                      tgt_basis.index(static_cast<int>(i), comp)),
            Int(1));
        col.emplace_back(
            static_cast<std::int32_t>(sb.offset +
                                      src_basis.index(static_cast<int>(i), static_cast<int>(a))),
            Int(-1));
        cols.push_back(std::move(col));
        if (static_cast<std::int64_t>(cols.size()) > kMaxRelationColumns) {
          throw ResourceLimit("windowed construction exceeds the relation budget");
        }
      }
    }
  }

  finalize_columns(p.ring, cols);
  out.value.ring = p.ring;
  out.value.ambient = out.layout.total;
  out.value.relations = std::move(cols);
  out.canonical = make_canonical(p, cache, out.layout, out.value, degree);
  return out;
}

KanValue kan_value_tensor(const ModulePresentation& p, int window_lo, int window_hi,
                          int degree) {
  check_window(window_lo, window_hi);
  validate_presentation(p);
  const Category& cat = *p.cat;
  DegreeCache cache(p);

  KanValue out;
  out.window_lo = window_lo;
  out.window_hi = window_hi;
  out.degree = degree;
  out.layout = make_layout(p, cache, window_lo, window_hi, degree);

  std::vector<SparseVec> cols;
  append_block_relations(out.layout, cache, cols);

  const int top = std::min(window_hi, degree);
  for (int s2 = window_lo; s2 <= top; ++s2) {
    const std::size_t n_alpha = cat.hom(s2, degree).size();
    if (n_alpha == 0) continue;
    for (int s1 = window_lo; s1 <= s2; ++s1) {
      const std::size_t n_gamma = cat.hom(s1, s2).size();
      if (n_gamma == 0) continue;
      int id_idx = s1 == s2 ? cat.hom_index(cat.identity(s1)) : -1;
      const auto& mix = cat.compose_table(s1, s2, degree);
      const DegreeBasis& b1 = cache.bas(s1);
      const DegreeBasis& b2 = cache.bas(s2);
      for (std::size_t al = 0; al < n_alpha; ++al) {
        int tgt_block = out.layout.block_index(s2, static_cast<int>(al));
        const auto& tb = out.layout.blocks[static_cast<std::size_t>(tgt_block)];
        for (std::size_t g = 0; g < n_gamma; ++g) {
          if (static_cast<int>(g) == id_idx) continue;
          int src_alpha = mix[al * n_gamma + g];
          const auto& sb = out.layout.blocks[static_cast<std::size_t>(
              out.layout.block_index(s1, src_alpha))];
          for (std::size_t i = 0; i < p.gen_degrees.size(); ++i) {
            int gd = p.gen_degrees[i];
            if (gd > s1) continue;
            const std::size_t fiber = cat.hom(gd, s1).size();
            for (std::size_t a = 0; a < fiber; ++a) {
              std::int32_t comp =
                  cat.compose_index(gd, s1, s2, static_cast<int>(g), static_cast<int>(a));
              SparseVec col;
              col.emplace_back(
                  static_cast<std::int32_t>(sb.offset + b1.index(static_cast<int>(i),
                                                                 static_cast<int>(a))),
                  Int(1));
              col.emplace_back(
                  static_cast<std::int32_t>(tb.offset + b2.index(static_cast<int>(i), comp)),
                  Int(-1));
              cols.push_back(std::move(col));
              if (static_cast<std::int64_t>(cols.size()) > kMaxRelationColumns) {
                throw ResourceLimit("windowed construction exceeds the relation budget");
              }
            }
          }
        }
      }
    }
  }

  finalize_columns(p.ring, cols);
  out.value.ring = p.ring;
  out.value.ambient = out.layout.total;
  out.value.relations = std::move(cols);
  out.canonical = make_canonical(p, cache, out.layout, out.value, degree);
  return out;
}

ModuleMap comparison_map(const KanValue& tensor, const KanValue& colimit) {
  if (tensor.degree != colimit.degree || tensor.window_lo != colimit.window_lo ||
      tensor.window_hi != colimit.window_hi) {
    throw InvalidInput("comparison requires matching windows and degree");
  }
  if (tensor.layout.total != colimit.layout.total) {
    throw InvalidInput("comparison requires identical block layouts");
  }
  ModuleMap map;
  map.domain = tensor.value;
  map.codomain = colimit.value;
  map.cols.reserve(static_cast<std::size_t>(tensor.layout.total));
  for (std::int64_t j = 0; j < tensor.layout.total; ++j) {
    map.cols.push_back({{static_cast<std::int32_t>(j), Int(1)}});
  }
  return map;
}

ModuleMap window_inclusion_map(const KanValue& narrow, const KanValue& wide) {
  if (narrow.degree != wide.degree) throw InvalidInput("degrees differ");
  if (narrow.window_lo < wide.window_lo || narrow.window_hi > wide.window_hi) {
    throw InvalidInput("narrow window is not contained in the wide window");
  }
  ModuleMap map;
  map.domain = narrow.value;
  map.codomain = wide.value;
  map.cols.assign(static_cast<std::size_t>(narrow.layout.total), {});
  for (const auto& b : narrow.layout.blocks) {
    int wb_idx = wide.layout.block_index(b.s, b.alpha);
    if (wb_idx < 0) throw InvalidInput("block missing from the wide layout");
    const auto& wb = wide.layout.blocks[static_cast<std::size_t>(wb_idx)];
    for (std::int64_t r = 0; r < b.size; ++r) {
      map.cols[static_cast<std::size_t>(b.offset + r)] = {
          {static_cast<std::int32_t>(wb.offset + r), Int(1)}};
    }
  }
  return map;
}

KanValue fi_subset_colimit_oracle(const ModulePresentation& p, int window_lo, int window_hi,
                                  int degree) {
  check_window(window_lo, window_hi);
  validate_presentation(p);
  const Category& cat = *p.cat;
  if (cat.family() != Category::Family::FI || cat.id() != "fi") {
    throw InvalidInput("the subset oracle only applies to the plain injection category");
  }
  DegreeCache cache(p);

  // enumerate subsets of [degree] by (size, lexicographic on sorted elements)
  std::vector<std::vector<std::int32_t>> subsets;
  std::map<std::vector<std::int32_t>, int> subset_index;
  for (int k = window_lo; k <= std::min(window_hi, degree); ++k) {
    std::vector<std::int32_t> cur(static_cast<std::size_t>(k));
    auto rec = [&](auto&& self, int pos, int next) -> void {
      if (pos == k) {
        subset_index[cur] = static_cast<int>(subsets.size());
        subsets.push_back(cur);
        return;
      }
      for (int v = next; v <= degree; ++v) {
        cur[static_cast<std::size_t>(pos)] = v;
        self(self, pos + 1, v + 1);
      }
    };
    rec(rec, 0, 1);
  }

  KanValue out;
  out.window_lo = window_lo;
  out.window_hi = window_hi;
  out.degree = degree;
  for (std::size_t si = 0; si < subsets.size(); ++si) {
    int k = static_cast<int>(subsets[si].size());
    out.layout.blocks.push_back(
        {k, static_cast<int>(si), out.layout.total, cache.val(k).ambient});
    out.layout.total += cache.val(k).ambient;
  }

  std::vector<SparseVec> cols;
  append_block_relations(out.layout, cache, cols);

  // covering inclusions S = T \ {x} -> T, acting through position maps
  for (std::size_t ti = 0; ti < subsets.size(); ++ti) {
    const auto& T = subsets[ti];
    int k1 = static_cast<int>(T.size());
    if (k1 - 1 < window_lo) continue;
    const auto& tb = out.layout.blocks[ti];
    const DegreeBasis& tgt_basis = cache.bas(k1);
    for (int drop = 0; drop < k1; ++drop) {
      std::vector<std::int32_t> S;
      S.reserve(static_cast<std::size_t>(k1 - 1));
      for (int j = 0; j < k1; ++j) {
        if (j != drop) S.push_back(T[static_cast<std::size_t>(j)]);
      }
      const auto& sb = out.layout.blocks[static_cast<std::size_t>(subset_index.at(S))];
      // phi: [k1-1] -> [k1] sending position i of S to its position in T
      Morphism phi;
      phi.src = k1 - 1;
      phi.tgt = k1;
      phi.data.resize(static_cast<std::size_t>(k1 - 1));
      for (int j = 0, w = 0; j < k1; ++j) {
        if (j == drop) continue;
        phi.data[static_cast<std::size_t>(w++)] = static_cast<std::int32_t>(j + 1);
      }
      int phi_idx = cat.hom_index(phi);
      const DegreeBasis& src_basis = cache.bas(k1 - 1);
      for (std::size_t i = 0; i < p.gen_degrees.size(); ++i) {
        int gd = p.gen_degrees[i];
        if (gd > k1 - 1) continue;
        const std::size_t fiber = cat.hom(gd, k1 - 1).size();
        for (std::size_t a = 0; a < fiber; ++a) {
          std::int32_t comp =
              cat.compose_index(gd, k1 - 1, k1, phi_idx, static_cast<int>(a));
          SparseVec col;
          col.emplace_back(static_cast<std::int32_t>(
                               tb.offset + tgt_basis.index(static_cast<int>(i), comp)),
                           Int(1));
          col.emplace_back(
              static_cast<std::int32_t>(sb.offset + src_basis.index(static_cast<int>(i),
                                                                    static_cast<int>(a))),
              Int(-1));
          cols.push_back(std::move(col));
        }
      }
    }
  }

  finalize_columns(p.ring, cols);
  out.value.ring = p.ring;
  out.value.ambient = out.layout.total;
  out.value.relations = std::move(cols);

  // canonical map: block S, basis (i, a) -> (i, incl_S o a) with incl_S the
  // increasing injection [|S|] -> [degree] with image S
  out.canonical.domain = out.value;
  out.canonical.codomain = evaluate_degree(p, degree);
  DegreeBasis target = degree_basis(p, degree);
  out.canonical.cols.assign(static_cast<std::size_t>(out.layout.total), {});
  for (std::size_t si = 0; si < subsets.size(); ++si) {
    const auto& S = subsets[si];
    int k = static_cast<int>(S.size());
    Morphism incl;
    incl.src = k;
    incl.tgt = degree;
    incl.data = S;
    int incl_idx = cat.hom_index(incl);
    const auto& b = out.layout.blocks[si];
    const DegreeBasis& src_basis = cache.bas(k);
    for (std::size_t i = 0; i < p.gen_degrees.size(); ++i) {
      int gd = p.gen_degrees[i];
      if (gd > k) continue;
      const std::size_t fiber = cat.hom(gd, k).size();
      for (std::size_t a = 0; a < fiber; ++a) {
        std::int32_t comp = cat.compose_index(gd, k, degree, incl_idx, static_cast<int>(a));
        out.canonical.cols[static_cast<std::size_t>(
            b.offset + src_basis.index(static_cast<int>(i), static_cast<int>(a)))] = {
            {static_cast<std::int32_t>(target.index(static_cast<int>(i), comp)), Int(1)}};
      }
    }
  }
  return out;
}

}  // namespace censtab
