#include <censtab/laws.hpp>

#include <algorithm>
#include <sstream>

namespace censtab {

LawReport check_category_laws(const Category& cat, int max_degree) {
  LawReport rep;
  int top = max_degree;
  if (cat.family() == Category::Family::Presented) {
    top = std::min(top, cat.presentation().objects_max);
  }
  auto fail = [&](const std::string& what) {
    if (rep.ok) {
      rep.ok = false;
      rep.detail = what;
    }
  };

  // identities are canonical
  for (int n = 0; n <= top && rep.ok; ++n) {
    Morphism id = cat.identity(n);
    const auto& ends = cat.hom(n, n);
    if (std::find(ends.begin(), ends.end(), id) == ends.end()) {
      fail("identity of " + std::to_string(n) + " is not a canonical endomorphism");
    }
  }

  // closure and identity laws; building a table validates every composite
  // through hom_index
  for (int m = 0; m <= top && rep.ok; ++m) {
    for (int n = m; n <= top && rep.ok; ++n) {
      const auto& H = cat.hom(m, n);
      if (H.empty()) continue;
      int idm = cat.hom_index(cat.identity(m));
      int idn = cat.hom_index(cat.identity(n));
      const auto& right = cat.compose_table(m, m, n);
      const auto& left = cat.compose_table(m, n, n);
      std::size_t id_count = cat.hom(m, m).size();
      for (std::size_t fi = 0; fi < H.size() && rep.ok; ++fi) {
        if (right[fi * id_count + static_cast<std::size_t>(idm)] != static_cast<std::int32_t>(fi)) {
          fail("f o id != f at hom(" + std::to_string(m) + ", " + std::to_string(n) + ") index " +
               std::to_string(fi));
        }
        if (left[static_cast<std::size_t>(idn) * H.size() + fi] != static_cast<std::int32_t>(fi)) {
          fail("id o f != f at hom(" + std::to_string(m) + ", " + std::to_string(n) + ") index " +
               std::to_string(fi));
        }
      }
      for (int l = m; l <= n && rep.ok; ++l) {
        rep.pairs_checked += static_cast<std::int64_t>(cat.hom(m, l).size()) *
                             static_cast<std::int64_t>(cat.hom(l, n).size());
        cat.compose_table(m, l, n);
      }
    }
  }

  // associativity on all composable triples
  for (int m = 0; m <= top && rep.ok; ++m) {
    for (int k = m; k <= top && rep.ok; ++k) {
      for (int l = k; l <= top && rep.ok; ++l) {
        for (int n = l; n <= top && rep.ok; ++n) {
          const std::size_t nf = cat.hom(m, k).size();
          const std::size_t ng = cat.hom(k, l).size();
          const std::size_t nh = cat.hom(l, n).size();
          const std::size_t nml = cat.hom(m, l).size();
          if (nf == 0 || ng == 0 || nh == 0) continue;
          const auto& t_gf = cat.compose_table(m, k, l);
          const auto& t_h_gf = cat.compose_table(m, l, n);
          const auto& t_hg = cat.compose_table(k, l, n);
          const auto& t_hg_f = cat.compose_table(m, k, n);
          for (std::size_t hi = 0; hi < nh && rep.ok; ++hi) {
            const std::int32_t* h_row = t_h_gf.data() + hi * nml;
            for (std::size_t gi = 0; gi < ng && rep.ok; ++gi) {
              std::int32_t hg = t_hg[hi * ng + gi];
              const std::int32_t* gf_row = t_gf.data() + gi * nf;
              const std::int32_t* hg_row = t_hg_f.data() + static_cast<std::size_t>(hg) * nf;
              for (std::size_t fi = 0; fi < nf; ++fi) {
                std::int32_t lhs = h_row[gf_row[fi]];
                std::int32_t rhs = hg_row[fi];
                if (lhs != rhs) {
                  std::ostringstream os;
                  os << "associativity fails at (" << m << ", " << k << ", " << l << ", " << n
                     << ") indices (" << fi << ", " << gi << ", " << hi << ")";
                  fail(os.str());
                  break;
                }
              }
              rep.triples_checked += static_cast<std::int64_t>(nf);
            }
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace censtab
