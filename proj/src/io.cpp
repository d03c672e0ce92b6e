#include <censtab/io.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace censtab {

namespace {

CategoryPtr builtin_category(const std::string& id, int param, bool have_param) {
  auto need = [&](const char* what) {
    if (!have_param)
      throw InvalidInput("category '" + id + "' needs a parameter (" + what + ")");
    return param;
  };
  if (id == "fi") return Category::fi();
  if (id == "fs_op") return Category::fs_op();
  if (id == "counterexample") return counterexample_category();
  if (id == "fi_a") return Category::fi_a(need("colors"));
  if (id == "oi_a") return Category::oi_a(need("colors"));
  if (id == "vi") return Category::vi(need("prime power q"));
  if (id == "plactic") return Category::plactic(need("alphabet size"));
  throw InvalidInput("unknown category id '" + id + "'");
}

bool is_builtin_id(const std::string& id) {
  for (const char* b : {"fi", "fs_op", "counterexample", "fi_a", "oi_a", "vi", "plactic"})
    if (id == b) return true;
  return false;
}

int require_int(const Json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_number_integer())
    throw InvalidInput(std::string("missing or non-integer field '") + field + "'");
  return doc[field].get<int>();
}

Int coeff_from_json(const Json& v) {
  if (v.is_number_integer()) return Int(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return Int(v.get<std::string>());
    } catch (const std::exception&) {
      throw InvalidInput("coefficient string '" + v.get<std::string>() +
                         "' is not a decimal integer");
    }
  }
  throw InvalidInput("coefficient must be an integer or a decimal string");
}

CatPresentation presentation_from_json(const Json& doc) {
  CatPresentation pres;
  pres.objects_max = require_int(doc, "objects_max");
  if (!doc.contains("generators") || !doc["generators"].is_array())
    throw InvalidInput("presented category needs a 'generators' array");
  // name -> (declaration position, local index at its source level)
  std::unordered_map<std::string, std::pair<int, std::int32_t>> by_name;
  std::vector<int> per_level(static_cast<std::size_t>(std::max(pres.objects_max, 0)) + 1, 0);
  for (const auto& g : doc["generators"]) {
    GeneratorSpec spec;
    if (!g.contains("name") || !g["name"].is_string())
      throw InvalidInput("generator entry needs a string 'name'");
    spec.name = g["name"].get<std::string>();
    spec.source = require_int(g, "source");
    spec.target = require_int(g, "target");
    if (by_name.count(spec.name))
      throw InvalidInput("duplicate generator name '" + spec.name + "'");
    if (spec.source < 0 || spec.source > pres.objects_max)
      throw InvalidInput("generator '" + spec.name + "' out of object range");
    by_name[spec.name] = {static_cast<int>(pres.generators.size()),
                          static_cast<std::int32_t>(per_level[static_cast<std::size_t>(
                              spec.source)]++)};
    pres.generators.push_back(std::move(spec));
  }
  auto word_from_names = [&](const Json& names) {
    if (!names.is_array() || names.empty())
      throw InvalidInput("relation side must be a nonempty array of generator names");
    Word w;
    int expect_target = -1;
    for (const auto& nv : names) {
      if (!nv.is_string()) throw InvalidInput("relation side entries must be strings");
      const std::string name = nv.get<std::string>();
      auto it = by_name.find(name);
      if (it == by_name.end()) throw InvalidInput("unknown generator '" + name + "' in relation");
      const GeneratorSpec& g = pres.generators[static_cast<std::size_t>(it->second.first)];
      if (expect_target == -1) {
        w.tgt = g.target;
      } else if (g.target != expect_target) {
        throw InvalidInput("relation word is not composable at '" + name + "'");
      }
      expect_target = g.source;
      w.gens.push_back(it->second.second);
    }
    w.src = expect_target;
    return w;
  };
  if (doc.contains("relations")) {
    if (!doc["relations"].is_array())
      throw InvalidInput("'relations' must be an array of pairs");
    for (const auto& pair : doc["relations"]) {
      if (!pair.is_array() || pair.size() != 2)
        throw InvalidInput("each relation must be a pair of generator-name lists");
      pres.relations.emplace_back(word_from_names(pair[0]), word_from_names(pair[1]));
    }
  }
  return pres;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_document(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

Json json_invariants(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

std::string render_invariants(const std::vector<Int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += to_string(v[i]);
  }
  return s + "]";
}

Json json_morphism(const Category& cat, int src, int tgt, int index) {
  Json j;
  j["index"] = index;
  j["desc"] = cat.describe(cat.hom(src, tgt)[static_cast<std::size_t>(index)]);
  return j;
}

}  // namespace

CategoryPtr category_from_json(const Json& doc) {
  if (!doc.is_object()) throw InvalidInput("category document must be a JSON object");
  if (doc.contains("objects_max") || doc.contains("generators")) {
    return Category::presented(presentation_from_json(doc),
                               doc.value("id", std::string("presented")));
  }
  if (!doc.contains("id") || !doc["id"].is_string())
    throw InvalidInput("category document needs a string 'id'");
  const bool have_param = doc.contains("param");
  return builtin_category(doc["id"].get<std::string>(),
                          have_param ? require_int(doc, "param") : 0, have_param);
}

CategoryPtr load_category(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string id = spec.substr(0, colon);
    if (is_builtin_id(id)) {
      int param = 0;
      try {
        std::size_t used = 0;
        param = std::stoi(spec.substr(colon + 1), &used);
        if (used != spec.size() - colon - 1) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw InvalidInput("bad category parameter in '" + spec + "'");
      }
      return builtin_category(id, param, true);
    }
  }
  if (is_builtin_id(spec)) return builtin_category(spec, 0, false);
  return category_from_json(parse_document(read_file(spec), "category file '" + spec + "'"));
}

std::string category_spec_string(const Category& cat) {
  if (cat.param() != 0) return cat.id() + ":" + std::to_string(cat.param());
  return cat.id();
}

RingSpec ring_from_json(const Json& v) {
  if (v.is_string() && v.get<std::string>() == "Z") return RingSpec::integers();
  if (v.is_object() && v.contains("Fp") && v["Fp"].is_number_integer())
    return RingSpec::prime_field(v["Fp"].get<std::int64_t>());
  throw InvalidInput("ring must be \"Z\" or {\"Fp\": p}");
}

RingSpec ring_from_string(const std::string& s) {
  if (s == "Z") return RingSpec::integers();
  if (s.size() > 1 && s[0] == 'F') {
    try {
      std::size_t used = 0;
      const std::int64_t p = std::stoll(s.substr(1), &used);
      if (used == s.size() - 1) return RingSpec::prime_field(p);
    } catch (const std::exception&) {
    }
  }
  throw InvalidInput("ring must be 'Z' or 'F<p>', got '" + s + "'");
}

Json ring_to_json(RingSpec ring) {
  if (ring.is_field()) return Json{{"Fp", ring.p}};
  return Json("Z");
}

ModulePresentation module_from_json(const Json& doc) {
  if (!doc.is_object()) throw InvalidInput("module document must be a JSON object");
  ModulePresentation p;
  if (!doc.contains("category")) throw InvalidInput("module document needs 'category'");
  if (doc["category"].is_string()) {
    p.cat = load_category(doc["category"].get<std::string>());
  } else {
    p.cat = category_from_json(doc["category"]);
  }
  if (!doc.contains("ring")) throw InvalidInput("module document needs 'ring'");
  p.ring = ring_from_json(doc["ring"]);
  if (!doc.contains("generators") || !doc["generators"].is_array())
    throw InvalidInput("module document needs a 'generators' array of degrees");
  for (const auto& d : doc["generators"]) {
    if (!d.is_number_integer()) throw InvalidInput("generator degrees must be integers");
    p.gen_degrees.push_back(d.get<int>());
  }
  if (doc.contains("relations")) {
    if (!doc["relations"].is_array()) throw InvalidInput("'relations' must be an array");
    for (const auto& r : doc["relations"]) {
      ModuleRelation rel;
      rel.degree = require_int(r, "degree");
      if (!r.contains("terms") || !r["terms"].is_array())
        throw InvalidInput("relation needs a 'terms' array");
      for (const auto& t : r["terms"]) {
        RelationTerm term;
        term.gen = require_int(t, "gen");
        term.hom_index = require_int(t, "hom_index");
        if (!t.contains("coeff")) throw InvalidInput("relation term needs 'coeff'");
        term.coeff = coeff_from_json(t["coeff"]);
        rel.terms.push_back(std::move(term));
      }
      p.relations.push_back(std::move(rel));
    }
  }
  validate_presentation(p);
  return p;
}

ModulePresentation load_module(const std::string& path) {
  try {
    return module_from_json(parse_document(read_file(path), "module file '" + path + "'"));
  } catch (const InvalidInput& e) {
    throw InvalidInput("module file '" + path + "': " + e.what());
  }
}

Json to_json(const StabilityReport& r) {
  Json j;
  j["mode"] = r.mode;
  j["window_lo"] = r.window_lo;
  j["window_hi"] = r.window_hi;
  j["d"] = r.d;
  j["n_max"] = r.n_max;
  j["all_iso"] = r.all_iso;
  j["complete"] = r.complete;
  if (!r.cap_detail.empty()) j["cap_detail"] = r.cap_detail;
  j["first_failure_degree"] = r.first_failure_degree;
  Json degs = Json::array();
  for (const auto& dv : r.degrees) {
    Json e;
    e["degree"] = dv.degree;
    e["iso"] = dv.iso;
    if (!dv.iso) {
      e["kernel_invariants"] = json_invariants(dv.kernel_invariants);
      e["cokernel_invariants"] = json_invariants(dv.cokernel_invariants);
    }
    if (dv.cross_checked) e["cross_check_ok"] = dv.cross_check_ok;
    degs.push_back(std::move(e));
  }
  j["degrees"] = std::move(degs);
  return j;
}

Json to_json(const PrdReport& r) {
  Json j;
  j["N_max"] = r.N_max;
  j["n_max"] = r.n_max;
  j["found"] = r.found;
  j["prd"] = r.prd;
  j["complete"] = r.complete;
  if (!r.cap_detail.empty()) j["cap_detail"] = r.cap_detail;
  Json fails = Json::array();
  for (const auto& f : r.failures) {
    Json e;
    e["window_hi"] = f.window_hi;
    e["degree"] = f.degree;
    e["kernel_invariants"] = json_invariants(f.kernel_invariants);
    e["cokernel_invariants"] = json_invariants(f.cokernel_invariants);
    fails.push_back(std::move(e));
  }
  j["failures"] = std::move(fails);
  return j;
}

Json to_json(const ReducingIdempotentReport& r) {
  Json j;
  j["m"] = r.m;
  j["N"] = r.N;
  j["n"] = r.n;
  j["d"] = r.d;
  j["well_defined"] = r.well_defined;
  j["iso"] = r.iso;
  if (!r.iso) {
    j["kernel_invariants"] = json_invariants(r.kernel_invariants);
    j["cokernel_invariants"] = json_invariants(r.cokernel_invariants);
  }
  return j;
}

Json to_json(const GenerationVerdict& v) {
  Json j;
  j["d"] = v.d;
  j["m"] = v.m;
  j["n"] = v.n;
  j["ring"] = v.ring.name();
  j["surjective"] = v.surjective;
  j["lhs_in_rhs"] = v.lhs_in_rhs;
  j["rhs_in_lhs"] = v.rhs_in_lhs;
  j["generated"] = v.generated;
  j["saturated_equal"] = v.saturated_equal;
  j["kernel_generators"] = v.kernel_generators;
  j["window_span_rank"] = v.window_span_rank;
  return j;
}

Json condition_i_json(const Category& cat, const std::vector<SurjectivityCell>& cells) {
  Json arr = Json::array();
  for (const auto& c : cells) {
    Json e;
    e["m"] = c.m;
    e["l"] = c.l;
    e["n"] = c.n;
    e["surjective"] = c.surjective;
    if (!c.surjective) e["unhit"] = json_morphism(cat, c.m, c.n, c.unhit);
    arr.push_back(std::move(e));
  }
  return arr;
}

Json condition_ii_json(const Category& cat, const FactorizationReport& r) {
  Json j;
  j["d"] = r.d;
  j["m"] = r.m;
  j["n"] = r.n;
  j["holds"] = r.holds;
  j["quadruples"] = r.quadruples;
  if (!r.holds) {
    Json w;
    w["alpha1"] = json_morphism(cat, r.m + 1, r.n, r.alpha1);
    w["alpha2"] = json_morphism(cat, r.m + 1, r.n, r.alpha2);
    w["beta1"] = json_morphism(cat, r.m, r.m + 1, r.beta1);
    w["beta2"] = json_morphism(cat, r.m, r.m + 1, r.beta2);
    j["witness"] = std::move(w);
  } else if (r.gamma >= 0) {
    Json w;
    w["gamma"] = json_morphism(cat, r.m + r.d, r.n, r.gamma);
    w["delta1"] = json_morphism(cat, r.m + 1, r.m + r.d, r.delta1);
    w["delta2"] = json_morphism(cat, r.m + 1, r.m + r.d, r.delta2);
    j["first_solution"] = std::move(w);
  }
  return j;
}

void print_human(std::ostream& os, const StabilityReport& r) {
  os << r.mode << " stability, window [" << r.window_lo << ", " << r.window_hi
     << "], degrees up to " << r.n_max << "\n";
  for (const auto& dv : r.degrees) {
    os << "  degree " << dv.degree << ": " << (dv.iso ? "iso" : "FAIL");
    if (!dv.iso) {
      os << "  kernel " << render_invariants(dv.kernel_invariants) << " cokernel "
         << render_invariants(dv.cokernel_invariants);
    }
    if (dv.cross_checked) os << (dv.cross_check_ok ? "  [cross-checked]" : "  [CROSS-CHECK MISMATCH]");
    os << "\n";
  }
  if (!r.complete) os << "  stopped early: " << r.cap_detail << "\n";
  os << (r.all_iso && r.complete ? "PASS" : "FAIL") << "\n";
}

void print_human(std::ostream& os, const PrdReport& r) {
  os << "window-top search, N <= " << r.N_max << ", degrees up to " << r.n_max << "\n";
  for (const auto& f : r.failures) {
    os << "  N = " << f.window_hi << ": fails at degree " << f.degree << "  kernel "
       << render_invariants(f.kernel_invariants) << " cokernel "
       << render_invariants(f.cokernel_invariants) << "\n";
  }
  if (!r.complete) os << "  stopped early: " << r.cap_detail << "\n";
  if (r.found) {
    os << "least all-iso window top: " << r.prd << "\n";
  } else {
    os << "no all-iso window top found\n";
  }
}

void print_human(std::ostream& os, const ReducingIdempotentReport& r) {
  os << "window reduction [" << (r.m + 1) << ", " << r.N << "] -> [" << r.m << ", " << r.N
     << "] at degree " << r.n << " (d = " << r.d << ")\n";
  os << "  well-defined: " << (r.well_defined ? "yes" : "NO") << "\n";
  os << "  isomorphism:  " << (r.iso ? "yes" : "NO") << "\n";
  if (!r.iso) {
    os << "  kernel " << render_invariants(r.kernel_invariants) << " cokernel "
       << render_invariants(r.cokernel_invariants) << "\n";
  }
  os << (r.well_defined && r.iso ? "PASS" : "FAIL") << "\n";
}

void print_human(std::ostream& os, const GenerationVerdict& v) {
  os << "degree-" << v.d << " generation at (" << v.m << ", " << v.n << ") over "
     << v.ring.name() << ": " << (v.generated ? "pass" : "FAIL") << "  (surjective "
     << (v.surjective ? "yes" : "no") << ", kernel generators " << v.kernel_generators
     << ", window span rank " << v.window_span_rank << ", saturated equal "
     << (v.saturated_equal ? "yes" : "no") << ")\n";
}

void print_human(std::ostream& os, const Category& cat,
                 const std::vector<SurjectivityCell>& cells) {
  int failures = 0;
  for (const auto& c : cells) {
    if (c.surjective) continue;
    ++failures;
    os << "  composition (" << c.m << " -> " << c.l << " -> " << c.n << ") misses "
       << cat.describe(cat.hom(c.m, c.n)[static_cast<std::size_t>(c.unhit)]) << "\n";
  }
  os << "composition surjectivity: " << (cells.size() - static_cast<std::size_t>(failures))
     << "/" << cells.size() << " cells onto\n";
}

void print_human(std::ostream& os, const Category& cat, const FactorizationReport& r) {
  os << "factorization condition, d = " << r.d << ", (m, n) = (" << r.m << ", " << r.n
     << "): " << (r.holds ? "pass" : "FAIL") << "  (" << r.quadruples
     << " composite-equal quadruples)\n";
  auto show = [&](const char* name, int src, int tgt, int idx) {
    os << "    " << name << " = " << cat.describe(cat.hom(src, tgt)[static_cast<std::size_t>(idx)])
       << " (#" << idx << ")\n";
  };
  if (!r.holds) {
    os << "  no common factorization for:\n";
    show("alpha1", r.m + 1, r.n, r.alpha1);
    show("alpha2", r.m + 1, r.n, r.alpha2);
    show("beta1", r.m, r.m + 1, r.beta1);
    show("beta2", r.m, r.m + 1, r.beta2);
  }
}

}  // namespace censtab
