// Command-line front end: loads categories and module presentations, runs
// the stability / relations checks, and emits deterministic reports.
//
// Exit codes: 0 all verdicts pass, 1 some verdict fails (report still
// emitted), 2 input or validation error, 3 resource cap hit.

#include <CLI11.hpp>

#include <censtab/io.hpp>
#include <censtab/normal_forms.hpp>

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

using namespace censtab;

namespace {

struct Options {
  std::string category;
  std::string module_path;
  std::string matrix;
  std::vector<std::string> rings;
  std::string format = "human";
  std::int64_t hom_cap = 0;  // 0 keeps the library default
  int N = 0, N_max = -1, n_max = -1, d = 2, m = 0, n = 0, m_max = -1;
  bool cross_check = false;
};

void add_format_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"human", "json"}))
      ->capture_default_str();
}

void add_category_option(CLI::App* cmd, Options& o) {
  cmd->add_option("--category", o.category,
                  "built-in id (fi, fs_op, counterexample, fi_a:2, oi_a:2, vi:2, plactic:2) "
                  "or path to a category JSON file")
      ->required();
  cmd->add_option("--hom-cap", o.hom_cap, "abort when a hom set would exceed this size");
}

void add_module_option(CLI::App* cmd, Options& o) {
  cmd->add_option("--module", o.module_path, "path to a module presentation JSON file")
      ->required();
  cmd->add_option("--hom-cap", o.hom_cap, "abort when a hom set would exceed this size");
}

void apply_hom_cap(const CategoryPtr& cat, std::int64_t cap) {
  if (cap > 0) const_cast<Category&>(*cat).set_hom_cap(cap);
}

void emit(const Json& doc, const Options& o) {
  if (o.format == "json") std::cout << doc.dump(2) << "\n";
}

Json header(const char* command) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

int stability_exit(const StabilityReport& r) {
  if (!r.complete) return 3;
  bool ok = r.all_iso;
  for (const auto& dv : r.degrees)
    if (dv.cross_checked && !dv.cross_check_ok) ok = false;
  return ok ? 0 : 1;
}

int run_hom_stat(Options& o) {
  CategoryPtr cat = load_category(o.category);
  apply_hom_cap(cat, o.hom_cap);
  int n_max = o.n_max < 0 ? 6 : o.n_max;
  if (cat->family() == Category::Family::Presented)
    n_max = std::min(n_max, cat->presentation().objects_max);
  const int m_max = o.m_max < 0 ? n_max : std::min(o.m_max, n_max);

  Json j = header("hom-stat");
  j["category"] = category_spec_string(*cat);
  j["m_max"] = m_max;
  j["n_max"] = n_max;
  Json sizes = Json::array();
  for (int m = 0; m <= m_max; ++m) {
    if (o.format == "human") std::cout << "m = " << m << ":";
    for (int n = m; n <= n_max; ++n) {
      const Int s = cat->hom_size(m, n);
      sizes.push_back(Json{{"m", m}, {"n", n}, {"size", to_string(s)}});
      if (o.format == "human") std::cout << " " << s;
    }
    if (o.format == "human") std::cout << "\n";
  }
  j["sizes"] = std::move(sizes);
  emit(j, o);
  return 0;
}

int run_check_stability(Options& o) {
  ModulePresentation p = load_module(o.module_path);
  apply_hom_cap(p.cat, o.hom_cap);
  const int n_max = o.n_max < 0 ? p.presentation_degree() + 4 : o.n_max;
  StabilityReport rep = check_central_stability(p, o.N, n_max, o.cross_check);

  Json j = header("check-stability");
  j["module"] = o.module_path;
  j["category"] = category_spec_string(*p.cat);
  j["ring"] = p.ring.name();
  j["N"] = o.N;
  j["cross_check"] = o.cross_check;
  j["report"] = to_json(rep);
  emit(j, o);
  if (o.format == "human") print_human(std::cout, rep);
  return stability_exit(rep);
}

int run_check_dstep(Options& o) {
  ModulePresentation p = load_module(o.module_path);
  apply_hom_cap(p.cat, o.hom_cap);
  const int n_max = o.n_max < 0 ? p.presentation_degree() + 4 : o.n_max;
  StabilityReport rep = check_d_step(p, o.d, o.N, n_max, o.cross_check);

  Json j = header("check-dstep");
  j["module"] = o.module_path;
  j["category"] = category_spec_string(*p.cat);
  j["ring"] = p.ring.name();
  j["d"] = o.d;
  j["N"] = o.N;
  j["cross_check"] = o.cross_check;
  j["report"] = to_json(rep);
  emit(j, o);
  if (o.format == "human") print_human(std::cout, rep);
  return stability_exit(rep);
}

int run_prd(Options& o) {
  ModulePresentation p = load_module(o.module_path);
  apply_hom_cap(p.cat, o.hom_cap);
  const int N_max = o.N_max < 0 ? p.presentation_degree() + 2 : o.N_max;
  const int n_max = o.n_max < 0 ? p.presentation_degree() + 4 : o.n_max;
  PrdReport rep = empirical_prd(p, N_max, n_max);

  Json j = header("prd");
  j["module"] = o.module_path;
  j["category"] = category_spec_string(*p.cat);
  j["ring"] = p.ring.name();
  j["report"] = to_json(rep);
  emit(j, o);
  if (o.format == "human") print_human(std::cout, rep);
  if (!rep.complete) return 3;
  return rep.found ? 0 : 1;
}

int run_check_relations(Options& o) {
  CategoryPtr cat = load_category(o.category);
  apply_hom_cap(cat, o.hom_cap);
  const int m_max = o.m_max < 0 ? 1 : o.m_max;
  const int n_max = o.n_max < 0 ? o.d + 4 : o.n_max;
  std::vector<RingSpec> rings;
  if (o.rings.empty()) {
    rings = {RingSpec::prime_field(2), RingSpec::prime_field(3), RingSpec::integers()};
  } else {
    for (const auto& s : o.rings) rings.push_back(ring_from_string(s));
  }

  Json j = header("check-relations");
  j["category"] = category_spec_string(*cat);
  j["d"] = o.d;
  j["m_max"] = m_max;
  j["n_max"] = n_max;
  Json ringnames = Json::array();
  for (const auto& r : rings) ringnames.push_back(r.name());
  j["rings"] = std::move(ringnames);

  bool all_generated = true;
  Json verdicts = Json::array();
  for (int m = 0; m <= m_max; ++m) {
    for (int n = m + o.d; n <= n_max; ++n) {
      for (const auto& ring : rings) {
        GenerationVerdict v = check_degree_generation(cat, ring, o.d, m, n);
        all_generated = all_generated && v.generated;
        verdicts.push_back(to_json(v));
        if (o.format == "human") print_human(std::cout, v);
      }
    }
  }
  j["verdicts"] = std::move(verdicts);
  j["all_generated"] = all_generated;
  emit(j, o);
  if (o.format == "human")
    std::cout << (all_generated ? "PASS" : "FAIL") << "\n";
  return all_generated ? 0 : 1;
}

int run_check_conditions(Options& o) {
  CategoryPtr cat = load_category(o.category);
  apply_hom_cap(cat, o.hom_cap);
  int n_max = o.n_max < 0 ? 6 : o.n_max;
  if (cat->family() == Category::Family::Presented)
    n_max = std::min(n_max, cat->presentation().objects_max);
  const int m_max = o.m_max < 0 ? n_max : o.m_max;

  auto cells = check_condition_i(*cat, m_max, n_max);
  bool all_surjective = true;
  for (const auto& c : cells) all_surjective = all_surjective && c.surjective;

  bool all_hold = true;
  std::vector<FactorizationReport> reports;
  for (int m = 0; m <= m_max; ++m) {
    for (int n = m + o.d + 1; n <= n_max; ++n) {
      reports.push_back(check_condition_ii(*cat, o.d, m, n));
      all_hold = all_hold && reports.back().holds;
    }
  }

  Json j = header("check-conditions");
  j["category"] = category_spec_string(*cat);
  j["d"] = o.d;
  j["m_max"] = m_max;
  j["n_max"] = n_max;
  j["condition_i"] = Json{{"all_surjective", all_surjective},
                          {"cells", condition_i_json(*cat, cells)}};
  Json ii = Json::array();
  for (const auto& r : reports) ii.push_back(condition_ii_json(*cat, r));
  j["condition_ii"] = Json{{"all_hold", all_hold}, {"reports", std::move(ii)}};
  emit(j, o);
  if (o.format == "human") {
    print_human(std::cout, *cat, cells);
    for (const auto& r : reports) print_human(std::cout, *cat, r);
    std::cout << (all_surjective && all_hold ? "PASS" : "FAIL") << "\n";
  }
  return all_surjective && all_hold ? 0 : 1;
}

int run_reduce_idempotent(Options& o) {
  ModulePresentation p = load_module(o.module_path);
  apply_hom_cap(p.cat, o.hom_cap);
  ReducingIdempotentReport rep = check_reducing_idempotent(p, o.m, o.N, o.n, o.d);

  Json j = header("reduce-idempotent");
  j["module"] = o.module_path;
  j["category"] = category_spec_string(*p.cat);
  j["ring"] = p.ring.name();
  j["report"] = to_json(rep);
  emit(j, o);
  if (o.format == "human") print_human(std::cout, rep);
  return rep.well_defined && rep.iso ? 0 : 1;
}

int run_snf(Options& o) {
  Json doc;
  try {
    doc = Json::parse(o.matrix);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("--matrix: ") + e.what());
  }
  if (!doc.is_array()) throw InvalidInput("--matrix must be a JSON array of rows");
  const auto rows = static_cast<Eigen::Index>(doc.size());
  Eigen::Index cols = 0;
  if (rows > 0) {
    if (!doc[0].is_array()) throw InvalidInput("--matrix rows must be arrays");
    cols = static_cast<Eigen::Index>(doc[0].size());
  }
  MatZ M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = doc[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InvalidInput("--matrix rows must all have the same length");
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto& v = row[static_cast<std::size_t>(k)];
      if (v.is_number_integer()) {
        M(i, k) = Int(v.get<std::int64_t>());
      } else if (v.is_string()) {
        M(i, k) = Int(v.get<std::string>());
      } else {
        throw InvalidInput("--matrix entries must be integers or decimal strings");
      }
    }
  }

  const std::vector<Int> diag = smith_diagonal(M);
  Json j = header("snf");
  j["rows"] = static_cast<std::int64_t>(rows);
  j["cols"] = static_cast<std::int64_t>(cols);
  Json d = Json::array();
  std::int64_t rank = 0;
  for (const auto& x : diag) {
    d.push_back(to_string(x));
    if (x != 0) ++rank;
  }
  j["diagonal"] = std::move(d);
  j["rank"] = rank;
  emit(j, o);
  if (o.format == "human") {
    std::cout << "D = diag(";
    for (std::size_t i = 0; i < diag.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << diag[i];
    }
    std::cout << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graded-module stability toolkit"};
  app.require_subcommand(1);
  Options o;

  CLI::App* hom_stat = app.add_subcommand("hom-stat", "hom-set sizes of a category");
  add_category_option(hom_stat, o);
  hom_stat->add_option("--m-max", o.m_max, "largest source degree");
  hom_stat->add_option("--n-max", o.n_max, "largest target degree (default 6)");
  add_format_options(hom_stat, o);

  CLI::App* stab = app.add_subcommand(
      "check-stability", "canonical window map iso at every degree <= n-max");
  add_module_option(stab, o);
  stab->add_option("--N", o.N, "window top")->required();
  stab->add_option("--n-max", o.n_max, "largest degree tested (default presentation degree + 4)");
  stab->add_flag("--cross-check", o.cross_check,
                 "also build the colimit construction and compare");
  add_format_options(stab, o);

  CLI::App* dstep = app.add_subcommand(
      "check-dstep", "same with the d-step window [N-(d-1), N]");
  add_module_option(dstep, o);
  dstep->add_option("--d", o.d, "window width parameter")->required();
  dstep->add_option("--N", o.N, "window top")->required();
  dstep->add_option("--n-max", o.n_max, "largest degree tested (default presentation degree + 4)");
  dstep->add_flag("--cross-check", o.cross_check,
                  "also build the colimit construction and compare");
  add_format_options(dstep, o);

  CLI::App* prd = app.add_subcommand(
      "prd", "least window top N whose canonical maps pass at every tested degree");
  add_module_option(prd, o);
  prd->add_option("--N-max", o.N_max, "largest window top tried (default presentation degree + 2)");
  prd->add_option("--n-max", o.n_max, "largest degree tested (default presentation degree + 4)");
  add_format_options(prd, o);

  CLI::App* rel = app.add_subcommand(
      "check-relations", "degree-d generation of the kernel of chain multiplication");
  add_category_option(rel, o);
  rel->add_option("--d", o.d, "generation degree")->required();
  rel->add_option("--m-max", o.m_max, "largest source degree (default 1)");
  rel->add_option("--n-max", o.n_max, "largest target degree (default d + 4)");
  rel->add_option("--ring", o.rings, "coefficient ring, repeatable (default F2, F3 and Z)");
  add_format_options(rel, o);

  CLI::App* cond = app.add_subcommand(
      "check-conditions", "composition surjectivity and the factorization condition");
  add_category_option(cond, o);
  cond->add_option("--d", o.d, "factorization width")->required();
  cond->add_option("--m-max", o.m_max, "largest source degree (default n-max)");
  cond->add_option("--n-max", o.n_max, "largest target degree (default 6)");
  add_format_options(cond, o);

  CLI::App* red = app.add_subcommand(
      "reduce-idempotent", "compare the [m+1, N] and [m, N] window tensors at degree n");
  add_module_option(red, o);
  red->add_option("--m", o.m, "lower window edge to drop")->capture_default_str();
  red->add_option("--N", o.N, "window top")->required();
  red->add_option("--n", o.n, "degree compared at")->required();
  red->add_option("--d", o.d, "relation degree hypothesis")->capture_default_str();
  add_format_options(red, o);

  CLI::App* snf = app.add_subcommand("snf", "Smith normal form diagonal of an integer matrix");
  snf->add_option("--matrix", o.matrix, "JSON array of rows, e.g. \"[[2,4],[6,8]]\"")
      ->required();
  add_format_options(snf, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto started = std::chrono::steady_clock::now();
  int status = 2;
  try {
    if (app.got_subcommand(hom_stat)) status = run_hom_stat(o);
    else if (app.got_subcommand(stab)) status = run_check_stability(o);
    else if (app.got_subcommand(dstep)) status = run_check_dstep(o);
    else if (app.got_subcommand(prd)) status = run_prd(o);
    else if (app.got_subcommand(rel)) status = run_check_relations(o);
    else if (app.got_subcommand(cond)) status = run_check_conditions(o);
    else if (app.got_subcommand(red)) status = run_reduce_idempotent(o);
    else if (app.got_subcommand(snf)) status = run_snf(o);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  std::cerr << "elapsed: " << elapsed.count() << " ms\n";
  return status;
}
