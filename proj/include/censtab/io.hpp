#ifndef CENSTAB_IO_HPP
#define CENSTAB_IO_HPP

#include <censtab/category.hpp>
#include <censtab/module.hpp>
#include <censtab/relations.hpp>
#include <censtab/stability.hpp>

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace censtab {

// Insertion-ordered JSON so that serialized reports are byte-stable.
using Json = nlohmann::ordered_json;

// --- loading ---------------------------------------------------------------

// Category from a JSON document.  Built-in families: {"id": "fi"} or
// {"id": "vi", "param": 2} (param = colors / q / alphabet size).  Presented
// categories carry "objects_max", "generators" (list of {name, source,
// target}) and "relations" (list of pairs of generator-name lists, outermost
// factor written first), with an optional "id".
CategoryPtr category_from_json(const Json& doc);

// Command-line category spec: a built-in id ("fi", "fs_op", "counterexample",
// or parametrized "fi_a:2" / "oi_a:2" / "vi:2" / "plactic:2"), otherwise the
// path of a JSON file.
CategoryPtr load_category(const std::string& spec);

// Round-trippable spec string of a category ("vi:2", "fi", file id).
std::string category_spec_string(const Category& cat);

// Module presentation from {"category": <spec string or inline document>,
// "ring": "Z" | {"Fp": p}, "generators": [degrees],
// "relations": [{"degree": b, "terms": [{"gen": i, "hom_index": t,
// "coeff": c}]}]}.  Coefficients may be numbers or decimal strings.
ModulePresentation module_from_json(const Json& doc);
ModulePresentation load_module(const std::string& path);

RingSpec ring_from_json(const Json& v);
RingSpec ring_from_string(const std::string& s);  // "Z", "F2", "F3", ...
Json ring_to_json(RingSpec ring);

// --- report serialization (stable field order, no volatile data) -----------

Json to_json(const StabilityReport& r);
Json to_json(const PrdReport& r);
Json to_json(const ReducingIdempotentReport& r);
Json to_json(const GenerationVerdict& v);
Json condition_i_json(const Category& cat, const std::vector<SurjectivityCell>& cells);
Json condition_ii_json(const Category& cat, const FactorizationReport& r);

// --- human-readable rendering ----------------------------------------------

void print_human(std::ostream& os, const StabilityReport& r);
void print_human(std::ostream& os, const PrdReport& r);
void print_human(std::ostream& os, const ReducingIdempotentReport& r);
void print_human(std::ostream& os, const GenerationVerdict& v);
void print_human(std::ostream& os, const Category& cat,
                 const std::vector<SurjectivityCell>& cells);
void print_human(std::ostream& os, const Category& cat, const FactorizationReport& r);

}  // namespace censtab

#endif
