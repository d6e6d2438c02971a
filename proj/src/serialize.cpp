#include "qdense/serialize.hpp"

#include "qdense/error.hpp"

namespace qdense {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::Schema, what); }

std::string str(const Int& x) { return x.get_str(); }

Int to_int(const Json& j) {
  Int x;
  if (j.is_string()) {
    if (x.set_str(j.get<std::string>(), 10) != 0) schema("bad integer string " + j.dump());
    return x;
  }
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  schema("expected an integer, got " + j.dump());
}

Json ints(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(str(x));
  return a;
}

std::vector<Int> ints_from(const Json& j) {
  if (!j.is_array()) schema("expected an integer array");
  std::vector<Int> out;
  for (const auto& x : j) out.push_back(to_int(x));
  return out;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) schema(std::string("missing field ") + name);
  return j.at(name);
}

template <class T>
T get(const Json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    schema(std::string("field ") + name + ": " + e.what());
  }
}

Json specialized(const SpecializedRoot& s) {
  return {{"free_var", s.free_var}, {"values", ints(s.values)}, {"root", str(s.root)},
          {"multiplicity", s.multiplicity}};
}

SpecializedRoot specialized_from(const Json& j) {
  return {get<std::size_t>(j, "free_var"), ints_from(field(j, "values")), to_int(field(j, "root")),
          get<unsigned>(j, "multiplicity")};
}

Json payload(const SimpleZeroSpecialization& c) {
  return {{"free_var", c.free_var}, {"values", ints(c.values)}, {"root", str(c.root)}, {"precision", c.precision}};
}
Json payload(const CoprimeMultiplicities& c) {
  return {{"first", specialized(c.first)}, {"second", specialized(c.second)}, {"precision", c.precision}};
}
Json payload(const SimpleLinearFactorModP& c) {
  return {{"linear_form", ints(c.linear_form)}, {"point", ints(c.point)}, {"partial_index", c.partial_index}};
}
Json payload(const SmoothPointModP& c) {
  return {{"point", ints(c.point)},
          {"partial_index", c.partial_index},
          {"lifted_root", str(c.lifted_root)},
          {"precision", c.precision}};
}
Json payload(const CubicCriterion& c) { return {{"part", c.part}, {"D", str(c.D)}, {"legendre", c.legendre}}; }
Json payload(const QuarticCriterion& c) {
  return {{"case", c.case_number}, {"value", str(c.value)}, {"target", str(c.target)}};
}
Json payload(const AnisotropicModP& c) { return {{"points_enumerated", c.points_enumerated}}; }
Json payload(const UnivariateNonvanishing& c) { return {{"residue_table", ints(c.residue_table)}}; }
Json payload(const ValuationObstruction& c) {
  Json src = std::visit(
      [](const auto& s) -> Json {
        using S = std::decay_t<decltype(s)>;
        Json out = to_json(s);
        out["type"] = std::is_same_v<S, LinearSplitForm> ? "linear_split" : "integer_rooted";
        return out;
      },
      c.source);
  return {{"spectrum", to_json(c.spectrum)}, {"source", src}};
}
Json payload(const FamilyObstruction& c) {
  Json params = Json::object();
  for (const auto& [k, v] : c.params) params[k] = str(v);
  return {{"family", c.family}, {"params", params}, {"transcript", c.transcript}, {"enumerated", c.enumerated}};
}

}  // namespace

Json to_json(const IntegralForm& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"exponents", e}, {"coefficient", str(c)}});
  return {{"n_vars", f.n_vars()}, {"degree", f.degree()}, {"text", f.to_string()}, {"terms", terms}};
}

IntegralForm form_from_json(const Json& j) {
  IntegralForm::Terms terms;
  for (const auto& t : field(j, "terms")) terms.emplace(get<Exponents>(t, "exponents"), to_int(field(t, "coefficient")));
  try {
    return IntegralForm(get<std::size_t>(j, "n_vars"), get<unsigned>(j, "degree"), std::move(terms));
  } catch (const Error& e) {
    schema(std::string("invalid form: ") + e.what());
  }
}

Json to_json(const LinearSplitForm& f) {
  Json factors = Json::array();
  for (const auto& l : f.factors()) factors.push_back({{"coeffs", ints(l.coeffs)}, {"multiplicity", l.multiplicity}});
  return {{"n_vars", f.n_vars()}, {"content", str(f.content())}, {"factors", factors}, {"text", f.to_string()}};
}

LinearSplitForm linear_split_from_json(const Json& j) {
  std::vector<LinearFactor> factors;
  for (const auto& l : field(j, "factors"))
    factors.push_back({ints_from(field(l, "coeffs")), get<unsigned>(l, "multiplicity")});
  return LinearSplitForm(get<std::size_t>(j, "n_vars"), to_int(field(j, "content")), std::move(factors));
}

Json to_json(const IntegerRootedPoly& f) {
  Json roots = Json::array();
  for (const auto& [r, e] : f.roots) roots.push_back({{"root", str(r)}, {"multiplicity", e}});
  return {{"lead", str(f.lead)}, {"roots", roots}};
}

IntegerRootedPoly rooted_from_json(const Json& j) {
  IntegerRootedPoly f{to_int(field(j, "lead")), {}};
  for (const auto& r : field(j, "roots")) f.roots.emplace_back(to_int(field(r, "root")), get<unsigned>(r, "multiplicity"));
  return f;
}

Json to_json(const ValuationSpectrum& s) {
  Json tails = Json::array();
  for (const auto& t : s.tails) tails.push_back({{"offset", t.offset}, {"stride", t.stride}});
  return {{"q", str(s.q)},
          {"finite_values", s.finite_values},
          {"tails", tails},
          {"exhaustive_depth", s.exhaustive_depth},
          {"free_stride", s.free_stride}};
}

ValuationSpectrum spectrum_from_json(const Json& j) {
  ValuationSpectrum s;
  s.q = to_int(field(j, "q"));
  s.finite_values = get<std::set<long>>(j, "finite_values");
  for (const auto& t : field(j, "tails")) s.tails.insert({get<long>(t, "offset"), get<long>(t, "stride")});
  s.exhaustive_depth = get<unsigned>(j, "exhaustive_depth");
  s.free_stride = get<long>(j, "free_stride");
  return s;
}

Json to_json(const Certificate& c) {
  return {{"kind", certificate_kind(c)},
          {"certifies", certifies_not_dense(c) ? "NotDense" : "Dense"},
          {"payload", std::visit([](const auto& x) { return payload(x); }, c)}};
}

Certificate certificate_from_json(const Json& j) {
  const std::string kind = get<std::string>(j, "kind");
  const Json& p = field(j, "payload");
  if (kind == "SimpleZeroSpecialization")
    return SimpleZeroSpecialization{get<std::size_t>(p, "free_var"), ints_from(field(p, "values")),
                                    to_int(field(p, "root")), get<unsigned>(p, "precision")};
  if (kind == "CoprimeMultiplicities")
    return CoprimeMultiplicities{specialized_from(field(p, "first")), specialized_from(field(p, "second")),
                                 get<unsigned>(p, "precision")};
  if (kind == "SimpleLinearFactorModP")
    return SimpleLinearFactorModP{ints_from(field(p, "linear_form")), ints_from(field(p, "point")),
                                  get<std::size_t>(p, "partial_index")};
  if (kind == "SmoothPointModP")
    return SmoothPointModP{ints_from(field(p, "point")), get<std::size_t>(p, "partial_index"),
                           to_int(field(p, "lifted_root")), get<unsigned>(p, "precision")};
  if (kind == "CubicCriterion") return CubicCriterion{get<int>(p, "part"), to_int(field(p, "D")), get<int>(p, "legendre")};
  if (kind == "QuarticCriterion")
    return QuarticCriterion{get<int>(p, "case"), to_int(field(p, "value")), to_int(field(p, "target"))};
  if (kind == "AnisotropicModP") return AnisotropicModP{get<std::uint64_t>(p, "points_enumerated")};
  if (kind == "UnivariateNonvanishing") return UnivariateNonvanishing{ints_from(field(p, "residue_table"))};
  if (kind == "ValuationObstruction") {
    const Json& src = field(p, "source");
    const std::string type = get<std::string>(src, "type");
    ValuationSpectrum s = spectrum_from_json(field(p, "spectrum"));
    if (type == "linear_split") return ValuationObstruction{std::move(s), linear_split_from_json(src)};
    if (type == "integer_rooted") return ValuationObstruction{std::move(s), rooted_from_json(src)};
    schema("unknown spectrum source type " + type);
  }
  if (kind == "FamilyObstruction") {
    FamilyObstruction f{get<std::string>(p, "family"), {}, get<std::vector<std::string>>(p, "transcript"),
                        get<bool>(p, "enumerated")};
    for (const auto& [k, v] : field(p, "params").items()) f.params[k] = to_int(v);
    return f;
  }
  schema("unknown certificate kind " + kind);
}

Json to_json(const ProbeReport& r, bool with_witnesses) {
  std::map<long, std::size_t> per_valuation;
  for (const auto& [key, w] : r.reachable) ++per_valuation[key.first];
  Json classes = Json::array();
  for (const auto& [v, n] : per_valuation) classes.push_back({{"valuation", v}, {"classes", n}});
  Json out = {{"prime", str(r.p)},
              {"unit_depth", r.unit_depth},
              {"window", r.window},
              {"coverage", r.coverage},
              {"samples_used", r.samples_used},
              {"seed", r.seed},
              {"reachable_by_valuation", classes}};
  if (with_witnesses) {
    Json reach = Json::array();
    for (const auto& [key, w] : r.reachable)
      reach.push_back({{"valuation", key.first}, {"unit", str(key.second)}, {"x", ints(w.x)}, {"y", ints(w.y)}});
    out["reachable"] = reach;
  }
  return out;
}

Json to_json(const DecideConfig& c) {
  return {{"budget", c.budget},
          {"precision", c.precision},
          {"sweep_radius", c.sweep_radius},
          {"random_tuples", c.random_tuples},
          {"random_radius", c.random_radius},
          {"sweep_cap", c.sweep_cap},
          {"seed", c.seed},
          {"probe_budget", c.probe.budget},
          {"probe_seed", c.probe.seed}};
}

Json to_json(const DensityVerdict& v) {
  Json out = {{"schema", kSchemaVersion},
              {"prime", str(v.p)},
              {"status", to_string(v.status)},
              {"form", to_json(v.form)},
              {"notes", v.notes},
              {"config", to_json(v.config)}};
  out["certificate"] = v.certificate ? to_json(*v.certificate) : Json(nullptr);
  out["evidence"] = v.evidence ? to_json(*v.evidence) : Json(nullptr);
  return out;
}

Json to_json(const ScanEntry& e) {
  Json out = to_json(e.verdict);
  out["via_specialization"] = e.via_specialization;
  return out;
}

Json to_json(const FamilyPrimeEntry& e) {
  return {{"prime", str(e.p)},
          {"status", e.certificate ? "NotDense" : "Unknown"},
          {"certificate", e.certificate ? to_json(Certificate(*e.certificate)) : Json(nullptr)},
          {"note", e.note}};
}

Json to_json(const FinitelyDenseReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.q_checks) {
    Json item = {{"q", str(c.q)}, {"above_threshold", c.above_threshold}, {"status", c.status}};
    item["certificate"] = c.certificate ? to_json(Certificate(*c.certificate)) : Json(nullptr);
    if (c.unit_difference)
      item["unit_difference"] = {c.unit_difference->first, c.unit_difference->second};
    checks.push_back(item);
  }
  return {{"schema", kSchemaVersion},
          {"family", r.spec.to_string()},
          {"threshold", str(r.threshold)},
          {"probe", to_json(r.probe)},
          {"probe_reached_window", r.probe_reached_window},
          {"unit_equation_solvable", r.unit_equation_solvable},
          {"q_checks", checks}};
}

}  // namespace qdense
