#include "polytopo/cli.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "polytopo/classification.hpp"
#include "polytopo/errors.hpp"
#include "polytopo/group.hpp"

#ifndef POLYTOPO_VERSION
#define POLYTOPO_VERSION "unknown"
#endif

namespace polytopo::cli {

using Json = nlohmann::ordered_json;

namespace {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

std::vector<std::string> string_list(const Json& j, const std::string& key, bool required) {
  if (!j.contains(key)) {
    if (required) throw InputError("missing required field '" + key + "'");
    return {};
  }
  const Json& v = j.at(key);
  if (!v.is_array()) throw InputError("field '" + key + "' must be an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string())
      throw InputError("field '" + key + "[" + std::to_string(i) + "]' must be a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

void check_keys(const Json& j, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw InputError("input must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw InputError("unknown field '" + key + "'");
}

void check_disjoint(const std::vector<std::pair<std::string, const std::vector<std::string>*>>& groups) {
  for (std::size_t a = 0; a < groups.size(); ++a)
    for (std::size_t b = a + 1; b < groups.size(); ++b)
      for (const auto& n : *groups[a].second)
        for (const auto& m : *groups[b].second)
          if (n == m)
            throw InputError("variable '" + n + "' appears in both '" + groups[a].first +
                             "' and '" + groups[b].first + "'");
}

// Prefixes errors from polynomial parsing with the field path.
template <typename F>
auto in_field(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    throw InputError("field '" + path + "': " + e.what());
  }
}

}  // namespace

PolynomialMap parse_map_json(std::string_view text) {
  const Json j = parse_json(text);
  check_keys(j, {"variables", "targets", "map"});
  auto vars = string_list(j, "variables", true);
  auto targets = string_list(j, "targets", true);
  auto comps = string_list(j, "map", true);
  check_disjoint({{"variables", &vars}, {"targets", &targets}});
  if (comps.size() != targets.size())
    throw InputError("field 'map' has " + std::to_string(comps.size()) + " entries but 'targets' has " +
                     std::to_string(targets.size()));
  auto ctx = in_field("variables", [&] { return VariableContext::make(vars); });
  std::vector<Polynomial> polys;
  for (std::size_t i = 0; i < comps.size(); ++i)
    polys.push_back(in_field("map[" + std::to_string(i) + "]",
                             [&] { return parse_polynomial(comps[i], ctx); }));
  return in_field("targets", [&] { return PolynomialMap(ctx, targets, std::move(polys)); });
}

FamilyDescription parse_family_json(std::string_view text) {
  const Json j = parse_json(text);
  check_keys(j, {"parameters", "variables", "targets", "map"});
  auto params = string_list(j, "parameters", true);
  auto vars = string_list(j, "variables", true);
  auto targets = string_list(j, "targets", true);
  auto comps = string_list(j, "map", true);
  check_disjoint({{"parameters", &params}, {"variables", &vars}, {"targets", &targets}});
  if (comps.size() != targets.size())
    throw InputError("field 'map' has " + std::to_string(comps.size()) + " entries but 'targets' has " +
                     std::to_string(targets.size()));
  std::vector<std::string> joint = params;
  joint.insert(joint.end(), vars.begin(), vars.end());
  auto ctx = in_field("parameters", [&] { return VariableContext::make(joint); });
  for (std::size_t i = 0; i < comps.size(); ++i)
    in_field("map[" + std::to_string(i) + "]", [&] { return parse_polynomial(comps[i], ctx); });
  return FamilyDescription(params, vars, targets, comps);
}

std::string read_input(const std::string& source) {
  std::size_t i = 0;
  while (i < source.size() && std::isspace(static_cast<unsigned char>(source[i]))) ++i;
  if (i < source.size() && source[i] == '{') return source;
  std::ifstream in(source, std::ios::binary);
  if (!in) throw InputError("cannot read input file '" + source + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

Json set_json(const AlgebraicSet& s) { return s.to_strings(); }

Json rationals_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Json degree_json(const DegreeResult& d) {
  return Json{{"mu", d.mu},
              {"trials", d.trials},
              {"finite_trials", d.finite_trials},
              {"disagreements", d.disagreements}};
}

Json analysis_json(const AnalysisReport& r) {
  return Json{{"degree", degree_json(r.degree)},
              {"proper", r.proper},
              {"image_closure", set_json(r.image)},
              {"jelonek", set_json(r.jelonek)},
              {"critical_values", set_json(r.critical_values)},
              {"singular_locus", set_json(r.singular_locus)},
              {"bifurcation", set_json(r.bifurcation)}};
}

Json signature_json(const FamilySignature& s) {
  return Json{{"mu", s.mu},
              {"proper", s.proper},
              {"bifurcation_shape", s.bifurcation_shape},
              {"jelonek_shape", s.jelonek_shape}};
}

Json bound_json(const TypeBoundReport& r) {
  Json j{{"mu", r.mu},
         {"r", r.r},
         {"b", r.b_description},
         {"pi1_source", to_string(r.pi1_source)},
         {"subgroup_count", r.subgroup_count},
         {"conjugacy_class_count", r.conjugacy_class_count},
         {"bound", r.bound},
         {"bound_relation", "<="},
         {"statement", "number of topological types <= " + std::to_string(r.bound)},
         {"hall_checked", r.hall_checked}};
  if (!r.sample_r.empty()) {
    j["sample_r"] = r.sample_r;
    j["deviating_samples"] = r.deviating_samples;
  }
  return j;
}

Json table_json(const GroupPresentation& p, const CosetTable& t) {
  Json gens = Json::object();
  for (std::size_t g = 0; g < p.rank(); ++g) gens[p.names()[g]] = t.permutation(g);
  return Json{{"cosets", t.size()}, {"generators", gens}};
}

std::vector<Rational> parse_point(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError("empty coordinate in '" + text + "'");
    out.push_back(parse_rational(item.substr(b, e - b + 1)));
  }
  return out;
}

std::vector<std::vector<Rational>> parse_samples(const std::string& text) {
  std::vector<std::vector<Rational>> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) out.push_back(parse_point(item));
  return out;
}

struct Options {
  std::string map, family, output, at, samples;
  std::string gens, rels, sub, presentation;
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = 5;
  std::size_t random_samples = 16;
  std::size_t index = 0;
  std::size_t mu = 0;
  std::size_t max_cosets = 100000;
  std::uint64_t node_budget = 10'000'000;
};

struct Job {
  std::string input_bytes;
  Json payload;
  std::vector<std::string> warnings;
};

AnalysisOptions analysis_options(const Options& o) {
  AnalysisOptions a;
  a.seed = o.seed;
  a.trials = o.trials;
  return a;
}

void degree_warnings(const DegreeResult& d, std::vector<std::string>& w) {
  if (d.disagreements > 0)
    w.push_back("non-generic sample: " + std::to_string(d.disagreements) + " of " +
                std::to_string(d.trials) + " degree trials disagreed with the mode");
  if (d.finite_trials < d.trials)
    w.push_back("non-generic sample: " + std::to_string(d.trials - d.finite_trials) +
                " degree trials hit an empty or infinite fibre");
}

bool looks_like_count(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// Normalizes the group flags into the presentation text format.
std::string presentation_text(const Options& o) {
  if (!o.presentation.empty()) {
    if (!o.gens.empty() || !o.rels.empty())
      throw InputError("--presentation cannot be combined with --gens/--rels");
    if (o.sub.empty()) return o.presentation;
    return o.presentation + " ; sub: " + o.sub;
  }
  std::string names;
  if (looks_like_count(o.gens)) {
    const auto rank = std::stoul(o.gens);
    for (const auto& n : default_generator_names(rank)) names += (names.empty() ? "" : " ") + n;
  } else {
    for (char c : o.gens) names += c == ',' ? ' ' : c;
  }
  return "gens: " + names + " ; rels: " + o.rels + " ; sub: " + o.sub;
}

void low_index_warnings(const LowIndexResult& r, std::uint64_t budget, std::vector<std::string>& w) {
  if (r.nodes * 10 > budget * 9)
    w.push_back("budget near-miss: low-index search used " + std::to_string(r.nodes) + " of " +
                std::to_string(budget) + " nodes");
}

Job run_map_command(const std::string& cmd, const Options& o) {
  if (o.map.empty()) throw InputError("--map is required");
  Job job;
  job.input_bytes = read_input(o.map);
  const PolynomialMap f = parse_map_json(job.input_bytes);
  const AnalysisOptions opts = analysis_options(o);
  if (cmd == "degree") {
    auto d = topological_degree(f, opts);
    job.payload = degree_json(d);
    degree_warnings(d, job.warnings);
  } else if (cmd == "jelonek") {
    auto s = non_properness_set(f, opts.limits);
    job.payload = Json{{"jelonek", set_json(s)}, {"proper", s.is_empty()}};
  } else if (cmd == "critical") {
    job.payload = Json{{"critical_values", set_json(critical_values(f, opts.limits))}};
  } else if (cmd == "bifurcation") {
    auto r = bifurcation_set(f, opts);
    job.payload = analysis_json(r);
    degree_warnings(r.degree, job.warnings);
  } else if (cmd == "proper") {
    auto s = non_properness_set(f, opts.limits);
    job.payload = Json{{"proper", s.is_empty()}, {"jelonek", set_json(s)}};
  } else if (cmd == "fiber") {
    if (o.at.empty()) throw InputError("--at is required");
    auto y = parse_point(o.at);
    auto c = count_fiber_distinct(f, y, opts);
    job.payload = Json{{"at", rationals_json(y)},
                       {"distinct", c.distinct},
                       {"with_multiplicity", c.with_multiplicity},
                       {"attempts", c.attempts},
                       {"confirmed", c.confirmed}};
    if (!c.confirmed)
      job.warnings.push_back("fibre count not confirmed within the linear-form retry cap");
  } else if (cmd == "classify") {
    auto r = type_bound_univariate(f, opts);
    job.payload = bound_json(r);
  }
  return job;
}

Job run_family_command(const std::string& cmd, const Options& o) {
  if (o.family.empty()) throw InputError("--family is required");
  Job job;
  job.input_bytes = read_input(o.family);
  const FamilyDescription fam = parse_family_json(job.input_bytes);
  const AnalysisOptions opts = analysis_options(o);
  const auto samples = o.samples.empty()
                           ? random_parameter_samples(fam, o.random_samples, o.seed)
                           : parse_samples(o.samples);
  Json sample_list = Json::array();
  for (const auto& m : samples) sample_list.push_back(rationals_json(m));

  if (cmd == "analyze" || cmd == "partition") {
    auto part = partition_family(fam, samples, opts);
    if (cmd == "analyze") {
      Json members = Json::array();
      for (const auto& m : part.members) {
        Json mj{{"parameters", rationals_json(m.parameter_value)}, {"degenerate", m.degenerate}};
        if (m.degenerate) mj["reason"] = m.reason;
        if (m.report) mj["report"] = analysis_json(*m.report);
        if (m.signature) mj["signature"] = signature_json(*m.signature);
        members.push_back(std::move(mj));
      }
      job.payload = Json{{"members", members}};
    } else {
      Json classes = Json::array();
      for (const auto& c : part.classes)
        classes.push_back(Json{{"signature", signature_json(c.signature)}, {"samples", c.samples}});
      job.payload = Json{{"samples", sample_list},
                         {"classes", classes},
                         {"class_count", part.classes.size()},
                         {"proper_class_count", part.proper_class_count},
                         {"degenerate", part.degenerate}};
    }
    if (!part.degenerate.empty())
      job.warnings.push_back("non-generic sample: " + std::to_string(part.degenerate.size()) +
                             " members could not be analysed");
  } else if (cmd == "degree") {
    auto c = check_generic_constancy(fam, samples, opts);
    job.payload = Json{{"mu", c.family.mu},
                       {"generically_finite", c.family.generically_finite},
                       {"trials", c.family.trials},
                       {"disagreements", c.family.disagreements},
                       {"samples", sample_list},
                       {"member_degrees", c.member_degrees},
                       {"agreeing", c.agreeing},
                       {"total", c.total},
                       {"violators", c.violators}};
    if (!c.violators.empty())
      job.warnings.push_back("non-generic sample: " + std::to_string(c.violators.size()) +
                             " members have a degree different from the family degree");
  } else if (cmd == "classify") {
    auto r = family_type_bound(fam, samples, opts);
    job.payload = bound_json(r);
    job.payload["samples"] = sample_list;
    if (!r.deviating_samples.empty())
      job.warnings.push_back("non-generic sample: " + std::to_string(r.deviating_samples.size()) +
                             " members have a non-generic number of bifurcation points");
  }
  return job;
}

Job run_group_command(const std::string& cmd, const Options& o) {
  Job job;
  if (cmd == "hall") {
    if (!looks_like_count(o.gens)) throw InputError("hall needs --gens <rank>");
    if (o.index == 0) throw InputError("--index must be at least 1");
    const auto n = std::stoul(o.gens);
    job.input_bytes = "hall " + o.gens + " " + std::to_string(o.index);
    job.payload = Json{{"rank", n}, {"index", o.index},
                       {"subgroup_count", hall_count_free(n, o.index).get_str()}};
    return job;
  }
  job.input_bytes = presentation_text(o);
  const auto pt = parse_presentation(job.input_bytes);
  const auto& p = pt.presentation;
  Json rels = Json::array();
  for (const auto& r : p.relators()) rels.push_back(p.format_word(r));
  if (cmd == "todd-coxeter") {
    auto t = todd_coxeter(p, pt.subgroup, o.max_cosets);
    job.payload = Json{{"relators", rels}, {"index", t.size()}, {"table", table_json(p, t)}};
  } else if (cmd == "low-index") {
    if (o.index == 0) throw InputError("--index must be at least 1");
    auto r = low_index_subgroups(p, o.index, o.node_budget);
    Json tables = Json::array();
    for (const auto& t : r.tables) tables.push_back(table_json(p, t)["generators"]);
    job.payload = Json{{"relators", rels},
                       {"index", r.index},
                       {"subgroup_count", r.subgroup_count},
                       {"conjugacy_class_count", r.conjugacy_class_count},
                       {"nodes", r.nodes},
                       {"tables", tables}};
    low_index_warnings(r, o.node_budget, job.warnings);
  }
  return job;
}

Job run_classify_presentation(const Options& o) {
  if (o.mu == 0) throw InputError("classify with a presentation needs --mu");
  Job job;
  job.input_bytes = presentation_text(o);
  const auto pt = parse_presentation(job.input_bytes);
  job.payload = bound_json(type_bound_with_presentation(pt.presentation, o.mu, o.node_budget));
  return job;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Topological-type bounds for polynomial maps and families", "polytopo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", POLYTOPO_VERSION);

  auto common = [&](CLI::App* s) {
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--trials", o.trials, "random trials for degree estimates")
        ->check(CLI::PositiveNumber);
    s->add_option("--output", o.output, "write the report to this file");
  };
  auto group_flags = [&](CLI::App* s) {
    s->add_option("--gens", o.gens, "generator count or names");
    s->add_option("--rels", o.rels, "comma-separated relators");
    s->add_option("--sub", o.sub, "comma-separated subgroup generators");
    s->add_option("--presentation", o.presentation, "'gens: a b ; rels: ... ; sub: ...'");
  };

  std::vector<std::pair<std::string, CLI::App*>> leaves;
  for (const char* name : {"degree", "jelonek", "critical", "bifurcation", "proper", "fiber"}) {
    auto* s = app.add_subcommand(name);
    common(s);
    s->add_option("--map", o.map, "map file or inline JSON")->required();
    if (std::string(name) == "fiber") s->add_option("--at", o.at, "target point, comma separated")->required();
    leaves.emplace_back(name, s);
  }
  {
    auto* s = app.add_subcommand("classify", "bound on topological types");
    common(s);
    group_flags(s);
    s->add_option("--map", o.map, "one-variable map file or inline JSON");
    s->add_option("--mu", o.mu, "covering degree, with a presentation");
    s->add_option("--node-budget", o.node_budget)->check(CLI::PositiveNumber);
    leaves.emplace_back("classify", s);
  }
  auto* family = app.add_subcommand("family", "parametrized families");
  family->require_subcommand(1);
  for (const char* name : {"analyze", "partition", "degree", "classify"}) {
    auto* s = family->add_subcommand(name);
    common(s);
    s->add_option("--family", o.family, "family file or inline JSON")->required();
    s->add_option("--samples", o.samples, "parameter values, e.g. '1,2;3/2,0'");
    s->add_option("--random-samples", o.random_samples, "seeded random samples if --samples is absent");
    leaves.emplace_back(std::string("family ") + name, s);
  }
  auto* group = app.add_subcommand("group", "finitely presented groups");
  group->require_subcommand(1);
  for (const char* name : {"todd-coxeter", "low-index", "hall"}) {
    auto* s = group->add_subcommand(name);
    common(s);
    group_flags(s);
    s->add_option("--index", o.index, "subgroup index");
    s->add_option("--max-cosets", o.max_cosets)->check(CLI::PositiveNumber);
    s->add_option("--node-budget", o.node_budget)->check(CLI::PositiveNumber);
    leaves.emplace_back(std::string("group ") + name, s);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  std::string command;
  for (const auto& [name, s] : leaves)
    if (s->parsed()) command = name;

  try {
    Job job;
    if (command.rfind("family ", 0) == 0)
      job = run_family_command(command.substr(7), o);
    else if (command.rfind("group ", 0) == 0)
      job = run_group_command(command.substr(6), o);
    else if (command == "classify" && o.map.empty())
      job = run_classify_presentation(o);
    else
      job = run_map_command(command, o);

    Json report{{"command", command},
                {"seed", o.seed},
                {"version", POLYTOPO_VERSION},
                {"input_hash", hex(fnv1a(job.input_bytes))},
                {"payload", job.payload},
                {"warnings", job.warnings}};
    const std::string text = report.dump(2) + "\n";
    if (o.output.empty()) {
      out << text;
    } else {
      std::ofstream f(o.output, std::ios::binary);
      if (!f) throw InputError("cannot write output file '" + o.output + "'");
      f << text;
    }
    return kOk;
  } catch (const CapacityError& e) {
    err << "capacity exceeded: " << e.what() << "\n";
    return kCapacity;
  } catch (const InconclusiveError& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kInputError;
  } catch (const NotGenericallyFiniteError& e) {
    err << "not generically finite: " << e.what() << "\n";
    return kInputError;
  } catch (const InfiniteFiberError& e) {
    err << "infinite fibre: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace polytopo::cli
