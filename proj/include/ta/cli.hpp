// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ta/classes.hpp"
#include "ta/fixtures.hpp"
#include "ta/forcing.hpp"
#include "ta/fuzz.hpp"
#include "ta/report.hpp"
#include "ta/surface.hpp"
#include "ta/types.hpp"

namespace ta {
namespace cli {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::map<std::string, int> parse_bounds(const std::string& text) {
  std::map<std::string, int> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    auto pos = item.find('=');
    if (pos == std::string::npos) throw UsageError("bad bound entry '" + item + "', want sort=k");
    out[item.substr(0, pos)] = std::stoi(item.substr(pos + 1));
  }
  return out;
}

template <typename T>
inline const T& need(const T* ptr, const std::string& kind, const std::string& name) {
  if (!ptr) throw UsageError("no " + kind + " named '" + name + "'");
  return *ptr;
}

inline Flavor parse_flavor(const std::string& name) {
  if (name == "plain") return Flavor::Plain;
  if (name == "ctor") return Flavor::CtorBased;
  if (name == "fin") return Flavor::FiniteSorts;
  throw UsageError("unknown flavor '" + name + "' (want plain|ctor|fin)");
}

struct Options {
  std::string file;
  std::string model, sentences, morphism, subst_name, goal, phi, type_name, pool, forcing;
  std::string condition, start, name = "uls", kind = "morphism", flavor = "plain", proof;
  std::string bound;
  int term_depth = 3, star_cap = 8, k = 4, depth = 3, cases = 1000;
  int max_d = 1, max_gamma = 1;
  long long budget = 50'000'000;
  std::uint64_t seed = 1;
};

inline EnumBounds enum_bounds(const Options& opt) {
  EnumBounds b;
  b.max_size = parse_bounds(opt.bound);
  b.node_budget = opt.budget;
  return b;
}

inline SearchBounds search_bounds(const Options& opt) {
  SearchBounds b;
  b.term_depth = opt.term_depth;
  b.star_cap = opt.star_cap;
  b.node_budget = opt.budget;
  return b;
}

// Collects the Phi presentations for entails: either the named one, or every
// presentation over the goal's signature other than the goal itself.
inline std::vector<Sentence> gather_phi(const SpecFile& spec, const Options& opt,
                                        const PresDecl& goal) {
  std::vector<Sentence> phi;
  if (!opt.phi.empty()) {
    const PresDecl& p = need(spec.find_presentation(opt.phi), "presentation", opt.phi);
    phi = p.sentences;
  } else {
    for (const auto& p : spec.presentations)
      if (p.sig_name == goal.sig_name && p.name != goal.name)
        phi.insert(phi.end(), p.sentences.begin(), p.sentences.end());
  }
  return phi;
}

inline int run_check(const SpecFile& spec, const Options& opt, Report& report, std::ostream& out) {
  ValidationReport all;
  for (const auto& d : spec.forcings)
    all.merge(validate_forcing_property(d.property, search_bounds(opt)), "forcing." + d.name);
  for (const auto& d : spec.types) all.merge(check_type(d.type), "type." + d.name);
  report.set("signatures", static_cast<long long>(spec.signatures.size()));
  report.set("models", static_cast<long long>(spec.models.size()));
  report.set("presentations", static_cast<long long>(spec.presentations.size()));
  report.set("violations", static_cast<long long>(all.size()));
  for (std::size_t i = 0; i < all.items().size(); ++i)
    report.set("violation." + std::to_string(i),
               all.items()[i].location + ": " + all.items()[i].message);
  report.verdict(all.empty() ? "ok" : "violations");
  report.render(out);
  return all.empty() ? 0 : 1;
}

inline int run_sat(const SpecFile& spec, const Options& opt, Report& report, std::ostream& out) {
  const ModelDecl& m = need(spec.find_model(opt.model), "model", opt.model);
  bool all_hold = true;
  int checked = 0;
  for (const auto& p : spec.presentations) {
    if (opt.sentences != "all" && p.name != opt.sentences) continue;
    if (p.sig_name != m.sig_name) continue;
    for (std::size_t i = 0; i < p.sentences.size(); ++i) {
      bool holds = satisfies(m.model, p.sentences[i]);
      report.set_bool("sat." + p.name + "." + std::to_string(i), holds);
      all_hold = all_hold && holds;
      ++checked;
    }
  }
  report.set("checked", checked);
  report.verdict(all_hold ? "holds" : "fails");
  report.render(out);
  return all_hold ? 0 : 1;
}

inline int run_reduct(const SpecFile& spec, const Options& opt, Report& report, std::ostream& out) {
  const MorphDecl& h = need(spec.find_morphism(opt.morphism), "morphism", opt.morphism);
  const ModelDecl& m = need(spec.find_model(opt.model), "model", opt.model);
  if (m.sig_name != h.target_name)
    throw UsageError("model '" + m.name + "' is not over the morphism's target signature");
  FiniteModel reduct = reduct_model(h.morphism, m.model);
  ValidationReport check = validate_model(reduct);
  report.set_bool("valid", check.empty());
  report.verdict("ok");
  report.render(out);
  detail::print_model_decl(out, ModelDecl{"R", h.source_name, std::move(reduct)});
  return 0;
}

inline int run_translate(const SpecFile& spec, const Options& opt, Report& report,
                         std::ostream& out) {
  const MorphDecl& h = need(spec.find_morphism(opt.morphism), "morphism", opt.morphism);
  const PresDecl& p = need(spec.find_presentation(opt.sentences), "presentation", opt.sentences);
  report.verdict("ok");
  report.set("sentences", static_cast<long long>(p.sentences.size()));
  report.render(out);
  for (const auto& s : p.sentences)
    out << print_sentence(translate_sentence(h.morphism, s)) << "\n";
  return 0;
}

inline int run_subst(const SpecFile& spec, const Options& opt, Report& report, std::ostream& out) {
  const SubstDecl& th = need(spec.find_substitution(opt.subst_name), "substitution", opt.subst_name);
  if (!opt.sentences.empty()) {
    const PresDecl& p = need(spec.find_presentation(opt.sentences), "presentation", opt.sentences);
    Signature expect = th.subst.source_sig();
    const SigDecl& psig = need(spec.find_signature(p.sig_name), "signature", p.sig_name);
    if (!(*psig.sig == expect))
      throw UsageError("presentation '" + p.name + "' is not over the substitution's source");
    report.verdict("ok");
    report.render(out);
    for (const auto& s : p.sentences)
      out << print_sentence(apply_substitution(th.subst, s)) << "\n";
    return 0;
  }
  if (!opt.model.empty()) {
    const ModelDecl& m = need(spec.find_model(opt.model), "model", opt.model);
    const SigDecl& msig = need(spec.find_signature(m.sig_name), "signature", m.sig_name);
    if (!(*msig.sig == th.subst.target_sig()))
      throw UsageError("model '" + m.name + "' is not over the substitution's target");
    FiniteModel reduct = reduct_along_substitution(th.subst, m.model);
    report.verdict("ok");
    report.render(out);
    detail::print_model_decl(out, ModelDecl{"R", th.sig_name, std::move(reduct)});
    return 0;
  }
  throw UsageError("subst needs --sentences or --model");
}

inline int run_reachable(const SpecFile& spec, const Options& opt, Report& report,
                         std::ostream& out) {
  const ModelDecl& m = need(spec.find_model(opt.model), "model", opt.model);
  ReachabilityCertificate cert = is_reachable(m.model);
  report.set_bool("reachable", cert.reachable);
  if (cert.reachable) {
    for (const auto& [key, term] : cert.witnesses)
      report.set("witness." + key.first + "." + m.model.element_name(key.first, key.second),
                 print_term(term));
    report.verdict("holds");
  } else {
    report.set("unreachable.sort", cert.bad_sort);
    report.set("unreachable.element", m.model.element_name(cert.bad_sort, cert.bad_element));
    report.verdict("counterexample");
  }
  report.render(out);
  return cert.reachable ? 0 : 1;
}

inline int run_ctor_based(const SpecFile& spec, const Options& opt, Report& report,
                          std::ostream& out) {
  const ModelDecl& m = need(spec.find_model(opt.model), "model", opt.model);
  if (m.model.sig->ctor_funcs.empty())
    throw MissingCtors("model signature declares no constructors");
  CtorCertificate cert = is_constructor_based(m.model);
  report.set_bool("constructor_based", cert.constructor_based);
  if (!cert.constructor_based) {
    report.set("outside.sort", cert.bad_sort);
    report.set("outside.element", m.model.element_name(cert.bad_sort, cert.bad_element));
  }
  report.verdict(cert.constructor_based ? "holds" : "counterexample");
  report.render(out);
  return cert.constructor_based ? 0 : 1;
}

inline int run_entails(const SpecFile& spec, const Options& opt, Report& report,
                       std::ostream& out) {
  const PresDecl& goal = need(spec.find_presentation(opt.goal), "presentation", opt.goal);
  const SigDecl& sig = need(spec.find_signature(goal.sig_name), "signature", goal.sig_name);
  std::vector<Sentence> phi = gather_phi(spec, opt, goal);
  Flavor flavor = parse_flavor(opt.flavor);
  EnumBounds bounds = enum_bounds(opt);
  report.set("flavor", opt.flavor);
  report.set("bound", opt.bound);
  report.set("phi.size", static_cast<long long>(phi.size()));
  for (const auto& g : goal.sentences) {
    Verdict v = semantic_entails(sig.sig, phi, g, flavor, bounds);
    if (v.counterexample) {
      report.set("goal", print_sentence(g));
      report.verdict("counterexample");
      report.render(out);
      detail::print_model_decl(out, ModelDecl{"CEX", goal.sig_name, *v.counterexample});
      return 1;
    }
  }
  report.verdict("holds-up-to-bound");
  report.render(out);
  return 0;
}

inline int run_check_proof(const SpecFile& spec, const Options& opt, Report& report,
                           std::ostream& out) {
  ValidationReport all;
  int bounded = 0;
  for (const auto& proof : spec.proofs) {
    if (!opt.proof.empty() && proof.name != opt.proof) continue;
    const SigDecl& sig = need(spec.find_signature(proof.sig_name), "signature", proof.sig_name);
    Derivation derivation;
    std::map<std::string, int> index;
    for (const auto& nd : proof.nodes) {
      DerivNode node;
      if (nd.rule == "monotonicity") node.rule = DerivNode::Monotonicity;
      else if (nd.rule == "transitivity") node.rule = DerivNode::Transitivity;
      else if (nd.rule == "union") node.rule = DerivNode::Union;
      else if (nd.rule == "translation") node.rule = DerivNode::Translation;
      else if (nd.rule == "cb") node.rule = DerivNode::CbBounded;
      else if (nd.rule == "fn") node.rule = DerivNode::FnBounded;
      else {
        all.add("proof." + proof.name + "." + nd.name, "unknown rule '" + nd.rule + "'");
        continue;
      }
      for (const auto& ref : nd.premises) {
        auto it = index.find(ref);
        if (it == index.end()) {
          all.add("proof." + proof.name + "." + nd.name, "unknown premise node '" + ref + "'");
          continue;
        }
        node.premises.push_back(it->second);
      }
      node.conclusion.sig = sig.sig;
      if (!nd.lhs.empty())
        node.conclusion.lhs =
            need(spec.find_presentation(nd.lhs), "presentation", nd.lhs).sentences;
      if (!nd.rhs.empty())
        node.conclusion.rhs =
            need(spec.find_presentation(nd.rhs), "presentation", nd.rhs).sentences;
      if (!nd.morphism.empty()) {
        const MorphDecl& h = need(spec.find_morphism(nd.morphism), "morphism", nd.morphism);
        node.morphism = h.morphism;
        node.conclusion.sig = h.morphism.target;
      }
      node.cb_depth = nd.depth;
      node.fn_caps = nd.caps;
      node.flavor = parse_flavor(nd.flavor);
      node.bounds.max_size = nd.bound;
      index[nd.name] = static_cast<int>(derivation.nodes.size());
      derivation.nodes.push_back(std::move(node));
    }
    DerivationReport result = check_derivation(derivation);
    all.merge(result.violations, "proof." + proof.name);
    bounded += static_cast<int>(result.bounded_nodes.size());
  }
  report.set("violations", static_cast<long long>(all.size()));
  report.set("bounded_nodes", bounded);
  for (std::size_t i = 0; i < all.items().size(); ++i)
    report.set("violation." + std::to_string(i),
               all.items()[i].location + ": " + all.items()[i].message);
  report.verdict(all.empty() ? "ok" : "violations");
  report.render(out);
  return all.empty() ? 0 : 1;
}

inline int run_realize(const SpecFile& spec, const Options& opt, Report& report,
                       std::ostream& out) {
  const ModelDecl& m = need(spec.find_model(opt.model), "model", opt.model);
  const TypeDecl& t = need(spec.find_type(opt.type_name), "type", opt.type_name);
  auto witness = realizes(m.model, t.type);
  if (witness) {
    for (const auto& [var, idx] : *witness)
      report.set("witness." + var.name, m.model.element_name(var.sort, idx));
    report.verdict("realized");
  } else {
    report.verdict("omitted");
  }
  report.render(out);
  return witness ? 0 : 1;
}

inline int run_isolate(const SpecFile& spec, const Options& opt, Report& report,
                       std::ostream& out) {
  const PresDecl& phi = need(spec.find_presentation(opt.phi), "presentation", opt.phi);
  const TypeDecl& t = need(spec.find_type(opt.type_name), "type", opt.type_name);
  const SigDecl& sig = need(spec.find_signature(t.sig_name), "signature", t.sig_name);
  std::vector<Sentence> pool;
  if (!opt.pool.empty())
    pool = need(spec.find_presentation(opt.pool), "presentation", opt.pool).sentences;
  IsolationBounds bounds;
  bounds.max_d_per_sort = opt.max_d;
  bounds.max_gamma = opt.max_gamma;
  bounds.model_bounds = enum_bounds(opt);
  auto witness = search_isolation(sig.sig, phi.sentences, t.type, pool, bounds);
  if (witness) {
    for (const auto& [name, sort] : witness->d) report.set("d." + name, sort);
    for (std::size_t i = 0; i < witness->gamma.size(); ++i)
      report.set("gamma." + std::to_string(i), print_sentence(witness->gamma[i]));
    for (const auto& [var, term] : witness->theta)
      report.set("theta." + var.name, print_term(term));
    report.verdict("isolated-within-bounds");
  } else {
    report.verdict("no-isolation-within-bounds");
  }
  report.render(out);
  return witness ? 0 : 1;
}

inline int run_force(const SpecFile& spec, const Options& opt, Report& report, std::ostream& out,
                     bool weak) {
  const ForcingDecl& f = need(spec.find_forcing(opt.forcing), "forcing", opt.forcing);
  SearchBounds bounds = search_bounds(opt);
  ValidationReport valid = validate_forcing_property(f.property, bounds);
  if (!valid.empty()) {
    report.set("violations", static_cast<long long>(valid.size()));
    report.verdict("invalid-forcing-property");
    report.render(out);
    return 1;
  }
  int p = f.property.find(opt.condition.empty()
                              ? f.property.conds[static_cast<std::size_t>(f.property.least)].name
                              : opt.condition);
  const PresDecl& pres = need(spec.find_presentation(opt.sentences), "presentation", opt.sentences);
  ForcingEngine engine(f.property, bounds);
  bool all = true;
  for (std::size_t i = 0; i < pres.sentences.size(); ++i) {
    bool holds = weak ? engine.weakly_forces(p, pres.sentences[i])
                      : engine.forces(p, pres.sentences[i]);
    report.set_bool((weak ? "wforces." : "forces.") + std::to_string(i), holds);
    all = all && holds;
  }
  for (const auto& d : engine.diagnostics()) report.note("diagnostic: " + d);
  report.verdict(all ? "holds" : "fails");
  report.render(out);
  return all ? 0 : 1;
}

inline int run_generic(const SpecFile& spec, const Options& opt, Report& report, std::ostream& out,
                       bool build_model) {
  const ForcingDecl& f = need(spec.find_forcing(opt.forcing), "forcing", opt.forcing);
  SearchBounds bounds = search_bounds(opt);
  ValidationReport valid = validate_forcing_property(f.property, bounds);
  if (!valid.empty()) {
    report.set("violations", static_cast<long long>(valid.size()));
    for (std::size_t i = 0; i < valid.items().size(); ++i)
      report.set("violation." + std::to_string(i),
                 valid.items()[i].location + ": " + valid.items()[i].message);
    report.verdict("invalid-forcing-property");
    report.render(out);
    return 1;
  }
  int start = opt.start.empty() ? f.property.least : f.property.find(opt.start);
  const PresDecl& pool = need(spec.find_presentation(opt.pool), "presentation", opt.pool);
  ForcingEngine engine(f.property, bounds);
  GenericIdeal ideal;
  try {
    ideal = extend_to_generic(engine, start, pool.sentences);
  } catch (const DirectednessFailure& e) {
    report.set("error", e.what());
    report.verdict("directedness-failure");
    report.render(out);
    return 1;
  }
  std::string members;
  for (int m : ideal.members) {
    if (!members.empty()) members += " ";
    members += f.property.conds[static_cast<std::size_t>(m)].name;
  }
  report.set("ideal", members);
  for (std::size_t i = 0; i < ideal.decisions.size(); ++i) {
    const Decision& d = ideal.decisions[i];
    report.set("decision." + std::to_string(i),
               std::string(d.positive ? "+ " : "- ") + print_sentence(d.phi) + " @ " +
                   f.property.conds[static_cast<std::size_t>(d.condition)].name);
  }
  if (build_model) {
    TermQuotientModel model = generic_model(f.property, ideal, bounds);
    for (const auto& sort : model.signature().sorts) {
      std::string classes;
      for (const auto& rep : model.carrier(sort)) {
        if (!classes.empty()) classes += " ";
        classes += print_term(rep);
      }
      report.set("carrier." + sort, classes);
    }
    bool adequate = true;
    for (std::size_t i = 0; i < ideal.decisions.size(); ++i) {
      const Decision& d = ideal.decisions[i];
      bool sat = model.satisfies(d.phi);
      report.set_bool("model." + std::to_string(i), sat);
      if (sat != d.positive) adequate = false;
    }
    report.set_bool("adequate", adequate);
  }
  for (const auto& d : engine.diagnostics()) report.note("diagnostic: " + d);
  report.verdict("ok");
  report.render(out);
  return 0;
}

inline int run_fixtures(const Options& opt, Report& report, std::ostream& out) {
  FixtureParams params;
  params.k = opt.k;
  params.depth = opt.depth;
  SpecFile spec = fixtures(opt.name, params);
  report.set("fixture", opt.name);
  report.set("k", opt.k);
  report.verdict("ok");
  report.render(out);
  out << print_spec(spec);
  return 0;
}

inline int run_fuzz(const Options& opt, Report& report, std::ostream& out) {
  CampaignResult result = opt.kind == "subst" ? run_subst_campaign(opt.cases, opt.seed)
                                              : run_satcond_campaign(opt.cases, opt.seed);
  report.set("kind", opt.kind);
  report.set("cases", result.cases);
  report.set("failures", result.failures);
  report.set("seed", static_cast<long long>(opt.seed));
  if (result.failures) report.set("first_failure", result.first_failure);
  report.verdict(result.failures == 0 ? "holds" : "counterexample");
  report.render(out);
  return result.failures == 0 ? 0 : 1;
}

inline int run(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"ta: many-sorted transition algebras at desk scale"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool with_file) {
    if (with_file) sub->add_option("file", opt.file, "input .ta file")->required();
    sub->add_option("--seed", opt.seed, "rng seed (TA_SEED overrides)");
    sub->add_option("--budget", opt.budget, "node budget for searches");
    sub->add_option("--term-depth", opt.term_depth, "ground-term depth bound");
    sub->add_option("--star-cap", opt.star_cap, "iteration bound for star");
    sub->add_option("--bound", opt.bound, "carrier bounds, sort=k,...");
    return sub;
  };

  CLI::App* check = add_common(app.add_subcommand("check", "parse and validate a file"), true);
  CLI::App* sat = add_common(app.add_subcommand("sat", "evaluate satisfaction"), true);
  sat->add_option("--model", opt.model)->required();
  sat->add_option("--sentence", opt.sentences, "presentation name or 'all'")->required();
  CLI::App* reduct = add_common(app.add_subcommand("reduct", "model reduct along a morphism"), true);
  reduct->add_option("--morphism", opt.morphism)->required();
  reduct->add_option("--model", opt.model)->required();
  CLI::App* translate =
      add_common(app.add_subcommand("translate", "translate sentences along a morphism"), true);
  translate->add_option("--morphism", opt.morphism)->required();
  translate->add_option("--sentences", opt.sentences)->required();
  CLI::App* subst = add_common(app.add_subcommand("subst", "apply a substitution"), true);
  subst->add_option("--subst", opt.subst_name)->required();
  subst->add_option("--sentences", opt.sentences);
  subst->add_option("--model", opt.model);
  CLI::App* reachable = add_common(app.add_subcommand("reachable", "reachability check"), true);
  reachable->add_option("--model", opt.model)->required();
  CLI::App* ctor = add_common(app.add_subcommand("ctor-based", "constructor-based check"), true);
  ctor->add_option("--model", opt.model)->required();
  CLI::App* entails = add_common(app.add_subcommand("entails", "bounded semantic consequence"), true);
  entails->add_option("--goal", opt.goal)->required();
  entails->add_option("--phi", opt.phi);
  entails->add_option("--flavor", opt.flavor);
  CLI::App* proof = add_common(app.add_subcommand("check-proof", "check a derivation"), true);
  proof->add_option("--proof", opt.proof);
  CLI::App* realize = add_common(app.add_subcommand("realize", "type realization"), true);
  realize->add_option("--model", opt.model)->required();
  realize->add_option("--type", opt.type_name)->required();
  CLI::App* isolate = add_common(app.add_subcommand("isolate", "bounded isolation search"), true);
  isolate->add_option("--phi", opt.phi)->required();
  isolate->add_option("--type", opt.type_name)->required();
  isolate->add_option("--pool", opt.pool);
  isolate->add_option("--max-d", opt.max_d);
  isolate->add_option("--max-gamma", opt.max_gamma);
  CLI::App* force = add_common(app.add_subcommand("force", "forcing relation"), true);
  force->add_option("--forcing", opt.forcing)->required();
  force->add_option("--condition", opt.condition);
  force->add_option("--sentences", opt.sentences)->required();
  CLI::App* wforce = add_common(app.add_subcommand("wforce", "weak forcing"), true);
  wforce->add_option("--forcing", opt.forcing)->required();
  wforce->add_option("--condition", opt.condition);
  wforce->add_option("--sentences", opt.sentences)->required();
  CLI::App* gext = add_common(app.add_subcommand("generic-extend", "build a generic ideal"), true);
  gext->add_option("--forcing", opt.forcing)->required();
  gext->add_option("--start", opt.start);
  gext->add_option("--pool", opt.pool)->required();
  CLI::App* gmodel = add_common(app.add_subcommand("generic-model", "build the generic model"), true);
  gmodel->add_option("--forcing", opt.forcing)->required();
  gmodel->add_option("--start", opt.start);
  gmodel->add_option("--pool", opt.pool)->required();
  CLI::App* fixtures_cmd = add_common(app.add_subcommand("fixtures", "emit a named fixture"), false);
  fixtures_cmd->add_option("--name", opt.name);
  fixtures_cmd->add_option("--k", opt.k);
  fixtures_cmd->add_option("--depth", opt.depth);
  CLI::App* fuzz_cmd =
      add_common(app.add_subcommand("fuzz-satcond", "satisfaction-condition fuzzing"), false);
  fuzz_cmd->add_option("--kind", opt.kind, "morphism|subst");
  fuzz_cmd->add_option("--cases", opt.cases);

  std::vector<std::string> argv = args;
  try {
    std::vector<const char*> cargv;
    cargv.push_back("ta");
    for (const auto& a : argv) cargv.push_back(a.c_str());
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    out << "usage error: " << e.what() << "\n";
    return 2;
  }

  if (const char* env = std::getenv("TA_SEED")) opt.seed = std::strtoull(env, nullptr, 10);

  try {
    SpecFile spec;
    CLI::App* active = app.get_subcommands().front();
    const std::string verb = active->get_name();
    if (!opt.file.empty()) spec = parse_spec(slurp(opt.file), opt.file);
    Report report(verb);
    report.set("seed", static_cast<long long>(opt.seed));
    if (active == check) return run_check(spec, opt, report, out);
    if (active == sat) return run_sat(spec, opt, report, out);
    if (active == reduct) return run_reduct(spec, opt, report, out);
    if (active == translate) return run_translate(spec, opt, report, out);
    if (active == subst) return run_subst(spec, opt, report, out);
    if (active == reachable) return run_reachable(spec, opt, report, out);
    if (active == ctor) return run_ctor_based(spec, opt, report, out);
    if (active == entails) return run_entails(spec, opt, report, out);
    if (active == proof) return run_check_proof(spec, opt, report, out);
    if (active == realize) return run_realize(spec, opt, report, out);
    if (active == isolate) return run_isolate(spec, opt, report, out);
    if (active == force) return run_force(spec, opt, report, out, false);
    if (active == wforce) return run_force(spec, opt, report, out, true);
    if (active == gext) return run_generic(spec, opt, report, out, false);
    if (active == gmodel) return run_generic(spec, opt, report, out, true);
    if (active == fixtures_cmd) return run_fixtures(opt, report, out);
    if (active == fuzz_cmd) return run_fuzz(opt, report, out);
    out << "usage error: unknown verb\n";
    return 2;
  } catch (const ParseError& e) {
    out << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    out << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimit& e) {
    out << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const UnknownFixture& e) {
    out << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cli
}  // namespace ta
