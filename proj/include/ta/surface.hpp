// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ta/classes.hpp"
#include "ta/forcing.hpp"
#include "ta/institution.hpp"
#include "ta/lexer.hpp"
#include "ta/model.hpp"
#include "ta/printer.hpp"
#include "ta/types.hpp"

namespace ta {

// ---------------------------------------------------------------------------
// Declarations of a .ta file. Cross-references are by name and resolved at
// parse time; the payloads carry the resolved values.
// ---------------------------------------------------------------------------

struct SigDecl {
  std::string name;
  SigPtr sig;
  friend bool operator==(const SigDecl& a, const SigDecl& b) {
    return a.name == b.name && *a.sig == *b.sig;
  }
};

struct ModelDecl {
  std::string name, sig_name;
  FiniteModel model;
  friend bool operator==(const ModelDecl&, const ModelDecl&) = default;
};

struct PresDecl {
  std::string name, sig_name;
  std::vector<Sentence> sentences;
  friend bool operator==(const PresDecl&, const PresDecl&) = default;
};

struct MorphDecl {
  std::string name, source_name, target_name;
  SignatureMorphism morphism;
  friend bool operator==(const MorphDecl&, const MorphDecl&) = default;
};

struct SubstDecl {
  std::string name, sig_name;
  Substitution subst;
  friend bool operator==(const SubstDecl&, const SubstDecl&) = default;
};

struct ForcingDecl {
  std::string name;
  std::vector<std::string> cond_sig_names;  // parallel to property.conds
  ForcingProperty property;
  friend bool operator==(const ForcingDecl& a, const ForcingDecl& b) {
    if (a.name != b.name || a.cond_sig_names != b.cond_sig_names) return false;
    if (a.property.order != b.property.order || a.property.least != b.property.least) return false;
    if (a.property.conds.size() != b.property.conds.size()) return false;
    for (std::size_t i = 0; i < a.property.conds.size(); ++i) {
      const auto& x = a.property.conds[i];
      const auto& y = b.property.conds[i];
      if (x.name != y.name || *x.sig != *y.sig || x.atoms != y.atoms || x.gamma != y.gamma)
        return false;
    }
    return true;
  }
};

struct TypeDecl {
  std::string name, sig_name;
  LogicType type;
  friend bool operator==(const TypeDecl&, const TypeDecl&) = default;
};

struct QueryDecl {
  std::string name, verb;
  std::vector<std::pair<std::string, std::string>> args;  // key, value
  friend bool operator==(const QueryDecl&, const QueryDecl&) = default;
};

struct ProofNodeDecl {
  std::string name;
  std::string rule;  // monotonicity | transitivity | union | translation | cb | fn
  std::vector<std::string> premises;
  std::string lhs, rhs;      // presentation names of the conclusion
  std::string morphism;      // translation
  int depth = 0;             // cb
  std::map<std::string, int> caps;   // fn
  std::map<std::string, int> bound;  // cb/fn model bounds
  std::string flavor = "plain";
  friend bool operator==(const ProofNodeDecl&, const ProofNodeDecl&) = default;
};

struct ProofDecl {
  std::string name, sig_name;
  std::vector<ProofNodeDecl> nodes;
  friend bool operator==(const ProofDecl&, const ProofDecl&) = default;
};

struct SpecFile {
  std::vector<SigDecl> signatures;
  std::vector<ModelDecl> models;
  std::vector<PresDecl> presentations;
  std::vector<MorphDecl> morphisms;
  std::vector<SubstDecl> substitutions;
  std::vector<ForcingDecl> forcings;
  std::vector<TypeDecl> types;
  std::vector<QueryDecl> queries;
  std::vector<ProofDecl> proofs;

  template <typename T>
  static const T* find_in(const std::vector<T>& xs, const std::string& name) {
    for (const auto& x : xs)
      if (x.name == name) return &x;
    return nullptr;
  }
  const SigDecl* find_signature(const std::string& n) const { return find_in(signatures, n); }
  const ModelDecl* find_model(const std::string& n) const { return find_in(models, n); }
  const PresDecl* find_presentation(const std::string& n) const { return find_in(presentations, n); }
  const MorphDecl* find_morphism(const std::string& n) const { return find_in(morphisms, n); }
  const SubstDecl* find_substitution(const std::string& n) const { return find_in(substitutions, n); }
  const ForcingDecl* find_forcing(const std::string& n) const { return find_in(forcings, n); }
  const TypeDecl* find_type(const std::string& n) const { return find_in(types, n); }
  const ProofDecl* find_proof(const std::string& n) const { return find_in(proofs, n); }

  friend bool operator==(const SpecFile&, const SpecFile&) = default;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace detail {

class Parser {
public:
  Parser(std::string text, std::string filename)
      : tokens_(lex(text, filename)), filename_(std::move(filename)) {}

  SpecFile parse() {
    SpecFile out;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind != Tok::Ident) fail("expected a declaration");
      if (t.text == "signature") parse_signature(out);
      else if (t.text == "model") parse_model(out);
      else if (t.text == "presentation") parse_presentation(out);
      else if (t.text == "morphism") parse_morphism(out);
      else if (t.text == "subst") parse_subst(out);
      else if (t.text == "forcing") parse_forcing(out);
      else if (t.text == "type") parse_type(out);
      else if (t.text == "query") parse_query(out);
      else if (t.text == "proof") parse_proof(out);
      else fail("unknown declaration keyword '" + t.text + "'");
    }
    return out;
  }

private:
  [[noreturn]] void fail(const std::string& message) { throw ParseError(peek().span, message); }

  const Token& peek(int ahead = 0) const {
    std::size_t i = pos_ + static_cast<std::size_t>(ahead);
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  Token next() { return tokens_[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const std::string& w) const { return at(Tok::Ident) && peek().text == w; }
  Token expect(Tok k, const std::string& what) {
    if (!at(k)) fail("expected " + what);
    return next();
  }
  void expect_word(const std::string& w) {
    if (!at_word(w)) fail("expected '" + w + "'");
    next();
  }
  std::string fresh_name() {
    Token t = expect(Tok::Ident, "a name");
    if (reserved_words().count(t.text)) throw ParseError(t.span, "'" + t.text + "' is reserved");
    return t.text;
  }
  int number() {
    Token t = expect(Tok::Number, "a number");
    return std::stoi(t.text);
  }

  // -- declarations ---------------------------------------------------------

  template <typename T>
  void check_unique(const std::vector<T>& xs, const std::string& name, const char* what) {
    if (SpecFile::find_in(xs, name))
      fail(std::string("duplicate ") + what + " name '" + name + "'");
  }

  void parse_signature(SpecFile& out) {
    next();
    std::string name = fresh_name();
    check_unique(out.signatures, name, "signature");
    expect(Tok::LBrace, "'{'");
    Signature sig;
    expect_word("sorts");
    while (at(Tok::Ident) && !at_word("ops") && !at_word("labels")) {
      std::string s = fresh_name();
      sig.sorts.push_back(s);
      if (at(Tok::LBracket)) {
        next();
        expect_word("finite");
        expect(Tok::RBracket, "']'");
        sig.finite_sorts.push_back(s);
      }
    }
    if (at_word("ops")) {
      next();
      while (at(Tok::Ident) && !at_word("labels") && peek(1).kind == Tok::Colon) {
        std::string opname = fresh_name();
        expect(Tok::Colon, "':'");
        FuncDecl f;
        f.name = opname;
        while (at(Tok::Ident)) f.arity.push_back(fresh_name());
        expect(Tok::Arrow, "'->'");
        f.result = fresh_name();
        sig.funcs.push_back(f);
        if (at(Tok::LBracket)) {
          next();
          expect_word("ctor");
          expect(Tok::RBracket, "']'");
          sig.ctor_funcs.push_back(f);
        }
      }
    }
    if (at_word("labels")) {
      next();
      while (at(Tok::Ident)) sig.labels.push_back(fresh_name());
    }
    expect(Tok::RBrace, "'}'");
    ValidationReport report = check_signature(sig);
    if (!report.empty()) fail("invalid signature '" + name + "': " + report.items()[0].message);
    out.signatures.push_back(SigDecl{name, make_sig(std::move(sig))});
  }

  SigPtr resolve_sig(const SpecFile& out, const std::string& name) {
    const SigDecl* d = out.find_signature(name);
    if (!d) throw ParseError(peek().span, "unknown signature '" + name + "'");
    return d->sig;
  }

  void parse_model(SpecFile& out) {
    next();
    std::string name = fresh_name();
    check_unique(out.models, name, "model");
    expect(Tok::Colon, "':'");
    std::string sig_name = fresh_name();
    SigPtr sig = resolve_sig(out, sig_name);
    expect(Tok::LBrace, "'{'");
    FiniteModel m;
    m.sig = sig;
    for (const auto& s : sig->sorts) m.carriers[s] = {};
    struct OpRow {
      FuncDecl fn;
      std::vector<std::string> args;
      std::string value;
      SourceSpan span;
    };
    std::vector<OpRow> op_rows;
    struct RelRow {
      std::string label, a, b;
      SourceSpan span;
    };
    std::vector<RelRow> rel_rows;
    while (!at(Tok::RBrace)) {
      if (at_word("carrier")) {
        next();
        std::string sort = fresh_name();
        if (!sig->has_sort(sort)) fail("unknown sort '" + sort + "'");
        expect(Tok::Eq, "'='");
        expect(Tok::LBrace, "'{'");
        std::vector<std::string> elems;
        while (at(Tok::Ident)) {
          elems.push_back(fresh_name());
          if (at(Tok::Comma)) next();
        }
        expect(Tok::RBrace, "'}'");
        m.carriers[sort] = std::move(elems);
      } else if (at_word("op")) {
        SourceSpan span = peek().span;
        next();
        std::string opname = fresh_name();
        std::vector<std::string> args;
        if (at(Tok::LParen)) {
          next();
          while (at(Tok::Ident)) {
            args.push_back(fresh_name());
            if (at(Tok::Comma)) next();
          }
          expect(Tok::RParen, "')'");
        }
        expect(Tok::Eq, "'='");
        std::string value = fresh_name();
        // rank resolved below, once carriers are known
        op_rows.push_back(OpRow{FuncDecl{opname, {}, ""}, args, value, span});
      } else if (at_word("label")) {
        SourceSpan span = peek().span;
        next();
        std::string label = fresh_name();
        expect(Tok::Colon, "':'");
        expect(Tok::LParen, "'('");
        std::string a = fresh_name();
        expect(Tok::Comma, "','");
        std::string b = fresh_name();
        expect(Tok::RParen, "')'");
        rel_rows.push_back(RelRow{label, a, b, span});
      } else {
        fail("expected 'carrier', 'op' or 'label'");
      }
    }
    expect(Tok::RBrace, "'}'");

    std::map<std::string, std::pair<std::string, int>> element_index;
    for (const auto& [sort, elems] : m.carriers)
      for (std::size_t i = 0; i < elems.size(); ++i) {
        if (element_index.count(elems[i]))
          fail("model '" + name + "': element name '" + elems[i] + "' is used in two carriers");
        element_index[elems[i]] = {sort, static_cast<int>(i)};
      }
    auto element_sort = [&](const std::string& e) -> std::optional<std::pair<std::string, int>> {
      auto it = element_index.find(e);
      if (it == element_index.end()) return std::nullopt;
      return it->second;
    };
    for (const auto& f : sig->funcs) m.tables[f].assign(m.table_rows(f), -1);
    for (const auto& row : op_rows) {
      std::vector<std::string> arg_sorts;
      std::vector<int> arg_idx;
      for (const auto& a : row.args) {
        auto hit = element_sort(a);
        if (!hit) throw ParseError(row.span, "unknown element '" + a + "'");
        arg_sorts.push_back(hit->first);
        arg_idx.push_back(hit->second);
      }
      auto candidates = sig->resolve(row.fn.name, arg_sorts);
      if (candidates.empty())
        throw ParseError(row.span, "no op named '" + row.fn.name + "' with these argument sorts");
      if (candidates.size() > 1)
        throw AmbiguousSymbol("op '" + row.fn.name + "' is ambiguous at " + row.span.str());
      const FuncDecl& fn = *candidates[0];
      auto hit = element_sort(row.value);
      if (!hit || hit->first != fn.result)
        throw ParseError(row.span, "value '" + row.value + "' is not an element of sort " + fn.result);
      int& cell = m.tables[fn][m.row_index(fn, arg_idx)];
      if (cell >= 0) throw ParseError(row.span, "duplicate table row for " + fn.rank_str());
      cell = hit->second;
    }
    for (const auto& [fn, table] : m.tables)
      for (std::size_t r = 0; r < table.size(); ++r)
        if (table[r] < 0)
          fail("model '" + name + "': table for " + fn.rank_str() + " is not total (row " +
               std::to_string(r) + " missing)");
    for (const auto& row : rel_rows) {
      if (!sig->has_label(row.label)) throw ParseError(row.span, "unknown label '" + row.label + "'");
      auto a = element_sort(row.a);
      auto b = element_sort(row.b);
      if (!a || !b) throw ParseError(row.span, "unknown element in relation row");
      if (a->first != b->first)
        throw ParseError(row.span, "transition endpoints live in different sorts");
      m.rels[{row.label, a->first}].insert({a->second, b->second});
    }
    ValidationReport report = validate_model(m);
    if (!report.empty())
      fail("invalid model '" + name + "': " + report.items()[0].message);
    out.models.push_back(ModelDecl{name, sig_name, std::move(m)});
  }

  void parse_presentation(SpecFile& out) {
    next();
    std::string name = fresh_name();
    check_unique(out.presentations, name, "presentation");
    expect(Tok::Colon, "':'");
    std::string sig_name = fresh_name();
    SigPtr sig = resolve_sig(out, sig_name);
    expect(Tok::LBrace, "'{'");
    std::vector<Sentence> sentences;
    while (!at(Tok::RBrace)) sentences.push_back(parse_checked_sentence(*sig));
    expect(Tok::RBrace, "'}'");
    out.presentations.push_back(PresDecl{name, sig_name, std::move(sentences)});
  }

  void parse_morphism(SpecFile& out) {
    next();
    std::string name = fresh_name();
    check_unique(out.morphisms, name, "morphism");
    expect(Tok::Colon, "':'");
    std::string src_name = fresh_name();
    expect(Tok::Arrow, "'->'");
    std::string tgt_name = fresh_name();
    SignatureMorphism chi;
    chi.source = resolve_sig(out, src_name);
    chi.target = resolve_sig(out, tgt_name);
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace)) {
      if (at_word("sort")) {
        next();
        std::string a = fresh_name();
        expect(Tok::Arrow, "'->'");
        std::string b = fresh_name();
        chi.sort_map[a] = b;
      } else if (at_word("op")) {
        SourceSpan span = peek().span;
        next();
        std::string a = fresh_name();
        std::optional<FuncDecl> src_rank;
        if (at(Tok::LParen)) {  // rank annotation for overloaded names
          next();
          FuncDecl f;
          f.name = a;
          while (at(Tok::Ident)) {
            f.arity.push_back(fresh_name());
            if (at(Tok::Comma)) next();
          }
          expect(Tok::RParen, "')'");
          expect(Tok::Colon, "':'");
          f.result = fresh_name();
          src_rank = f;
        }
        expect(Tok::Arrow, "'->'");
        std::string b = fresh_name();
        if (!src_rank) {
          auto named = chi.source->funcs_named(a);
          if (named.empty()) throw ParseError(span, "unknown op '" + a + "' in source signature");
          if (named.size() > 1)
            throw AmbiguousSymbol("op '" + a + "' is overloaded; use a rank annotation at " +
                                  span.str());
          src_rank = *named[0];
        } else if (!chi.source->has_func(*src_rank)) {
          throw ParseError(span, "annotated rank not declared in source signature");
        }
        // the target rank follows from the sort map once it is complete
        pending_ops_.push_back({*src_rank, b, span});
      } else if (at_word("label")) {
        next();
        std::string a = fresh_name();
        expect(Tok::Arrow, "'->'");
        std::string b = fresh_name();
        chi.label_map[a] = b;
      } else {
        fail("expected 'sort', 'op' or 'label'");
      }
    }
    expect(Tok::RBrace, "'}'");
    for (const auto& [src, tgt_name2, span] : pending_ops_) {
      std::vector<std::string> tgt_arity;
      for (const auto& s : src.arity) {
        if (!chi.sort_map.count(s))
          throw ParseError(span, "sort '" + s + "' has no image in the morphism");
        tgt_arity.push_back(chi.sort_map.at(s));
      }
      if (!chi.sort_map.count(src.result))
        throw ParseError(span, "sort '" + src.result + "' has no image in the morphism");
      FuncDecl tgt{tgt_name2, tgt_arity, chi.sort_map.at(src.result)};
      if (!chi.target->has_func(tgt))
        throw ParseError(span, "target has no op " + tgt.rank_str());
      chi.func_map[src] = tgt;
    }
    pending_ops_.clear();
    ValidationReport report = check_morphism(chi);
    if (!report.empty())
      fail("invalid morphism '" + name + "': " + report.items()[0].message);
    out.morphisms.push_back(MorphDecl{name, src_name, tgt_name, std::move(chi)});
  }

  void parse_subst(SpecFile& out) {
    next();
    std::string name = fresh_name();
    check_unique(out.substitutions, name, "substitution");
    expect(Tok::Colon, "':'");
    Substitution theta;
    auto const_set = [&]() {
      std::vector<std::pair<std::string, std::string>> consts;
      expect(Tok::LBrace, "'{'");
      while (at(Tok::Ident)) {
        std::string c = fresh_name();
        expect(Tok::Colon, "':'");
        std::string s = fresh_name();
        consts.push_back({c, s});
        if (at(Tok::Comma)) next();
      }
      expect(Tok::RBrace, "'}'");
      return consts;
    };
    theta.c1 = const_set();
    expect(Tok::Arrow, "'->'");
    theta.c2 = const_set();
    expect_word("over");
    std::string sig_name = fresh_name();
    theta.base = resolve_sig(out, sig_name);
    Signature target = theta.target_sig();
    expect(Tok::LBrace, "'{'");
    while (at(Tok::Ident)) {
      std::string c = fresh_name();
      expect(Tok::Arrow, "'->'");
      VarBlock empty_scope;
      theta.map[c] = parse_term(target, empty_scope);
    }
    expect(Tok::RBrace, "'}'");
    ValidationReport report = check_substitution(theta);
    if (!report.empty())
      fail("invalid substitution '" + name + "': " + report.items()[0].message);
    out.substitutions.push_back(SubstDecl{name, sig_name, std::move(theta)});
  }

  void parse_forcing(SpecFile& out) {
    next();
    std::string name = fresh_name();
    check_unique(out.forcings, name, "forcing");
    expect(Tok::LBrace, "'{'");
    ForcingDecl decl;
    decl.name = name;
    std::vector<std::pair<int, int>> pairs;
    while (at_word("condition")) {
      next();
      std::string cname = fresh_name();
      expect(Tok::LBrace, "'{'");
      expect_word("sig");
      std::string sig_name = fresh_name();
      SigPtr sig = resolve_sig(out, sig_name);
      ForcingCondition cond;
      cond.name = cname;
      cond.sig = sig;
      if (at_word("atoms")) {
        next();
        expect(Tok::LBrace, "'{'");
        while (!at(Tok::RBrace)) {
          Sentence s = parse_checked_sentence(*sig);
          if (!is_atomic(s)) fail("forcing atoms must be ground atomic sentences");
          cond.atoms.push_back(std::move(s));
        }
        expect(Tok::RBrace, "'}'");
      }
      if (at_word("gamma")) {
        next();
        expect(Tok::LBrace, "'{'");
        while (!at(Tok::RBrace)) cond.gamma.push_back(parse_checked_sentence(*sig));
        expect(Tok::RBrace, "'}'");
      }
      expect(Tok::RBrace, "'}'");
      decl.cond_sig_names.push_back(sig_name);
      decl.property.conds.push_back(std::move(cond));
    }
    expect_word("order");
    expect(Tok::LBrace, "'{'");
    while (at(Tok::Ident)) {
      std::string a = fresh_name();
      expect(Tok::Leq, "'<='");
      std::string b = fresh_name();
      pairs.push_back({decl.property.find(a), decl.property.find(b)});
    }
    expect(Tok::RBrace, "'}'");
    expect(Tok::RBrace, "'}'");
    close_order(decl.property, pairs);
    if (decl.property.least < 0) fail("forcing '" + name + "' has no least condition");
    out.forcings.push_back(std::move(decl));
  }

  void parse_type(SpecFile& out) {
    next();
    std::string name = fresh_name();
    check_unique(out.types, name, "type");
    expect_word("over");
    std::string sig_name = fresh_name();
    SigPtr sig = resolve_sig(out, sig_name);
    LogicType type;
    type.base = sig;
    expect(Tok::LBracket, "'['");
    while (at(Tok::Ident)) {
      std::string v = fresh_name();
      expect(Tok::Colon, "':'");
      std::string s = fresh_name();
      type.block.push_back(Variable{v, s, 0});
      if (at(Tok::Comma)) next();
    }
    expect(Tok::RBracket, "']'");
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace)) {
      VarBlock scope = type.block;
      Sentence s = parse_sentence(*sig, scope);
      ValidationReport report = check_sentence(*sig, s, type.block);
      if (!report.empty()) fail("ill-formed type sentence: " + report.items()[0].message);
      type.sentences.push_back(std::move(s));
    }
    expect(Tok::RBrace, "'}'");
    ValidationReport report = check_type(type);
    if (!report.empty()) fail("invalid type '" + name + "': " + report.items()[0].message);
    out.types.push_back(TypeDecl{name, sig_name, std::move(type)});
  }

  void parse_query(SpecFile& out) {
    next();
    std::string name = fresh_name();
    check_unique(out.queries, name, "query");
    expect(Tok::Colon, "':'");
    QueryDecl q;
    q.name = name;
    q.verb = expect(Tok::Ident, "a verb").text;
    expect(Tok::LBrace, "'{'");
    while (at(Tok::Ident)) {
      std::string key = next().text;
      expect(Tok::Eq, "'='");
      if (at(Tok::String) || at(Tok::Ident) || at(Tok::Number)) {
        q.args.push_back({key, next().text});
      } else {
        fail("expected a query value");
      }
    }
    expect(Tok::RBrace, "'}'");
    out.queries.push_back(std::move(q));
  }

  void parse_proof(SpecFile& out) {
    next();
    std::string name = fresh_name();
    check_unique(out.proofs, name, "proof");
    expect_word("over");
    ProofDecl decl;
    decl.name = name;
    decl.sig_name = fresh_name();
    resolve_sig(out, decl.sig_name);
    expect(Tok::LBrace, "'{'");
    while (at_word("node")) {
      next();
      ProofNodeDecl node;
      node.name = fresh_name();
      expect(Tok::Eq, "'='");
      node.rule = expect(Tok::Ident, "a rule name").text;
      expect(Tok::LBrace, "'{'");
      static const std::set<std::string> field_keys = {"premises", "from",   "to",  "morphism",
                                                       "depth",    "flavor", "caps", "bound"};
      while (at(Tok::Ident) && !at(Tok::RBrace)) {
        std::string key = next().text;
        if (key == "premises") {
          while (at(Tok::Ident) && !field_keys.count(peek().text)) {
            node.premises.push_back(fresh_name());
            if (at(Tok::Comma)) next();
          }
        } else if (key == "from") {
          node.lhs = fresh_name();
        } else if (key == "to") {
          node.rhs = fresh_name();
        } else if (key == "morphism") {
          node.morphism = fresh_name();
        } else if (key == "depth") {
          node.depth = number();
        } else if (key == "flavor") {
          node.flavor = expect(Tok::Ident, "a flavor").text;
        } else if (key == "caps" || key == "bound") {
          auto& dst = key == "caps" ? node.caps : node.bound;
          while (at(Tok::Ident) && peek(1).kind == Tok::Eq) {
            std::string s = fresh_name();
            expect(Tok::Eq, "'='");
            dst[s] = number();
            if (at(Tok::Comma)) next();
          }
        } else {
          fail("unknown proof-node field '" + key + "'");
        }
      }
      expect(Tok::RBrace, "'}'");
      decl.nodes.push_back(std::move(node));
    }
    expect(Tok::RBrace, "'}'");
    out.proofs.push_back(std::move(decl));
  }

  // -- sentences ------------------------------------------------------------

  Sentence parse_checked_sentence(const Signature& sig) {
    SourceSpan span = peek().span;
    VarBlock scope;
    Sentence s = parse_sentence(sig, scope);
    ValidationReport report = check_sentence(sig, s);
    if (!report.empty()) throw ParseError(span, "ill-formed sentence: " + report.items()[0].message);
    return s;
  }

  Sentence parse_sentence(const Signature& sig, VarBlock& scope) {
    Sentence lhs = parse_primary(sig, scope);
    if (at(Tok::Implies)) {
      next();
      Sentence rhs = parse_sentence(sig, scope);
      return implies(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Sentence parse_primary(const Signature& sig, VarBlock& scope) {
    if (at_word("true")) { next(); return truth(); }
    if (at_word("false")) { next(); return falsity(); }
    if (at_word("not")) {
      next();
      return snot(parse_primary(sig, scope));
    }
    if (at_word("or") || at_word("and")) {
      bool is_or = peek().text == "or";
      next();
      expect(Tok::LBrace, "'{'");
      std::vector<Sentence> items;
      while (!at(Tok::RBrace)) {
        items.push_back(parse_sentence(sig, scope));
        if (at(Tok::Comma)) next();
      }
      expect(Tok::RBrace, "'}'");
      return is_or ? sor(std::move(items)) : sand(std::move(items));
    }
    if (at_word("exists") || at_word("forall")) {
      bool is_exists = peek().text == "exists";
      next();
      VarBlock block;
      while (at(Tok::Ident)) {
        std::string v = fresh_name();
        expect(Tok::Colon, "':'");
        std::string s = fresh_name();
        if (!sig.has_sort(s)) fail("unknown sort '" + s + "'");
        block.push_back(Variable{v, s, 0});
        if (at(Tok::Comma)) next();
      }
      expect(Tok::Dot, "'.'");
      VarBlock inner = scope;
      for (const auto& v : block) {
        std::erase_if(inner, [&](const Variable& o) { return o.name == v.name; });
        inner.push_back(v);
      }
      Sentence body = parse_sentence(sig, inner);
      return is_exists ? exists(std::move(block), std::move(body))
                       : forall(std::move(block), std::move(body));
    }
    return parse_atomish(sig, scope);
  }

  // Power nodes exist only while parsing; a^n lowers to ;-chains and the
  // zero power at the top of a transition atom reads as an equation.
  struct PAct {
    enum Kind { Label, Seq, Union, Star, Pow } kind;
    std::string label;
    std::vector<PAct> kids;
    int power = 0;
  };

  Sentence parse_atomish(const Signature& sig, VarBlock& scope) {
    bool try_action = false;
    if (at(Tok::LParen)) try_action = true;
    if (at(Tok::Ident) && sig.has_label(peek().text)) try_action = true;
    if (try_action) {
      std::size_t save = pos_;
      try {
        return parse_action_atom(sig, scope);
      } catch (const ParseError&) {
        pos_ = save;
      }
    }
    if (at(Tok::LParen)) {
      next();
      Sentence s = parse_sentence(sig, scope);
      expect(Tok::RParen, "')'");
      return s;
    }
    Term lhs = parse_term(sig, scope);
    bool negated = at(Tok::Neq);
    if (!negated && !at(Tok::Eq)) fail("expected '=' or '!=' in an equation");
    next();
    Term rhs = parse_term(sig, scope);
    if (lhs.sort() != rhs.sort()) fail("equation operands have different sorts");
    return negated ? neq(std::move(lhs), std::move(rhs)) : eq(std::move(lhs), std::move(rhs));
  }

  Sentence parse_action_atom(const Signature& sig, VarBlock& scope) {
    PAct act = parse_pact_union(sig);
    expect(Tok::LParen, "'('");
    Term t1 = parse_term(sig, scope);
    expect(Tok::Comma, "','");
    Term t2 = parse_term(sig, scope);
    expect(Tok::RParen, "')'");
    if (t1.sort() != t2.sort()) fail("transition endpoints have different sorts");
    if (act.kind == PAct::Pow && act.power == 0) return eq(std::move(t1), std::move(t2));
    return trans(lower_pact(act), std::move(t1), std::move(t2));
  }

  PAct parse_pact_union(const Signature& sig) {
    PAct lhs = parse_pact_seq(sig);
    while (at(Tok::Pipe)) {
      next();
      PAct rhs = parse_pact_seq(sig);
      PAct u{PAct::Union, "", {}, 0};
      u.kids.push_back(std::move(lhs));
      u.kids.push_back(std::move(rhs));
      lhs = std::move(u);
    }
    return lhs;
  }

  PAct parse_pact_seq(const Signature& sig) {
    PAct lhs = parse_pact_post(sig);
    while (at(Tok::Semi)) {
      next();
      PAct rhs = parse_pact_post(sig);
      PAct s{PAct::Seq, "", {}, 0};
      s.kids.push_back(std::move(lhs));
      s.kids.push_back(std::move(rhs));
      lhs = std::move(s);
    }
    return lhs;
  }

  PAct parse_pact_post(const Signature& sig) {
    PAct base = parse_pact_base(sig);
    while (at(Tok::Star) || at(Tok::Caret)) {
      if (at(Tok::Star)) {
        next();
        PAct s{PAct::Star, "", {}, 0};
        s.kids.push_back(std::move(base));
        base = std::move(s);
      } else {
        next();
        int n = number();
        PAct p{PAct::Pow, "", {}, n};
        p.kids.push_back(std::move(base));
        base = std::move(p);
      }
    }
    return base;
  }

  PAct parse_pact_base(const Signature& sig) {
    if (at(Tok::LParen)) {
      next();
      PAct inner = parse_pact_union(sig);
      expect(Tok::RParen, "')'");
      return inner;
    }
    Token t = expect(Tok::Ident, "a label");
    if (!sig.has_label(t.text)) throw ParseError(t.span, "unknown label '" + t.text + "'");
    return PAct{PAct::Label, t.text, {}, 0};
  }

  Action lower_pact(const PAct& p) {
    switch (p.kind) {
      case PAct::Label: return alabel(p.label);
      case PAct::Seq: return aseq(lower_pact(p.kids[0]), lower_pact(p.kids[1]));
      case PAct::Union: return aunion(lower_pact(p.kids[0]), lower_pact(p.kids[1]));
      case PAct::Star: return astar(lower_pact(p.kids[0]));
      case PAct::Pow: {
        if (p.power == 0)
          fail("a zero power is only meaningful at the top of a transition atom");
        Action acc = lower_pact(p.kids[0]);
        for (int i = 1; i < p.power; ++i) acc = aseq(lower_pact(p.kids[0]), std::move(acc));
        return acc;
      }
    }
    fail("unreachable action form");
  }

  Term parse_term(const Signature& sig, VarBlock& scope) {
    Token head = expect(Tok::Ident, "a term");
    if (reserved_words().count(head.text))
      throw ParseError(head.span, "'" + head.text + "' is reserved");
    if (at(Tok::LParen)) {
      next();
      std::vector<Term> args;
      while (!at(Tok::RParen)) {
        args.push_back(parse_term(sig, scope));
        if (at(Tok::Comma)) next();
      }
      expect(Tok::RParen, "')'");
      std::vector<std::string> arg_sorts;
      for (const auto& a : args) arg_sorts.push_back(a.sort());
      auto candidates = sig.resolve(head.text, arg_sorts);
      if (candidates.empty())
        throw ParseError(head.span, "no op named '" + head.text + "' taking these argument sorts");
      if (candidates.size() > 1)
        throw AmbiguousSymbol("op '" + head.text + "' is ambiguous on result sort at " +
                              head.span.str());
      return tapp(*candidates[0], std::move(args));
    }
    // a variable in scope shadows a constant of the same name
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->name == head.text) return tvar(*it);
    auto candidates = sig.resolve(head.text, {});
    if (candidates.empty())
      throw ParseError(head.span, "unknown identifier '" + head.text + "'");
    if (candidates.size() > 1)
      throw AmbiguousSymbol("constant '" + head.text + "' is ambiguous at " + head.span.str());
    return tapp(*candidates[0]);
  }

  struct PendingOp {
    FuncDecl src;
    std::string tgt_name;
    SourceSpan span;
  };

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string filename_;
  std::vector<PendingOp> pending_ops_;
};

}  // namespace detail

/// Parses a .ta file. Every declaration in the result passes its kernel
/// checks; errors carry source spans.
inline SpecFile parse_spec(const std::string& text, const std::string& filename = "<input>") {
  detail::Parser parser(text, filename);
  return parser.parse();
}

// ---------------------------------------------------------------------------
// Printer: a canonical layout whose reparse yields the same SpecFile.
// ---------------------------------------------------------------------------

namespace detail {

inline void print_signature_decl(std::ostream& os, const SigDecl& d) {
  os << "signature " << d.name << " {\n  sorts";
  for (const auto& s : d.sig->sorts) {
    os << " " << s;
    if (d.sig->is_finite_sort(s)) os << " [finite]";
  }
  os << "\n";
  if (!d.sig->funcs.empty()) {
    os << "  ops\n";
    for (const auto& f : d.sig->funcs) {
      os << "    " << f.name << " :";
      for (const auto& a : f.arity) os << " " << a;
      os << " -> " << f.result;
      if (d.sig->is_ctor(f)) os << " [ctor]";
      os << "\n";
    }
  }
  if (!d.sig->labels.empty()) {
    os << "  labels";
    for (const auto& l : d.sig->labels) os << " " << l;
    os << "\n";
  }
  os << "}\n";
}

inline void print_model_decl(std::ostream& os, const ModelDecl& d) {
  os << "model " << d.name << " : " << d.sig_name << " {\n";
  for (const auto& s : d.model.sig->sorts) {
    os << "  carrier " << s << " = {";
    const auto& elems = d.model.carriers.at(s);
    for (std::size_t i = 0; i < elems.size(); ++i) os << (i ? ", " : "") << elems[i];
    os << "}\n";
  }
  for (const auto& f : d.model.sig->funcs) {
    const auto& table = d.model.tables.at(f);
    std::size_t rows = table.size();
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<int> args(f.arity.size());
      std::size_t rest = r;
      for (std::size_t k = 0; k < f.arity.size(); ++k) {
        int n = d.model.carrier_size(f.arity[k]);
        args[k] = static_cast<int>(rest % n);
        rest /= n;
      }
      os << "  op " << f.name;
      if (!args.empty()) {
        os << "(";
        for (std::size_t k = 0; k < args.size(); ++k)
          os << (k ? ", " : "") << d.model.element_name(f.arity[k], args[k]);
        os << ")";
      }
      os << " = " << d.model.element_name(f.result, table[r]) << "\n";
    }
  }
  for (const auto& [key, pairs] : d.model.rels)
    for (const auto& [a, b] : pairs)
      os << "  label " << key.first << " : (" << d.model.element_name(key.second, a) << ", "
         << d.model.element_name(key.second, b) << ")\n";
  os << "}\n";
}

inline void print_pres_decl(std::ostream& os, const PresDecl& d) {
  os << "presentation " << d.name << " : " << d.sig_name << " {\n";
  for (const auto& s : d.sentences) os << "  " << print_sentence(s) << "\n";
  os << "}\n";
}

inline void print_morph_decl(std::ostream& os, const MorphDecl& d) {
  os << "morphism " << d.name << " : " << d.source_name << " -> " << d.target_name << " {\n";
  for (const auto& [a, b] : d.morphism.sort_map) os << "  sort " << a << " -> " << b << "\n";
  for (const auto& [f, g] : d.morphism.func_map) {
    os << "  op " << f.name;
    if (d.morphism.source->funcs_named(f.name).size() > 1) {
      os << "(";
      for (std::size_t i = 0; i < f.arity.size(); ++i) os << (i ? ", " : "") << f.arity[i];
      os << "):" << f.result;
    }
    os << " -> " << g.name << "\n";
  }
  for (const auto& [a, b] : d.morphism.label_map) os << "  label " << a << " -> " << b << "\n";
  os << "}\n";
}

inline void print_subst_decl(std::ostream& os, const SubstDecl& d) {
  auto print_consts = [&](const std::vector<std::pair<std::string, std::string>>& cs) {
    os << "{";
    for (std::size_t i = 0; i < cs.size(); ++i)
      os << (i ? ", " : "") << cs[i].first << ":" << cs[i].second;
    os << "}";
  };
  os << "subst " << d.name << " : ";
  print_consts(d.subst.c1);
  os << " -> ";
  print_consts(d.subst.c2);
  os << " over " << d.sig_name << " {\n";
  for (const auto& [c, s] : d.subst.c1) os << "  " << c << " -> " << print_term(d.subst.map.at(c)) << "\n";
  os << "}\n";
}

inline void print_forcing_decl(std::ostream& os, const ForcingDecl& d) {
  os << "forcing " << d.name << " {\n";
  for (std::size_t i = 0; i < d.property.conds.size(); ++i) {
    const auto& c = d.property.conds[i];
    os << "  condition " << c.name << " {\n    sig " << d.cond_sig_names[i] << "\n";
    os << "    atoms {\n";
    for (const auto& a : c.atoms) os << "      " << print_sentence(a) << "\n";
    os << "    }\n";
    if (!c.gamma.empty()) {
      os << "    gamma {\n";
      for (const auto& g : c.gamma) os << "      " << print_sentence(g) << "\n";
      os << "    }\n";
    }
    os << "  }\n";
  }
  os << "  order {\n";
  for (int p = 0; p < d.property.size(); ++p)
    for (int q = 0; q < d.property.size(); ++q)
      if (p != q && d.property.leq(p, q))
        os << "    " << d.property.conds[p].name << " <= " << d.property.conds[q].name << "\n";
  os << "  }\n}\n";
}

inline void print_type_decl(std::ostream& os, const TypeDecl& d) {
  os << "type " << d.name << " over " << d.sig_name << " [";
  for (std::size_t i = 0; i < d.type.block.size(); ++i)
    os << (i ? ", " : "") << d.type.block[i].name << ":" << d.type.block[i].sort;
  os << "] {\n";
  for (const auto& s : d.type.sentences) os << "  " << print_sentence(s) << "\n";
  os << "}\n";
}

inline void print_query_decl(std::ostream& os, const QueryDecl& d) {
  auto simple = [](const std::string& v) {
    if (v.empty()) return false;
    for (char c : v)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return !reserved_words().count(v);
  };
  os << "query " << d.name << " : " << d.verb << " {";
  for (const auto& [k, v] : d.args) {
    os << " " << k << " = ";
    if (simple(v)) os << v;
    else os << '"' << v << '"';
  }
  os << " }\n";
}

inline void print_proof_decl(std::ostream& os, const ProofDecl& d) {
  os << "proof " << d.name << " over " << d.sig_name << " {\n";
  for (const auto& n : d.nodes) {
    os << "  node " << n.name << " = " << n.rule << " {";
    if (!n.premises.empty()) {
      os << " premises";
      for (std::size_t i = 0; i < n.premises.size(); ++i) os << (i ? "," : "") << " " << n.premises[i];
    }
    if (!n.lhs.empty()) os << " from " << n.lhs;
    if (!n.rhs.empty()) os << " to " << n.rhs;
    if (!n.morphism.empty()) os << " morphism " << n.morphism;
    if (n.depth) os << " depth " << n.depth;
    if (n.flavor != "plain") os << " flavor " << n.flavor;
    if (!n.caps.empty()) {
      os << " caps";
      bool first = true;
      for (const auto& [s, k] : n.caps) {
        os << (first ? " " : ", ") << s << " = " << k;
        first = false;
      }
    }
    if (!n.bound.empty()) {
      os << " bound";
      bool first = true;
      for (const auto& [s, k] : n.bound) {
        os << (first ? " " : ", ") << s << " = " << k;
        first = false;
      }
    }
    os << " }\n";
  }
  os << "}\n";
}

}  // namespace detail

inline std::string print_spec(const SpecFile& spec) {
  std::ostringstream os;
  bool first = true;
  auto gap = [&]() {
    if (!first) os << "\n";
    first = false;
  };
  for (const auto& d : spec.signatures) { gap(); detail::print_signature_decl(os, d); }
  for (const auto& d : spec.models) { gap(); detail::print_model_decl(os, d); }
  for (const auto& d : spec.presentations) { gap(); detail::print_pres_decl(os, d); }
  for (const auto& d : spec.morphisms) { gap(); detail::print_morph_decl(os, d); }
  for (const auto& d : spec.substitutions) { gap(); detail::print_subst_decl(os, d); }
  for (const auto& d : spec.forcings) { gap(); detail::print_forcing_decl(os, d); }
  for (const auto& d : spec.types) { gap(); detail::print_type_decl(os, d); }
  for (const auto& d : spec.queries) { gap(); detail::print_query_decl(os, d); }
  for (const auto& d : spec.proofs) { gap(); detail::print_proof_decl(os, d); }
  return os.str();
}

}  // namespace ta
