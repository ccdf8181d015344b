#include "groundwork/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace groundwork::dsl {

namespace {

enum class TokenKind { identifier, quoted, punct };

struct Token {
  TokenKind kind;
  std::string text;
  int column;  // 1-based
  int end;     // column one past the token
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}
bool punct_char(char c) {
  return c == '(' || c == ')' || c == ',' || c == ':' || c == '=' || c == '<';
}

/// Tokenizes one line. Returns false (with `error` set) on a lexical error.
bool lex_line(std::string_view text, int line, std::vector<Token>& out, ParseError& error) {
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    const int col = static_cast<int>(i) + 1;
    if (c == ' ' || c == '\t') {
      ++i;
    } else if (c == '#') {
      break;
    } else if (punct_char(c)) {
      out.push_back({TokenKind::punct, std::string(1, c), col, col + 1});
      ++i;
    } else if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({TokenKind::identifier, std::string(text.substr(i, j - i)), col,
                     static_cast<int>(j) + 1});
      i = j;
    } else if (c == '"') {
      std::string value;
      std::size_t j = i + 1;
      bool closed = false;
      while (j < text.size()) {
        if (text[j] == '\\' && j + 1 < text.size() &&
            (text[j + 1] == '"' || text[j + 1] == '\\')) {
          value.push_back(text[j + 1]);
          j += 2;
        } else if (text[j] == '"') {
          closed = true;
          ++j;
          break;
        } else {
          value.push_back(text[j++]);
        }
      }
      if (!closed) {
        error = {line, col, "unterminated quoted name", "closing '\"'"};
        return false;
      }
      if (value.empty()) {
        error = {line, col, "empty quoted name", "name"};
        return false;
      }
      out.push_back({TokenKind::quoted, std::move(value), col, static_cast<int>(j) + 1});
      i = j;
    } else {
      error = {line, col, std::string("unexpected character '") + c + "'", "token"};
      return false;
    }
  }
  return true;
}

struct LineParseFailure {
  ParseError error;
};

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, int line, int line_length)
      : tokens_(std::move(tokens)), line_(line), line_length_(line_length) {}

  bool at_end() const { return pos_ >= tokens_.size(); }

  const Token* peek() const { return at_end() ? nullptr : &tokens_[pos_]; }

  [[noreturn]] void fail(const std::string& message, const std::string& expected) const {
    int column;
    if (!at_end()) {
      column = tokens_[pos_].column;
    } else {
      column = tokens_.empty() ? 1 : tokens_.back().end;
      column = std::clamp(column, 1, std::max(1, line_length_));
    }
    throw LineParseFailure{{line_, column, message, expected}};
  }

  std::string found() const {
    if (at_end()) return "end of line";
    const auto& t = tokens_[pos_];
    return t.kind == TokenKind::quoted ? "\"" + t.text + "\"" : "'" + t.text + "'";
  }

  void keyword(std::string_view kw) {
    const Token* t = peek();
    if (!t || t->kind != TokenKind::identifier || t->text != kw) {
      fail("expected '" + std::string(kw) + "', found " + found(), "'" + std::string(kw) + "'");
    }
    ++pos_;
  }

  void punct(char p) {
    const Token* t = peek();
    if (!t || t->kind != TokenKind::punct || t->text[0] != p) {
      fail(std::string("expected '") + p + "', found " + found(), std::string("'") + p + "'");
    }
    ++pos_;
  }

  bool try_punct(char p) {
    const Token* t = peek();
    if (t && t->kind == TokenKind::punct && t->text[0] == p) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string name(std::string_view what = "name") {
    const Token* t = peek();
    if (!t || t->kind == TokenKind::punct) {
      fail("expected " + std::string(what) + ", found " + found(), std::string(what));
    }
    ++pos_;
    return t->text;
  }

  std::string identifier(std::string_view what) {
    const Token* t = peek();
    if (!t || t->kind != TokenKind::identifier) {
      fail("expected " + std::string(what) + ", found " + found(), std::string(what));
    }
    ++pos_;
    return t->text;
  }

  void finish() {
    if (!at_end()) fail("unexpected " + found() + " after statement", "end of line");
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
  int line_length_;
};

std::optional<RelationKind> relation_from(std::string_view s) {
  if (s == "inheres_in") return RelationKind::inheres_in;
  if (s == "member_part_of") return RelationKind::member_part_of;
  if (s == "participates_in") return RelationKind::participates_in;
  if (s == "towards") return RelationKind::towards;
  if (s == "exists") return RelationKind::exists_at;
  return std::nullopt;
}

std::optional<GroundingKind> grounding_kind_from(std::string_view s) {
  if (s == "dependence") return GroundingKind::dependence;
  if (s == "internal") return GroundingKind::internal;
  if (s == "external") return GroundingKind::external;
  return std::nullopt;
}

constexpr std::string_view kStatementKeywords =
    "one of class, disjoint, determines, timeline, instance, at, realizes, grounds, "
    "mereo_grounds";

void parse_statement(LineParser& p, Document& doc, int line) {
  const Token* head = p.peek();
  if (head->kind != TokenKind::identifier) {
    p.fail("expected a statement keyword, found " + p.found(), std::string(kStatementKeywords));
  }
  const std::string kw = head->text;
  if (kw == "class") {
    p.keyword("class");
    ClassDecl d;
    d.name = p.name("class name");
    p.keyword("is_a");
    d.parent = p.name("parent class name");
    p.finish();
    d.line = line;
    doc.class_decls.push_back(std::move(d));
  } else if (kw == "disjoint") {
    p.keyword("disjoint");
    DisjointDecl d;
    d.first = p.name("class name");
    d.second = p.name("class name");
    p.finish();
    d.line = line;
    doc.disjoint_decls.push_back(std::move(d));
  } else if (kw == "determines") {
    p.keyword("determines");
    DeterminationDecl d;
    d.determinate = p.name("determinate class name");
    p.keyword("determinable");
    d.determinable = p.name("determinable class name");
    p.finish();
    d.line = line;
    doc.determination_decls.push_back(std::move(d));
  } else if (kw == "timeline") {
    p.keyword("timeline");
    TimelineDecl d;
    d.labels.push_back(p.identifier("time point"));
    while (p.try_punct('<')) d.labels.push_back(p.identifier("time point"));
    p.finish();
    if (doc.timeline_decl) {
      throw LineParseFailure{{line, 1,
                              "duplicate timeline declaration (first declared on line " +
                                  std::to_string(doc.timeline_decl->line) + ")",
                              "a single timeline"}};
    }
    for (std::size_t i = 0; i < d.labels.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (d.labels[i] == d.labels[j]) {
          throw LineParseFailure{
              {line, 1, "duplicate time point '" + d.labels[i] + "' in timeline",
               "distinct time points"}};
        }
      }
    }
    d.line = line;
    doc.timeline_decl = std::move(d);
  } else if (kw == "instance") {
    p.keyword("instance");
    InstanceDecl d;
    d.id = p.name("instance id");
    p.punct(':');
    d.class_name = p.name("class name");
    p.finish();
    d.line = line;
    doc.instance_decls.push_back(std::move(d));
  } else if (kw == "at") {
    p.keyword("at");
    if (!doc.timeline_decl) {
      p.fail("time reference before the timeline is declared", "timeline declaration first");
    }
    AssertionStmt s;
    s.time = p.identifier("time point");
    p.punct(':');
    const Token* rel = p.peek();
    std::optional<RelationKind> kind;
    if (rel && rel->kind == TokenKind::identifier) kind = relation_from(rel->text);
    if (!kind) {
      p.fail("expected a relation, found " + p.found(),
             "one of inheres_in, member_part_of, participates_in, towards, exists");
    }
    p.identifier("relation");
    s.kind = *kind;
    p.punct('(');
    s.subject = p.name("entity id");
    p.punct(',');
    if (s.kind == RelationKind::exists_at) {
      const Token* t = p.peek();
      if (!t || t->kind != TokenKind::identifier || t->text != "_") {
        p.fail("exists takes '_' as its second argument, found " + p.found(), "'_'");
      }
      p.identifier("'_'");
    } else {
      s.object = p.name("entity id");
    }
    p.punct(')');
    p.finish();
    s.line = line;
    doc.assertion_stmts.push_back(std::move(s));
  } else if (kw == "realizes") {
    p.keyword("realizes");
    RealizesStmt s;
    p.punct('(');
    s.process = p.name("process id");
    p.punct(',');
    s.realizable = p.name("realizable id");
    p.punct(')');
    p.finish();
    s.line = line;
    doc.realizes_stmts.push_back(std::move(s));
  } else if (kw == "grounds") {
    p.keyword("grounds");
    GroundsStmt s;
    p.punct('(');
    s.ground = p.name("ground id");
    p.punct(',');
    s.realizable = p.name("realizable id");
    p.punct(')');
    p.keyword("kind");
    p.punct('=');
    const Token* k = p.peek();
    std::optional<GroundingKind> gk;
    if (k && k->kind == TokenKind::identifier) gk = grounding_kind_from(k->text);
    if (!gk) {
      p.fail("expected a grounding kind, found " + p.found(),
             "one of dependence, internal, external");
    }
    p.identifier("grounding kind");
    s.kind = *gk;
    p.finish();
    s.line = line;
    doc.grounding_stmts.push_back(std::move(s));
  } else if (kw == "mereo_grounds") {
    p.keyword("mereo_grounds");
    MereoGroundsStmt s;
    p.punct('(');
    s.realizable = p.name("realizable id");
    p.punct(',');
    s.whole = p.name("whole id");
    p.punct(',');
    s.part = p.name("part id");
    p.punct(')');
    p.finish();
    s.line = line;
    doc.mereo_stmts.push_back(std::move(s));
  } else {
    p.fail("unknown statement '" + kw + "'", std::string(kStatementKeywords));
  }
}

int relation_rank(RelationKind k) { return static_cast<int>(k); }

}  // namespace

std::size_t Document::statement_count() const {
  return class_decls.size() + disjoint_decls.size() + determination_decls.size() +
         (timeline_decl ? 1 : 0) + instance_decls.size() + assertion_stmts.size() +
         realizes_stmts.size() + grounding_stmts.size() + mereo_stmts.size();
}

bool is_identifier(std::string_view text) {
  if (text.empty() || !ident_start(text.front())) return false;
  return std::all_of(text.begin() + 1, text.end(), ident_char);
}

std::string format_name(std::string_view name) {
  if (is_identifier(name)) return std::string(name);
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

ParseResult parse(std::string_view source) {
  ParseResult result;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t nl = source.find('\n', start);
    const bool last = nl == std::string_view::npos;
    std::string_view text = source.substr(start, last ? std::string_view::npos : nl - start);
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);

    std::vector<Token> tokens;
    ParseError lex_error;
    if (!lex_line(text, line_no, tokens, lex_error)) {
      result.errors.push_back(std::move(lex_error));
    } else if (!tokens.empty()) {
      LineParser p(std::move(tokens), line_no, static_cast<int>(text.size()));
      try {
        parse_statement(p, result.document, line_no);
      } catch (const LineParseFailure& f) {
        result.errors.push_back(f.error);
      }
    }
    if (last) break;
    start = nl + 1;
  }
  return result;
}

Document canonicalize(const Document& doc) {
  Document out = doc;
  auto time_rank = [&](const std::string& label) -> std::size_t {
    if (doc.timeline_decl) {
      const auto& ls = doc.timeline_decl->labels;
      auto it = std::find(ls.begin(), ls.end(), label);
      if (it != ls.end()) return static_cast<std::size_t>(it - ls.begin());
    }
    return static_cast<std::size_t>(-1);
  };
  std::stable_sort(out.assertion_stmts.begin(), out.assertion_stmts.end(),
                   [&](const AssertionStmt& a, const AssertionStmt& b) {
                     const auto ta = time_rank(a.time);
                     const auto tb = time_rank(b.time);
                     if (ta != tb) return ta < tb;
                     return relation_rank(a.kind) < relation_rank(b.kind);
                   });
  return out;
}

std::string serialize(const Document& input) {
  const Document doc = canonicalize(input);
  std::ostringstream os;
  for (const auto& d : doc.class_decls) {
    os << "class " << format_name(d.name) << " is_a " << format_name(d.parent) << '\n';
  }
  for (const auto& d : doc.disjoint_decls) {
    os << "disjoint " << format_name(d.first) << ' ' << format_name(d.second) << '\n';
  }
  for (const auto& d : doc.determination_decls) {
    os << "determines " << format_name(d.determinate) << " determinable "
       << format_name(d.determinable) << '\n';
  }
  if (doc.timeline_decl) {
    os << "timeline";
    for (std::size_t i = 0; i < doc.timeline_decl->labels.size(); ++i) {
      os << (i == 0 ? " " : " < ") << doc.timeline_decl->labels[i];
    }
    os << '\n';
  }
  for (const auto& d : doc.instance_decls) {
    os << "instance " << format_name(d.id) << " : " << format_name(d.class_name) << '\n';
  }
  for (const auto& s : doc.assertion_stmts) {
    os << "at " << s.time << ": " << to_string(s.kind) << '(' << format_name(s.subject) << ", "
       << (s.kind == RelationKind::exists_at ? std::string("_") : format_name(s.object))
       << ")\n";
  }
  for (const auto& s : doc.realizes_stmts) {
    os << "realizes(" << format_name(s.process) << ", " << format_name(s.realizable) << ")\n";
  }
  for (const auto& s : doc.grounding_stmts) {
    os << "grounds(" << format_name(s.ground) << ", " << format_name(s.realizable)
       << ") kind=" << to_string(s.kind) << '\n';
  }
  for (const auto& s : doc.mereo_stmts) {
    os << "mereo_grounds(" << format_name(s.realizable) << ", " << format_name(s.whole) << ", "
       << format_name(s.part) << ")\n";
  }
  return os.str();
}

ElaborationResult elaborate(const Document& doc, const Taxonomy& base) {
  ElaborationResult result;
  auto record = [&](int line, const std::exception& e) {
    result.errors.push_back({line, e.what()});
  };

  Taxonomy tax = base;
  for (const auto& d : doc.class_decls) {
    try {
      tax = std::move(tax).with_class(d.name, d.parent);
    } catch (const std::exception& e) {
      record(d.line, e);
    }
  }
  for (const auto& d : doc.disjoint_decls) {
    try {
      tax = std::move(tax).with_disjoint(d.first, d.second);
    } catch (const std::exception& e) {
      record(d.line, e);
    }
  }
  for (const auto& d : doc.determination_decls) {
    try {
      tax = std::move(tax).with_determination(d.determinate, d.determinable);
    } catch (const std::exception& e) {
      record(d.line, e);
    }
  }

  World world(std::move(tax));
  if (doc.timeline_decl) {
    try {
      world = std::move(world).with_timeline(doc.timeline_decl->labels);
    } catch (const std::exception& e) {
      record(doc.timeline_decl->line, e);
    }
  }
  for (const auto& d : doc.instance_decls) {
    try {
      world = std::move(world).with_instance(d.id, d.class_name, d.line);
    } catch (const std::exception& e) {
      record(d.line, e);
    }
  }
  for (const auto& s : doc.assertion_stmts) {
    auto t = world.find_time(s.time);
    if (!t) {
      result.errors.push_back({s.line, "unknown time point '" + s.time + "'"});
      continue;
    }
    try {
      world = std::move(world).with_relation(
          RelationAssertion{s.kind, s.subject, s.object, *t, s.line});
    } catch (const std::exception& e) {
      record(s.line, e);
    }
  }
  for (const auto& s : doc.realizes_stmts) {
    try {
      world = std::move(world).with_relation(
          RelationAssertion{RelationKind::realizes, s.process, s.realizable, std::nullopt, s.line});
    } catch (const std::exception& e) {
      record(s.line, e);
    }
  }
  for (const auto& s : doc.grounding_stmts) {
    try {
      world = std::move(world).with_grounding(
          GroundingAssertion{s.ground, s.realizable, s.kind, s.line});
    } catch (const std::exception& e) {
      record(s.line, e);
    }
  }
  for (const auto& s : doc.mereo_stmts) {
    try {
      world = std::move(world).with_mereological_grounding(
          MereologicalGroundingAssertion{s.realizable, s.whole, s.part, s.line});
    } catch (const std::exception& e) {
      record(s.line, e);
    }
  }

  if (result.errors.empty()) result.world = std::move(world);
  return result;
}

Document to_document(const World& world) {
  Document doc;
  const auto& tax = world.taxonomy();
  for (const auto& name : tax.domain_classes()) {
    const auto& n = tax.node(name);
    doc.class_decls.push_back({name, n.parent.value_or(""), 0});
  }
  for (const auto& [a, b] : tax.declared_disjoint()) doc.disjoint_decls.push_back({a, b, 0});
  for (const auto& l : tax.declared_determinations()) {
    doc.determination_decls.push_back({l.determinate_class, l.determinable_class, 0});
  }
  if (!world.timeline().empty()) {
    TimelineDecl tl;
    for (const auto& tp : world.timeline()) tl.labels.push_back(tp.label);
    doc.timeline_decl = std::move(tl);
  }
  for (const auto& id : world.declaration_order()) {
    const auto& e = world.entity(id);
    doc.instance_decls.push_back({e.id, e.class_name, e.source_line.value_or(0)});
  }
  for (const auto& a : world.assertions()) {
    const int line = a.source_line.value_or(0);
    if (a.kind == RelationKind::realizes) {
      doc.realizes_stmts.push_back({a.subject, a.object, line});
    } else {
      doc.assertion_stmts.push_back(
          {a.kind, a.subject, a.object, world.timeline()[*a.time].label, line});
    }
  }
  for (const auto& g : world.groundings()) {
    doc.grounding_stmts.push_back({g.ground, g.realizable, g.kind, g.source_line.value_or(0)});
  }
  for (const auto& m : world.mereological_groundings()) {
    doc.mereo_stmts.push_back({m.realizable, m.whole, m.part, m.source_line.value_or(0)});
  }
  return doc;
}

}  // namespace groundwork::dsl
