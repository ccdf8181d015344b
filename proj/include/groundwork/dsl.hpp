#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "groundwork/taxonomy.hpp"
#include "groundwork/world.hpp"

namespace groundwork::dsl {

// Statements keep their 1-based source line. Equality ignores it.

struct ClassDecl {
  std::string name;
  std::string parent;
  int line = 0;
  bool operator==(const ClassDecl& o) const { return name == o.name && parent == o.parent; }
};

struct DisjointDecl {
  std::string first;
  std::string second;
  int line = 0;
  bool operator==(const DisjointDecl& o) const {
    return first == o.first && second == o.second;
  }
};

struct DeterminationDecl {
  std::string determinate;
  std::string determinable;
  int line = 0;
  bool operator==(const DeterminationDecl& o) const {
    return determinate == o.determinate && determinable == o.determinable;
  }
};

struct TimelineDecl {
  std::vector<std::string> labels;
  int line = 0;
  bool operator==(const TimelineDecl& o) const { return labels == o.labels; }
};

struct InstanceDecl {
  std::string id;
  std::string class_name;
  int line = 0;
  bool operator==(const InstanceDecl& o) const {
    return id == o.id && class_name == o.class_name;
  }
};

/// `at TIME: rel(subject, object)`. For `exists` the object is empty.
struct AssertionStmt {
  RelationKind kind = RelationKind::inheres_in;
  std::string subject;
  std::string object;
  std::string time;
  int line = 0;
  bool operator==(const AssertionStmt& o) const {
    return kind == o.kind && subject == o.subject && object == o.object && time == o.time;
  }
};

struct RealizesStmt {
  std::string process;
  std::string realizable;
  int line = 0;
  bool operator==(const RealizesStmt& o) const {
    return process == o.process && realizable == o.realizable;
  }
};

struct GroundsStmt {
  std::string ground;
  std::string realizable;
  GroundingKind kind = GroundingKind::dependence;
  int line = 0;
  bool operator==(const GroundsStmt& o) const {
    return ground == o.ground && realizable == o.realizable && kind == o.kind;
  }
};

struct MereoGroundsStmt {
  std::string realizable;
  std::string whole;
  std::string part;
  int line = 0;
  bool operator==(const MereoGroundsStmt& o) const {
    return realizable == o.realizable && whole == o.whole && part == o.part;
  }
};

struct Document {
  std::vector<ClassDecl> class_decls;
  std::vector<DisjointDecl> disjoint_decls;
  std::vector<DeterminationDecl> determination_decls;
  std::optional<TimelineDecl> timeline_decl;
  std::vector<InstanceDecl> instance_decls;
  std::vector<AssertionStmt> assertion_stmts;
  std::vector<RealizesStmt> realizes_stmts;
  std::vector<GroundsStmt> grounding_stmts;
  std::vector<MereoGroundsStmt> mereo_stmts;

  std::size_t statement_count() const;
  bool operator==(const Document&) const = default;
};

struct ParseError {
  int line = 0;
  int column = 0;
  std::string message;
  std::string expected;
};

struct ParseResult {
  Document document;
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty(); }
};

/// Parses a `.bfo` document. Every malformed line contributes an error;
/// parsing continues with the next line.
ParseResult parse(std::string_view source);

/// Canonical text: classes, disjointness, determinations, timeline,
/// instances, temporal assertions ordered by (time, kind), realizations,
/// groundings, mereological groundings.
std::string serialize(const Document& doc);

/// The document with temporal assertions in canonical order. Equal to
/// parse(serialize(doc)) up to source lines.
Document canonicalize(const Document& doc);

/// Quotes `name` unless it is a bare identifier.
std::string format_name(std::string_view name);
bool is_identifier(std::string_view text);

struct ElaborationError {
  int line = 0;
  std::string message;
};

struct ElaborationResult {
  std::optional<World> world;
  std::vector<ElaborationError> errors;

  bool ok() const { return errors.empty() && world.has_value(); }
};

/// Resolves a parsed document against `base` (normally the built-in
/// taxonomy) and builds a world. Collects every failing statement.
ElaborationResult elaborate(const Document& doc, const Taxonomy& base = Taxonomy::builtin());

/// Inverse of elaborate: a document that elaborates to an equal world.
Document to_document(const World& world);

}  // namespace groundwork::dsl
