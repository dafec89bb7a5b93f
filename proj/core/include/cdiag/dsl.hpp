#ifndef CDIAG_DSL_HPP
#define CDIAG_DSL_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdiag/anodyne.hpp"
#include "cdiag/bisimplicial.hpp"
#include "cdiag/category.hpp"
#include "cdiag/classification.hpp"
#include "cdiag/marked.hpp"
#include "cdiag/simplicial_set.hpp"

namespace cdiag::dsl {

struct Pos {
  int line = 1;
  int col = 1;
};

[[noreturn]] void parse_fail(Pos pos, const std::string& message);

// Expressions: nested calls over integers, names and presentation literals.
struct LiteralFace {
  std::vector<int> word;
  std::string gen;
};
struct LiteralGen {
  std::string name;
  int dim = 0;
  std::vector<LiteralFace> faces;
  Pos pos;
};

struct Expr {
  enum class Kind { Call, Name, Int, List, Literal };
  Kind kind = Kind::Int;
  Pos pos;
  std::string head;  // Call head or Name
  long long value = 0;
  std::vector<Expr> args;               // Call arguments / List elements
  std::vector<LiteralGen> literal;      // Literal
};

struct CatBlock {
  bool free_mode = false;  // 'gen' lines (free category) vs 'arr'+'comp' lines
  std::vector<std::string> objects;
  struct ArrowDecl {
    std::string name, src, dst;
    Pos pos;
  };
  std::vector<ArrowDecl> arrows;
  struct CompDecl {
    std::string g, f, result;
    Pos pos;
  };
  std::vector<CompDecl> comps;
};

struct PosetBlock {
  std::vector<std::string> objects;
  std::vector<std::pair<std::string, std::string>> rels;
};

struct PipeStage {
  std::string verb;
  std::vector<Expr> args;
  Pos pos;
};

struct Statement {
  enum class Kind { SSet, MSSet, Bis, Cat, Poset, Rel, Command } kind;
  Pos pos;
  std::string name;  // binding name
  Expr expr;         // binding expression
  CatBlock cat;
  PosetBlock poset;
  std::string rel_cat;                 // rel binding
  std::vector<std::string> rel_weak;   // arrow names
  std::string verb;                    // command
  std::vector<Expr> args;
  std::vector<PipeStage> pipes;
};

struct Program {
  std::vector<Statement> statements;
};

Program parse_program(const std::string& text);
std::string print_program(const Program& p);
std::string print_expr(const Expr& e);

// Evaluated, validated bindings plus the command list.
struct BiValue {
  BiPtr view;
  ClassPtr cls;  // non-null when the view is a classification diagram
};

struct Bounds {
  int pbound = 3;
  int qbound = 3;
  int jtrunc = 3;
};

class Workspace {
 public:
  Workspace() = default;
  Workspace(Program program, Bounds defaults);

  const Program& program() const { return program_; }
  const Bounds& defaults() const { return defaults_; }

  SSetPtr eval_sset(const Expr& e) const;
  MarkedSSet eval_msset(const Expr& e) const;
  BiValue eval_biset(const Expr& e) const;
  const FiniteCategory& category(const std::string& name, Pos pos) const;
  const RelativeCategory& relative(const std::string& name, Pos pos) const;

  enum class ValueKind { SSet, MSSet, Bis, Cat, Rel, Unknown };
  ValueKind kind_of_name(const std::string& name) const;
  ValueKind kind_of_expr(const Expr& e) const;

 private:
  void bind(const Statement& s);
  void typecheck_command(const Statement& s) const;

  Program program_;
  Bounds defaults_;
  std::map<std::string, SSetPtr> ssets_;
  std::map<std::string, MarkedSSet> msets_;
  std::map<std::string, BiValue> bisets_;
  std::map<std::string, FiniteCategory> cats_;
  std::map<std::string, RelativeCategory> rels_;
};

Workspace parse_workspace(const std::string& text, Bounds defaults = {});

}  // namespace cdiag::dsl

#endif  // CDIAG_DSL_HPP
