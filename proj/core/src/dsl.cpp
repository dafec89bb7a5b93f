#include "cdiag/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "cdiag/shapes.hpp"
#include "cdiag/util.hpp"

namespace cdiag::dsl {

void parse_fail(Pos pos, const std::string& message) {
  fail(ErrorKind::Parse,
       "line " + std::to_string(pos.line) + ", col " + std::to_string(pos.col) + ": " + message);
}

namespace {

struct Token {
  enum class Kind { Ident, Int, Sym, Newline, End } kind;
  std::string text;
  long long value = 0;
  Pos pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }
  bool at_sym(const std::string& s) const {
    return tok_.kind == Token::Kind::Sym && tok_.text == s;
  }
  bool at_ident(const std::string& s) const {
    return tok_.kind == Token::Kind::Ident && tok_.text == s;
  }
  void expect_sym(const std::string& s) {
    if (!at_sym(s)) parse_fail(tok_.pos, "expected '" + s + "'");
    advance();
  }
  std::string expect_ident(const std::string& what) {
    if (tok_.kind != Token::Kind::Ident) parse_fail(tok_.pos, "expected " + what);
    std::string out = tok_.text;
    advance();
    return out;
  }
  long long expect_int(const std::string& what) {
    if (tok_.kind != Token::Kind::Int) parse_fail(tok_.pos, "expected " + what);
    long long out = tok_.value;
    advance();
    return out;
  }
  void skip_newlines() {
    while (tok_.kind == Token::Kind::Newline) advance();
  }
  int depth = 0;

 private:
  void advance() {
    while (at_ < text_.size()) {
      char c = text_[at_];
      if (c == '#') {
        while (at_ < text_.size() && text_[at_] != '\n') ++at_;
        continue;
      }
      if (c == '\n') {
        if (depth > 0) {
          bump();
          continue;
        }
        tok_ = {Token::Kind::Newline, "\n", 0, {line_, col_}};
        bump();
        return;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
        continue;
      }
      break;
    }
    if (at_ >= text_.size()) {
      tok_ = {Token::Kind::End, "", 0, {line_, col_}};
      return;
    }
    Pos pos{line_, col_};
    char c = text_[at_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (at_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[at_])) || text_[at_] == '_')) {
        word += text_[at_];
        bump();
      }
      tok_ = {Token::Kind::Ident, word, 0, pos};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = 0;
      while (at_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[at_]))) {
        v = v * 10 + (text_[at_] - '0');
        bump();
      }
      tok_ = {Token::Kind::Int, "", v, pos};
      return;
    }
    // multi-char symbols
    if (c == '-' && at_ + 1 < text_.size() && text_[at_ + 1] == '>') {
      bump();
      bump();
      tok_ = {Token::Kind::Sym, "->", 0, pos};
      return;
    }
    if (c == '<' && at_ + 1 < text_.size() && text_[at_ + 1] == '=') {
      bump();
      bump();
      tok_ = {Token::Kind::Sym, "<=", 0, pos};
      return;
    }
    static const std::string singles = "(){}[],;=:|.";
    if (singles.find(c) != std::string::npos) {
      if (c == '(' || c == '{' || c == '[') ++depth;
      if (c == ')' || c == '}' || c == ']') --depth;
      bump();
      tok_ = {Token::Kind::Sym, std::string(1, c), 0, pos};
      return;
    }
    parse_fail(pos, std::string("unexpected character '") + c + "'");
  }

  void bump() {
    if (text_[at_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++at_;
  }

  const std::string& text_;
  size_t at_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lx_(text) {}

  Program parse() {
    Program out;
    lx_.skip_newlines();
    while (lx_.peek().kind != Token::Kind::End) {
      out.statements.push_back(statement());
      if (lx_.peek().kind == Token::Kind::Newline || lx_.at_sym(";")) lx_.take();
      lx_.skip_newlines();
    }
    return out;
  }

 private:
  Statement statement() {
    Token head = lx_.peek();
    if (head.kind != Token::Kind::Ident) parse_fail(head.pos, "expected a statement");
    const std::string& kw = head.text;
    if (kw == "sset" || kw == "msset" || kw == "bis") {
      Statement s;
      s.pos = head.pos;
      s.kind = (kw == "sset")    ? Statement::Kind::SSet
               : (kw == "msset") ? Statement::Kind::MSSet
                                 : Statement::Kind::Bis;
      lx_.take();
      s.name = lx_.expect_ident("a binding name");
      lx_.expect_sym("=");
      s.expr = expr();
      return s;
    }
    if (kw == "cat" || kw == "freecat") {
      Statement s;
      s.pos = head.pos;
      s.kind = Statement::Kind::Cat;
      lx_.take();
      s.name = lx_.expect_ident("a category name");
      s.cat = cat_block(kw == "freecat");
      return s;
    }
    if (kw == "poset") {
      Statement s;
      s.pos = head.pos;
      s.kind = Statement::Kind::Poset;
      lx_.take();
      s.name = lx_.expect_ident("a poset name");
      s.poset = poset_block();
      return s;
    }
    if (kw == "rel") {
      Statement s;
      s.pos = head.pos;
      s.kind = Statement::Kind::Rel;
      lx_.take();
      s.name = lx_.expect_ident("a relative category name");
      lx_.expect_sym("=");
      lx_.expect_sym("(");
      s.rel_cat = lx_.expect_ident("a category name");
      lx_.expect_sym(",");
      lx_.expect_sym("[");
      while (!lx_.at_sym("]")) {
        s.rel_weak.push_back(lx_.expect_ident("an arrow name"));
        if (lx_.at_sym(",")) lx_.take();
      }
      lx_.expect_sym("]");
      lx_.expect_sym(")");
      return s;
    }
    // command
    Statement s;
    s.pos = head.pos;
    s.kind = Statement::Kind::Command;
    s.verb = lx_.take().text;
    while (!at_statement_end() && !lx_.at_sym("|")) {
      s.args.push_back(expr());
    }
    while (lx_.at_sym("|")) {
      lx_.take();
      PipeStage stage;
      stage.pos = lx_.peek().pos;
      stage.verb = lx_.expect_ident("a pipe verb");
      while (!at_statement_end() && !lx_.at_sym("|")) stage.args.push_back(expr());
      s.pipes.push_back(std::move(stage));
    }
    return s;
  }

  bool at_statement_end() const {
    return lx_.peek().kind == Token::Kind::Newline || lx_.peek().kind == Token::Kind::End ||
           lx_.at_sym(";");
  }

  CatBlock cat_block(bool force_free) {
    CatBlock out;
    out.free_mode = force_free;
    bool saw_gen = force_free, saw_table = false;
    lx_.expect_sym("{");
    while (!lx_.at_sym("}")) {
      Token item = lx_.peek();
      if (item.kind != Token::Kind::Ident) parse_fail(item.pos, "expected a block item");
      std::string kw = lx_.take().text;
      if (kw == "ob") {
        while (lx_.peek().kind == Token::Kind::Ident) out.objects.push_back(lx_.take().text);
      } else if (kw == "gen" || kw == "arr") {
        if (kw == "gen") saw_gen = true;
        if (kw == "arr") saw_table = true;
        CatBlock::ArrowDecl a;
        a.pos = item.pos;
        a.name = lx_.expect_ident("an arrow name");
        lx_.expect_sym(":");
        a.src = lx_.expect_ident("a source object");
        lx_.expect_sym("->");
        a.dst = lx_.expect_ident("a target object");
        out.arrows.push_back(std::move(a));
      } else if (kw == "comp") {
        saw_table = true;
        CatBlock::CompDecl c;
        c.pos = item.pos;
        c.g = lx_.expect_ident("an arrow name");
        lx_.expect_sym(".");
        c.f = lx_.expect_ident("an arrow name");
        lx_.expect_sym("=");
        c.result = lx_.expect_ident("an arrow name");
        out.comps.push_back(std::move(c));
      } else {
        parse_fail(item.pos, "unknown category item '" + kw + "'");
      }
      if (lx_.at_sym(";")) lx_.take();
    }
    lx_.expect_sym("}");
    if (saw_gen && saw_table) {
      parse_fail(lx_.peek().pos, "category block mixes free generators and table arrows");
    }
    out.free_mode = saw_gen || force_free || !saw_table;
    return out;
  }

  PosetBlock poset_block() {
    PosetBlock out;
    lx_.expect_sym("{");
    while (!lx_.at_sym("}")) {
      Token item = lx_.peek();
      std::string kw = lx_.expect_ident("a block item");
      if (kw == "ob") {
        while (lx_.peek().kind == Token::Kind::Ident) out.objects.push_back(lx_.take().text);
      } else if (kw == "rel") {
        std::string a = lx_.expect_ident("an object name");
        lx_.expect_sym("<=");
        std::string b = lx_.expect_ident("an object name");
        out.rels.push_back({a, b});
      } else {
        parse_fail(item.pos, "unknown poset item '" + kw + "'");
      }
      if (lx_.at_sym(";")) lx_.take();
    }
    lx_.expect_sym("}");
    return out;
  }

  Expr expr() {
    Token t = lx_.peek();
    if (t.kind == Token::Kind::Int) {
      lx_.take();
      Expr e;
      e.kind = Expr::Kind::Int;
      e.value = t.value;
      e.pos = t.pos;
      return e;
    }
    if (lx_.at_sym("[")) {
      lx_.take();
      Expr e;
      e.kind = Expr::Kind::List;
      e.pos = t.pos;
      while (!lx_.at_sym("]")) {
        e.args.push_back(expr());
        if (lx_.at_sym(",")) lx_.take();
      }
      lx_.expect_sym("]");
      return e;
    }
    if (lx_.at_sym("{")) {
      return literal_block();
    }
    if (t.kind != Token::Kind::Ident) parse_fail(t.pos, "expected an expression");
    std::string name = lx_.take().text;
    if (lx_.at_sym("(")) {
      lx_.take();
      Expr e;
      e.kind = Expr::Kind::Call;
      e.head = name;
      e.pos = t.pos;
      while (!lx_.at_sym(")")) {
        e.args.push_back(expr());
        if (lx_.at_sym(",")) lx_.take();
      }
      lx_.expect_sym(")");
      return e;
    }
    Expr e;
    e.kind = Expr::Kind::Name;
    e.head = name;
    e.pos = t.pos;
    return e;
  }

  Expr literal_block() {
    Expr e;
    e.kind = Expr::Kind::Literal;
    e.pos = lx_.peek().pos;
    lx_.expect_sym("{");
    while (!lx_.at_sym("}")) {
      Token item = lx_.peek();
      std::string kw = lx_.expect_ident("'gen'");
      if (kw != "gen") parse_fail(item.pos, "expected 'gen' in presentation literal");
      LiteralGen g;
      g.pos = item.pos;
      g.name = lx_.expect_ident("a generator name");
      lx_.expect_sym(":");
      g.dim = static_cast<int>(lx_.expect_int("a dimension"));
      if (lx_.at_sym("[")) {
        lx_.take();
        while (!lx_.at_sym("]")) {
          Token dt = lx_.peek();
          std::string d = lx_.expect_ident("a face label dN");
          if (d.size() < 2 || d[0] != 'd') parse_fail(dt.pos, "expected face label dN");
          int index = std::atoi(d.c_str() + 1);
          if (static_cast<int>(g.faces.size()) != index) {
            parse_fail(dt.pos, "faces must be listed in order d0, d1, ...");
          }
          lx_.expect_sym("=");
          LiteralFace f;
          // term: ('s' INT-suffixed idents)* then generator name
          std::string word = lx_.expect_ident("a simplex term");
          while (word.size() >= 2 && word[0] == 's' &&
                 std::all_of(word.begin() + 1, word.end(),
                             [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
                 lx_.peek().kind == Token::Kind::Ident) {
            f.word.push_back(std::atoi(word.c_str() + 1));
            word = lx_.take().text;
          }
          f.gen = word;
          g.faces.push_back(std::move(f));
          if (lx_.at_sym(",")) lx_.take();
        }
        lx_.expect_sym("]");
      }
      e.literal.push_back(std::move(g));
      if (lx_.at_sym(";")) lx_.take();
    }
    lx_.expect_sym("}");
    return e;
  }

  Lexer lx_;
};

}  // namespace

Program parse_program(const std::string& text) { return Parser(text).parse(); }

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Int:
      return std::to_string(e.value);
    case Expr::Kind::Name:
      return e.head;
    case Expr::Kind::List: {
      std::string out = "[";
      for (size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        out += print_expr(e.args[i]);
      }
      return out + "]";
    }
    case Expr::Kind::Call: {
      std::string out = e.head + "(";
      for (size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        out += print_expr(e.args[i]);
      }
      return out + ")";
    }
    case Expr::Kind::Literal: {
      std::string out = "{ ";
      for (const auto& g : e.literal) {
        out += "gen " + g.name + " : " + std::to_string(g.dim);
        if (!g.faces.empty()) {
          out += " [";
          for (size_t i = 0; i < g.faces.size(); ++i) {
            if (i) out += ", ";
            out += "d" + std::to_string(i) + " = ";
            for (int w : g.faces[i].word) out += "s" + std::to_string(w) + " ";
            out += g.faces[i].gen;
          }
          out += "]";
        }
        out += " ; ";
      }
      return out + "}";
    }
  }
  return {};
}

std::string print_program(const Program& p) {
  std::ostringstream out;
  for (const Statement& s : p.statements) {
    switch (s.kind) {
      case Statement::Kind::SSet:
        out << "sset " << s.name << " = " << print_expr(s.expr);
        break;
      case Statement::Kind::MSSet:
        out << "msset " << s.name << " = " << print_expr(s.expr);
        break;
      case Statement::Kind::Bis:
        out << "bis " << s.name << " = " << print_expr(s.expr);
        break;
      case Statement::Kind::Cat: {
        out << (s.cat.free_mode ? "cat " : "cat ") << s.name << " { ob";
        for (const auto& o : s.cat.objects) out << " " << o;
        for (const auto& a : s.cat.arrows) {
          out << " ; " << (s.cat.free_mode ? "gen " : "arr ") << a.name << " : " << a.src
              << " -> " << a.dst;
        }
        for (const auto& c : s.cat.comps) {
          out << " ; comp " << c.g << " . " << c.f << " = " << c.result;
        }
        out << " }";
        break;
      }
      case Statement::Kind::Poset: {
        out << "poset " << s.name << " { ob";
        for (const auto& o : s.poset.objects) out << " " << o;
        for (const auto& r : s.poset.rels) out << " ; rel " << r.first << " <= " << r.second;
        out << " }";
        break;
      }
      case Statement::Kind::Rel: {
        out << "rel " << s.name << " = (" << s.rel_cat << ", [";
        for (size_t i = 0; i < s.rel_weak.size(); ++i) {
          if (i) out << ", ";
          out << s.rel_weak[i];
        }
        out << "])";
        break;
      }
      case Statement::Kind::Command: {
        out << s.verb;
        for (const auto& a : s.args) out << " " << print_expr(a);
        for (const auto& st : s.pipes) {
          out << " | " << st.verb;
          for (const auto& a : st.args) out << " " << print_expr(a);
        }
        break;
      }
    }
    out << "\n";
  }
  return out.str();
}

namespace {

int expr_int(const Expr& e, const std::string& what) {
  if (e.kind != Expr::Kind::Int) parse_fail(e.pos, "expected an integer for " + what);
  return static_cast<int>(e.value);
}

void need_args(const Expr& e, size_t lo, size_t hi) {
  if (e.args.size() < lo || e.args.size() > hi) {
    parse_fail(e.pos, "'" + e.head + "' takes " + std::to_string(lo) +
                          (hi > lo ? ".." + std::to_string(hi) : "") + " arguments");
  }
}

SSetPtr eval_literal(const Expr& e) {
  SimplicialSet::Builder b;
  std::map<std::string, GenId> names;
  std::map<std::string, int> dims;
  for (const LiteralGen& g : e.literal) {
    std::vector<Simplex> faces;
    for (const LiteralFace& f : g.faces) {
      auto it = names.find(f.gen);
      if (it == names.end()) parse_fail(g.pos, "face references unknown generator " + f.gen);
      Simplex s{Word(), it->second};
      int dim = dims[f.gen];
      for (auto w = f.word.rbegin(); w != f.word.rend(); ++w) {
        if (*w > dim) parse_fail(g.pos, "degeneracy index out of range in face term");
        s = Simplex{s.word.inserted(*w), s.gen};
        ++dim;
      }
      faces.push_back(s);
    }
    try {
      GenId id = b.add(g.dim, std::move(faces), g.name);
      names[g.name] = id;
      dims[g.name] = g.dim;
    } catch (const std::exception& ex) {
      parse_fail(g.pos, ex.what());
    }
  }
  SSetPtr out = b.build();
  std::string why = out->validate();
  if (!why.empty()) parse_fail(e.pos, "presentation literal invalid: " + why);
  return out;
}

}  // namespace

Workspace::Workspace(Program program, Bounds defaults)
    : program_(std::move(program)), defaults_(defaults) {
  for (const Statement& s : program_.statements) {
    if (s.kind == Statement::Kind::Command) {
      typecheck_command(s);
    } else {
      bind(s);
    }
  }
}

void Workspace::bind(const Statement& s) {
  if (kind_of_name(s.name) != ValueKind::Unknown) {
    parse_fail(s.pos, "name '" + s.name + "' is already bound");
  }
  switch (s.kind) {
    case Statement::Kind::SSet:
      ssets_[s.name] = eval_sset(s.expr);
      return;
    case Statement::Kind::MSSet:
      msets_.emplace(s.name, eval_msset(s.expr));
      return;
    case Statement::Kind::Bis:
      bisets_.emplace(s.name, eval_biset(s.expr));
      return;
    case Statement::Kind::Cat: {
      std::map<std::string, int> obj;
      for (const auto& o : s.cat.objects) {
        if (obj.count(o)) parse_fail(s.pos, "duplicate object " + o);
        obj[o] = static_cast<int>(obj.size());
      }
      auto oid = [&](const std::string& name, Pos pos) {
        auto it = obj.find(name);
        if (it == obj.end()) parse_fail(pos, "unknown object " + name);
        return it->second;
      };
      if (s.cat.free_mode) {
        std::vector<std::pair<int, int>> edges;
        std::vector<std::string> names;
        for (const auto& a : s.cat.arrows) {
          edges.push_back({oid(a.src, a.pos), oid(a.dst, a.pos)});
          names.push_back(a.name);
        }
        try {
          cats_.emplace(s.name, FiniteCategory::free_on_graph(
                                    static_cast<int>(obj.size()), edges, names));
        } catch (const Error& e) {
          parse_fail(s.pos, e.what());
        }
      } else {
        // explicit table: identities are implicit, composites listed
        std::vector<FiniteCategory::Arrow> arrows;
        std::vector<int> ids(obj.size());
        std::map<std::string, int> arrow_id;
        for (size_t o = 0; o < obj.size(); ++o) {
          ids[o] = static_cast<int>(arrows.size());
          std::string nm = "id_" + s.cat.objects[o];
          arrow_id[nm] = ids[o];
          arrows.push_back({static_cast<int>(o), static_cast<int>(o), nm});
        }
        for (const auto& a : s.cat.arrows) {
          if (arrow_id.count(a.name)) parse_fail(a.pos, "duplicate arrow " + a.name);
          arrow_id[a.name] = static_cast<int>(arrows.size());
          arrows.push_back({oid(a.src, a.pos), oid(a.dst, a.pos), a.name});
        }
        const int A = static_cast<int>(arrows.size());
        std::vector<std::vector<int>> comp(A, std::vector<int>(A, -1));
        for (int g = 0; g < A; ++g) {
          for (int f = 0; f < A; ++f) {
            if (arrows[f].dst != arrows[g].src) continue;
            if (arrows[f].src == arrows[f].dst && ids[arrows[f].src] == f) {
              comp[g][f] = g;
            } else if (arrows[g].src == arrows[g].dst && ids[arrows[g].src] == g) {
              comp[g][f] = f;
            }
          }
        }
        auto aid = [&](const std::string& name, Pos pos) {
          auto it = arrow_id.find(name);
          if (it == arrow_id.end()) parse_fail(pos, "unknown arrow " + name);
          return it->second;
        };
        for (const auto& c : s.cat.comps) {
          comp[aid(c.g, c.pos)][aid(c.f, c.pos)] = aid(c.result, c.pos);
        }
        for (int g = 0; g < A; ++g) {
          for (int f = 0; f < A; ++f) {
            if (arrows[f].dst == arrows[g].src && comp[g][f] < 0) {
              parse_fail(s.pos, "missing composite " + arrows[g].name + " . " + arrows[f].name);
            }
          }
        }
        try {
          cats_.emplace(s.name,
                        FiniteCategory::from_table(static_cast<int>(obj.size()),
                                                   std::move(arrows), std::move(ids),
                                                   std::move(comp)));
        } catch (const Error& e) {
          parse_fail(s.pos, e.what());
        }
      }
      return;
    }
    case Statement::Kind::Poset: {
      std::map<std::string, int> obj;
      for (const auto& o : s.poset.objects) obj[o] = static_cast<int>(obj.size());
      std::vector<std::pair<int, int>> rels;
      for (const auto& [a, b] : s.poset.rels) {
        if (!obj.count(a) || !obj.count(b)) parse_fail(s.pos, "unknown object in relation");
        rels.push_back({obj[a], obj[b]});
      }
      try {
        cats_.emplace(s.name, FiniteCategory::from_poset(static_cast<int>(obj.size()), rels));
      } catch (const Error& e) {
        parse_fail(s.pos, e.what());
      }
      return;
    }
    case Statement::Kind::Rel: {
      const FiniteCategory& C = category(s.rel_cat, s.pos);
      std::vector<int> weak;
      for (const auto& name : s.rel_weak) {
        int a = C.find_arrow(name);
        if (a < 0) parse_fail(s.pos, "unknown arrow '" + name + "' in weak list");
        weak.push_back(a);
      }
      rels_.emplace(s.name, RelativeCategory::wide_closure(C, weak));
      return;
    }
    case Statement::Kind::Command:
      return;
  }
}

Workspace::ValueKind Workspace::kind_of_name(const std::string& name) const {
  if (ssets_.count(name)) return ValueKind::SSet;
  if (msets_.count(name)) return ValueKind::MSSet;
  if (bisets_.count(name)) return ValueKind::Bis;
  if (cats_.count(name)) return ValueKind::Cat;
  if (rels_.count(name)) return ValueKind::Rel;
  return ValueKind::Unknown;
}

Workspace::ValueKind Workspace::kind_of_expr(const Expr& e) const {
  static const std::map<std::string, ValueKind> heads = {
      {"simplex", ValueKind::SSet},   {"boundary", ValueKind::SSet},
      {"horn", ValueKind::SSet},      {"jtrunc", ValueKind::SSet},
      {"product", ValueKind::SSet},   {"skeleton", ValueKind::SSet},
      {"nerve", ValueKind::SSet},     {"unmark", ValueKind::SSet},
      {"column", ValueKind::SSet},    {"row", ValueKind::SSet},
      {"diag", ValueKind::SSet},      {"mapspace", ValueKind::SSet},
      {"flat", ValueKind::MSSet},     {"sharp", ValueKind::MSSet},
      {"natural", ValueKind::MSSet},  {"mark", ValueKind::MSSet},
      {"i1star", ValueKind::MSSet},   {"tlower", ValueKind::MSSet},
      {"classify", ValueKind::Bis},   {"box", ValueKind::Bis},
      {"p1star", ValueKind::Bis},     {"relclassify", ValueKind::Bis},
      {"bskel", ValueKind::Bis},      {"bsub", ValueKind::Bis},
  };
  if (e.kind == Expr::Kind::Literal) return ValueKind::SSet;
  if (e.kind == Expr::Kind::Name) return kind_of_name(e.head);
  if (e.kind == Expr::Kind::Call) {
    auto it = heads.find(e.head);
    if (it != heads.end()) return it->second;
  }
  return ValueKind::Unknown;
}

SSetPtr Workspace::eval_sset(const Expr& e) const {
  if (e.kind == Expr::Kind::Literal) return eval_literal(e);
  if (e.kind == Expr::Kind::Name) {
    auto it = ssets_.find(e.head);
    if (it == ssets_.end()) parse_fail(e.pos, "unknown simplicial set '" + e.head + "'");
    return it->second;
  }
  if (e.kind != Expr::Kind::Call) parse_fail(e.pos, "expected a simplicial set expression");
  const std::string& h = e.head;
  try {
    if (h == "simplex") {
      need_args(e, 1, 1);
      return standard_simplex(expr_int(e.args[0], "dimension"));
    }
    if (h == "boundary") {
      need_args(e, 1, 1);
      return boundary(expr_int(e.args[0], "dimension"));
    }
    if (h == "horn") {
      need_args(e, 2, 2);
      return horn(expr_int(e.args[0], "n"), expr_int(e.args[1], "k"));
    }
    if (h == "jtrunc") {
      need_args(e, 1, 1);
      return j_truncated(expr_int(e.args[0], "truncation"));
    }
    if (h == "product") {
      need_args(e, 2, 2);
      return ProductSSet(eval_sset(e.args[0]), eval_sset(e.args[1])).set();
    }
    if (h == "skeleton") {
      need_args(e, 2, 2);
      return skeleton(*eval_sset(e.args[0]), expr_int(e.args[1], "level")).set;
    }
    if (h == "nerve") {
      need_args(e, 1, 2);
      if (e.args[0].kind != Expr::Kind::Name) parse_fail(e.args[0].pos, "expected a category name");
      int d = e.args.size() > 1 ? expr_int(e.args[1], "bound") : defaults_.jtrunc;
      return Nerve(category(e.args[0].head, e.args[0].pos), d).set();
    }
    if (h == "unmark") {
      need_args(e, 1, 1);
      return eval_msset(e.args[0]).set();
    }
    if (h == "column" || h == "row") {
      need_args(e, 2, 2);
      BiValue b = eval_biset(e.args[0]);
      return slice(*b.view, h == "column" ? BiAxis::Column : BiAxis::Row,
                   expr_int(e.args[1], "index"))
          .set;
    }
    if (h == "diag") {
      need_args(e, 1, 1);
      return diagonal_slice(*eval_biset(e.args[0]).view).set;
    }
    if (h == "mapspace") {
      need_args(e, 3, 3);
      return marked_mapping_space(eval_msset(e.args[0]), eval_msset(e.args[1]),
                                  expr_int(e.args[2], "bound"));
    }
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::Parse) throw;
    parse_fail(e.pos, err.what());
  }
  parse_fail(e.pos, "unknown simplicial set operation '" + h + "'");
}

MarkedSSet Workspace::eval_msset(const Expr& e) const {
  if (e.kind == Expr::Kind::Name) {
    auto it = msets_.find(e.head);
    if (it == msets_.end()) parse_fail(e.pos, "unknown marked simplicial set '" + e.head + "'");
    return it->second;
  }
  if (e.kind != Expr::Kind::Call) parse_fail(e.pos, "expected a marked simplicial set expression");
  const std::string& h = e.head;
  try {
    if (h == "flat") {
      need_args(e, 1, 1);
      return MarkedSSet::flat(eval_sset(e.args[0]));
    }
    if (h == "sharp") {
      need_args(e, 1, 1);
      return MarkedSSet::sharp(eval_sset(e.args[0]));
    }
    if (h == "natural") {
      need_args(e, 1, 1);
      return natural_marking(eval_sset(e.args[0]));
    }
    if (h == "mark") {
      need_args(e, 2, 2);
      SSetPtr X = eval_sset(e.args[0]);
      if (e.args[1].kind != Expr::Kind::List) parse_fail(e.args[1].pos, "expected an edge list");
      std::vector<Simplex> edges;
      for (const Expr& item : e.args[1].args) {
        if (item.kind != Expr::Kind::Name) parse_fail(item.pos, "expected an edge name");
        GenId g = X->find_generator(item.head);
        if (g < 0 || X->generator(g).dim != 1) {
          parse_fail(item.pos, "'" + item.head + "' is not an edge of the underlying set");
        }
        edges.push_back(Simplex::of(g));
      }
      return MarkedSSet(X, std::move(edges));
    }
    if (h == "i1star") {
      need_args(e, 1, 1);
      return i1_star(*eval_biset(e.args[0]).view);
    }
    if (h == "tlower") {
      need_args(e, 1, 1);
      return t_lower(*eval_biset(e.args[0]).view);
    }
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::Parse) throw;
    parse_fail(e.pos, err.what());
  }
  parse_fail(e.pos, "unknown marked simplicial set operation '" + h + "'");
}

BiValue Workspace::eval_biset(const Expr& e) const {
  if (e.kind == Expr::Kind::Name) {
    auto it = bisets_.find(e.head);
    if (it == bisets_.end()) parse_fail(e.pos, "unknown bisimplicial view '" + e.head + "'");
    return it->second;
  }
  if (e.kind != Expr::Kind::Call) parse_fail(e.pos, "expected a bisimplicial expression");
  const std::string& h = e.head;
  try {
    if (h == "classify") {
      need_args(e, 1, 3);
      int p = e.args.size() > 1 ? expr_int(e.args[1], "pbound") : defaults_.pbound;
      int q = e.args.size() > 2 ? expr_int(e.args[2], "qbound") : defaults_.qbound;
      ClassPtr cls = classification_diagram(eval_msset(e.args[0]), p, q);
      return BiValue{cls, cls};
    }
    if (h == "box") {
      need_args(e, 2, 4);
      int p = e.args.size() > 2 ? expr_int(e.args[2], "pbound") : defaults_.pbound;
      int q = e.args.size() > 3 ? expr_int(e.args[3], "qbound") : defaults_.qbound;
      ValueKind k = kind_of_expr(e.args[0]);
      if (k == ValueKind::MSSet) {
        return BiValue{box_product_marked(eval_msset(e.args[0]), eval_sset(e.args[1]), p, q),
                       nullptr};
      }
      return BiValue{box_product(eval_sset(e.args[0]), eval_sset(e.args[1]), p, q), nullptr};
    }
    if (h == "p1star") {
      need_args(e, 1, 3);
      int p = e.args.size() > 1 ? expr_int(e.args[1], "pbound") : defaults_.pbound;
      int q = e.args.size() > 2 ? expr_int(e.args[2], "qbound") : defaults_.qbound;
      return BiValue{p1_star(eval_msset(e.args[0]), p, q), nullptr};
    }
    if (h == "relclassify") {
      need_args(e, 1, 3);
      if (e.args[0].kind != Expr::Kind::Name) {
        parse_fail(e.args[0].pos, "expected a relative category name");
      }
      int p = e.args.size() > 1 ? expr_int(e.args[1], "pbound") : defaults_.pbound;
      int q = e.args.size() > 2 ? expr_int(e.args[2], "qbound") : defaults_.qbound;
      return BiValue{relative_classification(relative(e.args[0].head, e.args[0].pos), p, q),
                     nullptr};
    }
    if (h == "bskel") {
      need_args(e, 2, 2);
      return BiValue{bidegree_skeleton(eval_biset(e.args[0]).view, expr_int(e.args[1], "level")),
                     nullptr};
    }
    if (h == "bsub") {
      need_args(e, 2, 2);
      if (e.args[1].kind != Expr::Kind::List) parse_fail(e.args[1].pos, "expected a vertex list");
      std::vector<int> verts;
      for (const Expr& v : e.args[1].args) verts.push_back(expr_int(v, "vertex"));
      return BiValue{full_subset(eval_biset(e.args[0]).view, verts), nullptr};
    }
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::Parse) throw;
    parse_fail(e.pos, err.what());
  }
  parse_fail(e.pos, "unknown bisimplicial operation '" + h + "'");
}

const FiniteCategory& Workspace::category(const std::string& name, Pos pos) const {
  auto it = cats_.find(name);
  if (it == cats_.end()) parse_fail(pos, "unknown category '" + name + "'");
  return it->second;
}

const RelativeCategory& Workspace::relative(const std::string& name, Pos pos) const {
  auto it = rels_.find(name);
  if (it == rels_.end()) parse_fail(pos, "unknown relative category '" + name + "'");
  return it->second;
}

void Workspace::typecheck_command(const Statement& s) const {
  auto need = [&](size_t lo, size_t hi) {
    if (s.args.size() < lo || s.args.size() > hi) {
      parse_fail(s.pos, "'" + s.verb + "' takes " + std::to_string(lo) + ".." +
                            std::to_string(hi) + " arguments");
    }
  };
  auto must_be = [&](const Expr& e, ValueKind k, const std::string& what) {
    ValueKind got = kind_of_expr(e);
    if (got != k && e.kind != Expr::Kind::Int) {
      if (got == ValueKind::Unknown) {
        parse_fail(e.pos, "unknown name or operation in " + what);
      }
    }
  };
  const std::string& v = s.verb;
  if (v == "classify") {
    need(1, 3);
    must_be(s.args[0], ValueKind::MSSet, "classify");
  } else if (v == "table" || v == "constant") {
    need(1, 2);
    must_be(s.args[0], ValueKind::Bis, v);
  } else if (v == "column" || v == "row") {
    need(2, 3);
    must_be(s.args[0], ValueKind::Bis, v);
  } else if (v == "diag") {
    need(1, 1);
    must_be(s.args[0], ValueKind::Bis, v);
  } else if (v == "homology") {
    need(1, 2);
    must_be(s.args[0], ValueKind::SSet, v);
  } else if (v == "pi1" || v == "contractible" || v == "print_sset") {
    need(1, 2);
    must_be(s.args[0], ValueKind::SSet, v);
  } else if (v == "maps") {
    need(2, 2);
    must_be(s.args[0], ValueKind::SSet, v);
    must_be(s.args[1], ValueKind::SSet, v);
  } else if (v == "mmaps") {
    need(2, 2);
    must_be(s.args[0], ValueKind::MSSet, v);
    must_be(s.args[1], ValueKind::MSSet, v);
  } else if (v == "gen") {
    need(1, 5);
    if (s.args[0].kind != Expr::Kind::Name ||
        !GeneratorSpec::family_from_token(s.args[0].head)) {
      parse_fail(s.args[0].pos, "unknown generator family");
    }
  } else if (v == "lift") {
    need(3, 3);
    if (!(s.args[1].kind == Expr::Kind::Name && s.args[1].head == "vs")) {
      parse_fail(s.pos, "usage: lift <object> vs <inclusion>");
    }
    const Expr& incl = s.args[2];
    if (incl.kind != Expr::Kind::Call || (incl.head != "gen" && incl.head != "incl")) {
      parse_fail(incl.pos, "inclusion must be gen(...) or incl(sub, total)");
    }
    if (incl.head == "gen" &&
        (incl.args.empty() || incl.args[0].kind != Expr::Kind::Name ||
         !GeneratorSpec::family_from_token(incl.args[0].head))) {
      parse_fail(incl.pos, "unknown generator family");
    }
  } else if (v == "print") {
    need(1, 1);
    if (s.args[0].kind != Expr::Kind::Name ||
        kind_of_name(s.args[0].head) == ValueKind::Unknown) {
      parse_fail(s.args[0].pos, "print takes a bound name");
    }
  } else {
    parse_fail(s.pos, "unknown command '" + v + "'");
  }
  for (const PipeStage& stage : s.pipes) {
    if (stage.verb != "homology" && stage.verb != "pi1" && stage.verb != "contractible" &&
        stage.verb != "count") {
      parse_fail(stage.pos, "unknown pipe stage '" + stage.verb + "'");
    }
  }
}

Workspace parse_workspace(const std::string& text, Bounds defaults) {
  return Workspace(parse_program(text), defaults);
}

}  // namespace cdiag::dsl
