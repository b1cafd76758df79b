/*
 * Copyright 2026 The polypta Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "polypta/parser.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace polypta {

ParseError::ParseError(DiagCode code, const std::string& message,
                       SourcePos pos)
    : std::runtime_error(std::to_string(pos.line) + ":" +
                         std::to_string(pos.column) + ": " + message),
      code_(code),
      pos_(pos) {}

namespace {

enum class Tok { Word, String, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      SourcePos pos{line_, col_};
      if (at_end()) {
        out.push_back({Tok::End, "", pos});
        return out;
      }
      char c = peek();
      if (is_word_char(c)) {
        std::string word;
        while (!at_end() && is_word_char(peek())) word += advance();
        out.push_back({Tok::Word, std::move(word), pos});
      } else if (c == '"') {
        advance();
        std::string s;
        while (!at_end() && peek() != '"' && peek() != '\n') s += advance();
        if (at_end() || peek() != '"') {
          throw ParseError(DiagCode::Syntax, "unterminated string literal",
                           pos);
        }
        advance();
        out.push_back({Tok::String, std::move(s), pos});
      } else {
        advance();
        out.push_back({Tok::Punct, std::string(1, c), pos});
      }
    }
  }

  const std::map<int, std::string>& comments() const { return comments_; }

 private:
  bool at_end() const { return i_ >= text_.size(); }
  char peek() const { return text_[i_]; }
  char advance() {
    char c = text_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        int line = line_;
        advance();
        std::string comment;
        while (!at_end() && peek() != '\n') comment += advance();
        comments_[line] = comment;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
  std::map<int, std::string> comments_;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {
      "HOST", "GUEST", "class", "field", "new",    "iface",
      "eval", "if",    "else",  "while", "return"};
  return kw;
}

// An allocation label is the first word of a same-line comment when that word
// contains '@' (e.g. `# obj@sec`).
std::optional<std::string> label_from_comment(const std::string& comment) {
  std::istringstream in(comment);
  std::string word;
  if (in >> word && word.find('@') != std::string::npos) return word;
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::map<int, std::string> comments)
      : toks_(std::move(tokens)), comments_(std::move(comments)) {}

  Program program() {
    Program p;
    expect_word("HOST");
    expect_punct("{");
    p.host = module_body(ModuleId::Host);
    expect_punct("}");
    expect_word("GUEST");
    expect_punct("{");
    p.guest = module_body(ModuleId::Guest);
    expect_punct("}");
    if (cur().kind != Tok::End) fail("expected end of input");
    return p;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& look(std::size_t ahead) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    const Token& t = look(ahead);
    return t.kind == Tok::Punct && t.text == p;
  }
  bool is_word(std::string_view w, std::size_t ahead = 0) const {
    const Token& t = look(ahead);
    return t.kind == Tok::Word && t.text == w;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string got = cur().kind == Tok::End ? "end of input"
                                              : "'" + cur().text + "'";
    throw ParseError(DiagCode::Syntax, msg + ", got " + got, cur().pos);
  }

  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
    ++pos_;
  }
  void expect_word(std::string_view w) {
    if (!is_word(w)) fail("expected '" + std::string(w) + "'");
    ++pos_;
  }

  std::string ident(const char* what) {
    const Token& t = cur();
    if (t.kind != Tok::Word || keywords().count(t.text) ||
        std::isdigit(static_cast<unsigned char>(t.text[0]))) {
      fail(std::string("expected ") + what);
    }
    ++pos_;
    return t.text;
  }

  ModuleDecl module_body(ModuleId module) {
    ModuleDecl m;
    while (!is_punct("}") && cur().kind != Tok::End) {
      if (is_word("class")) {
        m.classes.push_back(class_decl(module));
      } else {
        m.methods.push_back(method_decl(std::nullopt));
      }
    }
    return m;
  }

  ClassDecl class_decl(ModuleId module) {
    ClassDecl c;
    c.pos = cur().pos;
    expect_word("class");
    c.name = ident("class name");
    expect_punct("{");
    while (!is_punct("}")) {
      if (cur().kind == Tok::End) fail("unterminated class body");
      if (is_word("field")) {
        ++pos_;
        c.fields.push_back(ident("field name"));
        while (is_punct(",")) {
          ++pos_;
          c.fields.push_back(ident("field name"));
        }
        expect_punct(";");
      } else {
        c.methods.push_back(method_decl(c.name));
      }
    }
    expect_punct("}");
    (void)module;
    return c;
  }

  MethodDecl method_decl(std::optional<std::string> owner) {
    MethodDecl m;
    m.pos = cur().pos;
    m.name = ident("method name");
    m.owner = std::move(owner);
    expect_punct("(");
    if (!is_punct(")")) {
      m.params.push_back(ident("parameter name"));
      while (is_punct(",")) {
        ++pos_;
        m.params.push_back(ident("parameter name"));
      }
    }
    expect_punct(")");
    m.body = block();
    return m;
  }

  Block block() {
    expect_punct("{");
    Block b;
    while (!is_punct("}")) {
      if (cur().kind == Tok::End) fail("unterminated block");
      b.push_back(statement());
    }
    expect_punct("}");
    return b;
  }

  // Condition text is opaque; tokens are joined with single spaces so that
  // printing and re-parsing is stable.
  std::string condition() {
    expect_punct("(");
    std::string text;
    int depth = 0;
    while (true) {
      if (cur().kind == Tok::End) fail("unterminated condition");
      if (is_punct(")") && depth == 0) break;
      if (is_punct("(")) ++depth;
      if (is_punct(")")) --depth;
      if (is_punct("{") || is_punct("}") || is_punct(";")) {
        fail("unexpected token in condition");
      }
      if (!text.empty()) text += ' ';
      text += cur().kind == Tok::String ? "\"" + cur().text + "\"" : cur().text;
      ++pos_;
    }
    expect_punct(")");
    if (text.empty()) fail("empty condition");
    return text;
  }

  std::vector<std::string> args() {
    expect_punct("(");
    std::vector<std::string> out;
    if (!is_punct(")")) {
      out.push_back(ident("argument"));
      while (is_punct(",")) {
        ++pos_;
        out.push_back(ident("argument"));
      }
    }
    expect_punct(")");
    return out;
  }

  std::string eval_target() {
    expect_word("eval");
    expect_punct("(");
    if (cur().kind != Tok::String) fail("expected eval program string");
    Token program = cur();
    ++pos_;
    expect_punct(")");
    // The program must be a single zero-argument guest invocation `f()`.
    std::string s = program.text;
    auto trim = [](std::string v) {
      auto b = v.find_first_not_of(" \t");
      auto e = v.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
    };
    s = trim(s);
    std::size_t paren = s.find('(');
    std::string name = paren == std::string::npos ? "" : trim(s.substr(0, paren));
    std::string rest = paren == std::string::npos ? "" : s.substr(paren);
    rest.erase(std::remove_if(rest.begin(), rest.end(),
                              [](char c) { return c == ' ' || c == '\t'; }),
               rest.end());
    bool ok = !name.empty() && rest == "()" &&
              std::all_of(name.begin(), name.end(), is_word_char) &&
              !std::isdigit(static_cast<unsigned char>(name[0]));
    if (!ok) {
      throw ParseError(DiagCode::Syntax,
                       "eval program must be a zero-argument guest method "
                       "invocation like \"f()\"",
                       program.pos);
    }
    return name;
  }

  std::optional<std::string> label_at(int line) const {
    auto it = comments_.find(line);
    if (it == comments_.end()) return std::nullopt;
    return label_from_comment(it->second);
  }

  std::pair<std::string, std::optional<std::string>> new_expr() {
    expect_word("new");
    std::string cls = ident("class name");
    expect_punct("(");
    expect_punct(")");
    int line = cur().pos.line;  // the terminating ';'
    return {cls, label_at(line)};
  }

  Stmt statement() {
    Stmt s;
    s.pos = cur().pos;
    if (is_word("if")) {
      ++pos_;
      IfStmt st;
      st.cond = condition();
      st.then_body = block();
      if (is_word("else")) {
        ++pos_;
        st.else_body = block();
      }
      s.node = std::move(st);
      return s;
    }
    if (is_word("while")) {
      ++pos_;
      WhileStmt st;
      st.cond = condition();
      st.body = block();
      s.node = std::move(st);
      return s;
    }
    if (is_word("return")) {
      ++pos_;
      s.node = ReturnStmt{ident("return variable")};
      expect_punct(";");
      return s;
    }
    if (is_word("iface")) {
      ++pos_;
      InterfaceNewStmt st;
      st.target = ident("interface variable");
      expect_punct("=");
      auto [cls, label] = new_expr();
      st.cls = std::move(cls);
      st.label = std::move(label);
      expect_punct(";");
      s.node = std::move(st);
      return s;
    }
    if (is_word("eval")) {
      s.node = EvalStmt{std::nullopt, eval_target()};
      expect_punct(";");
      return s;
    }

    std::string first = ident("statement");
    if (is_punct("(")) {
      s.node = InvokeStmt{std::nullopt, std::nullopt, first, args()};
      expect_punct(";");
      return s;
    }
    if (is_punct(".")) {
      ++pos_;
      std::string member = ident("field or method name");
      if (is_punct("(")) {
        s.node = InvokeStmt{std::nullopt, first, member, args()};
      } else {
        expect_punct("=");
        s.node = StoreStmt{first, member, ident("stored variable")};
      }
      expect_punct(";");
      return s;
    }
    expect_punct("=");
    if (is_word("new")) {
      auto [cls, label] = new_expr();
      s.node = NewStmt{first, std::move(cls), std::move(label)};
    } else if (is_word("eval")) {
      s.node = EvalStmt{first, eval_target()};
    } else {
      std::string rhs = ident("expression");
      if (is_punct("(")) {
        s.node = InvokeStmt{first, std::nullopt, rhs, args()};
      } else if (is_punct(".")) {
        ++pos_;
        std::string member = ident("field or method name");
        if (is_punct("(")) {
          s.node = InvokeStmt{first, rhs, member, args()};
        } else {
          s.node = LoadStmt{first, rhs, member};
        }
      } else {
        s.node = AssignStmt{first, rhs};
      }
    }
    expect_punct(";");
    return s;
  }

  std::vector<Token> toks_;
  std::map<int, std::string> comments_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse(std::string_view text) {
  Lexer lexer(text);
  std::vector<Token> tokens = lexer.run();
  Parser parser(std::move(tokens), lexer.comments());
  Program p = parser.program();
  number_statements(p);

  for (const Diagnostic& d : validate(p)) {
    if (d.code == DiagCode::DuplicateMethod ||
        d.code == DiagCode::UnknownEvalTarget ||
        d.code == DiagCode::UnknownInterfaceClass) {
      throw ParseError(d.code, d.message, d.pos);
    }
  }
  return p;
}

Program parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace polypta
