// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/operator_text.hpp"

#include <cctype>
#include <sstream>

#include "mgc/io_util.hpp"
#include "mgc/tensor_text.hpp"

namespace mgc {

namespace {

const char *bin_op_name(BinOp op) {
  switch (op) {
  case BinOp::Add:
    return "+";
  case BinOp::Sub:
    return "-";
  case BinOp::Mul:
    return "*";
  case BinOp::Div:
    return "/";
  case BinOp::Max:
    return "max";
  case BinOp::Min:
    return "min";
  case BinOp::Eq:
    return "==";
  case BinOp::Ne:
    return "!=";
  case BinOp::Lt:
    return "<";
  case BinOp::Le:
    return "<=";
  case BinOp::Gt:
    return ">";
  case BinOp::Ge:
    return ">=";
  }
  return "?";
}

void emit_expr(std::ostream &out, const Expr &e) {
  switch (e.kind) {
  case Expr::Kind::IntImm:
    out << e.ival;
    return;
  case Expr::Kind::FloatImm:
    out << "(f32 " << float_to_string(e.fval) << ")";
    return;
  case Expr::Kind::Var:
    out << e.name;
    return;
  case Expr::Kind::Load:
    out << "(load " << e.name << ' ';
    emit_expr(out, e.args[0]);
    out << ')';
    return;
  case Expr::Kind::Bin:
    out << '(' << bin_op_name(e.bop) << ' ';
    emit_expr(out, e.args[0]);
    out << ' ';
    emit_expr(out, e.args[1]);
    out << ')';
    return;
  case Expr::Kind::Un:
    out << "(exp ";
    emit_expr(out, e.args[0]);
    out << ')';
    return;
  case Expr::Kind::Select:
    out << "(select ";
    emit_expr(out, e.args[0]);
    out << ' ';
    emit_expr(out, e.args[1]);
    out << ' ';
    emit_expr(out, e.args[2]);
    out << ')';
    return;
  case Expr::Kind::Cast:
    out << "(cast " << to_string(e.cast_to) << ' ';
    emit_expr(out, e.args[0]);
    out << ')';
    return;
  }
}

void emit_stmts(std::ostream &out, std::span<const Stmt> stmts, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (const Stmt &s : stmts) {
    switch (s.kind) {
    case Stmt::Kind::For:
      out << pad << "for " << s.var << ' ' << s.extent << " {\n";
      emit_stmts(out, s.body, indent + 1);
      out << pad << "}\n";
      break;
    case Stmt::Kind::Set:
      out << pad << "set " << s.buf << ' ';
      emit_expr(out, s.index);
      out << ' ';
      emit_expr(out, s.value);
      out << '\n';
      break;
    case Stmt::Kind::Copy:
      out << pad << "copy " << s.buf << ' ' << s.src << '\n';
      break;
    case Stmt::Kind::Call: {
      out << pad << "call " << s.callee << " (";
      for (std::size_t i = 0; i < s.args.size(); ++i) {
        if (i)
          out << ", ";
        out << s.args[i];
      }
      out << ")\n";
      break;
    }
    case Stmt::Kind::If:
      out << pad << "if ";
      emit_expr(out, s.cond);
      out << " {\n";
      emit_stmts(out, s.body, indent + 1);
      out << pad << "}\n";
      break;
    case Stmt::Kind::Parallel:
      out << pad << "parallel {\n";
      emit_stmts(out, s.body, indent + 1);
      out << pad << "} {\n";
      emit_stmts(out, s.alt, indent + 1);
      out << pad << "}\n";
      break;
    }
  }
}

std::string join(const std::vector<std::string> &items, const char *sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i)
      out += sep;
    out += items[i];
  }
  return out;
}

// ---- parsing ----

struct Token {
  enum class Kind { Atom, LParen, RParen, LBrace, RBrace, Comma, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 0;
};

class Lexer {
public:
  explicit Lexer(const std::string &text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    if (pos_ >= text_.size()) {
      t.kind = Token::Kind::End;
      return t;
    }
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      t.kind = Token::Kind::LParen;
      return t;
    }
    if (c == ')') {
      ++pos_;
      t.kind = Token::Kind::RParen;
      return t;
    }
    if (c == '{') {
      ++pos_;
      t.kind = Token::Kind::LBrace;
      return t;
    }
    if (c == '}') {
      ++pos_;
      t.kind = Token::Kind::RBrace;
      return t;
    }
    if (c == ',') {
      ++pos_;
      t.kind = Token::Kind::Comma;
      return t;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != '{' &&
           text_[pos_] != '}' && text_[pos_] != ',' && text_[pos_] != '#')
      ++pos_;
    t.kind = Token::Kind::Atom;
    t.text = text_.substr(start, pos_ - start);
    return t;
  }

private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n')
          ++pos_;
      } else if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string &text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

class Parser {
public:
  explicit Parser(const std::string &text) : lexer_(text) { advance(); }

  OperatorModule parse_module() {
    OperatorModule mod;
    bool saw_module = false;
    while (cur_.kind != Token::Kind::End) {
      std::string rec = expect_atom("record keyword");
      if (rec == "module") {
        saw_module = true;
        while (cur_.kind == Token::Kind::Atom && cur_.text.find('=') != std::string::npos) {
          auto [key, value] = split_kv(read_joined_atom("module field"));
          if (key == "entry")
            mod.entry = value;
          else if (key == "inputs")
            mod.entry_inputs = split_names(value);
          else if (key == "outputs")
            mod.entry_outputs = split_names(value);
          else
            fail("unknown module field '" + key + "'");
        }
      } else if (rec == "buffer") {
        mod.buffers.push_back(parse_buffer());
      } else if (rec == "map") {
        std::string node = expect_atom("node id");
        std::string fn = expect_atom("function name");
        mod.origin.emplace_back(node, fn);
      } else if (rec == "func") {
        mod.functions.push_back(parse_function());
      } else {
        fail("unknown record '" + rec + "'");
      }
    }
    if (!saw_module)
      fail("missing module record");
    return mod;
  }

private:
  void advance() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string &msg) { throw ParseError(cur_.line, msg); }

  std::string expect_atom(const char *what) {
    if (cur_.kind != Token::Kind::Atom)
      fail(std::string("expected ") + what);
    std::string text = cur_.text;
    advance();
    return text;
  }

  // Reads `a,b,c` sequences that the lexer split at commas back into one
  // field value (shape=32,32,3 and friends).
  std::string read_joined_atom(const char *what) {
    std::string text = expect_atom(what);
    while (cur_.kind == Token::Kind::Comma) {
      advance();
      text += ',';
      text += expect_atom(what);
    }
    return text;
  }

  void expect(Token::Kind kind, const char *what) {
    if (cur_.kind != kind)
      fail(std::string("expected ") + what);
    advance();
  }

  std::pair<std::string, std::string> split_kv(const std::string &atom) {
    std::size_t eq = atom.find('=');
    if (eq == std::string::npos)
      fail("expected key=value, got '" + atom + "'");
    return {atom.substr(0, eq), atom.substr(eq + 1)};
  }

  std::vector<std::string> split_names(const std::string &value) {
    if (value.empty())
      return {};
    return split_char(value, ',');
  }

  std::int64_t parse_int(const std::string &text) {
    char *end = nullptr;
    long long v = std::strtoll(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0')
      fail("expected integer, got '" + text + "'");
    return v;
  }

  BufferDecl parse_buffer() {
    BufferDecl decl;
    decl.name = expect_atom("buffer name");
    std::string data_text;
    while (cur_.kind == Token::Kind::Atom && cur_.text.find('=') != std::string::npos) {
      auto [key, value] = split_kv(read_joined_atom("buffer field"));
      if (key == "shape") {
        for (const std::string &d : split_char(value, ','))
          decl.shape.push_back(parse_int(d));
      } else if (key == "kind") {
        decl.kind = elem_kind_from_string(value);
      } else if (key == "data") {
        data_text = value;
      } else {
        fail("unknown buffer field '" + key + "'");
      }
    }
    if (decl.shape.empty())
      fail("buffer '" + decl.name + "' has no shape");
    if (!data_text.empty()) {
      Tensor t = Tensor::zeros(decl.shape, decl.kind);
      std::vector<std::string> fields;
      if (data_text.rfind("base64:", 0) == 0)
        fields = {data_text};
      else
        fields = split_char(data_text, ',');
      tensor_data_from_fields(t, fields, cur_.line);
      decl.init = std::move(t);
    }
    return decl;
  }

  OperatorFunction parse_function() {
    OperatorFunction fn;
    fn.name = expect_atom("function name");
    expect(Token::Kind::LParen, "'('");
    while (cur_.kind != Token::Kind::RParen) {
      fn.params.push_back(expect_atom("parameter name"));
      if (cur_.kind == Token::Kind::Comma)
        advance();
    }
    advance(); // ')'
    fn.body = parse_block();
    return fn;
  }

  std::vector<Stmt> parse_block() {
    expect(Token::Kind::LBrace, "'{'");
    std::vector<Stmt> stmts;
    while (cur_.kind != Token::Kind::RBrace) {
      if (cur_.kind == Token::Kind::End)
        fail("unexpected end of input inside block");
      stmts.push_back(parse_stmt());
    }
    advance(); // '}'
    return stmts;
  }

  Stmt parse_stmt() {
    std::string head = expect_atom("statement keyword");
    if (head == "for") {
      std::string var = expect_atom("loop variable");
      std::int64_t extent = parse_int(expect_atom("loop extent"));
      return Stmt::loop(var, extent, parse_block());
    }
    if (head == "set") {
      std::string buf = expect_atom("buffer name");
      Expr index = parse_expr();
      Expr value = parse_expr();
      return Stmt::set(buf, std::move(index), std::move(value));
    }
    if (head == "copy") {
      std::string dst = expect_atom("destination buffer");
      std::string src = expect_atom("source buffer");
      return Stmt::copy(dst, src);
    }
    if (head == "call") {
      std::string callee = expect_atom("callee");
      expect(Token::Kind::LParen, "'('");
      std::vector<std::string> args;
      while (cur_.kind != Token::Kind::RParen) {
        args.push_back(expect_atom("argument"));
        if (cur_.kind == Token::Kind::Comma)
          advance();
      }
      advance(); // ')'
      return Stmt::call(callee, args);
    }
    if (head == "if") {
      Expr cond = parse_expr();
      return Stmt::if_then(std::move(cond), parse_block());
    }
    if (head == "parallel") {
      std::vector<Stmt> main_path = parse_block();
      std::vector<Stmt> alt_path = parse_block();
      return Stmt::parallel(std::move(main_path), std::move(alt_path));
    }
    fail("unknown statement '" + head + "'");
  }

  Expr parse_expr() {
    if (cur_.kind == Token::Kind::Atom) {
      std::string atom = expect_atom("expression");
      if (!atom.empty() && (std::isdigit(static_cast<unsigned char>(atom[0])) ||
                            (atom[0] == '-' && atom.size() > 1)))
        return Expr::int_imm(parse_int(atom));
      return Expr::var(atom);
    }
    expect(Token::Kind::LParen, "expression");
    std::string op = expect_atom("operator");
    Expr result;
    if (op == "f32") {
      result = Expr::float_imm(float_from_string(expect_atom("float literal")));
    } else if (op == "load") {
      std::string buf = expect_atom("buffer name");
      result = Expr::load(buf, parse_expr());
    } else if (op == "select") {
      Expr c = parse_expr();
      Expr t = parse_expr();
      Expr f = parse_expr();
      result = Expr::select(std::move(c), std::move(t), std::move(f));
    } else if (op == "cast") {
      ElemKind to = elem_kind_from_string(expect_atom("element kind"));
      result = Expr::cast(to, parse_expr());
    } else if (op == "exp") {
      result = Expr::un(UnOp::Exp, parse_expr());
    } else {
      static const std::pair<const char *, BinOp> ops[] = {
          {"+", BinOp::Add}, {"-", BinOp::Sub},  {"*", BinOp::Mul}, {"/", BinOp::Div},
          {"max", BinOp::Max}, {"min", BinOp::Min}, {"==", BinOp::Eq}, {"!=", BinOp::Ne},
          {"<", BinOp::Lt},  {"<=", BinOp::Le},  {">", BinOp::Gt}, {">=", BinOp::Ge},
      };
      bool found = false;
      for (const auto &[name, bop] : ops)
        if (op == name) {
          Expr a = parse_expr();
          Expr b = parse_expr();
          result = Expr::bin(bop, std::move(a), std::move(b));
          found = true;
          break;
        }
      if (!found)
        fail("unknown operator '" + op + "'");
    }
    expect(Token::Kind::RParen, "')'");
    return result;
  }

  Lexer lexer_;
  Token cur_;
};

} // namespace

std::string serialize_module(const OperatorModule &mod) {
  std::ostringstream out;
  out << "module entry=" << mod.entry << " inputs=" << join(mod.entry_inputs, ",")
      << " outputs=" << join(mod.entry_outputs, ",") << '\n';
  for (const BufferDecl &b : mod.buffers) {
    out << "buffer " << b.name << " shape=";
    for (std::size_t i = 0; i < b.shape.size(); ++i) {
      if (i)
        out << ',';
      out << b.shape[i];
    }
    out << " kind=" << to_string(b.kind);
    if (b.init) {
      std::string data = tensor_data_to_text(*b.init);
      for (char &c : data)
        if (c == ' ')
          c = ',';
      out << " data=" << data;
    }
    out << '\n';
  }
  for (const auto &[node, fn] : mod.origin)
    out << "map " << node << ' ' << fn << '\n';
  for (const OperatorFunction &fn : mod.functions) {
    out << "func " << fn.name << " (" << join(fn.params, ", ") << ") {\n";
    emit_stmts(out, fn.body, 1);
    out << "}\n";
  }
  return out.str();
}

OperatorModule deserialize_module(const std::string &text) {
  Parser parser(text);
  OperatorModule mod = parser.parse_module();
  std::vector<Diagnostic> diags = validate_module(mod);
  if (!diags.empty())
    throw Error("module failed validation: " + to_string(diags.front()));
  return mod;
}

void save_module(const std::string &path, const OperatorModule &mod) {
  write_file(path, serialize_module(mod));
}

OperatorModule load_module(const std::string &path) {
  return deserialize_module(read_file(path));
}

} // namespace mgc
