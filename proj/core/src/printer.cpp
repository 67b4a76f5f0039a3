#include <charconv>
#include <cmath>
#include <string>

#include "varmap/print.hpp"

namespace varmap::lang {

namespace {

std::string escape_string(const std::string& raw) {
  std::string out;
  for (char c : raw) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      default: out += c;
    }
  }
  return out;
}

std::string float_literal(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, end);
  // Keep the token a FloatLit on reparse.
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

int precedence_of(BinOp op) {
  switch (op) {
    case BinOp::Or: return 1;
    case BinOp::And: return 2;
    case BinOp::Eq:
    case BinOp::Ne: return 3;
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge: return 4;
    case BinOp::Add:
    case BinOp::Sub: return 5;
    default: return 6;
  }
}

void render_expr(const Expr& e, int parent_prec, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::IntLit:
      if (e.int_value < 0) {
        // Negative literals only arise from construction; print parenthesized
        // so unary minus reparses identically.
        out += "(-" + std::to_string(-e.int_value) + ")";
      } else {
        out += std::to_string(e.int_value);
      }
      break;
    case Expr::Kind::FloatLit:
      out += float_literal(e.float_value);
      break;
    case Expr::Kind::Var:
      out += e.name;
      break;
    case Expr::Kind::Unary: {
      switch (e.un_op) {
        case UnOp::Neg:
        case UnOp::Not: {
          out += un_op_token(e.un_op);
          std::string inner;
          render_expr(e.children[0], 0, inner);
          // Parenthesize anything that is not a simple operand.
          bool simple = e.children[0].kind == Expr::Kind::Var ||
                        e.children[0].kind == Expr::Kind::IntLit ||
                        e.children[0].kind == Expr::Kind::FloatLit ||
                        e.children[0].kind == Expr::Kind::Call;
          if (simple && e.un_op == UnOp::Neg &&
              e.children[0].kind == Expr::Kind::IntLit)
            simple = e.children[0].int_value >= 0;
          out += simple ? inner : "(" + inner + ")";
          break;
        }
        case UnOp::PreInc: out += "++" + e.children[0].name; break;
        case UnOp::PreDec: out += "--" + e.children[0].name; break;
        case UnOp::PostInc: out += e.children[0].name + "++"; break;
        case UnOp::PostDec: out += e.children[0].name + "--"; break;
      }
      break;
    }
    case Expr::Kind::Binary: {
      int prec = precedence_of(e.bin_op);
      bool parens = prec < parent_prec;
      if (parens) out += "(";
      render_expr(e.children[0], prec, out);
      out += " ";
      out += bin_op_token(e.bin_op);
      out += " ";
      render_expr(e.children[1], prec + 1, out);
      if (parens) out += ")";
      break;
    }
    case Expr::Kind::Call: {
      out += e.name + "(";
      for (size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += ", ";
        render_expr(e.children[i], 0, out);
      }
      out += ")";
      break;
    }
  }
}

class Renderer {
 public:
  std::string run(const Program& p) {
    for (size_t i = 0; i < p.functions.size(); ++i) {
      if (i) out_ += "\n";
      render_function(p.functions[i]);
    }
    return std::move(out_);
  }

 private:
  void indent() { out_.append(static_cast<size_t>(depth_) * 4, ' '); }

  void render_function(const Function& f) {
    out_ += std::string(type_name(f.return_type)) + " " + f.name + "(";
    for (size_t i = 0; i < f.params.size(); ++i) {
      if (i) out_ += ", ";
      out_ += std::string(type_name(f.params[i].type)) + " " + f.params[i].name;
    }
    out_ += ") {\n";
    ++depth_;
    for (const auto& s : f.body) render_stmt(s);
    --depth_;
    out_ += "}\n";
  }

  void render_body(const std::vector<Stmt>& body) {
    out_ += " {\n";
    ++depth_;
    for (const auto& s : body) render_stmt(s);
    --depth_;
    indent();
    out_ += "}";
  }

  void render_stmt(const Stmt& s) {
    indent();
    switch (s.kind) {
      case Stmt::Kind::If:
        out_ += "if (" + print_expr(s.exprs[0]) + ")";
        render_body(s.body);
        if (s.has_else) {
          out_ += " else";
          render_body(s.else_body);
        }
        out_ += "\n";
        break;
      case Stmt::Kind::While:
        out_ += "while (" + print_expr(s.exprs[0]) + ")";
        render_body(s.body);
        out_ += "\n";
        break;
      case Stmt::Kind::For:
        out_ += "for (";
        if (!s.init.empty()) out_ += print_stmt_line(s.init[0]);
        out_ += ";";
        if (!s.exprs.empty()) out_ += " " + print_expr(s.exprs[0]);
        out_ += ";";
        if (!s.step.empty()) out_ += " " + print_stmt_line(s.step[0]);
        out_ += ")";
        render_body(s.body);
        out_ += "\n";
        break;
      case Stmt::Kind::Block:
        out_ += "{\n";
        ++depth_;
        for (const auto& sub : s.body) render_stmt(sub);
        --depth_;
        indent();
        out_ += "}\n";
        break;
      default:
        out_ += print_stmt_line(s) + ";\n";
        break;
    }
  }

  std::string out_;
  int depth_ = 0;
};

}  // namespace

std::string print_expr(const Expr& e) {
  std::string out;
  render_expr(e, 0, out);
  return out;
}

std::string print_stmt_line(const Stmt& s) {
  switch (s.kind) {
    case Stmt::Kind::Decl: {
      std::string out = type_name(s.decl_type);
      out += " ";
      for (size_t i = 0; i < s.decls.size(); ++i) {
        if (i) out += ", ";
        out += s.decls[i].name;
        if (!s.decls[i].init.empty()) out += " = " + print_expr(s.decls[i].init[0]);
      }
      return out;
    }
    case Stmt::Kind::Assign:
      return s.target + " = " + print_expr(s.exprs[0]);
    case Stmt::Kind::ExprStmt:
      return print_expr(s.exprs[0]);
    case Stmt::Kind::Return:
      return s.exprs.empty() ? "return" : "return " + print_expr(s.exprs[0]);
    case Stmt::Kind::Scanf: {
      std::string out = "scanf(\"" + escape_string(s.format) + "\"";
      for (const auto& e : s.exprs) out += ", &" + e.name;
      return out + ")";
    }
    case Stmt::Kind::Printf: {
      std::string out = "printf(\"" + escape_string(s.format) + "\"";
      for (const auto& e : s.exprs) out += ", " + print_expr(e);
      return out + ")";
    }
    default:
      return "";  // compound statements are handled by the renderer
  }
}

std::string pretty_print(const Program& p) { return Renderer().run(p); }

}  // namespace varmap::lang
