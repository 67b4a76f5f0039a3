#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "varmap/interp.hpp"

namespace varmap::lang {

namespace {

constexpr size_t kOutputLimit = 8u << 20;
constexpr int kMaxCallDepth = 8192;

struct Value {
  Type type = Type::Int;
  std::int32_t i = 0;
  double f = 0.0;

  static Value of_int(std::int32_t v) { return {Type::Int, v, 0.0}; }
  static Value of_float(double v) { return {Type::Float, 0, v}; }

  double as_double() const { return type == Type::Float ? f : static_cast<double>(i); }

  std::int32_t as_int() const {
    if (type == Type::Int) return i;
    if (std::isnan(f) || f >= 2147483648.0 || f < -2147483648.0) return kUninitInt;
    return static_cast<std::int32_t>(f);
  }

  bool truthy() const { return type == Type::Float ? f != 0.0 : i != 0; }
};

struct RuntimeFailure {
  std::string message;
};

struct StepLimitHit {};

struct ReturnSignal {
  Value value;
  bool has_value = false;
};

class Machine {
 public:
  Machine(const Program& p, const std::string& input, std::uint64_t step_limit,
          ExecutionResult& result)
      : program_(p), input_(input), step_limit_(step_limit), result_(result) {}

  void run() {
    const Function* main_fn = nullptr;
    for (const auto& f : program_.functions)
      if (f.name == "main") main_fn = &f;
    if (!main_fn) throw RuntimeFailure{"no main function"};
    call_function(*main_fn, {});
  }

 private:
  struct Frame {
    std::vector<Value> slots;
    std::vector<std::uint8_t> written;
    int base = 0;  // first var id of the frame's function
  };

  void step() {
    if (++result_.steps > step_limit_) throw StepLimitHit{};
  }

  Value read_slot(int var_id) {
    Frame& fr = frames_.back();
    int slot = var_id - fr.base;
    if (!fr.written[static_cast<size_t>(slot)]) {
      result_.used_uninitialized = true;
      return program_.variables[static_cast<size_t>(var_id)].type == Type::Float
                 ? Value::of_float(std::numeric_limits<double>::quiet_NaN())
                 : Value::of_int(kUninitInt);
    }
    return fr.slots[static_cast<size_t>(slot)];
  }

  void write_slot(int var_id, Value v) {
    Frame& fr = frames_.back();
    int slot = var_id - fr.base;
    Type t = program_.variables[static_cast<size_t>(var_id)].type;
    fr.slots[static_cast<size_t>(slot)] =
        t == Type::Float ? Value::of_float(v.as_double()) : Value::of_int(v.as_int());
    fr.written[static_cast<size_t>(slot)] = 1;
  }

  Value call_function(const Function& f, const std::vector<Value>& args) {
    if (static_cast<int>(frames_.size()) >= kMaxCallDepth)
      throw RuntimeFailure{"call depth limit exceeded"};
    int fi = 0;
    for (size_t i = 0; i < program_.functions.size(); ++i)
      if (&program_.functions[i] == &f) fi = static_cast<int>(i);
    auto [first, count] = program_.function_var_range[static_cast<size_t>(fi)];

    Frame fr;
    fr.base = first;
    fr.slots.resize(static_cast<size_t>(count));
    fr.written.assign(static_cast<size_t>(count), 0);
    frames_.push_back(std::move(fr));
    for (size_t i = 0; i < f.params.size(); ++i) write_slot(f.params[i].var_id, args[i]);

    ReturnSignal ret;
    try {
      exec_block(f.body);
    } catch (ReturnSignal& r) {
      ret = std::move(r);
    }
    frames_.pop_back();

    if (ret.has_value) return ret.value;
    if (f.return_type == Type::Float) {
      return Value::of_float(std::numeric_limits<double>::quiet_NaN());
    }
    return Value::of_int(f.return_type == Type::Void ? 0 : kUninitInt);
  }

  void exec_block(const std::vector<Stmt>& stmts) {
    for (const auto& s : stmts) exec_stmt(s);
  }

  void exec_stmt(const Stmt& s) {
    step();
    switch (s.kind) {
      case Stmt::Kind::Decl:
        for (const auto& d : s.decls)
          if (!d.init.empty()) write_slot(d.var_id, eval(d.init[0]));
        break;
      case Stmt::Kind::Assign:
        write_slot(s.target_var_id, eval(s.exprs[0]));
        break;
      case Stmt::Kind::ExprStmt:
        eval(s.exprs[0]);
        break;
      case Stmt::Kind::If:
        if (eval(s.exprs[0]).truthy())
          exec_block(s.body);
        else if (s.has_else)
          exec_block(s.else_body);
        break;
      case Stmt::Kind::While:
        while (eval(s.exprs[0]).truthy()) exec_block(s.body);
        break;
      case Stmt::Kind::For:
        if (!s.init.empty()) exec_stmt(s.init[0]);
        for (;;) {
          if (!s.exprs.empty() && !eval(s.exprs[0]).truthy()) break;
          step();
          exec_block(s.body);
          if (!s.step.empty()) exec_stmt(s.step[0]);
        }
        break;
      case Stmt::Kind::Scanf:
        exec_scanf(s);
        break;
      case Stmt::Kind::Printf:
        exec_printf(s);
        break;
      case Stmt::Kind::Return: {
        ReturnSignal r;
        if (!s.exprs.empty()) {
          r.value = eval(s.exprs[0]);
          r.has_value = true;
        } else {
          r.has_value = false;
        }
        throw r;
      }
      case Stmt::Kind::Block:
        exec_block(s.body);
        break;
    }
  }

  std::string next_input_token() {
    while (input_pos_ < input_.size() &&
           std::isspace(static_cast<unsigned char>(input_[input_pos_])))
      ++input_pos_;
    if (input_pos_ >= input_.size()) throw RuntimeFailure{"scanf: input exhausted"};
    size_t start = input_pos_;
    while (input_pos_ < input_.size() &&
           !std::isspace(static_cast<unsigned char>(input_[input_pos_])))
      ++input_pos_;
    return input_.substr(start, input_pos_ - start);
  }

  void exec_scanf(const Stmt& s) {
    size_t arg = 0;
    const std::string& fmt = s.format;
    for (size_t i = 0; i < fmt.size(); ++i) {
      if (fmt[i] != '%') continue;
      ++i;
      if (i >= fmt.size()) throw RuntimeFailure{"scanf: bad format"};
      char d = fmt[i];
      if (d != 'd' && d != 'f') throw RuntimeFailure{std::string("scanf: unsupported %") + d};
      if (arg >= s.exprs.size()) throw RuntimeFailure{"scanf: missing argument"};
      std::string tok = next_input_token();
      const char* cs = tok.c_str();
      char* end = nullptr;
      if (d == 'd') {
        long v = std::strtol(cs, &end, 10);
        if (end == cs) throw RuntimeFailure{"scanf: expected integer, got '" + tok + "'"};
        write_slot(s.exprs[arg].var_id, Value::of_int(static_cast<std::int32_t>(v)));
      } else {
        double v = std::strtod(cs, &end);
        if (end == cs) throw RuntimeFailure{"scanf: expected number, got '" + tok + "'"};
        write_slot(s.exprs[arg].var_id, Value::of_float(v));
      }
      ++arg;
    }
    if (arg != s.exprs.size()) throw RuntimeFailure{"scanf: extra arguments"};
  }

  void append_output(const std::string& text) {
    if (result_.output.size() + text.size() > kOutputLimit)
      throw RuntimeFailure{"output limit exceeded"};
    result_.output += text;
  }

  void exec_printf(const Stmt& s) {
    const std::string& fmt = s.format;
    std::string out;
    size_t arg = 0;
    char buf[64];
    for (size_t i = 0; i < fmt.size(); ++i) {
      char c = fmt[i];
      if (c != '%') {
        out += c;
        continue;
      }
      ++i;
      if (i >= fmt.size()) throw RuntimeFailure{"printf: bad format"};
      if (fmt[i] == '%') {
        out += '%';
        continue;
      }
      // %d, %f, %.Nf and %0Nd
      int precision = -1;
      int zero_pad = 0;
      if (fmt[i] == '.') {
        ++i;
        precision = 0;
        while (i < fmt.size() && std::isdigit(static_cast<unsigned char>(fmt[i])))
          precision = precision * 10 + (fmt[i++] - '0');
      } else if (fmt[i] == '0') {
        ++i;
        while (i < fmt.size() && std::isdigit(static_cast<unsigned char>(fmt[i])))
          zero_pad = zero_pad * 10 + (fmt[i++] - '0');
      }
      if (i >= fmt.size()) throw RuntimeFailure{"printf: bad format"};
      char d = fmt[i];
      if (arg >= s.exprs.size()) throw RuntimeFailure{"printf: missing argument"};
      Value v = eval(s.exprs[arg++]);
      if (d == 'd') {
        std::snprintf(buf, sizeof(buf), "%0*d", zero_pad, v.as_int());
        out += buf;
      } else if (d == 'f') {
        std::snprintf(buf, sizeof(buf), "%.*f", precision < 0 ? 6 : precision,
                      v.as_double());
        out += buf;
      } else {
        throw RuntimeFailure{std::string("printf: unsupported %") + d};
      }
    }
    if (arg != s.exprs.size()) throw RuntimeFailure{"printf: extra arguments"};
    append_output(out);
  }

  static std::int32_t wrap32(std::int64_t v) {
    return static_cast<std::int32_t>(static_cast<std::uint32_t>(v));
  }

  Value eval(const Expr& e) {
    step();
    switch (e.kind) {
      case Expr::Kind::IntLit:
        return Value::of_int(wrap32(e.int_value));
      case Expr::Kind::FloatLit:
        return Value::of_float(e.float_value);
      case Expr::Kind::Var:
        return read_slot(e.var_id);
      case Expr::Kind::Unary:
        return eval_unary(e);
      case Expr::Kind::Binary:
        return eval_binary(e);
      case Expr::Kind::Call: {
        const Function* callee = nullptr;
        for (const auto& f : program_.functions)
          if (f.name == e.name) callee = &f;
        if (!callee) throw RuntimeFailure{"unknown function '" + e.name + "'"};
        std::vector<Value> args;
        args.reserve(e.children.size());
        for (const auto& a : e.children) args.push_back(eval(a));
        return call_function(*callee, args);
      }
    }
    throw RuntimeFailure{"unreachable"};
  }

  Value eval_unary(const Expr& e) {
    const Expr& operand = e.children[0];
    switch (e.un_op) {
      case UnOp::Neg: {
        Value v = eval(operand);
        return v.type == Type::Float ? Value::of_float(-v.f)
                                     : Value::of_int(wrap32(-static_cast<std::int64_t>(v.i)));
      }
      case UnOp::Not:
        return Value::of_int(eval(operand).truthy() ? 0 : 1);
      case UnOp::PreInc:
      case UnOp::PreDec:
      case UnOp::PostInc:
      case UnOp::PostDec: {
        Value before = read_slot(operand.var_id);
        int delta = (e.un_op == UnOp::PreInc || e.un_op == UnOp::PostInc) ? 1 : -1;
        Value after =
            before.type == Type::Float
                ? Value::of_float(before.f + delta)
                : Value::of_int(wrap32(static_cast<std::int64_t>(before.i) + delta));
        write_slot(operand.var_id, after);
        bool prefix = e.un_op == UnOp::PreInc || e.un_op == UnOp::PreDec;
        return prefix ? after : before;
      }
    }
    throw RuntimeFailure{"unreachable"};
  }

  Value eval_binary(const Expr& e) {
    if (e.bin_op == BinOp::And)
      return Value::of_int(eval(e.children[0]).truthy() && eval(e.children[1]).truthy() ? 1 : 0);
    if (e.bin_op == BinOp::Or)
      return Value::of_int(eval(e.children[0]).truthy() || eval(e.children[1]).truthy() ? 1 : 0);

    Value a = eval(e.children[0]);
    Value b = eval(e.children[1]);
    bool flt = a.type == Type::Float || b.type == Type::Float;

    switch (e.bin_op) {
      case BinOp::Add:
        return flt ? Value::of_float(a.as_double() + b.as_double())
                   : Value::of_int(wrap32(static_cast<std::int64_t>(a.i) + b.i));
      case BinOp::Sub:
        return flt ? Value::of_float(a.as_double() - b.as_double())
                   : Value::of_int(wrap32(static_cast<std::int64_t>(a.i) - b.i));
      case BinOp::Mul:
        return flt ? Value::of_float(a.as_double() * b.as_double())
                   : Value::of_int(wrap32(static_cast<std::int64_t>(a.i) * b.i));
      case BinOp::Div:
        if (flt) {
          if (b.as_double() == 0.0) throw RuntimeFailure{"division by zero"};
          return Value::of_float(a.as_double() / b.as_double());
        }
        if (b.i == 0) throw RuntimeFailure{"division by zero"};
        return Value::of_int(wrap32(static_cast<std::int64_t>(a.i) / b.i));
      case BinOp::Mod:
        if (flt) throw RuntimeFailure{"modulo on float operands"};
        if (b.i == 0) throw RuntimeFailure{"modulo by zero"};
        return Value::of_int(wrap32(static_cast<std::int64_t>(a.i) % b.i));
      default: {
        double x = a.as_double();
        double y = b.as_double();
        bool r = false;
        switch (e.bin_op) {
          case BinOp::Lt: r = x < y; break;
          case BinOp::Le: r = x <= y; break;
          case BinOp::Gt: r = x > y; break;
          case BinOp::Ge: r = x >= y; break;
          case BinOp::Eq: r = x == y; break;
          case BinOp::Ne: r = x != y; break;
          default: throw RuntimeFailure{"unreachable"};
        }
        return Value::of_int(r ? 1 : 0);
      }
    }
  }

  const Program& program_;
  const std::string& input_;
  size_t input_pos_ = 0;
  std::uint64_t step_limit_;
  ExecutionResult& result_;
  std::vector<Frame> frames_;
};

}  // namespace

ExecutionResult interpret(const Program& p, const std::string& stdin_text,
                          std::uint64_t step_limit) {
  if (!p.analyzed) throw std::logic_error("interpret: program not analyzed");
  ExecutionResult result;
  try {
    Machine(p, stdin_text, step_limit, result).run();
    result.status = ExecutionResult::Status::Ok;
  } catch (RuntimeFailure& f) {
    result.status = ExecutionResult::Status::RuntimeError;
    result.error = std::move(f.message);
  } catch (StepLimitHit&) {
    result.status = ExecutionResult::Status::StepLimitExceeded;
  }
  return result;
}

std::string normalize_output(const std::string& text) {
  std::string out;
  std::string line;
  auto flush_line = [&] {
    size_t end = line.find_last_not_of(" \t\r");
    out += end == std::string::npos ? "" : line.substr(0, end + 1);
    out += '\n';
    line.clear();
  };
  for (char c : text) {
    if (c == '\n')
      flush_line();
    else
      line += c;
  }
  if (!line.empty()) flush_line();
  while (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

TestSuite load_test_suite(const std::string& dir) {
  namespace fs = std::filesystem;
  TestSuite suite;
  std::vector<fs::path> inputs;
  if (!fs::is_directory(dir)) throw std::runtime_error("test suite directory not found: " + dir);
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".in") inputs.push_back(entry.path());
  std::sort(inputs.begin(), inputs.end());
  for (const auto& in_path : inputs) {
    fs::path out_path = in_path;
    out_path.replace_extension(".out");
    if (!fs::exists(out_path))
      throw std::runtime_error("missing expected output for " + in_path.string());
    auto slurp = [](const fs::path& path) {
      std::ifstream f(path, std::ios::binary);
      std::ostringstream ss;
      ss << f.rdbuf();
      return ss.str();
    };
    TestCase tc;
    tc.name = in_path.stem().string();
    tc.input = slurp(in_path);
    tc.expected = slurp(out_path);
    suite.cases.push_back(std::move(tc));
  }
  if (suite.cases.empty()) throw std::runtime_error("empty test suite: " + dir);
  return suite;
}

TestReport run_test_suite(const Program& p, const TestSuite& suite,
                          std::uint64_t step_limit) {
  TestReport report;
  report.total = static_cast<int>(suite.cases.size());
  for (const auto& tc : suite.cases) {
    ExecutionResult r = interpret(p, tc.input, step_limit);
    if (r.ok() && normalize_output(r.output) == normalize_output(tc.expected))
      ++report.passed;
  }
  return report;
}

bool passes_suite(const Program& p, const TestSuite& suite, std::uint64_t step_limit) {
  for (const auto& tc : suite.cases) {
    ExecutionResult r = interpret(p, tc.input, step_limit);
    if (!r.ok() || normalize_output(r.output) != normalize_output(tc.expected)) return false;
  }
  return true;
}

}  // namespace varmap::lang
