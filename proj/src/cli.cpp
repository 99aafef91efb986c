#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "pisupp/cli.hpp"
#include "pisupp/examples.hpp"
#include "pisupp/module_file.hpp"
#include "pisupp/support.hpp"
#include "pisupp/verify.hpp"

namespace pisupp {

namespace {

// --- point literals ---

struct Token {
  enum Kind { Number, Ident, Op, End } kind;
  std::string text;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Number, s.substr(i, j - i)});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i)});
      i = j;
    } else if (std::string("+-*/^()").find(c) != std::string::npos) {
      out.push_back({Token::Op, std::string(1, c)});
      ++i;
    } else {
      throw Error(ErrorKind::SyntaxError, "unexpected character '" + std::string(1, c) + "' in \"" + s + "\"");
    }
  }
  out.push_back({Token::End, ""});
  return out;
}

class ExprParser {
 public:
  ExprParser(const std::string& text, Field field) : text_(text), toks_(tokenize(text)), field_(std::move(field)) {}

  FieldElement parse() {
    if (toks_[0].kind == Token::End) fail("empty coordinate");
    auto v = expr();
    if (peek().kind != Token::End) fail("unexpected '" + peek().text + "'");
    return v;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool accept(const char* op) {
    if (peek().kind == Token::Op && peek().text == op) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::SyntaxError, msg + " in \"" + text_ + "\"");
  }

  FieldElement expr() {
    auto v = term();
    for (;;) {
      if (accept("+")) {
        v = v + term();
      } else if (accept("-")) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  FieldElement term() {
    auto v = factor();
    for (;;) {
      if (accept("*")) {
        v = v * factor();
      } else if (accept("/")) {
        v = v / factor();
      } else {
        return v;
      }
    }
  }

  FieldElement factor() {
    if (accept("-")) return -factor();
    auto base = atom();
    if (!accept("^")) return base;
    const bool negative = accept("-");
    if (peek().kind != Token::Number) fail("expected an integer exponent");
    const auto e = number(toks_[pos_++].text);
    auto v = FieldElement::one(field_);
    for (std::uint64_t i = 0; i < e; ++i) v *= base;
    return negative ? v.inverse() : v;
  }

  FieldElement atom() {
    const auto t = toks_[pos_];
    if (t.kind == Token::Number) {
      ++pos_;
      return FieldElement::from_int(field_, static_cast<std::int64_t>(number(t.text) % field_->characteristic()));
    }
    if (t.kind == Token::Ident) {
      ++pos_;
      if (t.text == "w") {
        const std::uint32_t gen[2] = {0, 1};
        return FieldElement::from_coefficients(field_, gen);
      }
      return FieldElement::variable(field_, t.text);
    }
    if (accept("(")) {
      auto v = expr();
      if (!accept(")")) fail("expected ')'");
      return v;
    }
    fail(t.kind == Token::End ? "unexpected end" : "unexpected '" + t.text + "'");
  }

  std::uint64_t number(const std::string& digits) const {
    if (digits.size() > 18) fail("integer too large");
    return std::stoull(digits);
  }

  std::string text_;
  std::vector<Token> toks_;
  Field field_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

// --- module arguments ---

struct AlgebraOptions {
  unsigned p = 2;
  unsigned r = 2;
  std::string flavor = "group";

  AlgebraSpec spec() const {
    auto s = AlgebraSpec::uniform(p, r, Flavor::Group);
    const auto names = split(flavor, ',');
    if (names.size() != 1 && names.size() != r) {
      throw Error(ErrorKind::InvalidArgument, "--flavor takes one flavor or one per generator");
    }
    for (unsigned i = 0; i < r; ++i) s.flavors[i] = flavor_from_string(names.size() == 1 ? names[0] : names[i]);
    return s;
  }
};

void add_algebra_options(CLI::App* cmd, AlgebraOptions& o) {
  cmd->add_option("--p", o.p, "characteristic for example names")->capture_default_str();
  cmd->add_option("--r", o.r, "number of generators for example names")->capture_default_str();
  cmd->add_option("--flavor", o.flavor, "group | primitive, or a comma list with one per generator")
      ->capture_default_str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
}

PiPoint point_from_literal(const ModuleRep& m, const std::string& literal, unsigned extension_degree) {
  auto coords = parse_point_literal(literal, m.field(), extension_degree);
  const auto field = coords.empty() ? m.field() : coords[0].field();
  return PiPoint::make_linear(m.spec(), field, std::move(coords));
}

std::string projective_label(const PiPoint& alpha) { return ProjPoint::make(alpha.linear()).to_string(); }

// --- commands ---

int cmd_check(const ModuleRep& m, std::ostream& out) {
  out << "ok: " << (m.name().empty() ? "(unnamed)" : m.name()) << ", dim " << m.dim() << ", "
      << m.spec().to_string() << "\n";
  return kExitOk;
}

int cmd_jordan(const ModuleRep& m, const std::string& point, bool generic, unsigned ext, std::ostream& out) {
  if (generic == !point.empty()) throw CLI::ValidationError("jordan: give exactly one of --point and --generic");
  const auto alpha = generic ? generic_point(m.spec()) : point_from_literal(m, point, ext);
  const auto t = restrict(alpha, base_change(m, alpha.field()));
  out << jordan_type(t, m.spec().p).to_string() << "\n";
  return kExitOk;
}

int cmd_support(const ModuleRep& m, unsigned e, bool ideal, std::ostream& out) {
  auto d = support_sample(m, e);
  if (ideal) {
    const auto id = support_ideal(m);
    d.ideal = id.ideal;
    d.ideal_field = id.ideal_field;
    d.generators = id.generators;
  }
  out << d.report();
  return kExitOk;
}

int cmd_cosupport(const ModuleRep& m, const std::string& point, unsigned ext, unsigned e, std::ostream& out) {
  if (point.empty()) {
    out << cosupport_sample(m, e).report();
    return kExitOk;
  }
  const auto alpha = point_from_literal(m, point, ext);
  const auto v = in_cosupport(m, alpha);
  out << projective_label(alpha) << " over " << alpha.field()->name() << ": "
      << (v.in_cosupport ? "in cosupport" : "not in cosupport") << "\n";
  out << "route: " << (v.route == CosupportRoute::Coinduced ? "coinduced" : "finite-dimensional fallback") << "\n";
  if (!v.note.empty()) out << "note: " << v.note << "\n";
  return kExitOk;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_demo_klein(unsigned n, unsigned e, std::ostream& out) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "--n must be positive");
  const auto m = klein_truncation(n);
  const auto& spec = m.spec();
  out << "Klein four-group truncation M_" << n << ", dim " << m.dim() << "\n";
  out << "basis u0..u" << n - 1 << ", v0..v" << n - 1 << "; x u_i = v_i, y u_i = v_{i-1}, v_{-1} = 0\n\n";

  const auto f2 = spec.base;
  auto jt = [&](const PiPoint& a) { return jordan_type(restrict(a, base_change(m, a.field())), spec.p).to_string(); };
  const auto px = PiPoint::make_linear(spec, f2, {FieldElement::one(f2), FieldElement::zero(f2)});
  const auto py = PiPoint::make_linear(spec, f2, {FieldElement::zero(f2), FieldElement::one(f2)});
  const auto pg = generic_point(spec);
  out << "jordan type at t -> x ([1:0]): " << jt(px) << "\n";
  out << "jordan type at t -> y ([0:1]): " << jt(py) << "\n";
  out << "jordan type at t -> " << pg.to_string() << " (generic): " << jt(pg) << "\n\n";

  auto supp = support_sample(m, e);
  if (m.dim() <= kDefaultIdealDimensionCap) {
    const auto id = support_ideal(m);
    supp.ideal = id.ideal;
    supp.ideal_field = id.ideal_field;
    supp.generators = id.generators;
  }
  out << supp.report() << "\n";

  const auto cosupp = cosupport_sample(m, e);
  bool cosupp_equal = true;
  for (std::size_t i = 0; i < supp.sampled.size(); ++i) {
    cosupp_equal = cosupp_equal && supp.sampled[i].in_support == cosupp.sampled[i].in_support;
  }
  std::string closed = "{";
  for (const auto& pt : supp.support_points()) closed += (closed.size() > 1 ? ", " : "") + pt.to_string();
  closed += "}";
  const bool generic_in = supp.generic_in_support.value_or(true);
  const bool generic_co = cosupp.generic_in_support.value_or(false);

  struct Row {
    std::string what, ours, claim, verdict;
  };
  const bool closed_match = closed == "{[0:1]}";
  std::vector<Row> rows{
      {"closed points in the support", closed, "{[0:1]}", closed_match ? "match" : "MISMATCH"},
      {"generic point in the support", yes_no(generic_in), "no", !generic_in ? "match" : "MISMATCH"},
      {"closed points in the cosupport", cosupp_equal ? closed : "differs from support", "{[0:1]}",
       cosupp_equal && closed_match ? "match" : "MISMATCH"},
      {"generic point in the cosupport", yes_no(generic_co), "yes",
       generic_co ? "match" : "expected difference: M_" + std::to_string(n) +
                                   " is finite-dimensional, so its cosupport equals its support"},
  };
  out << "comparison (truncation M_" << n << " vs reference claim (infinite M)):\n";
  for (const auto& r : rows) {
    out << "  " << r.what << ": truncation " << r.ours << "; reference claim (infinite M) " << r.claim << "; "
        << r.verdict << "\n";
  }
  const bool ok = closed_match && !generic_in && cosupp_equal;
  out << "result: " << (ok ? "consistent" : "INCONSISTENT") << "\n";
  return ok ? kExitOk : kExitVerificationFailure;
}

int cmd_verify(const VerifyOptions& o, const std::string& out_dir, const std::string& replay, std::ostream& out) {
  if (!replay.empty()) {
    std::ifstream f(replay, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot read " + replay);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::SyntaxError, replay + ": " + e.what());
    }
    const auto r = replay_bundle(j);
    out << "replay " << r.check << ": " << (r.failed ? "failure reproduced: " : "") << r.detail << "\n";
    return r.failed ? kExitVerificationFailure : kExitOk;
  }
  const auto report = run_verify(o);
  out << report.to_string();
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (const auto& s : report.suites) {
      for (const auto& f : s.failures) {
        const auto path = std::filesystem::path(out_dir) /
                          (s.suite + "-seed" + std::to_string(o.seed) + "-trial" + std::to_string(f.trial) + ".json");
        write_output(path.string(), f.bundle.dump(2) + "\n", out);
        out << "counterexample written to " << path.string() << "\n";
      }
    }
  }
  return report.ok() ? kExitOk : kExitVerificationFailure;
}

}  // namespace

std::vector<FieldElement> parse_point_literal(const std::string& text, const Field& base, unsigned extension_degree) {
  if (extension_degree == 0) throw Error(ErrorKind::InvalidArgument, "extension degree must be positive");
  const auto parts = split(text, ',');
  if (parts.empty()) throw Error(ErrorKind::SyntaxError, "empty point");
  Field field = base->finite_extension(extension_degree);
  std::vector<std::string> fresh;
  for (const auto& part : parts) {
    for (const auto& t : tokenize(part)) {
      if (t.kind != Token::Ident) continue;
      if (t.text == "w") {
        if (field->extension_degree() == 1) {
          throw Error(ErrorKind::InvalidArgument, "w needs a proper extension (--extension-degree)");
        }
        continue;
      }
      if (!field->variable_index(t.text) && std::find(fresh.begin(), fresh.end(), t.text) == fresh.end()) {
        fresh.push_back(t.text);
      }
    }
  }
  if (!fresh.empty()) field = field->adjoin(fresh);
  std::vector<FieldElement> coords;
  for (const auto& part : parts) coords.push_back(ExprParser(part, field).parse());
  return coords;
}

ModuleRep load_module(const std::string& file_or_example, const AlgebraSpec& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(file_or_example, ec)) {
    std::ifstream f(file_or_example, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot read " + file_or_example);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_module_file(ss.str());
  }
  if (auto m = make_example(file_or_example, spec)) return *m;
  std::string names;
  for (const auto& p : example_patterns()) names += (names.empty() ? "" : ", ") + p;
  throw Error(ErrorKind::InvalidArgument,
              "'" + file_or_example + "' is neither a module file nor an example name (" + names + ")");
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact pi-support and pi-cosupport of modules over elementary abelian group algebras", "pisupp"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  AlgebraOptions alg;
  std::string file, file2, out_path, point;
  bool generic = false, ideal = false;
  unsigned ext = 1, e = 2, demo_n = 2;
  VerifyOptions vo;
  std::string out_dir, replay;

  auto* check = app.add_subcommand("check", "validate a module");
  check->add_option("FILE", file, "module file or example name")->required();
  add_algebra_options(check, alg);

  auto* jordan = app.add_subcommand("jordan", "Jordan type of the module restricted along a point");
  jordan->add_option("FILE", file, "module file or example name")->required();
  jordan->add_option("--point", point, "coordinates a1,...,ar");
  jordan->add_flag("--generic", generic, "use t -> z1 + s2 z2 + ... + sr zr");
  jordan->add_option("--extension-degree", ext, "degree of the coefficient extension (generator w)");
  add_algebra_options(jordan, alg);

  auto* support = app.add_subcommand("support", "sampled support, generic verdict and support ideal");
  support->add_option("FILE", file, "module file or example name")->required();
  support->add_option("--sample-degree", e, "largest extension degree sampled")->capture_default_str();
  support->add_flag("--ideal", ideal, "also compute the support ideal");
  add_algebra_options(support, alg);

  auto* cosupport = app.add_subcommand("cosupport", "cosupport at a point, or sampled");
  cosupport->add_option("FILE", file, "module file or example name")->required();
  cosupport->add_option("--point", point, "coordinates a1,...,ar");
  cosupport->add_option("--extension-degree", ext, "degree of the coefficient extension (generator w)");
  cosupport->add_option("--sample-degree", e, "largest extension degree sampled without --point")
      ->capture_default_str();
  add_algebra_options(cosupport, alg);

  auto* tensor_cmd = app.add_subcommand("tensor", "tensor product of two modules");
  auto* hom_cmd = app.add_subcommand("hom", "Hom(A, B)");
  for (auto* c : {tensor_cmd, hom_cmd}) {
    c->add_option("A", file, "module file or example name")->required();
    c->add_option("B", file2, "module file or example name")->required();
    c->add_option("-o,--output", out_path, "output file (stdout when omitted)");
    add_algebra_options(c, alg);
  }
  auto* dual_cmd = app.add_subcommand("dual", "dual module Hom(A, k)");
  dual_cmd->add_option("A", file, "module file or example name")->required();
  dual_cmd->add_option("-o,--output", out_path, "output file (stdout when omitted)");
  add_algebra_options(dual_cmd, alg);

  auto* proj = app.add_subcommand("is-projective", "whether the module is projective");
  proj->add_option("FILE", file, "module file or example name")->required();
  add_algebra_options(proj, alg);

  auto* verify = app.add_subcommand("verify", "seeded verification suites");
  verify->add_option("--suite", vo.suite, "dade | tensor | hom | endo | flat | perturb | all")->capture_default_str();
  verify->add_option("--trials", vo.trials, "trials per suite")->capture_default_str();
  verify->add_option("--seed", vo.seed, "seed")->capture_default_str();
  verify->add_option("--p", vo.ps, "characteristics, comma separated")->delimiter(',');
  verify->add_option("--r", vo.rs, "generator counts, comma separated")->delimiter(',');
  verify->add_option("--sample-degree", vo.e_max, "largest extension degree sampled")->capture_default_str();
  verify->add_flag("!--group-only", vo.mixed_flavors, "give every generator the group flavor");
  verify->add_option("--out-dir", out_dir, "directory for counterexample bundles");
  verify->add_option("--replay", replay, "rerun the check recorded in a counterexample bundle");

  auto* demo = app.add_subcommand("demo", "worked examples");
  demo->require_subcommand(1);
  auto* klein = demo->add_subcommand("klein", "support and cosupport of the Klein four-group truncations");
  klein->add_option("--n", demo_n, "truncation size")->capture_default_str();
  klein->add_option("--sample-degree", e, "largest extension degree sampled")->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    while (!target->get_subcommands().empty()) target = target->get_subcommands().front();
    out << target->help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: usage: " << ex.what() << "\n";
    return kExitUsage;
  }

  try {
    const auto spec = [&] { return alg.spec(); };
    if (check->parsed()) return cmd_check(load_module(file, spec()), out);
    if (jordan->parsed()) return cmd_jordan(load_module(file, spec()), point, generic, ext, out);
    if (support->parsed()) return cmd_support(load_module(file, spec()), e, ideal, out);
    if (cosupport->parsed()) return cmd_cosupport(load_module(file, spec()), point, ext, e, out);
    if (tensor_cmd->parsed() || hom_cmd->parsed()) {
      const auto a = load_module(file, spec());
      const auto b = load_module(file2, spec());
      write_output(out_path, emit_module_file(tensor_cmd->parsed() ? tensor(a, b) : hom(a, b)), out);
      return kExitOk;
    }
    if (dual_cmd->parsed()) {
      write_output(out_path, emit_module_file(dual(load_module(file, spec()))), out);
      return kExitOk;
    }
    if (proj->parsed()) {
      out << (is_projective(load_module(file, spec())) ? "true" : "false") << "\n";
      return kExitOk;
    }
    if (verify->parsed()) return cmd_verify(vo, out_dir, replay, out);
    if (klein->parsed()) return cmd_demo_klein(demo_n, e, out);
  } catch (const CLI::ValidationError& ex) {
    err << "error: usage: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const Error& ex) {
    err << "error: " << ex.category() << ": " << ex.what() << "\n";
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& ex) {
    err << "error: InvalidArgument: " << ex.what() << "\n";
    return kExitInput;
  }
  err << "error: usage: no command\n";
  return kExitUsage;
}

}  // namespace pisupp
