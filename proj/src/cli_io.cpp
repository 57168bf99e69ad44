#include "sgb/cli_io.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgb/error.hpp"
#include "sgb/hilbert.hpp"

namespace sgb {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// polynomial text

namespace {

enum class Tok { Num, Ident, Plus, Minus, Star, Caret, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based, in code points
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0, col = 1;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i, ++col;
      continue;
    }
    // U+2212 MINUS SIGN
    if (s.substr(i, 3) == "\xE2\x88\x92") {
      out.push_back({Tok::Minus, "-", col});
      i += 3, ++col;
      continue;
    }
    std::size_t start = i, start_col = col;
    if (std::isdigit(c)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++col;
      out.push_back({Tok::Num, std::string(s.substr(start, i - start)), start_col});
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i, ++col;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start_col});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '^': kind = Tok::Caret; break;
      default:
        throw ParseError("unexpected character '" + std::string(1, static_cast<char>(c)) + "'",
                         1, col);
    }
    out.push_back({kind, std::string(1, static_cast<char>(c)), col});
    ++i, ++col;
  }
  out.push_back({Tok::End, "", col});
  return out;
}

class PolyParser {
 public:
  PolyParser(std::string_view text, const PrimeField& field,
             const std::vector<std::string>& vars)
      : toks_(lex(text)), field_(field), vars_(vars) {}

  Polynomial parse() {
    std::vector<Term> terms;
    bool negative = false;
    if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      negative = next().kind == Tok::Minus;
    }
    for (;;) {
      Term t = term();
      if (negative) t.coeff = field_.neg(t.coeff);
      terms.push_back(std::move(t));
      if (peek().kind == Tok::End) break;
      if (peek().kind != Tok::Plus && peek().kind != Tok::Minus) fail("expected '+' or '-'");
      negative = next().kind == Tok::Minus;
    }
    return Polynomial::from_terms(field_, vars_.size(), std::move(terms));
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(what + ", found " + found, 1, t.column);
  }

  Term term() {
    std::uint32_t coeff = 1;
    if (peek().kind == Tok::Num) {
      coeff = reduce_decimal(next().text);
      if (peek().kind != Tok::Star) return {Monomial(vars_.size()), coeff};
      next();
      if (peek().kind != Tok::Ident) fail("expected a variable after '*'");
    } else if (peek().kind != Tok::Ident) {
      fail("expected a coefficient or variable");
    }
    std::vector<std::uint32_t> exps(vars_.size(), 0);
    for (;;) {
      const Token& id = next();
      auto it = std::find(vars_.begin(), vars_.end(), id.text);
      if (it == vars_.end())
        throw Error(ErrorKind::UnknownVariable, "unknown variable '" + id.text + "' at column " +
                                                    std::to_string(id.column));
      std::uint64_t e = 1;
      if (peek().kind == Tok::Caret) {
        next();
        if (peek().kind != Tok::Num) fail("expected an exponent");
        const Token& num = next();
        if (num.text.size() > 9) throw ParseError("exponent too large", 1, num.column);
        e = std::stoull(num.text);
      }
      std::size_t v = static_cast<std::size_t>(it - vars_.begin());
      std::uint64_t total = exps[v] + e;
      if (total > (1u << 20)) throw ParseError("exponent too large", 1, id.column);
      exps[v] = static_cast<std::uint32_t>(total);
      if (peek().kind != Tok::Star) break;
      next();
      if (peek().kind != Tok::Ident) fail("expected a variable after '*'");
    }
    return {Monomial(std::move(exps)), coeff};
  }

  std::uint32_t reduce_decimal(const std::string& digits) const {
    std::uint64_t r = 0;
    for (char ch : digits) r = (r * 10 + static_cast<std::uint64_t>(ch - '0')) % field_.modulus();
    return static_cast<std::uint32_t>(r);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  PrimeField field_;
  const std::vector<std::string>& vars_;
};

bool valid_var_name(const std::string& s) {
  if (s == "y") return true;
  if (s.size() < 2 || s[0] != 'x') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const PrimeField& field,
                            const std::vector<std::string>& vars) {
  return PolyParser(text, field, vars).parse();
}

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& vars) {
  if (p.nvars() != vars.size())
    throw Error(ErrorKind::DimensionMismatch, "variable names do not match the ring");
  if (p.is_zero()) return "0";
  std::string out;
  for (const Term& t : p.terms()) {
    if (!out.empty()) out += " + ";
    const Monomial& m = t.monomial;
    if (m.is_one()) {
      out += std::to_string(t.coeff);
      continue;
    }
    if (t.coeff != 1) out += std::to_string(t.coeff) + "*";
    bool first = true;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m[i] == 0) continue;
      if (!first) out += "*";
      first = false;
      out += vars[i];
      if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
  }
  return out;
}

std::vector<std::string> default_vars(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

// ---------------------------------------------------------------------------
// system files

namespace {

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line, col = 1;
    } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void header_error(const std::string& what) { throw ParseError(what, 1, 1); }

}  // namespace

SystemFile parse_system(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("malformed JSON document", line, col);
  }
  if (!doc.is_object()) header_error("system file must be a JSON object");
  if (!doc.contains("field") || !doc["field"].is_object() || !doc["field"].contains("char"))
    header_error("missing field.char");
  const Json& ch = doc["field"]["char"];
  if (!ch.is_number_integer()) header_error("field.char must be an integer");
  if (ch.is_number_unsigned() ? ch.get<std::uint64_t>() >= (1ull << 31) : ch.get<std::int64_t>() < 2)
    throw Error(ErrorKind::BadModulus, "field characteristic out of range: " + ch.dump());
  PrimeField field(static_cast<std::uint32_t>(ch.get<std::int64_t>()));

  if (!doc.contains("vars") || !doc["vars"].is_array()) header_error("missing vars array");
  std::vector<std::string> vars;
  for (const Json& v : doc["vars"]) {
    if (!v.is_string()) header_error("vars entries must be strings");
    std::string name = v.get<std::string>();
    if (!valid_var_name(name)) header_error("invalid variable name '" + name + "'");
    if (std::find(vars.begin(), vars.end(), name) != vars.end())
      header_error("duplicate variable '" + name + "'");
    vars.push_back(name);
  }
  if (vars.empty()) header_error("vars must not be empty");

  if (!doc.contains("polys") || !doc["polys"].is_array()) header_error("missing polys array");
  std::vector<Polynomial> polys;
  std::size_t index = 0;
  for (const Json& p : doc["polys"]) {
    ++index;
    if (!p.is_string()) header_error("polys entries must be strings");
    try {
      polys.push_back(parse_polynomial(p.get<std::string>(), field, vars));
    } catch (const ParseError& e) {
      // line = entry of polys, column = position within the string
      throw ParseError("polys[" + std::to_string(index - 1) + "]: " + e.what(), index,
                       e.column());
    }
  }

  SystemFile file{PolySystem(field, vars.size(), std::move(polys)), vars, ""};
  if (doc.contains("meta")) {
    if (!doc["meta"].is_object()) header_error("meta must be an object");
    file.meta_json = doc["meta"].dump();
  }
  return file;
}

std::string serialize_system(const SystemFile& file) {
  Json doc;
  doc["field"]["char"] = file.system.field().modulus();
  doc["vars"] = file.vars;
  Json polys = Json::array();
  for (const auto& p : file.system.polys()) polys.push_back(format_polynomial(p, file.vars));
  doc["polys"] = polys;
  if (!file.meta_json.empty()) doc["meta"] = Json::parse(file.meta_json);
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// reports

namespace {

Json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

Json int_poly_json(const IntPoly& p) {
  Json a = Json::array();
  for (const auto& c : p) a.push_back(big_json(c));
  return a;
}

template <class T>
Json opt_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string ext_str(const ExtFloat& x) { return x.str(30, std::ios_base::scientific); }

std::string omega_str(double omega) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, omega);
  return std::string(buf, res.ptr);
}

Json basis_json(const std::vector<Polynomial>& elements, const std::vector<std::string>& vars) {
  Json a = Json::array();
  for (const auto& g : elements) a.push_back(format_polynomial(g, vars));
  return a;
}

Json certification_json(const CertificationReport& c) {
  Json j;
  j["d_checked"] = c.d_checked;
  j["d_regular"] = c.is_d_regular;
  j["cryptographic"] = opt_json(c.cryptographic);
  j["generalized"] = opt_json(c.generalized);
  j["first_defect_degree"] = opt_json(c.first_defect_degree);
  j["lex_dominates"] = c.lex_dominates;
  return j;
}

Json monomial_json(const Monomial& m, const std::vector<std::string>& vars) {
  return format_polynomial(Polynomial::monomial(PrimeField(2), m), vars);
}

}  // namespace

std::string gb_report_json(const GroebnerBasis& gb, const std::vector<std::string>& vars,
                           const std::string& engine) {
  Json j;
  j["engine"] = engine;
  j["degree_cap"] = opt_json(gb.degree_cap);
  j["complete"] = gb.complete() || satisfies_buchberger_criterion(gb.elements);
  if (gb.elements.empty()) {
    j["max_gb_deg"] = nullptr;
  } else {
    j["max_gb_deg"] = max_gb_deg(gb).value;
  }
  j["size"] = gb.elements.size();
  j["basis"] = basis_json(gb.elements, vars);
  return j.dump(2) + "\n";
}

std::string analyze_report_json(const PolySystem& system, const std::vector<std::string>& vars) {
  auto ih = exact_hilbert_of_ideal(system);
  const auto& prof = ih.profile;
  auto degrees = system.degrees();
  Json j;
  j["n"] = system.nvars();
  j["m"] = system.size();
  j["degrees"] = degrees;
  j["krull_dim"] = prof.krull_dim;
  j["hilbert_numerator"] = int_poly_json(prof.numerator);
  j["h_poly"] = int_poly_json(prof.h_poly);
  j["hilb"] = prof.hilb;
  j["d_reg"] = opt_json(prof.d_reg);
  j["gen_d_reg"] = opt_json(prof.gen_d_reg);
  j["hp_constant"] = prof.hp_constant ? big_json(*prof.hp_constant) : Json(nullptr);
  j["semiregular"] = certification_json(certify_semiregular(prof, system.nvars(), degrees));
  j["regular_sequence"] =
      system.size() <= system.nvars() &&
      prof.krull_dim == static_cast<int>(system.nvars() - system.size());
  j["noether_position"] = check_noether_position(ih.leading, prof.krull_dim);
  j["weakly_revlex"] = check_weakly_revlex(ih.leading);
  Json lm = Json::array();
  for (const auto& g : ih.leading.generators()) lm.push_back(monomial_json(g, vars));
  j["leading_ideal"] = lm;
  j["basis"] = basis_json(ih.basis.elements, vars);
  return j.dump(2) + "\n";
}

std::string bound_report_json(const BoundReport& r) {
  Json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["degrees"] = r.degrees;
  j["D_nm"] = opt_json(r.D_nm);
  j["lazard"] = r.lazard;
  j["D_used"] = r.D_used;
  j["omega"] = omega_str(r.omega);
  j["cost_new"] = ext_str(r.cost_new);
  j["cost_classic"] = ext_str(r.cost_classic);
  return j.dump(2) + "\n";
}

std::string theorem_report_json(const TheoremReport& r, const std::vector<std::string>& vars) {
  Json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["degrees"] = r.degrees;
  j["krull_dim"] = r.krull_dim;
  j["ell_found"] = r.ell_found;
  if (r.position) {
    const auto& pos = *r.position;
    Json p;
    p["ell"] = format_polynomial(pos.ell, vars);
    p["pivot"] = vars[pos.pivot];
    p["attempts_used"] = pos.attempts_used;
    Json rows = Json::array();
    for (std::size_t i = 0; i < pos.sigma.size(); ++i) {
      Json row = Json::array();
      for (std::size_t k = 0; k < pos.sigma.size(); ++k) row.push_back(pos.sigma(i, k));
      rows.push_back(row);
    }
    p["sigma"] = rows;
    p["note"] = pos.sigma.note();
    j["position"] = p;
  } else {
    j["position"] = nullptr;
  }
  j["d_reg_ell"] = r.d_reg_ell;
  j["gen_d_reg"] = r.gen_d_reg;
  j["max_gb_deg_sigma"] = r.max_gb_deg_sigma;
  j["engine"] = r.engine;
  j["D_nm"] = opt_json(r.D_nm);
  j["lazard"] = r.lazard;
  j["ineq_maxGB"] = r.ineq_maxGB;
  j["ineq_Dnm"] = opt_json(r.ineq_Dnm);
  j["weakly_revlex"] = r.weakly_revlex;
  j["artinian_sigma"] = r.artinian_sigma;
  j["equality_attained"] = opt_json(r.equality_attained);
  j["m_minus_one_law"] = opt_json(r.m_minus_one_law);
  j["hilbert_invariant"] = r.hilbert_invariant;
  j["hypotheses_hold"] = r.hypotheses_hold();
  j["semiregular"] = certification_json(r.semiregular);
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// experiments

bool ExperimentRecord::hypotheses_hold() const {
  return status == "ok" && r && *r <= 1 && generalized == true && engine != "capped";
}

std::size_t worker_count() {
  if (const char* env = std::getenv("SGB_THREADS")) {
    std::size_t v = 0;
    std::string_view s(env);
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec == std::errc() && res.ptr == s.data() + s.size() && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

ExperimentRecord run_trial(const ExperimentParams& params, std::size_t index) {
  ExperimentRecord rec;
  rec.trial = index;
  rec.seed = child_seed(params.seed, index);
  rec.n = params.n;
  rec.m = params.degrees.size();
  rec.degrees = params.degrees;
  rec.q = params.q;
  rec.construction = params.construction == Construction::Z ? "Z" : "generic";
  const int n = static_cast<int>(rec.n), m = static_cast<int>(rec.m);
  rec.lazard = lazard_bound(n, m, params.degrees);
  if (m >= n - 1) rec.D_nm = degree_bound_Dnm(n, m, params.degrees);

  auto start = std::chrono::steady_clock::now();
  try {
    PrimeField field(params.q);
    PolySystem sys = params.construction == Construction::Z
                         ? sample_Z_system(params.n, params.degrees, field, rec.seed)
                         : sample_system(params.n, params.degrees, field, rec.seed);
    VerifyOptions opts;
    opts.engine = params.engine;
    opts.attempts = params.attempts;
    opts.budget = params.budget;
    opts.cap = params.cap;
    try {
      TheoremReport rep = verify_main_theorem(sys, rec.seed, opts);
      rec.status = "ok";
      rec.r = rep.krull_dim;
      rec.d_reg_ell = rep.d_reg_ell;
      rec.gen_d_reg = rep.gen_d_reg;
      rec.max_gb_deg = rep.max_gb_deg_sigma;
      rec.cryptographic = rep.semiregular.cryptographic;
      rec.generalized = rep.semiregular.generalized;
      rec.weakly_revlex = rep.weakly_revlex;
      rec.artinian_sigma = rep.artinian_sigma;
      rec.ineq_maxGB = rep.ineq_maxGB;
      rec.ineq_Dnm = rep.ineq_Dnm;
      rec.equality_attained = rep.equality_attained;
      rec.engine = rep.engine;
    } catch (const Error& e) {
      rec.status = std::string(to_string(e.kind()));
      // keep whatever the ideal itself still tells us
      if (e.kind() == ErrorKind::DimensionTooHigh || e.kind() == ErrorKind::SearchExhausted) {
        auto ih = exact_hilbert_of_ideal(sys);
        rec.r = ih.profile.krull_dim;
        auto cert = certify_semiregular(ih.profile, rec.n, rec.degrees);
        rec.cryptographic = cert.cryptographic;
        rec.generalized = cert.generalized;
      }
    }
  } catch (const Error& e) {
    rec.status = std::string(to_string(e.kind()));
  } catch (const std::exception&) {
    rec.status = "InternalError";
  }
  if (params.timing) {
    rec.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
  }
  return rec;
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentParams& params,
                                             std::size_t workers) {
  if (params.trials == 0) throw Error(ErrorKind::InvalidArgument, "trials must be positive");
  if (params.degrees.empty()) throw Error(ErrorKind::InvalidArgument, "no degrees given");
  if (params.n == 0) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  for (int d : params.degrees)
    if (d < 1) throw Error(ErrorKind::InvalidDegree, "degrees must be positive");
  if (params.construction == Construction::Z && params.n < 2)
    throw Error(ErrorKind::InvalidArgument, "the Z construction needs n >= 2");
  PrimeField check(params.q);  // BadModulus early, not per trial
  (void)check;

  if (workers == 0) workers = worker_count();
  workers = std::min(workers, params.trials);
  std::vector<ExperimentRecord> out(params.trials);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < params.trials;) out[i] = run_trial(params, i);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return out;
}

namespace {

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "trial",         "seed",          "n",           "m",           "degrees",
      "q",             "construction",  "status",      "r",           "d_reg_ell",
      "gen_d_reg",     "max_gb_deg",    "D_nm",        "lazard",      "cryptographic",
      "generalized",   "weakly_revlex", "artinian_sigma", "ineq_maxGB", "ineq_Dnm",
      "equality_attained", "engine",    "elapsed_ms"};
  return cols;
}

std::string na_or(const std::optional<int>& v) { return v ? std::to_string(*v) : "NA"; }
std::string na_or(const std::optional<bool>& v) { return v ? (*v ? "true" : "false") : "NA"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty()) throw ParseError("stray quote in CSV field", line, 1);
      quoted = any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\r') {
      continue;
    } else if (c == '\n') {
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
      ++line;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field", line, 1);
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
T parse_number(const std::string& s, std::size_t line, std::size_t col) {
  T v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError("bad number '" + s + "'", line, col);
  return v;
}

std::optional<int> parse_opt_int(const std::string& s, std::size_t line, std::size_t col) {
  if (s == "NA") return std::nullopt;
  return parse_number<int>(s, line, col);
}

std::optional<bool> parse_opt_bool(const std::string& s, std::size_t line, std::size_t col) {
  if (s == "NA") return std::nullopt;
  if (s == "true") return true;
  if (s == "false") return false;
  throw ParseError("bad boolean '" + s + "'", line, col);
}

}  // namespace

std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) out += (out.empty() ? "" : ",") + c;
  return out;
}

std::string to_csv_row(const ExperimentRecord& r) {
  std::string deg;
  for (int d : r.degrees) deg += (deg.empty() ? "" : ",") + std::to_string(d);
  std::string elapsed = "NA";
  if (r.elapsed_ms) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << *r.elapsed_ms;
    elapsed = os.str();
  }
  std::vector<std::string> f = {std::to_string(r.trial),
                                std::to_string(r.seed),
                                std::to_string(r.n),
                                std::to_string(r.m),
                                "\"" + deg + "\"",
                                std::to_string(r.q),
                                csv_field(r.construction),
                                csv_field(r.status),
                                na_or(r.r),
                                na_or(r.d_reg_ell),
                                na_or(r.gen_d_reg),
                                na_or(r.max_gb_deg),
                                na_or(r.D_nm),
                                na_or(r.lazard),
                                na_or(r.cryptographic),
                                na_or(r.generalized),
                                na_or(r.weakly_revlex),
                                na_or(r.artinian_sigma),
                                na_or(r.ineq_maxGB),
                                na_or(r.ineq_Dnm),
                                na_or(r.equality_attained),
                                r.engine.empty() ? "NA" : csv_field(r.engine),
                                elapsed};
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + f[i];
  return out;
}

std::string to_csv(const std::vector<ExperimentRecord>& records) {
  std::string out = csv_header() + "\n";
  for (const auto& r : records) out += to_csv_row(r) + "\n";
  return out;
}

std::vector<ExperimentRecord> parse_csv(std::string_view text) {
  auto rows = split_csv(text);
  if (rows.empty()) throw ParseError("empty CSV", 1, 1);
  if (rows[0] != csv_columns()) throw ParseError("unexpected CSV header", 1, 1);
  const std::size_t width = csv_columns().size();
  std::vector<ExperimentRecord> out;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto& f = rows[k];
    std::size_t line = k + 1;
    if (f.size() != width)
      throw ParseError("expected " + std::to_string(width) + " fields, got " +
                           std::to_string(f.size()),
                       line, 1);
    ExperimentRecord r;
    r.trial = parse_number<std::size_t>(f[0], line, 1);
    r.seed = parse_number<std::uint64_t>(f[1], line, 2);
    r.n = parse_number<std::size_t>(f[2], line, 3);
    r.m = parse_number<std::size_t>(f[3], line, 4);
    std::string_view deg = f[4];
    while (!deg.empty()) {
      auto comma = deg.find(',');
      std::string piece(deg.substr(0, comma));
      r.degrees.push_back(parse_number<int>(piece, line, 5));
      if (comma == std::string_view::npos) break;
      deg.remove_prefix(comma + 1);
    }
    r.q = parse_number<std::uint32_t>(f[5], line, 6);
    r.construction = f[6];
    r.status = f[7];
    r.r = parse_opt_int(f[8], line, 9);
    r.d_reg_ell = parse_opt_int(f[9], line, 10);
    r.gen_d_reg = parse_opt_int(f[10], line, 11);
    r.max_gb_deg = parse_opt_int(f[11], line, 12);
    r.D_nm = parse_opt_int(f[12], line, 13);
    r.lazard = parse_opt_int(f[13], line, 14);
    r.cryptographic = parse_opt_bool(f[14], line, 15);
    r.generalized = parse_opt_bool(f[15], line, 16);
    r.weakly_revlex = parse_opt_bool(f[16], line, 17);
    r.artinian_sigma = parse_opt_bool(f[17], line, 18);
    r.ineq_maxGB = parse_opt_bool(f[18], line, 19);
    r.ineq_Dnm = parse_opt_bool(f[19], line, 20);
    r.equality_attained = parse_opt_bool(f[20], line, 21);
    r.engine = f[21] == "NA" ? "" : f[21];
    if (f[22] != "NA") r.elapsed_ms = std::stod(f[22]);
    out.push_back(std::move(r));
  }
  return out;
}

ExperimentSummary summarize(const std::vector<ExperimentRecord>& records) {
  ExperimentSummary s;
  std::map<int, std::size_t> gaps;
  for (const auto& r : records) {
    ++s.trials;
    if (r.status == "ok") ++s.ok;
    if (r.cryptographic) {
      ++s.cryptographic_applicable;
      if (*r.cryptographic) ++s.cryptographic_true;
    }
    if (r.generalized) {
      ++s.generalized_applicable;
      if (*r.generalized) ++s.generalized_true;
    }
    if (r.engine == "capped") ++s.capped;
    if (r.hypotheses_hold()) {
      ++s.hypothesis_rows;
      if (r.ineq_maxGB == false) ++s.maxgb_violations;
      if (r.ineq_Dnm == false) ++s.dnm_violations;
    }
    if (r.equality_attained) {
      ++s.equality_applicable;
      if (*r.equality_attained) ++s.equality_true;
    }
    if (r.status == "ok" && r.D_nm && r.max_gb_deg) ++gaps[*r.D_nm - *r.max_gb_deg];
  }
  s.tightness.assign(gaps.begin(), gaps.end());
  return s;
}

std::string format_summary(const ExperimentSummary& s) {
  auto frac = [](std::size_t a, std::size_t b) {
    std::ostringstream os;
    os << a << "/" << b << " (";
    if (b == 0) {
      os << "NA";
    } else {
      os << std::fixed << std::setprecision(4) << static_cast<double>(a) / static_cast<double>(b);
    }
    os << ")";
    return os.str();
  };
  std::ostringstream os;
  os << "summary: trials=" << s.trials << " ok=" << s.ok
     << " cryptographic=" << frac(s.cryptographic_true, s.cryptographic_applicable)
     << " generalized=" << frac(s.generalized_true, s.generalized_applicable)
     << " hypothesis_rows=" << s.hypothesis_rows << " ineq_maxGB_violations=" << s.maxgb_violations
     << " ineq_Dnm_violations=" << s.dnm_violations
     << " equality=" << frac(s.equality_true, s.equality_applicable) << " capped=" << s.capped
     << " tightness=";
  if (s.tightness.empty()) os << "NA";
  for (std::size_t i = 0; i < s.tightness.size(); ++i)
    os << (i ? "," : "") << s.tightness[i].first << ":" << s.tightness[i].second;
  return os.str();
}

// ---------------------------------------------------------------------------
// command dispatch

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + out_path);
  f << text;
}

void report_error(const Error& e, std::ostream& out, std::ostream& err) {
  Json j;
  j["error"]["kind"] = std::string(to_string(e.kind()));
  j["error"]["message"] = e.what();
  if (auto* pe = dynamic_cast<const ParseError*>(&e)) {
    j["error"]["line"] = pe->line();
    j["error"]["column"] = pe->column();
  }
  out << j.dump() << "\n";
  err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Groebner bases, Hilbert series and degree bounds over prime fields", "sgb"};
  app.require_subcommand(1, 1);

  std::uint64_t seed = 0;
  double omega = kDefaultOmega;
  std::string engine_name;
  std::optional<int> cap;
  std::size_t attempts = kDefaultAttempts;
  std::size_t trials = 10;
  std::string construction = "generic";
  std::string out_path;
  bool timing = false;

  app.add_option("--seed", seed, "Master seed for randomized paths");
  app.add_option("--omega", omega, "Linear-algebra exponent for cost estimates");
  app.add_option("--engine", engine_name, "Groebner engine")
      ->check(CLI::IsMember({"macaulay", "buchberger"}));
  app.add_option("--cap", cap, "Macaulay degree cap")->check(CLI::PositiveNumber);
  app.add_option("--attempts", attempts, "Random linear-form attempts");
  app.add_option("--trials", trials, "Experiment trials")->check(CLI::PositiveNumber);
  app.add_option("--construction", construction, "Sampler for experiments")
      ->check(CLI::IsMember({"generic", "Z"}));
  app.add_option("--out", out_path, "Write the result to this file");
  app.add_flag("--timing", timing, "Record wall-clock time per experiment trial");

  std::string file;
  auto add_file_cmd = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("file", file, "System file (JSON)")->required()->check(CLI::ExistingFile);
    return sub;
  };
  auto* gb_cmd = add_file_cmd("gb", "Reduced Groebner basis");
  auto* analyze_cmd = add_file_cmd("analyze", "Hilbert data and semi-regularity");
  auto* verify_cmd = add_file_cmd("verify", "Check the degree-bound chain on one system");
  auto* homog_cmd = add_file_cmd("homogenize", "Homogenize with an extra variable y");

  int n = 0;
  std::optional<int> m;
  std::vector<int> degrees;
  std::uint32_t q = 31;
  auto* bound_cmd = app.add_subcommand("bound", "Degree bounds and cost estimates");
  bound_cmd->fallthrough();
  auto* exp_cmd = app.add_subcommand("experiment", "Seeded Monte Carlo batch as CSV");
  exp_cmd->fallthrough();
  for (auto* sub : {bound_cmd, exp_cmd}) {
    sub->add_option("-n", n, "Number of variables")->required()->check(CLI::PositiveNumber);
    sub->add_option("-m", m, "Number of polynomials (must match -d)");
    sub->add_option("-d", degrees, "Degrees, comma separated")->required()->delimiter(',');
  }
  exp_cmd->add_option("-q", q, "Field characteristic");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    if (m && static_cast<std::size_t>(*m) != degrees.size())
      throw CLI::ValidationError("-m", "-m does not match the number of degrees");
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run 'sgb --help' for usage\n";
    return 2;
  }

  try {
    if (*gb_cmd) {
      SystemFile sf = parse_system(read_file(file));
      std::string eng = engine_name.empty() ? "macaulay" : engine_name;
      GroebnerBasis gb;
      if (eng == "buchberger") {
        gb = buchberger(sf.system);
      } else {
        int d = 0;
        if (cap) {
          d = *cap;
        } else {
          auto deg = sf.system.degrees();
          d = lazard_bound(static_cast<int>(sf.system.nvars()), static_cast<int>(deg.size()), deg);
          err << "warning: no --cap given; using the Lazard bound " << d
              << ", the result is capped at that degree\n";
        }
        gb = gb_up_to(sf.system, d);
      }
      emit(gb_report_json(gb, sf.vars, eng), out_path, out);
    } else if (*analyze_cmd) {
      SystemFile sf = parse_system(read_file(file));
      emit(analyze_report_json(sf.system, sf.vars), out_path, out);
    } else if (*verify_cmd) {
      SystemFile sf = parse_system(read_file(file));
      VerifyOptions opts;
      opts.engine = engine_name == "macaulay" ? EngineKind::Macaulay : EngineKind::Buchberger;
      opts.attempts = attempts;
      opts.cap = cap;
      emit(theorem_report_json(verify_main_theorem(sf.system, seed, opts), sf.vars), out_path,
           out);
    } else if (*homog_cmd) {
      SystemFile sf = parse_system(read_file(file));
      if (std::find(sf.vars.begin(), sf.vars.end(), "y") != sf.vars.end())
        throw Error(ErrorKind::InvalidArgument, "variable y is already in use");
      std::vector<Polynomial> hs;
      for (const auto& f : sf.system.polys()) hs.push_back(homogenize(f));
      auto vars = sf.vars;
      vars.push_back("y");
      SystemFile res{PolySystem(sf.system.field(), vars.size(), std::move(hs)), vars,
                     sf.meta_json};
      emit(serialize_system(res), out_path, out);
    } else if (*bound_cmd) {
      emit(bound_report_json(bound_report(n, degrees, omega)), out_path, out);
    } else if (*exp_cmd) {
      ExperimentParams p;
      p.n = static_cast<std::size_t>(n);
      p.degrees = degrees;
      p.q = q;
      p.construction = construction == "Z" ? Construction::Z : Construction::Generic;
      p.trials = trials;
      p.seed = seed;
      p.engine = engine_name == "macaulay" ? EngineKind::Macaulay : EngineKind::Buchberger;
      p.attempts = attempts;
      p.cap = cap;
      p.timing = timing;
      auto records = run_experiment(p);
      emit(to_csv(records), out_path, out);
      err << format_summary(summarize(records)) << "\n";
    }
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    report_error(e, out, err);
    return 1;
  } catch (const std::exception& e) {
    Json j;
    j["error"]["kind"] = "InternalError";
    j["error"]["message"] = e.what();
    out << j.dump() << "\n";
    err << "error: InternalError: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace sgb
