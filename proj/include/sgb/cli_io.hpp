#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sgb/analysis.hpp"
#include "sgb/engine.hpp"
#include "sgb/polynomial.hpp"
#include "sgb/series.hpp"

namespace sgb {

/// Parses one polynomial over `vars`. Terms are joined by '+' or '-'
/// (ASCII or U+2212), coefficients are decimal integers reduced mod p,
/// products use '*', powers '^'. Throws ParseError or UnknownVariable.
Polynomial parse_polynomial(std::string_view text, const PrimeField& field,
                            const std::vector<std::string>& vars);

/// Canonical text: DRL-descending terms joined by " + ", residues in
/// [0, p), unit coefficients omitted, explicit '*'; "0" for zero.
std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& vars);

/// Default names x1..xn.
std::vector<std::string> default_vars(std::size_t n);

struct SystemFile {
  PolySystem system;
  std::vector<std::string> vars;
  std::string meta_json;  // compact JSON object, empty when absent
};

/// JSON document with field.char, vars, polys and optional meta.
/// Throws ParseError, UnknownVariable or BadModulus.
SystemFile parse_system(std::string_view text);
std::string serialize_system(const SystemFile& file);

std::string gb_report_json(const GroebnerBasis& gb, const std::vector<std::string>& vars,
                           const std::string& engine);
std::string analyze_report_json(const PolySystem& system, const std::vector<std::string>& vars);
std::string bound_report_json(const BoundReport& report);
std::string theorem_report_json(const TheoremReport& report,
                                const std::vector<std::string>& vars);

enum class Construction { Generic, Z };

struct ExperimentParams {
  std::size_t n = 2;
  std::vector<int> degrees;
  std::uint32_t q = 31;
  Construction construction = Construction::Generic;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  EngineKind engine = EngineKind::Buchberger;
  std::size_t attempts = kDefaultAttempts;
  std::optional<int> cap;
  /// Buchberger reductions per trial before falling back to Macaulay.
  std::size_t budget = 200000;
  bool timing = false;
};

struct ExperimentRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<int> degrees;
  std::uint32_t q = 0;
  std::string construction;
  std::string status;  // "ok" or the error kind
  std::optional<int> r;
  std::optional<int> d_reg_ell;
  std::optional<int> gen_d_reg;
  std::optional<int> max_gb_deg;
  std::optional<int> D_nm;
  std::optional<int> lazard;
  std::optional<bool> cryptographic;
  std::optional<bool> generalized;
  std::optional<bool> weakly_revlex;
  std::optional<bool> artinian_sigma;
  std::optional<bool> ineq_maxGB;
  std::optional<bool> ineq_Dnm;
  std::optional<bool> equality_attained;
  std::string engine;  // empty when no basis was computed
  std::optional<double> elapsed_ms;

  /// r <= 1, generalized semi-regular certified and an uncapped engine.
  bool hypotheses_hold() const;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

/// Worker count from SGB_THREADS, else the hardware concurrency.
std::size_t worker_count();

/// One record per trial, in trial order, independent of the worker count.
std::vector<ExperimentRecord> run_experiment(const ExperimentParams& params,
                                             std::size_t workers = 0);

std::string csv_header();
std::string to_csv_row(const ExperimentRecord& record);
std::string to_csv(const std::vector<ExperimentRecord>& records);
/// Inverse of to_csv; throws ParseError on a foreign header or bad row.
std::vector<ExperimentRecord> parse_csv(std::string_view text);

struct ExperimentSummary {
  std::size_t trials = 0;
  std::size_t ok = 0;
  std::size_t cryptographic_true = 0;
  std::size_t cryptographic_applicable = 0;
  std::size_t generalized_true = 0;
  std::size_t generalized_applicable = 0;
  std::size_t hypothesis_rows = 0;
  std::size_t maxgb_violations = 0;
  std::size_t dnm_violations = 0;
  std::size_t equality_true = 0;
  std::size_t equality_applicable = 0;
  std::size_t capped = 0;
  /// D_nm - max_gb_deg over ok rows with both defined: (gap, count), gap ascending.
  std::vector<std::pair<int, std::size_t>> tightness;
};

ExperimentSummary summarize(const std::vector<ExperimentRecord>& records);
std::string format_summary(const ExperimentSummary& summary);

/// Dispatches `sgb <subcommand> ...` (args exclude the program name).
/// Returns 0 on success, 1 on a domain error, 2 on a usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sgb
