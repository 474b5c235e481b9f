#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sszego/rational.hpp"
#include "sszego/roots.hpp"

namespace sszego {

enum class CheckId {
  thm1,
  thm2,
  eigenvalues,
  centre_symmetry,
  roundtrip,
  unit_law,
  multiplicity,
  posroots,
  propmult,
  gegenbauer,
  narayana_recurrence,
  narayana_interlace,
  q_narayana_convergence,
  phi_convergence,
  pencil_probe,
};

std::string to_string(CheckId id);
// Throws ParseError on an unknown name.
CheckId parse_check_id(std::string_view name);
const std::vector<CheckId>& all_check_ids();

struct IndexRange {
  std::size_t lo = 0;
  std::size_t hi = 0;
  bool operator==(const IndexRange&) const = default;
};

// Test hook: replaces Q_j by Q_j + delta * x^coeff before Q-based checks.
struct Perturbation {
  std::size_t q_index = 0;
  std::size_t coeff = 0;
  Rational delta;
  bool operator==(const Perturbation&) const = default;
};

// j selects the Q index for thm1/thm2/pencil_probe/phi_convergence/
// q_narayana_convergence and m for propmult; k is the derivative order for
// gegenbauer. Unset ranges take each check's full valid range.
struct CheckSpec {
  std::string label;
  CheckId check = CheckId::thm1;
  std::size_t n_min = 3;
  std::size_t n_max = 3;
  std::optional<IndexRange> j;
  std::optional<IndexRange> k;
  std::uint64_t seed = 1;
  Rational width = default_witness_width();
  std::size_t trials = 100;
  std::size_t iterations = 40;
  std::optional<Perturbation> perturb;

  bool operator==(const CheckSpec&) const = default;
};

enum class Status { verified, refuted, degenerate, error };
std::string to_string(Status s);

struct CheckReport {
  CheckId check = CheckId::thm1;
  nlohmann::json params;  // n, j/k where applicable, label
  Status status = Status::error;
  std::vector<NamedInterval> witnesses;
  std::uint64_t seed = 0;
  double wall_ms = 0;
  nlohmann::json counterexample;  // inputs reproducing a refutation
  std::string detail;
};

// Reports come back in input order, and within a CheckSpec by increasing n then
// j/k. Exceptions inside a check become status=error reports.
std::vector<CheckReport> run_suite(std::span<const CheckSpec> specs, std::size_t threads = 1);

// 0 if every report is verified, 2 if any is an error, 1 otherwise.
int suite_exit_code(std::span<const CheckReport> reports);

nlohmann::json to_json(const CheckReport& r, bool with_timing = true);
std::string report_json(std::span<const CheckReport> reports, bool with_timing = true);

// Config: sections "[label]" followed by key = value lines; '#' starts a
// comment. Keys: check, n_min, n_max, j_min, j_max, k_min, k_max, seed, width,
// trials, iterations, perturb_q, perturb_coeff, perturb_delta.
std::vector<CheckSpec> parse_config(std::string_view text);
std::string write_config(std::span<const CheckSpec> specs);

}  // namespace sszego
