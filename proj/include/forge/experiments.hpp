#pragma once

#include "forge/addcomb.hpp"
#include "forge/antifield.hpp"
#include "forge/incidence.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace forge {

struct FamilyMember {
  std::uint32_t b = 0;
  std::uint32_t c = 0;  // (b - b1) / (b2 - b)
  ElemSet A1, A2;
  BsgResult bsg;
  std::size_t triples = 0;  // colinear triples with p3 on the row y = b
};

struct BsgFamily {
  std::uint32_t b1 = 0, b2 = 0;
  std::size_t pair_triples = 0;
  ElemSet X1, X2;                   // rows y = b1 and y = b2
  std::vector<std::uint32_t> Bprime;
  std::vector<FamilyMember> members;  // the final C, sorted by c
  ElemSet C;
  std::uint32_t c_star = 0;
  std::size_t star = 0;  // index of c_star in members
  std::vector<std::size_t> inter1, inter2;  // |A_c^i cap A_*^i| per member
  Rational lambda;
  bool antifield_ok = true;

  const FamilyMember& starred() const { return members[star]; }
};

/// Claim-1 extraction from a grid instance. Throws "degenerate instance"
/// when no pair of rows carries colinear triples or no third row does.
BsgFamily claim1_extract(const GridInstance& grid, const Rational& lambda);

struct AuditRow {
  std::string name;
  std::uint32_t c = 0;
  Rational measured;
  Rational formula;  // the bound's right side in |A|, |B|, T
  Rational ratio;    // measured / formula
  std::string note;
};

struct CaseFinding {
  std::string tag;  // mult-open | add-open | field
  PivotWitness pivot;
  std::optional<Envelope> envelope;
  bool sqrt_bound = false;  // |Z|^2 <= |R(Z)|
  bool asserted = false;
  bool holds = true;
  std::size_t z_size = 0;
};

CaseFinding case_split_audit(const ElemSet& Z, const Rational& lambda, bool tied_to_antifield = false);

struct AuditReport {
  std::string scenario;
  std::uint32_t p = 0;
  unsigned k = 0;
  std::size_t n = 0;
  Rational lambda;
  std::uint64_t I = 0;
  BigInt I3;
  Rational ratio_I_n32;  // (I / n^(3/2))^2
  double ratio_theorem = 0;  // I / n^(3/2 - 1/12838)
  bool antifield_ok = false;
  bool strong_ok = false;
  std::string case_tag;
  std::optional<std::size_t> gamma;
  std::optional<std::uint64_t> seed;
  long long millis = 0;
  BigInt T;  // I_3(P*, L(P*))
  std::size_t size_a = 0, size_b = 0;
  std::optional<GridReport> grid;
  std::vector<AuditRow> rows;
  std::vector<std::pair<std::string, std::string>> stage_errors;
  std::vector<std::string> notes;
};

void sumset_chain_audit(const BsgFamily& family, AuditReport& report);

struct GammaAudit {
  std::size_t gamma = 0;
  Rational formula;
  std::vector<std::uint32_t> empty_intersections;  // c values
};

GammaAudit gamma_cover_audit(const BsgFamily& family, std::uint64_t seed, std::size_t samples = 8,
                             std::size_t size_a = 0, std::size_t size_b = 0, const BigInt& T = 0);

enum class LambdaPolicy { explicit_value, threshold };

struct ScenarioConfig {
  std::string scenario = "subplane";  // subplane | corollary-p2 | corollary-p4 | random
  std::uint32_t p = 3;
  unsigned k = 2;          // random scenario only
  std::size_t n = 0;       // random scenario only
  std::vector<std::uint32_t> J;
  std::vector<std::size_t> caps;
  std::optional<std::uint64_t> seed;
  LambdaPolicy lambda_policy = LambdaPolicy::threshold;
  Rational lambda{0};
  std::optional<Rational> gamma;  // threshold policy multiplier, default 1
  PipelineConfig pipeline;
};

/// Builds (P, L) for a scenario: L is the |P| richest lines of L(P).
std::pair<std::vector<Point>, std::vector<Line>> build_scenario(const ScenarioConfig& cfg);

/// Runs every stage and collects the measurements. Build failures (bad
/// parameters, fewer than two points) throw; later stage failures are
/// recorded in stage_errors.
AuditReport theorem_audit(const ScenarioConfig& cfg);

/// 1/2 - 1299/12838 == 2560/6419.
bool threshold_identity_holds();

}  // namespace forge
