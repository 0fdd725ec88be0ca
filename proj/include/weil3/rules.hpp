#pragma once

// Obstruction-rule registry and classifier.
//
// Each rule has a label c.n.r.i (parity class, factor count, p-rank, index),
// structural gates (parity of q, number of real-cubic factors, p-rank, plus
// free-form side conditions), and a condition on the class profile.  A rule
// "fires" when gates and condition all hold; a fired rule asserts that the
// isogeny class contains no hyperelliptic Jacobian.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "weil3/core.hpp"

namespace weil3 {

enum class ParityGate { odd, even, any };
enum class Provenance { proved, partial, observed };

std::string to_string(ParityGate g);
std::string to_string(Provenance p);

// Readings of ambiguous constants; see the rules catalog for where each
// applies.  Defaults are the literal readings of the source table.
struct RuleOptions {
  enum class Pvq { p_times_r, two_sqrt_q };
  enum class TypeEval { split_root, literal_plus };
  Pvq pvq = Pvq::p_times_r;
  TypeEval type_eval = TypeEval::split_root;
};

struct Rule {
  std::string id;
  ParityGate parity = ParityGate::any;
  std::optional<int> factors;  // nullopt = any
  std::vector<int> p_ranks;    // empty = any
  std::string other_gate;      // "" = none
  std::string condition;       // human-readable
  Provenance provenance = Provenance::observed;
  std::function<bool(const Profile&, const RuleOptions&)> gate_pred;  // side conditions only
  std::function<bool(const Profile&, const RuleOptions&)> cond_pred;
};

struct Verdict {
  std::vector<std::string> fired;  // sorted rule labels
  bool obstructed = false;
  std::optional<std::string> advisory;
};

class RuleEngine {
 public:
  explicit RuleEngine(RuleOptions opts = {});

  const std::vector<Rule>& rules() const { return rules_; }
  const RuleOptions& options() const { return opts_; }

  // True iff all gates (structural + side) pass for this rule on this profile.
  bool gates_pass(const Rule& rule, const Profile& pr) const;
  bool fires(const Rule& rule, const Profile& pr) const;

  Verdict classify(const Profile& pr) const;
  Verdict classify(const WeilCoeffs& w) const;  // throws off-locus

 private:
  RuleOptions opts_;
  std::vector<Rule> rules_;
};

// The advisory note (not a verdict): char-2 classes whose Newton polygon has
// first slope 1/3 are conjectured to contain hyperelliptic Jacobians.
std::optional<std::string> advisory_note(const Profile& pr);

}  // namespace weil3
