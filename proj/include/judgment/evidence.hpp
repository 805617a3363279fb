#pragma once

#include <utility>
#include <vector>

#include "judgment/circumstance.hpp"
#include "judgment/info.hpp"

namespace judgment {

/// log2 of x/y for probabilities, with the infinite cases spelled out.
inline ExtendedReal log_ratio(const Rational& x, const Rational& y) {
  if (sgn(x) == 0 && sgn(y) == 0) fail(ErrorKind::IndeterminateForm, "log(0/0) is undefined");
  if (sgn(y) == 0) return ExtendedReal::positive_infinity();
  if (sgn(x) == 0) return ExtendedReal::negative_infinity();
  return ExtendedReal(log2_of(Rational(x / y)));
}

/// e(b -> a) = log2 P(b|a)/P(b|~a): the evidence b provides in favour of a.
inline ExtendedReal evidence(const Circumstance& c, const Proposition& b, const Proposition& a) {
  return log_ratio(cond_prob(c, b, a), cond_prob(c, b, ~a));
}

/// e_m(a;b) = e(b -> a) - e(~b -> a), symmetric in a and b.
inline ExtendedReal mutual_evidence(const Circumstance& c, const Proposition& a, const Proposition& b) {
  require_conceivable(c, b);
  require_conceivable(c, ~b);
  const Rational b_given_a = cond_prob(c, b, a);
  const Rational b_given_not_a = cond_prob(c, b, ~a);
  const Rational nb_given_a = 1 - b_given_a;
  const Rational nb_given_not_a = 1 - b_given_not_a;
  // A single odds ratio avoids the rounding of two separate logarithms.
  if (sgn(b_given_a) > 0 && sgn(b_given_not_a) > 0 && sgn(nb_given_a) > 0 && sgn(nb_given_not_a) > 0)
    return ExtendedReal(log2_of(Rational(b_given_a * nb_given_not_a / (b_given_not_a * nb_given_a))));
  return log_ratio(b_given_a, b_given_not_a) - log_ratio(nb_given_a, nb_given_not_a);
}

/// Evidence accumulated toward a hypothesis, tracked apart from P(hypothesis)
/// so it keeps moving while that probability is pinned at 0 or 1.
class EvidenceLedger {
 public:
  EvidenceLedger(Proposition hypothesis, double threshold_bits)
      : hypothesis_(std::move(hypothesis)), threshold_(threshold_bits) {
    if (!(threshold_bits > 0)) fail(ErrorKind::InvalidThreshold, "evidence threshold must be positive");
  }

  const Proposition& hypothesis() const { return hypothesis_; }
  double threshold() const { return threshold_; }
  double accumulated() const { return accumulated_; }
  const std::vector<double>& history() const { return history_; }

  EvidenceLedger observed(ExtendedReal contribution) const {
    if (!contribution.is_finite())
      fail(ErrorKind::NonFiniteContribution, "evidence contributions must be finite");
    EvidenceLedger next = *this;
    next.accumulated_ += contribution.value();
    next.history_.push_back(contribution.value());
    return next;
  }

  EvidenceLedger reset() const { return EvidenceLedger(hypothesis_, threshold_); }

 private:
  Proposition hypothesis_;
  double threshold_;
  double accumulated_ = 0.0;
  std::vector<double> history_;
};

inline EvidenceLedger ledger_observe(const EvidenceLedger& ledger, ExtendedReal contribution) {
  return ledger.observed(contribution);
}

struct LedgerOutcome {
  Circumstance circumstance;
  EvidenceLedger ledger;
  bool fired = false;
};

/// Gives the hypothesis once the accumulated evidence reaches the threshold.
/// Firing empties the ledger so the opposite judgment stays reachable.
inline LedgerOutcome ledger_maybe_judge(const EvidenceLedger& ledger, const Circumstance& c) {
  require_conceivable(c, ledger.hypothesis());
  if (ledger.accumulated() >= ledger.threshold()) return {judge(c, ledger.hypothesis()), ledger.reset(), true};
  return {c, ledger, false};
}

}  // namespace judgment
