// Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Exact rational equality is used wherever the
// quantity is a probability; logarithmic identities use kLogTol.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>

#include "judgment/evidence.hpp"
#include "judgment/implication.hpp"
#include "judgment/info.hpp"
#include "judgment/scenarios.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace judgment;
using namespace judgment::testing;

namespace {

constexpr double kLogTol = 1e-9;

// Collects the first few failures of a criterion for the report line.
class Check {
 public:
  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (ok) return;
    if (++failures_ <= 3) notes_ << (failures_ > 1 ? "; " : "") << what();
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::ostringstream os;
    os << checks_ << " checks";
    if (failures_ > 0) os << ", " << failures_ << " failed: " << notes_.str();
    return os.str();
  }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::ostringstream notes_;
};

bool close(ExtendedReal a, ExtendedReal b) { return near(a, b, kLogTol); }

std::string str(ExtendedReal x) { return x.to_bits_string(12); }

const Quantity& q(const ScenarioReport& r, std::string_view step, std::string_view name) {
  const ScenarioStep* s = r.find(step);
  if (s == nullptr) throw std::runtime_error("report has no step '" + std::string(step) + "'");
  const Quantity* v = s->find(name);
  if (v == nullptr) throw std::runtime_error("step '" + std::string(step) + "' has no '" + std::string(name) + "'");
  return *v;
}

template <typename F>
std::optional<ExtendedReal> defined(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::IndeterminateForm) return std::nullopt;
    throw;
  }
}

// 1. Coin reproduction
void coin(Check& check) {
  CoinScenarioConfig even;
  even.toss_sequence = {Toss::Heads, Toss::Heads};
  const auto r = run_coin(even);
  const auto log_odds = q(r, "toss 2: heads", "log-odds(H)").value;
  check.expect(close(log_odds, 2 * std::log2(9.0)), [&] { return "log-odds " + str(log_odds); });

  CoinScenarioConfig tiered = even;
  tiered.prior_heads_hypothesis = 0;
  tiered.threshold_bits = 6.0;
  const auto t = run_coin(tiered);
  check.expect(t.find("judge H after toss 1") == nullptr, [] { return "fired after one head"; });
  const ScenarioStep* fired = t.find("judge H after toss 2");
  check.expect(fired != nullptr, [] { return "did not fire after two heads"; });
  if (fired != nullptr) {
    const auto& next = *fired->find("P(toss_next)");
    check.expect(next.exact && *next.exact == Rational(9, 10), [&] { return "P(next heads) " + quantity_text(next); });
  }
}

// 2. Raven reproduction
void raven(Check& check) {
  const auto r = run_raven(RavenScenarioConfig{});
  const auto e_a = q(r, "R given", "e(B->A|R)").value;
  check.expect(e_a == ExtendedReal(1.0), [&] { return "e(B->A|R) " + str(e_a); });
  const auto e_nr = q(r, "N judged, R given", "e(B->N|R)").value;
  check.expect(e_nr == ExtendedReal(0.0), [&] { return "e(B->N|R) " + str(e_nr); });
  const auto e_nb = q(r, "N judged, B given", "e(R->N|B)").value;
  check.expect(e_nb == ExtendedReal(0.0), [&] { return "e(R->N|B) " + str(e_nb); });
  check.expect(*q(r, "N judged, R given", "P(B) after").exact == *q(r, "N judged, R given", "P(B) before").exact,
               [] { return "N moved P(black_0) with R given"; });
  check.expect(*q(r, "N judged, B given", "P(R) after").exact == *q(r, "N judged, B given", "P(R) before").exact,
               [] { return "N moved P(raven_0) with B given"; });
}

// 3. Probability axioms. Every proposition's probability comes from the
// library; the pairwise checks then run on exact integer numerators over the
// common denominator, which keeps the full pair sweep fast.
void axioms(Check& check) {
  for (const auto& c : enumeration_suite()) {
    const auto props = all_propositions(c.space());  // index == world mask
    std::vector<Rational> p(props.size());
    mpz_class denominator = 1;
    for (std::size_t m = 0; m < props.size(); ++m) {
      p[m] = prob(c, props[m]);
      mpz_lcm(denominator.get_mpz_t(), denominator.get_mpz_t(), p[m].get_den_mpz_t());
    }
    std::vector<long> n(props.size());
    for (std::size_t m = 0; m < props.size(); ++m) {
      const mpz_class scaled = p[m].get_num() * (denominator / p[m].get_den());
      check.expect(scaled.fits_slong_p(), [] { return "numerator overflow"; });
      n[m] = scaled.get_si();
    }
    const long one = denominator.get_si();
    const std::size_t top = props.size() - 1;
    check.expect(denominator.fits_slong_p() && p[top] == 1 && n[top] == one, [] { return "P(true) != 1"; });
    for (std::size_t x = 0; x <= top; ++x) {
      check.expect(n[x] >= 0 && n[x] <= one, [] { return "P out of [0,1]"; });
      for (std::size_t y = 0; y <= top; ++y) {
        if ((x & y) == 0) check.expect(n[x | y] == n[x] + n[y], [] { return "disjoint additivity"; });
        check.expect(n[x | y] + n[x & y] == n[x] + n[y], [] { return "inclusion-exclusion"; });
      }
    }
  }
}

// 4. Judgment semantics
void judgment_semantics(Check& check) {
  auto run_on = [&](const Circumstance& c, const std::vector<Proposition>& props) {
    const DenseOracle oracle(c);
    for (const auto& a : props) {
      if ((a & c.conceivable()).empty()) continue;
      const auto j = judge(c, a);
      for (const auto& x : props) {
        const Rational want = oracle.cond_prob(x, a);
        check.expect(prob(j, x) == want && cond_prob(c, x, a) == want,
                     [] { return "judge disagrees with conditioning"; });
      }
    }
  };
  run_on(e1(), all_propositions(ab_space()));
  run_on(e2(), all_propositions(ab_space()));
  for (const auto& c : enumeration_suite()) run_on(c, suite_propositions(c.space()));
}

// 5. Information identities
void information(Check& check) {
  for (const auto& c : enumeration_suite()) {
    const auto props = suite_propositions(c.space());
    for (const auto& a : props)
      for (const auto& b : props) {
        const Rational pa = prob(c, a), pb = prob(c, b);
        if (sgn(pb) > 0) {
          const auto lhs = cond_info(c, a, b);
          check.expect(close(lhs, info(c, a & b) - info(c, b)), [&] { return "i(A|B) = i(AB) - i(B)"; });
          // i(A) - i(B) is finite or +inf here, so the bound compares cleanly.
          const auto diff = info(c, a) - info(c, b);
          check.expect(lhs.value() + kLogTol >= diff.value(), [&] { return "i(A|B) >= i(A) - i(B)"; });
        }
        if (sgn(pa) > 0 && cond_prob(c, b, a) == 1)
          check.expect(info(c, a).value() + kLogTol >= info(c, b).value(), [] { return "i(A) >= i(B)"; });
      }
  }
}

// 6. Sign lemma
void sign_lemma(Check& check) {
  for (const auto& c : enumeration_suite()) {
    const auto props = suite_propositions(c.space());
    for (const auto& a : props)
      for (const auto& b : props) {
        const Rational pa = prob(c, a), pb = prob(c, b);
        if (!interior(pa) || !interior(pb) || prob(c, a & b) == pa * pb) continue;
        const auto s = sign_pattern(c, a, b);
        check.expect(s.negatives() == 2 && s.positives() == 2, [] { return "not two negative, two positive"; });
        if (s.a_b < ExtendedReal(0.0))
          check.expect(s.not_a_not_b < ExtendedReal(0.0), [] { return "i(A;B)<0 but i(~A;~B)>=0"; });
      }
  }
}

// 7. Constructions
void constructions(Check& check) {
  long negative_pairs = 0;
  for (const auto& c : enumeration_suite()) {
    const auto props = suite_propositions(c.space());
    for (const auto& a : props)
      for (const auto& b : props) {
        const Rational pa = prob(c, a), pb = prob(c, b), pab = prob(c, a & b);
        if (!interior(pa) || !interior(pb)) continue;
        if (pab > pa * pb) {
          const auto d = decompose_common(c, a, b);
          const auto& x = d.circumstance;
          const Rational pc = prob(x, d.c), pd = prob(x, d.d), pe = prob(x, d.e);
          check.expect(prob(x, d.c & d.d) == pc * pd && prob(x, d.c & d.e) == pc * pe &&
                           prob(x, d.d & d.e) == pd * pe && prob(x, d.c & d.d & d.e) == pc * pd * pe,
                       [] { return "C, D, E not independent"; });
          const auto live = x.conceivable();
          check.expect((d.a & live) == (d.c & d.d & live) && (d.b & live) == (d.d & d.e & live),
                       [] { return "biconditionals fail"; });
          check.expect(close(info(x, d.d), common_info(c, a, b)), [] { return "i(D) != i(A;B)"; });
        }
        if (pab < pa * pb) {
          // Each non-independent interior pair has two negative-common-info
          // pairs among (a,b), (~a,b), (a,~b), (~a,~b); at least one of those
          // two must admit an independent consequence.
          ++negative_pairs;
          bool some_feasible = false;
          for (const auto& [x, y] : {std::pair{a, b}, std::pair{~a, b}, std::pair{a, ~b}, std::pair{~a, ~b}}) {
            const Rational px = prob(c, x), py = prob(c, y);
            if (!(prob(c, x & y) < px * py) || px + py > 1) continue;
            try {
              const auto r = independent_consequence(c, x, y);
              some_feasible = true;
              const auto& z = r.circumstance;
              const Rational pz = prob(z, r.consequence);
              check.expect(prob(z, r.a & r.consequence) == px * pz && prob(z, r.b & r.consequence) == py * pz,
                           [] { return "consequence not independent"; });
              check.expect(entails(r.a & r.b & z.conceivable(), r.consequence), [] { return "ab not in C"; });
              if (sgn(pz) > 0)
                check.expect(cond_prob(z, r.a & r.b, r.consequence) == px * py, [] { return "P(AB|C) != P(A)P(B)"; });
            } catch (const Error& e) {
              check.expect(e.kind() == ErrorKind::Infeasible, [&] { return std::string("unexpected ") + std::string(e.name()); });
            }
          }
          check.expect(some_feasible, [] { return "no pair feasible"; });
        }
      }
  }
  check.expect(negative_pairs > 0, [] { return "suite has no negatively correlated pair"; });
}

// 8. Implication operators
void implication(Check& check) {
  using enum ImplicationMode;
  auto valid = [](const Circumstance& c, const Proposition& a, const Proposition& b, ImplicationMode m) {
    try {
      detail::check_implication_input(c, a, b, m);
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  for (const auto& c : enumeration_suite()) {
    const auto props = suite_propositions(c.space());
    const DenseOracle oracle(c);
    for (const auto& a : props)
      for (const auto& b : props) {
        const Rational pa = oracle.prob(a), pb = oracle.prob(b), pab = oracle.prob(a & b);
        const Rational p_nab = oracle.prob(~a & b), p_nanb = oracle.prob(~a & ~b);
        const Rational keep = oracle.prob(~a | b);
        for (auto mode : kAllModes) {
          if (!valid(c, a, b, mode)) continue;
          CellTransport want;
          switch (mode) {
            case Material: want = {pab / keep, 0, p_nab / keep, p_nanb / keep}; break;
            case Sufficient: want = {pa, 0, p_nab, p_nanb}; break;
            case Necessary: want = {pab, 0, p_nab, 1 - pb}; break;
            case Conservative: want = {pa, 0, pb - pa, 1 - pb}; break;
          }
          check.expect(transport_for(c, a, b, mode) == want, [&] { return std::string("cell masses, ") + std::string(mode_name(mode)); });
          std::optional<Circumstance> after;
          try {
            after = apply_implication(c, a, b, mode);
          } catch (const Error& e) {
            // A receiving cell with no conceivable world cannot take mass.
            check.expect(e.kind() == ErrorKind::DegenerateInput, [&] { return std::string("apply: ") + std::string(e.name()); });
          }
          if (after) {
            check.expect(prob(*after, a & b) == want.ab && prob(*after, a & ~b) == 0 &&
                             prob(*after, ~a & b) == want.not_a_b && prob(*after, ~a & ~b) == want.not_a_not_b,
                         [&] { return std::string("posterior cells, ") + std::string(mode_name(mode)); });
            if (mode == Necessary && valid(c, ~b, ~a, Sufficient))
              check.expect(*after == apply_implication(c, ~b, ~a, Sufficient), [] { return "Necessary != Sufficient dual"; });
          }

          if (sgn(pa) == 0) continue;
          ExtendedReal bound = 0.0;
          try {
            bound = min_info_T(c, a, b, mode);
          } catch (const Error&) {
            continue;  // Necessary/Conservative with P(~b) = 0
          }
          if (!bound.is_finite()) continue;
          bool rejected = false;
          try {
            construct_T(c, a, b, mode, ExtendedReal(std::nextafter(bound.value() - 1e-6, 0.0)));
          } catch (const Error&) {
            rejected = true;
          }
          check.expect(rejected, [&] { return std::string("construct_T accepted i(T) below bound, ") + std::string(mode_name(mode)); });
          const auto built = construct_T(c, a, b, mode, bound);
          const auto& x = built.circumstance;
          check.expect(marginalize(x, c.space()) == c, [] { return "summing out T changed c"; });
          if (built.prob_t == 1) continue;
          if (mode == Sufficient)
            check.expect(cond_prob(x, built.a & built.b, ~built.t) == 0, [] { return "P(AB|~T) != 0 at bound"; });
          if (mode == Conservative) {
            const auto i_ba = cond_info(c, b, a), i_nanb = cond_info(c, ~a, ~b);
            if (i_ba >= i_nanb)
              check.expect(cond_prob(x, built.a & built.b, ~built.t) == 0, [] { return "P(AB|~T) != 0 at dual bound"; });
            if (i_nanb >= i_ba)
              check.expect(cond_prob(x, ~built.a & ~built.b, ~built.t) == 0,
                           [] { return "P(~A~B|~T) != 0 at dual bound"; });
          }
        }
      }
  }
}

// 9. Counterfactual suite
void counterfactual(Check& check) {
  using testing::kAB, testing::kANotB, testing::kNotAB, testing::kNotANotB;
  const std::vector<Circumstance> two_tier = {
      e2(),
      Circumstance(ab_space(), {Tier({{kAB, Rational(1, 3)}, {kNotAB, Rational(2, 3)}}),
                                Tier({{kANotB, Rational(1, 2)}, {kNotANotB, Rational(1, 2)}})}),
      Circumstance(ab_space(), {Tier({{kNotANotB, Rational(1)}}),
                                Tier({{kNotAB, Rational(1, 4)}, {kAB, Rational(3, 4)}}),
                                Tier({{kANotB, Rational(1)}})}),
  };
  for (const auto& c : two_tier) {
    const auto props = all_propositions(c.space());
    for (const auto& a : props) {
      if (sgn(prob(c, a)) != 0 || (a & c.conceivable()).empty()) continue;
      for (const auto& b : props) {
        if ((a & b & c.conceivable()).empty()) continue;
        const auto after = counterfactual_sufficient(c, a, b);
        bool same = true;
        for (const auto& x : props) same = same && prob(after, x) == prob(c, x);
        check.expect(same, [] { return "probability-one judgment moved a probability"; });
        check.expect(cond_prob(after, b, a) == 1, [] { return "P(b|a) != 1 after counterfactual"; });
        const auto built = construct_counterfactual_T(c, a, b);
        const auto lhs = cond_info(built.circumstance, built.t, built.a);
        const auto rhs = cond_info(c, b, a);
        check.expect(close(lhs, rhs), [] { return "i(T|a) != i(b|a)"; });
      }
    }
  }
  for (const auto& c : enumeration_suite()) {
    const auto props = suite_propositions(c.space());
    for (const auto& a : props)
      for (const auto& b : props) {
        if (prob(c, ~a | b) != 1) continue;
        const bool holds = sgn(prob(c, ~b)) == 0 || sgn(prob(c, a)) == 0 ||
                           (cond_prob(c, b, a) == 1 && cond_prob(c, ~a, ~b) == 1);
        check.expect(holds, [] { return "trichotomy fails"; });
      }
  }
}

// 10. Evidence identities
void evidence_identities(Check& check) {
  const auto c2 = e2();
  const auto a2 = atom(c2, "a"), b2 = atom(c2, "b");
  check.expect(std::abs(evidence(c2, b2, a2).value() - 0.585) < 5e-4, [] { return "E2 e(b->a) != 0.585"; });
  check.expect(std::abs(cond_info(c2, b2, a2).value() - 0.415) < 5e-4, [] { return "E2 i(b|a) != 0.415"; });
  check.expect(close(info(c2, b2), 1.0), [] { return "E2 i(b) != 1"; });
  check.expect(close(evidence(c2, b2, a2), std::log2(1.5)) && close(cond_info(c2, b2, a2), std::log2(4.0 / 3.0)),
               [] { return "E2 exact logs"; });

  for (const auto& c : enumeration_suite()) {
    const auto props = suite_propositions(c.space());
    for (const auto& a : props) {
      if ((a & c.conceivable()).empty() || (~a & c.conceivable()).empty()) continue;
      const Rational pa = prob(c, a);
      const std::optional<Circumstance> judged = sgn(pa) == 0 ? std::optional(judge(c, a)) : std::nullopt;
      for (const auto& b : props) {
        const auto e = defined([&] { return evidence(c, b, a); });
        if (!e) continue;
        check.expect(close(*e, -evidence(c, b, ~a)), [] { return "e(B->A) != -e(B->~A)"; });
        const Rational pb = prob(c, b);
        if (interior(pa) && sgn(pb) > 0) {
          const auto ci = common_info(c, a, b), cni = common_info(c, ~a, b);
          if (ci.is_finite() && cni.is_finite())
            check.expect(close(*e, ci - cni), [] { return "e != i(A;B) - i(~A;B)"; });
        }
        if (judged) {
          const auto lhs = cond_info(c, b, a), ib = info(c, b);
          if (lhs.is_finite() && e->is_finite() && ib.is_finite())
            check.expect(close(lhs, ib - *e), [] { return "i(B|A) != i(B) - e(B->A)"; });
          check.expect(evidence(*judged, b, a) == *e, [] { return "e(B->A) moved under judge(A)"; });
        }
        if (!interior(pa) || !interior(pb)) continue;
        const auto em = mutual_evidence(c, a, b), em_swapped = mutual_evidence(c, b, a);
        check.expect(close(em, em_swapped), [] { return "e_m not symmetric"; });
        if (em == ExtendedReal(0.0))
          for (const auto& x : {a, ~a})
            for (const auto& y : {b, ~b})
              check.expect(close(common_info(c, x, y), 0.0), [] { return "e_m = 0 but a common info is not 0"; });
      }
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*run)(Check&);
  };
  const Criterion criteria[] = {
      {"coin reproduction", coin},
      {"raven reproduction", raven},
      {"probability axioms over the enumeration suite", axioms},
      {"judgment equals conditioning", judgment_semantics},
      {"information identities", information},
      {"common-information sign lemma", sign_lemma},
      {"decomposition and independent consequence", constructions},
      {"implication operators and T construction", implication},
      {"counterfactual judgments and trichotomy", counterfactual},
      {"evidence identities", evidence_identities},
  };
  std::printf("enumeration suite: %zu circumstances\n", enumeration_suite().size());
  int failed = 0;
  int index = 0;
  for (const auto& criterion : criteria) {
    ++index;
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.expect(false, [&] { return std::string("exception: ") + e.what(); });
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %2d  %-48s %s (%.2fs)\n", check.ok() ? "PASS" : "FAIL", index, criterion.name,
                check.summary().c_str(), seconds);
    if (!check.ok()) ++failed;
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
