#include <doctest.h>

#include <nlohmann/json.hpp>

#include "qevo/fitness.hpp"
#include "test_helpers.hpp"

using namespace qevo;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("jensen_shannon_distance reference points") {
  CHECK(jensen_shannon_distance(vec2(0.5, 0.5), vec2(0.5, 0.5)) == 0.0);
  CHECK(jensen_shannon_distance(vec2(1, 0), vec2(0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
  // frozen from the base-2 definition evaluated directly
  const double d = jensen_shannon_distance(vec2(1, 0), vec2(0.5, 0.5));
  CHECK(d == doctest::Approx(0.5579).epsilon(1e-3));
  CHECK(d == doctest::Approx(ref::jensen_shannon_distance(vec2(1, 0), vec2(0.5, 0.5)))
               .epsilon(1e-12));
  CHECK_THROWS_AS(jensen_shannon_distance(vec2(1, 0), Eigen::VectorXd::Ones(3)),
                  std::invalid_argument);
}

TEST_CASE("jensen_shannon_distance satisfies the metric axioms") {
  RandomStream rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index size = uniform_int(rng, 2, 8);
    const Eigen::VectorXd p = circuits::random_distribution(size, rng);
    const Eigen::VectorXd q = circuits::random_distribution(size, rng);
    const Eigen::VectorXd r = circuits::random_distribution(size, rng);
    const double dpq = jensen_shannon_distance(p, q);
    const double dqp = jensen_shannon_distance(q, p);
    const double dpr = jensen_shannon_distance(p, r);
    const double dqr = jensen_shannon_distance(q, r);
    CHECK(dpq >= 0.0);
    CHECK(dpq <= 1.0 + 1e-12);
    CHECK(dpq == doctest::Approx(dqp).epsilon(1e-12));
    CHECK(dpr <= dpq + dqr + 1e-9);
    CHECK(jensen_shannon_distance(p, p) == 0.0);
  }
}

TEST_CASE("evaluate_hits on the all-identity chromosome, bv suite") {
  const ProblemSuite suite = make_bv_suite(3);
  const HitsResult hits = evaluate_hits(Chromosome(15, GateSpec{}), suite);
  // only the zero hidden string is measured correctly; the 7 failing
  // cases are disjoint one-hot pairs with distance exactly 1
  CHECK(hits.hits_remaining == 7);
  CHECK(hits.error_sum == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("evaluate_hits on the textbook circuits") {
  const ProblemSuite bv = make_bv_suite(3);
  const HitsResult bv_hits = evaluate_hits(circuits::textbook_bv(), bv);
  CHECK(bv_hits.hits_remaining == 0);
  CHECK(bv_hits.error_sum == 0.0);

  const ProblemSuite search = make_search_suite(3);
  const HitsResult grover_hits = evaluate_hits(circuits::textbook_grover(), search);
  CHECK(grover_hits.hits_remaining == 0);  // 0.78125 >= 0.52 everywhere
}

TEST_CASE("baseline fitness branches") {
  const ProblemSuite suite = make_bv_suite(3);

  const FitnessReport solved = baseline_fitness(circuits::textbook_bv(), suite);
  CHECK(solved.fitness == 9.0 / 100000.0);
  CHECK(solved.gate_term == solved.fitness);
  CHECK(solved.oracle_ratio == 0.0);
  CHECK(solved.penalty == 0.0);

  const FitnessReport compact = baseline_fitness(circuits::textbook_bv_compact(), suite);
  CHECK(compact.fitness == 8.0 / 100000.0);

  const FitnessReport idle = baseline_fitness(Chromosome(15, GateSpec{}), suite);
  CHECK(idle.hits_remaining == 7);
  CHECK(idle.fitness == doctest::Approx(7.0 + 7.0 / 7.0).epsilon(1e-12));
  CHECK(idle.gate_term == 0.0);

  // fitness < 1 exactly when every case passes
  CHECK(solved.fitness < 1.0);
  CHECK(idle.fitness >= 1.0);
}

TEST_CASE("direct fitness on constructed all-pass circuits") {
  const ProblemSuite suite = make_search_suite(3);

  // two oracle calls, 12 gates; all-pass confirmed by the dense reference
  const Chromosome two = circuits::two_oracle_search();
  REQUIRE(count_oracle_gates(two) == 2);
  REQUIRE(count_gates(two) == 12);
  for (const TestCase& tc : suite.test_cases) {
    const Eigen::VectorXcd psi = ref::run_chromosome(two, 3, &tc.oracle.unitary);
    CHECK(std::norm(psi(target_index(tc))) >= 0.52);
  }
  const FitnessReport direct = direct_qa_fitness(two, suite);
  CHECK(direct.hits_remaining == 0);
  CHECK(direct.fitness == doctest::Approx(0.50012).epsilon(1e-12));
  CHECK(direct.oracle_ratio == 0.5);

  // single oracle call: textbook grover, 31 gates
  const FitnessReport grover = direct_qa_fitness(circuits::textbook_grover(), suite);
  CHECK(grover.oracle_ratio == 0.25);
  CHECK(grover.fitness == doctest::Approx(0.25 + 31.0 / 100000.0).epsilon(1e-12));
  CHECK(grover.fitness < 1.0);

  // padding with trailing oracle genes keeps every case passing (the
  // phase oracle is diagonal) but pushes the ratio to 1.25
  Chromosome padded = circuits::textbook_grover();
  for (int i = 0; i < 4; ++i) padded.push_back(circuits::oracle());
  const FitnessReport expensive = direct_qa_fitness(padded, suite);
  CHECK(expensive.hits_remaining == 0);
  CHECK(expensive.oracle_ratio == doctest::Approx(1.25));
  CHECK(expensive.fitness >= 1.0);
}

TEST_CASE("baseline and direct coincide while any case fails") {
  const ProblemSuite suite = make_search_suite(3);
  RandomStream rng(23);
  int failing_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Chromosome c = circuits::random_chromosome(3, 30, default_gate_set(), rng);
    const FitnessReport base = baseline_fitness(c, suite);
    const FitnessReport direct = direct_qa_fitness(c, suite);
    if (base.hits_remaining > 0) {
      ++failing_seen;
      CHECK(base.fitness == direct.fitness);
    }
  }
  CHECK(failing_seen > 150);  // random circuits rarely solve search
}

TEST_CASE("structural detectors") {
  using circuits::cg;
  using circuits::g;
  using circuits::rg;
  CHECK(contains_superposition_gates({g(GateKind::H, 0)}));
  CHECK_FALSE(contains_superposition_gates(
      {g(GateKind::X, 0), cg(GateKind::CX, 0, 1), g(GateKind::Z, 0)}));
  CHECK(contains_superposition_gates({{GateKind::CRY, 1, 0, 0.3}}));
  CHECK(contains_entanglement_gates({cg(GateKind::CX, 0, 1)}));
  CHECK_FALSE(contains_entanglement_gates(
      {g(GateKind::H, 0), g(GateKind::X, 1), rg(GateKind::RY, 0, 0.5)}));
  CHECK(contains_entanglement_gates({cg(GateKind::CH, 1, 0)}));
}

TEST_CASE("indirect fitness adds one penalty unit per violated constraint") {
  const ProblemSuite suite = make_search_suite(3);
  RandomStream rng(29);

  // same chromosome, same hits: the penalty is exactly the difference
  // between indirect and baseline
  const GateSet no_sup_no_ent{GateKind::Identity, GateKind::X, GateKind::Y, GateKind::Z,
                              GateKind::RZ};
  const GateSet sup_only{GateKind::H, GateKind::RX, GateKind::RY};
  const GateSet ent_only{GateKind::CX, GateKind::CZ};

  for (int trial = 0; trial < 30; ++trial) {
    const Chromosome both_missing = circuits::random_chromosome(3, 10, no_sup_no_ent, rng);
    CHECK(indirect_qa_fitness(both_missing, suite).fitness -
              baseline_fitness(both_missing, suite).fitness ==
          doctest::Approx(18.0).epsilon(1e-12));

    const Chromosome ent_missing = circuits::random_chromosome(3, 10, sup_only, rng);
    CHECK(indirect_qa_fitness(ent_missing, suite).fitness -
              baseline_fitness(ent_missing, suite).fitness ==
          doctest::Approx(9.0).epsilon(1e-12));

    const Chromosome sup_missing = circuits::random_chromosome(3, 10, ent_only, rng);
    CHECK(indirect_qa_fitness(sup_missing, suite).fitness -
              baseline_fitness(sup_missing, suite).fitness ==
          doctest::Approx(9.0).epsilon(1e-12));

    const Chromosome both = circuits::random_chromosome(3, 10, default_gate_set(), rng);
    const double delta = indirect_qa_fitness(both, suite).fitness -
                         baseline_fitness(both, suite).fitness;
    const double expected =
        (contains_superposition_gates(both) ? 0.0 : 9.0) +
        (contains_entanglement_gates(both) ? 0.0 : 9.0);
    CHECK(delta == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("indirect fitness worked examples") {
  const ProblemSuite search = make_search_suite(3);
  const FitnessReport idle = indirect_qa_fitness(Chromosome(30, GateSpec{}), search);
  CHECK(idle.penalty == 18.0);
  CHECK(idle.hits_remaining == 7);  // the all-zeros state matches m = 0
  CHECK(idle.fitness == doctest::Approx(18.0 + 7.0 + 7.0 / 7.0).epsilon(1e-12));

  // textbook bv with the ancilla additionally toggled through a CX: still
  // passes every case (the ancilla is marginalized out) and satisfies
  // both structural constraints
  const ProblemSuite bv = make_bv_suite(3);
  Chromosome with_cx = circuits::textbook_bv();
  with_cx.push_back(circuits::cg(GateKind::CX, 0, 3));
  const FitnessReport solved = indirect_qa_fitness(with_cx, bv);
  CHECK(solved.penalty == 0.0);
  CHECK(solved.hits_remaining == 0);
  CHECK(solved.fitness == 10.0 / 100000.0);

  // H alone: superposition present, entanglement missing, every case fails
  const Chromosome h_only{circuits::g(GateKind::H, 0)};
  const FitnessReport failing = indirect_qa_fitness(h_only, bv);
  CHECK(failing.penalty == 9.0);
  CHECK(failing.hits_remaining == 8);
  double expected_error = 0.0;
  for (const TestCase& tc : bv.test_cases) {
    Eigen::VectorXd probs = Eigen::VectorXd::Zero(8);
    probs(0) = 0.5;
    probs(4) = 0.5;  // inputs read 000 or 100 after H on qubit 0
    expected_error += ref::jensen_shannon_distance(probs, tc.target);
  }
  CHECK(failing.fitness ==
        doctest::Approx(9.0 + 8.0 + expected_error / 8.0).epsilon(1e-9));
}

TEST_CASE("penalty dominance separates violators from candidates") {
  const ProblemSuite suite = make_search_suite(3);
  RandomStream rng(31);
  const GateSet violating{GateKind::X, GateKind::Y, GateKind::Z, GateKind::RZ};
  for (int trial = 0; trial < 20; ++trial) {
    const Chromosome bad = circuits::random_chromosome(3, 30, violating, rng);
    CHECK(indirect_qa_fitness(bad, suite).fitness >= 18.0);
    Chromosome good = circuits::random_chromosome(3, 28, default_gate_set(), rng);
    good.push_back(circuits::g(GateKind::H, 0));
    good.push_back(circuits::cg(GateKind::CX, 0, 1));
    CHECK(indirect_qa_fitness(good, suite).fitness <= 9.0 + 1e-12);
  }
}

TEST_CASE("report components stay consistent with the branch taken") {
  const ProblemSuite suite = make_search_suite(3);
  RandomStream rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    const Chromosome c = circuits::random_chromosome(3, 30, default_gate_set(), rng);
    for (const FitnessKind kind :
         {FitnessKind::Baseline, FitnessKind::DirectQA, FitnessKind::IndirectQA}) {
      const FitnessReport r = evaluate_fitness(kind, c, suite);
      if (r.hits_remaining > 0) {
        CHECK(r.gate_term == 0.0);
        CHECK(r.oracle_ratio == 0.0);
        CHECK(r.fitness ==
              doctest::Approx(r.penalty + r.hits_remaining +
                              r.error_sum / std::max(r.hits_remaining, 1))
                  .epsilon(1e-12));
      } else {
        CHECK(r.error_sum == 0.0);
        CHECK(r.fitness ==
              doctest::Approx(r.penalty + r.oracle_ratio + r.gate_term).epsilon(1e-12));
      }
      if (kind != FitnessKind::IndirectQA) CHECK(r.penalty == 0.0);
      if (kind != FitnessKind::DirectQA) CHECK(r.oracle_ratio == 0.0);
    }
  }
}

TEST_CASE("fitness report serializes") {
  const ProblemSuite suite = make_bv_suite(3);
  const nlohmann::json j = to_json(baseline_fitness(circuits::textbook_bv(), suite));
  CHECK(j.at("fitness") == 9.0 / 100000.0);
  CHECK(j.at("hits_remaining") == 0);
  CHECK(j.at("penalty") == 0.0);
}
