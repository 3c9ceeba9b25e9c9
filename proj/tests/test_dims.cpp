#include "doctest.h"

#include "oracles.hpp"
#include "optkit/dims.hpp"

using namespace optkit;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an optkit::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("adm") {
  CHECK(adm(quantum_model(2)) == 3);
  CHECK(adm(quantum_model(3)) == 8);
  CHECK(adm(classical_model(2)) == 1);
  CHECK(adm(classical_model(3)) == 2);
  CHECK(adm(composite_model(quantum_model(2), quantum_model(2))) == 15);
  CHECK(adm(composite_model(classical_model(2), classical_model(2))) == 3);
  // Independent of the sampling seed.
  CHECK(adm(quantum_model(3), 12345) == 8);
}

TEST_CASE("idim") {
  const IdimResult q2 = idim(quantum_model(2));
  CHECK(q2.value == 2);
  CHECK(q2.witness.states.size() == 2);
  CHECK(q2.max_deviation < 1e-12);
  CHECK(idim(quantum_model(3)).value == 3);
  for (Index n : {2, 3, 4}) {
    const Model c = classical_model(n);
    CHECK(idim(c).value == n);
    if (n <= 4) CHECK(classical_idim_search(c) == n);
  }
  CHECK(idim(composite_model(quantum_model(2), quantum_model(2))).value == 4);
}

TEST_CASE("witness verification names the failing pair") {
  const Model q2 = quantum_model(2);
  DiscriminationWitness w = idim(q2).witness;
  // Replace |1><1| by |+><+|: l_1(omega_1) = 1/2.
  w.states[1] = encode_state(CMat::Constant(2, 2, 0.5), q2);
  try {
    idim(q2, w);
    FAIL("expected WitnessInvalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WitnessInvalid);
    const std::string what = e.what();
    CHECK(what.find("omega_1") != std::string::npos);
  }

  DiscriminationWitness partial = idim(q2).witness;
  partial.tests[1] = 0.5 * partial.tests[1];
  CHECK(code_of([&] { idim(q2, partial); }) == ErrorCode::WitnessInvalid);

  DiscriminationWitness short_set = idim(q2).witness;
  short_set.tests.pop_back();
  CHECK(code_of([&] { idim(q2, short_set); }) == ErrorCode::WitnessInvalid);

  CHECK(code_of([] { classical_idim_search(quantum_model(2)); }) == ErrorCode::UnsupportedModel);
}

TEST_CASE("audit of a qubit") {
  const AuditReport r = audit(quantum_model(2));
  CHECK(r.adm_single == 3);
  CHECK(r.adm_pair == 15);
  CHECK(r.idim_single == 2);
  CHECK(r.idim_pair == 4);
  CHECK(r.checks.size() == 6);
  CHECK(r.violations() == 0);
  CHECK(r.pair_idim_monotone);
  const char* names[] = {"bound_upper", "bound_lower", "pair_equality", "quadratic_law", "tensor_rule",
                         "discriminating_relation"};
  for (std::size_t i = 0; i < 6; ++i) CHECK(r.checks[i].name == names[i]);
  CHECK(r.check("pair_equality").measured == 15.0);
  CHECK(r.check("pair_equality").bound == 15.0);
  CHECK_THROWS_AS(r.check("nonexistent"), Error);
}

TEST_CASE("audit of a qutrit") {
  const AuditReport r = audit(quantum_model(3));
  CHECK(r.adm_single == 8);
  CHECK(r.adm_pair == 80);
  CHECK(r.check("quadratic_law").pass);
  CHECK(r.violations() == 0);
}

TEST_CASE("audit of classical models") {
  const AuditReport c2 = audit(classical_model(2));
  const Check& law2 = c2.check("quadratic_law");
  CHECK_FALSE(law2.pass);
  CHECK(law2.measured == 1.0);
  CHECK(law2.bound == 3.0);
  CHECK(law2.relation == "==");
  CHECK(c2.check("bound_upper").pass);
  CHECK(c2.check("bound_lower").pass);
  CHECK(c2.violations() >= 1);

  const AuditReport c3 = audit(classical_model(3));
  const Check& law3 = c3.check("quadratic_law");
  CHECK_FALSE(law3.pass);
  CHECK(law3.measured == 2.0);
  CHECK(law3.bound == 8.0);
  CHECK(c3.check("bound_upper").pass);
  CHECK(c3.check("bound_lower").pass);
  CHECK(c3.adm_pair == 8);
  CHECK(c3.idim_pair == 9);
}

TEST_CASE("dimension reports are frame invariant") {
  for (const Model& m : {quantum_model(2), quantum_model(3), classical_model(3)}) {
    const AuditReport base = audit(m);
    const AuditReport rotated = audit(rotated_frame_model(m, 7));
    CHECK(rotated.adm_single == base.adm_single);
    CHECK(rotated.adm_pair == base.adm_pair);
    CHECK(rotated.idim_single == base.idim_single);
    CHECK(rotated.idim_pair == base.idim_pair);
    CHECK(rotated.violations() == base.violations());
  }
}
