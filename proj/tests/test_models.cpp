#include "doctest.h"

#include "oracles.hpp"
#include "optkit/dims.hpp"
#include "optkit/model.hpp"
#include "optkit/random.hpp"

using namespace optkit;

namespace {

Vec coords(std::initializer_list<double> v) {
  Vec out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

double diff(const Vec& a, const Vec& b) { return (a - b).cwiseAbs().maxCoeff(); }

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

TEST_CASE("quantum models") {
  const Model q2 = quantum_model(2);
  CHECK(q2.affine_dim() == 3);
  CHECK(q2.known_idim() == 2);
  CHECK(q2.frame()[0] == CMat::Identity(2, 2));
  const CMat id = CMat::Identity(2, 2);
  CHECK(oracle::max_abs(q2.frame()[1] - 0.5 * (id + oracle::pauli_x())) < 1e-15);
  CHECK(oracle::max_abs(q2.frame()[2] - 0.5 * (id + oracle::pauli_y())) < 1e-15);
  CHECK(oracle::max_abs(q2.frame()[3] - 0.5 * (id + oracle::pauli_z())) < 1e-15);
  CHECK(quantum_model(3).affine_dim() == 8);
  CHECK(quantum_model(4).affine_dim() == 15);

  CHECK(diff(encode_state(0.5 * id, q2).coords(), coords({1, .5, .5, .5})) < 1e-15);
  CHECK_THROWS_AS(quantum_model(1), Error);
  CHECK_THROWS_AS(quantum_model(9), Error);
}

TEST_CASE("dual frame") {
  for (const Model& m : {quantum_model(2), quantum_model(3), classical_model(3)}) {
    for (std::size_t j = 0; j < m.frame().size(); ++j) {
      for (std::size_t l = 0; l < m.dual_frame().size(); ++l) {
        const double expected = j == l ? 1.0 : 0.0;
        CHECK(std::abs((m.frame()[j] * m.dual_frame()[l]).trace().real() - expected) < 1e-12);
      }
    }
  }
}

TEST_CASE("classical models") {
  const Model c2 = classical_model(2);
  CHECK(c2.affine_dim() == 1);
  CHECK(c2.known_idim() == 2);
  const Model c3 = classical_model(3);
  CHECK(c3.affine_dim() == 2);
  CHECK(c3.known_idim() == 3);
  CHECK(diff(encode_state(oracle::outer(3, 0, 0), c3).coords(), coords({1, 1, 0})) < 1e-15);
  CHECK(diff(encode_state(oracle::outer(3, 1, 1), c3).coords(), coords({1, 0, 1})) < 1e-15);
  CHECK(diff(encode_state(oracle::outer(3, 2, 2), c3).coords(), coords({1, 0, 0})) < 1e-15);
  CHECK(code_of([&] { encode_state(0.5 * (oracle::outer(2, 0, 1) + oracle::outer(2, 1, 0)) +
                                       0.5 * CMat::Identity(2, 2),
                                   c2, Validate::yes); }) == ErrorCode::InvalidState);
  CHECK_THROWS_AS(classical_model(1), Error);
}

TEST_CASE("composite models") {
  const Model q2 = quantum_model(2);
  const Model qq = composite_model(q2, q2);
  CHECK(qq.affine_dim() == 15);
  CHECK(qq.native_dim() == 4);
  CHECK(qq.known_idim() == 4);
  CHECK(qq.parts().size() == 2);
  const Model c2 = classical_model(2);
  CHECK(composite_model(c2, c2).affine_dim() == 3);

  Rng rng(3);
  const CMat a = random_state(q2, rng);
  const CMat b = random_state(q2, rng);
  const Weight joint = encode_state(kron(a, b), qq);
  CHECK(joint.mass() == doctest::Approx(1.0));
  // Index i * size + j carries the product of the local coordinates.
  const Vec wa = encode_state(a, q2).coords();
  const Vec wb = encode_state(b, q2).coords();
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) CHECK(std::abs(joint[i * 4 + j] - wa(i) * wb(j)) < 1e-14);
  }
  CHECK(code_of([&] { composite_model(q2, c2); }) == ErrorCode::UnsupportedComposite);
}

TEST_CASE("state encoding") {
  const Model q2 = quantum_model(2);
  CHECK(diff(encode_state(oracle::outer(2, 0, 0), q2).coords(), coords({1, .5, .5, 1})) < 1e-15);
  for (const Model& m : {q2, quantum_model(3), classical_model(3)}) {
    Rng rng(17);
    for (int s = 0; s < 100; ++s) {
      const CMat rho = random_state(m, rng);
      CHECK(oracle::max_abs(decode_state(encode_state(rho, m, Validate::yes), m) - rho) < 1e-12);
    }
  }
  Rng rng(2);
  for (int s = 0; s < 20; ++s) {
    const CMat rho = random_state(q2, rng);
    CHECK(diff(encode_state(rho, q2).coords(), oracle::qubit_weight(rho)) < 1e-14);
  }
  CHECK(code_of([&] { encode_state(CMat::Identity(2, 2), q2, Validate::yes); }) == ErrorCode::InvalidState);
  CHECK(code_of([&] { encode_state(CMat::Identity(3, 3) / 3.0, q2); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("channel encoding") {
  const Model q2 = quantum_model(2);
  CHECK((encode_channel(oracle::identity_channel(2), q2).entries() - Mat::Identity(4, 4)).norm() < 1e-14);

  Mat t_mix = Mat::Zero(4, 4);
  t_mix(0, 0) = 1.0;
  t_mix.col(0).tail(3).setConstant(0.5);
  CHECK((encode_channel(oracle::erase_channel(2), q2).entries() - t_mix).norm() < 1e-14);
  CHECK(diff(encode_channel(oracle::measure(2, 0), q2).propensity().coords(), coords({0, 0, 0, 1})) < 1e-15);

  for (const Model& m : {q2, quantum_model(3), classical_model(3)}) {
    Rng rng(23);
    for (int s = 0; s < 100; ++s) {
      const KrausSet kraus = random_channel(m, rng, s % 2 ? TraceMode::decreasing : TraceMode::preserving);
      const ChoiMatrix choi = choi_from_kraus(kraus);
      const TransMatrix t = encode_channel(choi, m, Validate::yes);
      CHECK(oracle::max_abs(decode_channel(t, m).matrix - choi.matrix) < 1e-12);
      if (s < 10) CHECK((t.entries() - oracle::bloch_matrix(kraus, m)).norm() < 1e-10);
    }
  }

  // Not completely positive: the transpose map.
  ChoiMatrix transpose{CMat::Zero(4, 4), 2, 2};
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) transpose.matrix.block(i * 2, j * 2, 2, 2) = oracle::outer(2, j, i);
  }
  CHECK(code_of([&] { encode_channel(transpose, q2, Validate::yes); }) == ErrorCode::InvalidChannel);
  // Trace-increasing.
  CHECK(code_of([&] { encode_channel(KrausSet{2.0 * CMat::Identity(2, 2)}, q2, Validate::yes); }) ==
        ErrorCode::InvalidChannel);
}

TEST_CASE("effect encoding") {
  const Model q2 = quantum_model(2);
  const CMat id = CMat::Identity(2, 2);
  CHECK(diff(encode_effect(id, q2).coords(), coords({1, 0, 0, 0})) < 1e-15);
  CHECK(diff(encode_effect(oracle::outer(2, 0, 0), q2).coords(), coords({0, 0, 0, 1})) < 1e-15);
  CHECK(diff(encode_effect(0.5 * id, q2).coords(), coords({.5, 0, 0, 0})) < 1e-15);

  for (const Model& m : {q2, quantum_model(3), classical_model(3)}) {
    Rng rng(31);
    for (int s = 0; s < 100; ++s) {
      const CMat e = random_effect(m, rng);
      const Propensity p = encode_effect(e, m, Validate::yes);
      CHECK(oracle::max_abs(decode_effect(p, m) - e) < 1e-12);
      // Evaluating on a state matches the trace rule.
      const CMat rho = random_state(m, rng);
      CHECK(std::abs(probability(p, encode_state(rho, m)) - (e * rho).trace().real()) < 1e-12);
    }
  }
  CHECK(code_of([&] { encode_effect(2.0 * id, q2, Validate::yes); }) == ErrorCode::InvalidEffect);
  CHECK(code_of([&] { encode_effect(-id, q2, Validate::yes); }) == ErrorCode::InvalidEffect);
}

TEST_CASE("maximally entangled joint weight") {
  const Model q2 = quantum_model(2);
  Mat expected(4, 4);
  expected << 1, .5, .5, .5,
              .5, .5, .25, .25,
              .5, .25, 0, .25,
              .5, .25, .25, .5;
  const JointWeight omega = max_entangled_joint(q2);
  CHECK((omega.entries() - expected).norm() < 1e-15);
  CHECK(omega(0, 0) == doctest::Approx(1.0));

  // Entrywise against the native state.
  const CMat phi = max_entangled_state(2);
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) {
      const double direct = (kron(q2.frame()[i], q2.frame()[j]) * phi).trace().real();
      CHECK(std::abs(direct - omega(i, j)) < 1e-15);
    }
  }
  CHECK(code_of([] { max_entangled_joint(classical_model(2)); }) == ErrorCode::UnsupportedModel);
}

TEST_CASE("random generators") {
  const Model q3 = quantum_model(3);
  Rng rng(42);
  for (int s = 0; s < 1000; ++s) {
    const CMat rho = random_state(q3, rng);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
    CHECK(min_eigenvalue(rho) > -1e-12);
  }
  for (int s = 0; s < 20; ++s) {
    const ChoiMatrix choi = choi_from_kraus(random_channel(q3, rng));
    const CMat reduced = partial_trace_second(choi.matrix, 3, 3);
    CHECK(oracle::max_abs(reduced - CMat::Identity(3, 3)) < 1e-10);
    const ChoiMatrix lossy = choi_from_kraus(random_channel(q3, rng, TraceMode::decreasing));
    CHECK(max_eigenvalue(partial_trace_second(lossy.matrix, 3, 3)) <= 1.0 + 1e-10);
  }

  Rng a(42);
  Rng b(42);
  const TransMatrix ta = random_generalized(q3, a);
  const TransMatrix tb = random_generalized(q3, b);
  CHECK(ta.entries() == tb.entries());
}

TEST_CASE("affine dimension from random states") {
  for (Index d : {2, 3}) {
    const Model m = quantum_model(d);
    Rng rng(9);
    const Index count = d * d * d * d;
    const Weight base = encode_state(random_state(m, rng), m);
    Mat centered(m.size(), count);
    for (Index k = 0; k < count; ++k) centered.col(k) = encode_state(random_state(m, rng), m).coords() - base.coords();
    CHECK(numerical_rank(centered, 1e-9) == d * d - 1);
  }
}

TEST_CASE("rotated frames") {
  const Model q2 = quantum_model(2);
  const Model r = rotated_frame_model(q2, 99);
  CHECK(r.affine_dim() == 3);
  Rng rng(4);
  const CMat rho = random_state(q2, rng);
  CHECK(oracle::max_abs(decode_state(encode_state(rho, r), r) - rho) < 1e-11);
  CHECK(adm(r) == adm(q2));

  std::vector<CMat> degenerate = q2.frame();
  degenerate[3] = degenerate[1];
  CHECK(code_of([&] { Model::from_frame(ModelKind::quantum, false, degenerate, 2, "bad"); }) ==
        ErrorCode::FrameDegenerate);
}
