#include "doctest.h"

#include "oracles.hpp"
#include "optkit/faithful.hpp"
#include "optkit/random.hpp"

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

std::vector<TransMatrix> generalized_samples(const Model& m, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<TransMatrix> out;
  for (int s = 0; s < count; ++s) out.push_back(random_generalized(m, rng));
  return out;
}

}  // namespace

TEST_CASE("F matrix of the maximally entangled qubit pair") {
  const Model q2 = quantum_model(2);
  const FaithfulState fs = f_matrix(max_entangled_joint(q2));
  Mat expected(4, 4);
  expected << 1, .5, .5, .5,
              .5, .5, .25, .25,
              .5, .25, 0, .25,
              .5, .25, .25, .5;
  CHECK((fs.f() - expected).norm() < 1e-15);
  CHECK(fs.symmetric());
  CHECK(std::isfinite(fs.condition_number()));
  CHECK(fs.condition_number() < 100.0);
  CHECK((fs.f() * fs.f_inv() - Mat::Identity(4, 4)).norm() < 1e-13);

  // A local map on the first side turns F into M F.
  Rng rng(12);
  for (int s = 0; s < 10; ++s) {
    const TransMatrix a = random_channel_matrix(q2, rng);
    CHECK((joint_apply(Side::first, a, fs.joint()).entries() - a.entries() * fs.f()).norm() < 1e-13);
  }
}

TEST_CASE("F matrix rejects unfaithful and asymmetric states") {
  const Model q2 = quantum_model(2);
  const Weight mixed = encode_state(CMat::Identity(2, 2) / 2.0, q2);
  CHECK(code_of([&] { f_matrix(JointWeight::product(mixed, mixed)); }) == ErrorCode::NotFaithful);

  Mat skewed = max_entangled_joint(q2).entries();
  skewed(1, 2) += 1e-3;
  CHECK(code_of([&] { f_matrix(JointWeight(skewed)); }) == ErrorCode::NotSymmetric);
  const FaithfulState loose = f_matrix(JointWeight(skewed), false);
  CHECK_FALSE(loose.symmetric());
  CHECK(code_of([&] { f_matrix(JointWeight(Mat::Identity(4, 3))); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("twin") {
  const Model q2 = quantum_model(2);
  const FaithfulState fs = f_matrix(max_entangled_joint(q2));
  CHECK((twin(TransMatrix::identity(4), fs).entries() - Mat::Identity(4, 4)).norm() < 1e-12);

  SUBCASE("measure-and-prepare swaps its effect and output") {
    // rho -> <1|rho|1> |0><0|  has twin  rho -> <0|rho|0> |1><1|
    const TransMatrix x = encode_channel(KrausSet{oracle::outer(2, 0, 1)}, q2);
    const TransMatrix expected = encode_channel(KrausSet{oracle::outer(2, 1, 0)}, q2);
    CHECK((twin(x, fs) - expected).entries().norm() < 1e-12);
  }

  SUBCASE("erase channel is its own twin") {
    const TransMatrix mix = encode_channel(oracle::erase_channel(2), q2);
    CHECK((twin(mix, fs) - mix).entries().norm() < 1e-12);
  }

  SUBCASE("Kraus transposition on random channels") {
    for (Index d : {2, 3}) {
      const Model m = quantum_model(d);
      const FaithfulState f = f_matrix(max_entangled_joint(m));
      Rng rng(101);
      for (int s = 0; s < 50; ++s) {
        const KrausSet kraus = random_channel(m, rng, s % 3 ? TraceMode::preserving : TraceMode::decreasing);
        const TransMatrix a = encode_channel(kraus, m);
        const TransMatrix oracle = encode_channel(oracle::transpose_kraus(kraus), m);
        CHECK((twin(a, f) - oracle).entries().norm() < 1e-10);
        const ChoiMatrix swapped = transpose_channel(choi_from_kraus(kraus));
        CHECK(oracle::max_abs(swapped.matrix - choi_from_kraus(oracle::transpose_kraus(kraus)).matrix) < 1e-13);
        CHECK((a.entries() * f.f() - f.f() * twin(a, f).entries().transpose()).norm() < 1e-10);
      }
    }
  }
  CHECK(code_of([&] { twin(TransMatrix::identity(3), fs); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("generalized adjoint axioms") {
  const Model q2 = quantum_model(2);
  const FaithfulState fs = f_matrix(max_entangled_joint(q2));

  Rng rng(7);
  std::vector<TransMatrix> channels;
  for (int s = 0; s < 100; ++s) channels.push_back(random_channel_matrix(q2, rng));
  const AdjointReport r = check_generalized_adjoint(fs, channels);
  CHECK(r.all_pass());
  CHECK(r.pairs == 100 * 100);
  CHECK(r.max_additivity < 1e-9);
  CHECK(r.max_involution < 1e-9);
  CHECK(r.max_antihomomorphism < 1e-9);

  // With the identity in the sample set the product rule holds exactly on it.
  const TransMatrix a = channels.front();
  const TransMatrix id = TransMatrix::identity(4);
  CHECK((twin(compose(id, a), fs) - compose(twin(a, fs), id)).entries().norm() == 0.0);

  const std::vector<TransMatrix> generalized = generalized_samples(quantum_model(3), 40, 8);
  CHECK(check_generalized_adjoint(f_matrix(max_entangled_joint(quantum_model(3))), generalized).all_pass());
}

TEST_CASE("adjoint axioms on an asymmetric F are reported one by one") {
  const Model q2 = quantum_model(2);
  Mat skewed = max_entangled_joint(q2).entries();
  skewed(1, 2) += 0.05;
  const FaithfulState fs = f_matrix(JointWeight(skewed), false);
  const std::vector<TransMatrix> samples = generalized_samples(q2, 20, 3);
  CHECK(code_of([&] { check_generalized_adjoint(fs, samples); }) == ErrorCode::AsymmetricState);

  const AdjointReport r = check_generalized_adjoint(fs, samples, 1e-9, true);
  CHECK(r.antihomomorphism_pass);
  CHECK(r.additivity_pass);
  CHECK_FALSE(r.involution_pass);
  CHECK_FALSE(r.all_pass());
}

TEST_CASE("preparation map") {
  const Model q2 = quantum_model(2);
  const FaithfulState fs = f_matrix(max_entangled_joint(q2));
  const CMat id = CMat::Identity(2, 2);
  CMat plus = CMat::Constant(2, 2, 0.5);

  struct Case {
    CMat omega;
    Vec expected;
  };
  Vec mixed(4), zero(4), plus_w(4);
  mixed << 1, .5, .5, .5;
  zero << 1, .5, .5, 1;
  plus_w << 1, 1, .5, .5;
  for (const Case& c : {Case{id / 2.0, mixed}, Case{oracle::outer(2, 0, 0), zero}, Case{plus, plus_w}}) {
    const Weight w = encode_state(c.omega, q2);
    const PreparationMap prep = find_preparation_map(w, q2, fs);
    CHECK(prep.probability == doctest::Approx(0.5).epsilon(1e-12));
    const Weight steered = local_weight(joint_apply(Side::first, prep.map, fs.joint()), Party::two);
    CHECK((steered.normalized().coords() - c.expected).norm() < 1e-12);
  }

  const Model q3 = quantum_model(3);
  const FaithfulState fs3 = f_matrix(max_entangled_joint(q3));
  Rng rng(5);
  for (int s = 0; s < 20; ++s) {
    const PreparationMap prep = find_preparation_map(encode_state(random_state(q3, rng), q3), q3, fs3);
    CHECK(std::abs(prep.probability - 1.0 / 3.0) < 1e-12);
  }

  CHECK(code_of([&] { find_preparation_map(encode_state(id, q2), q2, fs); }) == ErrorCode::NotNormalized);
  const Model c2 = classical_model(2);
  CHECK(code_of([&] { find_preparation_map(encode_state(id / 2.0, c2), c2, fs); }) == ErrorCode::UnsupportedModel);
}
