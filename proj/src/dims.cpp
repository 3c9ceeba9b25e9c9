#include "optkit/dims.hpp"

#include <algorithm>
#include <sstream>

#include "optkit/norms.hpp"
#include "optkit/random.hpp"

namespace optkit {

Index adm(const Model& m, std::uint64_t seed) {
  const Index n = m.native_dim();
  const Index count = 2 * m.size();
  std::vector<Weight> states;
  states.reserve(count + n);
  for (Index k = 0; k < n; ++k) {
    CMat basis = CMat::Zero(n, n);
    basis(k, k) = 1.0;
    states.push_back(encode_state(basis, m));
  }
  Rng rng(seed);
  for (Index k = 0; k < count; ++k) states.push_back(encode_state(random_state(m, rng), m));

  Mat centered(m.size(), static_cast<Index>(states.size()) - 1);
  for (Index k = 1; k < static_cast<Index>(states.size()); ++k) {
    centered.col(k - 1) = states[k].coords() - states[0].coords();
  }
  return numerical_rank(centered, tol::adm_rank);
}

void verify_witness(const DiscriminationWitness& witness, const Model& m, double* max_deviation) {
  if (witness.states.size() != witness.tests.size() || witness.states.empty()) {
    throw Error(ErrorCode::WitnessInvalid, "witness needs as many tests as states");
  }
  const double tolerance = 1e-12;
  double worst = 0.0;
  Propensity total = Propensity(Vec::Zero(m.size()));
  for (std::size_t i = 0; i < witness.tests.size(); ++i) {
    if (!is_predictable(witness.tests[i], m, tolerance)) {
      std::ostringstream msg;
      msg << "test " << i << " is not predictable";
      throw Error(ErrorCode::WitnessInvalid, msg.str());
    }
    total = total + witness.tests[i];
    for (std::size_t j = 0; j < witness.states.size(); ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      const double dev = std::abs(probability(witness.tests[i], witness.states[j]) - expected);
      worst = std::max(worst, dev);
      if (dev > tolerance) {
        std::ostringstream msg;
        msg << "l_" << i << "(omega_" << j << ") deviates from " << expected << " by " << dev;
        throw Error(ErrorCode::WitnessInvalid, msg.str());
      }
    }
  }
  const double residual = (total - Propensity::unit(m.size())).coords().cwiseAbs().maxCoeff();
  worst = std::max(worst, residual);
  if (residual > tolerance) {
    std::ostringstream msg;
    msg << "tests do not sum to the unit propensity (residual " << residual << ")";
    throw Error(ErrorCode::WitnessInvalid, msg.str());
  }
  if (max_deviation != nullptr) *max_deviation = worst;
}

IdimResult idim(const Model& m, DiscriminationWitness witness) {
  IdimResult r;
  verify_witness(witness, m, &r.max_deviation);
  r.value = static_cast<Index>(witness.states.size());
  r.witness = std::move(witness);
  return r;
}

IdimResult idim(const Model& m) {
  const Index n = m.native_dim();
  DiscriminationWitness w;
  for (Index k = 0; k < n; ++k) {
    CMat projector = CMat::Zero(n, n);
    projector(k, k) = 1.0;
    w.states.push_back(encode_state(projector, m));
    w.tests.push_back(encode_effect(projector, m));
  }
  IdimResult r = idim(m, std::move(w));
  if (r.value != m.known_idim()) {
    std::ostringstream msg;
    msg << "basis witness has " << r.value << " states, model declares idim " << m.known_idim();
    throw Error(ErrorCode::WitnessInvalid, msg.str());
  }
  return r;
}

Index classical_idim_search(const Model& m) {
  const Index n = m.native_dim();
  if (!m.classical() || n > 4) {
    throw Error(ErrorCode::UnsupportedModel, "exhaustive idim search covers classical models with n <= 4");
  }
  // Candidate states as support bitmasks: vertices and edge midpoints.
  std::vector<unsigned> supports;
  for (Index a = 0; a < n; ++a) supports.push_back(1u << a);
  for (Index a = 0; a < n; ++a) {
    for (Index b = a + 1; b < n; ++b) supports.push_back((1u << a) | (1u << b));
  }
  const std::size_t count = supports.size();
  Index best = 0;
  for (unsigned long subset = 1; subset < (1ul << count); ++subset) {
    unsigned used = 0;
    Index size = 0;
    bool disjoint = true;
    for (std::size_t i = 0; i < count && disjoint; ++i) {
      if (!(subset & (1ul << i))) continue;
      disjoint = (used & supports[i]) == 0;
      used |= supports[i];
      ++size;
    }
    if (disjoint) best = std::max(best, size);
  }
  return best;
}

Index AuditReport::violations() const {
  return static_cast<Index>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

const Check& AuditReport::check(const std::string& name) const {
  for (const Check& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::InvalidArgument, "no audit check named " + name);
}

namespace {

Check compare(std::string name, double lhs, const char* relation, double rhs) {
  Check c{std::move(name), false, lhs, rhs, relation};
  const std::string rel = relation;
  if (rel == "<=") c.pass = lhs <= rhs;
  else if (rel == ">=") c.pass = lhs >= rhs;
  else c.pass = lhs == rhs;
  return c;
}

}  // namespace

AuditReport audit(const Model& m) {
  const Model pair = composite_model(m, m);
  AuditReport r;
  r.model = m.name();
  r.adm_single = adm(m);
  r.adm_pair = adm(pair);
  const IdimResult single = idim(m);
  const IdimResult joint = idim(pair);
  r.idim_single = single.value;
  r.idim_pair = joint.value;
  r.witness_deviation = std::max(single.max_deviation, joint.max_deviation);

  const auto a = static_cast<double>(r.adm_single);
  const auto a2 = static_cast<double>(r.adm_pair);
  const auto i1 = static_cast<double>(r.idim_single);
  const auto i2 = static_cast<double>(r.idim_pair);
  r.checks.push_back(compare("bound_upper", a2, "<=", a * a + 2.0 * a));
  r.checks.push_back(compare("bound_lower", a2, ">=", a * (a + 2.0)));
  r.checks.push_back(compare("pair_equality", a2, "==", a * (a + 2.0)));
  r.checks.push_back(compare("quadratic_law", a, "==", i1 * i1 - 1.0));
  r.checks.push_back(compare("tensor_rule", i2, "==", i1 * i1));
  r.checks.push_back(compare("discriminating_relation", a, "==", i2 - 1.0));
  r.pair_idim_monotone = i2 >= i1 * i1;
  return r;
}

}  // namespace optkit
