#include "optkit/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "optkit/dims.hpp"
#include "optkit/faithful.hpp"
#include "optkit/gns.hpp"
#include "optkit/random.hpp"
#include "optkit/serialize.hpp"
#include "optkit/tomography.hpp"

namespace optkit {

namespace {

// Bad input that is not tied to a location inside a JSON document.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<double> tol;
  std::string json_out;
  std::optional<std::uint64_t> seed;
  std::string model;
  std::string trans;
  std::size_t samples = 100;
  std::uint64_t shots = 0;
  std::string counts_in;
  std::string counts_out;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what + " is not valid JSON: " + e.what());
  }
}

// Inline JSON when the argument starts with '{', otherwise a file path.
Json load_inline_or_file(const std::string& arg, const std::string& what) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return parse_json(arg, what);
  return parse_json(read_file(arg), what + " file " + arg);
}

std::uint64_t default_seed() {
  const char* env = std::getenv("OPTKIT_SEED");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0') throw InputError("OPTKIT_SEED must be a non-negative integer");
  return v;
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidState:
    case ErrorCode::InvalidChannel:
    case ErrorCode::InvalidEffect:
    case ErrorCode::UnsupportedModel:
    case ErrorCode::UnsupportedComposite:
    case ErrorCode::InvalidArgument:
      return true;
    default:
      return false;
  }
}

ReportCheck at_most(std::string name, double measured, double bound) {
  return {std::move(name), std::isfinite(measured) && measured <= bound, measured, bound};
}

ReportCheck at_least(std::string name, double measured, double bound) {
  return {std::move(name), std::isfinite(measured) && measured >= bound, measured, bound};
}

ReportCheck equal(std::string name, double measured, double bound) {
  return {std::move(name), measured == bound, measured, bound};
}

FaithfulState faithful_for(const Model& m) { return f_matrix(max_entangled_joint(m)); }

void run_audit(const Model& m, const Options&, ReportEnvelope& env) {
  const AuditReport r = audit(m);
  env.tolerances = {{"adm_rank", tol::adm_rank}, {"witness", 1e-12}};
  for (const Check& c : r.checks) env.checks.push_back({c.name, c.pass, c.measured, c.bound});
  env.result = audit_to_json(r);
}

void run_gns(const Model& m, const Options& o, ReportEnvelope& env) {
  const double tol = o.tol.value_or(1e-9);
  const FaithfulState fs = faithful_for(m);
  const GnsSpace g = build_gns(fs);
  const NullIdealReport nr = null_ideal_characterization(g, &m);
  env.tolerances = {{"check", tol}, {"psd", kGnsPsdTolerance}, {"rank", tol::rank}, {"null_ideal", 1e-8}};

  Rng rng(env.seed);
  double homomorphism = 0.0;
  double adjoint = 0.0;
  double left_ideal = 0.0;
  const Vec identity_class = vector_of(TransMatrix::identity(m.size()), g);
  Mat cyclic(g.dim, static_cast<Index>(o.samples));
  for (std::size_t s = 0; s < o.samples; ++s) {
    const TransMatrix a = random_generalized(m, rng);
    const TransMatrix b = random_generalized(m, rng);
    const TransMatrix c = random_generalized(m, rng);
    const Mat ra = represent(a, g);
    homomorphism = std::max(homomorphism, (represent(compose(a, b), g) - ra * represent(b, g)).norm());
    adjoint = std::max(adjoint, std::abs(gns_inner(compose(twin(c, fs), a), b, fs) - gns_inner(a, compose(c, b), fs)));
    left_ideal = std::max(left_ideal, left_ideal_residual(a, g));
    cyclic.col(static_cast<Index>(s)) = ra * identity_class;
  }
  const Index expected_dim = adm(m) + 1;
  env.checks.push_back(at_least("gram_psd", g.min_eigenvalue, -kGnsPsdTolerance));
  env.checks.push_back(equal("rank", static_cast<double>(g.dim), static_cast<double>(expected_dim)));
  env.checks.push_back(at_most("homomorphism", homomorphism, tol));
  env.checks.push_back(at_most("adjoint_property", adjoint, tol));
  env.checks.push_back(at_most("left_ideal", left_ideal, tol));
  env.checks.push_back(equal("cyclic_span", static_cast<double>(o.samples ? numerical_rank(cyclic, 1e-9) : 0),
                             static_cast<double>(g.dim)));
  env.checks.push_back({"null_ideal", nr.characterization_pass, nr.max_null_residual, 1e-8});

  Json result;
  result["dim"] = g.dim;
  result["algebra_size"] = g.algebra_size();
  result["min_eigenvalue"] = g.min_eigenvalue;
  result["negative_eigenvalues"] = (g.eigenvalues.array() < -kGnsPsdTolerance).count();
  result["samples"] = o.samples;
  Json null_ideal;
  null_ideal["null_dim"] = nr.null_dim;
  null_ideal["annihilator_dim"] = nr.annihilator_dim;
  null_ideal["max_null_residual"] = nr.max_null_residual;
  null_ideal["max_annihilator_leak"] = nr.max_annihilator_leak;
  null_ideal["twin_null_dim"] = nr.twin_null_dim;
  null_ideal["trivial_dim"] = nr.trivial_dim;
  null_ideal["max_twin_correspondence_gap"] = nr.max_twin_correspondence_gap;
  null_ideal["boundary_dim"] = nr.boundary_dim;
  if (nr.witness_norm) {
    Json w;
    w["norm"] = *nr.witness_norm;
    w["twin_norm"] = *nr.witness_twin_norm;
    w["row0_norm"] = *nr.witness_row0_norm;
    null_ideal["boundary_witness"] = std::move(w);
  }
  result["null_ideal"] = std::move(null_ideal);
  env.result = std::move(result);
}

LoadedTransformation load_transformation(const Options& o, const Model& m) {
  if (o.trans.empty()) throw InputError("--trans is required");
  return parse_transformation_spec(load_inline_or_file(o.trans, "transformation"), m);
}

void run_twin(const Model& m, const Options& o, ReportEnvelope& env) {
  const double tol = o.tol.value_or(1e-10);
  const LoadedTransformation t = load_transformation(o, m);
  const FaithfulState fs = faithful_for(m);
  const TransMatrix tw = twin(t.bloch, fs);
  env.tolerances = {{"check", tol}};
  env.checks.push_back(
      at_most("defining_identity", (t.bloch.entries() * fs.f() - fs.f() * tw.entries().transpose()).norm(), tol));
  env.checks.push_back(at_most("involution", (twin(tw, fs) - t.bloch).entries().norm(), tol));
  if (t.choi) {
    const TransMatrix oracle = encode_channel(transpose_channel(*t.choi), m);
    env.checks.push_back(at_most("kraus_transpose", (oracle - tw).entries().norm(), tol));
  }
  Json result;
  result["format"] = t.format;
  result["twin"] = real_matrix_to_json(tw.entries());
  env.result = std::move(result);
}

void run_tomo(const Model& m, const Options& o, ReportEnvelope& env) {
  const double tol = o.tol.value_or(1e-10);
  const double noise_factor = 5.0;
  const LoadedTransformation t = load_transformation(o, m);
  const FaithfulState fs = faithful_for(m);
  const FramePovm povm = frame_povm(m);
  const OutcomeDistribution dist = outcome_distribution(t.bloch, m, povm);
  env.tolerances = {{"check", tol}, {"normalization", 1e-12}, {"noise_factor", noise_factor}};
  env.checks.push_back(at_most("normalization", std::abs(dist.probabilities.sum() + dist.no_click - 1.0), 1e-12));

  Json result;
  if (o.shots == 0 && o.counts_in.empty()) {
    const TransMatrix estimate = reconstruct(frequencies_to_table(dist.probabilities, povm), fs);
    const double err = (estimate - t.bloch).entries().norm();
    env.checks.push_back(at_most("exact_round_trip", err, tol));
    result["path"] = "exact";
    result["frobenius"] = err;
    result["estimate"] = real_matrix_to_json(estimate.entries());
    env.result = std::move(result);
    return;
  }

  CountTable counts;
  if (!o.counts_in.empty()) {
    counts = count_table_from_json(load_inline_or_file(o.counts_in, "count table"));
    if (counts.counts.rows() != m.size()) throw InputError("count table does not match the model size");
  } else {
    counts = simulate_counts(t.bloch, fs, m, o.shots, env.seed);
  }
  if (!o.counts_out.empty()) {
    std::ofstream f(o.counts_out, std::ios::binary);
    if (!f) throw InputError("cannot write " + o.counts_out);
    f << dump_stable(count_table_to_json(counts)) << '\n';
  }
  const Reconstruction rec = reconstruct_from_counts(counts, fs, m, &t.bloch);
  const double expected = std::sqrt(expected_squared_error(t.bloch, fs, m, counts.shots));
  env.checks.push_back(at_most("shot_noise", rec.errors.frobenius.value_or(NAN), noise_factor * expected));
  result["path"] = "sampled";
  result["shots"] = counts.shots;
  result["no_click"] = counts.no_click;
  result["frobenius"] = rec.errors.frobenius.value_or(NAN);
  result["expected_rms_error"] = expected;
  result["trace_distance"] = rec.errors.trace_distance.value_or(NAN);
  result["choi_min_eigenvalue"] = rec.errors.choi_min_eigenvalue;
  result["physical"] = rec.errors.physical;
  result["estimate"] = real_matrix_to_json(rec.estimate.entries());
  env.result = std::move(result);
}

void run_pair(const Model& m, const Options& o, ReportEnvelope& env) {
  const double tol = o.tol.value_or(1e-9);
  const FaithfulState fs = faithful_for(m);
  const GnsSpace g = build_gns(fs);
  env.tolerances = {{"check", tol}, {"probability", 1e-12}};
  Rng rng(env.seed);
  const double expected_probability = 1.0 / static_cast<double>(m.native_dim());
  double deviation = 0.0;
  double probability_gap = 0.0;
  for (std::size_t s = 0; s < o.samples; ++s) {
    const Weight w = encode_state(random_state(m, rng), m);
    const TransMatrix a = random_channel_matrix(m, rng);
    const double direct = probability(a.propensity(), w);
    deviation = std::max(deviation, std::abs(direct - pairing(w, a, g, m)));
    probability_gap =
        std::max(probability_gap, std::abs(find_preparation_map(w, m, fs).probability - expected_probability));
  }
  env.checks.push_back(at_most("pairing", deviation, tol));
  env.checks.push_back(at_most("preparation_probability", probability_gap, 1e-12));
  Json result;
  result["samples"] = o.samples;
  result["max_deviation"] = deviation;
  result["preparation_probability"] = expected_probability;
  env.result = std::move(result);
}

using Runner = std::function<void(const Model&, const Options&, ReportEnvelope&)>;

}  // namespace

int execute(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Operational transposition, GNS and dimension audits for finite models", "optkit"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_option("--tol", o.tol, "Tolerance for the command's numerical checks");
  app.add_option("--json", o.json_out, "Write the report to this file instead of stdout");
  app.add_option("--seed", o.seed, "Seed for random sampling (default: $OPTKIT_SEED or 1)");

  std::vector<std::pair<CLI::App*, Runner>> commands;
  const auto add = [&](const char* name, const char* help, Runner run) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--model", o.model, "Model spec: inline JSON or a file path")->required();
    commands.emplace_back(sub, std::move(run));
    return sub;
  };
  add("audit", "Dimension audit of a model and its two-copy composite", run_audit);
  add("gns", "Build the GNS space of the maximally entangled state", run_gns)
      ->add_option("--samples", o.samples, "Random elements per property check");
  add("twin", "Operational transposition of a transformation", run_twin)
      ->add_option("--trans", o.trans, "Transformation spec: inline JSON or a file path")
      ->required();
  CLI::App* tomo = add("tomo", "Process tomography through the faithful state", run_tomo);
  tomo->add_option("--trans", o.trans, "Transformation spec: inline JSON or a file path")->required();
  tomo->add_option("--shots", o.shots, "Number of shots (0: exact probabilities)");
  tomo->add_option("--counts", o.counts_in, "Reconstruct from this count table instead of sampling");
  tomo->add_option("--counts-out", o.counts_out, "Write the sampled count table to this file");
  add("pair", "Recover state probabilities from the GNS scalar product", run_pair)
      ->add_option("--samples", o.samples, "Random (state, channel) pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    const Json spec = load_inline_or_file(o.model, "model");
    const Model m = parse_model_spec(spec);
    ReportEnvelope env;
    env.model = canonical_model_spec(spec);
    env.seed = o.seed ? *o.seed : default_seed();
    for (auto& [sub, run] : commands) {
      if (!sub->parsed()) continue;
      env.command = sub->get_name();
      run(m, o, env);
    }
    const std::string text = dump_stable(env.to_json()) + "\n";
    if (o.json_out.empty()) {
      out << text;
    } else {
      std::ofstream f(o.json_out, std::ios::binary);
      if (!f) throw InputError("cannot write " + o.json_out);
      f << text;
    }
    for (const ReportCheck& c : env.checks) {
      if (!c.pass) err << "violation: " << c.name << " (measured " << c.measured << ", bound " << c.bound << ")\n";
    }
    return env.violations() == 0 ? kExitOk : kExitViolations;
  } catch (const SchemaError& e) {
    err << "schema error at " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_input_error(e.code()) ? kExitInput : kExitViolations;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitViolations;
  }
}

}  // namespace optkit
