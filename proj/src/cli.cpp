// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orbitkit/cli.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "orbitkit/affiliation.hpp"
#include "orbitkit/config.hpp"
#include "orbitkit/error.hpp"
#include "orbitkit/intertwiner.hpp"
#include "orbitkit/invariants.hpp"
#include "orbitkit/matrix_file.hpp"
#include "orbitkit/random.hpp"
#include "orbitkit/spectral.hpp"
#include "orbitkit/suite.hpp"

namespace orbitkit {
namespace {

using nlohmann::json;

struct Options {
  std::string file_a;
  std::string file_b;
  double cluster_tol = -1.0;
  int eig = 0;
  double eps = 0.0;
  int order = -1;
  double same_tol = 1e-10;
  std::string alpha;
  std::string spectrum;
  int dim = 0;
  std::uint64_t seed = 0;
  double perturb = 0.0;
  std::string output;
  int count = 200;
  unsigned threads = 0;
};

// Loaded input with its digest recorded in the report.
MatrixFile load_input(const std::string& path, const Tolerances& tol, RunReport& report) {
  const std::string text = read_text_file(path);
  report.inputs.push_back(digest(text));
  return parse_matrix_file(text, tol, path);
}

HermitianOperator load_operator(const std::string& path, const Tolerances& tol, RunReport& report) {
  const MatrixFile file = load_input(path, tol, report);
  try {
    return HermitianOperator(file.entries, tol);
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormatError, path + ": not a Hermitian operator: " + e.what());
  }
}

OrthProjection load_projection(const std::string& path, const Tolerances& tol, RunReport& report) {
  const MatrixFile file = load_input(path, tol, report);
  try {
    return OrthProjection::from_matrix(file.entries, tol);
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormatError, path + ": not an orthogonal projection: " + e.what());
  }
}

void write_output(const std::string& path, MatrixFile file, RunReport& report) {
  save_matrix_file(path, file);
  report.files.push_back(path);
}

json complex_list(const std::vector<Complex>& values) {
  json out = json::array();
  for (const Complex& z : values) out.push_back({z.real(), z.imag()});
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  for (std::string item; std::getline(stream, item, ',');) out.push_back(item);
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(value))
    throw Error(ErrorCode::kInvalidArgument, "cannot parse " + what + " \"" + text + "\"");
  return value;
}

void certificate_outputs(const IntertwinerCertificate& cert, RunReport& report) {
  const ChainCheck chain = check_chain(cert);
  json& o = report.outputs;
  o["epsilon"] = cert.epsilon;
  o["delta_j"] = cert.delta_j;
  o["delta"] = cert.delta;
  o["delta_sum"] = cert.delta_sum();
  o["hs_bound"] = cert.hs_bound();
  o["total_bound"] = cert.total_bound();
  o["op_norm_dev"] = cert.op_norm_dev;
  o["hs_norm_dev"] = cert.hs_norm_dev;
  o["conjugation_residual"] = cert.conjugation_residual;
  o["unitarity_defect"] = cert.unitarity_defect;
  o["locality_defect"] = cert.locality_defect;
  o["op_le_hs"] = chain.op_le_hs;
  o["hs_le_hs_bound"] = chain.hs_le_hs_bound;
  o["delta_le_sum"] = chain.delta_le_sum;
  o["below_epsilon"] = chain.below_epsilon;
  o["bound_ok"] = cert.bound_ok;
}

void cmd_decompose(const Options& opt, Tolerances tol, RunReport& report) {
  if (opt.cluster_tol >= 0.0) tol.cluster_tol = opt.cluster_tol;
  const HermitianOperator rho = load_operator(opt.file_a, tol, report);
  const SpectralDecomposition decomp = decompose(rho, tol);
  report.outputs["dim"] = rho.dim();
  report.outputs["eigenvalues"] = decomp.eigenvalues;
  report.outputs["multiplicities"] = decomp.multiplicities;
  report.outputs["total_rank"] = decomp.total_rank;
  report.outputs["kernel_rank"] = decomp.kernel.rank();
  report.outputs["cluster_tol"] = tol.cluster_tol;
  report.outputs["reconstruction_residual"] =
      op_norm(reconstruct(decomp, tol).matrix() - rho.matrix(), tol.max_sweeps);
}

void cmd_project(const Options& opt, const Tolerances& tol, RunReport& report) {
  const HermitianOperator rho = load_operator(opt.file_a, tol, report);
  const SpectralDecomposition decomp = decompose(rho, tol);
  if (opt.eig < 0 || opt.eig > decomp.blocks())
    throw Error(ErrorCode::kInvalidArgument, "--eig must lie in 0.." + std::to_string(decomp.blocks()));
  const OrthProjection p = lagrange_projector(rho, decomp, opt.eig, tol);
  report.outputs["eig"] = opt.eig;
  report.outputs["eigenvalue"] = decomp.node(opt.eig);
  report.outputs["rank"] = p.rank();
  report.outputs["eigenspace_deviation"] =
      op_norm(p.matrix() - decomp.projection(opt.eig).matrix(), tol.max_sweeps);
  if (!opt.output.empty()) {
    MatrixFile file{p.matrix(), MatrixKind::kProjection, {{"source", "lagrange projector"}, {"eig", opt.eig}}};
    write_output(opt.output, std::move(file), report);
  }
}

void cmd_affiliate(const Options& opt, const Tolerances& tol, RunReport& report) {
  const OrthProjection e = load_projection(opt.file_a, tol, report);
  const OrthProjection f = load_projection(opt.file_b, tol, report);
  const ProximityCheck prox = proximity_check(e, f);
  const ProjectionPairSplit parts = split(e, f, tol);
  report.outputs["rank"] = e.rank();
  report.outputs["meet_rank"] = parts.q.rank();
  report.outputs["hs_sq"] = prox.hs_sq;
  report.outputs["proximity_satisfied"] = prox.satisfied;
  const AffiliatedBases b = affiliate(parts.e_prime, parts.f_prime, tol);
  double cross = 0.0;
  double recon = 0.0;
  for (int j = 0; j < b.size(); ++j) {
    for (int k = 0; k < b.size(); ++k) {
      const Complex ip = b.f.col(j).dot(b.e.col(k));
      cross = std::max(cross, j == k ? std::abs(ip.imag()) : std::abs(ip));
    }
    const CVector rebuilt = b.alpha[j] * b.e.col(j) + b.beta[j] * b.e_perp.col(j);
    recon = std::max(recon, (b.f.col(j) - rebuilt).norm());
  }
  report.outputs["alpha"] = complex_list(b.alpha);
  report.outputs["beta"] = complex_list(b.beta);
  report.outputs["overlaps"] = b.overlaps;
  report.outputs["cross_orthogonality"] = cross;
  report.outputs["reconstruction_residual"] = recon;
}

void cmd_intertwine_proj(const Options& opt, const Tolerances& tol, RunReport& report) {
  const OrthProjection e = load_projection(opt.file_a, tol, report);
  const OrthProjection f = load_projection(opt.file_b, tol, report);
  const IntertwinerCertificate cert = projection_intertwiner(e, f, opt.eps, tol);
  certificate_outputs(cert, report);
  if (!opt.output.empty())
    write_output(opt.output, {cert.v, MatrixKind::kUnitary, {{"source", "intertwine-proj"}}}, report);
}

void cmd_intertwine(const Options& opt, const Tolerances& tol, RunReport& report) {
  const HermitianOperator rho = load_operator(opt.file_a, tol, report);
  const HermitianOperator rho_prime = load_operator(opt.file_b, tol, report);
  const IntertwinerCertificate cert = orbit_intertwiner(rho, rho_prime, opt.eps, tol);
  certificate_outputs(cert, report);
  if (!opt.output.empty())
    write_output(opt.output, {cert.v, MatrixKind::kUnitary, {{"source", "intertwine"}}}, report);
}

void cmd_distance(const Options& opt, const Tolerances& tol, RunReport& report) {
  const OrthProjection p = load_projection(opt.file_a, tol, report);
  const OrthProjection r = load_projection(opt.file_b, tol, report);
  const ProjectiveDistances d = projective_distances(p, r, tol);
  report.outputs["geodesic"] = d.geodesic;
  report.outputs["trace_dist"] = d.trace_dist;
  report.outputs["relation_defect"] = d.relation_defect;
}

void cmd_moments(const Options& opt, const Tolerances& tol, RunReport& report) {
  const HermitianOperator rho = load_operator(opt.file_a, tol, report);
  const int order = opt.order >= 0 ? opt.order : default_moment_order(rho, tol);
  const MomentSignature sig = moment_signature(rho, order, tol);
  json atoms = json::array();
  for (const Atom& atom : sig.atoms) atoms.push_back({atom.location, atom.weight, atom.multiplicity});
  report.outputs["order"] = sig.order;
  report.outputs["moments"] = sig.moments;
  report.outputs["atoms"] = std::move(atoms);
  report.outputs["duality_defect"] = sig.duality_defect();
}

void cmd_same_orbit(const Options& opt, const Tolerances& tol, RunReport& report) {
  const HermitianOperator a = load_operator(opt.file_a, tol, report);
  const HermitianOperator b = load_operator(opt.file_b, tol, report);
  const int order = opt.order >= 0 ? opt.order
                                   : std::max(default_moment_order(a, tol), default_moment_order(b, tol));
  const SameOrbitResult r = same_orbit(a, b, order, opt.same_tol, tol);
  report.outputs["order"] = order;
  report.outputs["tol"] = opt.same_tol;
  report.outputs["same"] = r.same;
  report.outputs["moments_agree"] = r.moments_agree;
  report.outputs["spectra_agree"] = r.spectra_agree;
  report.outputs["anomaly"] = r.anomaly;
}

void cmd_gen_example(const Options& opt, const Tolerances& tol, RunReport& report) {
  std::vector<Complex> alpha;
  for (const std::string& item : split_list(opt.alpha)) alpha.emplace_back(parse_double(item, "alpha"));
  const ExamplePair ex = example_pair_generator(opt.dim, alpha, tol);
  const json meta = {{"seed", opt.seed}, {"alpha", opt.alpha}};
  const std::string prefix = opt.output.empty() ? "example" : opt.output;
  write_output(prefix + "_E.json", {ex.e.matrix(), MatrixKind::kProjection, meta}, report);
  write_output(prefix + "_F.json", {ex.f.matrix(), MatrixKind::kProjection, meta}, report);
  report.outputs["dim"] = opt.dim;
  report.outputs["rank"] = ex.e.rank();
  report.outputs["efe_spectrum"] = ex.expected.efe_spectrum;
  report.outputs["hs_sq"] = ex.expected.hs_sq;
  report.outputs["op_norm"] = ex.expected.op_norm;
}

void cmd_gen_orbit_pair(const Options& opt, const Tolerances&, RunReport& report) {
  std::vector<std::pair<double, int>> spectrum;
  for (const std::string& item : split_list(opt.spectrum)) {
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorCode::kInvalidArgument, "spectrum entries take the form lambda:multiplicity");
    const double lambda = parse_double(item.substr(0, colon), "eigenvalue");
    const double mult = parse_double(item.substr(colon + 1), "multiplicity");
    if (mult < 1.0 || mult != std::floor(mult) || mult > opt.dim)
      throw Error(ErrorCode::kInvalidArgument, "multiplicity must be a positive integer");
    spectrum.emplace_back(lambda, static_cast<int>(mult));
  }
  if (spectrum.empty()) throw Error(ErrorCode::kInvalidArgument, "--spectrum is empty");
  if (opt.dim < 1) throw Error(ErrorCode::kInvalidArgument, "--dim must be positive");
  SplitMix64 rng(opt.seed);
  const OrbitPair pair = orbit_pair(opt.dim, spectrum, opt.perturb, rng);
  const json meta = {{"seed", opt.seed}, {"spectrum", opt.spectrum}, {"perturb", opt.perturb}};
  const std::string prefix = opt.output.empty() ? "orbit" : opt.output;
  write_output(prefix + "_rho.json", {pair.rho.matrix(), MatrixKind::kHermitian, meta}, report);
  write_output(prefix + "_rho_prime.json", {pair.rho_prime.matrix(), MatrixKind::kHermitian, meta}, report);
  report.outputs["dim"] = opt.dim;
  report.outputs["perturb"] = opt.perturb;
  report.outputs["unitary_deviation"] =
      op_norm(pair.u - CMatrix::Identity(opt.dim, opt.dim));
}

// Returns false when any check of the battery failed.
bool cmd_verify_suite(const Options& opt, const Tolerances& tol, RunReport& report) {
  if (opt.count < 0) throw Error(ErrorCode::kInvalidArgument, "--count must be nonnegative");
  const SuiteResult result = run_suite(opt.seed, opt.count, tol, opt.threads);
  report.outputs = result.to_json();
  return result.failures() == 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Options opt;
  CLI::App app{"Certified unitary intertwiners for nearby operators", "orbitkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto two_files = [&](CLI::App* sub, const char* a, const char* b) {
    sub->add_option(a, opt.file_a, "First matrix file")->required();
    sub->add_option(b, opt.file_b, "Second matrix file")->required();
  };

  CLI::App* decompose_cmd = app.add_subcommand("decompose", "Spectral decomposition of a Hermitian operator");
  decompose_cmd->add_option("file", opt.file_a, "Hermitian matrix file")->required();
  decompose_cmd->add_option("--cluster-tol", opt.cluster_tol, "Eigenvalue clustering gap");

  CLI::App* project_cmd = app.add_subcommand("project", "Lagrange-interpolation spectral projector");
  project_cmd->add_option("file", opt.file_a, "Hermitian matrix file")->required();
  project_cmd->add_option("--eig", opt.eig, "Block index, 0 for the kernel")->required();
  project_cmd->add_option("-o,--output", opt.output, "Write the projector to this file");

  CLI::App* affiliate_cmd = app.add_subcommand("affiliate", "Affiliated bases of a projection pair");
  two_files(affiliate_cmd, "E", "F");

  CLI::App* iproj_cmd = app.add_subcommand("intertwine-proj", "Unitary carrying E onto F");
  two_files(iproj_cmd, "E", "F");
  iproj_cmd->add_option("--eps", opt.eps, "Target bound on ||u - I||")->required();
  iproj_cmd->add_option("-o,--output", opt.output, "Write the unitary to this file");

  CLI::App* intertwine_cmd = app.add_subcommand("intertwine", "Unitary carrying rho onto rho'");
  two_files(intertwine_cmd, "rho", "rho_prime");
  intertwine_cmd->add_option("--eps", opt.eps, "Target bound on ||v - I||")->required();
  intertwine_cmd->add_option("-o,--output", opt.output, "Write the unitary to this file");

  CLI::App* distance_cmd = app.add_subcommand("distance", "Distances between two rank-one projections");
  two_files(distance_cmd, "P", "R");

  CLI::App* moments_cmd = app.add_subcommand("moments", "Moment signature Tr(rho^(n+2))");
  moments_cmd->add_option("file", opt.file_a, "Hermitian matrix file")->required();
  moments_cmd->add_option("-K,--order", opt.order, "Highest moment index (default 2n + 2)");

  CLI::App* same_cmd = app.add_subcommand("same-orbit", "Decide whether two operators are unitarily equivalent");
  two_files(same_cmd, "A", "B");
  same_cmd->add_option("--tol", opt.same_tol, "Relative moment tolerance");
  same_cmd->add_option("-K,--order", opt.order, "Highest moment index");

  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate instances");
  gen_cmd->require_subcommand(1);
  CLI::App* gen_example = gen_cmd->add_subcommand("example", "Projection pair with prescribed overlaps");
  gen_example->add_option("--alpha", opt.alpha, "Comma-separated overlaps in (-1, 1)")->required();
  gen_example->add_option("--dim", opt.dim, "Ambient dimension")->required();
  gen_example->add_option("--seed", opt.seed, "Recorded in the file metadata");
  gen_example->add_option("-o,--output", opt.output, "Output prefix (default example)");
  CLI::App* gen_orbit = gen_cmd->add_subcommand("orbit-pair", "Operator and a nearby unitary conjugate");
  gen_orbit->add_option("--dim", opt.dim, "Ambient dimension")->required();
  gen_orbit->add_option("--spectrum", opt.spectrum, "lambda:multiplicity,...")->required();
  gen_orbit->add_option("--perturb", opt.perturb, "Operator norm of the generator")->required();
  gen_orbit->add_option("--seed", opt.seed, "Random seed");
  gen_orbit->add_option("-o,--output", opt.output, "Output prefix (default orbit)");

  CLI::App* verify_cmd = app.add_subcommand("verify", "Self-checks");
  verify_cmd->require_subcommand(1);
  CLI::App* verify_suite = verify_cmd->add_subcommand("suite", "Run the invariant battery");
  verify_suite->add_option("--seed", opt.seed, "Suite seed");
  verify_suite->add_option("--count", opt.count, "Number of instances");
  verify_suite->add_option("--threads", opt.threads, "Worker threads (default: hardware)");

  RunReport report;
  auto finish = [&](int code) {
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    out << report.to_json_line() << '\n';
    return code;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    app.exit(e, err, err);
    report.command = args.empty() ? "" : args.front();
    report.status = "UsageError";
    report.message = e.what();
    return finish(1);
  }

  const std::vector<std::pair<CLI::App*, std::function<void(const Tolerances&)>>> actions = {
      {decompose_cmd, [&](const Tolerances& t) { cmd_decompose(opt, t, report); }},
      {project_cmd, [&](const Tolerances& t) { cmd_project(opt, t, report); }},
      {affiliate_cmd, [&](const Tolerances& t) { cmd_affiliate(opt, t, report); }},
      {iproj_cmd, [&](const Tolerances& t) { cmd_intertwine_proj(opt, t, report); }},
      {intertwine_cmd, [&](const Tolerances& t) { cmd_intertwine(opt, t, report); }},
      {distance_cmd, [&](const Tolerances& t) { cmd_distance(opt, t, report); }},
      {moments_cmd, [&](const Tolerances& t) { cmd_moments(opt, t, report); }},
      {same_cmd, [&](const Tolerances& t) { cmd_same_orbit(opt, t, report); }},
      {gen_example, [&](const Tolerances& t) { cmd_gen_example(opt, t, report); }},
      {gen_orbit, [&](const Tolerances& t) { cmd_gen_orbit_pair(opt, t, report); }},
  };

  int code = 0;
  try {
    const Tolerances tol = tolerances_from_env();
    if (verify_suite->parsed()) {
      report.command = "verify suite";
      if (!cmd_verify_suite(opt, tol, report)) {
        report.status = "SuiteFailure";
        code = 1;
      }
    } else {
      for (const auto& [sub, action] : actions) {
        if (!sub->parsed()) continue;
        report.command = sub->get_parent() == &app ? sub->get_name()
                                                  : sub->get_parent()->get_name() + " " + sub->get_name();
        action(tol);
      }
    }
    report.require_finite();
  } catch (const Error& e) {
    report.outputs = json::object();
    report.status = std::string(error_name(e.code()));
    report.message = e.what();
    err << e.what() << '\n';
    code = exit_code_for(e.code());
  } catch (const std::exception& e) {
    report.outputs = json::object();
    report.status = "InternalError";
    report.message = e.what();
    err << e.what() << '\n';
    code = 1;
  }
  return finish(code);
}

}  // namespace orbitkit
