// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orbitkit/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <thread>

#include <Eigen/Eigenvalues>

#include "orbitkit/affiliation.hpp"
#include "orbitkit/error.hpp"
#include "orbitkit/intertwiner.hpp"
#include "orbitkit/invariants.hpp"
#include "orbitkit/linalg.hpp"
#include "orbitkit/matrix_file.hpp"
#include "orbitkit/random.hpp"
#include "orbitkit/spectral.hpp"

namespace orbitkit {
namespace {

constexpr double kEighTol = 1e-10;
constexpr double kLagrangeTol = 1e-8;
constexpr double kAffiliationTol = 1e-10;
constexpr double kConjugationTol = 1e-9;
constexpr double kUnitarityTol = 1e-10;
constexpr double kMomentTol = 1e-10;
constexpr double kDistanceTol = 1e-10;
constexpr double kExampleTol = 1e-9;
constexpr double kOrbitEpsilon = 0.95;
constexpr std::size_t kFailureLogLimit = 20;

struct Record {
  std::string name;
  bool passed = false;
  double value = 0.0;
  std::string detail;
};

struct InstanceResult {
  std::vector<Record> records;
  int rejections = 0;

  void check(const std::string& name, bool ok, double value = 0.0, std::string detail = {}) {
    records.push_back({name, ok, value, std::move(detail)});
  }
  void bound(const std::string& name, double value, double limit) {
    check(name, value <= limit, value);
  }
  // Runs one section; an unexpected exception fails it instead of the suite.
  void section(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(name + ".exception", false, 0.0, e.what());
    }
  }
};

CMatrix identity(int d) { return CMatrix::Identity(d, d); }

double log_uniform(double lo, double hi, SplitMix64& rng) {
  return lo * std::pow(hi / lo, rng.uniform());
}

void check_eigh(InstanceResult& out, SplitMix64& rng, const Tolerances& tol) {
  const int d = rng.uniform_int(2, 16);
  const HermitianOperator a = random_hermitian(d, rng);
  const Eigensystem es = eigh(a, tol);
  const double scale = 1.0 + a.matrix().norm();
  const CMatrix av = a.matrix() * es.vectors;
  const CMatrix vl = es.vectors * es.values.cast<Complex>().asDiagonal();
  out.bound("eigh.residual", (av - vl).norm() / scale, kEighTol);
  out.bound("eigh.orthonormality", (es.vectors.adjoint() * es.vectors - identity(d)).norm(), kEighTol);
  bool sorted = true;
  for (int k = 1; k < d; ++k) sorted = sorted && es.values(k - 1) >= es.values(k);
  out.check("eigh.descending", sorted);
  const Eigen::SelfAdjointEigenSolver<CMatrix> oracle(a.matrix());
  double worst = 0.0;
  for (int k = 0; k < d; ++k)
    worst = std::max(worst, std::abs(es.values(k) - oracle.eigenvalues()(d - 1 - k)));
  out.bound("eigh.oracle_agreement", worst / scale, kEighTol);
}

void check_norms_and_lattice(InstanceResult& out, SplitMix64& rng, const Tolerances& tol) {
  const int d = rng.uniform_int(1, 12);
  const HermitianOperator a = random_hermitian(d, rng);
  const SchattenNorms n = schatten_norms(a, tol);
  out.check("linalg.norm_ordering", n.op <= n.hs + 1e-12 && n.hs <= n.trace + 1e-12);
  out.check("linalg.op_abs_positive", eigh(op_abs(a, tol), tol).values.minCoeff() >= -1e-12);

  RVector x(d), y(d);
  for (int k = 0; k < d; ++k) {
    x(k) = static_cast<double>(rng.uniform_int(0, 1));
    y(k) = static_cast<double>(rng.uniform_int(0, 1));
  }
  auto as_projection = [&](const RVector& v) {
    return OrthProjection::from_matrix(CMatrix(v.cast<Complex>().asDiagonal()), tol);
  };
  const OrthProjection e = as_projection(x);
  const OrthProjection f = as_projection(y);
  const double lattice = std::max(op_norm(meet(e, f, tol).matrix() - as_projection(x.cwiseMin(y)).matrix()),
                                  op_norm(join(e, f, tol).matrix() - as_projection(x.cwiseMax(y)).matrix()));
  out.bound("linalg.lattice_laws", lattice, tol.proj_tol);
}

void check_spectral(InstanceResult& out, SplitMix64& rng, const Tolerances& tol) {
  const int n = rng.uniform_int(1, 4);
  const auto spectrum = random_spectrum(n, 3, rng);
  int rank = 0;
  for (const auto& block : spectrum) rank += block.second;
  const int d = rng.uniform_int(std::max(rank, 2), rank + 6);
  const HermitianOperator rho = operator_with_spectrum(d, spectrum, rng);
  const SpectralDecomposition decomp = decompose(rho, tol);

  bool shape = decomp.blocks() == n && decomp.total_rank == rank;
  for (int j = 0; shape && j < n; ++j)
    shape = decomp.multiplicities[j] == spectrum[j].second &&
            std::abs(decomp.eigenvalues[j] - spectrum[j].first) <= kEighTol;
  out.check("spectral.shape", shape);
  out.bound("spectral.reconstruction", op_norm(reconstruct(decomp, tol).matrix() - rho.matrix()),
            tol.recon_tol);
  double worst = 0.0;
  for (int j = 0; j <= decomp.blocks(); ++j) {
    const OrthProjection p = lagrange_projector(rho, decomp, j, tol);
    worst = std::max(worst, op_norm(p.matrix() - decomp.projection(j).matrix()));
  }
  out.bound("spectral.lagrange_equivalence", worst, kLagrangeTol);

  // Continuity along the orbit: ||E_j(u rho u*) - E_j(rho)|| <= 2 ||u - I||,
  // shrinking with the perturbation.
  const CMatrix generator = random_antihermitian(d, 1.0, rng);
  double previous = 2.0;
  bool continuous = true;
  double ratio = 0.0;
  for (const double eps : {1e-2, 1e-3, 1e-4}) {
    const CMatrix u = unitary_exp(eps * generator);
    const SpectralDecomposition moved = decompose(HermitianOperator(u * rho.matrix() * u.adjoint(), tol), tol);
    if (moved.blocks() != decomp.blocks()) {
      continuous = false;
      break;
    }
    double step = 0.0;
    for (int j = 0; j <= decomp.blocks(); ++j)
      step = std::max(step, op_norm(moved.projection(j).matrix() - decomp.projection(j).matrix()));
    ratio = std::max(ratio, step / eps);
    // Steps at roundoff level (e.g. rho a multiple of I) count as shrinking.
    continuous = continuous && (step < previous || step <= 1e-12);
    previous = step;
  }
  out.check("spectral.continuity", continuous && ratio <= 2.0 + 1e-6, ratio);
}

void check_affiliated(InstanceResult& out, const AffiliatedBases& b, const OrthProjection& e,
                      const OrthProjection& f) {
  const int n = b.size();
  double cross = 0.0;
  bool positive = true;
  double recon = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const Complex ip = b.f.col(j).dot(b.e.col(k));
      if (j == k) {
        cross = std::max(cross, std::abs(ip.imag()));
        positive = positive && ip.real() > 0.0;
      } else {
        cross = std::max(cross, std::abs(ip));
      }
    }
    const CVector rebuilt = b.alpha[j] * b.e.col(j) + b.beta[j] * b.e_perp.col(j);
    recon = std::max(recon, (b.f.col(j) - rebuilt).norm());
  }
  out.check("affiliation.cross_orthogonality", cross <= kAffiliationTol && positive, cross);
  out.bound("affiliation.reconstruction", recon, kAffiliationTol);
  out.bound("affiliation.perp_orthogonal", (e.basis().adjoint() * b.e_perp).norm(), kAffiliationTol);
  const double span = std::max(op_norm(b.e * b.e.adjoint() - e.matrix()),
                               op_norm(b.f * b.f.adjoint() - f.matrix()));
  out.bound("affiliation.spans", span, kAffiliationTol);
}

void check_projection_pair(InstanceResult& out, SplitMix64& rng, const Tolerances& tol) {
  const int rank = rng.uniform_int(1, 3);
  const int d = rng.uniform_int(2 * rank + 1, 2 * rank + 6);
  const OrthProjection e = random_projection(d, rank, rng);
  const double t = log_uniform(1e-3, 1.0, rng);
  const CMatrix u = unitary_exp(random_antihermitian(d, t, rng));
  const OrthProjection f = OrthProjection::from_basis(u * e.basis(), tol);

  const ProximityCheck prox = proximity_check(e, f);
  const ProjectionPairSplit parts = split(e, f, tol);
  if (parts.q.rank() == 0) {
    try {
      const AffiliatedBases b = affiliate(e, f, tol);
      out.check("affiliation.no_kernel_hit", true);
      check_affiliated(out, b, e, f);
    } catch (const Error& err) {
      // A kernel hit is only legitimate outside the proximity condition.
      if (err.code() != ErrorCode::kKernelHit) throw;
      out.check("affiliation.no_kernel_hit", !prox.satisfied, prox.hs_sq, err.what());
    }
  }

  const double epsilon = std::max(1e-3, 2.0 * rng.uniform());
  const double delta = rank - trace_product(e, f);
  if (delta < epsilon * epsilon / 4.0) {
    const IntertwinerCertificate cert = projection_intertwiner(e, f, epsilon, tol);
    out.check("projection_intertwiner.below_epsilon", cert.op_norm_dev < epsilon, cert.op_norm_dev);
    out.bound("projection_intertwiner.conjugation", cert.conjugation_residual, kConjugationTol);
    out.bound("projection_intertwiner.unitarity", cert.unitarity_defect, kUnitarityTol);
    out.check("projection_intertwiner.chain", check_chain(cert).all());
  } else {
    bool rejected = false;
    try {
      projection_intertwiner(e, f, epsilon, tol);
    } catch (const Error& err) {
      rejected = err.code() == ErrorCode::kHypothesisViolated;
    }
    out.check("projection_intertwiner.rejects_violation", rejected);
  }
}

void check_orbit(InstanceResult& out, SplitMix64& rng, const Tolerances& tol) {
  const int n = rng.uniform_int(1, 4);
  const auto spectrum = random_spectrum(n, 3, rng);
  int rank = 0;
  for (const auto& block : spectrum) rank += block.second;
  const int lo = std::max(4, 2 * rank + 1);
  const int d = rng.uniform_int(lo, std::min(32, lo + 6));
  const double t = log_uniform(1e-4, 0.3, rng);
  const OrbitPair pair = orbit_pair(d, spectrum, t, rng);

  const DeltaAudit defects = delta_audit(pair.rho, pair.rho_prime, tol);
  double sum = 0.0;
  for (const double x : defects.delta_j) sum += x;
  if (!(sum < kOrbitEpsilon * kOrbitEpsilon / 4.0)) {
    ++out.rejections;
    bool rejected = false;
    try {
      orbit_intertwiner(pair.rho, pair.rho_prime, kOrbitEpsilon, tol);
    } catch (const Error& err) {
      rejected = err.code() == ErrorCode::kHypothesisViolated;
    }
    out.check("orbit_intertwiner.rejects_violation", rejected);
    return;
  }
  const IntertwinerCertificate cert = orbit_intertwiner(pair.rho, pair.rho_prime, kOrbitEpsilon, tol);
  const ChainCheck chain = check_chain(cert);
  out.check("orbit_intertwiner.chain", chain.all());
  const double trace_norm = schatten_norms(pair.rho, tol).trace;
  out.bound("orbit_intertwiner.conjugation", cert.conjugation_residual / (1.0 + trace_norm),
            kConjugationTol);
  out.bound("orbit_intertwiner.unitarity", cert.unitarity_defect, kUnitarityTol);
  out.bound("orbit_intertwiner.locality", cert.locality_defect, kUnitarityTol);

  // Monotone shrinkage on a matched generator.
  const CMatrix generator = random_antihermitian(d, 1.0, rng);
  double previous = 1.0;
  bool shrinking = true;
  for (const double step : {1e-1, 1e-2, 1e-3}) {
    const CMatrix u = unitary_exp(step * generator);
    const HermitianOperator moved(u * pair.rho.matrix() * u.adjoint(), tol);
    const double dev = orbit_intertwiner(pair.rho, moved, kOrbitEpsilon, tol).op_norm_dev;
    shrinking = shrinking && dev < previous;
    previous = dev;
  }
  out.check("orbit_intertwiner.monotone_shrinkage", shrinking);
}

void check_invariants(InstanceResult& out, SplitMix64& rng, const Tolerances& tol) {
  const int n = rng.uniform_int(1, 4);
  auto spectrum = random_spectrum(n, 3, rng);
  int rank = 0;
  for (const auto& block : spectrum) rank += block.second;
  const int d = rng.uniform_int(rank, rank + 6);
  const HermitianOperator rho = operator_with_spectrum(d, spectrum, rng);
  const CMatrix w = random_unitary(d, rng);
  const CMatrix moved = w * rho.matrix() * w.adjoint();
  const HermitianOperator nu(0.5 * (moved + moved.adjoint()));

  const int order = default_moment_order(rho, tol);
  const MomentSignature a = moment_signature(rho, order, tol);
  const MomentSignature b = moment_signature(nu, order, tol);
  double drift = 0.0;
  for (int k = 0; k <= order; ++k) {
    const double x = a.moments[static_cast<std::size_t>(k)];
    drift = std::max(drift, std::abs(x - b.moments[static_cast<std::size_t>(k)]) / (1.0 + std::abs(x)));
  }
  out.bound("moments.unitary_invariance", drift, kMomentTol);
  out.bound("moments.measure_duality", a.duality_defect(), kMomentTol);
  const SameOrbitResult same = same_orbit(rho, nu, order, kMomentTol, tol);
  out.check("same_orbit.accepts_conjugate", same.same && !same.anomaly);

  spectrum.front().first += 0.03;
  const HermitianOperator other = operator_with_spectrum(d, spectrum, rng);
  const SameOrbitResult distinct = same_orbit(rho, other, order, kMomentTol, tol);
  out.check("same_orbit.rejects_distinct", !distinct.same && !distinct.anomaly);

  const NormChain chain = norm_chain(rho, other, rank, tol);
  out.check("norm_chain.holds", chain.chain_ok, chain.n1);

  double defect = 0.0;
  for (const double scale : {1.0, 1e-6}) {
    const CVector x = random_gaussian(d, 1, rng).col(0).normalized();
    const CVector y = (x + scale * random_gaussian(d, 1, rng).col(0)).normalized();
    const ProjectiveDistances dist = projective_distances(OrthProjection::from_basis(x, tol),
                                                          OrthProjection::from_basis(y, tol), tol);
    defect = std::max(defect, dist.relation_defect);
  }
  out.bound("projective.relation", defect, kDistanceTol);
}

void check_example(InstanceResult& out, SplitMix64& rng, const Tolerances& tol) {
  const int n = rng.uniform_int(1, 4);
  const int d = rng.uniform_int(2 * n, 2 * n + 4);
  const bool degenerate = rng.uniform() < 0.25;
  std::vector<Complex> alpha;
  for (int j = 0; j < n; ++j) {
    if (degenerate && j > 0) {
      alpha.push_back(alpha.front());
      continue;
    }
    alpha.push_back(std::polar(0.05 + 0.9 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform()));
  }
  const ExamplePair ex = example_pair_generator(d, alpha, tol);
  const CMatrix efe = ex.e.matrix() * ex.f.matrix() * ex.e.matrix();
  const Eigensystem es = eigh(HermitianOperator(0.5 * (efe + efe.adjoint()), tol), tol);
  double spectrum = 0.0;
  for (int j = 0; j < n; ++j) spectrum = std::max(spectrum, std::abs(es.values(j) - ex.expected.efe_spectrum[j]));
  out.bound("example.efe_spectrum", spectrum, kExampleTol);
  const CMatrix diff = ex.e.matrix() - ex.f.matrix();
  out.bound("example.hs_sq", std::abs(diff.squaredNorm() - ex.expected.hs_sq), kExampleTol);
  out.bound("example.op_norm", std::abs(op_norm(diff) - ex.expected.op_norm), kExampleTol);
}

void check_io(InstanceResult& out, SplitMix64& rng, const Tolerances& tol) {
  MatrixFile file;
  file.kind = MatrixKind::kHermitian;
  file.entries = random_hermitian(rng.uniform_int(1, 8), rng).matrix();
  const std::string text = to_json_text(file);
  const MatrixFile back = parse_matrix_file(text, tol);
  const bool exact = back.entries.size() == file.entries.size() &&
                     std::memcmp(back.entries.data(), file.entries.data(),
                                 sizeof(Complex) * static_cast<std::size_t>(file.entries.size())) == 0;
  out.check("io.roundtrip_bit_exact", exact && to_json_text(back) == text);
}

InstanceResult run_instance(std::uint64_t seed, int index, const Tolerances& tol) {
  SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(index)));
  // Each section draws from its own stream so sections stay reproducible
  // even when one of them fails early.
  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < 8; ++k) seeds.push_back(rng.next());
  InstanceResult out;
  auto run = [&](const char* name, int k, void (*body)(InstanceResult&, SplitMix64&, const Tolerances&)) {
    SplitMix64 stream(seeds[static_cast<std::size_t>(k)]);
    out.section(name, [&] { body(out, stream, tol); });
  };
  run("eigh", 0, check_eigh);
  run("spectral", 1, check_spectral);
  run("projection_pair", 2, check_projection_pair);
  run("orbit", 3, check_orbit);
  run("invariants", 4, check_invariants);
  run("example", 5, check_example);
  run("io", 6, check_io);
  run("linalg", 7, check_norms_and_lattice);
  return out;
}

std::string describe(int index, const Record& record) {
  char value[32];
  std::snprintf(value, sizeof value, "%.3e", record.value);
  std::string line = "instance " + std::to_string(index) + ": " + record.name + " value " + value;
  if (!record.detail.empty()) line += " (" + record.detail + ")";
  return line;
}

}  // namespace

int SuiteResult::failures() const {
  int total = 0;
  for (const auto& [name, tally] : checks) total += tally.failures;
  return total;
}

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json doc;
  doc["seed"] = seed;
  doc["instances"] = instances;
  doc["failures"] = failures();
  doc["all_ok"] = failures() == 0;
  doc["hypothesis_rejections"] = hypothesis_rejections;
  nlohmann::json table = nlohmann::json::object();
  for (const auto& [name, tally] : checks)
    table[name] = {{"runs", tally.runs}, {"failures", tally.failures}, {"worst", tally.worst}};
  doc["checks"] = std::move(table);
  doc["failure_log"] = failure_log;
  return doc;
}

SuiteResult run_suite(std::uint64_t seed, int count, const Tolerances& tol, unsigned threads) {
  if (count < 0) throw Error(ErrorCode::kInvalidArgument, "count must be nonnegative");
  std::vector<InstanceResult> results(static_cast<std::size_t>(count));
  if (threads == 0) threads = std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(count, 1)));

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++)
      results[static_cast<std::size_t>(i)] = run_instance(seed, i, tol);
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  SuiteResult out;
  out.seed = seed;
  out.instances = count;
  for (int i = 0; i < count; ++i) {
    const InstanceResult& r = results[static_cast<std::size_t>(i)];
    out.hypothesis_rejections += r.rejections;
    for (const Record& record : r.records) {
      CheckTally& tally = out.checks[record.name];
      ++tally.runs;
      if (std::isfinite(record.value)) tally.worst = std::max(tally.worst, record.value);
      if (!record.passed) {
        ++tally.failures;
        if (out.failure_log.size() < kFailureLogLimit) out.failure_log.push_back(describe(i, record));
      }
    }
  }
  return out;
}

}  // namespace orbitkit
