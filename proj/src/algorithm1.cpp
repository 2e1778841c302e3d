// Copyright 2026 The risbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "risbf/algorithm1.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "risbf/robust_core.hpp"

namespace risbf {

const char* ToString(PhaseSolver solver) {
  return solver == PhaseSolver::kBnb ? "bnb" : "sdr";
}

PhaseSolver ParsePhaseSolver(const std::string& name) {
  if (name == "sdr") return PhaseSolver::kSdr;
  if (name == "bnb") return PhaseSolver::kBnb;
  throw DomainError("unknown phase solver '" + name + "' (expected sdr or bnb)");
}

const char* ToString(InitialPhase init) {
  switch (init) {
    case InitialPhase::kRandom:
      return "random";
    case InitialPhase::kNominal:
      return "nominal";
    case InitialPhase::kZero:
      break;
  }
  return "zero";
}

InitialPhase ParseInitialPhase(const std::string& name) {
  if (name == "zero") return InitialPhase::kZero;
  if (name == "random") return InitialPhase::kRandom;
  if (name == "nominal") return InitialPhase::kNominal;
  throw DomainError("unknown initial phase '" + name + "' (expected zero, random or nominal)");
}

void RobustInputs::Validate() const {
  const Eigen::Index n = h_br.rows();
  if (n == 0 || h_br.cols() == 0) throw DomainError("BS-RIS channel is empty");
  if (h_hat.size() != n) throw DomainError("h_hat length does not match the RIS size");
  if (!(eps_dh >= 0.0) || !std::isfinite(eps_dh)) throw DomainError("eps_dh must be >= 0");
  if (!(beta > 0.0) || beta > 1.0) throw DomainError("beta must lie in (0, 1]");
  if (!(transmit_power > 0.0)) throw DomainError("transmit power must be positive");
  if (!(noise_power > 0.0)) throw DomainError("noise power must be positive");
  if (!(delta_bu >= 0.0)) throw DomainError("delta_bu must be >= 0");
  if (!(eps_r >= 0.0)) throw DomainError("eps_r must be >= 0");
  if (max_iterations < 1) throw DomainError("at least one iteration is required");
  phase_set.Validate();
}

CVec InitialPhases(int n, double beta, const PhaseSet& set,
                   std::optional<std::uint64_t> seed) {
  set.Validate();
  CVec theta(n);
  if (!seed) {
    const double start = set.kind == PhaseSetKind::kInterval ? set.lower : 0.0;
    theta.setConstant(std::polar(beta, start));
    return theta;
  }
  std::mt19937_64 rng(*seed);
  for (int i = 0; i < n; ++i) {
    double angle = 0.0;
    switch (set.kind) {
      case PhaseSetKind::kFull:
        angle = std::uniform_real_distribution<double>(0.0, 2.0 * kPi)(rng);
        break;
      case PhaseSetKind::kInterval:
        angle = std::uniform_real_distribution<double>(set.lower, set.upper)(rng);
        break;
      case PhaseSetKind::kDiscrete:
        angle = set.LevelAngle(std::uniform_int_distribution<int>(0, set.levels - 1)(rng));
        break;
    }
    theta(i) = std::polar(beta, angle);
  }
  return theta;
}

double WorstCaseSnr(const CVec& theta, const CVec& w, const CMat& h_br,
                    const CVec& h_hat, const CVec& delta_h, const CVec& h_bu,
                    double transmit_power, double noise_power) {
  const CVec channel = CombinedChannel(h_br, h_hat + delta_h, theta, h_bu);
  return transmit_power * std::norm(channel.dot(w)) / noise_power;
}

FixedBeamResult FixedBeamWorstCase(const CVec& theta, const CVec& w,
                                   const CMat& h_br, const CVec& h_hat,
                                   double eps, double delta_bu,
                                   double transmit_power, double noise_power) {
  // Received amplitude is (h_hat + dh)^H b + h_bu^H w with b = Theta H w.
  const CVec b = theta.asDiagonal() * (h_br * w);
  const Complex nominal = h_hat.dot(b);
  const double phase = std::arg(nominal);
  const double b_norm = b.norm();
  const double w_norm = w.norm();
  double remaining = std::abs(nominal);
  FixedBeamResult out;
  out.delta_h = CVec::Zero(h_hat.size());
  out.h_bu = CVec::Zero(w.size());
  const Complex toward = std::polar(1.0, -phase);
  if (b_norm > 0.0 && eps > 0.0) {
    const double used = std::min(eps * b_norm, remaining);
    out.delta_h = -(used / b_norm) * toward * b / b_norm;
    remaining -= used;
  }
  if (w_norm > 0.0 && delta_bu > 0.0) {
    const double used = std::min(delta_bu * w_norm, remaining);
    out.h_bu = -(used / w_norm) * toward * w / w_norm;
    remaining -= used;
  }
  out.snr = transmit_power * remaining * remaining / noise_power;
  return out;
}

namespace {

PhaseSolveResult SolvePhases(const SpectralForms& forms, const RobustInputs& in,
                             PhaseSolver solver, const CVec& current, int iteration) {
  if (solver == PhaseSolver::kSdr) {
    if (in.phase_set.kind != PhaseSetKind::kFull) {
      throw DomainError("the SDR phase solver handles the full circle only");
    }
    SdrOptions opts;
    opts.seed = in.seed + static_cast<std::uint64_t>(iteration);
    return SdrPhaseSolve(forms.upsilon, forms.gamma, in.eps_dh, in.beta, opts);
  }
  BnbOptions opts;
  opts.tol = in.tol_bnb;
  opts.max_nodes = in.max_bnb_nodes;
  opts.incumbent = current;
  return BnbPhaseSolve(forms.upsilon, forms.gamma, in.eps_dh, in.beta,
                       in.phase_set, opts);
}

}  // namespace

RunResult RunAlgorithm1(const RobustInputs& inputs, PhaseSolver solver) {
  inputs.Validate();
  if (!(inputs.eps_dh > 0.0)) {
    throw DomainError("the robust design needs a positive CSI error radius");
  }
  const ChannelSpectrum spectrum(inputs.h_br);
  const int n = spectrum.num_elements();
  const double scale = inputs.SnrScale();
  CVec theta;
  switch (inputs.init) {
    case InitialPhase::kZero:
      theta = InitialPhases(n, inputs.beta, inputs.phase_set, std::nullopt);
      break;
    case InitialPhase::kRandom:
      theta = InitialPhases(n, inputs.beta, inputs.phase_set, inputs.seed);
      break;
    case InitialPhase::kNominal:
      theta = ArgumentRounding(NonRobustBaseline(inputs).theta, inputs.phase_set,
                               inputs.beta);
      break;
  }

  RunResult out;
  double previous = 0.0;  // recorded objective, starts at zero
  for (int t = 1; t <= inputs.max_iterations; ++t) {
    const auto start = std::chrono::steady_clock::now();
    double mu = 0.0;
    try {
      mu = BisectMu(spectrum, inputs.h_hat, theta, inputs.beta, inputs.eps_dh);
    } catch (const InfeasibleError& e) {
      throw InfeasibleError(std::string(e.what()) + " (iteration " + std::to_string(t) + ")",
                            e.witness());
    }
    const SpectralForms forms =
        AssembleSpectralForms(spectrum, inputs.h_hat, inputs.beta, mu);
    const double incoming = PhaseForm(forms.upsilon, theta);

    IterationRecord rec;
    rec.index = t;
    rec.mu = mu;
    rec.worst_case = scale * incoming;
    CVec candidate = theta;
    double value = incoming;
    bool failed = false;
    try {
      const PhaseSolveResult solved = SolvePhases(forms, inputs, solver, theta, t);
      rec.solver_status = solved.status;
      if (solved.objective > incoming) {
        candidate = solved.theta;
        value = solved.objective;
      } else {
        rec.accepted = false;
      }
    } catch (const InfeasibleError& e) {
      rec.solver_status = std::string("infeasible: ") + e.what();
      rec.accepted = false;
      failed = true;
    } catch (const SolverError& e) {
      rec.solver_status = std::string("solver: ") + e.what();
      rec.accepted = false;
      failed = true;
    }
    rec.objective = scale * value;
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    out.iterations.push_back(rec);
    theta = candidate;
    if (std::abs(rec.objective - previous) <= inputs.eps_r) {
      out.converged = true;
      break;
    }
    if (failed) break;
    previous = rec.objective;
  }

  RunResult final_point = EvaluatePhases(inputs, theta);
  final_point.iterations = std::move(out.iterations);
  final_point.converged = out.converged;
  return final_point;
}

RunResult EvaluatePhases(const RobustInputs& inputs, const CVec& theta) {
  inputs.Validate();
  const ChannelSpectrum spectrum(inputs.h_br);
  RunResult out;
  out.theta = theta;
  out.mu = BisectMu(spectrum, inputs.h_hat, theta, inputs.beta, inputs.eps_dh);
  out.delta_h = WorstCaseDeltaH(spectrum, inputs.h_hat, theta, inputs.beta, out.mu);
  const CVec h_eff = inputs.h_hat + out.delta_h;
  out.h_bu = WorstCaseHbu(inputs.h_br, h_eff, theta, inputs.delta_bu);
  out.w = MatchedBeamformer(inputs.h_br, h_eff, theta, out.h_bu);
  out.worst_case_snr = WorstCaseSnr(theta, out.w, inputs.h_br, inputs.h_hat, out.delta_h,
                                    out.h_bu, inputs.transmit_power, inputs.noise_power);
  return out;
}

BaselineResult NonRobustBaseline(const RobustInputs& inputs) {
  inputs.Validate();
  const CMat& h = inputs.h_br;
  const CVec& h_hat = inputs.h_hat;
  CMat nominal = h_hat.conjugate().asDiagonal() * (h * h.adjoint()) * h_hat.asDiagonal();
  nominal = 0.5 * (nominal + nominal.adjoint());
  const CMat none = CMat::Zero(h.rows(), h.rows());
  SdrOptions opts;
  opts.seed = inputs.seed;
  BaselineResult out;
  out.theta = SdrPhaseSolve(nominal, none, 0.0, inputs.beta, opts).theta;
  out.w = MatchedBeamformer(h, h_hat, out.theta, CVec::Zero(h.cols()));
  return out;
}

}  // namespace risbf
