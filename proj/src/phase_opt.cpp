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

#include "risbf/phase_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "risbf/hermitian_embedding.hpp"
#include "risbf/kernels.hpp"

namespace risbf {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

double WrapAngle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

double CircularDistance(double a, double b) {
  const double d = WrapAngle(a - b);
  return std::min(d, kTwoPi - d);
}

// Closest point of the arc [lo, hi] to `arg`; the midpoint of the excluded
// arc goes to `lo`.
double ClampToArc(double arg, double lo, double hi) {
  const double width = hi - lo;
  if (width >= kTwoPi) return arg;
  const double d = WrapAngle(arg - lo);
  if (d <= width) return lo + d;
  return (d - width < kTwoPi - d) ? hi : lo;
}

int NearestLevel(double arg, int first, int last, int levels) {
  const double step = kTwoPi / levels;
  int best = first;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int k = first; k <= last; ++k) {
    const double dist = CircularDistance(arg, k * step);
    if (dist < best_dist - 1e-15) {
      best = k;
      best_dist = dist;
    }
  }
  return best;
}

Complex Polar(double beta, double angle) { return std::polar(beta, angle); }

CVec ProjectModulus(const CVec& z, double beta) {
  CVec out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double r = std::abs(z(i));
    out(i) = r > 0.0 ? beta * z(i) / r : Complex(beta, 0.0);
  }
  return out;
}

CMat Hermitianize(const CMat& a) { return 0.5 * (a + a.adjoint()); }

double FrobeniusOrOne(const CMat& a) {
  const double n = a.norm();
  return n > 0.0 ? n : 1.0;
}

void RequireSquare(const CMat& a, Eigen::Index n, const char* name) {
  if (a.rows() != n || a.cols() != n) {
    throw DomainError(std::string(name) + " has the wrong dimensions");
  }
}

// Hermitian lifted program over Y (n x n):
//   max tr(objective Y)  s.t.  Y_ii = diagonal_i,  tr(constraint Y) >= rhs,
//   Re(conj(a_k) Y(i_k, anchor)) >= b_k.
struct Envelope {
  int index;
  Complex center;
  double rhs;
};

struct LiftedProblem {
  CMat objective;
  CMat constraint;  // empty when absent
  double constraint_rhs = 0.0;
  RVec diagonal;
  int anchor = -1;
  std::vector<Envelope> envelopes;
};

sdp::SdpProblem BuildLifted(const LiftedProblem& program) {
  const int n = static_cast<int>(program.objective.rows());
  sdp::SdpProblem problem;
  const int block = problem.AddBlock(2 * n);
  problem.objective.push_back(
      {block, sdp::SymCoefficient::Dense(0.5 * EmbedHermitian(program.objective))});
  for (int i = 0; i < n; ++i) {
    sdp::Constraint c;
    c.terms.push_back({block, sdp::SymCoefficient::Sparse(
                                  2 * n, {{i, i, 0.5}, {n + i, n + i, 0.5}})});
    c.rhs = program.diagonal(i);
    c.label = "modulus";
    problem.constraints.push_back(std::move(c));
  }
  if (program.constraint.size() > 0) {
    sdp::Constraint c;
    c.terms.push_back(
        {block, sdp::SymCoefficient::Dense(0.5 * EmbedHermitian(program.constraint))});
    c.sense = sdp::Sense::kGreaterEqual;
    c.rhs = program.constraint_rhs;
    c.label = "error_form";
    problem.constraints.push_back(std::move(c));
  }
  for (const Envelope& e : program.envelopes) {
    const int i = e.index;
    const int k = program.anchor;
    const double ar = e.center.real() / 4.0;
    const double ai = e.center.imag() / 4.0;
    sdp::Constraint c;
    c.terms.push_back({block, sdp::SymCoefficient::Sparse(
                                  2 * n, {{i, k, ar},
                                          {n + i, n + k, ar},
                                          {n + i, k, ai},
                                          {i, n + k, -ai}})});
    c.sense = sdp::Sense::kGreaterEqual;
    c.rhs = e.rhs;
    c.label = "envelope";
    problem.constraints.push_back(std::move(c));
  }
  return problem;
}

bool Usable(const sdp::SdpSolution& sol) {
  return sol.status == sdp::SdpStatus::kOptimal ||
         ((sol.status == sdp::SdpStatus::kMaxIterations ||
           sol.status == sdp::SdpStatus::kNumericalError) &&
          sol.residuals.Max() <= 1e-6);
}

}  // namespace

PhaseSet PhaseSet::Full() { return PhaseSet{}; }

PhaseSet PhaseSet::Interval(double lower, double upper) {
  PhaseSet s;
  s.kind = PhaseSetKind::kInterval;
  s.lower = lower;
  s.upper = upper;
  s.Validate();
  return s;
}

PhaseSet PhaseSet::Discrete(int levels) {
  PhaseSet s;
  s.kind = PhaseSetKind::kDiscrete;
  s.levels = levels;
  s.Validate();
  return s;
}

void PhaseSet::Validate() const {
  switch (kind) {
    case PhaseSetKind::kFull:
      return;
    case PhaseSetKind::kInterval:
      if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper) ||
          upper - lower > kTwoPi + 1e-12) {
        throw DomainError("phase interval needs lower < upper <= lower + 2 pi");
      }
      return;
    case PhaseSetKind::kDiscrete:
      if (levels < 2) throw DomainError("discrete phase set needs at least 2 levels");
      return;
  }
}

bool PhaseSet::Contains(double arg, double tol) const {
  switch (kind) {
    case PhaseSetKind::kFull:
      return true;
    case PhaseSetKind::kInterval:
      return CircularDistance(arg, ClampToArc(arg, lower, upper)) <= tol;
    case PhaseSetKind::kDiscrete:
      return CircularDistance(arg, LevelAngle(NearestLevel(arg, 0, levels - 1, levels))) <= tol;
  }
  return false;
}

double PhaseSet::LevelAngle(int k) const { return k * kTwoPi / levels; }

std::string PhaseSet::Describe() const {
  std::ostringstream out;
  switch (kind) {
    case PhaseSetKind::kFull:
      out << "full";
      break;
    case PhaseSetKind::kInterval:
      out << "interval[" << lower << "," << upper << "]";
      break;
    case PhaseSetKind::kDiscrete:
      out << "discrete" << levels;
      break;
  }
  return out.str();
}

CVec ArgumentRounding(const CVec& theta, const PhaseSet& set, double beta) {
  set.Validate();
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  CVec out(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    const bool zero = std::abs(theta(i)) == 0.0;
    const double arg = std::arg(theta(i));
    double angle = 0.0;
    switch (set.kind) {
      case PhaseSetKind::kFull:
        angle = zero ? 0.0 : arg;
        break;
      case PhaseSetKind::kInterval:
        angle = zero ? set.lower : ClampToArc(arg, set.lower, set.upper);
        break;
      case PhaseSetKind::kDiscrete:
        angle = zero ? 0.0 : set.LevelAngle(NearestLevel(arg, 0, set.levels - 1, set.levels));
        break;
    }
    out(i) = Polar(beta, angle);
  }
  return out;
}

double PhaseForm(const CMat& a, const CVec& theta) {
  return (theta.transpose() * a * theta.conjugate()).value().real();
}

namespace {

// Moves a lifted solution along directions that keep every diagonal entry
// and the constraint form fixed, dropping one rank per step. Each step goes
// in the direction that does not lower the objective form.
CMat ReduceRank(const CMat& lifted, const CMat* con_form, const CMat& obj_form) {
  constexpr double kRankTol = 1e-7;
  CMat x = Hermitianize(lifted);
  const Eigen::Index n = x.rows();
  const int m = static_cast<int>(n) + (con_form ? 1 : 0);
  for (Eigen::Index pass = 0; pass < n; ++pass) {
    Eigen::SelfAdjointEigenSolver<CMat> eig(x);
    const RVec& vals = eig.eigenvalues();
    const double top = vals(n - 1);
    if (!(top > 0.0)) break;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (vals(i) > kRankTol * top) keep.push_back(i);
    }
    const int r = static_cast<int>(keep.size());
    if (r <= 1 || r * r <= m) break;
    CMat v(n, r);
    for (int k = 0; k < r; ++k) v.col(k) = eig.eigenvectors().col(keep[k]) * std::sqrt(vals(keep[k]));

    // Coordinates of Hermitian r x r matrices: diagonal, then (Re, Im) of
    // each upper entry. Row i holds <V^H A_i V, basis>.
    const auto coords = [r](const CMat& g, double* row) {
      int c = 0;
      for (int a = 0; a < r; ++a) row[c++] = g(a, a).real();
      for (int a = 0; a < r; ++a) {
        for (int b = a + 1; b < r; ++b) {
          row[c++] = 2.0 * g(a, b).real();
          row[c++] = 2.0 * g(a, b).imag();
        }
      }
    };
    RMat lin(m, r * r);
    RVec row(r * r);
    for (Eigen::Index i = 0; i < n; ++i) {
      coords(v.row(i).adjoint() * v.row(i), row.data());
      lin.row(i) = row.transpose();
    }
    if (con_form) {
      coords(v.adjoint() * (*con_form) * v, row.data());
      lin.row(m - 1) = row.transpose();
    }
    Eigen::JacobiSVD<RMat> svd(lin, Eigen::ComputeFullV);
    const RVec coeff = svd.matrixV().col(r * r - 1);
    CMat delta = CMat::Zero(r, r);
    int c = 0;
    for (int a = 0; a < r; ++a) delta(a, a) = coeff(c++);
    for (int a = 0; a < r; ++a) {
      for (int b = a + 1; b < r; ++b) {
        delta(a, b) = Complex(coeff(c), coeff(c + 1));
        delta(b, a) = std::conj(delta(a, b));
        c += 2;
      }
    }
    Eigen::SelfAdjointEigenSolver<CMat> d_eig(delta, Eigen::EigenvaluesOnly);
    const double d_min = d_eig.eigenvalues()(0);
    const double d_max = d_eig.eigenvalues()(r - 1);
    if (!(d_max > 0.0) || !(d_min < 0.0)) break;
    const double slope = (v.adjoint() * obj_form * v * delta).trace().real();
    const double step = slope <= 0.0 ? 1.0 / d_max : 1.0 / d_min;
    const CMat inner = CMat::Identity(r, r) - step * delta;
    x = Hermitianize(v * inner * v.adjoint());
  }
  return x;
}

}  // namespace

CVec ExtractRankOne(const CMat& lifted, const CMat& upsilon,
                    const CMat& gamma, double eps, double beta,
                    const SdrOptions& options) {
  const Eigen::Index n = lifted.rows();
  RequireSquare(lifted, n, "lifted matrix");
  RequireSquare(upsilon, n, "objective matrix");
  RequireSquare(gamma, n, "constraint matrix");
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  const CMat obj_form = upsilon.conjugate();
  const CMat con_form = gamma.conjugate();
  Eigen::SelfAdjointEigenSolver<CMat> eig(
      ReduceRank(lifted, eps > 0.0 ? &con_form : nullptr, obj_form));
  const RVec values = eig.eigenvalues().cwiseMax(0.0);
  const CMat& vectors = eig.eigenvectors();
  const double top = values(n - 1);
  const double ratio = n > 1 && top > 0.0 ? values(n - 2) / top : 0.0;
  const bool rank_one = ratio <= options.rank_one_tol;

  const double target = eps * eps * (1.0 - options.feasibility_slack);

  CMat candidates = ProjectModulus(vectors.col(n - 1), beta);
  RVec con = kernels::HermitianForms(con_form, candidates);
  const bool principal_ok = eps == 0.0 || con(0) >= target;
  if ((!rank_one || !principal_ok) && options.randomization_trials > 0) {
    const int trials = options.randomization_trials;
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    CMat draws(n, trials);
    for (int t = 0; t < trials; ++t) {
      for (Eigen::Index i = 0; i < n; ++i) draws(i, t) = Complex(gauss(rng), gauss(rng));
    }
    const CMat factor = vectors * values.cwiseSqrt().cast<Complex>().asDiagonal();
    CMat all(n, trials + 1);
    all.col(0) = candidates.col(0);
    const CMat mixed = factor * draws;
    for (int t = 0; t < trials; ++t) all.col(t + 1) = ProjectModulus(mixed.col(t), beta);
    candidates = std::move(all);
    con = kernels::HermitianForms(con_form, candidates);
  }
  const RVec obj = kernels::HermitianForms(obj_form, candidates);

  int best = -1;
  for (Eigen::Index c = 0; c < candidates.cols(); ++c) {
    if (eps > 0.0 && con(c) < target) continue;
    if (best < 0 || obj(c) > obj(best)) best = static_cast<int>(c);
  }
  if (best < 0) {
    Eigen::Index closest = 0;
    con.maxCoeff(&closest);
    throw PhaseExtractionError("no rounded phase vector meets the error constraint",
                               con(closest), candidates.col(closest));
  }
  return candidates.col(best);
}

PhaseSolveResult SdrPhaseSolve(const CMat& upsilon, const CMat& gamma,
                               double eps, double beta,
                               const SdrOptions& options) {
  const Eigen::Index n = upsilon.rows();
  if (n == 0) throw DomainError("empty phase problem");
  RequireSquare(upsilon, n, "objective matrix");
  RequireSquare(gamma, n, "constraint matrix");
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("eps must be non-negative");

  const double obj_scale = FrobeniusOrOne(upsilon);
  LiftedProblem program;
  program.objective = Hermitianize(upsilon.conjugate()) / obj_scale;
  program.diagonal = RVec::Constant(n, beta * beta);
  if (eps > 0.0) {
    const double con_scale = FrobeniusOrOne(gamma);
    program.constraint = Hermitianize(gamma.conjugate()) / con_scale;
    program.constraint_rhs = eps * eps / con_scale;
  }
  const sdp::SdpSolution sol = sdp::SolveSdp(BuildLifted(program), options.sdp);
  if (sol.status == sdp::SdpStatus::kPrimalInfeasible) {
    throw InfeasibleError("relaxed constraint infeasible", eps * eps);
  }
  if (!Usable(sol)) {
    throw SolverError(std::string("phase relaxation failed: ") + sdp::ToString(sol.status),
                      sol.residuals.Max());
  }

  PhaseSolveResult out;
  out.lifted = ExtractHermitian(sol.primal[0]);
  Eigen::SelfAdjointEigenSolver<CMat> eig(out.lifted, Eigen::EigenvaluesOnly);
  const RVec& values = eig.eigenvalues();
  out.eigen_ratio = n > 1 && values(n - 1) > 0.0
                        ? std::max(values(n - 2), 0.0) / values(n - 1)
                        : 0.0;
  out.rank_one_certified = out.eigen_ratio <= options.rank_one_tol;
  out.relaxation_objective = obj_scale * sol.dual_objective;
  out.theta = ExtractRankOne(out.lifted, upsilon, gamma, eps, beta, options);
  out.objective = PhaseForm(upsilon, out.theta);
  out.constraint = PhaseForm(gamma, out.theta);
  out.gap = out.relaxation_objective - out.objective;
  out.status = sdp::ToString(sol.status);
  return out;
}

namespace {

struct Range {
  double lo = 0.0;  // continuous sets
  double hi = 0.0;
  int first = 0;  // discrete sets
  int last = 0;
};

struct Node {
  std::vector<Range> ranges;
  double bound = 0.0;
  long id = 0;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const CMat& upsilon, const CMat& gamma, double eps,
                 double beta, const PhaseSet& set, const BnbOptions& options)
      : n_(static_cast<int>(upsilon.rows())),
        beta_(beta),
        set_(set),
        options_(options) {
    obj_scale_ = FrobeniusOrOne(upsilon);
    form_ = Hermitianize(upsilon.conjugate()) / obj_scale_;
    constrained_ = eps > 0.0;
    if (constrained_) {
      const double con_scale = FrobeniusOrOne(gamma);
      con_form_ = Hermitianize(gamma.conjugate()) / con_scale;
      target_ = eps * eps / con_scale;
    } else {
      con_form_ = CMat::Zero(n_, n_);
    }
  }

  PhaseSolveResult Run() {
    Node root;
    root.ranges.resize(n_);
    for (Range& r : root.ranges) {
      r.lo = set_.kind == PhaseSetKind::kInterval ? set_.lower : 0.0;
      r.hi = set_.kind == PhaseSetKind::kInterval ? set_.upper : kTwoPi;
      r.first = 0;
      r.last = set_.kind == PhaseSetKind::kDiscrete ? set_.levels - 1 : 0;
    }
    if (options_.fix_rotation && set_.kind != PhaseSetKind::kInterval) {
      root.ranges[0].hi = 0.0;
      root.ranges[0].last = 0;
    }
    if (options_.incumbent && options_.incumbent->size() == n_) {
      const CVec& seed = *options_.incumbent;
      bool inside = true;
      for (int i = 0; i < n_; ++i) {
        inside = inside && std::abs(std::abs(seed(i)) - beta_) <= 1e-9 * beta_ &&
                 set_.Contains(std::arg(seed(i)));
      }
      if (inside) Offer(seed);
    }

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    if (Evaluate(root, std::numeric_limits<double>::infinity())) open.push(root);
    while (!open.empty()) {
      const Node& top = open.top();
      if (!(top.bound > incumbent_value_ + Tolerance())) break;
      if (node_count_ + 2 > options_.max_nodes) {  // a split evaluates two children
        exhausted_ = true;
        break;
      }
      Node node = top;
      open.pop();
      const int split = WidestFree(node);
      if (split < 0) continue;
      for (Node& child : Split(node, split)) {
        if (Evaluate(child, node.bound) && child.bound > incumbent_value_ + Tolerance()) {
          open.push(std::move(child));
        }
      }
    }
    if (!has_incumbent_) {
      throw InfeasibleError("no phase vector in the set meets the error constraint",
                            target_);
    }
    PhaseSolveResult out;
    out.theta = incumbent_;
    out.objective = incumbent_value_ * obj_scale_;
    const double bound = open.empty() ? incumbent_value_
                                      : std::max(open.top().bound, incumbent_value_);
    out.relaxation_objective = bound * obj_scale_;
    out.gap = out.relaxation_objective - out.objective;
    out.node_count = node_count_;
    out.pruned_infeasible = pruned_infeasible_;
    out.numerical_fallbacks = numerical_failures_;
    out.budget_exhausted = exhausted_;
    out.status = exhausted_ ? "budget_exhausted"
                 : numerical_failures_ > 0 ? "optimal_with_numerical_fallbacks"
                                           : "optimal";
    return out;
  }

 private:
  bool IsDiscrete() const { return set_.kind == PhaseSetKind::kDiscrete; }

  double Width(const Range& r) const {
    return IsDiscrete() ? (r.last - r.first) * kTwoPi / set_.levels : r.hi - r.lo;
  }
  bool Fixed(const Range& r) const {
    return IsDiscrete() ? r.first == r.last : r.hi - r.lo <= 0.0;
  }
  double Low(const Range& r) const { return IsDiscrete() ? set_.LevelAngle(r.first) : r.lo; }
  double High(const Range& r) const { return IsDiscrete() ? set_.LevelAngle(r.last) : r.hi; }

  Complex RoundInto(Complex z, const Range& r) const {
    if (std::abs(z) == 0.0) return Polar(beta_, 0.5 * (Low(r) + High(r)));
    const double arg = std::arg(z);
    if (IsDiscrete()) {
      return Polar(beta_, set_.LevelAngle(NearestLevel(arg, r.first, r.last, set_.levels)));
    }
    return Polar(beta_, ClampToArc(arg, r.lo, r.hi));
  }

  double Tolerance() const {
    return options_.tol * std::abs(incumbent_value_) + 1e-14;
  }

  int WidestFree(const Node& node) const {
    int best = -1;
    double width = 0.0;
    for (int i = 0; i < n_; ++i) {
      if (Fixed(node.ranges[i])) continue;
      const double w = Width(node.ranges[i]);
      if (best < 0 || w > width + 1e-15) {
        best = i;
        width = w;
      }
    }
    return best;
  }

  std::vector<Node> Split(const Node& node, int i) {
    Node left = node;
    Node right = node;
    const Range& r = node.ranges[i];
    if (IsDiscrete()) {
      const int mid = (r.first + r.last) / 2;
      left.ranges[i].last = mid;
      right.ranges[i].first = mid + 1;
    } else {
      const double mid = 0.5 * (r.lo + r.hi);
      left.ranges[i].hi = mid;
      right.ranges[i].lo = mid;
    }
    left.id = next_id_++;
    right.id = next_id_++;
    return {std::move(left), std::move(right)};
  }

  void Offer(const CVec& theta) {
    const double con = (theta.adjoint() * con_form_ * theta).value().real();
    if (constrained_ && con < target_ * (1.0 - options_.feasibility_slack)) return;
    const double value = (theta.adjoint() * form_ * theta).value().real();
    if (!has_incumbent_ || value > incumbent_value_) {
      has_incumbent_ = true;
      incumbent_value_ = value;
      incumbent_ = theta;
    }
  }

  // Fills node.bound; false when the node is infeasible.
  bool Evaluate(Node& node, double parent_bound) {
    ++node_count_;
    std::vector<int> free_idx;
    CVec theta(n_);
    for (int i = 0; i < n_; ++i) {
      if (Fixed(node.ranges[i])) {
        theta(i) = Polar(beta_, Low(node.ranges[i]));
      } else {
        free_idx.push_back(i);
        theta(i) = Polar(beta_, 0.5 * (Low(node.ranges[i]) + High(node.ranges[i])));
      }
    }
    std::vector<int> fixed_idx;
    for (int i = 0; i < n_; ++i) {
      if (Fixed(node.ranges[i])) fixed_idx.push_back(i);
    }
    const int m = static_cast<int>(free_idx.size());
    if (m == 0) {
      const double con = (theta.adjoint() * con_form_ * theta).value().real();
      if (constrained_ && con < target_ * (1.0 - options_.feasibility_slack)) {
        ++pruned_infeasible_;
        return false;
      }
      node.bound = (theta.adjoint() * form_ * theta).value().real();
      Offer(theta);
      return true;
    }

    LiftedProblem program;
    program.objective = Restrict(form_, free_idx, fixed_idx, theta);
    if (constrained_) {
      program.constraint = Restrict(con_form_, free_idx, fixed_idx, theta);
      program.constraint_rhs = target_;
    }
    program.diagonal = RVec::Constant(m + 1, beta_ * beta_);
    program.diagonal(m) = 1.0;
    program.anchor = m;
    for (int k = 0; k < m; ++k) {
      const Range& r = node.ranges[free_idx[k]];
      const double w = Width(r);
      if (w >= kTwoPi - 1e-12) continue;
      program.envelopes.push_back({k, std::polar(1.0, 0.5 * (Low(r) + High(r))),
                                   beta_ * std::cos(0.5 * w)});
    }
    const sdp::SdpSolution sol = sdp::SolveSdp(BuildLifted(program), options_.sdp);
    if (sol.status == sdp::SdpStatus::kPrimalInfeasible) {
      ++pruned_infeasible_;
      return false;
    }
    if (Usable(sol)) {
      node.bound = std::min(sol.dual_objective, parent_bound);
    } else {
      ++numerical_failures_;
      node.bound = parent_bound;
    }
    if (sol.primal.empty() || !sol.primal[0].allFinite()) return std::isfinite(node.bound);

    const CMat y = ExtractHermitian(sol.primal[0]);
    CVec column = y.col(m).head(m);
    if (std::abs(y(m, m)) > 1e-12) column /= y(m, m);
    Eigen::SelfAdjointEigenSolver<CMat> eig(y);
    CVec principal = eig.eigenvectors().col(m);
    if (std::abs(principal(m)) > 1e-12) principal /= principal(m);
    for (const CVec* source : {&column, &principal}) {
      CVec candidate = theta;
      for (int k = 0; k < m; ++k) {
        candidate(free_idx[k]) = RoundInto((*source)(k), node.ranges[free_idx[k]]);
      }
      Offer(candidate);
    }
    if (!std::isfinite(node.bound)) {
      node.bound = (Usable(sol) ? sol.dual_objective : incumbent_value_);
    }
    return true;
  }

  // [[A_UU, A_UF t_F], [t_F^H A_FU, t_F^H A_FF t_F]].
  static CMat Restrict(const CMat& a, const std::vector<int>& free_idx,
                       const std::vector<int>& fixed_idx, const CVec& theta) {
    const int m = static_cast<int>(free_idx.size());
    CMat out = CMat::Zero(m + 1, m + 1);
    CVec fixed(fixed_idx.size());
    for (size_t k = 0; k < fixed_idx.size(); ++k) fixed(k) = theta(fixed_idx[k]);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) out(r, c) = a(free_idx[r], free_idx[c]);
      Complex link = 0.0;
      for (size_t k = 0; k < fixed_idx.size(); ++k) {
        link += a(free_idx[r], fixed_idx[k]) * fixed(k);
      }
      out(r, m) = link;
      out(m, r) = std::conj(link);
    }
    Complex corner = 0.0;
    for (size_t r = 0; r < fixed_idx.size(); ++r) {
      for (size_t c = 0; c < fixed_idx.size(); ++c) {
        corner += std::conj(fixed(r)) * a(fixed_idx[r], fixed_idx[c]) * fixed(c);
      }
    }
    out(m, m) = corner.real();
    return out;
  }

  int n_;
  double beta_;
  PhaseSet set_;
  BnbOptions options_;
  double obj_scale_ = 1.0;
  CMat form_;
  CMat con_form_;
  bool constrained_ = false;
  double target_ = 0.0;

  bool has_incumbent_ = false;
  double incumbent_value_ = -std::numeric_limits<double>::infinity();
  CVec incumbent_;
  int node_count_ = 0;
  int pruned_infeasible_ = 0;
  int numerical_failures_ = 0;
  bool exhausted_ = false;
  long next_id_ = 1;
};

}  // namespace

PhaseSolveResult BnbPhaseSolve(const CMat& upsilon, const CMat& gamma,
                               double eps, double beta, const PhaseSet& set,
                               const BnbOptions& options) {
  const Eigen::Index n = upsilon.rows();
  if (n == 0) throw DomainError("empty phase problem");
  RequireSquare(upsilon, n, "objective matrix");
  RequireSquare(gamma, n, "constraint matrix");
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("eps must be non-negative");
  if (!(options.tol >= 0.0) || options.max_nodes < 1) {
    throw DomainError("BnB needs tol >= 0 and a positive node budget");
  }
  set.Validate();
  PhaseSolveResult out = BranchAndBound(upsilon, gamma, eps, beta, set, options).Run();
  out.constraint = PhaseForm(gamma, out.theta);
  out.objective = PhaseForm(upsilon, out.theta);
  return out;
}

}  // namespace risbf
