#pragma once

#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "postdisc/types.hpp"

namespace postdisc {

enum class EnsembleLabel { A, B };

inline const char* to_string(EnsembleLabel l) {
  return l == EnsembleLabel::A ? "A" : "B";
}

/// Indexed family of orthonormal unit vectors in a common ambient space.
class PureEnsemble {
 public:
  PureEnsemble(int dim, std::vector<ComplexVector> states, EnsembleLabel label,
               double tol = kDefaultTol)
      : dim_(dim), states_(std::move(states)), label_(label) {
    require(dim_ >= 1, "PureEnsemble: dim must be >= 1");
    require(!states_.empty(), "PureEnsemble: empty state list");
    for (std::size_t k = 0; k < states_.size(); ++k) {
      require(states_[k].size() == dim_,
              "PureEnsemble " + std::string(to_string(label_)) + ": state " +
                  std::to_string(k) + " has wrong dimension");
      require(all_finite(states_[k]), "PureEnsemble: non-finite amplitude");
    }
    for (std::size_t i = 0; i < states_.size(); ++i) {
      for (std::size_t j = i; j < states_.size(); ++j) {
        const Complex g = states_[i].dot(states_[j]);
        const double want = i == j ? 1.0 : 0.0;
        if (std::abs(g - want) > tol) {
          throw std::invalid_argument(
              "PureEnsemble " + std::string(to_string(label_)) +
              ": states (" + std::to_string(i) + ", " + std::to_string(j) +
              ") are not orthonormal (defect " +
              std::to_string(std::abs(g - want)) + ")");
        }
      }
    }
  }

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(states_.size()); }
  const ComplexVector& state(int k) const { return states_.at(k); }
  const std::vector<ComplexVector>& states() const { return states_; }
  EnsembleLabel label() const { return label_; }

 private:
  int dim_;
  std::vector<ComplexVector> states_;
  EnsembleLabel label_;
};

/// Two ensembles sharing one ambient space.
class EnsemblePair {
 public:
  EnsemblePair(PureEnsemble a, PureEnsemble b)
      : a_(std::move(a)), b_(std::move(b)) {
    require(a_.dim() == b_.dim(), "EnsemblePair: ambient dimensions differ");
  }

  const PureEnsemble& a() const { return a_; }
  const PureEnsemble& b() const { return b_; }
  int dim() const { return a_.dim(); }
  int sizeA() const { return a_.size(); }
  int sizeB() const { return b_.size(); }

  /// All states of the pair, A block first.
  std::vector<ComplexVector> all_states() const {
    std::vector<ComplexVector> out = a_.states();
    out.insert(out.end(), b_.states().begin(), b_.states().end());
    return out;
  }

 private:
  PureEnsemble a_;
  PureEnsemble b_;
};

/// Squared cross overlaps P and phases theta, theta in (-pi, pi],
/// theta fixed to 0 wherever P vanishes.
struct OverlapData {
  RealMatrix p;
  RealMatrix theta;

  int rows() const { return static_cast<int>(p.rows()); }
  int cols() const { return static_cast<int>(p.cols()); }
};

/// POVM over an arbitrary finite outcome set.
class Povm {
 public:
  Povm(int dim, std::vector<ComplexMatrix> outcomes)
      : dim_(dim), outcomes_(std::move(outcomes)) {
    require(dim_ >= 1, "Povm: dim must be >= 1");
    require(!outcomes_.empty(), "Povm: empty outcome list");
    for (const auto& m : outcomes_) {
      require(m.rows() == dim_ && m.cols() == dim_,
              "Povm: outcome operator is not dim x dim");
    }
  }

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(outcomes_.size()); }
  const ComplexMatrix& outcome(int w) const { return outcomes_.at(w); }
  const std::vector<ComplexMatrix>& outcomes() const { return outcomes_; }

 private:
  int dim_;
  std::vector<ComplexMatrix> outcomes_;
};

/// POVM indexed by guess pairs (a, b), stored row-major in b-fastest order.
class MeasurementTable {
 public:
  MeasurementTable(int dim, int kdimA, int kdimB,
                   std::vector<ComplexMatrix> operators)
      : dim_(dim), ka_(kdimA), kb_(kdimB), ops_(std::move(operators)) {
    require(dim_ >= 1, "MeasurementTable: dim must be >= 1");
    require(ka_ >= 1 && kb_ >= 1, "MeasurementTable: index sets must be nonempty");
    require(static_cast<int>(ops_.size()) == ka_ * kb_,
            "MeasurementTable: operator count != kdimA*kdimB");
    for (const auto& m : ops_) {
      require(m.rows() == dim_ && m.cols() == dim_,
              "MeasurementTable: operator is not dim x dim");
    }
  }

  int dim() const { return dim_; }
  int kdimA() const { return ka_; }
  int kdimB() const { return kb_; }
  int flat_index(int a, int b) const { return a * kb_ + b; }
  const ComplexMatrix& at(int a, int b) const {
    return ops_.at(flat_index(a, b));
  }
  const std::vector<ComplexMatrix>& operators() const { return ops_; }

  Povm to_povm() const { return Povm(dim_, ops_); }

 private:
  int dim_;
  int ka_;
  int kb_;
  std::vector<ComplexMatrix> ops_;
};

struct Violation {
  std::string kind;
  std::string where;
  double magnitude = 0.0;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  void add(std::string kind, std::string where, double magnitude) {
    ok = false;
    violations.push_back({std::move(kind), std::move(where), magnitude});
  }
};

/// P_ab = |<phiA_a|phiB_b>|^2 and the phase of each cross inner product.
inline OverlapData overlap_data(const EnsemblePair& pair,
                                double tol = kDefaultTol) {
  // Revalidate orthonormality at the caller's tolerance.
  for (const PureEnsemble* e : {&pair.a(), &pair.b()}) {
    for (int i = 0; i < e->size(); ++i) {
      for (int j = i; j < e->size(); ++j) {
        const Complex g = e->state(i).dot(e->state(j));
        const double want = i == j ? 1.0 : 0.0;
        if (std::abs(g - want) > tol) {
          throw std::invalid_argument(
              std::string("overlap_data: ensemble ") + to_string(e->label()) +
              " not orthonormal at indices (" + std::to_string(i) + ", " +
              std::to_string(j) + ")");
        }
      }
    }
  }
  const int n = pair.sizeA();
  const int m = pair.sizeB();
  OverlapData out{RealMatrix(n, m), RealMatrix::Zero(n, m)};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < m; ++b) {
      const Complex g = pair.a().state(a).dot(pair.b().state(b));
      const double p = std::norm(g);
      out.p(a, b) = p;
      if (p >= tol) {
        double th = std::arg(g);
        if (th <= -std::numbers::pi) th = std::numbers::pi;  // canonical (-pi, pi]
        out.theta(a, b) = th;
      }
    }
  }
  return out;
}

inline ValidationReport validate_povm(const Povm& povm,
                                      double tol = kDefaultTol) {
  ValidationReport report;
  ComplexMatrix sum = ComplexMatrix::Zero(povm.dim(), povm.dim());
  for (int w = 0; w < povm.size(); ++w) {
    const ComplexMatrix& m = povm.outcome(w);
    const std::string where = "outcome " + std::to_string(w);
    if (!all_finite(m)) {
      report.add("non-finite", where,
                 std::numeric_limits<double>::infinity());
      continue;
    }
    const double hd = hermiticity_defect(m);
    if (hd > tol) report.add("hermiticity", where, hd);
    const double lam = min_eigenvalue(m);
    if (lam < -tol) report.add("psd", where, -lam);
    sum += m;
  }
  const double cd =
      max_abs(ComplexMatrix(sum - ComplexMatrix::Identity(povm.dim(), povm.dim())));
  if (cd > tol) report.add("completeness", "sum over outcomes", cd);
  return report;
}

inline ValidationReport validate_povm(const MeasurementTable& table,
                                      double tol = kDefaultTol) {
  ValidationReport report = validate_povm(table.to_povm(), tol);
  for (auto& v : report.violations) {
    if (v.where.rfind("outcome ", 0) == 0) {
      const int w = std::stoi(v.where.substr(8));
      v.where = "operator (" + std::to_string(w / table.kdimB()) + ", " +
                std::to_string(w % table.kdimB()) + ")";
    }
  }
  return report;
}

struct PerfectReport {
  bool ok = false;          // sum form, the defining condition
  bool sum_form_ok = false;
  bool kernel_form_ok = false;
  bool forms_disagree = false;  // numerical-consistency alarm
  std::vector<Violation> violations;
};

/// Checks that the table identifies every ensemble member with certainty:
/// row sums over b of <phiA_a|M_ab|phiA_a> and column sums over a of
/// <phiB_b|M_ab|phiB_b> must all equal 1. The kernel form (M_ab annihilates
/// every off-index ensemble state) is evaluated as a cross-check.
inline PerfectReport check_perfect_conditions(const MeasurementTable& table,
                                              const EnsemblePair& pair,
                                              double tol = kDefaultTol) {
  require(table.dim() == pair.dim(),
          "check_perfect_conditions: dimension mismatch");
  require(table.kdimA() == pair.sizeA() && table.kdimB() == pair.sizeB(),
          "check_perfect_conditions: index sets do not match the pair");
  PerfectReport report;
  report.sum_form_ok = true;
  report.kernel_form_ok = true;

  for (int a = 0; a < table.kdimA(); ++a) {
    double s = 0.0;
    for (int b = 0; b < table.kdimB(); ++b) {
      s += std::real(Complex(
          pair.a().state(a).dot(table.at(a, b) * pair.a().state(a))));
    }
    if (std::abs(s - 1.0) > tol) {
      report.sum_form_ok = false;
      report.violations.push_back(
          {"row-sum", "a=" + std::to_string(a), std::abs(s - 1.0)});
    }
  }
  for (int b = 0; b < table.kdimB(); ++b) {
    double s = 0.0;
    for (int a = 0; a < table.kdimA(); ++a) {
      s += std::real(Complex(
          pair.b().state(b).dot(table.at(a, b) * pair.b().state(b))));
    }
    if (std::abs(s - 1.0) > tol) {
      report.sum_form_ok = false;
      report.violations.push_back(
          {"column-sum", "b=" + std::to_string(b), std::abs(s - 1.0)});
    }
  }

  for (int a = 0; a < table.kdimA(); ++a) {
    for (int b = 0; b < table.kdimB(); ++b) {
      for (int ap = 0; ap < pair.sizeA(); ++ap) {
        if (ap == a) continue;
        const double nrm = (table.at(a, b) * pair.a().state(ap)).norm();
        if (nrm > tol) {
          report.kernel_form_ok = false;
          report.violations.push_back(
              {"kernel-A", "M(" + std::to_string(a) + "," + std::to_string(b) +
                               ") on a'=" + std::to_string(ap),
               nrm});
        }
      }
      for (int bp = 0; bp < pair.sizeB(); ++bp) {
        if (bp == b) continue;
        const double nrm = (table.at(a, b) * pair.b().state(bp)).norm();
        if (nrm > tol) {
          report.kernel_form_ok = false;
          report.violations.push_back(
              {"kernel-B", "M(" + std::to_string(a) + "," + std::to_string(b) +
                               ") on b'=" + std::to_string(bp),
               nrm});
        }
      }
    }
  }

  report.forms_disagree = report.sum_form_ok != report.kernel_form_ok;
  report.ok = report.sum_form_ok;
  return report;
}

/// G_ij = <psi_i|psi_j>; Hermitian PSD by construction.
inline ComplexMatrix gram_matrix(const std::vector<ComplexVector>& states) {
  require(!states.empty(), "gram_matrix: empty state list");
  const auto dim = states.front().size();
  for (const auto& s : states) {
    require(s.size() == dim, "gram_matrix: mixed dimensions");
  }
  const int k = static_cast<int>(states.size());
  ComplexMatrix g(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      g(i, j) = states[i].dot(states[j]);
    }
  }
  return g;
}

}  // namespace postdisc
