#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "msym/characters.hpp"
#include "msym/presentation.hpp"

namespace msym {

using Matrix = Eigen::MatrixXcd;

/// Finite-dimensional assignment generator -> d x d complex matrix. Nothing
/// is assumed about the matrices; check_relations says whether they form a
/// representation.
struct MatrixModel {
  AlphabetPtr alphabet;
  std::size_t dimension = 0;
  std::vector<Matrix> generators;  // indexed by GenId

  const Matrix& at(GenId g) const { return generators.at(g); }
};

/// Frobenius norm: an upper bound for the operator norm.
double norm(const Matrix& m);

Matrix evaluate(const NCPolynomial& poly, const MatrixModel& m);

struct RelationViolationReport {
  double tolerance = 0;
  /// Relation class -> maximum deviation: "self-adjoint", "idempotent",
  /// "vanishing", "unit-sum", "linear".
  std::map<std::string, double> deviation;
  /// Relation class -> the relation attaining the maximum.
  std::map<std::string, std::string> worst;
  bool pass = true;
};

RelationViolationReport check_relations(const MatrixModel& m, const Presentation& p, double tol);

/// Dimension-1 model with entries 0 or 1.
MatrixModel character_to_model(const Character& c, const Presentation& p);

/// Block magic unitary over 2x2 matrices with p = diag(1,0) and
/// q(theta) = [[c^2, cs], [cs, s^2]], lifted to build_presentation(g) through
/// q^{ks}_{ir} -> delta_{sr} u^k_i. Requires four vertices, no loops and a
/// uniform multiplicity m >= 2 on every ordered pair of distinct vertices.
MatrixModel pauli_witness(const Multigraph& g, double theta);
/// The underlying 4x4 block matrix u (row-major, 2x2 blocks).
std::vector<Matrix> pauli_blocks(double theta);

struct EdgeMatrixDeviation {
  double biunitary = 0;  // max over UU* = 1, U*U = 1 and the conjugate matrix
  double magic = 0;      // max over idempotency, self-adjointness and unit sums of entries
  std::string worst_biunitary;
  std::string worst_magic;
};

EdgeMatrixDeviation evaluate_edge_matrix(const MatrixModel& m, const EdgeMatrix& em, const Multigraph& g);

enum class CombineMode { DirectSum, Tensor };

/// Direct sum is blockwise. Tensor is the convolution through the
/// coproduct, x(q^x_y) = sum_z a(q^x_z) (x) b(q^z_y); combined with a
/// character it re-indexes the model.
MatrixModel combine(const std::vector<MatrixModel>& models, CombineMode mode);

std::string model_to_json(const MatrixModel& m);
MatrixModel model_from_json(const std::string& text, AlphabetPtr alphabet);

}  // namespace msym
