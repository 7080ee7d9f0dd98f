#pragma once

// Algebra of a pair of orthogonal projections P, Q through A = P - Q and
// B = 1 - P - Q: intertwining unitaries, index, corner subspaces and the
// two-projection normal form.

#include <vector>

#include "katolab/operator_core.hpp"

namespace katolab {

/// Eigenvalues of A or B within this distance of 0 or +-1 are assigned to the
/// corner subspaces.
inline constexpr double kCornerTol = 1e-8;

struct ProjectionPair {
  OrthogonalProjection P;
  OrthogonalProjection Q;
  HermitianMatrix A;  ///< P - Q
  HermitianMatrix B;  ///< 1 - P - Q
  double normPQ;      ///< ||P - Q||_2
  SpectralDecomposition eigA;
  SpectralDecomposition eigB;

  Index dim() const { return A.dim(); }
};

/// Validates the pair identities and caches the spectral data.
ProjectionPair projection_pair(const OrthogonalProjection& p, const OrthogonalProjection& q);

/// U = W (1 - A^2)^{-1/2}, W = QP + (1-Q)(1-P); U P U^{-1} = Q.
CMatrix kato_unitary(const ProjectionPair& pair);

/// sgn(B): self-adjoint unitary exchanging P and Q.
CMatrix sgn_unitary(const ProjectionPair& pair);

/// trace(P - Q) rounded to the integer it must be.
long trace_index(const ProjectionPair& pair);

struct SymmetryEntry {
  double lambda;
  Index dim_plus;    ///< multiplicity of lambda in A
  Index dim_minus;   ///< multiplicity of -lambda in A
  bool exceptional;  ///< lambda in {-1, 0, 1}, where pairing is not required
};
/// One entry per distinct eigenvalue of A, ascending.
std::vector<SymmetryEntry> spectral_symmetry(const ProjectionPair& pair);

struct CornerDims {
  Index p_kerq = 0;     ///< ran P and ker Q, A = 1
  Index kerp_q = 0;     ///< ker P and ran Q, A = -1
  Index p_q = 0;        ///< ran P and ran Q, B = -1
  Index kerq_kerp = 0;  ///< ker Q and ker P, B = 1
  /// Smallest distance of a non-corner eigenvalue of A or B to a corner
  /// value, so near-degenerate pairs are visible.
  double margin = 1.0;

  bool generic() const { return p_kerq + kerp_q + p_q + kerq_kerp == 0; }
};
CornerDims corner_subspaces(const ProjectionPair& pair);
CornerDims corner_subspaces(const OrthogonalProjection& p, const OrthogonalProjection& q);

/// Self-adjoint unitary with U P U = Q and U Q U = P. Exists iff the two
/// A = +-1 corners have equal dimension.
CMatrix symmetry_conjugator(const ProjectionPair& pair);

struct HalmosDecomposition {
  CornerDims corners;
  CMatrix generic_basis;  ///< orthonormal columns spanning the generic part
  CMatrix b1;             ///< orthonormal basis of ran P inside the generic part
  CMatrix w;              ///< images of the b1 columns under W, spanning ran(1-P) there
  CMatrix c;              ///< |B| on b1, in b1 coordinates
  CMatrix s;              ///< |A| on b1, in b1 coordinates
  double reconstruction_residual = 0.0;  ///< max-norm error of the block form of Q

  Index generic_rank() const { return b1.cols(); }
};
HalmosDecomposition halmos(const ProjectionPair& pair);

struct ObliqueNorms {
  double norm_pi;          ///< ||Pi||_2
  double norm_complement;  ///< ||1 - Pi||_2
  double ljance;           ///< (1 - ||P Q||^2)^{-1/2} from the range projections
  double cos_angle;        ///< ||P Q||_2
};
ObliqueNorms oblique_norms(const CMatrix& pi);

}  // namespace katolab
