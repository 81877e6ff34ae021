#ifndef ABREU_POTENTIALS_HPP
#define ABREU_POTENTIALS_HPP

#include <memory>
#include <vector>

#include "abreu/fd.hpp"
#include "abreu/grid.hpp"
#include "abreu/polytope.hpp"
#include "abreu/smallvec.hpp"

namespace abreu {

struct GuilleminParts {
  double value;
  Pt grad;
  Mat hess;
  double det;
};

/// v(xi) = sum_k delta_k log delta_k with exact gradient and Hessian.
/// Requires a strictly interior point.
GuilleminParts guillemin_eval(const Polytope& P, const Pt& xi);

/// Boundary-safe value of v (0 log 0 = 0 on facets).
double guillemin_value(const Polytope& P, const Pt& xi);

/// det(v_ij)(xi) * prod_k delta_k(xi); identically 1 on unit boxes and
/// smooth up to the boundary in general.
double guillemin_det_product(const Polytope& P, const Pt& xi);

// --- class-S potentials -----------------------------------------------------

/// u = v + phi with the Guillemin part implicit (always evaluated
/// analytically) and the smooth correction phi carried on a grid.
struct SPotential {
  std::shared_ptr<const Polytope> P;
  GridFn phi;
  Pt p_o;

  double value(const Pt& xi) const;        // v + interpolated phi
  double value_at_node(std::size_t i) const;
};

SPotential make_guillemin_potential(std::shared_ptr<const Polytope> P, double h,
                                    const Pt& p_o);

/// Composite Hessian data of u = v + phi on Interior nodes: analytic v part
/// plus centered FD of phi.
struct UHessData {
  std::vector<PartialField> comp;      // packed symmetric components of u
  std::vector<PartialField> phi_comp;  // FD Hessian of phi alone
  PartialField det;
  std::vector<PartialField> inv;       // u^{ij}
  std::vector<std::size_t> degenerate_nodes;
  Mat hess_at(std::size_t idx, int n) const;
  Mat inv_at(std::size_t idx, int n) const;
};

UHessData u_hessian_fields(const SPotential& u, double det_floor = 1e-12,
                           bool allow_degenerate = false);

/// Composite gradient (analytic v part + FD phi) on Interior nodes.
GradientFields u_gradient_fields(const SPotential& u);

/// Hessian of u at an arbitrary interior point: analytic v Hessian plus the
/// nodal FD phi Hessian interpolated componentwise.
Mat u_hessian_at(const SPotential& u, const UHessData& data, const Pt& xi);

/// Subtract the supporting affine function at p_o (phi absorbs the shift).
/// Throws NotConvex (listing nodes) if the composite Hessian is not positive
/// definite at every Interior node.
SPotential normalize_at(const SPotential& u);

struct SectionResult {
  std::vector<std::uint8_t> mask;  // per node
  bool is_compact;
  std::size_t seed_node;
};

/// Connected sublevel set {u <= C} grown from p by flood fill.
SectionResult section(const SPotential& u, const Pt& p, double C);

// --- explicit barriers ------------------------------------------------------

struct BarrierSpec {
  enum class Kind { Edge, LinearCap };
  Kind kind;
  int dim;
  double alpha = 0.5;
  double beta = 0.5;
  double C = 0.0;
  double a = 0.0;  // LinearCap only

  static double default_C(int dim, const Polytope& P);
  static BarrierSpec edge(int dim, double alpha, double beta, double C);
  static BarrierSpec edge(const Polytope& P, double alpha, double beta);
  static BarrierSpec linear_cap(int dim, double alpha, double C, double a);
  static BarrierSpec linear_cap(const Polytope& P, double alpha);

  int m() const { return 8 * dim; }
  /// containment check xi_1 <= C/m and sum_{j>=2} xi_j^2 <= C/m on vertices
  bool containment_holds(const Polytope& P) const;
};

struct BarrierEval {
  double value;
  Mat hess;   // in the original coordinates
  double det;
};

/// Closed-form value/Hessian/determinant; the orthogonal rotation of
/// xi_2..xi_n onto (rho, 0, ...) is applied per point. Throws OutOfRange
/// outside the admissible region.
BarrierEval barrier_eval(const BarrierSpec& B, const Pt& xi);

// --- exponent schedule ------------------------------------------------------

struct AlphaSchedule {
  std::vector<double> alphas;  // alpha_1 .. alpha_{k*+1}
  int k_star;                  // 1-based; largest k with alpha_k < 1 - 1/n
};

/// alpha_k = 2 (1 - (1-1/n)^k). Throws ScheduleDegenerate when no k
/// satisfies alpha_k < 1 - 1/n strictly (n = 2, 3).
AlphaSchedule alpha_schedule(int n);

}  // namespace abreu

#endif
