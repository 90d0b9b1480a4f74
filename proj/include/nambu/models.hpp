#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nambu/phase_expr.hpp"

namespace nambu {

using ExprMatrix = std::vector<std::vector<PhaseExpr>>;

/// Frame and metric data. Matrices are indexed [a][i] with 0-based indices.
struct Geometry {
  int vielbein_sign = -1;
  ExprMatrix v_up;    // V^{ai}
  ExprMatrix v_down;  // V_a^i
  ExprMatrix g_down;  // g_ab
  ExprMatrix g_up;    // g^{ab}
  std::optional<PhaseExpr> w;
};

enum class ModelKind { Sphere, ChiralS3, GnomonicS3 };

struct Model {
  std::string name;
  int n = 0;
  int sign = 1;
  ModelKind kind = ModelKind::Sphere;
  std::map<std::string, PhaseExpr> charges;
  std::vector<std::string> conserved;
  PhaseExpr h_classical;
  PhaseExpr h_quantum;
  std::optional<Geometry> geometry;

  bool has(const std::string& key) const { return charges.count(key) != 0; }
  /// Throws UnknownName for a missing key.
  const PhaseExpr& charge(const std::string& key) const;
};

/// "L[1,2]" style lookup key; a bare base when there are no indices.
std::string charge_key(const std::string& base, const std::vector<int>& indices = {});

/// Sphere S^N in equatorial coordinates. `sign` picks the hemisphere:
/// P_a = sign * s * p_a. Geometry uses the Vielbein with the minus choice.
Model build_sphere(int n, int sign = 1);
/// Vielbeine, metric and w for S^N with either sign in the Vielbein.
Geometry sphere_geometry(int n, int vielbein_sign = -1);

/// Chiral S^3 with right (+) and left (-) Dreibeine.
Model build_chiral_s3();
Geometry chiral_geometry(int sign);

/// S^3 in gnomonic coordinates Q^a (stored as x_a); no radicals involved.
Model build_gnomonic_s3();

/// Registry lookup: "sphere:N", "sphere:N:+", "sphere:N:-", "chiral-s3",
/// "gnomonic-s3". Throws UsageError for anything else.
Model build_model(const std::string& registry_name);
std::vector<std::string> model_registry();

/// sum_a V^{aj} p_a for 0-based frame index j.
PhaseExpr vielbein_current(const Geometry& geo, int n, int j);

/// 1/2 (p_a V^{ai}) * (V^{bi} p_b) with the sphere Vielbeine of the model.
PhaseExpr h_other(const Model& model);

/// (delta^{aj} q^k - delta^{ak} q^j) w p_a, with 1-based j, k.
PhaseExpr current_algebra_omega(const Model& model, int j, int k);

struct IdentityPair {
  std::string label;
  PhaseExpr lhs;
  PhaseExpr rhs;
};

/// The star-similarity identities relating the Vielbein currents and the
/// symmetric Hamiltonian: one conjugation pair per frame index and the
/// factorized H_qm.
std::vector<IdentityPair> similarity_identities(const Model& model);

struct StructureConstants {
  std::array<GaussScalar, 27> f{};
  GaussScalar c_adjoint;

  const GaussScalar& operator()(int a, int b, int c) const { return f[static_cast<std::size_t>(9 * a + 3 * b + c)]; }
  GaussScalar& operator()(int a, int b, int c) { return f[static_cast<std::size_t>(9 * a + 3 * b + c)]; }
};

/// Solves {X_j, X_k}_PB = -2 f^{jkn} X_n for constant f from three currents
/// linear in the momenta, then checks the solution symbolically and fixes
/// c_adjoint from f_abc f_bcd = c_adjoint delta_ad. Throws
/// StructureConstantError when no constant solution exists.
StructureConstants read_structure_constants(const std::vector<PhaseExpr>& currents);

/// Levi-Civita connection Gamma^b_{ac}, indexed [b][a][c].
std::vector<ExprMatrix> christoffel(const ExprMatrix& g_down, const ExprMatrix& g_up);

struct ChristoffelCorrection {
  PhaseExpr gamma_contraction;  // Gamma^b_{ac} g^{cd} Gamma^a_{bd}
  StructureConstants structure;
  PhaseExpr correction;         // hbar^2/8 (Gamma g Gamma - f_ijk f_ijk)
};

/// Chiral S^3 only (DomainError otherwise).
ChristoffelCorrection christoffel_correction(const Model& model, int dreibein_sign = 1);

enum class FabVariant { Cartesian, Chiral };

/// Cartesian: (I_a + A_a) * (I_b - A_b), reading L_a as the isospin I_a.
/// Chiral: JL_a * JR_b with the half-normalized charges. 1-based a, b.
PhaseExpr fab(const Model& model, int a, int b, FabVariant variant);

}  // namespace nambu
