#pragma once

// Qutrit example in which the entropy-minimal Q-factorization uses a mixed
// signal state: nine SIC states r_0..r_8, an eight-outcome POVM built by
// folding E_0 into the rest, and the line of states
// rho_A(t) = (1 - t) I/3 + t |0><0|, t in [-1/2, 1], that all reproduce the
// same channel row.

#include <array>
#include <cstddef>
#include <vector>

#include "chanfactor/channel.hpp"
#include "chanfactor/qfactor.hpp"

namespace chanfactor::sic {

inline constexpr double kTMin = -0.5;
inline constexpr double kTMax = 1.0;
inline constexpr std::size_t kDefaultCurvePoints = 151;

struct SicFamily {
  std::array<PureState, 9> states;
  // E_i = |r_i><r_i| / 3 + |r_0><r_0| / 24, i = 1..8
  POVM m8;
  DensityMatrix rho_b;  // |2><2|
};

SicFamily build_sic_family();

// Throws Error{t_out_of_range} outside [kTMin, kTMax].
DensityMatrix rho_a(double t);

// 0.5 rho_A(t) + 0.5 rho_B
DensityMatrix rho_t(const SicFamily& f, double t);

// Two inputs {A, B}, eight outputs {0..7}: tr(E_i rho_A(t)) and tr(E_i rho_B).
Channel family_channel(const SicFamily& f, double t);

// A -> rho_A(t), B -> rho_B, measured with M8.
QFactorization family_qfactorization(const SicFamily& f, double t);

struct CurvePoint {
  double t;
  double entropy_rho_t;
  double purity_rho_t;
  double entropy_rho_at;
};

struct CurveSummary {
  std::vector<CurvePoint> points;
  std::size_t global_min_index = 0;
  std::vector<std::size_t> local_min_indices;
  // Maximal runs of strictly monotone entropy: [begin, end] index pairs with
  // direction +1 (increasing) or -1 (decreasing).
  struct Segment {
    std::size_t begin;
    std::size_t end;
    int direction;
  };
  std::vector<Segment> segments;
};

// Uniform samples over [kTMin, kTMax] with both endpoints exact. Throws
// Error{invalid_argument} for n_points < 3.
CurveSummary entropy_purity_curve(const SicFamily& f, std::size_t n_points = kDefaultCurvePoints);

// Linearized M8 constraints on trace-zero Hermitian perturbations of a qutrit
// state: an 8 x 8 real system. The solution space of the channel constraints
// is the kernel of this map.
struct ConstraintRank {
  std::size_t rank = 0;
  std::size_t kernel_dim = 0;
  // Unit-norm kernel direction as a Hermitian matrix (valid when kernel_dim == 1).
  ComplexMatrix kernel_direction{3};
};

ConstraintRank constraint_rank(const SicFamily& f, double tol = 1e-9);

}  // namespace chanfactor::sic
