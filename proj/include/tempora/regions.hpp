#pragma once

#include <ostream>
#include <vector>

namespace tempora {

// Point (<A1A2>, <A1A3>, <A2A3>)_seq of the three-time Leggett-Garg scenario.
struct LgPoint {
  double q12 = 0.0;
  double q13 = 0.0;
  double q23 = 0.0;
};

// 1 + 2 q12 q13 q23 - q12^2 - q13^2 - q23^2, the determinant of the 3x3
// unit-diagonal correlation matrix.
double lg_determinant(const LgPoint& p);

bool quantum_member(const LgPoint& p, double tol = 1e-9);
bool classical_member(const LgPoint& p, double tol = 1e-9);

struct SurfacePoint {
  LgPoint point;
  int sheet = 0;  // 0: lower root in q23, 1: upper root
};

// Boundary of the quantum region sampled on a grid x grid lattice of
// (q12, q13) in [-1, 1]^2; rows without a real root are skipped.
std::vector<SurfacePoint> sample_surface(int grid);

// CSV with header q12,q13,q23,sheet and 17 significant digits.
void write_surface_csv(std::ostream& out, const std::vector<SurfacePoint>& points);

}  // namespace tempora
