#include "tempora/regions.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include "tempora/types.hpp"

namespace tempora {

double lg_determinant(const LgPoint& p) {
  return 1.0 + 2.0 * p.q12 * p.q13 * p.q23 - p.q12 * p.q12 - p.q13 * p.q13 - p.q23 * p.q23;
}

bool quantum_member(const LgPoint& p, double tol) {
  for (double q : {p.q12, p.q13, p.q23}) {
    if (!std::isfinite(q) || std::abs(q) > 1.0 + tol) return false;
  }
  return lg_determinant(p) >= -tol;
}

bool classical_member(const LgPoint& p, double tol) {
  return p.q12 + p.q23 - p.q13 <= 1.0 + tol && p.q12 - p.q23 + p.q13 <= 1.0 + tol &&
         -p.q12 + p.q23 + p.q13 <= 1.0 + tol && -p.q12 - p.q23 - p.q13 <= 1.0 + tol;
}

std::vector<SurfacePoint> sample_surface(int grid) {
  if (grid < 2) throw InputError("sample_surface: grid must be at least 2");
  std::vector<SurfacePoint> out;
  for (int a = 0; a < grid; ++a) {
    const double q12 = -1.0 + 2.0 * a / (grid - 1);
    for (int b = 0; b < grid; ++b) {
      const double q13 = -1.0 + 2.0 * b / (grid - 1);
      // q23^2 - 2 q12 q13 q23 + (q12^2 + q13^2 - 1) = 0,
      // discriminant / 4 = (1 - q12^2)(1 - q13^2).
      const double disc = (1.0 - q12 * q12) * (1.0 - q13 * q13);
      if (disc < 0.0) continue;
      const double mid = q12 * q13;
      const double half = std::sqrt(disc);
      out.push_back({{q12, q13, std::clamp(mid - half, -1.0, 1.0)}, 0});
      out.push_back({{q12, q13, std::clamp(mid + half, -1.0, 1.0)}, 1});
    }
  }
  return out;
}

void write_surface_csv(std::ostream& out, const std::vector<SurfacePoint>& points) {
  out << "q12,q13,q23,sheet\n" << std::setprecision(17);
  for (const auto& p : points) {
    out << p.point.q12 << ',' << p.point.q13 << ',' << p.point.q23 << ',' << p.sheet << '\n';
  }
}

}  // namespace tempora
