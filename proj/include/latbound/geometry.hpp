#pragma once

namespace latbound::geometry {

/// Volume of {x : |x| <= radius, x_1 > offset} in n dimensions. The offset is
/// signed; offsets beyond +/-radius give the empty set or the whole ball.
double cap_volume(int n, double radius, double offset);

/// Vol(B(0, R) ∩ B(z, rho)) with |z| = rho.
double lens_volume(int n, double R, double rho);

/// Vol({lo < |x| <= hi} ∩ B(z, rho)) with |z| = rho.
double shell_ball_volume(int n, double lo, double hi, double rho);

}  // namespace latbound::geometry
