#pragma once

namespace blab {

// C-infinity step: 0 for u <= 0, 1 for u >= 1.
double smooth_step(double u);

// Radial bump: 1 on |xi| <= 1, 0 on |xi| >= 2.
double smooth_cutoff(double xi);

// Annulus bump: 0 outside [1,2], 1 on [5/4,7/4].
double annulus_bump(double r);

}  // namespace blab
